#!/usr/bin/env python3
"""
Bijections on circular classes
Rotation to a prescribed inverse-maj residue, the A_{n-1} -> B_n bijection
(maj ≡ i mod n, inverse maj ≡ j mod n-1), the C_n -> B_n bijection
(inverse maj ≡ j mod n-1), window selections inside circular classes of
permutations fixing n, and the class-by-class construction of every
permutation with inverse maj ≡ j (mod k).

Sets of permutations are returned as tuples sorted by word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import DomainError, InvariantViolation
from .insertion import insert_top, position_for_maj_residue
from .permcore import (
    Permutation,
    erase_top,
    fixing_top,
    format_word,
    inverse_maj,
    iter_permutations,
    maj,
    rotate,
)

Word = Tuple[int, ...]


@dataclass(frozen=True)
class BijectionTrace:
    """Audit trail of one application of a bijection"""
    kind: str  # 'p41' or 'p42'
    input: Permutation
    rotation: Permutation
    output: Permutation
    rotation_exponent: int
    insert_position: int
    i: Optional[int]
    j: int

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind,
            'input': format_word(self.input),
            'rotation': format_word(self.rotation),
            'rotation_exponent': self.rotation_exponent,
            'insert_position': self.insert_position,
            'output': format_word(self.output),
            'i': self.i,
            'j': self.j,
            'output_maj': maj(self.output),
            'output_inverse_maj': inverse_maj(self.output),
        }


@dataclass(frozen=True)
class CircularConstruction:
    """Permutations of S_n with inverse maj ≡ j (mod k), assembled class by class"""
    n: int
    k: int
    j: int
    certificate: Tuple[Permutation, ...]

    @property
    def count(self) -> int:
        return len(self.certificate)


def rotate_to_inverse_residue(p: Permutation, j: int, modulus: int) -> Tuple[Permutation, int]:
    """Smallest t with maj((p·gamma^t)^-1) ≡ j (mod modulus); returns (p·gamma^t, t)"""
    m = p.n
    if modulus < 1 or m % modulus:
        raise DomainError(f"modulus {modulus} must divide the degree {m}")
    if not 0 <= j < modulus:
        raise DomainError(f"residue j={j} out of range 0..{modulus - 1}")
    for t in range(m):
        candidate = rotate(p, t)
        if inverse_maj(candidate) % modulus == j:
            return candidate, t
    raise InvariantViolation(f"no rotation of {p!r} reaches inverse-maj residue {j} mod {modulus}")


def _require_fixed_top(p: Permutation, label: str) -> None:
    if p(p.n) != p.n:
        raise DomainError(f"{label} must fix its largest symbol {p.n}, got {format_word(p)}")


def bijection_41_trace(sigma: Permutation, i: int, j: int) -> BijectionTrace:
    m = sigma.n
    n = m + 1
    _require_fixed_top(sigma, "sigma")
    if not 0 <= i <= n - 1:
        raise DomainError(f"residue i={i} out of range 0..{n - 1}")
    if not 0 <= j <= n - 2:
        raise DomainError(f"residue j={j} out of range 0..{n - 2}")

    rotation, exponent = rotate_to_inverse_residue(sigma, j, m)
    position = position_for_maj_residue(rotation, i, n)[0]
    return BijectionTrace(
        kind='p41',
        input=sigma,
        rotation=rotation,
        output=insert_top(rotation, position),
        rotation_exponent=exponent,
        insert_position=position,
        i=i,
        j=j,
    )


def bijection_41_forward(sigma: Permutation, i: int, j: int) -> Permutation:
    """A_{n-1} -> {maj ≡ i mod n, inverse maj ≡ j mod n-1}"""
    return bijection_41_trace(sigma, i, j).output


def _rotate_to_fix_top(p: Permutation) -> Permutation:
    # the rotation placing the largest symbol last
    m = p.n
    return rotate(p, p.position_of(m) % m)


def bijection_41_inverse(tau: Permutation) -> Permutation:
    """Erase n, then take the circular rearrangement fixing n-1"""
    if tau.n < 2:
        raise DomainError("degree must be at least 2")
    return _rotate_to_fix_top(erase_top(tau))


def bijection_42_trace(tau: Permutation, j: int) -> BijectionTrace:
    n = tau.n
    if n < 2:
        raise DomainError("degree must be at least 2")
    if not 0 <= j <= n - 2:
        raise DomainError(f"residue j={j} out of range 0..{n - 2}")
    erased = erase_top(tau)
    if erased(n - 1) != n - 1:
        raise DomainError(
            f"{format_word(tau)} is not in C_{n}: erasing {n} leaves {format_word(erased)}, which moves {n - 1}"
        )

    rotation, exponent = rotate_to_inverse_residue(erased, j, n - 1)
    position = tau.position_of(n)
    return BijectionTrace(
        kind='p42',
        input=tau,
        rotation=rotation,
        output=insert_top(rotation, position),
        rotation_exponent=exponent,
        insert_position=position,
        i=None,
        j=j,
    )


def bijection_42_forward(tau: Permutation, j: int) -> Permutation:
    """C_n -> {inverse maj ≡ j mod n-1}; n keeps its position"""
    return bijection_42_trace(tau, j).output


def bijection_42_inverse(tau: Permutation) -> Permutation:
    """Undo bijection_42_forward: the C_n element with n at the same position"""
    if tau.n < 2:
        raise DomainError("degree must be at least 2")
    return insert_top(_rotate_to_fix_top(erase_top(tau)), tau.position_of(tau.n))


def replay_trace(trace: BijectionTrace) -> bool:
    """Re-run the recorded steps on the input and compare with the output"""
    if trace.kind == 'p41':
        start = trace.input
    elif trace.kind == 'p42':
        start = erase_top(trace.input)
    else:
        raise DomainError(f"unknown trace kind {trace.kind!r}")
    rotation = rotate(start, trace.rotation_exponent)
    if rotation != trace.rotation:
        return False
    return insert_top(rotation, trace.insert_position) == trace.output


def _check_selection(tau: Permutation, j: int, k: int) -> int:
    n = tau.n
    _require_fixed_top(tau, "tau")
    if not 1 <= k <= n:
        raise DomainError(f"modulus k={k} out of range 1..{n}")
    if not 0 <= j < k:
        raise DomainError(f"residue j={j} out of range 0..{k - 1}")
    return n


def lemma_43_exponent(tau: Permutation, j: int, k: int, a: int) -> int:
    n = _check_selection(tau, j, k)
    if not 1 <= a <= n - k + 1:
        raise DomainError(f"offset a={a} out of range 1..{n - k + 1}")
    # tau fixes n, so maj((tau·gamma^i)^-1) = maj(tau^-1) + i exactly for i < n
    base = inverse_maj(tau)
    for i in range(a - 1, a + k - 1):
        if (base + i) % k == j:
            return i
    raise InvariantViolation(f"window of {k} rotations missed residue {j}")


def lemma_43_select(tau: Permutation, j: int, k: int, a: int) -> Permutation:
    """The unique tau·gamma^i in the k-rotation window with inverse maj ≡ j (mod k).

    The window is a-1 <= i <= a+k-2, which puts n at a position in
    [n-a-k+2, n-a+1].
    """
    return rotate(tau, lemma_43_exponent(tau, j, k, a))


def lemma_43_select_multi(tau: Permutation, j: int, k: int, s: int) -> Tuple[Permutation, ...]:
    """The s rotations among the first s*k with inverse maj ≡ j (mod k)"""
    n = _check_selection(tau, j, k)
    q = n // k
    if not 1 <= s <= q:
        raise DomainError(f"s={s} out of range 1..{q} (n={n}, k={k})")
    base = inverse_maj(tau)
    return tuple(rotate(tau, i) for i in range(s * k) if (base + i) % k == j)


@lru_cache(maxsize=None)
def _inverse_residue_words(m: int, k: int, residue: int) -> FrozenSet[Word]:
    """Words of S_m with inverse maj ≡ residue (mod k), built without census"""
    if k == 1:
        return frozenset(p.word for p in iter_permutations(m))
    if k == m:
        return frozenset(lemma_43_select(tau, residue, m, 1).word for tau in fixing_top(m))
    return _circular_construction_words(m, k, residue, True)


def _circular_construction_words(n: int, k: int, j: int, inductive: bool) -> FrozenSet[Word]:
    q, r = divmod(n, k)
    # Permutations fixing n have the inverse maj of their erasure, so the
    # degree n-1 solutions identify the classes that contribute a trailing pick
    trailing: Dict[int, FrozenSet[Word]] = {}
    if inductive:
        trailing = {t: _inverse_residue_words(n - 1, k, (j - t) % k) for t in range(r)}

    collected: List[Word] = []
    for tau in fixing_top(n):
        collected.extend(p.word for p in lemma_43_select_multi(tau, j, k, q))
        if not r:
            continue
        base = None if inductive else inverse_maj(tau)
        for t in range(r):
            if inductive:
                hit = tau.word[:-1] in trailing[t]
            else:
                hit = (base - (j - t)) % k == 0
            if hit:
                collected.append(rotate(tau, q * k + t).word)

    unique = frozenset(collected)
    if len(unique) != len(collected):
        raise InvariantViolation(f"circular construction repeated a permutation (n={n}, k={k}, j={j})")
    return unique


def count_by_circular_construction(n: int, k: int, j: int, inductive: bool = True) -> CircularConstruction:
    """All sigma in S_n with maj(sigma^-1) ≡ j (mod k), for 2 <= k <= n-1.

    Each class of a tau fixing n contributes q picks from its first q*k
    rotations (n = q*k + r), plus one from the trailing r rotations exactly
    when maj(tau^-1) ≡ j - t (mod k) for some t < r. With inductive=True
    those classes are identified from the same construction one degree
    lower; inductive=False filters A_n by residue directly.
    """
    if not 2 <= k <= n - 1:
        raise DomainError(f"modulus k={k} out of range 2..{n - 1}")
    if not 0 <= j < k:
        raise DomainError(f"residue j={j} out of range 0..{k - 1}")
    words = _circular_construction_words(n, k, j, inductive)
    certificate = tuple(Permutation._trusted(word) for word in sorted(words))
    return CircularConstruction(n=n, k=k, j=j, certificate=certificate)
