#!/usr/bin/env python3
"""
Insertion of the top value
Given base ∈ S_{n-1}, sigma_k is the permutation of degree n obtained by
inserting n at position k (1 <= k <= n). This module holds the closed-form
major index differences, the maj-increasing insertion order, residue-targeted
insertion and the inverse-maj preservation witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import DomainError, InvariantViolation, PermutationError
from .permcore import (
    Permutation,
    descent_set,
    inverse_maj,
    iter_permutations,
    maj,
)


@dataclass(frozen=True)
class InsertionProfile:
    """maj(sigma_i) for every insertion position, plus the +1 order"""
    base: Permutation
    majs: Tuple[int, ...]  # majs[i - 1] = maj(sigma_i)
    order: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n + 1

    @property
    def interval(self) -> Tuple[int, int]:
        low = maj(self.base)
        return low, low + self.n - 1

    def is_consecutive(self) -> bool:
        low, high = self.interval
        return sorted(self.majs) == list(range(low, high + 1))

    def majs_along_order(self) -> Tuple[int, ...]:
        return tuple(self.majs[position - 1] for position in self.order)


@dataclass(frozen=True)
class InverseMajWitness:
    """maj of the inverse before and after inserting n"""
    before: int
    after: int
    modulus: int  # n - 1

    @property
    def difference(self) -> int:
        return self.after - self.before

    @property
    def holds(self) -> bool:
        return self.difference % self.modulus == 0

    @property
    def dichotomy_holds(self) -> bool:
        """The difference is exactly 0 or n-1, never another multiple"""
        return self.difference in (0, self.modulus)


@dataclass(frozen=True)
class WindowWitness:
    """Insertion window whose maj values are not consecutive integers"""
    base: Permutation
    positions: Tuple[int, ...]
    majs: Tuple[int, ...]


def _check_position(base: Permutation, position: int) -> int:
    n = base.n + 1
    if not 1 <= position <= n:
        raise PermutationError(f"insertion position {position} out of range 1..{n}")
    return n


def insert_top(base: Permutation, position: int) -> Permutation:
    """Splice the value n = base.n + 1 into the word at `position`"""
    n = _check_position(base, position)
    word = base.word
    return Permutation._trusted(word[:position - 1] + (n,) + word[position - 1:])


def maj_delta(base: Permutation, k: int) -> int:
    """maj(sigma_k) - maj(base) by the four-case closed form"""
    n = _check_position(base, k)
    if k == n:
        return 0
    descents = descent_set(base).positions
    d = len(descents)

    # (1) right after the j-th descent
    for j, i_j in enumerate(descents, 1):
        if k == i_j + 1:
            return d - j + 1
    # (2) at or before the first descent (also covers a base with no descents)
    if d == 0 or k <= descents[0]:
        return d + k
    # (4) past the last descent, not immediately after it
    if k >= descents[-1] + 2:
        return k
    # (3) strictly between two descents: 1 + i_j < k <= i_{j+1}
    for j in range(1, d):
        if descents[j - 1] + 1 < k <= descents[j]:
            return (d - j) + k
    raise InvariantViolation(f"no insertion case matched base={base!r} k={k}")


def insertion_order(base: Permutation) -> Tuple[int, ...]:
    """Positions along which maj rises by exactly one per step"""
    n = base.n + 1
    descents = descent_set(base).positions
    after_descents = tuple(i + 1 for i in reversed(descents))
    taken = set(after_descents)
    remaining = tuple(k for k in range(1, n) if k not in taken)
    return (n,) + after_descents + remaining


def insertion_profile(base: Permutation) -> InsertionProfile:
    n = base.n + 1
    majs = tuple(maj(insert_top(base, k)) for k in range(1, n + 1))
    return InsertionProfile(base=base, majs=majs, order=insertion_order(base))


def prefix_maj_segment(base: Permutation, k: int) -> Tuple[int, int]:
    """(min, max) of maj over sigma_1..sigma_k"""
    n = base.n + 1
    if not 1 <= k <= n:
        raise PermutationError(f"prefix length {k} out of range 1..{n}")
    values = [maj(insert_top(base, position)) for position in range(1, k + 1)]
    return min(values), max(values)


def predicted_next_maj(base: Permutation, k: int) -> int:
    """Predicted maj(sigma_{k+1}) from the prefix segment [m+1, m+k].

    It is m when k is a descent of base, m+k+1 otherwise. Position n-1 behaves
    like a descent: sigma_n keeps maj(base), which is the bottom of the range.
    """
    n = base.n + 1
    if not 1 <= k <= n - 1:
        raise PermutationError(f"prefix length {k} out of range 1..{n - 1}")
    low, high = prefix_maj_segment(base, k)
    if k in descent_set(base) or k == n - 1:
        return low - 1
    return high + 1


def position_for_maj_residue(base: Permutation, i: int, k: int) -> Tuple[int, ...]:
    """Positions whose insertion gives maj ≡ i (mod k), in increasing maj order.

    For k = n the result is the single position of the bijective step; for
    k | n it holds exactly n/k positions.
    """
    n = base.n + 1
    if not 1 <= k <= n:
        raise DomainError(f"modulus k={k} out of range 1..{n}")
    if not 0 <= i < k:
        raise DomainError(f"residue i={i} out of range 0..{k - 1}")
    low = maj(base)
    matches = sorted(
        (low + maj_delta(base, position), position)
        for position in range(1, n + 1)
        if (low + maj_delta(base, position)) % k == i
    )
    positions = tuple(position for _, position in matches)
    if n % k == 0 and len(positions) != n // k:
        raise InvariantViolation(
            f"expected {n // k} positions for residue {i} mod {k}, found {len(positions)} (base={base!r})"
        )
    return positions


def inverse_maj_preserved(base: Permutation, position: int) -> InverseMajWitness:
    n = _check_position(base, position)
    return InverseMajWitness(
        before=inverse_maj(base),
        after=inverse_maj(insert_top(base, position)),
        modulus=n - 1,
    )


def window_majs(base: Permutation, start: int, stop: int) -> Tuple[int, ...]:
    """maj(sigma_start), ..., maj(sigma_stop)"""
    n = base.n + 1
    if not 1 <= start <= stop <= n:
        raise PermutationError(f"window [{start}, {stop}] out of range 1..{n}")
    return tuple(maj(insert_top(base, position)) for position in range(start, stop + 1))


def _is_consecutive(values: Tuple[int, ...]) -> bool:
    low = min(values)
    return sorted(values) == list(range(low, low + len(values)))


def find_nonconsecutive_window(n: int) -> Optional[WindowWitness]:
    """First base (lexicographic) and window {sigma_j..sigma_{j+r}}, j > 1,
    r >= 1, whose maj values are not consecutive; None if no such window."""
    if n < 2:
        raise DomainError(f"degree n={n} must be at least 2")
    for base in iter_permutations(n - 1):
        majs: List[int] = [maj(insert_top(base, k)) for k in range(1, n + 1)]
        for start in range(2, n + 1):
            for stop in range(start + 1, n + 1):
                window = tuple(majs[start - 1:stop])
                if not _is_consecutive(window):
                    return WindowWitness(
                        base=base,
                        positions=tuple(range(start, stop + 1)),
                        majs=window,
                    )
    return None
