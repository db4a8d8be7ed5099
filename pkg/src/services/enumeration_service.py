#!/usr/bin/env python3
"""
Enumeration Service
Exact counting of permutations by (maj mod k, inverse maj mod l).

Brute force walks S_n in prefix blocks of the lexicographic order, tallies
the joint (maj, inverse maj) table with numpy, and folds that table into
every count, matrix and distribution. Closed forms and the recurrence are
checked against it.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import config
from ..core.errors import DegreeLimitError, DomainError, FormulaNotApplicable, InvariantViolation
from ..core.polynomials import QPolynomial, q_factorial, reduce_mod_qk
from ..utils.progress import ProgressBar

METHODS = ('brute', 'closed', 'recurrence')
SIDES = ('maj', 'inverse')


@dataclass(frozen=True)
class CongruenceQuery:
    n: int
    k: int
    l: int
    i: int
    j: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"degree n={self.n} must be positive")
        if self.k < 1 or self.l < 1:
            raise DomainError(f"moduli must be positive (k={self.k}, l={self.l})")
        if not 0 <= self.i < self.k:
            raise DomainError(f"residue i={self.i} out of range 0..{self.k - 1}")
        if not 0 <= self.j < self.l:
            raise DomainError(f"residue j={self.j} out of range 0..{self.l - 1}")


@dataclass(frozen=True)
class CountMatrix:
    """entries[i][j] = #{sigma in S_n : maj ≡ i (mod k), inverse maj ≡ j (mod l)}"""
    n: int
    k: int
    l: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.k or any(len(row) != self.l for row in self.entries):
            raise DomainError(f"entries must form a {self.k} x {self.l} grid")

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def row_sums(self) -> List[int]:
        return [sum(row) for row in self.entries]

    def column_sums(self) -> List[int]:
        return [sum(row[j] for row in self.entries) for j in range(self.l)]

    def total(self) -> int:
        return sum(self.row_sums())

    def transpose(self) -> 'CountMatrix':
        columns = tuple(tuple(row[j] for row in self.entries) for j in range(self.l))
        return CountMatrix(n=self.n, k=self.l, l=self.k, entries=columns)

    def is_symmetric(self) -> bool:
        return self.k == self.l and self.entries == self.transpose().entries

    def check_margins(self) -> List[str]:
        issues = []
        size = math.factorial(self.n)
        if self.total() != size:
            issues.append(f"total {self.total()} != {self.n}! = {size}")
        if self.k <= self.n:
            for i, value in enumerate(self.row_sums()):
                if value != size // self.k:
                    issues.append(f"row {i} sums to {value}, expected {size // self.k}")
        if self.l <= self.n:
            for j, value in enumerate(self.column_sums()):
                if value != size // self.l:
                    issues.append(f"column {j} sums to {value}, expected {size // self.l}")
        return issues

    def to_dict(self) -> Dict:
        return {'n': self.n, 'k': self.k, 'l': self.l, 'entries': [list(row) for row in self.entries]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'CountMatrix':
        return cls(
            n=int(data['n']),
            k=int(data['k']),
            l=int(data['l']),
            entries=tuple(tuple(int(x) for x in row) for row in data['entries']),
        )

    def csv_rows(self) -> List[List]:
        rows: List[List] = [["i\\j"] + list(range(self.l))]
        rows.extend([i] + list(row) for i, row in enumerate(self.entries))
        return rows

    def to_csv(self) -> str:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(self.csv_rows())
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int) -> 'CountMatrix':
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], [row for row in rows[1:] if row]
        entries = tuple(tuple(int(x) for x in row[1:]) for row in body)
        return cls(n=n, k=len(entries), l=len(header) - 1, entries=entries)

    def render_text(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        lines = [f"m_{self.n}(i mod {self.k}; j mod {self.l})"]
        for i, row in enumerate(self.entries):
            lines.append(f"i={i}: " + " ".join(str(x).rjust(width) for x in row))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _suffix_pattern(degree: int) -> np.ndarray:
    """Index words of S_degree (0-based) in lexicographic order"""
    pattern = np.array(list(itertools.permutations(range(degree))), dtype=np.int8)
    return pattern.reshape(-1, degree)


def joint_tally(words: np.ndarray) -> np.ndarray:
    """(maj, inverse maj) histogram of a batch of words, one word per row"""
    rows, n = words.shape
    top = n * (n - 1) // 2
    weights = np.arange(1, n, dtype=np.int64)
    majs = (words[:, :-1] > words[:, 1:]).astype(np.int64) @ weights
    # argsort of a permutation row gives the position of each value
    positions = np.argsort(words, axis=1)
    imajs = (positions[:, :-1] > positions[:, 1:]).astype(np.int64) @ weights
    flat = np.bincount(majs * (top + 1) + imajs, minlength=(top + 1) ** 2)
    return flat.reshape(top + 1, top + 1).astype(np.int64)


def _fold(table: np.ndarray, modulus: int, axis: int) -> np.ndarray:
    moved = np.moveaxis(table, axis, 0)
    folded = np.zeros((modulus,) + moved.shape[1:], dtype=np.int64)
    np.add.at(folded, np.arange(moved.shape[0]) % modulus, moved)
    return np.moveaxis(folded, 0, axis)


class EnumerationService:
    def __init__(self, threads: Optional[int] = None, block_degree: Optional[int] = None,
                 progress_min_degree: Optional[int] = None):
        self.threads = threads or config.ENUM_THREADS
        self.block_degree = block_degree or config.ENUM_BLOCK_DEGREE
        self.progress_min_degree = progress_min_degree or config.PROGRESS_MIN_DEGREE
        self._joint: Dict[int, np.ndarray] = {}
        self._matrices: Dict[Tuple[int, int, int, str], CountMatrix] = {}
        self._lock = threading.Lock()

    # -- brute force -------------------------------------------------------

    def _check_degree(self, n: int) -> None:
        if n < 1:
            raise DomainError(f"degree n={n} must be positive")
        if n > config.MAX_DEGREE:
            raise DegreeLimitError(f"n={n} exceeds the enumeration ceiling {config.MAX_DEGREE}")

    def prefix_blocks(self, n: int) -> List[Tuple[int, ...]]:
        """Prefixes splitting S_n into lexicographic blocks of suffix degree <= block_degree"""
        length = max(0, n - self.block_degree)
        return list(itertools.permutations(range(1, n + 1), length))

    def tally_block(self, n: int, prefix: Sequence[int]) -> np.ndarray:
        rest = np.array(sorted(set(range(1, n + 1)) - set(prefix)), dtype=np.int8)
        suffixes = rest[_suffix_pattern(len(rest))]
        if prefix:
            head = np.broadcast_to(np.array(prefix, dtype=np.int8), (len(suffixes), len(prefix)))
            words = np.hstack([head, suffixes])
        else:
            words = suffixes
        return joint_tally(words)

    def tally_blocks(self, n: int, blocks: Sequence[Tuple[int, ...]],
                     progress: Optional[bool] = None) -> np.ndarray:
        """Sum of block tallies; the result does not depend on block order or thread count"""
        show = progress if progress is not None else n >= self.progress_min_degree
        bar = ProgressBar(total=len(blocks), label=f"S_{n} ", enabled=show)
        size = n * (n - 1) // 2 + 1
        total = np.zeros((size, size), dtype=np.int64)

        if self.threads == 1 or len(blocks) == 1:
            for prefix in blocks:
                total += self.tally_block(n, prefix)
                bar.advance()
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                futures = [pool.submit(self.tally_block, n, prefix) for prefix in blocks]
                for future in as_completed(futures):
                    total += future.result()
                    bar.advance()
        bar.finish()
        return total

    def joint_distribution(self, n: int, progress: Optional[bool] = None) -> np.ndarray:
        """table[a, b] = #{sigma in S_n : maj = a, inverse maj = b}; cached per n"""
        self._check_degree(n)
        with self._lock:
            cached = self._joint.get(n)
        if cached is not None:
            return cached

        table = self.tally_blocks(n, self.prefix_blocks(n), progress=progress)
        if int(table.sum()) != math.factorial(n):
            raise InvariantViolation(f"enumeration of S_{n} counted {int(table.sum())} permutations")
        table.setflags(write=False)
        with self._lock:
            self._joint[n] = table
        return table

    def _brute_matrix(self, n: int, k: int, l: int) -> CountMatrix:
        grid = _fold(_fold(self.joint_distribution(n), k, 0), l, 1)
        return CountMatrix(n=n, k=k, l=l, entries=tuple(tuple(row) for row in grid.tolist()))

    def count_bruteforce(self, query: CongruenceQuery) -> int:
        self._check_degree(query.n)
        return self.count_matrix(query.n, query.k, query.l, 'brute').entry(query.i, query.j)

    # -- closed forms ------------------------------------------------------

    def count_closed_form(self, query: CongruenceQuery) -> int:
        """n!/(k*l) when k | n and l | n-1, with k, l != 1"""
        n, k, l = query.n, query.k, query.l
        problems = []
        if k == 1:
            problems.append("k=1 is excluded (the formula needs k != 1)")
        elif n % k:
            problems.append(f"k={k} does not divide n={n}")
        if l == 1:
            problems.append("l=1 is excluded (the formula needs l != 1)")
        elif (n - 1) % l:
            problems.append(f"l={l} does not divide n-1={n - 1}")
        if problems:
            raise FormulaNotApplicable("closed form not applicable: " + "; ".join(problems))
        return math.factorial(n) // (k * l)

    def count_maj_residue(self, n: int, k: int, j: int, side: str = 'maj', method: str = 'closed') -> int:
        """#{sigma in S_n : maj(sigma) ≡ j (mod k)}, or the same for maj(sigma^-1)"""
        if side not in SIDES:
            raise DomainError(f"side must be one of {SIDES}, got {side!r}")
        if not 1 <= k <= n:
            raise DomainError(f"modulus k={k} out of range 1..{n}")
        if not 0 <= j < k:
            raise DomainError(f"residue j={j} out of range 0..{k - 1}")

        if method == 'closed':
            return math.factorial(n) // k
        if method == 'gf':
            return reduce_mod_qk(q_factorial(n), k)[j]
        if method == 'brute':
            return int(_fold(self._marginal(n, side), k, 0)[j])
        raise DomainError(f"unknown method {method!r} (closed, brute, gf)")

    def count_recurrence(self, n: int, k: int, l: int, i: int, j: int, prev: int) -> int:
        """(n-2)! (n-1)^2 / (k l) + m_{n-1}(i mod k; j mod l), for k, l | n-1"""
        CongruenceQuery(n=n, k=k, l=l, i=i, j=j)
        problems = []
        for name, modulus in (('k', k), ('l', l)):
            if modulus == 1:
                problems.append(f"{name}=1 is excluded (the recurrence needs {name} != 1)")
            elif (n - 1) % modulus:
                problems.append(f"{name}={modulus} does not divide n-1={n - 1}")
        if problems:
            raise FormulaNotApplicable("recurrence not applicable: " + "; ".join(problems))
        return math.factorial(n - 2) * ((n - 1) // k) * ((n - 1) // l) + prev

    def count_matrix(self, n: int, k: int, l: int, method: str = 'brute') -> CountMatrix:
        if method not in METHODS:
            raise DomainError(f"unknown method {method!r} (one of {', '.join(METHODS)})")
        if k < 1 or l < 1:
            raise DomainError(f"moduli must be positive (k={k}, l={l})")
        key = (n, k, l, method)
        with self._lock:
            cached = self._matrices.get(key)
        if cached is not None:
            return cached

        if method == 'brute':
            matrix = self._brute_matrix(n, k, l)
        elif method == 'closed':
            entries = tuple(
                tuple(self.count_closed_form(CongruenceQuery(n, k, l, i, j)) for j in range(l))
                for i in range(k)
            )
            matrix = CountMatrix(n=n, k=k, l=l, entries=entries)
        else:
            self._check_degree(n)
            if n < 2:
                raise FormulaNotApplicable("recurrence needs n >= 2")
            prev = self.count_matrix(n - 1, k, l, 'brute')
            entries = tuple(
                tuple(self.count_recurrence(n, k, l, i, j, prev.entry(i, j)) for j in range(l))
                for i in range(k)
            )
            matrix = CountMatrix(n=n, k=k, l=l, entries=entries)

        with self._lock:
            self._matrices[key] = matrix
        return matrix

    # -- distributions and symmetry ----------------------------------------

    def _marginal(self, n: int, side: str) -> np.ndarray:
        joint = self.joint_distribution(n)
        return joint.sum(axis=1) if side == 'maj' else joint.sum(axis=0)

    def maj_distribution(self, n: int, side: str = 'maj') -> QPolynomial:
        if side not in SIDES:
            raise DomainError(f"side must be one of {SIDES}, got {side!r}")
        return QPolynomial(self._marginal(n, side).tolist())

    def symmetry_check(self, n: int, k: int, l: int) -> bool:
        """m_n(i mod k; j mod l) = m_n(j mod l; i mod k) for all i, j.

        Inversion swaps maj and inverse maj, so the joint table must equal its
        transpose; the folded matrices must then agree.
        """
        joint = self.joint_distribution(n)
        if not np.array_equal(joint, joint.T):
            return False
        return self.count_matrix(n, k, l).entries == self.count_matrix(n, l, k).transpose().entries

    # -- brute-force observations ------------------------------------------

    def observe_k_divides_n_minus_2(self, n: int) -> List[Dict]:
        """For k | n-2 (k >= 2) and l | n-1 (l >= 2): is the brute matrix constant?"""
        findings = []
        if n < 3:
            return findings
        for k in range(2, n - 1):
            if (n - 2) % k:
                continue
            for l in range(2, n):
                if (n - 1) % l:
                    continue
                matrix = self.count_matrix(n, k, l)
                values = sorted({x for row in matrix.entries for x in row})
                findings.append({
                    'n': n, 'k': k, 'l': l,
                    'constant': len(values) == 1,
                    'values': values,
                })
        return findings

    def observe_trivial_moduli(self, n: int) -> List[Dict]:
        """With k=1 (or l=1) and the other modulus m <= n, every entry is n!/m"""
        findings = []
        size = math.factorial(n)
        for m in range(1, n + 1):
            for k, l in ((1, m), (m, 1)):
                matrix = self.count_matrix(n, k, l)
                expected = size // (k * l)
                findings.append({
                    'n': n, 'k': k, 'l': l,
                    'expected': expected,
                    'matches': all(x == expected for row in matrix.entries for x in row),
                })
        return findings


enumeration_service = EnumerationService()
