#!/usr/bin/env python3
"""
q-Polynomials
Integer polynomials in q used as generating functions for maj, and their
reduction modulo 1 - q^k.
"""

from __future__ import annotations

from typing import Iterable, List, Tuple

from .errors import DomainError


class QPolynomial:
    """Polynomial with nonnegative integer coefficients, lowest degree first"""

    __slots__ = ('_coefficients',)

    def __init__(self, coefficients: Iterable[int]):
        values = [int(c) for c in coefficients]
        if any(c < 0 for c in values):
            raise DomainError("coefficients must be nonnegative")
        while values and values[-1] == 0:
            values.pop()
        self._coefficients: Tuple[int, ...] = tuple(values)

    @classmethod
    def one(cls) -> 'QPolynomial':
        return cls((1,))

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self._coefficients

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self._coefficients) - 1

    def total(self) -> int:
        """Value at q = 1"""
        return sum(self._coefficients)

    def evaluate(self, q: int) -> int:
        result = 0
        for c in reversed(self._coefficients):
            result = result * q + c
        return result

    def is_palindromic(self) -> bool:
        return self._coefficients == self._coefficients[::-1]

    def __getitem__(self, exponent: int) -> int:
        if 0 <= exponent < len(self._coefficients):
            return self._coefficients[exponent]
        return 0

    def __len__(self) -> int:
        return len(self._coefficients)

    def __add__(self, other: 'QPolynomial') -> 'QPolynomial':
        size = max(len(self), len(other))
        return QPolynomial(self[e] + other[e] for e in range(size))

    def __mul__(self, other: 'QPolynomial') -> 'QPolynomial':
        if not self._coefficients or not other._coefficients:
            return QPolynomial(())
        product = [0] * (len(self) + len(other) - 1)
        for a, x in enumerate(self._coefficients):
            if not x:
                continue
            for b, y in enumerate(other._coefficients):
                product[a + b] += x * y
        return QPolynomial(product)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(self._coefficients)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self._coefficients)})"

    def to_list(self) -> List[int]:
        return list(self._coefficients)


def q_integer(m: int) -> QPolynomial:
    """[m]_q = 1 + q + ... + q^(m-1)"""
    if m < 1:
        raise DomainError(f"q-integer needs m >= 1, got {m}")
    return QPolynomial([1] * m)


def q_factorial(n: int) -> QPolynomial:
    """prod_{i=1}^{n-1} (1 + q + ... + q^i), the maj generating function of S_n"""
    if n < 1:
        raise DomainError(f"degree must be positive, got {n}")
    result = QPolynomial.one()
    for m in range(2, n + 1):
        result = result * q_integer(m)
    return result


def reduce_mod_qk(poly: QPolynomial, k: int) -> Tuple[int, ...]:
    """Fold coefficients by exponent mod k (q^k = 1); entry r is the r-th class total"""
    if k < 1:
        raise DomainError(f"modulus k={k} must be positive")
    folded = [0] * k
    for exponent, c in enumerate(poly.coefficients):
        folded[exponent % k] += c
    return tuple(folded)
