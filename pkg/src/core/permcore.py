#!/usr/bin/env python3
"""
Permutation Core
One-line permutations of 1..n, descents, major index, inverse, composition,
the n-cycle gamma and circular classes.

Conventions (used by every other module):
- positions and values are 1-indexed at the API boundary;
- composition is (p∘q)(x) = p(q(x)), so compose(p, gamma(n)) rotates the word
  of p one step to the LEFT: a1 a2 ... an -> a2 ... an a1. The opposite
  convention silently breaks every rotation-based construction downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import PermutationError

_SEPARATORS = re.compile(r"[,\s]+")


class Permutation:
    """Immutable permutation of 1..n stored as its one-line word"""

    __slots__ = ('_word',)

    def __init__(self, word: Iterable[int]):
        values = tuple(word)
        _check_word(values)
        object.__setattr__(self, '_word', values)

    @classmethod
    def _trusted(cls, word: Tuple[int, ...]) -> 'Permutation':
        # Skips validation; only for words built from an already valid permutation
        perm = object.__new__(cls)
        object.__setattr__(perm, '_word', word)
        return perm

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def word(self) -> Tuple[int, ...]:
        return self._word

    @property
    def n(self) -> int:
        return len(self._word)

    def __call__(self, x: int) -> int:
        """Value at position x (1-indexed)"""
        if not 1 <= x <= len(self._word):
            raise PermutationError(f"position {x} out of range 1..{len(self._word)}")
        return self._word[x - 1]

    def position_of(self, value: int) -> int:
        """Position (1-indexed) holding value, i.e. p^-1(value)"""
        return self._word.index(value) + 1

    def __len__(self) -> int:
        return len(self._word)

    def __iter__(self) -> Iterator[int]:
        return iter(self._word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._word == other._word

    def __lt__(self, other: 'Permutation') -> bool:
        return self._word < other._word

    def __hash__(self) -> int:
        return hash(self._word)

    def __repr__(self) -> str:
        return f"Permutation({format_compact(self)})"

    def __str__(self) -> str:
        return format_word(self)

    def __reduce__(self):
        return (Permutation, (self._word,))


@dataclass(frozen=True)
class DescentSet:
    """Descent positions of a permutation of degree n"""
    n: int
    positions: Tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, position: int) -> bool:
        return position in self.positions


def _check_word(values: Sequence[int]) -> None:
    if not values:
        raise PermutationError("empty word: a permutation needs at least one entry")
    n = len(values)
    seen = set()
    for value in values:
        if isinstance(value, bool) or not isinstance(value, int):
            raise PermutationError(f"word entries must be integers, got {value!r}")
        if not 1 <= value <= n:
            raise PermutationError(f"entry {value} out of range 1..{n}")
        if value in seen:
            raise PermutationError(f"duplicate value {value}")
        seen.add(value)


def from_word(values: Sequence[int]) -> Permutation:
    """Build a permutation from a rearrangement of 1..n"""
    return Permutation(values)


def identity(n: int) -> Permutation:
    if n < 1:
        raise PermutationError(f"degree must be positive, got {n}")
    return Permutation._trusted(tuple(range(1, n + 1)))


def reverse(n: int) -> Permutation:
    if n < 1:
        raise PermutationError(f"degree must be positive, got {n}")
    return Permutation._trusted(tuple(range(n, 0, -1)))


def gamma(n: int) -> Permutation:
    """The n-cycle i -> i+1 (mod n)"""
    if n < 1:
        raise PermutationError(f"degree must be positive, got {n}")
    return Permutation._trusted(tuple(range(2, n + 1)) + (1,))


def inverse(p: Permutation) -> Permutation:
    word = p.word
    inv = [0] * len(word)
    for position, value in enumerate(word, 1):
        inv[value - 1] = position
    return Permutation._trusted(tuple(inv))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p∘q)(x) = p(q(x))"""
    if p.n != q.n:
        raise PermutationError(f"degree mismatch: {p.n} vs {q.n}")
    pw = p.word
    return Permutation._trusted(tuple(pw[x - 1] for x in q.word))


def rotate(p: Permutation, t: int) -> Permutation:
    """p·gamma^t: the word rotated left by t (t taken mod n)"""
    word = p.word
    t %= len(word)
    if t == 0:
        return p
    return Permutation._trusted(word[t:] + word[:t])


def descent_set(p: Permutation) -> DescentSet:
    word = p.word
    positions = tuple(i for i in range(1, len(word)) if word[i - 1] > word[i])
    return DescentSet(n=len(word), positions=positions)


def maj(p: Permutation) -> int:
    """Major index: sum of descent positions"""
    word = p.word
    return sum(i for i in range(1, len(word)) if word[i - 1] > word[i])


def inverse_descents_by_word(p: Permutation) -> DescentSet:
    """Descents of p^-1 read off the word of p: i is one iff i sits right of i+1"""
    word = p.word
    position = [0] * (len(word) + 1)
    for pos, value in enumerate(word, 1):
        position[value] = pos
    positions = tuple(i for i in range(1, len(word)) if position[i] > position[i + 1])
    return DescentSet(n=len(word), positions=positions)


def inverse_maj(p: Permutation) -> int:
    """maj(p^-1), computed without materialising the inverse"""
    return sum(inverse_descents_by_word(p).positions)


def circular_class(p: Permutation) -> List[Permutation]:
    """[p] = {p·gamma^t : 0 <= t < n}, indexed by t"""
    return [rotate(p, t) for t in range(p.n)]


def erase_top(p: Permutation) -> Permutation:
    """Delete the value n from the word, giving a permutation of degree n-1"""
    n = p.n
    if n < 2:
        raise PermutationError("cannot erase the top value of a degree-1 permutation")
    return Permutation._trusted(tuple(v for v in p.word if v != n))


def successor(p: Permutation) -> Optional[Permutation]:
    """Next permutation in lexicographic order, or None after the last one"""
    word = list(p.word)
    i = len(word) - 2
    while i >= 0 and word[i] > word[i + 1]:
        i -= 1
    if i < 0:
        return None
    j = len(word) - 1
    while word[j] < word[i]:
        j -= 1
    word[i], word[j] = word[j], word[i]
    word[i + 1:] = reversed(word[i + 1:])
    return Permutation._trusted(tuple(word))


def iter_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order"""
    current: Optional[Permutation] = identity(n)
    while current is not None:
        yield current
        current = successor(current)


def fixing_top(n: int) -> List[Permutation]:
    """A_n: permutations of degree n with p(n) = n, in lexicographic order"""
    if n == 1:
        return [identity(1)]
    return [Permutation._trusted(q.word + (n,)) for q in iter_permutations(n - 1)]


def parse_word(text: str) -> Permutation:
    """Parse "3,4,5,2,6,1", "3 4 5 2 6 1" or, for n <= 9, "345261" """
    text = text.strip()
    if not text:
        raise PermutationError("empty word")
    if _SEPARATORS.search(text):
        tokens = [tok for tok in _SEPARATORS.split(text) if tok]
    elif text.isdigit():
        if len(text) > 9:
            raise PermutationError(
                f"compact word {text!r} is ambiguous above degree 9; separate entries with commas"
            )
        tokens = list(text)
    else:
        raise PermutationError(f"cannot parse word {text!r}")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise PermutationError(f"cannot parse word {text!r}") from None
    return from_word(values)


def format_word(p: Permutation) -> str:
    """Canonical serialization: comma-separated word"""
    return ",".join(str(v) for v in p.word)


def format_compact(p: Permutation) -> str:
    """Digit string for n <= 9 (as printed in the tables), comma form above"""
    if p.n <= 9:
        return "".join(str(v) for v in p.word)
    return format_word(p)
