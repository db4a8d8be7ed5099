#!/usr/bin/env python3
"""
Class Array
The n x (n-1) array of a seed fixing n-1: column j holds the rotation
seed·gamma^(j-1), row i has n inserted at position i, so row 1 puts n first
and row n puts it last. Every cell carries (maj, inverse maj).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import DomainError
from .insertion import insert_top
from .permcore import (
    Permutation,
    erase_top,
    format_compact,
    format_word,
    inverse_maj,
    maj,
    rotate,
)


@dataclass(frozen=True)
class ClassCell:
    row: int
    column: int
    permutation: Permutation
    maj: int
    inverse_maj: int

    def to_dict(self) -> Dict:
        return {
            'word': format_word(self.permutation),
            'maj': self.maj,
            'imaj': self.inverse_maj,
        }

    def render(self) -> str:
        return f"{format_compact(self.permutation)} ({self.maj},{self.inverse_maj})"


@dataclass(frozen=True)
class ClassArray:
    seed: Permutation
    cells: Tuple[Tuple[ClassCell, ...], ...]  # cells[i - 1][j - 1]

    @property
    def n(self) -> int:
        return self.seed.n + 1

    @property
    def caption(self) -> str:
        lifted = Permutation._trusted(self.seed.word + (self.n,))
        return f"Class of the permutation {format_compact(lifted)} in S_{self.n}"

    def cell(self, i: int, j: int) -> ClassCell:
        if not 1 <= i <= self.n or not 1 <= j <= self.n - 1:
            raise DomainError(f"cell ({i}, {j}) outside the {self.n} x {self.n - 1} array")
        return self.cells[i - 1][j - 1]

    def row(self, i: int) -> Tuple[ClassCell, ...]:
        return self.cells[i - 1]

    def column(self, j: int) -> Tuple[ClassCell, ...]:
        return tuple(row[j - 1] for row in self.cells)

    def permutations(self) -> List[Permutation]:
        return [cell.permutation for row in self.cells for cell in row]

    def column_maj_interval(self, j: int) -> Tuple[int, int]:
        majs = [cell.maj for cell in self.column(j)]
        return min(majs), max(majs)

    def row_inverse_residues(self, i: int) -> Tuple[int, ...]:
        """Inverse maj mod n-1 along row i, column by column"""
        return tuple(cell.inverse_maj % (self.n - 1) for cell in self.row(i))

    def check_invariants(self) -> List[str]:
        """Structural checks; returns a list of issues (empty when valid)"""
        issues = []
        n = self.n

        for row in self.cells:
            for cell in row:
                expected = rotate(self.seed, cell.column - 1)
                if erase_top(cell.permutation) != expected:
                    issues.append(f"cell ({cell.row},{cell.column}) does not erase to seed rotation {cell.column - 1}")

        # each column: one insertion class, maj values consecutive
        for j in range(1, n):
            low, high = self.column_maj_interval(j)
            majs = sorted(cell.maj for cell in self.column(j))
            if majs != list(range(low, high + 1)) or high - low != n - 1:
                issues.append(f"column {j} maj values {majs} are not consecutive")

        # each row: a complete residue system of inverse maj mod n-1
        for i in range(1, n + 1):
            residues = sorted(self.row_inverse_residues(i))
            if residues != list(range(n - 1)):
                issues.append(f"row {i} inverse maj residues {residues} are not complete mod {n - 1}")

        # row i, columns 1..n-i: n sits left of n-1, inverse maj climbs by one
        for i in range(1, n):
            values = [self.cell(i, j).inverse_maj for j in range(1, n - i + 1)]
            if values != list(range(values[0], values[0] + len(values))):
                issues.append(f"row {i} columns 1..{n - i} inverse maj {values} are not consecutive")

        return issues

    def render_text(self) -> str:
        lines = [self.caption]
        for row in self.cells:
            lines.append("  ".join(cell.render() for cell in row))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict:
        return {
            'seed': format_word(self.seed),
            'n': self.n,
            'caption': self.caption,
            'rows': [[cell.to_dict() for cell in row] for row in self.cells],
        }


def build_class_array(seed: Permutation) -> ClassArray:
    """Array of the circular class of seed (which must fix its top value)"""
    m = seed.n
    if seed(m) != m:
        raise DomainError(f"seed {format_word(seed)} must fix {m}")
    n = m + 1
    rotations = [rotate(seed, t) for t in range(m)]
    rows = []
    for i in range(1, n + 1):
        row = []
        for j, rotation in enumerate(rotations, 1):
            perm = insert_top(rotation, i)
            row.append(ClassCell(row=i, column=j, permutation=perm, maj=maj(perm), inverse_maj=inverse_maj(perm)))
        rows.append(tuple(row))
    return ClassArray(seed=seed, cells=tuple(rows))
