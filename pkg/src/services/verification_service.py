#!/usr/bin/env python3
"""
Verification Service
Exhaustive invariant suites over S_n. Each suite stops at its first
counterexample and reports it as a word plus the residues involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from config import config
from ..core.bijections import (
    bijection_41_forward,
    bijection_41_inverse,
    bijection_41_trace,
    bijection_42_forward,
    bijection_42_inverse,
    bijection_42_trace,
    count_by_circular_construction,
    lemma_43_select,
    lemma_43_select_multi,
    replay_trace,
)
from ..core.class_array import build_class_array
from ..core.errors import DomainError
from ..core.insertion import insert_top, insertion_order, maj_delta
from ..core.permcore import (
    Permutation,
    descent_set,
    erase_top,
    fixing_top,
    format_word,
    inverse,
    inverse_descents_by_word,
    inverse_maj,
    iter_permutations,
    maj,
    parse_word,
    rotate,
)
from ..core.polynomials import q_factorial, reduce_mod_qk
from ..data.fixture_repository import fixture_repository
from .enumeration_service import CongruenceQuery, enumeration_service
from ..utils.progress import status

SUITES = ('lemma21', 'lemma22', 'lemma24', 'prop25', 'thm31', 'prop32', 'symmetry', 'bijections', 'tables')


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checked: int = 0
    max_degree: int = 0
    counterexample: Optional[Dict] = None

    def fail(self, message: str, perm: Optional[Permutation] = None, **details) -> 'SuiteResult':
        self.passed = False
        example: Dict = {'message': message}
        if perm is not None:
            example['word'] = format_word(perm)
            example['n'] = perm.n
        example.update(details)
        self.counterexample = example
        return self

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'max_degree': self.max_degree,
            'counterexample': self.counterexample,
        }


class VerificationService:
    """Runs the invariant suites; maj_fn replaces the major index for negative tests"""

    def __init__(self, enumeration=None, fixtures=None,
                 maj_fn: Optional[Callable[[Permutation], int]] = None):
        self.enumeration = enumeration or enumeration_service
        self.fixtures = fixtures or fixture_repository
        self.maj = maj_fn or maj
        if maj_fn is None:
            self.inverse_maj = inverse_maj
        else:
            self.inverse_maj = lambda p: maj_fn(inverse(p))

    def run(self, n_max: int, suites: Optional[Iterable[str]] = None, verbose: bool = False) -> List[SuiteResult]:
        if not 1 <= n_max <= config.MAX_DEGREE:
            raise DomainError(f"n_max={n_max} out of range 1..{config.MAX_DEGREE}")
        names = list(suites or SUITES)
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise DomainError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")

        results = []
        for name in names:
            result = getattr(self, f"suite_{name}")(n_max)
            if verbose:
                mark = "✅" if result.passed else "❌"
                status(f"{mark} {name}: {result.checked} checks up to n={result.max_degree}")
            results.append(result)
        return results

    def _census(self, n: int) -> List[Tuple[Permutation, int, int]]:
        return [(p, self.maj(p), self.inverse_maj(p)) for p in iter_permutations(n)]

    # -- lemmas --------------------------------------------------------------

    def suite_lemma21(self, n_max: int) -> SuiteResult:
        """Rotation shifts inverse maj by +1 mod n; inverse descents read off the word"""
        result = SuiteResult('lemma21', max_degree=min(n_max, config.VERIFY_LEMMA_MAX_DEGREE))
        for n in range(1, result.max_degree + 1):
            for tau in fixing_top(n):
                base = self.inverse_maj(tau)
                for t in range(n):
                    member = rotate(tau, t)
                    value = self.inverse_maj(member)
                    result.checked += 1
                    if value != base + t:
                        return result.fail("inverse maj along the class is not maj(tau^-1) + t",
                                           member, t=t, expected=base + t, got=value)
                    step = self.inverse_maj(rotate(member, 1)) - value
                    expected_step = -(n - 1) if member(1) == n else 1
                    if n > 1 and step != expected_step:
                        return result.fail("rotation step differs from +1 / -(n-1)",
                                           member, step=step, expected=expected_step)
            if n <= config.VERIFY_BIJECTION_MAX_DEGREE:
                for p in iter_permutations(n):
                    result.checked += 1
                    if descent_set(inverse(p)).positions != inverse_descents_by_word(p).positions:
                        return result.fail("inverse descents do not match the word rule", p)
        return result

    def suite_lemma22(self, n_max: int) -> SuiteResult:
        """Inserting n sweeps maj over [maj(base), maj(base) + n - 1]"""
        result = SuiteResult('lemma22', max_degree=min(n_max, config.VERIFY_LEMMA_MAX_DEGREE))
        for n in range(2, result.max_degree + 1):
            for base in iter_permutations(n - 1):
                low = self.maj(base)
                majs = [self.maj(insert_top(base, k)) for k in range(1, n + 1)]
                result.checked += 1
                if sorted(majs) != list(range(low, low + n)):
                    return result.fail("insertion majs are not the interval [maj, maj+n-1]",
                                       base, maj=low, insertion_majs=majs)
                for k in range(1, n + 1):
                    if maj_delta(base, k) != majs[k - 1] - low:
                        return result.fail("closed-form maj difference disagrees",
                                           base, position=k, delta=maj_delta(base, k), got=majs[k - 1] - low)
                along = [majs[position - 1] for position in insertion_order(base)]
                if along != list(range(low, low + n)):
                    return result.fail("insertion order does not raise maj by one per step",
                                       base, majs_along_order=along)
        return result

    def suite_lemma24(self, n_max: int) -> SuiteResult:
        """Inverse maj changes by 0 or n-1 on inserting n"""
        result = SuiteResult('lemma24', max_degree=min(n_max, config.VERIFY_LEMMA_MAX_DEGREE))
        for n in range(2, result.max_degree + 1):
            for base in iter_permutations(n - 1):
                before = self.inverse_maj(base)
                anchor = base.position_of(n - 1)
                for position in range(1, n + 1):
                    difference = self.inverse_maj(insert_top(base, position)) - before
                    expected = n - 1 if position <= anchor else 0
                    result.checked += 1
                    if difference != expected:
                        return result.fail("inverse maj difference is not 0 / n-1 as predicted",
                                           base, position=position, difference=difference, expected=expected)
        return result

    # -- counting identities -----------------------------------------------

    def suite_prop25(self, n_max: int) -> SuiteResult:
        """maj and inverse maj each hit every residue mod k <= n exactly n!/k times"""
        result = SuiteResult('prop25', max_degree=min(n_max, config.VERIFY_COUNT_MAX_DEGREE))
        for n in range(1, result.max_degree + 1):
            if self.enumeration.maj_distribution(n) != q_factorial(n):
                return result.fail("maj distribution differs from the q-factorial", n=n)
            for k in range(1, n + 1):
                folded = reduce_mod_qk(q_factorial(n), k)
                for j in range(k):
                    expected = math.factorial(n) // k
                    counts = {
                        side: self.enumeration.count_maj_residue(n, k, j, side=side, method='brute')
                        for side in ('maj', 'inverse')
                    }
                    result.checked += 1
                    if counts['maj'] != expected or counts['inverse'] != expected or folded[j] != expected:
                        return result.fail("residue class count differs from n!/k",
                                           n=n, k=k, j=j, expected=expected, gf=folded[j], **counts)
        return result

    def suite_thm31(self, n_max: int) -> SuiteResult:
        """m_n(i mod k; j mod l) = n!/(kl) for k | n, l | n-1"""
        result = SuiteResult('thm31', max_degree=min(n_max, config.VERIFY_COUNT_MAX_DEGREE))
        for n in range(2, result.max_degree + 1):
            for k in _divisors(n):
                for l in _divisors(n - 1):
                    matrix = self.enumeration.count_matrix(n, k, l, 'brute')
                    for i in range(k):
                        for j in range(l):
                            expected = self.enumeration.count_closed_form(CongruenceQuery(n, k, l, i, j))
                            result.checked += 1
                            if matrix.entry(i, j) != expected:
                                return result.fail("brute count differs from n!/(kl)", n=n, k=k, l=l,
                                                   i=i, j=j, expected=expected, got=matrix.entry(i, j))
        return result

    def suite_prop32(self, n_max: int) -> SuiteResult:
        result = SuiteResult('prop32', max_degree=min(n_max, config.VERIFY_COUNT_MAX_DEGREE))
        for n in range(3, result.max_degree + 1):
            for k in _divisors(n - 1):
                for l in _divisors(n - 1):
                    brute = self.enumeration.count_matrix(n, k, l, 'brute')
                    recurrence = self.enumeration.count_matrix(n, k, l, 'recurrence')
                    result.checked += k * l
                    if brute.entries != recurrence.entries:
                        return result.fail("recurrence disagrees with brute force", n=n, k=k, l=l,
                                           brute=brute.to_dict()['entries'],
                                           recurrence=recurrence.to_dict()['entries'])
        return result

    def suite_symmetry(self, n_max: int) -> SuiteResult:
        result = SuiteResult('symmetry', max_degree=min(n_max, config.VERIFY_COUNT_MAX_DEGREE))
        for n in range(1, result.max_degree + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    result.checked += 1
                    if not self.enumeration.symmetry_check(n, k, l):
                        return result.fail("m_n(i mod k; j mod l) != m_n(j mod l; i mod k)", n=n, k=k, l=l)
                    issues = self.enumeration.count_matrix(n, k, l).check_margins()
                    if issues:
                        return result.fail("count matrix margins are wrong", n=n, k=k, l=l, issues=issues)
        return result

    # -- bijections ------------------------------------------------------------

    def suite_bijections(self, n_max: int) -> SuiteResult:
        result = SuiteResult('bijections', max_degree=min(n_max, config.VERIFY_BIJECTION_MAX_DEGREE))
        for example in self.fixtures.get_bijection_examples():
            word = parse_word(example['word'])
            if word.n > result.max_degree:
                continue
            if example['kind'] == 'p41':
                trace = bijection_41_trace(word, example['i'], example['j'])
            else:
                trace = bijection_42_trace(word, example['j'])
            result.checked += 1
            if format_word(trace.output) != example['output'] or format_word(trace.rotation) != example['rotation']:
                return result.fail("published bijection example not reproduced", word,
                                   expected=example['output'], got=format_word(trace.output))

        for n in range(2, result.max_degree + 1):
            census = self._census(n)
            failure = (
                self._check_bijection_41(n, census, result)
                or self._check_bijection_42(n, census, result)
                or self._check_window_selection(n, result)
                or self._check_circular_construction(n, census, result)
            )
            if failure:
                return failure
        return result

    def _check_bijection_41(self, n, census, result: SuiteResult) -> Optional[SuiteResult]:
        seeds = fixing_top(n - 1)
        for i in range(n):
            for j in range(n - 1):
                target = {p for p, a, b in census if a % n == i and b % (n - 1) == j}
                image = set()
                for sigma in seeds:
                    trace = bijection_41_trace(sigma, i, j)
                    result.checked += 1
                    if not replay_trace(trace):
                        return result.fail("trace does not replay", sigma, i=i, j=j)
                    if bijection_41_inverse(trace.output) != sigma:
                        return result.fail("inverse does not undo forward", sigma, i=i, j=j)
                    image.add(trace.output)
                if image != target or len(image) != math.factorial(n - 2):
                    missing = sorted(target - image)
                    return result.fail("image differs from the residue census",
                                       missing[0] if missing else None, n=n, i=i, j=j,
                                       image_size=len(image), census_size=len(target))
        for tau, a, b in census:
            result.checked += 1
            if bijection_41_forward(bijection_41_inverse(tau), a % n, b % (n - 1)) != tau:
                return result.fail("forward does not undo inverse", tau)
        return None

    def _check_bijection_42(self, n, census, result: SuiteResult) -> Optional[SuiteResult]:
        domain = [tau for tau, _, _ in census if erase_top(tau)(n - 1) == n - 1]
        for j in range(n - 1):
            target = {p for p, _, b in census if b % (n - 1) == j}
            image = set()
            for tau in domain:
                output = bijection_42_forward(tau, j)
                result.checked += 1
                if bijection_42_inverse(output) != tau:
                    return result.fail("inverse does not undo forward", tau, j=j)
                image.add(output)
            if image != target:
                return result.fail("image differs from the inverse-maj census", n=n, j=j,
                                   image_size=len(image), census_size=len(target))
        return None

    def _check_window_selection(self, n, result: SuiteResult) -> Optional[SuiteResult]:
        seeds = fixing_top(n)
        for k in range(1, n + 1):
            for j in range(k):
                for a in range(1, n - k + 2):
                    chosen = set()
                    for tau in seeds:
                        sigma = lemma_43_select(tau, j, k, a)
                        position = sigma.position_of(n)
                        result.checked += 1
                        if self.inverse_maj(sigma) % k != j or not n - a - k + 2 <= position <= n - a + 1:
                            return result.fail("window selection outside its residue or window", sigma,
                                               k=k, j=j, a=a, position=position)
                        chosen.add(sigma)
                    if len(chosen) != math.factorial(n - 1):
                        return result.fail("window selections collide", n=n, k=k, j=j, a=a, size=len(chosen))
                for s in range(1, n // k + 1):
                    chosen = set()
                    for tau in seeds:
                        picks = lemma_43_select_multi(tau, j, k, s)
                        result.checked += 1
                        for sigma in picks:
                            if self.inverse_maj(sigma) % k != j or sigma.position_of(n) < n - s * k + 1:
                                return result.fail("multi-selection outside its residue or window", sigma,
                                                   k=k, j=j, s=s)
                        chosen.update(picks)
                    if len(chosen) != s * math.factorial(n - 1):
                        return result.fail("multi-selections collide", n=n, k=k, j=j, s=s, size=len(chosen))
        return None

    def _check_circular_construction(self, n, census, result: SuiteResult) -> Optional[SuiteResult]:
        for k in range(2, n):
            for j in range(k):
                target = {p for p, _, b in census if b % k == j}
                inductive = count_by_circular_construction(n, k, j)
                direct = count_by_circular_construction(n, k, j, inductive=False)
                result.checked += 1
                if set(inductive.certificate) != target or inductive.count != math.factorial(n) // k:
                    return result.fail("class-by-class construction misses the census", n=n, k=k, j=j,
                                       count=inductive.count, census_size=len(target))
                if inductive.certificate != direct.certificate:
                    return result.fail("inductive and direct constructions differ", n=n, k=k, j=j)
        return None

    # -- published tables --------------------------------------------------

    def suite_tables(self, n_max: int) -> SuiteResult:
        result = SuiteResult('tables', max_degree=min(n_max, config.VERIFY_BIJECTION_MAX_DEGREE))
        if result.max_degree >= 4:
            tables = self.fixtures.get_published_tables()
            counts = self.fixtures.get_published_counts()
            if not tables:
                return result.fail("no published class tables to check")
            if not counts:
                return result.fail("no published counts to check")
            for table in tables:
                array = build_class_array(parse_word(table['seed']))
                for row, published_row in zip(array.cells, table['rows']):
                    for cell, (word, published_maj, published_imaj) in zip(row, published_row):
                        got = (format_word(cell.permutation), self.maj(cell.permutation),
                               self.inverse_maj(cell.permutation))
                        result.checked += 1
                        if got != (word, published_maj, published_imaj):
                            return result.fail("class table cell differs from the published table",
                                               cell.permutation, expected=[word, published_maj, published_imaj],
                                               got=list(got))
                golden = self.fixtures.get_golden_table(table['golden'])
                result.checked += 1
                if golden is None:
                    return result.fail(f"golden file {table['golden']} is missing", array.seed)
                if golden != array.render_text():
                    return result.fail(f"rendering differs from golden file {table['golden']}",
                                       array.seed)

            for item in counts:
                query = CongruenceQuery(item['n'], item['k'], item['l'], item['i'], item['j'])
                got = self.enumeration.count_bruteforce(query)
                result.checked += 1
                if got != item['value']:
                    return result.fail("published count not reproduced", expected=item['value'], got=got, **item)

        for n in range(2, result.max_degree + 1):
            covered = set()
            for seed in fixing_top(n - 1):
                array = build_class_array(seed)
                issues = array.check_invariants()
                result.checked += 1
                if issues:
                    return result.fail("class array invariant broken", seed, issues=issues)
                covered.update(array.permutations())
            if len(covered) != math.factorial(n):
                return result.fail("class arrays do not partition S_n", n=n, covered=len(covered))
        return result


def _divisors(m: int) -> List[int]:
    """Divisors of m that are at least 2"""
    return [d for d in range(2, m + 1) if m % d == 0]


def all_passed(results: List[SuiteResult]) -> bool:
    return all(result.passed for result in results)


def first_failure(results: List[SuiteResult]) -> Optional[SuiteResult]:
    return next((result for result in results if not result.passed), None)
