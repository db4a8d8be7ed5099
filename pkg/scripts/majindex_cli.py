#!/usr/bin/env python3
"""
Major Index CLI
- Permutation statistics, class tables and bijection traces
- Exact counts of permutations by (maj mod k, inverse maj mod l)
- Generating functions and the exhaustive verification suites

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import config
from src.api.envelope import FORMATS, OutputEnvelope, render
from src.core.bijections import bijection_41_trace, bijection_42_trace, replay_trace
from src.core.class_array import build_class_array
from src.core.errors import DegreeLimitError, DomainError, InvariantViolation, MajIndexError
from src.core.insertion import find_nonconsecutive_window
from src.core.permcore import (
    descent_set,
    format_compact,
    format_word,
    inverse,
    inverse_maj,
    maj,
    parse_word,
)
from src.core.polynomials import q_factorial, reduce_mod_qk
from src.services.enumeration_service import CongruenceQuery, EnumerationService, METHODS, enumeration_service
from src.services.verification_service import SUITES, VerificationService, first_failure
from src.utils.progress import status

# Execution settings and plumbing, not command parameters
_NOT_PARAMETERS = ('func', 'command', 'threads', 'format')


def _service(args: argparse.Namespace) -> EnumerationService:
    if args.threads:
        return EnumerationService(threads=args.threads)
    return enumeration_service


def cmd_stats(args: argparse.Namespace) -> OutputEnvelope:
    """Descents and major index of a word and of its inverse"""
    p = parse_word(args.word)
    inv = inverse(p)
    result = {
        'word': format_word(p),
        'n': p.n,
        'descents': list(descent_set(p).positions),
        'maj': maj(p),
        'inverse_word': format_word(inv),
        'inverse_descents': list(descent_set(inv).positions),
        'inverse_maj': inverse_maj(p),
    }
    text = (
        f"word             {format_compact(p)}\n"
        f"descents         {result['descents']}\n"
        f"maj              {result['maj']}\n"
        f"inverse          {format_compact(inv)}\n"
        f"inverse descents {result['inverse_descents']}\n"
        f"inverse maj      {result['inverse_maj']}\n"
    )
    return OutputEnvelope(command='stats', parameters={}, result=result, text=text)


def cmd_count(args: argparse.Namespace) -> OutputEnvelope:
    """Single count m_n(i mod k; j mod l), or the full k x l matrix"""
    service = _service(args)
    if (args.i is None) != (args.j is None):
        raise DomainError("give both --i and --j for a single count, or neither for the matrix")

    if args.i is None:
        matrix = service.count_matrix(args.n, args.k, args.l, args.method)
        return OutputEnvelope(
            command='count',
            parameters={},
            result=matrix.to_dict(),
            text=matrix.render_text(),
            csv_rows=matrix.csv_rows(),
        )

    query = CongruenceQuery(n=args.n, k=args.k, l=args.l, i=args.i, j=args.j)
    if args.method == 'closed':
        value = service.count_closed_form(query)
    elif args.method == 'recurrence':
        value = service.count_matrix(args.n, args.k, args.l, 'recurrence').entry(args.i, args.j)
    else:
        value = service.count_bruteforce(query)
    result = {'n': args.n, 'k': args.k, 'l': args.l, 'i': args.i, 'j': args.j, 'count': value}
    return OutputEnvelope(
        command='count',
        parameters={},
        result=result,
        text=f"{value}\n",
        csv_rows=[['n', 'k', 'l', 'i', 'j', 'count'], [args.n, args.k, args.l, args.i, args.j, value]],
    )


def cmd_bijection(args: argparse.Namespace) -> OutputEnvelope:
    word = parse_word(args.word)
    if args.j is None:
        raise DomainError("--j is required")
    if args.kind == 'p41':
        if args.i is None:
            raise DomainError("--i is required for p41")
        trace = bijection_41_trace(word, args.i, args.j)
    else:
        if args.i is not None:
            raise DomainError("--i applies to p41 only; p42 takes --j alone")
        trace = bijection_42_trace(word, args.j)

    result = trace.to_dict()
    n = trace.output.n
    checks = {'replay': replay_trace(trace), 'inverse_maj': result['output_inverse_maj'] % (n - 1) == args.j}
    if trace.i is not None:
        checks['maj'] = result['output_maj'] % n == trace.i
    result['verified'] = all(checks.values())
    if not result['verified']:
        raise InvariantViolation(f"bijection output failed its checks: {checks}")

    text = (
        f"input     {format_compact(trace.input)}\n"
        f"rotate    gamma^{trace.rotation_exponent} -> {format_compact(trace.rotation)}\n"
        f"insert    {n} at position {trace.insert_position} -> {format_compact(trace.output)}\n"
        f"output    {format_compact(trace.output)}  maj={result['output_maj']}  "
        f"inverse maj={result['output_inverse_maj']}\n"
    )
    return OutputEnvelope(command='bijection', parameters={}, result=result, text=text)


def cmd_classtable(args: argparse.Namespace) -> OutputEnvelope:
    array = build_class_array(parse_word(args.word))
    rows = [['row', 'column', 'word', 'maj', 'imaj']]
    rows.extend(
        [cell.row, cell.column, format_word(cell.permutation), cell.maj, cell.inverse_maj]
        for row in array.cells for cell in row
    )
    return OutputEnvelope(
        command='classtable',
        parameters={},
        result=array.to_dict(),
        text=array.render_text(),
        csv_rows=rows,
    )


def cmd_gf(args: argparse.Namespace) -> OutputEnvelope:
    if args.n > config.MAX_DEGREE:
        raise DegreeLimitError(f"n={args.n} exceeds the ceiling {config.MAX_DEGREE}")
    poly = q_factorial(args.n)
    result = {
        'n': args.n,
        'coefficients': poly.to_list(),
        'degree': poly.degree,
        'total': poly.total(),
    }
    text = f"coefficients {poly.to_list()}\n"
    rows = [['exponent', 'coefficient']] + [[e, c] for e, c in enumerate(poly.coefficients)]
    if args.mod_k is not None:
        folded = list(reduce_mod_qk(poly, args.mod_k))
        result['mod_k'] = args.mod_k
        result['folded'] = folded
        result['constant'] = len(set(folded)) == 1
        if args.mod_k <= args.n:
            result['expected'] = poly.total() // args.mod_k
        text += f"mod 1-q^{args.mod_k}  {folded}  constant={result['constant']}\n"
        rows = [['residue', 'count']] + [[r, c] for r, c in enumerate(folded)]
    return OutputEnvelope(command='gf', parameters={}, result=result, text=text, csv_rows=rows)


def cmd_verify(args: argparse.Namespace) -> OutputEnvelope:
    verifier = VerificationService(enumeration=_service(args))
    results = verifier.run(args.n_max, args.suite, verbose=True)
    failure = first_failure(results)
    result = {
        'n_max': args.n_max,
        'passed': failure is None,
        'suites': [r.to_dict() for r in results],
    }
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name:<10} checks={r.checked} n<={r.max_degree}"
        for r in results
    ]
    rows = [['suite', 'passed', 'checked', 'max_degree']]
    rows.extend([r.name, r.passed, r.checked, r.max_degree] for r in results)
    return OutputEnvelope(command='verify', parameters={}, result=result,
                          text="\n".join(lines) + "\n", csv_rows=rows)


def cmd_windows(args: argparse.Namespace) -> OutputEnvelope:
    witness = find_nonconsecutive_window(args.n)
    if witness is None:
        result = {'n': args.n, 'found': False}
        text = f"no non-consecutive window for n={args.n}\n"
    else:
        result = {
            'n': args.n,
            'found': True,
            'base': format_word(witness.base),
            'positions': list(witness.positions),
            'majs': list(witness.majs),
        }
        text = (f"base {format_compact(witness.base)}: positions {list(witness.positions)} "
                f"give maj {list(witness.majs)}\n")
    return OutputEnvelope(command='windows', parameters={}, result=result, text=text)


def cmd_distribution(args: argparse.Namespace) -> OutputEnvelope:
    """Joint (maj, inverse maj) table of S_n"""
    service = _service(args)
    joint = service.joint_distribution(args.n).tolist()
    result = {
        'n': args.n,
        'joint': joint,
        'maj': service.maj_distribution(args.n, 'maj').to_list(),
        'inverse_maj': service.maj_distribution(args.n, 'inverse').to_list(),
    }
    size = len(joint)
    rows = [["maj\\imaj"] + list(range(size))] + [[a] + row for a, row in enumerate(joint)]
    text = (f"maj distribution          {result['maj']}\n"
            f"inverse maj distribution  {result['inverse_maj']}\n")
    return OutputEnvelope(command='distribution', parameters={}, result=result, text=text, csv_rows=rows)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
    common.add_argument("--threads", type=int, help="Enumeration worker threads (default: all cores)")

    p = argparse.ArgumentParser(description="Major index congruence toolkit")
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("stats", parents=[common], help="Descents and major index of a word and its inverse")
    sp.add_argument("--word", required=True, help="Permutation word, e.g. 4231 or 4,2,3,1")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("count", parents=[common], help="Count permutations by maj mod k and inverse maj mod l")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--i", type=int, help="maj residue (omit with --j for the full matrix)")
    sp.add_argument("--j", type=int, help="inverse maj residue")
    sp.add_argument("--method", choices=METHODS, default="brute")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("bijection", parents=[common], help="Trace one bijection step by step")
    sp.add_argument("--kind", choices=("p41", "p42"), required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--i", type=int, help="maj residue mod n (p41 only)")
    sp.add_argument("--j", type=int, help="inverse maj residue mod n-1")
    sp.set_defaults(func=cmd_bijection)

    sp = sub.add_parser("classtable", parents=[common], help="Class array of a seed fixing its largest symbol")
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_classtable)

    sp = sub.add_parser("gf", parents=[common], help="Maj generating function and its reduction mod 1-q^k")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mod-k", type=int, dest="mod_k")
    sp.set_defaults(func=cmd_gf)

    sp = sub.add_parser("verify", parents=[common], help="Run the exhaustive invariant suites")
    sp.add_argument("--n-max", type=int, dest="n_max", default=config.VERIFY_DEFAULT_N_MAX)
    sp.add_argument("--suite", action="append", choices=SUITES, help="Suite to run (repeatable; default: all)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("windows", parents=[common], help="Find an insertion window with non-consecutive maj")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_windows)

    sp = sub.add_parser("distribution", parents=[common], help="Joint (maj, inverse maj) table of S_n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_distribution)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if not args.command:
        parser.print_help(sys.stderr)
        return 2
    if args.threads is not None and args.threads < 1:
        print("❌ --threads must be at least 1", file=sys.stderr)
        return 2

    started = time.time()
    try:
        envelope = args.func(args)
        envelope.parameters = {k: v for k, v in vars(args).items() if k not in _NOT_PARAMETERS}
        envelope.elapsed_ms = int((time.time() - started) * 1000)
        output = render(envelope, args.format)
    except InvariantViolation as e:
        print(f"❌ Invariant violated: {e}", file=sys.stderr)
        return 1
    except MajIndexError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2

    sys.stdout.write(output)
    sys.stdout.flush()

    if envelope.command == 'verify' and not envelope.result['passed']:
        failed = next(s for s in envelope.result['suites'] if not s['passed'])
        status(f"❌ {failed['name']} failed; first counterexample: {failed['counterexample']}")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
