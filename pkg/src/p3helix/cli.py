"""Command-line front end.

Exit codes: 0 success, 1 a computational check failed, 2 runtime error,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog, p2, tree
from .epsilon import ThreeAdicRational, bundle_record, parents, standard_resolutions
from .helix import MUTATION_LABELS, Foundation, MutationMove, apply_move, enumerate_mutations
from .kgroup import euler_chi, euler_pair, format_fraction, parse_ch
from .perp import perp

EXIT_OK, EXIT_CHECK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _index(text: str) -> ThreeAdicRational:
    return ThreeAdicRational.parse(text)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_eval(a) -> int:
    _dump(bundle_record(_index(a.index)).to_json())
    return EXIT_OK


def cmd_table(a) -> int:
    sys.stdout.write(catalog.generate_table(a.max_order, a.format))
    return EXIT_OK


def cmd_tree(a) -> int:
    sys.stdout.write(tree.export(tree.build_tree(a.depth), a.format).rstrip("\n") + "\n")
    return EXIT_OK


def _report(rep: catalog.VerificationReport, fmt: str) -> int:
    if fmt == "json":
        print(rep.to_json())
    else:
        sys.stdout.write(rep.to_text())
    return rep.exit_code()


def cmd_verify(a) -> int:
    return _report(catalog.run_verification(a.max_order, a.tree_depth, seed=a.seed), a.format)


def cmd_audit(a) -> int:
    return _report(catalog.audit_table(), a.format)


def cmd_chi(a) -> int:
    chs = [parse_ch(x) for x in a.ch]
    value = euler_chi(chs[0]) if len(chs) == 1 else euler_pair(chs[0], chs[1])
    print(format_fraction(value))
    return EXIT_OK


def cmd_perp(a) -> int:
    _dump(perp(*(parse_ch(x) for x in a.ch)).to_json())
    return EXIT_OK


def cmd_mutate(a) -> int:
    f = Foundation.from_json(json.loads(a.foundation))
    if a.move in MUTATION_LABELS:
        result = next(m.foundation for m in enumerate_mutations(f) if m.label == a.move)
    else:
        try:
            move = MutationMove(a.move)
        except ValueError:
            raise UsageError(f"unknown move {a.move!r}") from None
        result = apply_move(f, move)
    _dump(result.to_json())
    return EXIT_OK


def cmd_resolve(a) -> int:
    _dump([r.to_json() for r in standard_resolutions(_index(a.index))])
    return EXIT_OK


def cmd_parents(a) -> int:
    left, right = parents(_index(a.index))
    _dump({"left": str(left), "right": str(right)})
    return EXIT_OK


def cmd_p2_eval(a) -> int:
    alpha = p2.epsilon_p2(a.index)
    d = p2.slope_data(alpha)
    _dump({"alpha": str(alpha), "r": d.r, "delta": str(d.delta), "chi": str(d.chi)})
    return EXIT_OK


def cmd_p2_delta(a) -> int:
    b = p2.delta_bounds(Fraction(a.mu), a.cutoff)
    _dump(
        {
            "mu": str(Fraction(a.mu)),
            "delta": str(b.lower),
            "upper": str(b.upper),
            "certified": b.certified,
            "witness": str(b.witness),
            "rank_bound": b.rank_bound,
        }
    )
    return EXIT_OK


def cmd_p2_stable(a) -> int:
    print(p2.is_stable_character_p2(a.r, Fraction(a.mu), Fraction(a.delta), a.cutoff))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="p3helix", description="Exceptional bundles on P^3 and P^2, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="catalog record of epsilon(t)")
    p.add_argument("index", help="3-adic rational, e.g. 1/9 or 4/3^3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="regenerate the catalog")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("tree", help="export the admissible-mutation tree")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--tree-depth", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="compare the printed table with computed values")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("chi", help="chi(v) or chi(v, w)")
    p.add_argument("ch", nargs="+", help='Chern character, e.g. "(3,1,-1/2,1/6)"')
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("perp", help="the exceptional class orthogonal to three others")
    p.add_argument("ch", nargs=3)
    p.set_defaults(func=cmd_perp)

    p = sub.add_parser("mutate", help="apply an admissible move or one of the eight mutations")
    p.add_argument("foundation", help="JSON array of four Chern characters")
    p.add_argument("move", help="R0..R2, L0..L2, or a label such as 'R(E,F)'")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("resolve", help="the two standard resolutions of epsilon(t)")
    p.add_argument("index")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("parents", help="indices of the neighbours of epsilon(t)")
    p.add_argument("index")
    p.set_defaults(func=cmd_parents)

    p2p = sub.add_parser("p2", help="the companion machinery on P^2")
    p2sub = p2p.add_subparsers(dest="p2_command", required=True)
    q = p2sub.add_parser("eval", help="exceptional slope of a dyadic index")
    q.add_argument("index", help="dyadic rational, e.g. 3/8 or 3/2^3")
    q.set_defaults(func=cmd_p2_eval)
    q = p2sub.add_parser("delta", help="the stability boundary at mu")
    q.add_argument("mu")
    q.add_argument("--cutoff", type=int, default=6)
    q.set_defaults(func=cmd_p2_delta)
    q = p2sub.add_parser("stable", help="classify a character (r, mu, Delta)")
    q.add_argument("r", type=int)
    q.add_argument("mu")
    q.add_argument("delta")
    q.add_argument("--cutoff", type=int, default=6)
    q.set_defaults(func=cmd_p2_stable)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"p3helix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, LookupError, AssertionError, json.JSONDecodeError) as exc:
        print(f"p3helix: {type(exc).__name__}: {exc}".splitlines()[0], file=sys.stderr)
        return EXIT_RUNTIME


cli_dispatch = main

if __name__ == "__main__":
    sys.exit(main())
