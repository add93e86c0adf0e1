"""Command line front end: ``plectic <command> --config group.json ...``.

Every command writes one JSON document (or DOT for graphs) to stdout or
``--out``.  Exit codes: 1 bad input, 2 certification failure, 3 integrals
not stabilized, 4 any other failed computation or invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    CertificationError,
    ConfigError,
    NonStabilized,
    NotASubgroup,
    PlecticError,
    PointCollision,
    PrimeMismatch,
    UnsupportedGroupShape,
)
from .groups import PlecticGroup, classify_limit_set, limit_set_approx
from .hecke import (
    functoriality_check,
    load_morphism,
    pullback_jacobian,
    pushforward_jacobian,
)
from .integration import (
    PlecticCycle,
    fundamental_point,
    integrate_riemann,
    integrate_series,
    scalar_agreement,
    scalar_to_json,
    single_place_group,
)
from .jacobian import abel_jacobi, period_lattice
from .measures import factor_quotient, invariant_measure_lattice, limit_tree, orientation_and_duality_report
from .padic import precision_policy
from .tree import to_dot
from .verify import MODULES, run_suite

EXIT_CONFIG = 1
EXIT_CERTIFICATION = 2
EXIT_NONSTABILIZED = 3
EXIT_INVARIANT = 4

_INPUT_ERRORS = (ConfigError, UnsupportedGroupShape, NotASubgroup, PointCollision, PrimeMismatch)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


class CommandFailed(Exception):
    """A computation ran but an invariant it checks did not hold."""

    def __init__(self, payload: dict):
        super().__init__("invariant failure")
        self.payload = payload


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plectic", description="p-adic plectic uniformization toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help: str, *extra: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", required=True, help="group config JSON")
        p.add_argument("--digits", type=_positive, help="output precision in p-adic digits")
        p.add_argument("--depth", type=_positive, help="partition or word depth")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--format", choices=["json", "dot"], default="json")
        if "cycle" in extra:
            p.add_argument("--cycle", help="cycle JSON")
        if "wordlen" in extra:
            p.add_argument("--wordlen", type=_positive, help="word length of the series cross-check")
        if "radius" in extra:
            p.add_argument("--radius", type=_positive, default=3, help="word depth of the drawn subtree")
        if "morphism" in extra:
            p.add_argument("--morphism", required=True, help="morphism JSON")
        if "suite" in extra:
            p.add_argument("--suite", default="all", choices=["all", *MODULES])
            p.add_argument("--seed", type=int, default=0)
        p.set_defaults(handler=_HANDLERS[name])
        return p

    command("limitset", "fixed points and ball cover of each factor")
    command("tree", "limit subtree of each factor", "radius")
    command("measures", "quotient complex and invariant measure basis")
    command("periods", "period matrices of every factor")
    command("integrate", "multiplicative integral of a cycle", "cycle", "wordlen")
    command("aj", "Abel-Jacobi image of a cycle", "cycle")
    command("hecke", "pushforward and pullback along a morphism", "morphism", "cycle")
    command("verify", "invariant suite", "suite")
    return parser


# commands


def _require_json(args) -> None:
    if args.format != "json":
        raise ConfigError(f"{args.command} has no {args.format} output")


def _load_cycle(args, group: PlecticGroup) -> PlecticCycle:
    if not args.cycle:
        raise ConfigError("--cycle is required")
    return PlecticCycle.load(group.prime, args.cycle)


def _point_json(p: int, z):
    return "inf" if z.is_infinity() else scalar_to_json(p, z.affine())


def cmd_limitset(group: PlecticGroup, args):
    _require_json(args)
    depth = args.depth or 2
    out = []
    for k, f in enumerate(group.factors):
        rec = {"place": k, "kind": classify_limit_set(f)}
        if f.rank:
            points, cover = limit_set_approx(group, k, depth)
            rec["points"] = [_point_json(group.prime, z) for z in points]
            rec["cover"] = [b.to_json() for b in cover]
        out.append(rec)
    return {"depth": depth, "places": out}


def cmd_tree(group: PlecticGroup, args):
    trees = [(k, limit_tree(f, args.radius)) for k, f in enumerate(group.factors) if f.rank]
    if args.format == "dot":
        return "".join(to_dot(group.prime, t.vertices, t.edges, name=f"place{k}") for k, t in trees)
    return {
        "radius": args.radius,
        "places": [
            {
                "place": k,
                "vertices": [v.label() for v in t.vertices],
                "edges": [[e.source.label(), e.target.label()] for e in t.edges],
            }
            for k, t in trees
        ],
    }


def cmd_measures(group: PlecticGroup, args):
    depth = args.depth or 1
    if args.format == "dot":
        return "".join(
            factor_quotient(f, depth).to_dot(name=f"place{k}") for k, f in enumerate(group.factors) if f.rank
        )
    lattice = invariant_measure_lattice(group, depth)
    return {
        "rank": lattice.rank,
        "basis": [list(b) for b in lattice.basis],
        "measures": lattice.to_json(),
        "duality": orientation_and_duality_report(group, depth).to_json(),
    }


def cmd_periods(group: PlecticGroup, args):
    _require_json(args)
    lattice = period_lattice(group, args.depth)
    return {
        "places": lattice.to_json(),
        "valuations": [None if f is None else f.valuations for f in lattice.factors],
    }


def cmd_integrate(group: PlecticGroup, args):
    _require_json(args)
    cycle = _load_cycle(args, group)
    lattice = invariant_measure_lattice(group)
    result = integrate_riemann(cycle, lattice, args.depth)
    out = {"riemann": result.to_json()}
    if args.wordlen:
        if group.places != 1 or len(cycle.terms) != 1 or cycle.terms[0].coeff != 1:
            raise ConfigError("the series cross-check needs a single place and a single term [x]-[y]")
        f = group.factors[0]
        x, y = cycle.terms[0].points[0]
        series = []
        for i, idx in enumerate(lattice.basis, 1):
            s = integrate_series(f, i, x, y, args.wordlen, 0)
            r = result.value(idx).scalars()[0]
            series.append(
                {
                    "index": list(idx),
                    "value": scalar_to_json(group.prime, s.value),
                    "stabilized_digits": s.digits,
                    "agreement": scalar_agreement(group.prime, r, s.value),
                }
            )
        out["series"] = series
    return out


def cmd_aj(group: PlecticGroup, args):
    _require_json(args)
    cycle = _load_cycle(args, group)
    return abel_jacobi(group, cycle, depth=args.depth).to_json()


def cmd_hecke(group: PlecticGroup, args):
    _require_json(args)
    f = load_morphism(args.morphism, group)
    out = {
        "index": f.index,
        "morphism": f.to_json(),
        "pushforward": pushforward_jacobian(f).to_json(),
        "pullback": pullback_jacobian(f).to_json(),
    }
    if args.cycle:
        cycle = _load_cycle(args, group)
        report = functoriality_check(f, [cycle], [cycle], depth=args.depth)
        out["functoriality"] = report.to_json()
        if not report.ok:
            raise CommandFailed(out)
    return out


def cmd_verify(group: PlecticGroup, args):
    _require_json(args)
    checks = run_suite(group, args.suite, args.seed)
    out = {"suite": args.suite, "seed": args.seed, "checks": [c.to_json() for c in checks]}
    out["ok"] = all(c.ok for c in checks)
    if not out["ok"]:
        raise CommandFailed(out)
    return out


_HANDLERS = {
    "limitset": cmd_limitset,
    "tree": cmd_tree,
    "measures": cmd_measures,
    "periods": cmd_periods,
    "integrate": cmd_integrate,
    "aj": cmd_aj,
    "hecke": cmd_hecke,
    "verify": cmd_verify,
}


# entry point


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        group = PlecticGroup.load(args.config)
        changes = {"output": args.digits} if args.digits else {}
        if args.digits:
            changes["working"] = max(group.precision, args.digits + 10)
        else:
            changes["working"] = group.precision
        with precision_policy(**changes):
            result = args.handler(group, args)
            text = _render(result)
    except CommandFailed as exc:
        _emit(_render(exc.payload), args.out)
        return EXIT_INVARIANT
    except _INPUT_ERRORS as exc:
        print(f"plectic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CertificationError as exc:
        print(f"plectic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except NonStabilized as exc:
        print(f"plectic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NONSTABILIZED
    except PlecticError as exc:
        print(f"plectic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
