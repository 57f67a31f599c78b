"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical verification fails, 2 on
usage or input errors.  Output on stdout is canonical JSON (sorted keys,
rationals as "p/q") unless a TSV table is requested.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .classify import (
    InternalInconsistency,
    NumericalType,
    RetryBudgetExhausted,
    classify,
    kronecker_left_indices,
    pencil_of,
)
from .curves import (
    SplittingType,
    cohomology_profile,
    construct_with_splitting,
    splitting_from_cohomology,
    splitting_from_type,
)
from .forms import FormSubspace
from .sampling import random_subspace, trial_rng
from .strata import generic_type, monomial_fixture, strata_table
from .verify import run_suite

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.strip().strip("()[]").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _type_arg(text: str) -> NumericalType:
    try:
        return NumericalType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def read_subspace(source: str | None) -> FormSubspace:
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        path = Path(source)
        if not path.exists():
            raise UsageError(f"input file not found: {source}")
        text = path.read_text(encoding="utf-8")
    try:
        return FormSubspace.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"could not read a FormSubspace from input: {exc}")


def cmd_classify(args) -> None:
    T = read_subspace(args.input)
    try:
        cl = classify(T)
    except ValueError as exc:
        raise UsageError(str(exc))
    indices = kronecker_left_indices(pencil_of(T))
    expected = Counter(b + 1 for b in cl.type.bs)
    out = cl.type.to_json()
    out.update(
        {
            "degree": T.degree,
            "dim": T.dim,
            "profile": list(cl.profile),
            "kronecker_left_indices": sorted(indices.elements(), reverse=True),
            "kronecker_agrees": indices == expected,
        }
    )
    emit(out)
    if indices != expected:
        raise VerificationFailed("Kronecker left minimal indices disagree with the inverse profile")


def cmd_strata(args) -> None:
    rows = strata_table(args.d, args.e)
    if args.format == "tsv":
        cols = ["tau", "d", "e", "dim_G", "dim_VT", "codim", "is_generic"]
        lines = ["\t".join(cols)]
        for rep in rows:
            data = rep.to_json()
            data["tau"] = str(rep.tau)
            lines.append("\t".join(str(data[c]).lower() if isinstance(data[c], bool) else str(data[c]) for c in cols))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        emit({"d": args.d, "e": args.e, "generic": generic_type(args.d, args.e).to_json(), "strata": [r.to_json() for r in rows]})


def cmd_generic_type(args) -> None:
    emit(generic_type(args.d, args.e).to_json())


def cmd_fixture(args) -> None:
    emit(monomial_fixture(args.d, args.type).to_json())


def cmd_splitting(args) -> None:
    T = read_subspace(args.input)
    tau = classify(T).type
    if tau.a != -1 or T.dim == 0:
        raise UsageError(f"vertex of type {tau} does not define a projected curve")
    profile = cohomology_profile(T)
    from_type = splitting_from_type(tau, T.degree)
    from_coh = splitting_from_cohomology(profile, T.degree, T.degree - T.dim)
    agree = from_type == from_coh
    emit(
        {
            "type": tau.to_json(),
            "h": list(profile.values),
            "from_type": from_type.to_json(),
            "from_cohomology": from_coh.to_json(),
            "agree": agree,
        }
    )
    if not agree:
        raise VerificationFailed("splitting types from the two routes disagree")


def cmd_construct(args) -> None:
    target = SplittingType(tuple(args.splitting), args.d)
    problems = target.violations()
    if problems:
        raise UsageError(f"inadmissible splitting type {list(target.twists)} for d = {args.d}: " + "; ".join(problems))
    rng = trial_rng(args.seed, "construct")
    T, curve = construct_with_splitting(target, rng, retry_budget=args.retry_budget)
    out = curve.to_json()
    out["splitting"] = target.to_json()
    out["type"] = target.vertex_type().to_json()
    emit(out)


def _sample_one(job):
    d, e, i, seed = job
    return classify(random_subspace(d, e + 1, trial_rng(seed, "sample", d, e, i))).type


def cmd_sample(args) -> None:
    if not 0 <= args.e + 1 <= args.d:
        raise UsageError(f"need 0 <= e + 1 <= d for a proper subspace, got d={args.d}, e={args.e}")
    jobs = [(args.d, args.e, i, args.seed) for i in range(args.n)]
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            types = list(pool.map(_sample_one, jobs))
    else:
        types = [_sample_one(j) for j in jobs]
    freq = Counter(types)
    emit(
        {
            "d": args.d,
            "e": args.e,
            "n": args.n,
            "seed": args.seed,
            "generic": generic_type(args.d, args.e).to_json(),
            "frequencies": [{"type": t.to_json(), "count": c} for t, c in sorted(freq.items())],
        }
    )


def cmd_verify(args) -> None:
    report = run_suite(args.d_min, args.d_max, args.seed, samples=args.samples, workers=args.workers)
    emit(report)
    if not report["ok"]:
        failed = [name for name, data in report["checks"].items() if data["failures"]]
        raise VerificationFailed("failed checks: " + ", ".join(failed))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pglstrata", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="numerical type of a subspace (FormSubspace JSON)")
    p.add_argument("input", nargs="?", help="JSON file, inline JSON, or - for stdin (default)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("strata", help="table of strata of Gr(e+1, S^d U)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("generic-type", help="type of a general subspace")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(func=cmd_generic_type)

    p = sub.add_parser("fixture", help="monomial subspace of a given type")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", type=_type_arg, required=True, help='e.g. "0,1,0"')
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("splitting", help="splitting type of the projected curve, by both routes")
    p.add_argument("input", nargs="?", help="JSON file, inline JSON, or - for stdin (default)")
    p.set_defaults(func=cmd_splitting)

    p = sub.add_parser("construct", help="curve with a prescribed splitting type")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--splitting", type=_int_list, required=True, help='e.g. "8,6,6"')
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--retry-budget", type=int, default=32)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", help="type frequencies over random subspaces")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the invariant suite over a range of degrees")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=3, help="random subspaces per (d, e)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"pglstrata {args.command}: {exc}", file=sys.stderr)
        return 2
    except (VerificationFailed, InternalInconsistency, RetryBudgetExhausted) as exc:
        print(f"pglstrata {args.command}: verification failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"pglstrata {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
