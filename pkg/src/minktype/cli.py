"""Command-line front end.

Subcommands::

    minktype enumerate --a 2 --b 2
    minktype classify  --a 2 --b 3 --x 2 0 --y 1 0 -1
    minktype classify  --a 2 --b 2 --alpha 1 1 --beta 2 2
    minktype ktype     --a 1 --b 2 --alpha 1 --beta 1
    minktype project   --a 1 --b 2 --alpha 1 --beta 1 --vector v.json
    minktype verify    omega-prim --p 1 --q 1 --r 1
    minktype suite     --p 2 --q 2 --r 1

Exit status: 0 on success/pass, 1 when a check fails, 2 on bad input.
All structured output is JSON; rationals are ``"num/den"`` strings.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction

from .cache import CACHE_ENV, SubspaceCache
from .extalg import Multivector, graded_basis, positions_of
from .ktypes import project_onto
from .liealg import EmbeddingShape, parabolic_from_dominant
from .shapes import (
    DominantElement,
    GroupShape,
    IncompatiblePairError,
    NotDominantError,
    Partition,
    PartitionPair,
    cohomological_degree,
    dominant_from_pair,
    enumerate_compatible,
    is_compatible,
    partitions_from_dominant,
    skew_report,
)
from .verify import CHECKS, ParameterError, run_check, run_suite, suite_passed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("minktype")


class UsageError(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _pair_json(pair: PartitionPair) -> dict:
    return {"alpha": list(pair.alpha.parts), "beta": list(pair.beta.parts)}


def _H_json(H: DominantElement) -> dict:
    return {"x": list(H.x), "y": list(H.y)}


def _shape(args) -> GroupShape:
    try:
        return GroupShape(args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _pair(args) -> PartitionPair:
    shape = _shape(args)
    try:
        return PartitionPair(Partition(tuple(args.alpha)), Partition(tuple(args.beta)), shape)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _compatible_pair(args) -> PartitionPair:
    pair = _pair(args)
    if not is_compatible(pair):
        raise UsageError(f"{pair} is not compatible", {"skew": skew_report(pair).to_json()})
    return pair


def _embedding(args) -> EmbeddingShape:
    try:
        return EmbeddingShape(args.p, args.q, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args):
    shape = _shape(args)
    rows = []
    for pair in enumerate_compatible(shape):
        deg = cohomological_degree(pair)
        rows.append({
            **_pair_json(pair),
            "R": deg.R,
            "bidegree": list(deg.bidegree),
            "admissible": skew_report(pair).admissible,
            "H": _H_json(dominant_from_pair(pair)),
        })
    data = {"shape": [shape.a, shape.b], "count": len(rows), "pairs": rows}
    lines = [f"{shape}: {len(rows)} compatible pairs"]
    for r in rows:
        lines.append(
            f"  alpha={r['alpha']} beta={r['beta']} R={r['R']} "
            f"bidegree={tuple(r['bidegree'])} admissible={r['admissible']}"
        )
    return data, "\n".join(lines), EXIT_OK


def cmd_classify(args):
    shape = _shape(args)
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None:
            raise UsageError("--x and --y go together")
        try:
            H = DominantElement(tuple(args.x), tuple(args.y))
            pair = partitions_from_dominant(H, shape)
        except (NotDominantError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        par = parabolic_from_dominant(H, shape)
        p_cap_u = [v.label(shape) for v in par.p_cap_u]
    else:
        if args.alpha is None or args.beta is None:
            raise UsageError("give either --x/--y or --alpha/--beta")
        pair = _pair(args)
        H, p_cap_u = None, None
    compatible = is_compatible(pair)
    data = {"shape": [shape.a, shape.b], **_pair_json(pair), "compatible": compatible,
            "skew": skew_report(pair).to_json()}
    if compatible:
        deg = cohomological_degree(pair)
        data["R"] = deg.R
        data["bidegree"] = list(deg.bidegree)
        data["H"] = _H_json(H if H is not None else dominant_from_pair(pair))
    if p_cap_u is not None:
        data["p_cap_u"] = p_cap_u
    text = "\n".join(f"{k}: {v}" for k, v in data.items() if k != "skew")
    return data, text, EXIT_OK if compatible else EXIT_FAIL


def _cache(args) -> SubspaceCache:
    return SubspaceCache(args.cache_dir)


def cmd_ktype(args):
    pair = _compatible_pair(args)
    cache = _cache(args)
    sub = cache.get(pair)
    log.info("cache %s: %s", "hit" if cache.hits else "miss", cache.path_for(pair))
    data = sub.to_json()
    lines = [
        f"{pair}",
        f"dim: {sub.dim}",
        f"bidegree: {sub.bidegree}",
        f"generator: {sub.generator}",
        "basis:",
        *(f"  {v}" for v in sub.basis),
    ]
    return data, "\n".join(lines), EXIT_OK


def _random_vector(shape, bidegree, seed) -> Multivector:
    rng = random.Random(seed)
    masks = graded_basis(shape, bidegree)
    terms = {m: Fraction(rng.randint(-3, 3)) for m in masks}
    return Multivector(shape, bidegree, terms)


def cmd_project(args):
    pair = _compatible_pair(args)
    sub = _cache(args).get(pair)
    if args.vector:
        try:
            with open(args.vector, encoding="utf-8") as fh:
                v = Multivector.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read vector: {exc}") from None
    else:
        v = _random_vector(sub.shape, sub.bidegree, args.seed)
    if v.shape != sub.shape or v.bidegree != sub.bidegree:
        raise UsageError(f"vector bidegree {v.bidegree} does not match {sub.bidegree}")
    proj = project_onto(sub, v)
    data = {
        **_pair_json(pair),
        "input": v.to_json(),
        "projection": proj.to_json(),
        "residual": (v - proj).to_json(),
        "contained": not (v - proj),
    }
    text = f"input: {v}\nprojection: {proj}\nresidual: {v - proj}"
    return data, text, EXIT_OK


def _report_out(report, canonical_only: bool):
    return report.canonical() if canonical_only else report.to_json()


def cmd_verify(args):
    if args.check_id not in CHECKS:
        raise UsageError(f"unknown check {args.check_id!r}; known: {', '.join(CHECKS)}")
    e = _embedding(args)
    try:
        report = run_check(args.check_id, e, args.i, args.j)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    return _report_out(report, args.canonical), report.summary(), EXIT_OK if report.passed else EXIT_FAIL


def cmd_suite(args):
    e = _embedding(args)
    reports = run_suite(e, args.max_ij)
    ok = suite_passed(reports)
    data = {
        "params": {"p": e.p, "q": e.q, "r": e.r, "maxIJ": args.max_ij},
        "allPass": ok,
        "reports": [_report_out(r, args.canonical) for r in reports],
    }
    text = "\n".join(r.summary() for r in reports)
    return data, text, EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--cache-dir", help=f"subspace cache directory (default: ${CACHE_ENV})")
    common.add_argument("--seed", type=int, default=0, help="seed for random sample vectors")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="minktype", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(p, pair=False):
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        if pair:
            p.add_argument("--alpha", type=int, nargs="*", required=True)
            p.add_argument("--beta", type=int, nargs="*", required=True)

    def embed_args(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--canonical", action="store_true",
                       help="omit timing; output is byte-identical across runs")

    p = sub.add_parser("enumerate", parents=[common], help="list compatible pairs")
    group_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="H -> (alpha, beta), or test a pair")
    group_args(p)
    p.add_argument("--x", type=int, nargs="+")
    p.add_argument("--y", type=int, nargs="+")
    p.add_argument("--alpha", type=int, nargs="*")
    p.add_argument("--beta", type=int, nargs="*")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ktype", parents=[common], help="build V_{alpha,beta}")
    group_args(p, pair=True)
    p.set_defaults(func=cmd_ktype)

    p = sub.add_parser("project", parents=[common], help="project a vector onto V_{alpha,beta}")
    group_args(p, pair=True)
    p.add_argument("--vector", help="serialized multivector JSON (default: random, see --seed)")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", parents=[common], help="run one check")
    p.add_argument("check_id", metavar="CHECK", help=", ".join(CHECKS))
    embed_args(p)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", parents=[common], help="run every check for one embedding")
    embed_args(p)
    p.add_argument("--max-ij", type=int, default=None)
    p.set_defaults(func=cmd_suite)
    return parser


def _emit(args, data, text):
    if args.format == "json":
        out = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    else:
        out = text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        data, text, code = args.func(args)
    except UsageError as exc:
        err = {"error": str(exc)}
        if exc.payload:
            err.update(exc.payload)
        sys.stderr.write(json.dumps(err, ensure_ascii=False) + "\n")
        return EXIT_USAGE
    except IncompatiblePairError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return EXIT_USAGE
    _emit(args, data, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
