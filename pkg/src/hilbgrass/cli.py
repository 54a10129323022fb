"""Command-line interface.

Exit codes: 0 success, 1 verification or containment failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import SCOPES, run_suite
from .components import ParameterError, component_count, hilbert_poly, hypersurface_class
from .grassmannian import (
    GeometryError,
    GrassmannianContext,
    NotOnGrassmannianError,
    PlaneFamilySpec,
    UnclassifiablePlaneError,
    classify_plane,
    parametrize_plane,
    plane_from_json,
    plane_to_json,
    plucker_relations,
    same_plane,
    span_of_hypersurface,
)
from .polynomials import HypersurfaceIdealSpec, Poly, hom_data, koszul_bound, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(args, payload: dict, human: str, tsv: str):
    if args.format == "json":
        sys.stdout.write(dump_json(payload))
    elif args.format == "tsv":
        sys.stdout.write(tsv if tsv.endswith("\n") else tsv + "\n")
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def cmd_components(args) -> int:
    try:
        report = component_count(args.d, args.k, args.n, args.m)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    payload = report.to_json()
    lines = [f"Hilb_P(d={report.d}, m={report.m}) in G({report.k},{report.n}): {report.count} component(s)"]
    for c in payload["components"]:
        hc = c["hypersurface_class"]
        fl = c["flag"]
        lines.append(f"  {c['family']:<4}  plane σ{c['plane_class']}  hypersurface {hc['coeff']}*σ{hc['partition']}"
                     f"  base F({fl['a']},{fl['b']};{fl['n']}) dim {fl['dim']}  component dim {c['dimension']}")
    if report.classes_coincide:
        lines.append("  both components carry the same hypersurface class; they differ by plane class")
    rows = ["family\tplane_class\tcoeff\thypersurface_partition\tflag_a\tflag_b\tflag_dim\tdimension"]
    for c in payload["components"]:
        hc, fl = c["hypersurface_class"], c["flag"]
        rows.append("\t".join(map(str, [c["family"], c["plane_class"], hc["coeff"], hc["partition"],
                                         fl["a"], fl["b"], fl["dim"], c["dimension"]])))
    _emit(args, payload, "\n".join(lines), "\n".join(rows))
    return EXIT_OK


def cmd_poly(args) -> int:
    try:
        P = hilbert_poly(args.d, args.m)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    coeffs = [str(c) for c in P.coefficients]
    payload = {"d": args.d, "m": args.m, "coefficients": coeffs, "text": str(P)}
    human = f"{P}\ncoefficients (constant first): [{', '.join(coeffs)}]"
    _emit(args, payload, human, f"{args.d}\t{args.m}\t{','.join(coeffs)}\t{P}")
    return EXIT_OK


def cmd_tangent(args) -> int:
    if not (2 <= args.m <= args.N):
        raise UsageError(f"need 2 <= m <= N, got m={args.m}, N={args.N}")
    if args.d < 1:
        raise UsageError(f"need d >= 1, got d={args.d}")
    spec = HypersurfaceIdealSpec.generic(args.N, args.m, args.d, args.seed)
    ideal = spec.ideal()
    bound = max(2 * args.d, koszul_bound(ideal))
    data = hom_data(ideal, bound)
    formula = spec.tangent_formula()
    match = data.dimension == formula
    payload = {
        "N": args.N, "m": args.m, "d": args.d, "seed": args.seed,
        "f": str(spec.f), "syzygy_bound": bound,
        "formula": formula, "oracle": data.dimension, "match": match,
    }
    human = (f"f = {spec.f} (seed {args.seed})\n"
             f"formula C(m+d,m) - 1 + (N-m)(m+1) = {formula}\n"
             f"oracle dim Hom(I, S/I)_0 = {data.dimension} "
             f"({data.unknowns} unknowns, constraint rank {data.constraint_rank}, B = {bound})\n"
             f"{'match' if match else 'MISMATCH'}")
    _emit(args, payload, human, f"{args.N}\t{args.m}\t{args.d}\t{formula}\t{data.dimension}\t{match}")
    return EXIT_OK if match else EXIT_FAIL


def cmd_relations(args) -> int:
    try:
        ctx = GrassmannianContext(args.k, args.n)
    except ValueError as exc:
        raise UsageError(f"{exc} (G(1,n) and G(n-1,n) are projective spaces with no relations)") from None
    names = ctx.variable_names()
    rels = [q.format(names) for q in plucker_relations(ctx)]
    payload = {"k": args.k, "n": args.n, "count": len(rels), "relations": rels}
    human = f"{len(rels)} Plücker relation(s) for G({args.k},{args.n}):\n" + "\n".join(rels)
    _emit(args, payload, human, "\n".join(f"{i}\t{r}" for i, r in enumerate(rels)))
    return EXIT_OK


def _read_form(raw, nvars: int) -> Poly:
    if isinstance(raw, str):
        return parse_poly(raw, nvars)
    return Poly.from_json(raw, nvars)


def cmd_classify(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError("top-level JSON value must be an object")
        if "family" in data:
            spec = PlaneFamilySpec.from_json(data)
            ctx, plane = spec.context, parametrize_plane(spec)
        else:
            ctx = GrassmannianContext(int(data["k"]), int(data["n"]))
            plane = plane_from_json(data["plane"])
            if plane.rows != ctx.N + 1:
                raise ValueError(f"plane columns must have {ctx.N + 1} entries")
        form = _read_form(data["form"], plane.cols) if data.get("form") is not None else None
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed input: {exc}") from None
    try:
        result = classify_plane(plane, ctx, seed=args.seed)
    except (NotOnGrassmannianError, UnclassifiablePlaneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "k": ctx.k, "n": ctx.n, "m": plane.cols - 1,
        "family": result.family.value,
        "plane_class": str(result.plane_class.partition),
        "hypersurface_class": None,
        "span_matches": None,
        "plane": plane_to_json(plane),
    }
    status = EXIT_OK
    lines = [f"family {result.family}", f"plane class σ{result.plane_class.partition}"]
    if form is not None:
        try:
            span = span_of_hypersurface(plane, form)
        except GeometryError as exc:
            raise UsageError(f"hypersurface form rejected: {exc}") from None
        matches = same_plane(span, plane)
        coeff, part = hypersurface_class(result.plane_class, form.degree).single_term()
        payload["hypersurface_class"] = {"coeff": coeff, "partition": str(part)}
        payload["span_matches"] = matches
        lines.append(f"hypersurface class {coeff}*σ{part}")
        lines.append("span of hypersurface equals the plane" if matches else "span of hypersurface DIFFERS from the plane")
        if not matches:
            status = EXIT_FAIL
    hc = payload["hypersurface_class"]
    tsv = "\t".join([payload["family"], payload["plane_class"],
                     f"{hc['coeff']}*{hc['partition']}" if hc else "-",
                     str(payload["span_matches"]).lower() if form is not None else "-"])
    _emit(args, payload, "\n".join(lines), tsv)
    return status


def cmd_verify(args) -> int:
    results = []

    def report(res):
        results.append(res)
        if args.format == "human":
            print(res.line(), flush=True)

    run_suite(args.scope, args.seed, report=report)
    ok = all(r.passed for r in results)
    if args.format == "json":
        sys.stdout.write(dump_json({
            "scope": args.scope, "seed": args.seed, "passed": ok,
            "checks": [{"key": r.key, "title": r.title, "passed": r.passed, "detail": r.detail,
                        "seconds": round(r.seconds, 3), "budget": r.budget} for r in results],
        }))
    elif args.format == "tsv":
        for r in results:
            print(f"{r.key}\t{'pass' if r.passed else 'fail'}\t{r.seconds:.3f}\t{r.detail}")
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbgrass", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--tsv", dest="format", action="store_const", const="tsv")
        p.set_defaults(func=func, format="human")
        return p

    p = add("components", cmd_components, "component count, classes and dimensions")
    for flag in ("--d", "--k", "--n", "--m"):
        p.add_argument(flag, type=int, required=True)

    p = add("poly", cmd_poly, "Hilbert polynomial of a degree-d hypersurface in P^m")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("tangent", cmd_tangent, "tangent-space dimension: closed formula vs Hom oracle")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("relations", cmd_relations, "quadratic Plücker relations of G(k, n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("classify", cmd_classify, "classify a plane (family spec or explicit matrix) in G(k, n)")
    p.add_argument("input", help="JSON file")
    p.add_argument("--seed", type=int, default=0)

    p = add("verify", cmd_verify, "run the acceptance checks")
    p.add_argument("--scope", choices=SCOPES, default="fast")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
