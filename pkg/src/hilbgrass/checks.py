"""Cross-module acceptance checks, shared by ``hilbgrass verify`` and the test suite.

Every check is exact.  Each has a wall-clock budget and fails if it overruns.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Callable

from .combinatorics import BoxContext, ClassSum, Partition, SchubertClass, lr_multiply, pieri
from .components import (
    bundle_total_dimension,
    component_count,
    family_base,
    flag_dimension,
    hilbert_poly,
    hypersurface_class,
    mplane_classes,
    planar_curve_poly,
    plane_grassmannian,
)
from .grassmannian import (
    Family,
    FamilyError,
    FlagBasis,
    GrassmannianContext,
    PlaneFamilySpec,
    classify_plane,
    on_grassmannian,
    parametrize_plane,
    plane_from_plucker,
    plane_point,
    same_plane,
    schubert_membership,
    span_of_hypersurface,
)
from .polynomials import HypersurfaceIdealSpec, hilbert_function, hom_dimension, is_squarefree, random_form

SCOPES = ("fast", "full")


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key} {self.title}: {self.detail} ({self.seconds:.2f}s / budget {self.budget:g}s)"


def tangent_grid() -> list[tuple[int, int, int]]:
    return [(N, m, d) for m in (2, 3) for N in range(m, 7) for d in (3, 4)]


def hypersurface_spec(N: int, m: int, d: int, kind: str, seed: int) -> HypersurfaceIdealSpec:
    if kind == "sparse":
        return HypersurfaceIdealSpec.sparse(N, m, d)
    return HypersurfaceIdealSpec.generic(N, m, d, seed=seed * 1000 + N * 100 + m * 10 + d)


class _HomCache:
    """Shares hom_dimension results between the tangent and bundle checks."""

    def __init__(self):
        self.values: dict[tuple, int] = {}
        self.miss_seconds = 0.0

    def get(self, N, m, d, kind, seed) -> int:
        key = (N, m, d, kind, seed)
        if key not in self.values:
            t0 = time.perf_counter()
            spec = hypersurface_spec(N, m, d, kind, seed)
            self.values[key] = hom_dimension(spec.ideal(), d + 1)
            self.miss_seconds += time.perf_counter() - t0
        return self.values[key]


def check_poly_identity(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    bad = [d for d in range(1, 11) if hilbert_poly(d, 2) != planar_curve_poly(d)]
    return not bad, "P_{d,2} = dT + 1 - C(d-1,2) for d=1..10" if not bad else f"mismatch at d={bad}"


def check_tangent(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures, count = [], 0
    for (N, m, d), kind in product(tangent_grid(), ("sparse", "dense")):
        got = cache.get(N, m, d, kind, seed)
        want = comb(m + d, m) - 1 + (N - m) * (m + 1)
        count += 1
        if got != want:
            failures.append(f"N={N},m={m},d={d},{kind}: {got} != {want}")
    if failures:
        return False, "; ".join(failures)
    return True, f"{count} instances equal the closed formula (seed {seed})"


def check_hilbert_function(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures, evaluations = [], 0
    for (N, m, d), kind in product(tangent_grid(), ("sparse", "dense")):
        spec = hypersurface_spec(N, m, d, kind, seed)
        I = spec.ideal()
        P = hilbert_poly(d, m)
        for T in range(0, d + 5):
            hf = hilbert_function(I, T)
            evaluations += 1
            if T >= max(0, d - m):
                if hf != P(T):
                    failures.append(f"N={N},m={m},d={d},{kind},T={T}: HF={hf} P={P(T)}")
            elif hf - P(T) != (-1) ** m * comb(d - T - 1, m):
                failures.append(f"N={N},m={m},d={d},{kind},T={T}: gap {hf - P(T)}")
    if failures:
        return False, "; ".join(failures[:5])
    return True, f"{evaluations} Hilbert-function values match (seed {seed})"


def component_grid():
    for n in range(4, 9):
        for k in range(2, n - 1):
            for m in range(2, n):
                yield k, n, m


def check_trichotomy(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures, cases = [], 0
    for k, n, m in component_grid():
        cases += 1
        c = component_count(3, k, n, m).count
        if c != int(m <= n - k) + int(m <= k):
            failures.append(f"G({k},{n}) m={m}: count {c}")
        if c != component_count(3, n - k, n, m).count:
            failures.append(f"G({k},{n}) m={m}: duality fails")
    if failures:
        return False, "; ".join(failures)
    return True, f"{cases} (k,n,m) cases, counts and duality hold"


def check_class_table(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures, cases = [], 0
    d = 3
    for k, n, m in component_grid():
        w = n - k
        expected = {
            Family.SUB: (w,) * (k - 1) + (w - m + 1,),
            Family.QUOT: (w,) * (k - m + 1) + (w - 1,) * (m - 1),
        }
        for family, cls in mplane_classes(k, n, m):
            cases += 1
            term = hypersurface_class(cls, d).single_term()
            if term != (d, Partition(expected[family])):
                failures.append(f"G({k},{n}) m={m} {family}: {term}")
            if m == 2 and term != (d, Partition((w,) * (k - 1) + (w - 1,))):
                failures.append(f"G({k},{n}) m=2 {family}: not d*sigma_(w..w,w-1)")
    if failures:
        return False, "; ".join(failures)
    return True, f"{cases} plane classes give single-term hypersurface classes"


def _family_specs(max_n: int):
    for n in range(4, max_n + 1):
        for k in range(2, n - 1):
            ctx = GrassmannianContext(k, n)
            for family in Family:
                for m in range(2, n):
                    try:
                        PlaneFamilySpec(family, m, FlagBasis.standard(n), ctx)
                    except FamilyError:
                        continue
                    yield ctx, family, m


def squarefree_cubic(nvars: int, rng: random.Random):
    while True:
        f = random_form(nvars, 3, rng)
        if is_squarefree(f):
            return f


def check_geometry(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    max_n, flags = (6, 5) if scope == "full" else (5, 2)
    rng = random.Random(seed)
    failures, specs = [], 0
    for ctx, family, m in _family_specs(max_n):
        w, k = ctx.n - ctx.k, ctx.k
        parts = (w,) * (k - 1) + (w - m,) if family is Family.SUB else (w,) * (k - m) + (w - 1,) * m
        cls = SchubertClass(Partition(parts), ctx.box)
        for _ in range(flags):
            specs += 1
            flag = FlagBasis.random(ctx.n, rng)
            spec = PlaneFamilySpec(family, m, flag, ctx)
            plane = parametrize_plane(spec)
            tag = f"G({ctx.k},{ctx.n}) {family} m={m}"
            for _ in range(25):
                t = [rng.randint(-9, 9) for _ in range(m + 1)]
                if not any(t):
                    t[0] = 1
                p = plane_point(plane, t)
                if not on_grassmannian(p, ctx):
                    failures.append(f"{tag}: point off G")
                    break
                if not schubert_membership(plane_from_plucker(p, ctx), cls.partition, flag):
                    failures.append(f"{tag}: Schubert condition fails")
                    break
            got = classify_plane(plane, ctx, seed=seed)
            if (got.family, got.plane_class) != (family, cls):
                failures.append(f"{tag}: classified as {got.family} {got.plane_class}")
            f = squarefree_cubic(m + 1, rng)
            if not same_plane(span_of_hypersurface(plane, f), plane):
                failures.append(f"{tag}: span of cubic differs from the plane")
    if failures:
        return False, "; ".join(failures[:5])
    return True, f"{specs} family specs (n <= {max_n}, {flags} flags each, seed {seed})"


def check_pieri_lr(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures, pairs = [], 0
    for k, n in ((2, 4), (2, 5), (3, 6)):
        box = BoxContext(k, n)
        parts = list(box.partitions())
        for h in range(1, box.width + 1):
            special = Partition((h,) + (0,) * (k - 1))
            for a in parts:
                pairs += 1
                if pieri(h, a, box) != lr_multiply(special, a, box):
                    failures.append(f"G({k},{n}) h={h} a={a}")
    box = BoxContext(2, 4)
    parts = list(box.partitions())
    for a, b in product(parts, repeat=2):
        if lr_multiply(a, b, box) != lr_multiply(b, a, box):
            failures.append(f"commutativity {a} {b}")
    for a, b, c in product(parts, repeat=3):
        ab = lr_multiply(a, b, box)
        bc = lr_multiply(b, c, box)
        lhs = ab * ClassSum({c: 1}, box)
        rhs = ClassSum({a: 1}, box) * bc
        if lhs != rhs:
            failures.append(f"associativity {a} {b} {c}")
    if failures:
        return False, "; ".join(failures[:5])
    return True, f"{pairs} Pieri products agree; G(2,4) commutative and associative"


def check_bundle(seed: int, scope: str, cache: _HomCache) -> tuple[bool, str]:
    failures = []
    for (N, m, d), kind in product(tangent_grid(), ("sparse", "dense")):
        total = bundle_total_dimension(plane_grassmannian(m, N), d)
        if total != cache.get(N, m, d, kind, seed):
            failures.append(f"N={N},m={m},d={d},{kind}")
    report = component_count(3, 2, 4, 2)
    dims = [c.dimension for c in report.components]
    if dims != [12, 12]:
        failures.append(f"G(2,4) component dimensions {dims}")
    for fam, (a, b) in ((Family.SUB, (1, 4)), (Family.QUOT, (0, 3))):
        base = family_base(fam, 2, 4, 2)
        if (base.a, base.b, flag_dimension(a, b, 4)) != (a, b, 3):
            failures.append(f"{fam} base {base}")
    if failures:
        return False, "; ".join(failures)
    return True, "bundle dimensions equal tangent dimensions; G(2,4) components have dimension 12"


@dataclass(frozen=True)
class Check:
    key: str
    title: str
    func: Callable
    budget: float
    scopes: tuple[str, ...]
    shares_hom: bool = False


CHECKS = (
    Check("C1", "Hilbert polynomial identity", check_poly_identity, 1, ("fast", "full")),
    Check("C2", "tangent formula vs Hom oracle", check_tangent, 300, ("full",)),
    Check("C3", "Hilbert function vs polynomial", check_hilbert_function, 120, ("full",)),
    Check("C4", "component trichotomy and duality", check_trichotomy, 1, ("fast", "full")),
    Check("C5", "hypersurface class table", check_class_table, 1, ("fast", "full")),
    Check("C6", "geometry pipeline", check_geometry, 180, ("fast", "full")),
    Check("C7", "Pieri / Littlewood-Richardson consistency", check_pieri_lr, 60, ("fast", "full")),
    Check("C8", "bundle dimension coherence", check_bundle, 1, ("fast", "full"), shares_hom=True),
)


def run_check(check: Check, seed: int = 42, scope: str = "full", cache: _HomCache | None = None) -> CheckResult:
    cache = cache or _HomCache()
    before = cache.miss_seconds
    t0 = time.perf_counter()
    try:
        passed, detail = check.func(seed, scope, cache)
    except Exception as exc:  # a crash is a failed check, reported like any other
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    # hom computations are charged to the tangent check, not the bundle check
    charged = elapsed - (cache.miss_seconds - before) if check.shares_hom else elapsed
    if passed and charged > check.budget:
        passed, detail = False, f"{detail}; over budget"
    return CheckResult(check.key, check.title, passed, detail, charged, check.budget)


def run_suite(scope: str = "fast", seed: int = 42, report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    cache = _HomCache()
    results = []
    for check in CHECKS:
        if scope in check.scopes:
            res = run_check(check, seed, scope, cache)
            results.append(res)
            if report:
                report(res)
    return results
