"""Verification harness: seeded corpora plus the cross-check suites.

Every suite pits at least two independent routes to the same quantity
against each other and reports one case per check.  Suites are hermetic:
the only nondeterminism is the seed.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import grobner
from .complexes import (
    SimplicialComplex,
    complete_graph,
    cycle_complex,
    from_facets,
    full_simplex,
    path_complex,
    simplex_boundary,
    skeleton_complete_degree,
    tetrahedron_minus_face,
    two_disjoint_edges,
    vertices_of,
)
from .errors import OracleError
from .grobner import (
    Polynomial,
    PolynomialIdeal,
    fitting_ideal,
    ideal_equal,
    ideal_intersect,
    is_radical_vs,
)
from .koszul import (
    betti_table,
    build_strand,
    chen_ranks,
    hilbert_series_combinatorial,
    hilbert_series_from_module,
    koszul_module,
    presentation_matrix,
    regularity_bounds_check,
    specialize_single,
    strand_dimension,
    verify_duality,
)
from .resonance import (
    annihilator,
    cohen_macaulay_check,
    delta_a_cohomology,
    fixed_degree_resonance_check,
    hochster_check,
    jump_resonance,
    support_resonance,
    union_consistency_check,
)

DEFAULT_SEED = 20230811
DEFAULT_COUNT = 200


@dataclass(frozen=True)
class CaseResult:
    id: str
    status: str  # pass | fail | skipped-hypothesis
    details: str = ""


@dataclass
class VerificationReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def failures(self) -> int:
        return sum(1 for c in self.cases if c.status == "fail")

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def add(self, case_id: str, ok: bool, details: str = ""):
        self.cases.append(CaseResult(case_id, "pass" if ok else "fail", details))

    def skip(self, case_id: str, details: str = ""):
        self.cases.append(CaseResult(case_id, "skipped-hypothesis", details))

    def to_json_obj(self):
        return {
            "cases": [
                {"details": c.details, "id": c.id, "status": c.status}
                for c in self.cases
            ],
            "failures": self.failures,
            "suite": self.suite,
            "wall_time_s": round(self.wall_time_s, 3),
        }


# -- corpus -------------------------------------------------------------------


def random_complex(n: int, rng: random.Random) -> SimplicialComplex:
    """Include each candidate face independently, then close downward."""
    top = rng.randint(1, min(n, 4))
    p = rng.uniform(0.15, 0.7)
    facets = []
    for k in range(1, top + 1):
        for combo in combinations(range(1, n + 1), k):
            if rng.random() < p:
                facets.append(combo)
    return from_facets(n, facets)


def corpus(seed: int, count: int, max_n: int = 7, min_n: int = 3):
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = min_n + k % (max_n - min_n + 1)
        out.append(random_complex(n, rng))
    return out


# -- single-grading brute force ----------------------------------------------


def _composition_counts(total: int, parts: int, _cache={}) -> int:
    """Ordered decompositions of `total` into `parts` positive summands,
    counted by direct recursion (independent of any binomial identity)."""
    if parts == 0:
        return 1 if total == 0 else 0
    if total < parts:
        return 0
    key = (total, parts)
    if key not in _cache:
        _cache[key] = sum(
            _composition_counts(total - x, parts - 1) for x in range(1, total + 1)
        )
    return _cache[key]


def single_degree_dims_bruteforce(delta, i: int, max_degree: int) -> list[int]:
    """Total-degree dimensions by summing strand dimensions over all
    multidegrees; a strand depends only on the support of its degree, so
    each support is computed once and weighted by a composition count."""
    dims = {}
    for mask in range(1 << delta.n):
        dims[mask] = strand_dimension(delta, i, mask)
    out = []
    for a in range(max_degree + 1):
        total = 0
        for mask, dim in dims.items():
            if dim:
                total += dim * _composition_counts(a, mask.bit_count())
        out.append(total)
    return out


# -- shared example complexes --------------------------------------------------


def example_complexes() -> dict[str, SimplicialComplex]:
    return {
        "path4": path_complex(4),
        "c4": cycle_complex(4),
        "c5": cycle_complex(5),
        "c6": cycle_complex(6),
        "k4": complete_graph(4),
        "k5": complete_graph(5),
        "two-edges": two_disjoint_edges(),
        "tetra-minus-face": tetrahedron_minus_face(),
        "simplex4": full_simplex(4),
        "boundary4": simplex_boundary(4),
    }


# -- suite: paper examples ------------------------------------------------------


def path4_fitting_pipeline():
    """Presentation, Fitting ideal and annihilator of the 4-path module.

    Returns (fitting ideal, annihilator ideal, expected fitting, expected
    annihilator) as polynomial ideals in 4 variables.
    """
    delta = path_complex(4)
    pm = presentation_matrix(delta)
    n = delta.n
    rows = len(pm.row_faces)
    cols = len(pm.col_faces)
    entry = pm.entry_map()
    matrix = [
        [
            Polynomial.variable(n, entry[(r, c)][1]).scale(entry[(r, c)][0])
            if (r, c) in entry
            else Polynomial.zero(n)
            for c in range(cols)
        ]
        for r in range(rows)
    ]
    fitt = fitting_ideal(matrix, 0, n)
    ann = annihilator(delta, 1)
    ann_ideal = PolynomialIdeal.from_square_free(n, ann.generators)
    x = grobner.variables(n)
    expected_ann = ideal_intersect(
        PolynomialIdeal.from_polys(n, [x[1]]),
        PolynomialIdeal.from_polys(n, [x[2]]),
    )
    embedded = PolynomialIdeal.from_polys(
        n, [x[0], x[1] * x[1], x[2] * x[2], x[3]]
    )
    expected_fitt = ideal_intersect(expected_ann, embedded)
    return fitt, ann_ideal, expected_fitt, expected_ann


def suite_fitting_path4() -> VerificationReport:
    report = VerificationReport("fitting-path4")
    start = time.perf_counter()
    fitt, ann_ideal, expected_fitt, expected_ann = path4_fitting_pipeline()
    report.add(
        "annihilator-equals-x2-cap-x3",
        ideal_equal(ann_ideal, expected_ann),
        f"generators {[repr(g) for g in ann_ideal.generators]}",
    )
    report.add(
        "fitting-equals-intersection",
        ideal_equal(fitt, expected_fitt),
        f"reduced basis {[repr(g) for g in fitt.groebner_basis()]}",
    )
    comparison = is_radical_vs(fitt, ann_ideal)
    report.add(
        "fitting-scheme-not-reduced",
        comparison.contained and not comparison.equal,
        "fitting ideal strictly below its radical",
    )
    reduced_ann = is_radical_vs(ann_ideal, expected_ann)
    report.add("annihilator-scheme-reduced", reduced_ann.reduced)
    report.wall_time_s = time.perf_counter() - start
    return report


def cycle_family_invariants(n: int):
    """(regularity, pdim, shifted regularity) of the weight-1 cycle module."""
    table = betti_table(koszul_module(cycle_complex(n), 1))
    return table.regularity, table.pdim, table.regularity - 2


def suite_examples(max_cycle: int = 6) -> VerificationReport:
    report = VerificationReport("examples")
    start = time.perf_counter()

    for case in suite_fitting_path4().cases:
        report.cases.append(case)

    path4 = path_complex(4)
    sup = support_resonance(path4, 1)
    report.add(
        "path4-support-components",
        sup.support_lists() == [[1, 2, 4], [1, 3, 4]],
        f"components {sup.support_lists()}",
    )
    ann = annihilator(path4, 1)
    report.add(
        "path4-annihilator-generators",
        ann.generator_lists() == [[2, 3]],
        f"generators {ann.generator_lists()}",
    )

    two = two_disjoint_edges()
    r1 = jump_resonance(two, 1)
    r2 = jump_resonance(two, 2)
    s2 = support_resonance(two, 2)
    report.add("two-edges-jump-1-full", r1.is_full, f"{r1.support_lists()}")
    report.add(
        "two-edges-jump-2-transversal",
        r2.support_lists() == [[1, 2], [3, 4]],
        f"{r2.support_lists()}",
    )
    report.add("two-edges-support-2-empty", s2.is_empty)
    report.add("two-edges-support-ne-jump", not s2.equal_away_from_origin(r2))
    cm = cohen_macaulay_check(two)
    report.add("two-edges-not-propagating", not cm.propagates and not cm.is_cm)

    tetra = tetrahedron_minus_face()
    s = support_resonance(tetra, 2)
    j = jump_resonance(tetra, 2)
    report.add(
        "tetra-support-2", s.support_lists() == [[1, 2, 3]], f"{s.support_lists()}"
    )
    report.add("tetra-jump-2", j.support_lists() == [[1, 2, 3]], f"{j.support_lists()}")
    try:
        fixed_ok = fixed_degree_resonance_check(tetra).ok
    except OracleError:
        fixed_ok = False
    report.add("tetra-fixed-degree-structure", fixed_ok)

    c4 = cycle_complex(4)
    series = hilbert_series_combinatorial(c4, 1)
    report.add(
        "c4-single-expansion",
        specialize_single(series, 4) == [0, 0, 2, 4, 6],
        f"{specialize_single(series, 4)}",
    )
    ranks = chen_ranks(c4, 3)
    report.add(
        "c4-chen",
        dict(ranks.q_coeffs) == {2: 2} and list(ranks.expansion) == [2, 4, 6, 8],
        f"q={dict(ranks.q_coeffs)} expansion={list(ranks.expansion)}",
    )
    kn = complete_graph(5)
    report.add("k5-chen-zero", chen_ranks(kn, 4).expansion == (0, 0, 0, 0, 0))

    for n in range(4, max_cycle + 1):
        reg, pdim, shifted = cycle_family_invariants(n)
        report.add(
            f"cycle{n}-regularity-and-pdim",
            reg == n - 2 and pdim == n - 2 and shifted == n - 4,
            f"reg={reg} pdim={pdim} shifted={shifted}",
        )
    report.wall_time_s = time.perf_counter() - start
    return report


# -- corpus suites ---------------------------------------------------------------


def _duality_complex(delta: SimplicialComplex) -> str:
    """Empty string when all three routes agree on every piece."""
    for i in range(1, delta.n + 1):
        for mask in range(1 << delta.n):
            rep = verify_duality(delta, i, mask)
            if not rep.ok:
                return (
                    f"mismatch at i={i} b={vertices_of(mask)}: module={rep.dim_module}"
                    f" tor={rep.dim_tor} homology={rep.dim_homology}"
                )
    return ""


def suite_duality(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=7, jobs=1):
    report = VerificationReport("duality")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, detail in enumerate(_map_jobs(_duality_complex, deltas, jobs)):
        report.add(f"complex-{idx}", detail == "", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


def _hilbert_complex(delta: SimplicialComplex) -> str:
    for i in range(0, delta.n + 1):
        combinatorial = hilbert_series_combinatorial(delta, i)
        module = koszul_module(delta, i)
        if hilbert_series_from_module(module) != combinatorial:
            return f"series disagree at i={i}"
        if module.is_zero != combinatorial.is_zero:
            return f"zero-module criterion fails at i={i}"
        expansion = specialize_single(combinatorial, 2 * delta.n)
        brute = single_degree_dims_bruteforce(delta, i, 2 * delta.n)
        if expansion != brute:
            return f"single-grading expansion disagrees at i={i}: {expansion} vs {brute}"
    return ""


def suite_hilbert(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=7, jobs=1):
    report = VerificationReport("hilbert")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, detail in enumerate(_map_jobs(_hilbert_complex, deltas, jobs)):
        report.add(f"complex-{idx}", detail == "", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


def _hochster_complex(delta: SimplicialComplex) -> str:
    rng = random.Random(delta.n * 7919 + len(delta.faces))
    try:
        for mask in range(1 << delta.n):
            hochster_check(delta, mask)
    except OracleError as exc:
        return str(exc)
    for _ in range(3):
        coeffs = [
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(delta.n)
        ]
        indicator = [1 if c else 0 for c in coeffs]
        if delta_a_cohomology(delta, coeffs) != delta_a_cohomology(delta, indicator):
            return f"support dependence fails for {coeffs}"
    return ""


def suite_hochster(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=6, jobs=1):
    report = VerificationReport("hochster")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, detail in enumerate(_map_jobs(_hochster_complex, deltas, jobs)):
        report.add(f"complex-{idx}", detail == "", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


def _squarefree_complex(delta: SimplicialComplex) -> str:
    for i in range(1, delta.n + 1):
        try:
            module = koszul_module(delta, i)  # commutativity checked inside
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            return f"module build failed at i={i}: {exc}"
        table = betti_table(module)
        for h, mask, beta in table.entries:
            if beta and mask.bit_count() - h < 0:
                return f"non-square-free Betti bookkeeping at i={i}"
            if h == 0 and mask.bit_count() < i + 1:
                return (
                    f"generator below the degree floor at i={i}, "
                    f"b={vertices_of(mask)}"
                )
        try:
            annihilator(delta, i)  # certificate route
        except OracleError as exc:
            return str(exc)
        sup = support_resonance(delta, i)
        if list(sup.components) != module.max_supports():
            return f"support components disagree with module supports at i={i}"
    return ""


def suite_squarefree(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=7, jobs=1):
    report = VerificationReport("squarefree")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, detail in enumerate(_map_jobs(_squarefree_complex, deltas, jobs)):
        report.add(f"complex-{idx}", detail == "", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


def _bounds_complex(delta: SimplicialComplex) -> str:
    if delta.is_void:
        return ""
    skel = skeleton_complete_degree(delta)
    for i in range(1, delta.n + 1):
        rep = regularity_bounds_check(delta, i)
        if not rep.ok:
            return f"bound violated at i={i}: reg={rep.regularity} pdim={rep.pdim}"
        if skel is not None and skel >= 1 and i >= 1 and i not in (skel, skel + 1):
            if not koszul_module(delta, i).is_zero:
                return f"weight {i} module nonzero despite fixed degree {skel}"
        if skel is not None and i == skel + 1:
            strand_ok = all(
                not build_strand(delta, i, mask).d_in.entries
                for mask in range(1 << delta.n)
            )
            if not strand_ok:
                return "top-weight strand has a nonzero incoming differential"
    return ""


def suite_bounds(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=7, jobs=1):
    report = VerificationReport("bounds")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, detail in enumerate(_map_jobs(_bounds_complex, deltas, jobs)):
        report.add(f"complex-{idx}", detail == "", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


def _union_complex(delta: SimplicialComplex) -> tuple[str, str]:
    if delta.is_void or delta.dim is None:
        return "pass", ""
    asserted = 0
    for i in range(1, min(delta.dim + 2, delta.n) + 1):
        try:
            rep = union_consistency_check(delta, i)
        except OracleError as exc:
            return "fail", str(exc)
        if rep.status == "pass":
            asserted += 1
        else:
            break  # the hypothesis is monotone in i, later weights skip too
    if asserted:
        return "pass", f"asserted up to weight {asserted}"
    return "skipped-hypothesis", "weight 1 module vanishes"


def suite_union(seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=6, jobs=1):
    report = VerificationReport("union")
    start = time.perf_counter()
    deltas = corpus(seed, count, max_n)
    for idx, (status, detail) in enumerate(_map_jobs(_union_complex, deltas, jobs)):
        if status == "skipped-hypothesis":
            report.skip(f"complex-{idx}", detail)
        else:
            report.add(f"complex-{idx}", status == "pass", detail)
    report.wall_time_s = time.perf_counter() - start
    return report


SUITES = {
    "examples": suite_examples,
    "fitting-path4": suite_fitting_path4,
    "duality": suite_duality,
    "hilbert": suite_hilbert,
    "hochster": suite_hochster,
    "squarefree": suite_squarefree,
    "bounds": suite_bounds,
    "union": suite_union,
}


def run_suite(name, seed=DEFAULT_SEED, count=DEFAULT_COUNT, max_n=None, jobs=1):
    if name == "examples":
        return suite_examples()
    if name == "fitting-path4":
        return suite_fitting_path4()
    fn = SUITES[name]
    kwargs = {"seed": seed, "count": count, "jobs": jobs}
    if max_n is not None:
        kwargs["max_n"] = max_n
    return fn(**kwargs)


def _map_jobs(fn, items, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]
