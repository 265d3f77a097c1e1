"""Resonance loci of a simplicial complex and their cross-checks.

Both kinds of loci are finite unions of coordinate subspaces and are stored
combinatorially as antichains of supports.  The arrangement containing only
the empty support denotes the origin {0}; the empty arrangement denotes the
empty set.  Where jump and support loci are compared, equality is taken away
from the origin: the jump locus contains 0 whenever the algebra is nonzero
in the relevant degree, while the support locus of the zero module is empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    SimplicialComplex,
    as_mask,
    link,
    restriction,
    skeleton_complete_degree,
    vertices_of,
)
from .errors import ComplexError, GuardError, OracleError
from .exactlin import RationalMatrix, rank
from .homology import ALL_SUBSETS_GUARD, all_subset_homology, reduced_homology
from .koszul import hilbert_series_combinatorial, koszul_module


def _maximal_antichain(masks) -> tuple[int, ...]:
    masks = sorted(set(masks))
    out = [m for m in masks if not any(o != m and o & m == m for o in masks)]
    return tuple(sorted(out))


@dataclass(frozen=True)
class CoordinateSubspaceArrangement:
    """Union of coordinate subspaces, stored as the antichain of supports."""

    n: int
    components: tuple[int, ...]

    @classmethod
    def empty(cls, n: int) -> "CoordinateSubspaceArrangement":
        return cls(n, ())

    @classmethod
    def origin(cls, n: int) -> "CoordinateSubspaceArrangement":
        return cls(n, (0,))

    @classmethod
    def from_masks(cls, n: int, masks) -> "CoordinateSubspaceArrangement":
        return cls(n, _maximal_antichain(masks))

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_origin(self) -> bool:
        return self.components == (0,)

    @property
    def is_full(self) -> bool:
        return self.components == ((1 << self.n) - 1,)

    def contains_subspace(self, mask: int) -> bool:
        return any(mask & ~c == 0 for c in self.components)

    def union(self, other: "CoordinateSubspaceArrangement"):
        if self.n != other.n:
            raise ComplexError("arrangements on different vertex sets")
        return CoordinateSubspaceArrangement.from_masks(
            self.n, self.components + other.components
        )

    def included_in(self, other: "CoordinateSubspaceArrangement") -> bool:
        return all(other.contains_subspace(c) for c in self.components)

    def equal_away_from_origin(self, other: "CoordinateSubspaceArrangement") -> bool:
        a = tuple(c for c in self.components if c)
        b = tuple(c for c in other.components if c)
        return a == b

    def support_lists(self) -> list[list[int]]:
        return [list(vertices_of(c)) for c in self.components]


@dataclass(frozen=True)
class SquareFreeMonomialIdeal:
    """Radical monomial ideal given by its antichain of minimal generators."""

    n: int
    generators: tuple[int, ...]

    @classmethod
    def unit(cls, n: int) -> "SquareFreeMonomialIdeal":
        return cls(n, (0,))

    @classmethod
    def from_prime_intersection(cls, n: int, components) -> "SquareFreeMonomialIdeal":
        """Intersection of the primes (x_j : j outside C) over the components.

        A square-free monomial lies in the intersection iff its support meets
        every complement, so the minimal generators are the minimal
        transversals of the complement sets.
        """
        full = (1 << n) - 1
        gens = [0]
        for comp in components:
            outside = full & ~comp
            nxt = []
            for t in gens:
                if t & outside:
                    nxt.append(t)
                else:
                    for j in vertices_of(outside):
                        nxt.append(t | 1 << (j - 1))
            gens = list(_maximal_antichain_min(nxt))
        return cls(n, tuple(sorted(gens)))

    @property
    def is_unit(self) -> bool:
        return self.generators == (0,)

    def contains_monomial(self, mask: int) -> bool:
        return any(mask & g == g for g in self.generators)

    def generator_lists(self) -> list[list[int]]:
        return [list(vertices_of(g)) for g in self.generators]


def _maximal_antichain_min(masks) -> tuple[int, ...]:
    masks = sorted(set(masks))
    out = [m for m in masks if not any(o != m and o & m == o for o in masks)]
    return tuple(sorted(out))


# -- support side -------------------------------------------------------------


def support_resonance(delta: SimplicialComplex, i: int) -> CoordinateSubspaceArrangement:
    """Maximal supports with nonvanishing reduced homology in degree i-1."""
    if i < 1:
        raise ComplexError("support resonance is defined for i >= 1")
    dims = all_subset_homology(delta, i)
    return CoordinateSubspaceArrangement.from_masks(
        delta.n, [m for m, h in dims.items() if h]
    )


def annihilator(
    delta: SimplicialComplex, i: int, certify: bool = True
) -> SquareFreeMonomialIdeal:
    """Annihilator of the weight-i module as a square-free monomial ideal.

    The ideal is the intersection of the coordinate primes over the support
    components; with certify=True each generator is checked to act as zero
    on every piece of the module, and each component support is checked to
    carry a nonzero piece.
    """
    arrangement = support_resonance(delta, i)
    ideal = SquareFreeMonomialIdeal.from_prime_intersection(
        delta.n, arrangement.components
    )
    if certify:
        module = koszul_module(delta, i)
        for gen in ideal.generators:
            for b in module.supports():
                action = module.monomial_action(b, gen)
                if action.entries:
                    raise OracleError(
                        f"generator {vertices_of(gen)} acts nonzero on the piece "
                        f"at {vertices_of(b)}"
                    )
        for comp in arrangement.components:
            if module.piece_dim(comp) == 0:
                raise OracleError(
                    f"component {vertices_of(comp)} has no module piece"
                )
    return ideal


# -- jump side ----------------------------------------------------------------


def _jump_condition(delta: SimplicialComplex, vmask: int, i: int) -> bool:
    full = (1 << delta.n) - 1
    outside = restriction(delta, full & ~vmask)
    for sigma in outside.faces:
        s = sigma.bit_count()
        if s > i:
            continue
        lk = link(delta, vmask, sigma)
        if reduced_homology(lk).get(i - 1 - s):
            return True
    return False


def jump_resonance(delta: SimplicialComplex, i: int) -> CoordinateSubspaceArrangement:
    """Maximal supports where the specialized cochain cohomology jumps."""
    if i < 0:
        raise ComplexError("jump resonance needs i >= 0")
    if i == 0:
        return CoordinateSubspaceArrangement.origin(delta.n)
    if delta.n > ALL_SUBSETS_GUARD:
        raise GuardError(f"n={delta.n} exceeds the all-subsets guard")
    if delta.is_void:
        return CoordinateSubspaceArrangement.empty(delta.n)
    accepted: list[int] = []
    masks = sorted(range(1 << delta.n), key=lambda m: -m.bit_count())
    for vmask in masks:
        if any(vmask & ~a == 0 for a in accepted):
            continue
        if _jump_condition(delta, vmask, i):
            accepted.append(vmask)
    return CoordinateSubspaceArrangement.from_masks(delta.n, accepted)


def delta_a_cohomology(delta: SimplicialComplex, a) -> list[int]:
    """Cohomology dimensions of left multiplication by a on the face algebra.

    Returns dims of H^i for i = 0 .. dim+1.  The element a is a vector of n
    rationals over the exterior generators; coefficients on non-vertices act
    as zero.
    """
    coeffs = [Fraction(x) for x in a]
    if len(coeffs) != delta.n:
        raise ComplexError(f"need {delta.n} coefficients, got {len(coeffs)}")
    if delta.is_void:
        return []
    top = delta.dim
    assert top is not None
    # A^i has basis the (i-1)-faces; delta_a(e_sigma) = a wedge e_sigma
    bases = {d: delta.faces_of_dim(d - 1) for d in range(0, top + 2)}
    mats = {}
    for d in range(0, top + 1):
        src = bases[d]
        tgt = bases[d + 1]
        index = {f: r for r, f in enumerate(tgt)}
        m = RationalMatrix(len(tgt), len(src))
        for j, f in enumerate(src):
            for v in range(1, delta.n + 1):
                bit = 1 << (v - 1)
                if f & bit or not coeffs[v - 1]:
                    continue
                g = f | bit
                r = index.get(g)
                if r is None:
                    continue
                below = (f & (bit - 1)).bit_count()
                sign = -1 if below % 2 else 1
                m.entries[(r, j)] = sign * coeffs[v - 1]
        mats[d] = m
    ranks = {d: rank(m) for d, m in mats.items()}
    dims = []
    for d in range(0, top + 2):
        dims.append(len(bases[d]) - ranks.get(d, 0) - ranks.get(d - 1, 0))
    return dims


@dataclass(frozen=True)
class HochsterReport:
    """Link-sum dimensions per degree with the per-face breakdown."""

    n: int
    support: tuple[int, ...]
    dims: tuple[int, ...]
    breakdown: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def hochster_check(delta: SimplicialComplex, support) -> HochsterReport:
    """Sum of link homologies against the specialized cochain cohomology.

    Raises OracleError naming the degree on any mismatch.
    """
    vmask = as_mask(support, delta.n)
    if delta.is_void:
        return HochsterReport(delta.n, vertices_of(vmask), (), ())
    top = delta.dim
    assert top is not None
    full = (1 << delta.n) - 1
    outside = restriction(delta, full & ~vmask)
    sums = [0] * (top + 2)
    breakdown = []
    for sigma in sorted(outside.faces, key=vertices_of):
        profile = reduced_homology(link(delta, vmask, sigma))
        s = sigma.bit_count()
        contribs = []
        for d in range(0, top + 2):
            h = profile.get(d - 1 - s)
            contribs.append(h)
            sums[d] += h
        breakdown.append((vertices_of(sigma), tuple(contribs)))
    indicator = [1 if vmask >> k & 1 else 0 for k in range(delta.n)]
    direct = delta_a_cohomology(delta, indicator)
    if list(sums) != list(direct):
        raise OracleError(
            f"link sum {sums} != specialized cohomology {direct} "
            f"at support {vertices_of(vmask)}"
        )
    return HochsterReport(delta.n, vertices_of(vmask), tuple(sums), tuple(breakdown))


# -- comparisons --------------------------------------------------------------


@dataclass(frozen=True)
class UnionConsistencyReport:
    n: int
    i: int
    hypothesis_met: bool
    support_union: CoordinateSubspaceArrangement
    jump_union: CoordinateSubspaceArrangement

    @property
    def status(self) -> str:
        if not self.hypothesis_met:
            return "skipped-hypothesis"
        return "pass"


def union_consistency_check(delta: SimplicialComplex, i: int) -> UnionConsistencyReport:
    """Equality of the unions of the two kinds of loci up to weight i.

    Applies only when every intermediate module is nonzero; otherwise the
    check reports that the hypothesis failed and asserts nothing.
    """
    hypothesis = all(
        not hilbert_series_combinatorial(delta, j).is_zero for j in range(1, i + 1)
    )
    sup = CoordinateSubspaceArrangement.origin(delta.n)
    jmp = CoordinateSubspaceArrangement.origin(delta.n)
    for j in range(1, i + 1):
        sup = sup.union(support_resonance(delta, j))
        jmp = jmp.union(jump_resonance(delta, j))
    report = UnionConsistencyReport(delta.n, i, hypothesis, sup, jmp)
    if hypothesis and sup != jmp:
        raise OracleError(
            f"union of loci disagree at i={i}: "
            f"{sup.support_lists()} vs {jmp.support_lists()}"
        )
    return report


@dataclass(frozen=True)
class CohenMacaulayReport:
    n: int
    is_cm: bool
    propagates: bool
    failing_face: tuple[int, ...] | None
    failing_degree: int | None


def cohen_macaulay_check(delta: SimplicialComplex) -> CohenMacaulayReport:
    """Link concentration test; raises if CM holds but propagation fails."""
    if delta.is_void or delta.dim is None:
        return CohenMacaulayReport(delta.n, False, propagation_check(delta), None, None)
    d = delta.dim
    full = (1 << delta.n) - 1
    is_cm = True
    failing = (None, None)
    for sigma in sorted(delta.faces, key=vertices_of):
        lk = link(delta, full & ~sigma, sigma)
        profile = reduced_homology(lk)
        for deg, h in profile.dims.items():
            if h and deg != d - sigma.bit_count():
                is_cm = False
                failing = (vertices_of(sigma), deg)
                break
        if not is_cm:
            break
    propagates = propagation_check(delta)
    if is_cm and not propagates:
        raise OracleError("Cohen-Macaulay complex with non-propagating resonance")
    return CohenMacaulayReport(delta.n, is_cm, propagates, *failing)


def propagation_check(delta: SimplicialComplex) -> bool:
    """Whether the jump loci form an increasing chain up to weight dim+1."""
    if delta.is_void or delta.dim is None or delta.dim < 0:
        return True
    top = delta.dim + 1
    prev = jump_resonance(delta, 1)
    for i in range(2, top + 1):
        cur = jump_resonance(delta, i)
        if not prev.included_in(cur):
            return False
        prev = cur
    return True


@dataclass(frozen=True)
class FixedDegreeReport:
    n: int
    d: int
    equal_loci: tuple[tuple[int, bool], ...]
    top_weight_trivial: bool
    top_weight_arrangement: CoordinateSubspaceArrangement
    degree_d_formula: bool

    @property
    def ok(self) -> bool:
        return (
            all(flag for _, flag in self.equal_loci)
            and self.top_weight_trivial
            and self.degree_d_formula
        )


def fixed_degree_resonance_check(delta: SimplicialComplex) -> FixedDegreeReport:
    """Checks for skeleton-complete complexes: loci agree away from the
    origin in every weight except d+1, the weight-(d+1) support locus is
    empty or everything, and the weight-d jump locus is cut out by the
    restriction homology formula."""
    d = skeleton_complete_degree(delta)
    if d is None or d < 1:
        raise ComplexError("check applies to skeleton-complete complexes")
    equal = []
    for i in range(1, d + 3):
        if i == d + 1:
            continue
        sup = support_resonance(delta, i)
        jmp = jump_resonance(delta, i)
        equal.append((i, sup.equal_away_from_origin(jmp)))
    top = support_resonance(delta, d + 1)
    top_ok = top.is_empty or top.is_full
    formula = support_resonance(delta, d)
    jump_d = jump_resonance(delta, d)
    report = FixedDegreeReport(
        delta.n,
        d,
        tuple(equal),
        top_ok,
        top,
        formula.equal_away_from_origin(jump_d),
    )
    if not report.ok:
        raise OracleError(f"fixed-degree resonance structure violated: {report}")
    return report
