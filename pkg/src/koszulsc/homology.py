"""Reduced simplicial homology over the rationals.

The augmented chain complex carries the empty face in degree -1, so the
complex {emptyset} has reduced homology k in degree -1 while the VOID
complex has none at all.  Boundary convention on an increasing face
(j_1 < ... < j_s):  each j_r is dropped with sign (-1)^(r-1).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import SimplicialComplex, restriction, vertices_of
from .errors import GuardError
from .exactlin import RationalMatrix, rank

ALL_SUBSETS_GUARD = 20


def boundary_matrix(delta: SimplicialComplex, d: int) -> RationalMatrix:
    """Map from d-faces to (d-1)-faces of the augmented chain complex."""
    lo = delta.faces_of_dim(d - 1)
    hi = delta.faces_of_dim(d)
    index = {f: i for i, f in enumerate(lo)}
    m = RationalMatrix(len(lo), len(hi))
    for j, f in enumerate(hi):
        sign = 1
        for v in vertices_of(f):
            g = f & ~(1 << (v - 1))
            m.entries[(index[g], j)] = Fraction(sign)
            sign = -sign
    return m


@dataclass(frozen=True)
class ReducedHomologyProfile:
    """Dimensions of the reduced homology groups, indexed from -1."""

    n: int
    dims: dict[int, int] = field(default_factory=dict)

    def get(self, i: int) -> int:
        return self.dims.get(i, 0)

    def top_degree(self) -> int | None:
        nonzero = [i for i, v in self.dims.items() if v]
        return max(nonzero) if nonzero else None

    def is_zero(self) -> bool:
        return not any(self.dims.values())


@functools.lru_cache(maxsize=None)
def reduced_homology(delta: SimplicialComplex) -> ReducedHomologyProfile:
    if delta.is_void:
        return ReducedHomologyProfile(delta.n, {})
    top = delta.dim
    assert top is not None
    counts = {d: len(delta.faces_of_dim(d)) for d in range(-1, top + 1)}
    ranks = {}
    for d in range(0, top + 1):
        ranks[d] = rank(boundary_matrix(delta, d))
    dims = {}
    for d in range(-1, top + 1):
        dims[d] = counts[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return ReducedHomologyProfile(delta.n, dims)


def reduced_homology_via_cochains(delta: SimplicialComplex) -> ReducedHomologyProfile:
    """Same dimensions computed from the transposed (cochain) matrices."""
    if delta.is_void:
        return ReducedHomologyProfile(delta.n, {})
    top = delta.dim
    counts = {d: len(delta.faces_of_dim(d)) for d in range(-1, top + 1)}
    ranks = {d: rank(boundary_matrix(delta, d).transpose()) for d in range(0, top + 1)}
    dims = {}
    for d in range(-1, top + 1):
        dims[d] = counts[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return ReducedHomologyProfile(delta.n, dims)


def all_subset_homology(
    delta: SimplicialComplex, i: int, guard: int = ALL_SUBSETS_GUARD
) -> dict[int, int]:
    """h~_{i-1} of every restriction, keyed by support mask, ascending.

    Restrictions with the same face set share one homology computation.
    """
    if delta.n > guard:
        raise GuardError(f"n={delta.n} exceeds the all-subsets guard {guard}")
    out = {}
    for mask in range(1 << delta.n):
        sub = restriction(delta, mask)
        out[mask] = reduced_homology(sub).get(i - 1)
    return out


def euler_characteristic_consistent(delta: SimplicialComplex) -> bool:
    """Alternating sums of homology dims and face counts agree."""
    profile = reduced_homology(delta)
    if delta.is_void:
        return profile.is_zero()
    top = delta.dim
    lhs = sum((-1) ** i * profile.get(i) for i in range(-1, top + 1))
    rhs = sum((-1) ** d * len(delta.faces_of_dim(d)) for d in range(-1, top + 1))
    return lhs == rhs
