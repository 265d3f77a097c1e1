"""Strand complexes and the weight-i homology modules of a simplicial complex.

For a multidegree b the three-term strand at position i has a basis element
for every face of size i contained in the support of b (the monomial factor
is then forced to be x^(b - e_face)), and the differential drops one vertex
at a time with alternating signs.  Homology of the strand gives the graded
piece of the weight-i module; multiplication maps between pieces are induced
on homology representatives.  All multiplication data at square-free degrees
determines the module, and Betti numbers are read off finite strands built
from that data.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (
    SimplicialComplex,
    as_mask,
    flag_completion,
    missing_faces,
    skeleton_complete_degree,
    vertices_of,
)
from .errors import ComplexError, ConsistencyError, GuardError
from .exactlin import RationalMatrix, express_in_basis, homology, kernel_basis, rank
from .homology import ALL_SUBSETS_GUARD, all_subset_homology


# -- strand complexes -------------------------------------------------------


@dataclass(frozen=True)
class StrandComplex:
    """Three-term complex [A_{i+1} (x) S]_b -> [A_i (x) S]_b -> [A_{i-1} (x) S]_b."""

    n: int
    i: int
    multidegree: tuple[int, ...]
    basis_up: tuple[tuple[int, tuple[int, ...]], ...]
    basis_mid: tuple[tuple[int, tuple[int, ...]], ...]
    basis_down: tuple[tuple[int, tuple[int, ...]], ...]
    d_in: RationalMatrix
    d_out: RationalMatrix

    @property
    def middle_faces(self) -> list[int]:
        return [f for f, _ in self.basis_mid]


def _support_mask(multidegree: tuple[int, ...]) -> int:
    m = 0
    for pos, a in enumerate(multidegree):
        if a:
            m |= 1 << pos
    return m


def _strand_basis(delta: SimplicialComplex, size: int, multidegree):
    """Faces of the given size inside the support, paired with the forced
    monomial exponent vector."""
    if size < 0:
        return []
    supp = _support_mask(multidegree)
    out = []
    for f in delta.faces_of_size(size):
        if f & ~supp == 0:
            mono = list(multidegree)
            for v in vertices_of(f):
                mono[v - 1] -= 1
            out.append((f, tuple(mono)))
    out.sort(key=lambda fm: (vertices_of(fm[0]), fm[1]))
    return out


def _strand_differential(basis_hi, basis_lo) -> RationalMatrix:
    index = {fm: r for r, fm in enumerate(basis_lo)}
    m = RationalMatrix(len(basis_lo), len(basis_hi))
    for j, (f, mono) in enumerate(basis_hi):
        sign = 1
        for v in vertices_of(f):
            g = f & ~(1 << (v - 1))
            target_mono = list(mono)
            target_mono[v - 1] += 1
            r = index.get((g, tuple(target_mono)))
            if r is not None:
                m.entries[(r, j)] = Fraction(sign)
            sign = -sign
    return m


def build_strand(delta: SimplicialComplex, i: int, multidegree) -> StrandComplex:
    if isinstance(multidegree, int) or hasattr(multidegree, "mask"):
        mask = as_mask(multidegree, delta.n)
        multidegree = tuple(1 if mask >> k & 1 else 0 for k in range(delta.n))
    else:
        multidegree = tuple(int(a) for a in multidegree)
        if len(multidegree) != delta.n or any(a < 0 for a in multidegree):
            raise ComplexError(f"bad multidegree {multidegree} for n={delta.n}")
    up = _strand_basis(delta, i + 1, multidegree)
    mid = _strand_basis(delta, i, multidegree)
    down = _strand_basis(delta, i - 1, multidegree)
    return StrandComplex(
        delta.n,
        i,
        multidegree,
        tuple(up),
        tuple(mid),
        tuple(down),
        _strand_differential(up, mid),
        _strand_differential(mid, down),
    )


def koszul_strand_piece(delta: SimplicialComplex, i: int, b):
    """Dimension and homology representatives of the strand at degree b."""
    strand = build_strand(delta, i, b)
    return homology(strand.d_in, strand.d_out)


def strand_dimension(delta: SimplicialComplex, i: int, b) -> int:
    """Strand homology dimension by rank computations only."""
    strand = build_strand(delta, i, b)
    mid = len(strand.basis_mid)
    return mid - rank(strand.d_out) - rank(strand.d_in)


# -- the module and its multiplication data ---------------------------------


@dataclass
class SquareFreeModule:
    """Finite model of a square-free module: pieces at square-free degrees
    plus the multiplication maps leaving each support (multiplication by a
    support variable is the encoded identity)."""

    n: int
    weight: int
    pieces: dict[int, int] = field(default_factory=dict)
    reps: dict[int, list[dict[int, Fraction]]] = field(default_factory=dict)
    strand_faces: dict[int, list[int]] = field(default_factory=dict)
    mult: dict[tuple[int, int], RationalMatrix] = field(default_factory=dict)

    def piece_dim(self, b) -> int:
        return self.pieces.get(as_mask(b, self.n), 0)

    def mult_matrix(self, b, j: int) -> RationalMatrix:
        mask = as_mask(b, self.n)
        bit = 1 << (j - 1)
        if mask & bit:
            raise ComplexError(f"variable {j} lies in the support")
        key = (mask, j)
        if key in self.mult:
            return self.mult[key]
        return RationalMatrix(self.pieces.get(mask | bit, 0), self.pieces.get(mask, 0))

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    def total_dim(self) -> int:
        return sum(self.pieces.values())

    def supports(self) -> list[int]:
        return sorted(self.pieces)

    def max_supports(self) -> list[int]:
        masks = self.supports()
        return sorted(
            m for m in masks if not any(o != m and o & m == m for o in masks)
        )

    def monomial_action(self, b, tmask: int) -> RationalMatrix:
        """Composite multiplication by prod(x_j, j in tmask) out of piece b.

        Support variables act as the encoded identity; off-support steps
        compose the stored maps in ascending variable order.
        """
        cur = as_mask(b, self.n)
        matrix = RationalMatrix.identity(self.pieces.get(cur, 0))
        for j in vertices_of(tmask & ~cur):
            step = self.mult_matrix(cur, j)
            matrix = step.matmul(matrix)
            cur |= 1 << (j - 1)
        return matrix


@functools.lru_cache(maxsize=None)
def koszul_module(delta: SimplicialComplex, i: int) -> SquareFreeModule:
    """All square-free pieces of the weight-i module with multiplication maps.

    Raises ConsistencyError if the lifted maps fail to commute.
    """
    if delta.n > ALL_SUBSETS_GUARD:
        raise GuardError(f"n={delta.n} exceeds the all-subsets guard")
    module = SquareFreeModule(delta.n, i)
    strands = {}
    for mask in range(1 << delta.n):
        strand = build_strand(delta, i, mask)
        strands[mask] = strand
        dim, reps = homology(strand.d_in, strand.d_out)
        if dim:
            module.pieces[mask] = dim
            module.reps[mask] = reps
            module.strand_faces[mask] = strand.middle_faces
    for mask in module.supports():
        src_faces = module.strand_faces[mask]
        for j in range(1, delta.n + 1):
            bit = 1 << (j - 1)
            if mask & bit:
                continue
            target = mask | bit
            tdim = module.pieces.get(target, 0)
            sdim = module.pieces[mask]
            matrix = RationalMatrix(tdim, sdim)
            if tdim:
                tstrand = strands[target]
                tindex = {f: r for r, f in enumerate(tstrand.middle_faces)}
                timage = tstrand.d_in.columns()
                for col, rep in enumerate(module.reps[mask]):
                    shifted = {tindex[src_faces[r]]: v for r, v in rep.items()}
                    coords = express_in_basis(module.reps[target], timage, shifted)
                    for row, v in enumerate(coords):
                        if v:
                            matrix.entries[(row, col)] = v
            module.mult[(mask, j)] = matrix
    _check_commutativity(module)
    return module


def _check_commutativity(module: SquareFreeModule) -> None:
    for mask in module.supports():
        outside = [j for j in range(1, module.n + 1) if not mask >> (j - 1) & 1]
        for j, k in itertools.combinations(outside, 2):
            jk = module.mult_matrix(mask | 1 << (k - 1), j).matmul(
                module.mult_matrix(mask, k)
            )
            kj = module.mult_matrix(mask | 1 << (j - 1), k).matmul(
                module.mult_matrix(mask, j)
            )
            if jk != kj:
                raise ConsistencyError(
                    f"multiplication squares disagree at b={vertices_of(mask)}, "
                    f"j={j}, k={k}"
                )


# -- Hilbert series ----------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeriesMulti:
    """Finite sum of terms c_b * t^b / prod_(j in Supp b) (1 - t_j)."""

    n: int
    terms: tuple[tuple[int, int], ...]  # (support mask, coefficient), ascending

    @classmethod
    def from_dict(cls, n: int, coeffs: dict[int, int]) -> "HilbertSeriesMulti":
        return cls(n, tuple(sorted((m, c) for m, c in coeffs.items() if c)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, b) -> int:
        mask = as_mask(b, self.n)
        for m, c in self.terms:
            if m == mask:
                return c
        return 0


def hilbert_series_combinatorial(delta: SimplicialComplex, i: int) -> HilbertSeriesMulti:
    dims = all_subset_homology(delta, i)
    return HilbertSeriesMulti.from_dict(delta.n, dims)


def hilbert_series_from_module(module: SquareFreeModule) -> HilbertSeriesMulti:
    return HilbertSeriesMulti.from_dict(module.n, dict(module.pieces))


def specialize_single(series: HilbertSeriesMulti, max_degree: int) -> list[int]:
    """Coefficients of the single-graded expansion for degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = [0] * (max_degree + 1)
    for mask, c in series.terms:
        k = mask.bit_count()
        if k == 0:
            out[0] += c
        else:
            for a in range(k, max_degree + 1):
                out[a] += c * math.comb(a - 1, k - 1)
    return out


@dataclass(frozen=True)
class ChenRanks:
    """Disconnection statistics of a graph and the shifted Hilbert expansion."""

    n: int
    q_coeffs: tuple[tuple[int, int], ...]  # (j, c_j) with c_j != 0
    expansion: tuple[int, ...]


def chen_ranks(delta: SimplicialComplex, max_degree: int) -> ChenRanks:
    """Q-polynomial coefficients c_j and the degree-shifted expansion.

    The reported module is the weight-1 module shifted by two, so the
    expansion entry at a equals the weight-1 dimension in degree a + 2.
    """
    if not delta.is_void and delta.dim is not None and delta.dim > 1:
        raise ComplexError("chen ranks are defined for graphs (dim <= 1)")
    dims = all_subset_homology(delta, 1)
    c: dict[int, int] = {}
    for mask, h in dims.items():
        if h:
            c[mask.bit_count()] = c.get(mask.bit_count(), 0) + h
    expansion = []
    for a in range(max_degree + 1):
        expansion.append(sum(cj * math.comb(a + 1, j - 1) for j, cj in c.items()))
    return ChenRanks(delta.n, tuple(sorted(c.items())), tuple(expansion))


# -- Tor of the monomial quotient ring ---------------------------------------


def _tor_basis(delta: SimplicialComplex, size: int, supp: int):
    if size < 0:
        return []
    out = []
    for combo in itertools.combinations(vertices_of(supp), size) if size else [()]:
        fmask = 0
        for v in combo:
            fmask |= 1 << (v - 1)
        if (supp & ~fmask) in delta.faces:
            out.append(fmask)
    out.sort(key=vertices_of)
    return out


def _tor_differential(basis_hi, basis_lo) -> RationalMatrix:
    index = {f: r for r, f in enumerate(basis_lo)}
    m = RationalMatrix(len(basis_lo), len(basis_hi))
    for j, f in enumerate(basis_hi):
        sign = 1
        for v in vertices_of(f):
            g = f & ~(1 << (v - 1))
            r = index.get(g)
            if r is not None:
                m.entries[(r, j)] = Fraction(sign)
            sign = -sign
    return m


def tor_stanley_reisner(delta: SimplicialComplex, j: int, b) -> int:
    """dim Tor_j(k, S/I)_b for the face-ring quotient, b square-free."""
    if j < 0:
        return 0
    supp = as_mask(b, delta.n)
    hi = _tor_basis(delta, j + 1, supp)
    mid = _tor_basis(delta, j, supp)
    lo = _tor_basis(delta, j - 1, supp)
    d_in = _tor_differential(hi, mid)
    d_out = _tor_differential(mid, lo)
    return len(mid) - rank(d_in) - rank(d_out)


@dataclass(frozen=True)
class DualityReport:
    """Three routes to one graded dimension, with the equality verdict."""

    n: int
    i: int
    support: tuple[int, ...]
    dim_module: int
    dim_tor: int
    dim_homology: int

    @property
    def ok(self) -> bool:
        return self.dim_module == self.dim_tor == self.dim_homology


def verify_duality(delta: SimplicialComplex, i: int, b) -> DualityReport:
    """Strand homology, Tor strand and restriction homology at degree b."""
    from .homology import reduced_homology
    from .complexes import restriction

    mask = as_mask(b, delta.n)
    dim_module = strand_dimension(delta, i, mask)
    dim_tor = tor_stanley_reisner(delta, mask.bit_count() - i, mask)
    dim_h = reduced_homology(restriction(delta, mask)).get(i - 1)
    return DualityReport(
        delta.n, i, vertices_of(mask), dim_module, dim_tor, dim_h
    )


# -- Betti tables -------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers over square-free degrees with derived invariants."""

    n: int
    entries: tuple[tuple[int, int, int], ...]  # (h, support mask, beta)

    def beta(self, h: int, b) -> int:
        mask = as_mask(b, self.n)
        for hh, mm, v in self.entries:
            if (hh, mm) == (h, mask):
                return v
        return 0

    @property
    def regularity(self):
        if not self.entries:
            return float("-inf")
        return max(m.bit_count() - h for h, m, _ in self.entries)

    @property
    def pdim(self) -> int:
        if not self.entries:
            return -1
        return max(h for h, _, _ in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries


def betti_table(module: SquareFreeModule) -> BettiTable:
    """Betti numbers from the finite strands (x_F-labelled sums of pieces)."""
    entries = []
    for bmask in range(1 << module.n):
        blocks: dict[int, list[tuple[int, int, int]]] = {}
        dims: dict[int, int] = {}
        sub = bmask
        while True:
            piece = module.pieces.get(bmask & ~sub, 0)
            if piece:
                fmask = sub
                h = fmask.bit_count()
                offset = dims.get(h, 0)
                blocks.setdefault(h, []).append((fmask, offset, piece))
                dims[h] = offset + piece
            if sub == 0:
                break
            sub = (sub - 1) & bmask
        if not dims:
            continue
        ranks: dict[int, int] = {}
        for h in range(1, bmask.bit_count() + 1):
            if dims.get(h) and dims.get(h - 1):
                ranks[h] = rank(_betti_differential(module, bmask, blocks, dims, h))
            else:
                ranks[h] = 0
        for h in range(0, bmask.bit_count() + 1):
            beta = dims.get(h, 0) - ranks.get(h, 0) - ranks.get(h + 1, 0)
            if beta:
                entries.append((h, bmask, beta))
    entries.sort()
    return BettiTable(module.n, tuple(entries))


def _betti_differential(module, bmask, blocks, dims, h) -> RationalMatrix:
    lo_offsets = {fmask: off for fmask, off, _ in blocks.get(h - 1, [])}
    m = RationalMatrix(dims.get(h - 1, 0), dims.get(h, 0))
    for fmask, off, piece in blocks.get(h, []):
        sign = 1
        for v in vertices_of(fmask):
            g = fmask & ~(1 << (v - 1))
            goff = lo_offsets.get(g)
            if goff is not None:
                step = module.mult_matrix(bmask & ~fmask, v)
                for (r, c), val in step.entries.items():
                    m.entries[(goff + r, off + c)] = sign * val
            sign = -sign
    return m


@dataclass(frozen=True)
class BoundsReport:
    """Regularity and projective dimension against their general bounds.

    The sharper bound for the top weight of a skeleton-complete complex is
    max(d+1, n-2); it reads n-2 exactly when d <= n-3.
    """

    n: int
    i: int
    vacuous: bool
    regularity: float
    pdim: int
    reg_bound: int
    pdim_bound: int
    skeleton_bound: int | None

    @property
    def ok(self) -> bool:
        if self.vacuous:
            return True
        if self.regularity > self.reg_bound or self.pdim > self.pdim_bound:
            return False
        if self.skeleton_bound is not None and self.regularity > self.skeleton_bound:
            return False
        return True


def regularity_bounds_check(delta: SimplicialComplex, i: int) -> BoundsReport:
    module = koszul_module(delta, i)
    table = betti_table(module)
    if delta.is_void:
        skel = None
    else:
        skel = skeleton_complete_degree(delta)
    return BoundsReport(
        n=delta.n,
        i=i,
        vacuous=table.is_zero,
        regularity=table.regularity,
        pdim=table.pdim,
        reg_bound=delta.n,
        pdim_bound=delta.n - i - 1,
        skeleton_bound=max(i + 1, delta.n - 2) if skel == i else None,
    )


# -- presentations ------------------------------------------------------------


def monomials_of_degree(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree k, in lexicographic order."""
    if k < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(n), k):
        mono = [0] * n
        for idx in combo:
            mono[idx] += 1
        out.append(tuple(mono))
    out.sort()
    return out


@dataclass(frozen=True)
class PresentationMatrix:
    """Presentation of the top-weight module of a skeleton-complete complex.

    Rows are indexed by the missing d-faces, columns by the missing
    (d+1)-faces of the flag completion; each entry is sign * x_var.
    """

    n: int
    d: int
    row_faces: tuple[int, ...]
    col_faces: tuple[int, ...]
    entries: tuple[tuple[int, int, int, int], ...]  # (row, col, sign, var)

    def entry_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {(r, c): (s, v) for r, c, s, v in self.entries}

    def cokernel_hilbert(self, max_degree: int) -> list[int]:
        """Hilbert function of the cokernel, degree by degree."""
        out = []
        for a in range(max_degree + 1):
            tgt_monos = monomials_of_degree(self.n, a - self.d - 1)
            src_monos = monomials_of_degree(self.n, a - self.d - 2)
            tgt_dim = len(self.row_faces) * len(tgt_monos)
            if not tgt_dim:
                out.append(0)
                continue
            tgt_index = {m: t for t, m in enumerate(tgt_monos)}
            matrix = RationalMatrix(tgt_dim, len(self.col_faces) * len(src_monos))
            for r, c, s, v in self.entries:
                for t, mono in enumerate(src_monos):
                    shifted = list(mono)
                    shifted[v - 1] += 1
                    ti = tgt_index[tuple(shifted)]
                    matrix.entries[
                        (r * len(tgt_monos) + ti, c * len(src_monos) + t)
                    ] = Fraction(s)
            out.append(tgt_dim - rank(matrix))
        return out


def presentation_matrix(delta: SimplicialComplex) -> PresentationMatrix:
    d = skeleton_complete_degree(delta)
    if d is None or d < 1:
        raise ComplexError("presentation needs a full codimension-1 skeleton")
    tilde = flag_completion(delta)
    rows = missing_faces(delta, d)
    cols = missing_faces(tilde, d + 1)
    row_index = {f: r for r, f in enumerate(rows)}
    entries = []
    for c, tau in enumerate(cols):
        sign = 1
        for v in vertices_of(tau):
            g = tau & ~(1 << (v - 1))
            r = row_index.get(g)
            if r is not None:
                entries.append((r, c, sign, v))
            sign = -sign
    return PresentationMatrix(delta.n, d, tuple(rows), tuple(cols), tuple(entries))


def pair_module_hilbert(n: int, d: int, k_basis, max_degree: int) -> list[int]:
    """Hilbert function of the top-weight module of a pair (V, K).

    K is given by exact-rational coordinate vectors over the size-(d+1)
    subset basis of the exterior power; the module is the cokernel of the
    Koszul map into the quotient by K, graded with generators in degree d+1.
    """
    wedge1 = list(itertools.combinations(range(1, n + 1), d + 1))
    wedge2 = list(itertools.combinations(range(1, n + 1), d + 2))
    dim1 = len(wedge1)
    vecs = []
    for vec in k_basis:
        vec = [Fraction(x) for x in vec]
        if len(vec) != dim1:
            raise ValueError(f"K vector has length {len(vec)}, expected {dim1}")
        vecs.append(vec)
    # echelonize K and build the projection onto the complement coordinates
    kmat = RationalMatrix(dim1, len(vecs))
    for c, vec in enumerate(vecs):
        for r, x in enumerate(vec):
            kmat[r, c] = x
    rows = kmat.transpose().row_dicts()
    from .exactlin import _rref

    pivots = _rref(rows)
    pivot_of = {pc: pi for pc, pi in pivots}
    free_coords = [c for c in range(dim1) if c not in pivot_of]
    proj = {}
    for w in range(dim1):
        if w in pivot_of:
            # the RREF row e_w + sum_c R[c] e_c lies in K, so modulo K the
            # class of e_w is minus its free tail
            row = rows[pivot_of[w]]
            proj[w] = {c: -row[c] for c in free_coords if row.get(c)}
        else:
            proj[w] = {w: Fraction(1)}
    free_index = {c: q for q, c in enumerate(free_coords)}
    wedge1_index = {w: idx for idx, w in enumerate(wedge1)}
    out = []
    qdim = len(free_coords)
    for a in range(max_degree + 1):
        tgt_monos = monomials_of_degree(n, a - d - 1)
        src_monos = monomials_of_degree(n, a - d - 2)
        tgt_dim = qdim * len(tgt_monos)
        if not tgt_dim:
            out.append(0)
            continue
        mono_index = {m: t for t, m in enumerate(tgt_monos)}
        matrix = RationalMatrix(tgt_dim, len(wedge2) * len(src_monos))
        for cw, w2 in enumerate(wedge2):
            sign = 1
            for pos, v in enumerate(w2):
                w1 = w2[:pos] + w2[pos + 1 :]
                pvec = proj[wedge1_index[w1]]
                if pvec:
                    for t, mono in enumerate(src_monos):
                        shifted = list(mono)
                        shifted[v - 1] += 1
                        ti = mono_index[tuple(shifted)]
                        col = cw * len(src_monos) + t
                        for c, val in pvec.items():
                            rr = free_index[c] * len(tgt_monos) + ti
                            prev = matrix[rr, col]
                            matrix[rr, col] = prev + sign * val
                sign = -sign
        out.append(tgt_dim - rank(matrix))
    return out
