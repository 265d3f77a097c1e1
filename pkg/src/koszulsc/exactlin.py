"""Sparse exact linear algebra over the rationals.

Matrices are immutable-by-convention sparse maps (row, col) -> Fraction.
Rank is available through two routes, pivoted Gaussian elimination over
Fraction and fraction-free (Bareiss) elimination over integers; they must
agree.  The pivot rule is deterministic: first row with the fewest nonzero
entries, ties broken by lowest row index, pivoting on its lowest column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import ConsistencyError

Rational = Fraction


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items() if isinstance(entries, dict) else entries:
                self[r, c] = v

    @classmethod
    def from_rows(cls, data) -> "RationalMatrix":
        data = [list(row) for row in data]
        m = cls(len(data), len(data[0]) if data else 0)
        for r, row in enumerate(data):
            for c, v in enumerate(row):
                m[r, c] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = Fraction(1)
        return m

    def __getitem__(self, rc) -> Fraction:
        return self.entries.get(rc, Fraction(0))

    def __setitem__(self, rc, v):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry {rc} outside {self.rows}x{self.cols}")
        v = Fraction(v)
        if v:
            self.entries[rc] = v
        else:
            self.entries.pop(rc, None)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def transpose(self) -> "RationalMatrix":
        t = RationalMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            t.entries[(c, r)] = v
        return t

    def column(self, c: int) -> dict[int, Fraction]:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list[dict[int, Fraction]]:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self) -> list[dict[int, Fraction]]:
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = RationalMatrix(self.rows, other.cols)
        rows = self.row_dicts()
        orows = other.row_dicts()
        for r, rowd in enumerate(rows):
            acc: dict[int, Fraction] = {}
            for k, a in rowd.items():
                for c, b in orows[k].items():
                    acc[c] = acc.get(c, Fraction(0)) + a * b
            for c, v in acc.items():
                if v:
                    out.entries[(r, c)] = v
        return out

    def apply(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Matrix times a sparse column vector (dict col -> value)."""
        acc: dict[int, Fraction] = {}
        for (r, c), a in self.entries.items():
            v = vec.get(c)
            if v:
                acc[r] = acc.get(r, Fraction(0)) + a * v
        return {r: v for r, v in acc.items() if v}


def _pick_pivot_row(rows: list[dict[int, Fraction]], live: list[int]) -> int:
    """Index into `live` of the row with fewest nonzeros, lowest index first."""
    best = -1
    best_nnz = None
    for pos, ri in enumerate(live):
        nnz = len(rows[ri])
        if nnz and (best_nnz is None or nnz < best_nnz):
            best, best_nnz = pos, nnz
            if nnz == 1:
                break
    return best


def rank(matrix: RationalMatrix, method: str = "gauss") -> int:
    if method == "gauss":
        return _rank_gauss(matrix.row_dicts())
    if method == "bareiss":
        return _rank_bareiss(_integer_rows(matrix))
    raise ValueError(f"unknown rank method {method!r}")


def _rank_gauss(rows: list[dict[int, Fraction]]) -> int:
    live = list(range(len(rows)))
    rk = 0
    while live:
        pos = _pick_pivot_row(rows, live)
        if pos < 0:
            break
        pi = live.pop(pos)
        prow = rows[pi]
        pc = min(prow)
        pval = prow[pc]
        rk += 1
        for ri in live:
            row = rows[ri]
            a = row.get(pc)
            if not a:
                continue
            factor = a / pval
            for c, v in prow.items():
                nv = row.get(c, Fraction(0)) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rk


def _integer_rows(matrix: RationalMatrix) -> list[dict[int, int]]:
    rows: list[dict[int, int]] = [dict() for _ in range(matrix.rows)]
    for (r, c), v in matrix.entries.items():
        rows[r][c] = v
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        den = 1
        for v in row.values():
            den = lcm(den, v.denominator)
        ints = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        out.append({c: v // g for c, v in ints.items()})
    return out


def _rank_bareiss(rows: list[dict[int, int]]) -> int:
    """One-step fraction-free (Bareiss) elimination on integer rows.

    Every live row is updated by (p*row - a*prow) / prev each step, so all
    divisions are exact by the minor identity.  Rank only, no normalization.
    """
    live = list(range(len(rows)))
    prev = 1
    rk = 0
    while live:
        best = -1
        best_key = None
        for pos, ri in enumerate(live):
            row = rows[ri]
            if row:
                key = len(row)
                if best_key is None or key < best_key:
                    best, best_key = pos, key
                    if key == 1:
                        break
        if best < 0:
            break
        pi = live.pop(best)
        prow = rows[pi]
        pc = min(prow)
        p = prow[pc]
        rk += 1
        for ri in live:
            row = rows[ri]
            a = row.pop(pc, 0)
            if a:
                acc = {c: p * v for c, v in row.items()}
                for c, w in prow.items():
                    if c != pc:
                        acc[c] = acc.get(c, 0) - a * w
                row.clear()
                for c, nv in acc.items():
                    nv //= prev
                    if nv:
                        row[c] = nv
            elif not (prev == 1 == p or prev == p):
                for c in list(row):
                    row[c] = (p * row[c]) // prev
        prev = p
    return rk


def _rref(rows: list[dict[int, Fraction]]):
    """Reduced row echelon form in place; returns list of pivot columns."""
    live = list(range(len(rows)))
    pivots: list[tuple[int, int]] = []  # (col, row index)
    while live:
        pos = _pick_pivot_row(rows, live)
        if pos < 0:
            break
        pi = live.pop(pos)
        prow = rows[pi]
        pc = min(prow)
        pval = prow[pc]
        for c in list(prow):
            prow[c] /= pval
        for ri in live:
            row = rows[ri]
            a = row.get(pc)
            if not a:
                continue
            for c, v in prow.items():
                nv = row.get(c, Fraction(0)) - a * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        pivots.append((pc, pi))
    # back-substitute in reverse selection order so each pivot row is
    # already fully reduced when it is used to clean the earlier rows
    for pc, pi in reversed(pivots):
        prow = rows[pi]
        for qc, qi in pivots:
            if qi == pi:
                continue
            row = rows[qi]
            a = row.get(pc)
            if not a:
                continue
            for c, v in prow.items():
                nv = row.get(c, Fraction(0)) - a * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    pivots.sort()
    return pivots


def kernel_basis(matrix: RationalMatrix) -> list[dict[int, Fraction]]:
    """Deterministic kernel basis, one vector per free column, ascending."""
    rows = matrix.row_dicts()
    pivots = _rref(rows)
    pivot_cols = {pc: pi for pc, pi in pivots}
    basis = []
    for c in range(matrix.cols):
        if c in pivot_cols:
            continue
        vec = {c: Fraction(1)}
        for pc, pi in pivots:
            a = rows[pi].get(c)
            if a:
                vec[pc] = -a
        basis.append(vec)
    return basis


class _Echelon:
    """Incremental column echelon structure for span membership tests."""

    def __init__(self):
        self.rows: list[dict[int, Fraction]] = []  # reduced vectors
        self.pivots: list[int] = []

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(vec)
        for pc, base in zip(self.pivots, self.rows):
            a = v.get(pc)
            if not a:
                continue
            for c, w in base.items():
                nv = v.get(c, Fraction(0)) - a * w
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
        return v

    def insert(self, vec: dict[int, Fraction]) -> bool:
        """Reduce and insert; True if the vector enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pc = min(v)
        pval = v[pc]
        for c in list(v):
            v[c] /= pval
        self.pivots.append(pc)
        self.rows.append(v)
        return True

    @property
    def rank(self):
        return len(self.rows)


def homology(d_in: RationalMatrix, d_out: RationalMatrix):
    """Homology at the middle of d_in: C_in -> C_mid, d_out: C_mid -> C_low.

    Returns (dimension, representatives); the representatives are kernel
    vectors of d_out completing a basis of the image of d_in.  Raises
    ConsistencyError naming the first column on which d_out(d_in(e_j)) != 0.
    """
    if d_in.cols and d_in.rows != d_out.cols:
        raise ValueError("middle dimensions disagree")
    for j, col in enumerate(d_in.columns()):
        if d_out.apply(col):
            raise ConsistencyError(f"composite map nonzero on column {j}")
    ech = _Echelon()
    img_rank = 0
    for col in d_in.columns():
        if ech.insert(col):
            img_rank += 1
    reps = []
    for vec in kernel_basis(d_out):
        if ech.insert(vec):
            reps.append(vec)
    return len(reps), reps


def express_in_basis(
    basis: list[dict[int, Fraction]],
    modulo: list[dict[int, Fraction]],
    target: dict[int, Fraction],
) -> list[Fraction]:
    """Coordinates of `target` over `basis`, working modulo span(`modulo`).

    Solves [basis | modulo] x = target and returns the basis block of x.
    Raises ConsistencyError if the system is inconsistent.
    """
    cols = list(basis) + list(modulo)
    # eliminate on the augmented system [cols | target]
    ech_rows: list[dict[int, Fraction]] = []
    ech_pivots: list[int] = []
    aug: list[list[Fraction]] = []  # coefficients of each echelon row over cols
    k = len(cols)
    coords = [Fraction(0)] * k

    def reduce_full(vec, coeff):
        v = dict(vec)
        cf = list(coeff)
        for idx, (pc, base) in enumerate(zip(ech_pivots, ech_rows)):
            a = v.get(pc)
            if not a:
                continue
            for c, w in base.items():
                nv = v.get(c, Fraction(0)) - a * w
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
            for j in range(k):
                cf[j] -= a * aug[idx][j]
        return v, cf

    for j, col in enumerate(cols):
        unit = [Fraction(0)] * k
        unit[j] = Fraction(1)
        v, cf = reduce_full(col, unit)
        if not v:
            continue
        pc = min(v)
        pval = v[pc]
        for c in list(v):
            v[c] /= pval
        cf = [x / pval for x in cf]
        ech_pivots.append(pc)
        ech_rows.append(v)
        aug.append(cf)
    v, cf = reduce_full(target, [Fraction(0)] * k)
    if v:
        raise ConsistencyError("vector not in the span of basis and modulo")
    # target = sum over echelon rows used; cf tracked the negative combination
    return [-cf[j] for j in range(len(basis))]
