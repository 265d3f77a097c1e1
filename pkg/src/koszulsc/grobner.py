"""Minimal multivariate polynomial arithmetic over the rationals.

Monomials are exponent tuples; polynomials map monomials to nonzero
Fractions.  Buchberger's algorithm with the coprimality and chain criteria
produces reduced Groebner bases, canonicalized to integer-primitive
generators with positive leading coefficients.  Deliberately sized for a
handful of variables; this is a verification tool, not a general solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GuardError

MINOR_GUARD = 10**6


# -- monomial orders ----------------------------------------------------------


def _grevlex_key(mono: tuple[int, ...]):
    return (sum(mono), tuple(-e for e in reversed(mono)))


@dataclass(frozen=True)
class MonomialOrder:
    """Term order given by a name; block orders eliminate a leading block."""

    name: str
    elim: int = 0

    def key(self, mono: tuple[int, ...]):
        if self.name == "grevlex":
            return _grevlex_key(mono)
        if self.name == "lex":
            return tuple(mono)
        if self.name == "block":
            return (_grevlex_key(mono[: self.elim]), _grevlex_key(mono[self.elim :]))
        raise ValueError(f"unknown order {self.name!r}")


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(elim: int) -> MonomialOrder:
    return MonomialOrder("block", elim)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# -- polynomials --------------------------------------------------------------


class Polynomial:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, c in terms.items() if isinstance(terms, dict) else terms:
                c = Fraction(c)
                if c:
                    cur = self.terms.get(mono, Fraction(0)) + c
                    if cur:
                        self.terms[mono] = cur
                    else:
                        self.terms.pop(mono, None)

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def variable(cls, n: int, j: int) -> "Polynomial":
        """The j-th variable, 1-based."""
        mono = tuple(1 if k == j - 1 else 0 for k in range(n))
        return cls(n, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, n: int, mono, c=1) -> "Polynomial":
        return cls(n, {tuple(mono): Fraction(c)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, Fraction(0)) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        p = Polynomial(self.n)
        p.terms = out
        return p

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, Fraction(0)) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        p = Polynomial(self.n)
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        p = Polynomial(self.n)
        if c:
            p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def mul_term(self, mono, c) -> "Polynomial":
        p = Polynomial(self.n)
        c = Fraction(c)
        if c:
            p.terms = {_mono_mul(m, mono): v * c for m, v in self.terms.items()}
        return p

    def leading(self, order: MonomialOrder):
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer-coefficient scalar multiple with content 1 and positive
        leading coefficient."""
        if self.is_zero:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
        p = self.scale(Fraction(den, num))
        if p.leading(order)[1] < 0:
            p = p.scale(-1)
        return p

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for m in sorted(self.terms, key=_grevlex_key, reverse=True):
            c = self.terms[m]
            vars_str = "*".join(
                f"x{j + 1}" + (f"^{e}" if e > 1 else "")
                for j, e in enumerate(m)
                if e
            )
            if not vars_str:
                bits.append(str(c))
            elif c == 1:
                bits.append(vars_str)
            elif c == -1:
                bits.append(f"-{vars_str}")
            else:
                bits.append(f"{c}*{vars_str}")
        return " + ".join(bits).replace("+ -", "- ")


def variables(n: int) -> list[Polynomial]:
    return [Polynomial.variable(n, j) for j in range(1, n + 1)]


# -- division and Buchberger --------------------------------------------------


def normal_form(f: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Fully reduce f modulo the basis (leading and lower terms)."""
    basis = [g for g in basis if not g.is_zero]
    leads = [g.leading(order) for g in basis]
    remainder = Polynomial.zero(f.n)
    work = Polynomial(f.n, dict(f.terms))
    while not work.is_zero:
        mono, coeff = work.leading(order)
        for g, (gm, gc) in zip(basis, leads):
            if _mono_divides(gm, mono):
                work = work - g.mul_term(_mono_div(mono, gm), coeff / gc)
                break
        else:
            remainder = remainder + Polynomial.monomial(f.n, mono, coeff)
            work.terms.pop(mono)
    return remainder


def _s_polynomial(f, g, order):
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = _mono_lcm(fm, gm)
    return f.mul_term(_mono_div(l, fm), Fraction(1, 1) / fc) - g.mul_term(
        _mono_div(l, gm), Fraction(1, 1) / gc
    )


def buchberger(gens, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """Reduced Groebner basis, deterministic and canonically scaled."""
    basis = [g for g in gens if not g.is_zero]
    if not basis:
        return []
    n = basis[0].n
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done = set()
    while pairs:
        i, j = min(
            pairs,
            key=lambda p: (
                order.key(
                    _mono_lcm(
                        basis[p[0]].leading(order)[0], basis[p[1]].leading(order)[0]
                    )
                ),
                p,
            ),
        )
        pairs.discard((i, j))
        done.add((i, j))
        fm = basis[i].leading(order)[0]
        gm = basis[j].leading(order)[0]
        l = _mono_lcm(fm, gm)
        if l == _mono_mul(fm, gm):
            continue  # coprime leading monomials
        if _chain_criterion(basis, i, j, l, done, order):
            continue
        r = normal_form(_s_polynomial(basis[i], basis[j], order), basis, order)
        if not r.is_zero:
            basis.append(r)
            k = len(basis) - 1
            pairs.update((m, k) for m in range(k))
    return _reduce_basis(basis, order, n)


def _chain_criterion(basis, i, j, l, done, order):
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not _mono_divides(basis[k].leading(order)[0], l):
            continue
        a, b = min(i, k), max(i, k)
        c, d = min(j, k), max(j, k)
        if (a, b) in done and (c, d) in done:
            return True
    return False


def _reduce_basis(basis, order, n):
    # drop members whose leading monomial is divisible by another's
    leads = [g.leading(order)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(
            j != i
            and _mono_divides(leads[j], leads[i])
            and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero:
            reduced.append(r.primitive(order))
    reduced.sort(key=lambda p: order.key(p.leading(order)[0]))
    return reduced


# -- ideals -------------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialIdeal:
    n: int
    generators: tuple[Polynomial, ...]
    _gb_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_polys(cls, n: int, polys) -> "PolynomialIdeal":
        return cls(n, tuple(p for p in polys if not p.is_zero))

    @classmethod
    def unit(cls, n: int) -> "PolynomialIdeal":
        return cls(n, (Polynomial.constant(n, 1),))

    @classmethod
    def from_square_free(cls, n: int, masks) -> "PolynomialIdeal":
        polys = []
        for mask in masks:
            mono = tuple(1 if mask >> k & 1 else 0 for k in range(n))
            polys.append(Polynomial.monomial(n, mono))
        return cls(n, tuple(polys))

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
        key = (order.name, order.elim)
        if key not in self._gb_cache:
            self._gb_cache[key] = buchberger(self.generators, order)
        return self._gb_cache[key]

    @property
    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].total_degree() == 0


def ideal_member(f: Polynomial, ideal: PolynomialIdeal, order=GREVLEX) -> bool:
    return normal_form(f, ideal.groebner_basis(order), order).is_zero


def ideal_equal(a: PolynomialIdeal, b: PolynomialIdeal) -> bool:
    if a.n != b.n:
        raise ValueError("ideals in different rings")
    return a.groebner_basis(GREVLEX) == b.groebner_basis(GREVLEX)


def ideal_intersect(a: PolynomialIdeal, b: PolynomialIdeal) -> PolynomialIdeal:
    """Intersection via one auxiliary variable and a block elimination order."""
    if a.n != b.n:
        raise ValueError("ideals in different rings")
    n = a.n
    lifted = []

    def lift(p: Polynomial, front: bool) -> Polynomial:
        q = Polynomial(n + 1)
        for m, c in p.terms.items():
            q.terms[(1 if front else 0,) + m] = c
        return q

    t = Polynomial.variable(n + 1, 1)
    one = Polynomial.constant(n + 1, 1)
    for p in a.generators:
        lifted.append(lift(p, True))  # t * p
    for p in b.generators:
        lifted.append((one - t) * lift(p, False))  # (1 - t) * p
    gb = buchberger(lifted, block_order(1))
    kept = []
    for g in gb:
        if all(m[0] == 0 for m in g.terms):
            kept.append(Polynomial(n, {m[1:]: c for m, c in g.terms.items()}))
    return PolynomialIdeal.from_polys(n, kept)


def fitting_ideal(matrix: list[list[Polynomial]], r: int, n: int) -> PolynomialIdeal:
    """Ideal of minors of size (#rows - r) of a presentation matrix.

    For r = 0 these are the maximal minors bounding the generators; r at or
    above the row count gives the unit ideal, and an impossible minor size
    gives the zero ideal.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    size = rows - r
    if size <= 0:
        return PolynomialIdeal.unit(n)
    if size > rows or size > cols:
        return PolynomialIdeal.from_polys(n, [])
    count = math.comb(rows, size) * math.comb(cols, size)
    if count > MINOR_GUARD:
        raise GuardError(f"{count} minors exceed the guard {MINOR_GUARD}")
    minors = []
    for rsel in itertools.combinations(range(rows), size):
        for csel in itertools.combinations(range(cols), size):
            minors.append(_determinant([[matrix[i][j] for j in csel] for i in rsel]))
    return PolynomialIdeal.from_polys(n, [m for m in minors if not m.is_zero])


def _determinant(m: list[list[Polynomial]]) -> Polynomial:
    size = len(m)
    n = m[0][0].n
    if size == 1:
        return m[0][0]
    det = Polynomial.zero(n)
    for j in range(size):
        if m[0][j].is_zero:
            continue
        minor = [[row[k] for k in range(size) if k != j] for row in m[1:]]
        term = m[0][j] * _determinant(minor)
        det = det + (term if j % 2 == 0 else term.scale(-1))
    return det


@dataclass(frozen=True)
class RadicalComparison:
    """Containment report of an ideal against its stated radical."""

    contained: bool
    equal: bool

    @property
    def reduced(self) -> bool:
        return self.contained and self.equal


def is_radical_vs(ideal: PolynomialIdeal, radical: PolynomialIdeal) -> RadicalComparison:
    contained = all(ideal_member(g, radical) for g in ideal.generators)
    reverse = all(ideal_member(g, ideal) for g in radical.generators)
    return RadicalComparison(contained, contained and reverse)
