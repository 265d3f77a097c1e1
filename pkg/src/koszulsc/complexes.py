"""Finite simplicial complexes on vertex set {1..n}, stored as bitmasks.

Vertices are 1-based externally and occupy bit positions 0..n-1 internally.
A face is an int whose set bits are its vertices.  The complex with no faces
at all (VOID) is distinct from the complex {emptyset} (IRRELEVANT); the
latter carries the empty face at dimension -1.
"""

from __future__ import annotations

import itertools
import json
import math
from typing import Iterable, Sequence

from .errors import ComplexError, GuardError

MAX_VERTICES = 63
SUBSET_GUARD = 20


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def iter_submasks(mask: int):
    """All submasks of `mask`, ascending as integers (0 first, mask last)."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


class SquareFreeDegree:
    """A square-free multidegree: a subset of {1..n} with bitmask semantics."""

    __slots__ = ("mask", "n")

    def __init__(self, mask: int, n: int):
        if mask < 0 or mask >> n:
            raise ComplexError(f"degree mask {mask:#b} not within 1..{n}")
        self.mask = mask
        self.n = n

    @classmethod
    def from_vertices(cls, vertices: Iterable[int], n: int) -> "SquareFreeDegree":
        return cls(mask_of(vertices), n)

    @property
    def support(self) -> tuple[int, ...]:
        return vertices_of(self.mask)

    @property
    def total(self) -> int:
        return self.mask.bit_count()

    def __eq__(self, other):
        return (
            isinstance(other, SquareFreeDegree)
            and self.mask == other.mask
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.mask, self.n))

    def __repr__(self):
        return f"SquareFreeDegree({list(self.support)}, n={self.n})"


def as_mask(b, n: int) -> int:
    """Accept a SquareFreeDegree, an int mask, or an iterable of vertices."""
    if isinstance(b, SquareFreeDegree):
        if b.n != n:
            raise ComplexError(f"degree on {b.n} vertices used with n={n}")
        return b.mask
    if isinstance(b, int):
        if b < 0 or b >> n:
            raise ComplexError(f"mask {b:#b} not within 1..{n}")
        return b
    vs = list(b)
    _check_range(vs, n)
    return mask_of(vs)


def _check_range(vertices, n):
    for v in vertices:
        if not 1 <= v <= n:
            raise ComplexError(f"vertex {v} out of range 1..{n}")


class SimplicialComplex:
    """Downward-closed family of faces; immutable after construction."""

    __slots__ = ("n", "faces", "facets", "scope", "_by_dim", "_hash")

    def __init__(self, n: int, faces: frozenset[int], scope: int | None = None):
        self.n = n
        self.faces = faces
        self.scope = ((1 << n) - 1) if scope is None else scope
        facets = [f for f in faces if not any(g != f and g & f == f for g in faces)]
        facets.sort(key=lambda m: (m.bit_count(), vertices_of(m)))
        self.facets = tuple(facets)
        by_dim: dict[int, list[int]] = {}
        for f in faces:
            by_dim.setdefault(f.bit_count() - 1, []).append(f)
        for lst in by_dim.values():
            lst.sort(key=vertices_of)
        self._by_dim = by_dim
        self._hash = hash((n, faces))

    # -- basic queries ----------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_irrelevant(self) -> bool:
        return self.faces == frozenset({0})

    @property
    def dim(self) -> int | None:
        """Dimension, -1 for {emptyset}, None for the VOID complex."""
        if not self.faces:
            return None
        return max(self._by_dim)

    @property
    def faces_by_dim(self) -> dict[int, list[int]]:
        return {d: list(v) for d, v in self._by_dim.items()}

    def faces_of_dim(self, d: int) -> list[int]:
        return list(self._by_dim.get(d, ()))

    def faces_of_size(self, k: int) -> list[int]:
        return self.faces_of_dim(k - 1)

    def has_face(self, mask: int) -> bool:
        return mask in self.faces

    @property
    def vertex_mask(self) -> int:
        m = 0
        for f in self._by_dim.get(0, ()):
            m |= f
        return m

    def f_vector(self) -> dict[int, int]:
        return {d: len(v) for d, v in self._by_dim.items()}

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self.faces == other.faces
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(n={self.n}, VOID)"
        if self.is_irrelevant:
            return f"SimplicialComplex(n={self.n}, {{emptyset}})"
        fs = [list(vertices_of(f)) for f in self.facets]
        return f"SimplicialComplex(n={self.n}, facets={fs})"


def from_facets(n: int, facets: Sequence[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of the given facets; duplicates and non-maximal
    members are absorbed.  An empty facet list yields the VOID complex and
    a single empty facet yields {emptyset}."""
    if n < 1:
        raise ComplexError(f"need n >= 1, got {n}")
    if n > MAX_VERTICES:
        raise ComplexError(f"n={n} exceeds the bitmask limit {MAX_VERTICES}")
    masks = set()
    for facet in facets:
        vs = list(facet)
        _check_range(vs, n)
        masks.add(mask_of(vs))
    faces = set()
    for m in masks:
        if m.bit_count() > SUBSET_GUARD:
            raise GuardError(
                f"facet with {m.bit_count()} vertices exceeds the expansion guard"
            )
        faces.update(iter_submasks(m))
    return SimplicialComplex(n, frozenset(faces))


def restriction(delta: SimplicialComplex, b) -> SimplicialComplex:
    """The subcomplex of faces contained in the support of `b`.

    The ambient n is kept; the recorded vertex scope shrinks to the support.
    """
    m = as_mask(b, delta.n)
    faces = frozenset(f for f in delta.faces if f & ~m == 0)
    return SimplicialComplex(delta.n, faces, scope=delta.scope & m)


def link(delta: SimplicialComplex, restrict_to, sigma) -> SimplicialComplex:
    """Faces tau inside `restrict_to` with tau | sigma a face of delta."""
    m = as_mask(restrict_to, delta.n)
    s = as_mask(sigma, delta.n)
    if s not in delta.faces:
        raise ComplexError(f"sigma {list(vertices_of(s))} is not a face")
    faces = frozenset(
        f for f in delta.faces if f & ~m == 0 and (f | s) in delta.faces
    )
    return SimplicialComplex(delta.n, faces, scope=delta.scope & m)


def skeleton_complete_degree(delta: SimplicialComplex) -> int | None:
    """dim(delta) if every subset of size <= dim is a face, else None.

    For a graph containing all n vertices this returns 1.
    """
    if delta.is_void:
        raise ComplexError("VOID complex has no skeleton degree")
    d = delta.dim
    assert d is not None
    for k in range(1, d + 1):
        if len(delta.faces_of_size(k)) != math.comb(delta.n, k):
            return None
    return d


def missing_faces(delta: SimplicialComplex, dim: int) -> list[int]:
    """All (dim+1)-subsets of {1..n} that are not faces, as masks."""
    if delta.n > SUBSET_GUARD:
        raise GuardError(f"n={delta.n} exceeds the all-subsets guard")
    out = []
    for combo in itertools.combinations(range(delta.n), dim + 1):
        m = 0
        for i in combo:
            m |= 1 << i
        if m not in delta.faces:
            out.append(m)
    out.sort(key=vertices_of)
    return out


def flag_completion(delta: SimplicialComplex) -> SimplicialComplex:
    """Largest complex sharing delta's d-skeleton, d = skeleton_complete_degree.

    A subset belongs to the completion iff all of its (d+1)-subsets are faces.
    For d = 1 this is the clique (flag) complex of the underlying graph.
    """
    d = skeleton_complete_degree(delta)
    if d is None:
        raise ComplexError("flag completion needs a full codimension-1 skeleton")
    if delta.n > SUBSET_GUARD:
        raise GuardError(f"n={delta.n} exceeds the all-subsets guard")
    faces = set(delta.faces)
    frontier = set(delta.faces_of_dim(d))
    size = d + 1
    while frontier:
        size += 1
        nxt = set()
        for f in frontier:
            for i in range(delta.n):
                bit = 1 << i
                if f & bit:
                    continue
                g = f | bit
                if g in faces or g in nxt:
                    continue
                # g enters iff every (d+1)-subset of g is a face
                if all(
                    m in delta.faces
                    for m in _k_submasks(g, d + 1)
                ):
                    nxt.add(g)
        faces.update(nxt)
        frontier = nxt
    return SimplicialComplex(delta.n, frozenset(faces), scope=delta.scope)


def _k_submasks(mask: int, k: int):
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for combo in itertools.combinations(bits, k):
        m = 0
        for b in combo:
            m |= b
        yield m


# -- named constructors ---------------------------------------------------


def path_complex(n: int) -> SimplicialComplex:
    """Path 1-2-...-n."""
    return from_facets(n, [[i, i + 1] for i in range(1, n)])


def cycle_complex(n: int) -> SimplicialComplex:
    """Cycle 1-2-...-n-1."""
    edges = [[i, i + 1] for i in range(1, n)] + [[n, 1]]
    return from_facets(n, edges)


def complete_graph(n: int) -> SimplicialComplex:
    return from_facets(n, [list(e) for e in itertools.combinations(range(1, n + 1), 2)])


def full_simplex(n: int) -> SimplicialComplex:
    return from_facets(n, [list(range(1, n + 1))])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the full simplex on n vertices."""
    return from_facets(
        n, [list(c) for c in itertools.combinations(range(1, n + 1), n - 1)]
    )


def two_disjoint_edges() -> SimplicialComplex:
    return from_facets(4, [[1, 2], [3, 4]])


def tetrahedron_minus_face() -> SimplicialComplex:
    """Boundary of the tetrahedron with the face {1,2,3} removed."""
    return from_facets(4, [[1, 2, 4], [1, 3, 4], [2, 3, 4], [1, 2], [1, 3], [2, 3]])


# -- file formats -----------------------------------------------------------


def parse_complex_text(text: str) -> SimplicialComplex:
    """Text format: '#' comments, first data line 'n <N>', one facet per line."""
    n = None
    facets = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ComplexError(f"expected 'n <N>' header, got {raw!r}")
            n = int(parts[1])
            continue
        try:
            facets.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise ComplexError(f"bad facet line {raw!r}") from exc
    if n is None:
        raise ComplexError("missing 'n <N>' header line")
    return from_facets(n, facets)


def parse_complex_json(text: str) -> SimplicialComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "facets" not in data:
        raise ComplexError('JSON complex needs keys "n" and "facets"')
    return from_facets(int(data["n"]), data["facets"])


def parse_complex(text: str) -> SimplicialComplex:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_complex_json(text)
    return parse_complex_text(text)


def format_complex_text(delta: SimplicialComplex, comment: str = "") -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"n {delta.n}")
    for f in delta.facets:
        if f:
            lines.append(" ".join(str(v) for v in vertices_of(f)))
    return "\n".join(lines) + "\n"


def format_complex_json(delta: SimplicialComplex) -> str:
    facets = [list(vertices_of(f)) for f in delta.facets]
    return json.dumps({"facets": facets, "n": delta.n}, sort_keys=True)
