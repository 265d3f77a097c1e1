import random

import pytest
from hypothesis import given, settings, strategies as st

from koszulsc.complexes import (
    SquareFreeDegree,
    complete_graph,
    cycle_complex,
    flag_completion,
    format_complex_json,
    format_complex_text,
    from_facets,
    full_simplex,
    link,
    mask_of,
    missing_faces,
    parse_complex,
    path_complex,
    restriction,
    skeleton_complete_degree,
    tetrahedron_minus_face,
    two_disjoint_edges,
    vertices_of,
)
from koszulsc.errors import ComplexError
from koszulsc.verify import random_complex


def faces_as_vertex_sets(delta):
    return sorted(vertices_of(f) for f in delta.faces)


def test_two_edges_faces():
    delta = from_facets(4, [[1, 2], [3, 4]])
    assert faces_as_vertex_sets(delta) == [
        (),
        (1,),
        (1, 2),
        (2,),
        (3,),
        (3, 4),
        (4,),
    ]


def test_void_and_irrelevant_are_distinct():
    void = from_facets(3, [])
    irrelevant = from_facets(3, [[]])
    assert void.is_void and not void.is_irrelevant
    assert irrelevant.is_irrelevant and not irrelevant.is_void
    assert void != irrelevant
    assert irrelevant.dim == -1 and void.dim is None


def test_duplicate_facets_are_absorbed():
    assert from_facets(4, [[1, 2], [1, 2]]) == from_facets(4, [[1, 2]])
    assert from_facets(4, [[1, 2], [1]]) == from_facets(4, [[1, 2]])


def test_vertex_range_errors():
    with pytest.raises(ComplexError):
        from_facets(3, [[1, 4]])
    with pytest.raises(ComplexError):
        from_facets(0, [])


def test_restriction_of_cycle_to_nonadjacent_pair():
    c4 = cycle_complex(4)
    sub = restriction(c4, SquareFreeDegree.from_vertices([1, 3], 4))
    assert faces_as_vertex_sets(sub) == [(), (1,), (3,)]


def test_restriction_full_mask_is_identity():
    delta = tetrahedron_minus_face()
    assert restriction(delta, [1, 2, 3, 4]) == delta


def test_restriction_of_tetra_to_missing_face_is_triangle_boundary():
    delta = tetrahedron_minus_face()
    sub = restriction(delta, [1, 2, 3])
    # independent enumeration: faces of delta contained in {1,2,3}
    expected = sorted(
        vertices_of(f) for f in delta.faces if f & ~mask_of([1, 2, 3]) == 0
    )
    assert faces_as_vertex_sets(sub) == expected
    assert faces_as_vertex_sets(sub) == [
        (),
        (1,),
        (1, 2),
        (1, 3),
        (2,),
        (2, 3),
        (3,),
    ]


def test_link_of_opposite_edge_is_irrelevant():
    two = two_disjoint_edges()
    lk = link(two, [1, 2], [3, 4])
    assert lk.is_irrelevant


def test_link_with_empty_face_is_restriction():
    delta = tetrahedron_minus_face()
    assert link(delta, [1, 2], []) == restriction(delta, [1, 2])


def test_link_of_vertex_across_components_is_irrelevant():
    two = two_disjoint_edges()
    assert link(two, [1, 2], [3]).is_irrelevant


def test_link_requires_a_face():
    with pytest.raises(ComplexError):
        link(two_disjoint_edges(), [1, 2], [1, 3])


def test_skeleton_degree_of_graphs():
    assert skeleton_complete_degree(two_disjoint_edges()) == 1
    assert skeleton_complete_degree(cycle_complex(5)) == 1
    assert skeleton_complete_degree(tetrahedron_minus_face()) == 2
    # missing vertex 3 breaks the 0-skeleton
    assert skeleton_complete_degree(from_facets(3, [[1, 2]])) is None


def test_skeleton_degree_void_errors():
    with pytest.raises(ComplexError):
        skeleton_complete_degree(from_facets(3, []))


def test_missing_faces_of_path():
    path = path_complex(4)
    assert [vertices_of(m) for m in missing_faces(path, 1)] == [
        (1, 3),
        (1, 4),
        (2, 4),
    ]
    assert missing_faces(full_simplex(5), 2) == []


def test_flag_completion_of_path_is_path():
    path = path_complex(4)
    assert flag_completion(path) == path


def test_flag_completion_fills_triangles():
    k3 = complete_graph(3)
    assert flag_completion(k3) == full_simplex(3)


def test_flag_completion_preserves_skeleton_and_flagness():
    rng = random.Random(7)
    for _ in range(20):
        delta = random_complex(5, rng)
        if delta.is_void:
            continue
        d = skeleton_complete_degree(delta)
        if d is None or d < 1:
            continue
        tilde = flag_completion(delta)
        assert tilde.faces_of_dim(d) == delta.faces_of_dim(d)
        # no missing (d+1)-face of the completion has a full boundary in it
        for m in missing_faces(tilde, d + 1):
            boundary_end = [
                m & ~(1 << (v - 1)) in tilde.faces for v in vertices_of(m)
            ]
            assert not all(boundary_end)


@given(st.integers(0, 10**6), st.integers(3, 6))
@settings(max_examples=60, deadline=None)
def test_restriction_composes_by_intersection(seed, n):
    rng = random.Random(seed)
    delta = random_complex(n, rng)
    a = rng.randrange(1 << n)
    b = rng.randrange(1 << n)
    assert restriction(restriction(delta, a), b) == restriction(delta, a & b)


@given(st.integers(0, 10**6), st.integers(3, 7))
@settings(max_examples=60, deadline=None)
def test_constructions_are_downward_closed(seed, n):
    rng = random.Random(seed)
    delta = random_complex(n, rng)
    for f in delta.faces:
        for v in vertices_of(f):
            assert f & ~(1 << (v - 1)) in delta.faces


@given(st.integers(0, 10**6), st.integers(3, 12))
@settings(max_examples=40, deadline=None)
def test_full_skeleton_means_small_subsets_are_faces(seed, n):
    rng = random.Random(seed)
    delta = random_complex(min(n, 6), rng)
    if delta.is_void:
        return
    d = skeleton_complete_degree(delta)
    if d is None:
        return
    for mask in range(1 << delta.n):
        if 0 < mask.bit_count() <= d:
            assert mask in delta.faces


def test_text_format_round_trip():
    delta = tetrahedron_minus_face()
    text = format_complex_text(delta, comment="tetra")
    assert parse_complex(text) == delta
    assert parse_complex(format_complex_json(delta)) == delta


def test_text_format_void():
    assert parse_complex("n 3\n").is_void
    assert parse_complex('{"n": 3, "facets": [[]]}').is_irrelevant


def test_bad_header_rejected():
    with pytest.raises(ComplexError):
        parse_complex("3\n1 2\n")
