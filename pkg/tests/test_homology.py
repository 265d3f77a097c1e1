import random

from hypothesis import given, settings, strategies as st

from koszulsc.complexes import (
    cycle_complex,
    from_facets,
    full_simplex,
    mask_of,
    path_complex,
    simplex_boundary,
    two_disjoint_edges,
)
from koszulsc.homology import (
    all_subset_homology,
    euler_characteristic_consistent,
    reduced_homology,
    reduced_homology_via_cochains,
)
from koszulsc.verify import random_complex


def test_two_isolated_points():
    delta = from_facets(2, [[1], [2]])
    profile = reduced_homology(delta)
    assert profile.get(0) == 1 and profile.get(-1) == 0


def test_triangle_cycle():
    profile = reduced_homology(cycle_complex(3))
    assert profile.get(1) == 1 and profile.get(0) == 0


def test_irrelevant_and_void():
    irrelevant = from_facets(2, [[]])
    assert reduced_homology(irrelevant).dims == {-1: 1}
    void = from_facets(2, [])
    assert reduced_homology(void).is_zero()


def test_sphere_boundary():
    profile = reduced_homology(simplex_boundary(5))
    assert profile.get(3) == 1
    assert all(profile.get(i) == 0 for i in (-1, 0, 1, 2))


def connected_components(n, edges, subset):
    """Union-find over an induced subgraph; an independent h~_0 oracle."""
    parent = {v: v for v in subset}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        if a in subset and b in subset:
            parent[find(a)] = find(b)
    return len({find(v) for v in subset})


def test_all_subset_homology_of_path_matches_component_counts():
    path = path_complex(4)
    edges = [(1, 2), (2, 3), (3, 4)]
    table = all_subset_homology(path, 1)
    for mask, h in table.items():
        subset = [v for v in range(1, 5) if mask >> (v - 1) & 1]
        expected = connected_components(4, edges, subset) - 1 if subset else 0
        assert h == expected
    hot = sorted(mask for mask, h in table.items() if h)
    assert hot == [
        mask_of([1, 3]),
        mask_of([1, 4]),
        mask_of([2, 4]),
        mask_of([1, 2, 4]),
        mask_of([1, 3, 4]),
    ]


def test_all_subset_homology_of_cycle():
    table = all_subset_homology(cycle_complex(4), 1)
    assert {m for m, h in table.items() if h} == {mask_of([1, 3]), mask_of([2, 4])}


def test_full_simplex_has_no_higher_homology():
    for i in range(1, 4):
        assert not any(all_subset_homology(full_simplex(4), i).values())


def test_two_edges_profile():
    profile = reduced_homology(two_disjoint_edges())
    assert profile.get(0) == 1 and profile.get(1) == 0


@given(st.integers(0, 10**6), st.integers(3, 7))
@settings(max_examples=60, deadline=None)
def test_euler_characteristic(seed, n):
    delta = random_complex(n, random.Random(seed))
    assert euler_characteristic_consistent(delta)


@given(st.integers(0, 10**6), st.integers(3, 8))
@settings(max_examples=40, deadline=None)
def test_homology_equals_cohomology_dimensions(seed, n):
    delta = random_complex(n, random.Random(seed))
    assert reduced_homology(delta).dims == reduced_homology_via_cochains(delta).dims
