"""Lattice layer: canonical forms, intersections, indices, enumeration.

Expected values here were recomputed with the brute-force oracles at the
bottom of this file before being frozen into the assertions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerval.errors import (
    DimensionMismatch,
    EnumerationBound,
    MembershipError,
    NonContainment,
    UnsupportedConfiguration,
)
from brauerval.lattices import (
    Lattice,
    Ordering,
    ValueVector,
    enumerate_overlattices,
    lattice_canonicalize,
    lattice_index,
    lattice_intersect,
    lex_compare,
    modp_image_rank,
)

F = Fraction
V = ValueVector.of


# ---------------------------------------------------------------- oracles


def intersection_oracle(a: Lattice, b: Lattice) -> Lattice:
    """Pointwise intersection for lattices containing Z^n.

    Both lattices live in (1/m)Z^n for m = lcm of the denominators, so
    the intersection is generated by Z^n together with its points in
    the fundamental box [0, 1)^n.
    """
    n = a.dim
    m = lcm(a.denominator, b.denominator)
    gens = []
    for coords in itertools.product(range(m), repeat=n):
        v = ValueVector(tuple(F(c, m) for c in coords))
        if a.contains(v) and b.contains(v):
            gens.append(v)
    return Lattice.from_generators(n, gens, include_integers=True)


def subgroup_count_oracle(dim: int, p: int, q: int) -> int:
    """Subgroups of (Z/q)^dim of order dividing q, counted by closure.

    Overlattices Z^dim <= L <= (1/q)Z^dim with [L : Z^dim] | q biject
    with these subgroups via L -> qL mod q.  Every subgroup of order
    dividing q <= p^2 needs at most two generators.
    """
    zero = (0,) * dim
    elems = list(itertools.product(range(q), repeat=dim))

    def closure(gens: list[tuple[int, ...]]) -> frozenset[tuple[int, ...]]:
        seen = {zero}
        frontier = [zero]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = tuple((x + y) % q for x, y in zip(cur, g))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    subgroups = {closure([])}
    for x in elems:
        subgroups.add(closure([x]))
    if q % (p * p) == 0:
        for x in elems:
            for y in elems:
                c = closure([x, y])
                if q % len(c) == 0:
                    subgroups.add(c)
    return sum(1 for s in subgroups if q % len(s) == 0)


# ---------------------------------------------------------- value vectors


def test_lex_compare_reads_last_coordinate_first():
    assert V(0, F(2, 3)) > V(F(2, 3), 0)
    assert lex_compare(V(0, F(2, 3)), V(F(2, 3), 0)) is Ordering.GREATER
    assert lex_compare(V(1, 2), V(1, 2)) is Ordering.EQUAL
    assert lex_compare(V(-1, 0, 0), V(0, 0, 0)) is Ordering.LESS
    # ties on the outermost coordinate fall through to the next one in
    assert V(F(1, 2), 1) < V(F(3, 4), 1)


def test_value_vector_arithmetic():
    a = V(F(1, 2), F(-1, 3))
    b = V(F(1, 2), F(1, 3))
    assert a + b == V(1, 0)
    assert a - b == V(0, F(-2, 3))
    assert -a == V(F(-1, 2), F(1, 3))
    assert a.scale(6) == V(3, -2)
    assert a.scale(F(2, 3)) == V(F(1, 3), F(-2, 9))
    assert V(F(-1, 2), F(5, 3)).mod1() == V(F(1, 2), F(2, 3))
    assert ValueVector.zero(3).is_zero()
    assert ValueVector.unit(3, 1) == V(0, 1, 0)


def test_value_vector_dimension_checks():
    with pytest.raises(DimensionMismatch):
        V(1, 2) + V(1, 2, 3)
    with pytest.raises(DimensionMismatch):
        lex_compare(V(1), V(1, 2))
    with pytest.raises(DimensionMismatch):
        ValueVector.unit(2, 2)


@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-3, max_value=3, max_denominator=6),
            st.fractions(min_value=-3, max_value=3, max_denominator=6),
        ),
        min_size=2,
        max_size=8,
    )
)
def test_lex_order_matches_reversed_tuple_sort(pairs):
    vecs = [V(*p) for p in pairs]
    by_compare = sorted(vecs, key=lambda v: v.coords[::-1])
    assert by_compare == sorted(vecs)


# -------------------------------------------------------- canonical forms


def test_canonicalize_half_half_example():
    lat = lattice_canonicalize(2, [V(F(1, 2), F(1, 2))])
    assert lat.denominator == 2
    assert lat.rows == ((2, 0), (1, 1))
    # same group as the basis {(1/2, 1/2), (0, 1)}
    assert lat == Lattice.from_generators(2, [V(F(1, 2), F(1, 2)), V(0, 1)])


def test_canonicalize_is_idempotent_on_examples():
    lat = lattice_canonicalize(3, [V(F(1, 2), 0, F(1, 4)), V(0, F(1, 2), F(3, 4))])
    again = Lattice.from_generators(3, list(lat.basis), include_integers=False)
    assert lat == again


def test_diagonal_and_integers():
    zn = Lattice.integers(3)
    assert zn.denominator == 1
    assert zn.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    lat = Lattice.diagonal([F(1, 2), F(1, 4), F(1, 2)])
    assert lat.denominator == 4
    assert lat.rows == ((2, 0, 0), (0, 1, 0), (0, 0, 2))
    assert lat.contains_lattice(zn)


def test_hermite_reduction_conditions_hold():
    lat = lattice_canonicalize(
        3, [V(F(5, 6), F(1, 3), F(1, 2)), V(F(1, 6), F(5, 6), F(1, 3))]
    )
    for i in range(3):
        assert lat.rows[i][i] > 0
        for j in range(3):
            if j > i:
                assert lat.rows[i][j] == 0
            elif j < i:
                assert 0 <= lat.rows[i][j] < lat.rows[j][j]


def test_from_generators_rejects_rank_deficiency():
    with pytest.raises(UnsupportedConfiguration):
        Lattice.from_generators(2, [V(F(1, 2), 0)], include_integers=False)


# ----------------------------------------------------- coords and indices


def test_coords_and_membership():
    lat = lattice_canonicalize(2, [V(F(1, 2), F(1, 2))])
    assert lat.contains(V(F(3, 2), F(1, 2)))
    assert lat.coords_of(V(F(3, 2), F(1, 2))) == (1, 1)
    assert not lat.contains(V(F(1, 2), 0))
    with pytest.raises(MembershipError):
        lat.coords_of(V(F(1, 2), 0))
    assert lat.order_of_class(V(F(1, 2), 0)) == 2
    assert lat.order_of_class(V(F(1, 3), F(1, 2))) == 6
    assert lat.order_of_class(V(2, 3)) == 1


def test_index_examples():
    zn = Lattice.integers(3)
    lat = Lattice.diagonal([F(1, 9), F(1, 3), F(1, 3)])
    assert lattice_index(lat, zn) == 81
    assert lat.index_over(lat) == 1
    with pytest.raises(NonContainment):
        zn.index_over(lat)


def test_determinant():
    lat = Lattice.diagonal([F(1, 2), F(1, 4)])
    assert lat.determinant() == F(1, 8)


# --------------------------------------------------- duals, intersections


def test_dual_examples():
    assert Lattice.integers(2).dual() == Lattice.integers(2)
    lat = Lattice.diagonal([F(1, 2), F(1, 4), F(1, 2)])
    assert lat.dual() == Lattice.diagonal([2, 4, 2])
    assert lat.dual().dual() == lat


def test_intersection_diagonal_example():
    a = Lattice.diagonal([F(1, 2), F(1, 4), F(1, 2)])
    b = Lattice.diagonal([F(1, 4), F(1, 2), F(1, 2)])
    assert lattice_intersect(a, b) == Lattice.diagonal([F(1, 2), F(1, 2), F(1, 2)])


def test_intersection_nondiagonal_example():
    a = lattice_canonicalize(2, [V(F(1, 2), F(1, 2))])
    b = lattice_canonicalize(2, [V(F(1, 2), 0)])
    meet = lattice_intersect(a, b)
    assert meet == Lattice.integers(2)
    assert meet == intersection_oracle(a, b)


small_fraction = st.fractions(min_value=-2, max_value=2, max_denominator=4)


@st.composite
def overlattices(draw, dim: int):
    count = draw(st.integers(min_value=0, max_value=2))
    gens = [
        ValueVector(tuple(draw(small_fraction) for _ in range(dim)))
        for _ in range(count)
    ]
    return Lattice.from_generators(dim, gens, include_integers=True)


@settings(max_examples=60, deadline=None)
@given(overlattices(2), overlattices(2))
def test_intersection_matches_pointwise_oracle(a, b):
    assert lattice_intersect(a, b) == intersection_oracle(a, b)


@settings(max_examples=40, deadline=None)
@given(overlattices(3), overlattices(3))
def test_intersection_properties_dim3(a, b):
    meet = lattice_intersect(a, b)
    assert a.contains_lattice(meet)
    assert b.contains_lattice(meet)
    assert meet.contains_lattice(Lattice.integers(3))
    assert lattice_intersect(b, a) == meet
    assert lattice_intersect(a, a) == a


@settings(max_examples=60, deadline=None)
@given(overlattices(3))
def test_dual_is_an_involution(lat):
    assert lat.dual().dual() == lat


@settings(max_examples=60, deadline=None)
@given(overlattices(3), st.lists(st.tuples(small_fraction, small_fraction, small_fraction), max_size=2))
def test_index_is_multiplicative_in_towers(lower, extra):
    upper = Lattice.from_generators(
        3, list(lower.basis) + [V(*t) for t in extra], include_integers=True
    )
    zn = Lattice.integers(3)
    assert upper.index_over(zn) * 1 == upper.index_over(lower) * lower.index_over(zn)


@settings(max_examples=60, deadline=None)
@given(overlattices(3), st.tuples(small_fraction, small_fraction, small_fraction))
def test_order_of_class_is_minimal(lat, tup):
    v = V(*tup)
    k = lat.order_of_class(v)
    assert lat.contains(v.scale(k))
    for j in range(1, k):
        assert not lat.contains(v.scale(j))


# ------------------------------------------------------------ mod-p rank


def test_modp_image_rank_examples():
    lat = Lattice.diagonal([F(1, 2), 1, 1])
    basis = [ValueVector.unit(3, i) for i in range(3)]
    # e_0 = 2 * (1/2 e_0) dies mod 2, the other two survive
    assert modp_image_rank(basis, lat, 2) == 2
    assert modp_image_rank(basis, Lattice.integers(3), 2) == 3
    assert modp_image_rank(basis, Lattice.diagonal([F(1, 2), F(1, 2), F(1, 2)]), 2) == 0
    assert modp_image_rank([], lat, 2) == 0
    half = lattice_canonicalize(2, [V(F(1, 2), F(1, 2))])
    assert modp_image_rank([V(1, 0), V(0, 1)], half, 2) == 1


def test_modp_image_rank_requires_membership():
    with pytest.raises(MembershipError):
        modp_image_rank([V(F(1, 2), 0)], Lattice.integers(2), 2)


# ------------------------------------------------------------ enumeration


def test_enumerate_small_counts_match_oracle():
    for dim, p, q, frozen in [
        (2, 2, 2, 4),
        (1, 3, 3, 2),
        (2, 3, 3, 5),
        (3, 2, 2, 8),
        (3, 3, 3, 14),
        (4, 2, 4, 171),
    ]:
        got = enumerate_overlattices(dim, p, q)
        assert len(got) == frozen
        assert len(got) == subgroup_count_oracle(dim, p, q)


def test_enumerate_output_is_canonical_and_sorted():
    zn = Lattice.integers(3)
    box = Lattice.diagonal([F(1, 2)] * 3)
    out = enumerate_overlattices(3, 2, 2)
    assert len(set(out)) == len(out)
    indices = []
    for lat in out:
        assert lat.contains_lattice(zn)
        assert box.contains_lattice(lat)
        indices.append(lat.index_over(zn))
        assert 2 % indices[-1] == 0
    assert indices == sorted(indices)
    assert out[0] == zn


def test_enumerate_trivial_and_errors():
    assert enumerate_overlattices(3, 2, 1) == [Lattice.integers(3)]
    with pytest.raises(UnsupportedConfiguration):
        enumerate_overlattices(2, 2, 6)
    with pytest.raises(EnumerationBound):
        enumerate_overlattices(2, 2, 2, bound=3)
