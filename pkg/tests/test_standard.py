import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    brute_partitions,
    standard_incidence_closed_form,
    star_inverse_rows_closed_form,
    xi_closed_form,
)

from gramclass.errors import InvalidShape
from gramclass.exactmat import det, kernel_basis, solve_exact, symplectic_unit
from gramclass.quiver import gram, incidence, inverse_quiver, validate, xi_and_cycle_type
from gramclass.standard import (
    as_partition,
    count_classes,
    cut_points,
    kronecker,
    kronecker_kernel,
    partitions,
    partitions_count,
    partitions_part1,
    standard_for,
    standard_kernel,
    standard_quiver,
)
from gramclass.unitform import coxeter, from_quiver


def shapes(max_m: int = 6, max_d: int = 2):
    for m in range(2, max_m + 1):
        for pi in partitions(m):
            for d in range(max_d + 1):
                yield pi, d


def test_as_partition():
    assert as_partition([3, 1, 1]) == (3, 1, 1)
    for bad in ([], [1, 2], [2, 0], [-1]):
        with pytest.raises(InvalidShape):
            as_partition(bad)


def test_cut_points():
    assert cut_points((3, 2, 2, 1)) == [8, 5, 3, 1, 0]


def test_standard_quiver_rejects_bad_input():
    with pytest.raises(InvalidShape):
        standard_quiver((1,), 0)
    with pytest.raises(InvalidShape):
        standard_quiver((2,), -1)
    with pytest.raises(InvalidShape):
        standard_quiver((2,), 0, "B")


def test_example_standard_quivers():
    assert standard_quiver((3,), 1).arrows == ((1, 2), (2, 3), (3, 2), (2, 3))
    assert standard_quiver((1, 1, 1), 0).arrows == ((1, 2), (2, 3), (3, 2), (2, 1))


def test_standard_quivers_match_closed_forms():
    for pi, d in shapes():
        Q = standard_quiver(pi, d)
        m, ell = sum(pi), len(pi)
        validate(Q)
        assert Q.n == m + ell + 2 * (d - 1)
        assert incidence(Q).tolist() == standard_incidence_closed_form(pi, d)
        assert incidence(inverse_quiver(Q)).tolist() == star_inverse_rows_closed_form(pi, d)
        assert inverse_quiver(Q) == standard_quiver(pi, d, "star")
        xi, ct = xi_and_cycle_type(Q)
        assert xi.images == xi_closed_form(pi)
        assert ct == pi
        assert standard_for(Q) == (pi, d)


def test_standard_forms_are_distinct():
    by_shape = {}
    for pi, d in shapes(max_m=7, max_d=3):
        Q = standard_quiver(pi, d)
        key = (Q.m, Q.n)
        by_shape.setdefault(key, []).append(from_quiver(Q))
    for forms in by_shape.values():
        assert len(set(forms)) == len(forms)
        polys = [coxeter(q)[1] for q in forms]
        assert len(set(polys)) == len(polys)


def test_kronecker_quivers():
    for k in range(1, 8):
        assert inverse_quiver(kronecker(k)) == kronecker(k, inverse=True)
        h = k // 2
        if k % 2:
            assert kronecker(k) == standard_quiver((2,), h, "star")
            assert kronecker(k, inverse=True) == standard_quiver((2,), h)
        else:
            assert kronecker(k) == standard_quiver((1, 1), h - 1, "star")
            assert kronecker(k, inverse=True) == standard_quiver((1, 1), h - 1)


@pytest.mark.parametrize("d", range(1, 5))
def test_kronecker_kernel(d):
    Q = kronecker(2 * d + 1, inverse=True)
    C = kronecker_kernel(d)
    assert (incidence(Q) @ C).is_zero()
    assert C.T @ gram(Q)[1] @ C == symplectic_unit(d)
    # the vectors form a basis of the kernel lattice
    X = solve_exact(kernel_basis(incidence(Q)), C)
    assert abs(det(X)) == 1


def test_standard_kernel_block_form():
    for pi, d in shapes():
        Q = standard_quiver(pi, d)
        K, split = standard_kernel(pi, d)
        assert split == 2 * d
        assert (incidence(Q) @ K).is_zero()
        assert K.T @ gram(Q)[1] @ K == symplectic_unit(d, len(pi) - 1)
        X = solve_exact(kernel_basis(incidence(Q)), K)
        assert abs(det(X)) == 1


def test_partitions_against_brute_force():
    for m in range(1, 11):
        ps = list(partitions(m))
        assert set(ps) == brute_partitions(m)
        assert ps == sorted(ps, reverse=True)
        assert len(ps) == len(set(ps))


def test_partitions_count_by_length():
    for m in range(0, 13):
        for ell in range(0, m + 1):
            assert partitions_count(ell, m) == sum(1 for p in partitions(m) if len(p) == ell)


@given(st.integers(1, 14), st.data())
def test_class_count_matches_enumeration(n, data):
    c = data.draw(st.integers(0, n - 1))
    m = n - c + 1
    expected = [
        p for p in brute_partitions(m) if len(p) - 1 <= c and (c - len(p) + 1) % 2 == 0
    ]
    assert count_classes(n, c) == len(expected) == len(partitions_part1(m, c))


def test_class_count_closed_forms():
    for n in range(1, 25):
        assert count_classes(n, 0) == 1
    for n in range(3, 25):
        assert count_classes(n, 1) == n // 2
        assert count_classes(n, 2) == ((n - 1) ** 2 + 15) // 12


def test_class_count_rejects_bad_arguments():
    for n, c in ((0, 0), (3, 3), (3, -1)):
        with pytest.raises(InvalidShape):
            count_classes(n, c)


def test_each_admissible_partition_has_a_standard_quiver():
    for m, c in itertools.product(range(2, 7), range(0, 4)):
        for pi in partitions_part1(m, c):
            d = (c - len(pi) + 1) // 2
            Q = standard_quiver(pi, d)
            assert Q.n - Q.m + 1 == c
            assert xi_and_cycle_type(Q)[1] == pi


def test_tree_standard_quiver_has_empty_kernel():
    K, split = standard_kernel((2,), 0)
    assert K.shape == (1, 0)
    assert split == 0
