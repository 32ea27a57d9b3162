import math

import pytest
from hypothesis import given

from oracles import cofactor_char_poly
from strategies import quivers

from gramclass.errors import InvariantError, NotConnected, NotNonNegative, NotTypeA
from gramclass.exactmat import IntMatrix, PolyZ, rank
from gramclass.quiver import Quiver, path_quiver, xi_and_cycle_type
from gramclass.unitform import (
    UnitForm,
    classify,
    coxeter,
    coxeter_numbers,
    coxeter_polynomial_of_type,
    factored_string,
    from_quiver,
    is_connected,
    radical_profile,
    realize_as_quiver,
)

q1 = UnitForm.from_rows([[1, -1, -1, 2], [0, 1, -1, -1], [0, 0, 1, -1], [0, 0, 0, 1]])
q0 = UnitForm.from_rows([[1, -1, 2, -1], [0, 1, -1, -1], [0, 0, 1, -1], [0, 0, 0, 1]])


def test_unit_form_requires_unitriangular_matrix():
    with pytest.raises(InvariantError):
        UnitForm.from_rows([[1, 0], [1, 1]])
    with pytest.raises(InvariantError):
        UnitForm.from_rows([[2, 0], [0, 1]])


def test_form_values():
    # q1(x) = x1(x1 - x2 - x3 + 2x4) + x2(x2 - x3 - x4) + x3(x3 - x4) + x4^2
    for x in [(1, 0, 0, 0), (1, 1, 1, 0), (1, 2, -1, 3), (0, 0, 0, 0)]:
        x1, x2, x3, x4 = x
        expected = x1 * (x1 - x2 - x3 + 2 * x4) + x2 * (x2 - x3 - x4) + x3 * (x3 - x4) + x4 * x4
        assert q1(x) == expected


def test_classify_examples():
    c1 = classify(q1)
    assert c1["corank"] == 2
    assert c1["cycle_type"] == [3]
    assert c1["degeneracy"] == 1
    assert c1["reduced_corank"] == 0
    assert c1["dynkin_type"] == "A2"
    assert c1["coxeter_polynomial_factored"] == "(v-1)*(v^3-1)"
    assert (c1["coxeter_number"], c1["reduced_coxeter_number"]) == (3, 3)
    c0 = classify(q0)
    assert c0["cycle_type"] == [1, 1, 1]
    assert c0["degeneracy"] == 0
    assert c0["reduced_corank"] == 2
    assert c0["coxeter_polynomial_factored"] == "(v-1)^4"
    assert c0["coxeter_number"] == math.inf
    assert c0["reduced_coxeter_number"] == 1
    # equal Coxeter polynomials would contradict the different cycle types
    assert c1["coxeter_polynomial"] != c0["coxeter_polynomial"]


def test_positive_forms_of_type_a():
    for m in range(2, 8):
        c = classify(from_quiver(path_quiver(m)))
        assert c["corank"] == 0
        assert c["cycle_type"] == [m]
        # (v^m - 1) / (v - 1)
        assert c["coxeter_polynomial"] == [1] * m
        assert c["coxeter_polynomial_factored"] == f"(v^{m}-1)/(v-1)"


def test_realization_rejects_other_forms():
    d4 = UnitForm.from_rows([[1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1], [0, 0, 0, 1]])
    with pytest.raises(NotTypeA):
        realize_as_quiver(d4)
    with pytest.raises(NotNonNegative):
        realize_as_quiver(UnitForm.from_rows([[1, -3], [0, 1]]))
    with pytest.raises(NotConnected):
        realize_as_quiver(UnitForm.from_rows([[1, 0], [0, 1]]))
    assert not is_connected(UnitForm.from_rows([[1, 0], [0, 1]]))


def test_coxeter_numbers_and_strings():
    assert coxeter_numbers((3,), 1) == (3, 3)
    assert coxeter_numbers((2, 1), 1) == (math.inf, 2)
    assert coxeter_numbers((3, 2), 3) == (math.inf, 6)
    assert factored_string((2, 1, 1), 3) == "(v-1)^4*(v^2-1)"
    assert factored_string((2,), 1) == "(v^2-1)"


@given(quivers())
def test_realization_round_trip(Q):
    q = from_quiver(Q)
    R = realize_as_quiver(q)
    assert from_quiver(R) == q
    assert R.m == Q.m
    # the cycle type is a property of the form, not of the chosen quiver
    assert xi_and_cycle_type(R)[1] == xi_and_cycle_type(Q)[1]


@given(quivers(max_m=6, max_n=8))
def test_coxeter_polynomial_factorization(Q):
    q = from_quiver(Q)
    phi, poly = coxeter(q)
    assert list(poly.coeffs) == cofactor_char_poly(phi.tolist())
    _, pi = xi_and_cycle_type(Q)
    assert poly == coxeter_polynomial_of_type(pi, Q.n - Q.m + 1)


@given(quivers())
def test_coxeter_matrix_definition(Q):
    q = from_quiver(Q)
    phi, _ = coxeter(q)
    # Phi Ghat = -Ghat^T
    assert phi @ q.upper == -q.upper.T


@given(quivers())
def test_radical_profile(Q):
    q = from_quiver(Q)
    prof = radical_profile(q)
    c = Q.n - Q.m + 1
    _, pi = xi_and_cycle_type(Q)
    assert prof.corank == c
    assert (q.gram @ prof.K).is_zero()
    assert prof.W == prof.K.T @ q.upper @ prof.K
    assert prof.W.T == -prof.W
    assert rank(prof.W) == 2 * prof.degeneracy
    assert prof.reduced_corank == len(pi) - 1
    assert c == 2 * prof.degeneracy + len(pi) - 1
    # reduced radical vectors are orthogonal to the whole radical
    assert (prof.K.T @ q.upper @ prof.K_re).is_zero()


def test_multiplicity_of_one_as_coxeter_root():
    q = from_quiver(Quiver(3, ((1, 2), (2, 3), (3, 1), (1, 2))))
    c = classify(q)
    poly = PolyZ(c["coxeter_polynomial"])
    assert poly.root_multiplicity(1) == c["corank"] - 1 + len(c["cycle_type"])


@given(quivers(max_m=6, max_n=9))
def test_multiplicities_of_one(Q):
    q = from_quiver(Q)
    phi, poly = coxeter(q)
    c = Q.n - Q.m + 1
    ell = len(xi_and_cycle_type(Q)[1])
    # geometric multiplicity c, algebraic multiplicity c + ell - 1
    assert Q.n - rank(phi.T - IntMatrix.identity(Q.n)) == c
    assert poly.root_multiplicity(1) == c + ell - 1
