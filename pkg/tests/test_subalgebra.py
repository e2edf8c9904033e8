import pytest
from hypothesis import given, settings, strategies as st

from ribbonhopf import named
from ribbonhopf.hopf import VERTEX, GraphPoly
from ribbonhopf.subalgebra import (
    CoeffPolynomial,
    c_values,
    cograph_loop_spectrum,
    cograph_spectrum_scan,
    evaluate,
    hochschild_check,
    p_poly,
    q_e,
    q_v,
    symbol,
    verify_cn_coproduct,
    verify_monomial_coproduct,
)


def v(j):
    return symbol("v", j)


def e(j):
    return symbol("e", j)


# ---------------------------------------------------------------- polynomials

def test_q_examples():
    assert q_v(2, 1) == 2 * v(0) * v(1)
    assert q_e(2, 1) == 2 * e(1)
    for k in range(1, 5):
        assert q_e(k, 0) == CoeffPolynomial.one()


def test_q_e_matches_geometric_expansion():
    # 1/(1-x)^3 with x = c1 a + c2 a^2: [a^2] = 3 c2 + 6 c1^2
    assert q_e(3, 2) == 3 * e(2) + 6 * e(1) ** 2


def test_p_v_4_1():
    assert p_poly("v", 4, 1) == 4 * v(0) ** 3 * v(1) + 6 * v(0) ** 4 * e(1)


def test_p_v_4_2_cubic_vertex_term():
    expected = (3 * v(0) ** 2 * v(2) + 3 * v(0) * v(1) ** 2 + 12 * v(0) ** 2 * v(1) * e(1)
                + v(0) ** 3 * (4 * e(2) + 10 * e(1) ** 2))
    assert p_poly("v", 4, 2) == expected


def test_p_v_4_3():
    expected = (2 * v(0) * v(3) + 2 * v(1) * v(2) + (2 * v(0) * v(2) + v(1) ** 2) * 2 * e(1)
                + 2 * v(0) * v(1) * (2 * e(2) + 3 * e(1) ** 2)
                + v(0) ** 2 * (2 * e(3) + 6 * e(1) * e(2) + 4 * e(1) ** 3))
    assert p_poly("v", 4, 3) == expected


def test_p_boundary_cases():
    for n in range(1, 5):
        assert p_poly("e", n, n) == e(n)
    assert p_poly("e", 2, 1) == v(1) + v(0) * e(1)


@pytest.mark.parametrize("kind,n", [("e", 3), ("e", 4), ("v", 3), ("v", 4)])
def test_p_grading(kind, n):
    for k in range(n + 1):
        assert p_poly(kind, n, k).grades() <= {k}


def test_repr():
    assert repr(2 * v(0) * v(1)) == "2 c^v_0 c^v_1"
    assert repr(CoeffPolynomial()) == "0"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(1, 2))
def test_evaluation_is_a_homomorphism(i, j, k):
    p = q_v(2, i) + q_e(k, j)
    q = v(j) * e(k)
    assert evaluate(p * q) == evaluate(p) * evaluate(q)
    assert evaluate(p + q) == evaluate(p) + evaluate(q)


def test_c_values():
    assert c_values("v", 0) == GraphPoly.gen(VERTEX)
    assert c_values("e", 0) == GraphPoly.one()
    assert len(c_values("v", 2)) == 14


# ---------------------------------------------------------------- coproduct laws

@pytest.mark.parametrize("kind,n", [("e", 1), ("e", 2), ("e", 3), ("e", 4), ("v", 1), ("v", 2), ("v", 3)])
def test_cn_coproduct(kind, n):
    assert verify_cn_coproduct(kind, n)


def test_cn_coproduct_report():
    rep = verify_cn_coproduct("e", 2, report=True)
    assert rep["verdict"] == "PASS" and rep["witness"] is None


@pytest.mark.parametrize("n1,n2,N", [(0, -1, 2), (0, -1, 3), (1, 0, 3), (1, 2, 2), (1, 2, 3), (2, 3, 2)])
def test_monomial_coproduct(n1, n2, N):
    assert verify_monomial_coproduct(n1, n2, N)


# ---------------------------------------------------------------- Hochschild

@pytest.mark.parametrize("kind", ["e", "v"])
@pytest.mark.parametrize("N", [2, 3])
def test_hochschild_summed(kind, N):
    assert hochschild_check(kind, N)["verdict"] == "PASS"


def test_hochschild_literal_weight_fails_for_vertices():
    rep = hochschild_check("v", 3, per_place=False)
    assert rep["verdict"] == "FAIL" and rep["witness"]["lhs_minus_rhs"] == "4"
    assert hochschild_check("e", 3, per_place=False)["verdict"] == "PASS"


def test_hochschild_per_loop_is_a_report():
    rep = hochschild_check("v", 3, per_loop=True)
    assert rep["verdict"] == "REPORT"
    assert [r["loops"] for r in rep["rows"]] == [1]


def test_cograph_spectrum():
    assert cograph_loop_spectrum(named.sunrise()) == {1}
    assert cograph_loop_spectrum(named.tadpole_up()) == {1}
    assert cograph_loop_spectrum(named.fish_chain_straight()) == {1}


def test_cograph_scan_shape():
    rep = cograph_spectrum_scan(2)
    assert rep["verdict"] == "REPORT"
    assert [(r["n_ext"], r["loops"], r["graphs"]) for r in rep["rows"]] == [(2, 1, 2), (2, 2, 5), (4, 1, 2), (4, 2, 14)]


def test_subtraction():
    p = q_e(3, 2)
    assert (p - p) == CoeffPolynomial()
    assert p - 3 * e(2) == 6 * e(1) ** 2
