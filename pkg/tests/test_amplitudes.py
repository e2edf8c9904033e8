import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from _graphs import relabel
from _oracles import hyp2f1_series
from ribbonhopf import named
from ribbonhopf.amplitudes import (
    Spectrum,
    alpha_lambda,
    amplitude,
    analytic_report,
    anomalous_dimension,
    correlation_series,
    dse2_check,
    hyp_R,
    lin_eq_residual,
    log_slope,
    spectral_dimension,
    ward_w4p_check,
)
from ribbonhopf.enumeration import Filter, enumerate_graphs
from ribbonhopf.ribbon import empty_graph, topology

S1 = Spectrum((1,), (1,))
S2 = Spectrum((1, Fraction(5, 2)), (2, 3))


def pairs_sum(spec, f):
    return sum(r * f(E) for E, r in zip(spec.eigenvalues, spec.multiplicities))


# ---------------------------------------------------------------- spectra

def test_spectrum_basics():
    assert S2.N == 5 and S2.d == 2
    assert Spectrum.from_json('{"eigenvalues": [1, 2], "multiplicities": [1, 1]}').N == 2
    with pytest.raises(ValueError):
        Spectrum((1, 2), (1,))


# ---------------------------------------------------------------- Feynman rules

def test_bare_propagator():
    amp = amplitude(empty_graph(), [2, 3], S1)
    assert amp.coefficient == Fraction(1, 5) and amp.vertices == 0


@pytest.mark.parametrize("T", [named.tadpole_up(), named.tadpole_down()])
def test_tadpole_on_trivial_spectrum(T):
    amp = amplitude(T, [1, 1], S1)
    # two legs at 1/2 and one internal edge at 1/2
    assert (amp.coefficient, amp.vertices, amp.internal_faces) == (Fraction(1, 8), 1, 1)


def test_order_one_two_point_function():
    a, b = Fraction(1), Fraction(3)
    got = correlation_series(2, 1, S2, [a, b])
    loop = pairs_sum(S2, lambda E: 1 / (a + E) + 1 / (b + E))
    assert got == [1 / (a + b), loop / (a + b) ** 2 / S2.N]


def test_rainbow_is_display_times_propagator():
    a, b = Fraction(1), Fraction(3)
    display = sum(rn * rm / ((a + En) * (b + Em))
                  for En, rn in zip(S2.eigenvalues, S2.multiplicities)
                  for Em, rm in zip(S2.eigenvalues, S2.multiplicities)) / (a + b) ** 2 / S2.N ** 2
    amp = amplitude(named.rainbow(), [a, b], S2)
    assert amp.vertices == 2 and amp.internal_faces == 2
    assert amp.value(S2.N) == display / (a + b)


def test_amplitude_rejects_bad_input():
    with pytest.raises(ValueError):
        amplitude(named.tadpole_up(), [1], S1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["sunrise", "rainbow", "fish_horizontal", "fish_chain_straight"]))
def test_amplitude_ignores_half_edge_labels(seed, name):
    G = getattr(named, name)()
    labels = [1, 2] if len(G.external) == 2 else [1, 2, 3, 5]
    assert amplitude(relabel(G, seed), labels, S2) == amplitude(G, labels, S2)


def test_amplitudes_are_positive():
    for G in enumerate_graphs(4, 1, Filter.CONNECTED):
        if topology(G).genus == 0:
            assert amplitude(G, [1, 2, 3, 5], S2).coefficient > 0


# ---------------------------------------------------------------- Ward and DSE

spectra = st.tuples(
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=3),
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=3),
    st.integers(1, 3), st.integers(1, 3),
).filter(lambda t: t[0] != t[1]).map(lambda t: Spectrum((t[0], t[1]), (t[2], t[3])))


@settings(max_examples=6, deadline=None)
@given(spectra)
def test_ward_identity_through_order_two(spec):
    assert ward_w4p_check(2, spec, [1, 2, 3, 5])


@settings(max_examples=6, deadline=None)
@given(spectra)
def test_two_point_dse_through_order_two(spec):
    assert dse2_check(2, spec, [1, 2])


def test_ward_and_dse_order_three():
    assert ward_w4p_check(3, S2, [1, 2, 3, 5])
    assert dse2_check(3, S2, [1, 3])


def test_ward_report_and_guard():
    rep = ward_w4p_check(1, S2, [1, 2, 3, 5], report=True)
    assert rep["verdict"] == "PASS" and rep["lhs"] == rep["rhs"]
    with pytest.raises(ValueError):
        ward_w4p_check(1, S2, [1, 2, 1, 5])


def test_four_point_vertex_and_reflection():
    a, b, c, d = (Fraction(x) for x in (1, 2, 3, 5))
    got = correlation_series(4, 2, S2, [a, b, c, d])
    assert got[1] == 1 / ((a + b) * (b + c) * (c + d) * (d + a))
    # reading the boundary backwards is a symmetry of the planar function
    assert got == correlation_series(4, 2, S2, [a, d, c, b])


# ---------------------------------------------------------------- analytic oracle

def test_closed_forms_at_zero_coupling():
    assert anomalous_dimension(0) == 0
    assert spectral_dimension(0) == 4
    assert alpha_lambda(0) == 0


def test_closed_forms():
    assert anomalous_dimension(1 / math.pi) == pytest.approx(-0.25)
    assert spectral_dimension(1 / math.pi) == pytest.approx(3)
    with pytest.raises(ValueError):
        alpha_lambda(0.4)


def test_free_solution():
    for z in (0.0, 0.5, 3.0, 1e4):
        assert hyp_R(z, 0.0) == pytest.approx(z)


@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 4.0, 100.0])
@pytest.mark.parametrize("lam", [0.05, 0.1, -0.1])
def test_hyp_R_against_mpmath(z, lam):
    a = alpha_lambda(lam)
    ref = z * float(mpmath.hyp2f1(a, 1 - a, 2, -z))
    assert hyp_R(z, lam) == pytest.approx(ref, rel=1e-12)


def test_hyp_R_at_mass_against_partial_sum():
    a = alpha_lambda(0.1)
    # alternating series on the unit circle; 200 terms leave an error well below 1e-5
    assert hyp_R(1.0, 0.1) == pytest.approx(float(hyp2f1_series(a, 1 - a, 2, -1, terms=200)), abs=1e-5)


def test_hyp_R_small_z():
    eps = 1e-6
    assert hyp_R(eps, 0.1) / eps == pytest.approx(1, abs=1e-6)


def test_log_slope():
    assert log_slope(0.1) == pytest.approx(1 - alpha_lambda(0.1), abs=1e-3)


def test_linear_equation_residual():
    rs = [lin_eq_residual(1.0, 0.05, 1.0, c) for c in (1e2, 1e3, 1e4)]
    assert rs[-1] < 1e-3
    assert rs[0] > rs[1] > rs[2]
    assert lin_eq_residual(2.0, 0.0) == 0


def test_analytic_report():
    rep = analytic_report(0.1)
    assert rep["slope_error"] < 1e-3
    assert rep["gamma_vs_D_gap"] != 0
    assert analytic_report(0.0)["gamma_vs_D_gap"] == 0
