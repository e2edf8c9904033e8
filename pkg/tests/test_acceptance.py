"""Acceptance criteria 1-13.

Every test records one PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them after the run.  Running this file directly prints the same lines.
Criteria 9 and 11 compare against printed expressions that contain a slip,
so they fail by design; the analysis is in the decisions log.
"""

import time
from fractions import Fraction

import pytest

from _algebra import generator_keys, hopf_axioms, multiplicative
from _oracles import counting_oracle
from ribbonhopf import enumeration, named
from ribbonhopf.amplitudes import (
    Spectrum,
    alpha_lambda,
    amplitude,
    anomalous_dimension,
    dse2_check,
    lin_eq_residual,
    log_slope,
    spectral_dimension,
    ward_w4p_check,
)
from ribbonhopf.dse import dse_solve, graft, maxf, primitives
from ribbonhopf.enumeration import Filter, enumerate_graphs
from ribbonhopf.hopf import VERTEX, GraphPoly, TensorPoly, reduced_coproduct, unroot
from ribbonhopf.ribbon import completion, decompletion, dual, is_fully_simple, topology
from ribbonhopf.subalgebra import (
    c_values,
    cograph_spectrum_scan,
    hochschild_check,
    p_poly,
    symbol,
    verify_cn_coproduct,
)

RESULTS = {}


def record(n, ok, detail=""):
    RESULTS[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def timed(f):
    enumeration._memo.clear()
    t = time.perf_counter()
    out = f()
    return out, time.perf_counter() - t


def counts(n_ext, filt, orders):
    out = []
    for m in orders:
        loops = m if n_ext == 2 else m - 1
        out.append(len(enumerate_graphs(n_ext, loops, filt)) if loops >= 0 else 0)
    return out


V = GraphPoly.gen(VERTEX)


def test_criterion_01_one_pi_counts():
    (c2, c4), dt = timed(lambda: (counts(2, Filter.ONE_PI, [1, 2, 3]), counts(4, Filter.ONE_PI, [1, 2, 3])))
    ok = c2 == [2, 5, 26] and c4 == [1, 2, 14] and dt < 60
    record(1, ok, f"1PI 2-pt {c2}, 4-pt {c4}, {dt:.1f}s")


def test_criterion_02_connected_counts():
    (c2, c4), dt = timed(lambda: (counts(2, Filter.CONNECTED, [0, 1, 2, 3]),
                                  counts(4, Filter.CONNECTED, [1, 2, 3, 4])))
    ok = c2 == [1, 2, 9, 54] and c4 == [1, 10, 90, 810] and dt < 300
    record(2, ok, f"connected 2-pt {c2}, 4-pt {c4}, {dt:.1f}s")


def test_criterion_03_generating_function_oracle():
    oracle = counting_oracle(4)
    spec = {"G2": (2, Filter.CONNECTED), "G4": (4, Filter.CONNECTED),
            "PI2": (2, Filter.ONE_PI), "PI4": (4, Filter.ONE_PI)}
    bad = []
    for kind, (n_ext, filt) in spec.items():
        got = counts(n_ext, filt, range(5))
        if n_ext == 2 and filt is Filter.ONE_PI:
            got[0] = 0  # the bare propagator is not 1PI at order 0
        if [Fraction(x) for x in got] != oracle[kind]:
            bad.append((kind, got, [int(x) for x in oracle[kind]]))
    rep = enumeration.verify_counts(4)
    record(3, not bad and not rep["mismatches"], f"4 kinds through order 4, mismatches {bad or 'none'}")


def test_criterion_04_reduced_coproduct_of_ce2():
    lhs = reduced_coproduct(c_values("e", 2), rooted_right=True)
    rhs = TensorPoly.simple(unroot(c_values("v", 1)) + V * unroot(c_values("e", 1)), c_values("e", 1))
    record(4, lhs == rhs, "reduced coproduct of c^e_2 = (c^v_1 + c^v_0 c^e_1) (x) c^e_1")


def test_criterion_05_grafting_example():
    F, Fv = named.fish_horizontal(), named.fish_vertical()
    fish = GraphPoly.from_graph(F)
    chains = GraphPoly.from_graphs([named.fish_chain_straight(), named.fish_chain_bent_right(),
                                    named.fish_chain_bent_left()])
    first = graft(F, V * fish) == chains * Fraction(1, 4)
    second = graft(Fv, V * fish)
    vertical = len(second) == 3 and set(second.terms.values()) == {Fraction(1, 4)}
    m = maxf(named.fish_chain_straight())
    cv1 = c_values("v", 1)
    combined = sum((graft(G, V * cv1) for G in primitives(4, 1)), GraphPoly())
    six = GraphPoly({mono: 1 for mono in combined})
    # same six graphs, each once in c^v_2
    comb_ok = len(six) == 6 and combined == six * Fraction(1, 2) and all(c_values("v", 2).coeff(x) == 1 for x in six)
    ok = first and vertical and m == 2 and comb_ok
    print(f"  info: c^v_2 has {len(c_values('v', 2))} graphs; the rest come from the c^e_1 part of the DSE argument")
    record(5, ok, f"B+ fish = 1/4 chains {first}, maxf(straight) = {m}, combined = 1/2 (6 graphs) {comb_ok}")


def test_criterion_06_maxf():
    a, b = maxf(named.sunrise()), maxf(named.double_tadpole_stacked())
    record(6, a == 2 and b == 1, f"maxf(sunrise) = {a}, maxf(stacked double tadpole) = {b}")


def test_criterion_07_dse_reproduces_enumeration():
    rep, dt = timed(lambda: dse_solve(4, 3))
    rows = {(r["kind"], r["loops"]): r for r in rep.rows}
    need = [("e", n) for n in range(1, 5)] + [("v", n) for n in range(1, 4)]
    ok = (all(rows[k]["matches_enumeration"] and rows[k]["unit_coefficients"] for k in need)
          and rep.passed and dt < 600)
    lit = dse_solve(2, per_place=False)
    print(f"  info: literal refinement sum (no per-place weight) at order 2: {'PASS' if lit.passed else 'FAIL'}")
    record(7, ok, f"2-pt <= 4, 4-pt <= 3 unit coefficients, {dt:.1f}s")


def test_criterion_08_hopf_axioms():
    keys = generator_keys(3)
    failures = [k for k in keys if not all(hopf_axioms(k).values())]
    mult = [(a, b) for i, a in enumerate(keys) for b in keys[i:] if not multiplicative(a, b)]
    record(8, not failures and not mult,
           f"{len(keys)} generators, {len(keys) * (len(keys) + 1) // 2} products, failures {len(failures) + len(mult)}")


def _displayed_pv4():
    v, e = (lambda j: symbol("v", j)), (lambda j: symbol("e", j))
    return {
        1: 4 * v(0) ** 3 * v(1) + 6 * v(0) ** 4 * e(1),
        2: (3 * v(0) ** 2 * v(2) + 3 * v(0) * v(1) ** 2 + 3 * v(0) ** 2 * v(1) * 4 * e(1)
            + v(0) ** 2 * (4 * e(2) + 10 * e(1) ** 2)),
        3: (2 * v(0) * v(3) + 2 * v(1) * v(2) + (2 * v(0) * v(2) + v(1) ** 2) * 2 * e(1)
            + 2 * v(0) * v(1) * (2 * e(2) + 3 * e(1) ** 2)
            + v(0) ** 2 * (2 * e(3) + 6 * e(1) * e(2) + 4 * e(1) ** 3)),
    }


def test_criterion_09_coefficient_polynomials():
    shown = _displayed_pv4()
    match = {k: p_poly("v", 4, k) == shown[k] for k in (1, 2, 3)}
    cn = {f"{kind}{n}": verify_cn_coproduct(kind, n) for kind, ns in (("e", range(1, 5)), ("v", range(1, 4)))
          for n in ns}
    ok = all(match.values()) and all(cn.values())
    for k in (1, 2, 3):
        if not match[k]:
            print(f"  info: P^v_4,{k} minus display = {p_poly('v', 4, k) - shown[k]}")
    record(9, ok, f"P^v_4,k match {match}, cn coproduct {'all pass' if all(cn.values()) else cn}")


def test_criterion_10_hochschild():
    summed = {k: hochschild_check(k, 3)["verdict"] for k in ("e", "v")}
    per_loop = {k: hochschild_check(k, 3, per_loop=True) for k in ("e", "v")}
    scan = cograph_spectrum_scan(4)
    for k, rep in per_loop.items():
        rows = ", ".join(f"loops {r['loops']} ({r['primitives']} primitives) holds={r['holds']}" for r in rep["rows"])
        print(f"  report: per-loop {k}: {rows}")
    for r in scan["rows"]:
        print(f"  report: spectrum n={r['n_ext']} loops={r['loops']} graphs={r['graphs']} "
              f"spectrum sizes={r['spectrum_sizes']}")
    record(10, all(v == "PASS" for v in summed.values()), f"summed Hochschild at N=3 {summed}")


SPECTRA = [Spectrum((1, Fraction(5, 2)), (2, 3)), Spectrum((Fraction(1, 2), 3), (1, 4))]


def test_criterion_11_feynman_rules():
    rainbow_ok = True
    for spec in SPECTRA:
        a, b = Fraction(1), Fraction(3)
        pairs = list(zip(spec.eigenvalues, spec.multiplicities))
        display = sum(rn * rm / ((a + En) * (b + Em)) for En, rn in pairs for Em, rm in pairs)
        display /= (a + b) ** 2 * spec.N ** 2
        rainbow_ok &= amplitude(named.rainbow(), [a, b], spec).value(spec.N) == display
    ward = all(ward_w4p_check(2, s, [1, 2, 3, 5]) for s in SPECTRA)
    ds2 = all(dse2_check(2, s, [1, 2]) and dse2_check(2, s, [2, 7]) for s in SPECTRA)
    record(11, rainbow_ok and ward and ds2, f"rainbow = display {rainbow_ok}, W4P {ward}, DS2 {ds2}")


def test_criterion_12_analytic():
    exact = anomalous_dimension(0) == 0 and spectral_dimension(0) == 4
    slope = log_slope(0.1, 1.0, 1e3, 1e5)
    target = 1 - alpha_lambda(0.1)
    res = [lin_eq_residual(1.0, 0.05, 1.0, c) for c in (1e3, 1e4, 1e5)]
    ok = exact and abs(slope - target) < 1e-3 and res[1] < 1e-3 and res[0] > res[1] > res[2]
    record(12, ok, f"slope {slope:.6f} vs {target:.6f}, residuals {[f'{r:.2e}' for r in res]}")


def _lemma(G):
    t = topology(G)
    k = t.internal_faces
    I, V_ = len(G.internal_pairs), len(G.vertices)
    return (I, V_) == ((2 * k - 1, k) if len(G.external) == 2 else (2 * k, k + 1))


def _appendix_checks(G):
    M = completion(G)
    Vb = len(M.sigma.cycles())
    Eb = len(M.alpha.cycles())
    Fb = len(M.face_cycles())
    return {
        "dual": dual(dual(M)) == M,
        "roundtrip": decompletion(M) == G,
        "euler": Vb - Eb + Fb == 2 - 2 * topology(G).genus,
        "fully_simple": is_fully_simple(dual(M)),
        "lemma": _lemma(G),
    }


def test_criterion_13_appendix_machinery():
    failures = {}
    total = 0
    for n_ext in (2, 4):
        for loops in range(0, 4):
            for G in enumerate_graphs(n_ext, loops, Filter.CONNECTED):
                if G.is_empty:
                    continue
                total += 1
                for name, ok in _appendix_checks(G).items():
                    if not ok:
                        failures[name] = failures.get(name, 0) + 1
    record(13, not failures, f"{total} graphs, failures {failures or 'none'}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
