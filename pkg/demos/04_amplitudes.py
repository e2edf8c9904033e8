"""Feynman amplitudes on a finite spectrum and the analytic 2-point oracle."""

from fractions import Fraction

from ribbonhopf import named
from ribbonhopf.amplitudes import (
    Spectrum,
    amplitude,
    analytic_report,
    correlation_series,
    dse2_check,
    ward_w4p_check,
)

spec = Spectrum((1, Fraction(5, 2)), (2, 3))
print("N =", spec.N)

a = amplitude(named.rainbow(), [1, 3], spec)
print("rainbow:", a.coefficient, "(-lambda)^%d / N^%d" % (a.vertices, a.internal_faces))

print("G_ab to order 3 in (-lambda):", [str(x) for x in correlation_series(2, 3, spec, [1, 3])])
print("Ward identity through order 3:", ward_w4p_check(3, spec, [1, 2, 3, 5]))
print("2-point DSE through order 3:", dse2_check(3, spec, [1, 3]))

rep = analytic_report(0.1)
print(f"lambda = 0.1: log-slope {rep['log_slope']:.6f}, expected {rep['expected_slope']:.6f}")
print(f"gamma = {rep['gamma']:.6f}, D = {rep['spectral_dimension']:.6f}, 2(2+gamma) = {rep['two_times_two_plus_gamma']:.6f}")
for r in rep["residuals"]:
    print(f"  cutoff {r['cutoff']:8.0e}: residual {r['residual']:.2e} (without tail {r['residual_truncated']:.2e})")
