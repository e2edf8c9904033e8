"""Feynman rules on finite spectra and the analytic 2-point oracle.

A graph's amplitude is the product of ``1/(E_n + E_m)`` over its edges
(legs included), where ``n`` and ``m`` label the faces on either side,
summed over the eigenvalues of every internal face with weight ``r_n``.
Each 4-valent vertex contributes ``-lambda`` and each internal face ``1/N``;
:func:`amplitude` returns the rational coefficient of ``(-lambda)^V N^-F``.

External faces are labelled in boundary order starting with the face that
contains the root leg, so for a 4-point graph the labels ``a, b, c, d``
follow its boundary cyclically.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate, special

from .enumeration import Filter, enumerate_graphs
from .ribbon import RibbonGraph, completion, face_of, topology

__all__ = [
    "Spectrum",
    "Amplitude",
    "amplitude",
    "correlation_series",
    "ward_w4p_check",
    "dse2_check",
    "alpha_lambda",
    "hyp_R",
    "log_slope",
    "lin_eq_residual",
    "anomalous_dimension",
    "spectral_dimension",
    "analytic_report",
]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple
    multiplicities: tuple

    def __post_init__(self):
        ev = tuple(Fraction(e) for e in self.eigenvalues)
        rs = tuple(int(r) for r in self.multiplicities)
        if len(ev) != len(rs) or not ev:
            raise ValueError("eigenvalues and multiplicities must have the same positive length")
        if any(e <= 0 for e in ev) or any(r <= 0 for r in rs):
            raise ValueError("eigenvalues and multiplicities must be positive")
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "multiplicities", rs)

    @property
    def N(self) -> int:
        return sum(self.multiplicities)

    @property
    def d(self) -> int:
        return len(self.eigenvalues)

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        data = json.loads(text)
        return cls(tuple(Fraction(str(e)) for e in data["eigenvalues"]), tuple(data["multiplicities"]))

    def to_json(self) -> dict:
        return {"eigenvalues": [str(e) for e in self.eigenvalues],
                "multiplicities": list(self.multiplicities)}


@dataclass(frozen=True)
class Amplitude:
    """``coefficient * (-lambda)^vertices / N^internal_faces``."""

    coefficient: Fraction
    vertices: int
    internal_faces: int

    def value(self, N: int) -> Fraction:
        """Coefficient of ``(-lambda)^vertices`` including the ``1/N`` factors."""
        return self.coefficient / Fraction(N) ** self.internal_faces


def _edge_faces(G: RibbonGraph) -> tuple[list[tuple[int, int]], int, int]:
    """Face pairs of every edge of the completion, legs included."""
    if G.is_empty:
        return [(0, 1)], 2, 0
    fmap, off = face_of(G)
    M = completion(G)
    n_ext = len(G.external)
    seen = set()
    pairs = []
    for h in M.sigma.domain:
        t = M.alpha(h)
        e = (min(h, t), max(h, t))
        if e in seen:
            continue
        seen.add(e)
        pairs.append((fmap[h], fmap[t]))
    n_faces = max(fmap.values()) + 1
    return pairs, n_ext, n_faces - n_ext


def amplitude(G: RibbonGraph, labels: Sequence, spec: Spectrum) -> Amplitude:
    """Feynman amplitude with external faces labelled by ``labels``."""
    pairs, n_ext, n_int = _edge_faces(G)
    labels = [Fraction(x) for x in labels]
    if len(labels) != n_ext:
        raise ValueError(f"need {n_ext} external labels, got {len(labels)}")
    if G.valence_counts().get(4, 0) != len(G.vertices):
        raise ValueError("Feynman rules need 4-valent vertices only")
    total = Fraction(0)
    ev, rs = spec.eigenvalues, spec.multiplicities
    for choice in itertools.product(range(spec.d), repeat=n_int):
        E = labels + [ev[i] for i in choice]
        w = Fraction(math.prod(rs[i] for i in choice))
        den = math.prod(E[a] + E[b] for a, b in pairs)
        total += w / den
    return Amplitude(total, len(G.vertices), n_int)


def _graphs_at(n_ext: int, lam_order: int) -> list[RibbonGraph]:
    loops = lam_order if n_ext == 2 else lam_order - 1
    if loops < 0:
        return []
    return [G for G in enumerate_graphs(n_ext, loops, Filter.CONNECTED) if topology(G).genus == 0]


def correlation_series(n_ext: int, order: int, spec: Spectrum, labels: Sequence) -> list[Fraction]:
    """Coefficients of ``(-lambda)^m``, ``m = 0..order``, of the planar function."""
    out = []
    for m in range(order + 1):
        out.append(sum((amplitude(G, labels, spec).value(spec.N) for G in _graphs_at(n_ext, m)),
                       Fraction(0)))
    return out


def _g2(spec: Spectrum, order: int):
    cache = {}

    def g(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = correlation_series(2, order, spec, [a, b])
        return cache[key]
    return g


def ward_w4p_check(order: int, spec: Spectrum, labels: Sequence, report: bool = False):
    """Planar 4-point function from 2-point functions, order by order.

    ``G_abcd = -lambda (G_ab G_cd - G_ad G_cb) / ((E_a - E_c)(E_b - E_d))``.
    """
    a, b, c, d = (Fraction(x) for x in labels)
    if a == c or b == d:
        raise ValueError("the Ward formula needs E_a != E_c and E_b != E_d")
    g = _g2(spec, order)
    lhs = correlation_series(4, order, spec, [a, b, c, d])
    rhs = [Fraction(0)]
    for m in range(1, order + 1):
        s = sum(g(a, b)[i] * g(c, d)[m - 1 - i] - g(a, d)[i] * g(c, b)[m - 1 - i] for i in range(m))
        rhs.append(s / ((a - c) * (b - d)))
    ok = lhs == rhs
    if not report:
        return ok
    return {"check": "ward_w4p", "params": {"order": order, "labels": [str(x) for x in labels]},
            "verdict": "PASS" if ok else "FAIL",
            "lhs": [str(x) for x in lhs], "rhs": [str(x) for x in rhs]}


def dse2_check(order: int, spec: Spectrum, labels: Sequence, report: bool = False):
    """The planar 2-point Dyson-Schwinger equation, order by order in ``-lambda``."""
    a, b = (Fraction(x) for x in labels)
    N = spec.N
    ev, rs = spec.eigenvalues, spec.multiplicities
    g = _g2(spec, order)
    lhs = g(a, b)
    rhs = [1 / (a + b)]
    for m in range(1, order + 1):
        four = Fraction(0)
        if m - 1 >= 1:
            for (k, rk), (l, rl) in itertools.product(zip(ev, rs), repeat=2):
                four += rk * rl * correlation_series(4, m - 1, spec, [a, k, l, b])[m - 1]
        two = Fraction(0)
        for k, rk in zip(ev, rs):
            two += rk * sum(g(a, b)[i] * (g(a, k)[m - 1 - i] + g(k, b)[m - 1 - i]) for i in range(m))
        rhs.append((four / N ** 2 + two / N) / (a + b))
    ok = lhs == rhs
    if not report:
        return ok
    return {"check": "dse2", "params": {"order": order, "labels": [str(x) for x in labels]},
            "verdict": "PASS" if ok else "FAIL",
            "lhs": [str(x) for x in lhs], "rhs": [str(x) for x in rhs]}


# ---------------------------------------------------------------- analytic

def alpha_lambda(lam: float) -> float:
    if abs(lam) * math.pi > 1:
        raise ValueError("|lambda| must not exceed 1/pi")
    return math.asin(lam * math.pi) / math.pi


def hyp_R(z, lam: float, mu2: float = 1.0):
    """``R(z) = z 2F1(a, 1-a; 2; -z/mu^2)`` with ``a = arcsin(lambda pi)/pi``."""
    a = alpha_lambda(lam)
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("z must be non-negative")
    out = z * special.hyp2f1(a, 1 - a, 2, -z / mu2)
    return float(out) if out.ndim == 0 else out


def log_slope(lam: float, mu2: float = 1.0, z1: float = 1e3, z2: float = 1e5) -> float:
    """Secant slope of ``log R`` against ``log z`` between ``z1 mu^2`` and ``z2 mu^2``."""
    r1, r2 = hyp_R(z1 * mu2, lam, mu2), hyp_R(z2 * mu2, lam, mu2)
    return (math.log(r2) - math.log(r1)) / (math.log(z2) - math.log(z1))


def _integrand(t, z, lam, mu2):
    return hyp_R(t, lam, mu2) / ((mu2 + t) ** 2 * (mu2 + t + z))


def lin_eq_residual(z: float, lam: float, mu2: float = 1.0, cutoff: float = 1e4,
                    breakdown: bool = False):
    """Residual of ``R(z) = z - lambda z^2 int_0^inf R(t) dt / ((mu^2+t)^2 (mu^2+t+z))``.

    The integral runs over ``[0, cutoff]`` by adaptive quadrature on
    logarithmic panels; the tail beyond the cutoff is estimated from
    ``R(t) ~ C t^(1-a)``.  With ``breakdown`` a dict with both the
    truncated and the tail-corrected residual is returned.
    """
    if z <= 0:
        raise ValueError("z must be positive")
    a = alpha_lambda(lam)
    edges = [0.0, mu2]
    while edges[-1] * 10 < cutoff:
        edges.append(edges[-1] * 10)
    edges.append(cutoff)
    integral = 0.0
    err = 0.0
    for lo, hi in zip(edges, edges[1:]):
        val, e = integrate.quad(_integrand, lo, hi, args=(z, lam, mu2), epsabs=0, epsrel=1e-12, limit=200)
        integral += val
        err += e
    C = hyp_R(cutoff, lam, mu2) / cutoff ** (1 - a)
    tail = C * cutoff ** (-1 - a) / (1 + a)
    lhs = hyp_R(z, lam, mu2)
    truncated = abs(lhs - (z - lam * z * z * integral))
    corrected = abs(lhs - (z - lam * z * z * (integral + tail)))
    if not breakdown:
        return corrected
    return {"z": z, "lambda": lam, "mu2": mu2, "cutoff": cutoff, "R": lhs,
            "integral": integral, "quad_error": err, "tail": tail,
            "residual_truncated": truncated, "residual": corrected}


def anomalous_dimension(lam: float) -> float:
    """``gamma = -arctan(lambda pi)/pi``."""
    return -math.atan(lam * math.pi) / math.pi + 0.0


def spectral_dimension(lam: float) -> float:
    """``D = 4 - 2 arcsin(lambda pi)/pi``."""
    return 4 - 2 * alpha_lambda(lam)


def analytic_report(lam: float, mu2: float = 1.0, cutoff: float = 1e4,
                    cutoffs: Sequence[float] = (1e2, 1e3, 1e4, 1e5)) -> dict:
    """Closed forms, the large-``z`` exponent of ``R`` and the residual table.

    ``gamma`` and ``D`` are both reported together with ``2(2 + gamma)``;
    for ``lambda != 0`` the arctan and arcsin forms disagree.
    """
    a = alpha_lambda(lam)
    gamma = anomalous_dimension(lam)
    D = spectral_dimension(lam)
    slope = log_slope(lam, mu2) if lam else 1.0
    table = [lin_eq_residual(mu2, lam, mu2, c, breakdown=True) for c in sorted(set(cutoffs) | {cutoff})]
    return {
        "check": "analytic",
        "params": {"lambda": lam, "mu2": mu2, "cutoff": cutoff},
        "alpha": a,
        "gamma": gamma,
        "spectral_dimension": D,
        "two_times_two_plus_gamma": 2 * (2 + gamma),
        "gamma_vs_D_gap": D - 2 * (2 + gamma),
        "log_slope": slope,
        "expected_slope": 1 - a,
        "slope_error": abs(slope - (1 - a)),
        "residuals": [{"cutoff": r["cutoff"], "residual": r["residual"],
                       "residual_truncated": r["residual_truncated"], "tail": r["tail"]} for r in table],
        "residual": next(r["residual"] for r in table if r["cutoff"] == cutoff),
    }
