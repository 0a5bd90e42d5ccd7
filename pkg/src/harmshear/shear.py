"""Shear construction of harmonic maps.

Given an analytic F with F(0) = 0, a dilatation omega and a direction phi,
find h, g with

    h - e^{2 i phi} g = F,    g' = omega h',    h(0) = g(0) = 0,

i.e. h' = F' / (1 - e^{2 i phi} omega) and g' = omega h'.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .series import TruncatedSeries, differentiate, integrate, reciprocal

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

MIN_RUN = 3
MIN_AMPLITUDE = 1e-9


class BadDilatation(ValueError):
    pass


class BadTarget(ValueError):
    pass


def rotation(phi):
    """e^{2 i phi}, exact +-1 for the directions 0 and pi/2."""
    if phi == 0:
        return 1
    if abs(phi - math.pi / 2) < 1e-15:
        return -1
    return cmath.exp(2j * phi)


@dataclass(frozen=True)
class ShearProblem:
    target: TruncatedSeries
    omega: TruncatedSeries
    phi: float = 0.0

    def __post_init__(self):
        if self.target[0] != 0:
            raise BadTarget(f"F(0) must vanish, got {self.target[0]}")
        if abs(self.omega[0]) >= 1:
            raise BadDilatation(f"|omega(0)| must be < 1, got {abs(self.omega[0])}")
        if not 0 <= self.phi < math.pi:
            raise ValueError(f"phi must lie in [0, pi), got {self.phi}")


@dataclass(frozen=True)
class ShearResult:
    h: TruncatedSeries
    g: TruncatedSeries
    residual: object


def shear(problem):
    F, omega, rot = problem.target, problem.omega, rotation(problem.phi)
    dF = differentiate(F)
    dh = dF * reciprocal(1 - omega.scale(rot))
    dg = omega * dh
    h, g = integrate(dh), integrate(dg)
    return ShearResult(h=h, g=g, residual=reconstruct_residual(h, g, problem.phi, F))


def reconstruct_residual(h, g, phi, F):
    """max_n |(h - e^{2 i phi} g - F)_n| over the common order."""
    diff = h - g.scale(rotation(phi)) - F
    return max(abs(c) for c in diff)


def _runs(signs):
    # cyclic run-length encoding of a +-1 sequence: list of [sign, start, length]
    n = len(signs)
    if n == 0:
        return []
    start = next((i for i in range(n) if signs[i] != signs[i - 1]), None)
    if start is None:
        return [[signs[0], 0, n]]
    runs = []
    for k in range(n):
        i = (start + k) % n
        if runs and runs[-1][0] == signs[i]:
            runs[-1][2] += 1
        else:
            runs.append([signs[i], i, 1])
    return runs


def _merge_weak(runs):
    """Fold runs that are too short or too flat into their neighbours."""
    runs = [list(r) for r in runs]
    while len(runs) > 2:
        weak = [i for i, r in enumerate(runs) if r[2] <= MIN_RUN or r[3] <= MIN_AMPLITUDE]
        if not weak:
            break
        i = min(weak, key=lambda j: (runs[j][3], j))
        del runs[i]
        # neighbours now adjacent; merge equal signs cyclically
        merged = []
        for r in runs:
            if merged and merged[-1][0] == r[0]:
                merged[-1][2] += r[2]
                merged[-1][3] += r[3]
            else:
                merged.append(r)
        if len(merged) > 1 and merged[0][0] == merged[-1][0]:
            last = merged.pop()
            merged[0][2] += last[2]
            merged[0][3] += last[3]
        runs = merged
    return runs


def convex_direction_heuristic(evalF, phi, r=0.99, M=4096):
    """Sample the image of |z| = r and count turning points of the height
    Im(e^{-i phi} F) along it.  Exactly two robust turning points means every
    line in direction phi meets the image curve at most twice."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    if M < 256:
        raise ValueError("M must be at least 256")
    z = r * np.exp(2j * np.pi * np.arange(M) / M)
    w = np.exp(-1j * phi) * np.asarray(evalF(z), dtype=complex)
    d = np.diff(np.append(w.imag, w.imag[0]))
    keep = np.abs(d) > 0
    if not keep.any():
        return INCONCLUSIVE
    signs = np.sign(d[keep]).astype(int).tolist()
    mags = np.abs(d[keep]).tolist()
    runs = _runs(signs)
    for run in runs:
        s, start, length = run
        run.append(sum(mags[(start + k) % len(mags)] for k in range(length)))
    raw = len(runs) if len(runs) > 1 else 0
    if raw == 2 and all(r_[2] > MIN_RUN and r_[3] > MIN_AMPLITUDE for r_ in runs):
        return PASS
    robust = _merge_weak(runs)
    if len(robust) >= 4:
        return FAIL
    return INCONCLUSIVE
