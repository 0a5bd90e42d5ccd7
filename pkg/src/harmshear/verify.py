"""Coefficient-bound checks, sharpness gaps and grid scans."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .mappings import S_FAMILY, polar_grid
from .series import as_fraction

TAGS = ("css0", "muir", "liu-ponnusamy", "sh-strict", "improved")
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

FLOAT_TOL = 1e-9
INJECTIVITY_EPS = 1e-9
MAX_INJECTIVITY_POINTS = 5000


class IncompatibleTag(ValueError):
    pass


@dataclass(frozen=True)
class BoundRow:
    n: int
    abs_a: object
    a_bound: object
    a_slack: object
    abs_b: object
    b_bound: object
    b_slack: object
    verdict: str


@dataclass(frozen=True)
class BoundReport:
    map_name: str
    tag: str
    rows: tuple
    mode: str = "exact"
    param: Optional[Fraction] = None
    # the a in the improved bound, and whether it was taken from b_1
    bound_a: Optional[Fraction] = None
    label: str = "catalog"
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self):
        return all(r.verdict == PASS for r in self.rows)

    @property
    def zero_slack(self):
        return all(r.a_slack == 0 and r.b_slack == 0 for r in self.rows)


def _css0(n, ctx):
    return Fraction((2 * n + 1) * (n + 1), 6), Fraction((2 * n - 1) * (n - 1), 6)


def _muir(n, ctx):
    c = ctx["c"]
    return (1 + n * c) / (1 + c), (1 - n * c) / (1 + c)


def _liu_ponnusamy(n, ctx):
    a = ctx["a"]
    return ((1 + a) + n * (1 - a)) / 2, ((1 + a) - n * (1 - a)) / 2


def _sh(n, ctx):
    b = Fraction(2 * n * n + 1, 3)
    return b, b


def _improved(n, ctx):
    a = ctx["a"]
    return (
        (2 * (1 + a) * n * n + 3 * (1 - a) * n + (1 + a)) / 6,
        (2 * (1 + a) * n * n + 3 * (a - 1) * n + (1 + a)) / 6,
    )


_BOUNDS = {
    "css0": _css0,
    "muir": _muir,
    "liu-ponnusamy": _liu_ponnusamy,
    "sh-strict": _sh,
    "improved": _improved,
}


def _context(spec, tag, a):
    b1 = spec.b1
    if tag == "css0" and b1 != 0:
        raise IncompatibleTag(f"css0 needs b_1 = 0; {spec.name} has b_1 = {b1}")
    if tag in ("muir", "liu-ponnusamy") and spec.name not in S_FAMILY:
        raise IncompatibleTag(f"{tag} bounds apply to the half-plane family, not {spec.name}")
    ctx = {"a": b1, "c": (1 - b1) / (1 + b1)}
    label = "catalog"
    if a is not None:
        if tag != "improved":
            raise IncompatibleTag("an explicit a only applies to the improved bound")
        a = as_fraction(a)
        if not -1 < a < 1:
            raise IncompatibleTag(f"a must lie in (-1, 1), got {a}")
        if a != b1:
            label = "parametric"
        ctx["a"] = a
    return ctx, label


def check_bounds(spec, tag, n_max=50, a=None, exact=True):
    """Compare |a_n|, |b_n| with the bound family ``tag`` for 2 <= n <= n_max.

    Bound expressions are compared in absolute value.  The improved bound
    uses a = b_1 of the map unless ``a`` is given; a foreign a makes the
    report "parametric".  Strictness (sh-strict) is only decided in exact mode.
    """
    if tag not in _BOUNDS:
        raise IncompatibleTag(f"unknown conjecture tag {tag!r}")
    ctx, label = _context(spec, tag, a)
    bound = _BOUNDS[tag]
    strict = tag == "sh-strict"
    rows = []
    for n in range(2, n_max + 1):
        an, bn = abs(spec.a_coef(n)), abs(spec.b_coef(n))
        A, B = (abs(x) for x in bound(n, ctx))
        if not exact:
            an, bn, A, B = float(an), float(bn), float(A), float(B)
        sa, sb = A - an, B - bn
        rows.append(BoundRow(n, an, A, sa, bn, B, sb, _verdict(sa, sb, A, B, strict, exact)))
    return BoundReport(
        map_name=spec.name, tag=tag, rows=tuple(rows),
        mode="exact" if exact else "float", param=spec.param,
        bound_a=ctx["a"] if tag in ("improved", "liu-ponnusamy") else None,
        label=label,
    )


def _verdict(sa, sb, A, B, strict, exact):
    if exact:
        ok = (sa > 0 and sb > 0) if strict else (sa >= 0 and sb >= 0)
        return PASS if ok else FAIL
    ta, tb = FLOAT_TOL * max(1.0, A), FLOAT_TOL * max(1.0, B)
    if sa < -ta or sb < -tb:
        return FAIL
    if strict and (sa <= ta or sb <= tb):
        return INCONCLUSIVE
    return PASS


def sharpness_gap(n, a):
    """(2n^2+1)/3 - a_n(k_a); equals (1-a)(2n-1)(n-1)/6."""
    a = as_fraction(a)
    if n < 2:
        raise ValueError("n must be at least 2")
    if not -1 < a < 1:
        raise ValueError(f"a must lie in (-1, 1), got {a}")
    an = (2 * (1 + a) * n * n + 3 * (1 - a) * n + (1 + a)) / 6
    gap = Fraction(2 * n * n + 1, 3) - an
    closed = (1 - a) * (2 * n - 1) * (n - 1) / 6
    if gap != closed:
        raise ArithmeticError(f"gap {gap} disagrees with closed form {closed}")
    return gap


def default_radii():
    return np.geomspace(0.1, 0.99, 24)


class ScanResult(NamedTuple):
    min_jacobian: float
    argmin: complex


def _chunks(n, parts):
    parts = max(1, min(parts, n))
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(bounds[i], bounds[i + 1]) for i in range(parts) if bounds[i] < bounds[i + 1]]


def _map_chunks(work, n, threads):
    spans = _chunks(n, threads)
    if threads <= 1 or len(spans) == 1:
        return [work(lo, hi) for lo, hi in spans]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: work(*s), spans))


def jacobian_scan(spec, radii=None, angles=360, threads=1):
    """Minimum of |h'|^2 - |g'|^2 over a polar grid.

    Ties go to the smallest radius, then the smallest angle, whatever the
    partition of the grid across threads.
    """
    radii = np.sort(np.asarray(default_radii() if radii is None else radii, dtype=float))
    if np.any(radii >= 1) or np.any(radii < 0):
        raise ValueError("radii must lie in [0, 1)")
    thetas = 2 * np.pi * np.arange(angles) / angles

    def work(lo, hi):
        z = polar_grid(radii[lo:hi], angles)
        J = spec.jacobian(z)
        i, k = np.unravel_index(int(np.argmin(J)), J.shape)
        return (float(J[i, k]), lo + int(i), int(k))

    best = min(_map_chunks(work, len(radii), threads))
    J, i, k = best
    return ScanResult(J, complex(radii[i] * np.exp(1j * thetas[k])))


def dilatation_scan(spec, radii=None, angles=360, threads=1):
    """Maximum of |omega| over the same polar grid."""
    radii = np.sort(np.asarray(default_radii() if radii is None else radii, dtype=float))

    def work(lo, hi):
        return float(np.max(np.abs(spec.dilatation(polar_grid(radii[lo:hi], angles)))))

    return max(_map_chunks(work, len(radii), threads))


def injectivity_sample(f, grid):
    """Heuristic univalence check: all pairwise image distances > 1e-9.

    ``f`` is a catalog spec or any vectorised callable.
    """
    pts = np.asarray(grid, dtype=complex).ravel()
    if pts.size > MAX_INJECTIVITY_POINTS:
        raise ValueError(f"at most {MAX_INJECTIVITY_POINTS} points allowed")
    w = np.asarray(f.f(pts) if hasattr(f, "f") else f(pts), dtype=complex)
    for i in range(len(w) - 1):
        if np.min(np.abs(w[i + 1:] - w[i])) <= INJECTIVITY_EPS:
            return FAIL
    return PASS
