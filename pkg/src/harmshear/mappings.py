"""The six harmonic mappings k0, s0, kc, sc, ka, sa.

Every mapping is f = h + conj(g) on the unit disk.  Coefficients are exact
rationals given in closed form; pointwise values come from the rational
expressions for h and g, which stay accurate close to the boundary where the
Taylor series converge slowly.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .series import TruncatedSeries, as_fraction, binomial_expand

MAX_RADIUS = 0.999
DERIVATIVE_EPS = 1e-14

K_FAMILY = ("k0", "kc", "ka")
S_FAMILY = ("s0", "sc", "sa")
NAMES = K_FAMILY + S_FAMILY


class ParamOutOfRange(ValueError):
    pass


class DerivativeZero(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class MobiusDilatation:
    """omega(z) = (alpha + beta z) / (1 + alpha beta z).

    beta = +1 and -1 are the two disk automorphism shapes used by the catalog;
    beta = 0 gives the constant dilatation alpha.
    """

    alpha: Fraction
    beta: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.beta not in (-1, 0, 1):
            raise ValueError(f"beta must be -1, 0 or +1, got {self.beta!r}")
        if abs(self.alpha) >= 1:
            raise ParamOutOfRange(f"|alpha| must be < 1, got {self.alpha}")

    def __call__(self, z):
        a = float(self.alpha)
        return (a + self.beta * z) / (1 + a * self.beta * z)


def equivalent_a_of_c(c):
    c = as_fraction(c)
    if c <= 0:
        raise ParamOutOfRange(f"c must be positive, got {c}")
    return (1 - c) / (1 + c)


@dataclass(frozen=True)
class GridSample:
    z: complex
    f: complex
    jacobian: float


@dataclass(frozen=True)
class HarmonicMapSpec:
    name: str
    param: Optional[Fraction]
    a_coef: Callable[[int], Fraction] = field(compare=False, repr=False)
    b_coef: Callable[[int], Fraction] = field(compare=False, repr=False)
    dilatation: MobiusDilatation
    shear_target: Callable[..., TruncatedSeries] = field(compare=False, repr=False)
    shear_direction: float
    # closed forms: h, g, h', g' as functions of a complex (or ndarray) z
    _h: Callable = field(compare=False, repr=False)
    _g: Callable = field(compare=False, repr=False)
    _dh: Callable = field(compare=False, repr=False)
    _dg: Callable = field(compare=False, repr=False)

    @property
    def family(self):
        return "k" if self.name in K_FAMILY else "s"

    @property
    def b1(self):
        return self.b_coef(1)

    def h(self, z):
        return self._h(z)

    def g(self, z):
        return self._g(z)

    def dh(self, z):
        return self._dh(z)

    def dg(self, z):
        return self._dg(z)

    def f(self, z):
        return self._h(z) + np.conj(self._g(z))

    def jacobian(self, z):
        hp, gp = self._dh(z), self._dg(z)
        return (hp.real**2 + hp.imag**2) - (gp.real**2 + gp.imag**2)

    def coefficients(self, nmax):
        return [(n, self.a_coef(n), self.b_coef(n)) for n in range(1, nmax + 1)]


def _koebe_target(scale):
    def target(order=64, exact=True):
        # scale * z / (1-z)^2
        base = binomial_expand(2, order - 1, exact=exact).shifted()
        return base.scale(scale if exact else complex(scale))

    return target


def _halfplane_target(scale):
    def target(order=64, exact=True):
        # scale * z / (1-z)
        base = binomial_expand(1, order - 1, exact=exact).shifted()
        return base.scale(scale if exact else complex(scale))

    return target


def _k_derivatives(a):
    af = float(a)

    def dh(z):
        return (1 + z) * (1 + af * z) / (1 - z) ** 4

    def dg(z):
        return (af + z) * (1 + z) / (1 - z) ** 4

    return dh, dg


def _s_derivatives(a):
    af = float(a)

    def dh(z):
        return (1 - af * z) / (1 - z) ** 3

    def dg(z):
        return (af - z) / (1 - z) ** 3

    return dh, dg


def _k0():
    def a_coef(n):
        return Fraction((2 * n + 1) * (n + 1), 6)

    def b_coef(n):
        return Fraction((2 * n - 1) * (n - 1), 6)

    def h(z):
        return (z - z**2 / 2 + z**3 / 6) / (1 - z) ** 3

    def g(z):
        return (z**2 / 2 + z**3 / 6) / (1 - z) ** 3

    dh, dg = _k_derivatives(0)
    return dict(
        param=None, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(Fraction(0), 1),
        shear_target=_koebe_target(Fraction(1)), shear_direction=0.0,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def _s0():
    def a_coef(n):
        return Fraction(n + 1, 2)

    def b_coef(n):
        return -Fraction(n - 1, 2)

    def h(z):
        return (z - z**2 / 2) / (1 - z) ** 2

    def g(z):
        return -(z**2 / 2) / (1 - z) ** 2

    dh, dg = _s_derivatives(0)
    return dict(
        param=None, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(Fraction(0), -1),
        shear_target=_halfplane_target(Fraction(1)), shear_direction=math.pi / 2,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def _ka(a):
    def a_coef(n):
        return (2 * (1 + a) * n * n + 3 * (1 - a) * n + (1 + a)) / 6

    def b_coef(n):
        return (2 * (1 + a) * n * n + 3 * (a - 1) * n + (1 + a)) / 6

    af = float(a)

    def h(z):
        return (z + (af - 1) / 2 * z**2 + (1 + af) / 6 * z**3) / (1 - z) ** 3

    def g(z):
        return (af * z + (1 - af) / 2 * z**2 + (1 + af) / 6 * z**3) / (1 - z) ** 3

    dh, dg = _k_derivatives(a)
    return dict(
        param=a, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(a, 1),
        shear_target=_koebe_target(1 - a), shear_direction=0.0,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def _sa(a):
    def a_coef(n):
        return ((1 + a) + n * (1 - a)) / 2

    def b_coef(n):
        return ((1 + a) - n * (1 - a)) / 2

    af = float(a)

    def h(z):
        return (z - (1 + af) / 2 * z**2) / (1 - z) ** 2

    def g(z):
        return (af * z - (1 + af) / 2 * z**2) / (1 - z) ** 2

    dh, dg = _s_derivatives(a)
    return dict(
        param=a, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(a, -1),
        shear_target=_halfplane_target(1 + a), shear_direction=math.pi / 2,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def _kc(c):
    A = (1 - c) / (1 + c)

    def a_coef(n):
        return (2 * n * n + 3 * c * n + 1) / (3 * (1 + c))

    def b_coef(n):
        return (2 * n * n - 3 * c * n + 1) / (3 * (1 + c))

    cf, Af = float(c), float(A)

    def h(z):
        return (z - cf / (1 + cf) * z**2 + z**3 / (3 * (1 + cf))) / (1 - z) ** 3

    def g(z):
        return (Af * z + cf / (1 + cf) * z**2 + z**3 / (3 * (1 + cf))) / (1 - z) ** 3

    dh, dg = _k_derivatives(A)
    return dict(
        param=c, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(A, 1),
        shear_target=_koebe_target(2 * c / (1 + c)), shear_direction=0.0,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def _sc(c):
    A = (1 - c) / (1 + c)

    def a_coef(n):
        return (1 + n * c) / (1 + c)

    def b_coef(n):
        return (1 - n * c) / (1 + c)

    cf = float(c)

    def h(z):
        return ((1 + cf) * z - z**2) / ((1 + cf) * (1 - z) ** 2)

    def g(z):
        return ((1 - cf) * z - z**2) / ((1 + cf) * (1 - z) ** 2)

    dh, dg = _s_derivatives(A)
    return dict(
        param=c, a_coef=a_coef, b_coef=b_coef,
        dilatation=MobiusDilatation(A, -1),
        shear_target=_halfplane_target(2 / (1 + c)), shear_direction=math.pi / 2,
        _h=h, _g=g, _dh=dh, _dg=dg,
    )


def catalog(name, param=None):
    """Build one of the catalog mappings.

    ka/sa take a in (-1, 1); kc/sc take c > 0; k0/s0 take no parameter.
    Parameters must be rational (``Fraction``, int, "1/3", or a float read as
    printed).
    """
    if name in ("k0", "s0"):
        if param is not None:
            raise ParamOutOfRange(f"{name} takes no parameter")
        parts = _k0() if name == "k0" else _s0()
    elif name in ("ka", "sa"):
        if param is None:
            raise ParamOutOfRange(f"{name} needs a parameter a in (-1, 1)")
        a = as_fraction(param)
        if not -1 < a < 1:
            raise ParamOutOfRange(f"a must lie in (-1, 1), got {a}")
        parts = _ka(a) if name == "ka" else _sa(a)
    elif name in ("kc", "sc"):
        if param is None:
            raise ParamOutOfRange(f"{name} needs a parameter c > 0")
        c = as_fraction(param)
        if c <= 0:
            raise ParamOutOfRange(f"c must be positive, got {c}")
        parts = _kc(c) if name == "kc" else _sc(c)
    else:
        raise ValueError(f"unknown map {name!r}; expected one of {', '.join(NAMES)}")
    return HarmonicMapSpec(name=name, **parts)


def eval_map(spec, z, order=None):
    """Closed-form sample of f at z.  ``order`` is accepted for symmetry with
    series evaluation and ignored: the rational forms are exact."""
    z = complex(z)
    if abs(z) > MAX_RADIUS:
        raise ValueError(f"|z| must be <= {MAX_RADIUS}, got {abs(z)}")
    return GridSample(z=z, f=complex(spec.f(z)), jacobian=float(spec.jacobian(z)))


def dilatation_value(spec, z):
    z = complex(z)
    if abs(spec.dh(z)) < DERIVATIVE_EPS:
        raise DerivativeZero(f"h'(z) vanishes at z={z}")
    return spec.dilatation(z)


def polar_grid(radii, angles):
    """Points r e^{2 pi i k/A}, radius-major."""
    thetas = 2 * np.pi * np.arange(angles) / angles
    return (np.asarray(radii, dtype=float)[:, None] * np.exp(1j * thetas)[None, :])

