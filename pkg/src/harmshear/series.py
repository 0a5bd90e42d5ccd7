"""Truncated power series over exact rationals or complex floats.

A series holds the Taylor coefficients c_0..c_N of an analytic germ at 0.
Coefficients are either all ``Fraction`` (exact mode) or ``complex``
(floating mode).  Binary operations truncate to the smaller order.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational

DEFAULT_ORDER = 64
RECIPROCAL_EPS = 1e-12


class ConstantTermZero(ZeroDivisionError):
    """Raised when inverting a series that vanishes at the origin."""


def _exact(x):
    return isinstance(x, Rational)


def as_fraction(x):
    """Coerce an int/Fraction/str/float (read as printed) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    raise TypeError(f"cannot read {x!r} as an exact rational")


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        if all(_exact(c) for c in cs):
            cs = tuple(Fraction(c) for c in cs)
        else:
            cs = tuple(complex(c) for c in cs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER):
        return cls((value,) + (0,) * order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER, exact=True):
        z = Fraction(0) if exact else 0j
        return cls((z,) * (order + 1))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def exact(self):
        return isinstance(self.coeffs[0], Fraction)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def to_float(self):
        return TruncatedSeries(tuple(complex(c) for c in self.coeffs))

    def scale(self, s):
        return TruncatedSeries(tuple(s * c for c in self.coeffs))

    def shifted(self):
        """z * self; the order grows by one so nothing is lost."""
        return TruncatedSeries((self.coeffs[0] * 0,) + self.coeffs)

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, reciprocal(other))
        return self.scale(1 / Fraction(other) if _exact(other) else 1 / other)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]!r})"


def _coerce(x, order):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.constant(x, order)


def add(p, q):
    n = min(p.order, q.order)
    return TruncatedSeries(tuple(p[k] + q[k] for k in range(n + 1)))


def mul(p, q):
    """Cauchy product truncated to min(order)."""
    n = min(p.order, q.order)
    a, b = p.coeffs, q.coeffs
    return TruncatedSeries(
        tuple(sum(a[k] * b[m - k] for k in range(m + 1)) for m in range(n + 1))
    )


def reciprocal(p):
    c0 = p[0]
    if (p.exact and c0 == 0) or (not p.exact and abs(c0) <= RECIPROCAL_EPS):
        raise ConstantTermZero(f"constant term {c0} is not invertible")
    inv0 = 1 / c0
    r = [inv0]
    for n in range(1, p.order + 1):
        s = sum(p[k] * r[n - k] for k in range(1, n + 1))
        r.append(-s * inv0)
    return TruncatedSeries(tuple(r))


def differentiate(p):
    if p.order == 0:
        return TruncatedSeries((p[0] * 0,))
    return TruncatedSeries(tuple((n + 1) * p[n + 1] for n in range(p.order)))


def integrate(p):
    """Antiderivative vanishing at 0; order grows by one."""
    rest = tuple(p[n - 1] / n for n in range(1, p.order + 2))
    return TruncatedSeries((p[0] * 0,) + rest)


def evaluate(p, z):
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def binomial_expand(m, order=DEFAULT_ORDER, exact=True):
    """Coefficients of 1/(1-z)^m: C(n+m-1, m-1)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    cs = [comb(n + m - 1, m - 1) for n in range(order + 1)]
    if exact:
        return TruncatedSeries(tuple(Fraction(c) for c in cs))
    return TruncatedSeries(tuple(complex(c) for c in cs))


def mobius_series(d, order=DEFAULT_ORDER, exact=True):
    """Series of (alpha + beta z)/(1 + alpha beta z) by its closed-form coefficients."""
    alpha, beta = d.alpha, d.beta
    if not exact:
        alpha = float(alpha)
    cs = [alpha]
    if order >= 1:
        lead = beta * (1 - alpha * alpha)
        ratio = -alpha * beta
        cs.append(lead)
        for _ in range(2, order + 1):
            cs.append(cs[-1] * ratio)
    return TruncatedSeries(tuple(cs))
