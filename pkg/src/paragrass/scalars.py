"""Scalar coefficients and the two numeric backends.

The exact backend works over the Gaussian rationals Q[i]; the float
backend uses Python ``complex`` with an absolute zero tolerance.
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Backend",
    "EXACT",
    "float_backend",
    "get_backend",
    "parse_scalar",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = 1e-10


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        if isinstance(re, GaussianRational):
            self.re, self.im = re.re, re.im + Fraction(im)
            return
        if isinstance(re, complex):
            raise TypeError("complex floats cannot be converted exactly")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls._make(Fraction(value), Fraction(0))
        if isinstance(value, str):
            return parse_scalar(value, EXACT)
        if isinstance(value, float):
            if not value.is_integer():
                raise TypeError(f"refusing inexact float {value!r} in exact backend")
            return cls._make(Fraction(int(value)), Fraction(0))
        if isinstance(value, complex):
            if not (value.real.is_integer() and value.imag.is_integer()):
                raise TypeError(f"refusing inexact complex {value!r} in exact backend")
            return cls._make(Fraction(int(value.real)), Fraction(int(value.imag)))
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, b)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        c, d = other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not d:
            return GaussianRational._make(self.re / c, self.im / c)
        den = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational._make(Fraction(1), Fraction(0)) / self) ** (-k)
        result = GaussianRational._make(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparison -------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


class Backend:
    """Numeric backend: coefficient coercion, zero test and conjugation."""

    __slots__ = ("name", "tolerance", "zero", "one")

    def __init__(self, name: str, tolerance: float = DEFAULT_TOLERANCE):
        if name not in ("exact", "float64"):
            raise ValueError(f"unknown backend {name!r}")
        if tolerance <= 0:
            raise ValueError("tolerance must be positive")
        self.name = name
        self.tolerance = tolerance
        if name == "exact":
            self.zero = GaussianRational(0)
            self.one = GaussianRational(1)
        else:
            self.zero = 0j
            self.one = 1 + 0j

    @property
    def exact(self) -> bool:
        return self.name == "exact"

    def coerce(self, value):
        if self.name == "exact":
            return GaussianRational.coerce(value)
        if isinstance(value, GaussianRational):
            return complex(value)
        if isinstance(value, str):
            return parse_scalar(value, self)
        return complex(value)

    def is_zero(self, value) -> bool:
        if self.name == "exact":
            return not value
        return abs(value) <= self.tolerance

    def conj(self, value):
        return value.conjugate()

    def abs2(self, value):
        if self.name == "exact":
            return value.abs2()
        return abs(value) ** 2

    def __eq__(self, other):
        return isinstance(other, Backend) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        if self.exact:
            return "Backend('exact')"
        return f"Backend('float64', tolerance={self.tolerance!r})"


EXACT = Backend("exact")


def float_backend(tolerance: float = DEFAULT_TOLERANCE) -> Backend:
    return Backend("float64", tolerance)


def get_backend(name: str | Backend | None = None, tolerance: float | None = None) -> Backend:
    """Resolve a backend by name; ``None`` consults ``PARAGRASS_BACKEND``."""
    if isinstance(name, Backend):
        return name
    if name is None:
        name = os.environ.get("PARAGRASS_BACKEND", "exact")
    name = {"float": "float64"}.get(name, name)
    if name == "exact":
        return EXACT
    if name != "float64":
        raise ValueError(f"unknown backend {name!r}; expected exact or float64")
    return float_backend(DEFAULT_TOLERANCE if tolerance is None else tolerance)


def parse_scalar(text: str, backend: Backend = EXACT):
    """Parse a scalar as typed on the command line.

    Accepted: integers, ``p/q``, decimals, an imaginary part with trailing
    ``i``/``j`` (``3/2i``), or both (``1/2-3i``). Decimals stay exact under
    the exact backend (``0.5`` -> ``1/2``).
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    re_part, im_part = s, None
    if s[-1] in "ij":
        split = max(s.rfind("+", 1), s.rfind("-", 1))
        while split > 0 and s[split - 1] in "eE":
            split = max(s.rfind("+", 1, split), s.rfind("-", 1, split))
        if split > 0:
            re_part, im_part = s[:split], s[split:-1]
        else:
            re_part, im_part = "0", s[:-1]
        if im_part in ("", "+", "-"):
            im_part += "1"
    if backend.exact:
        return GaussianRational(Fraction(re_part), Fraction(im_part or 0))
    return complex(_float(re_part), _float(im_part or "0"))


def _float(s: str) -> float:
    if "/" in s:
        p, q = s.split("/")
        return float(p) / float(q)
    return float(s)
