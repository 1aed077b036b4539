"""Para-Grassmann algebra with operator-valued coefficients.

An :class:`Element` is a finite sum ``sum m (x) X`` of canonical monomials
``m`` in the (n+1)-nilpotent generators zeta_g, zeta*_g standing to the LEFT
of a payload ``X`` (scalar, (n+1)x(n+1) operator, ket or bra).

Reordering rules:

* unstarred generators commute among themselves, as do starred ones;
  swapping an unstarred past a starred generator gives -1;
* a generator crosses a payload by parity conjugation,
  ``zeta X = (P X P) zeta`` with ``P = diag((-1)^k)``.

Canonical monomial order is unstarred block then starred block, each in
ascending generator index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Sequence, Union

from . import kernel
from ._pykernel import FIELD_BITS, MAX_GEN
from .report import Report
from .scalars import EXACT, Backend, GaussianRational

__all__ = [
    "Monomial",
    "Element",
    "multiply",
    "adjoint",
    "series_apply",
    "exp_nilpotent",
    "zeta_matrix_rep",
    "sqrt1p",
    "recip1p",
    "rsqrt1p",
    "exp_coeffs",
    "DEGREE_CAP",
    "check_degree",
    "KINDS",
]

KINDS = ("scalar", "operator", "ket", "bra")
_HAS_ROW = {"operator": True, "ket": True, "bra": False, "scalar": False}
_HAS_COL = {"operator": True, "ket": False, "bra": True, "scalar": False}
_PRODUCT_KIND = {
    ("operator", "operator"): ("operator", True),
    ("operator", "ket"): ("ket", True),
    ("bra", "operator"): ("bra", True),
    ("bra", "ket"): ("scalar", True),
    ("ket", "bra"): ("operator", False),
}

DEGREE_CAP = {"exact": 12, "float64": 16}

_FMASK = (1 << FIELD_BITS) - 1
_HALF_BITS = FIELD_BITS * MAX_GEN
_HALF_MASK = (1 << _HALF_BITS) - 1


def check_degree(n: int, backend: Backend = EXACT) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"nilpotency degree must be a positive integer, got {n!r}")
    cap = DEGREE_CAP[backend.name]
    if n > cap:
        raise ValueError(f"n = {n} exceeds the {backend.name} degree cap {cap}")


# ---------------------------------------------------------------------------
# monomials


def _pack(unstarred: Sequence[int], starred: Sequence[int]) -> int:
    mon = 0
    for g, e in enumerate(unstarred):
        mon |= e << (FIELD_BITS * g)
    for g, e in enumerate(starred):
        mon |= e << (FIELD_BITS * (MAX_GEN + g))
    return mon


def _unpack(mon: int, ngen: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = tuple((mon >> (FIELD_BITS * g)) & _FMASK for g in range(ngen))
    b = tuple((mon >> (FIELD_BITS * (MAX_GEN + g))) & _FMASK for g in range(ngen))
    return a, b


def _mon_degrees(mon: int) -> tuple[int, int]:
    a = sum((mon >> (FIELD_BITS * g)) & _FMASK for g in range(MAX_GEN))
    b = sum((mon >> (FIELD_BITS * (MAX_GEN + g))) & _FMASK for g in range(MAX_GEN))
    return a, b


def _swap_star(mon: int) -> int:
    return ((mon & _HALF_MASK) << _HALF_BITS) | (mon >> _HALF_BITS)


@dataclass(frozen=True)
class Monomial:
    """Canonical monomial ``prod zeta_g^a_g * prod zeta*_g^b_g``."""

    n: int
    unstarred: tuple[int, ...]
    starred: tuple[int, ...]

    def __post_init__(self):
        if len(self.unstarred) != len(self.starred):
            raise ValueError("unstarred and starred exponent lists differ in length")
        if not 1 <= len(self.unstarred) <= MAX_GEN:
            raise ValueError(f"between 1 and {MAX_GEN} generators supported")
        if any(e < 0 for e in self.unstarred + self.starred):
            raise ValueError("negative exponent")

    @classmethod
    def of(cls, n: int, a: int | Sequence[int] = 0, b: int | Sequence[int] = 0) -> "Monomial":
        a = (a,) if isinstance(a, int) else tuple(a)
        b = (b,) if isinstance(b, int) else tuple(b)
        width = max(len(a), len(b))
        a = a + (0,) * (width - len(a))
        b = b + (0,) * (width - len(b))
        return cls(n, a, b)

    @classmethod
    def from_packed(cls, n: int, mon: int, ngen: int = 1) -> "Monomial":
        a, b = _unpack(mon, ngen)
        return cls(n, a, b)

    @property
    def ngen(self) -> int:
        return len(self.unstarred)

    @property
    def is_zero(self) -> bool:
        return any(e > self.n for e in self.unstarred + self.starred)

    @property
    def total_degree(self) -> int:
        return sum(self.unstarred) + sum(self.starred)

    def packed(self) -> int:
        return _pack(self.unstarred, self.starred)

    def __str__(self) -> str:
        return _mon_str(self.packed(), self.ngen)


_GEN_NAMES = ("ζ", "η", "ξ")


def _mon_str(mon: int, ngen: int) -> str:
    a, b = _unpack(mon, ngen)
    parts = []
    for g, e in enumerate(a):
        if e:
            parts.append(_GEN_NAMES[g] + (f"^{e}" if e > 1 else ""))
    for g, e in enumerate(b):
        if e:
            parts.append(_GEN_NAMES[g] + "*" + (f"^{e}" if e > 1 else ""))
    return " ".join(parts) or "1"


# ---------------------------------------------------------------------------
# elements


Scalarish = Union[int, Fraction, GaussianRational, complex, float, str]


class Element:
    """Normal-ordered sum of (monomial, payload) terms; immutable by convention.

    ``terms`` maps integer keys ``(packed_monomial << 16) | (row << 8) | col``
    to nonzero coefficients. The payload of each monomial is the sparse
    matrix/vector assembled from the entries sharing that monomial.
    """

    __slots__ = ("n", "kind", "terms", "backend", "ngen")
    __hash__ = None

    def __init__(self, n: int, kind: str, terms: dict | None = None,
                 backend: Backend = EXACT, ngen: int = 1, _prune: bool = True):
        if kind not in KINDS:
            raise ValueError(f"unknown payload kind {kind!r}")
        self.n = n
        self.kind = kind
        self.backend = backend
        self.ngen = ngen
        terms = terms or {}
        if _prune:
            is_zero = backend.is_zero
            terms = {k: v for k, v in terms.items() if not is_zero(v)}
        self.terms = terms

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, n: int, kind: str = "scalar", backend: Backend = EXACT, ngen: int = 1) -> "Element":
        return cls(n, kind, {}, backend, ngen)

    @classmethod
    def scalar(cls, n: int, value: Scalarish = 1, backend: Backend = EXACT) -> "Element":
        return cls(n, "scalar", {0: backend.coerce(value)}, backend)

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Scalarish = 1, backend: Backend = EXACT) -> "Element":
        if mono.is_zero:
            return cls.zero(mono.n, "scalar", backend, mono.ngen)
        return cls(mono.n, "scalar", {mono.packed() << 16: backend.coerce(coeff)}, backend, mono.ngen)

    @classmethod
    def generator(cls, n: int, g: int = 0, starred: bool = False, backend: Backend = EXACT,
                  ngen: int | None = None) -> "Element":
        """The bare generator zeta_g (or zeta*_g) as a scalar-payload element."""
        ngen = max(g + 1, ngen or 1)
        if g >= MAX_GEN:
            raise ValueError(f"at most {MAX_GEN} generators")
        a = [0] * ngen
        b = [0] * ngen
        (b if starred else a)[g] = 1
        return cls.monomial(Monomial(n, tuple(a), tuple(b)), 1, backend)

    @classmethod
    def identity(cls, n: int, backend: Backend = EXACT) -> "Element":
        one = backend.one
        return cls(n, "operator", {(k << 8) | k: one for k in range(n + 1)}, backend)

    @classmethod
    def operator(cls, matrix: Sequence[Sequence[Scalarish]], backend: Backend = EXACT) -> "Element":
        dim = len(matrix)
        terms = {}
        for i, row in enumerate(matrix):
            if len(row) != dim:
                raise ValueError("operator payload must be square")
            for j, v in enumerate(row):
                terms[(i << 8) | j] = backend.coerce(v)
        return cls(dim - 1, "operator", terms, backend)

    @classmethod
    def ket(cls, vector: Sequence[Scalarish], backend: Backend = EXACT) -> "Element":
        return cls(len(vector) - 1, "ket",
                   {i << 8: backend.coerce(v) for i, v in enumerate(vector)}, backend)

    @classmethod
    def bra(cls, vector: Sequence[Scalarish], backend: Backend = EXACT) -> "Element":
        return cls(len(vector) - 1, "bra", {i: backend.coerce(v) for i, v in enumerate(vector)}, backend)

    @classmethod
    def basis_ket(cls, n: int, k: int, backend: Backend = EXACT) -> "Element":
        if not 0 <= k <= n:
            raise ValueError(f"basis index {k} outside 0..{n}")
        return cls(n, "ket", {k << 8: backend.one}, backend)

    @classmethod
    def from_terms(cls, n: int, kind: str, entries, backend: Backend = EXACT, ngen: int = 1) -> "Element":
        """Build from ``{(Monomial, row, col): coeff}``; zero monomials are dropped."""
        terms: dict = {}
        for (mono, row, col), v in dict(entries).items():
            if mono.is_zero:
                continue
            if not _HAS_ROW[kind]:
                row = 0
            if not _HAS_COL[kind]:
                col = 0
            key = (mono.packed() << 16) | (row << 8) | col
            v = backend.coerce(v)
            terms[key] = terms[key] + v if key in terms else v
            ngen = max(ngen, mono.ngen)
        return cls(n, kind, terms, backend, ngen)

    def _like(self, terms: dict, kind: str | None = None, ngen: int | None = None) -> "Element":
        return Element(self.n, kind or self.kind, terms, self.backend, ngen or self.ngen)

    # inspection -------------------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, int, int, object]]:
        for key, v in sorted(self.terms.items()):
            yield Monomial.from_packed(self.n, key >> 16, self.ngen), (key >> 8) & 0xFF, key & 0xFF, v

    def monomials(self) -> list[Monomial]:
        mons = sorted({key >> 16 for key in self.terms}, key=lambda m: (sum(_mon_degrees(m)), m))
        return [Monomial.from_packed(self.n, m, self.ngen) for m in mons]

    def coefficient(self, mono: Monomial, row: int = 0, col: int = 0):
        key = (mono.packed() << 16) | (row << 8) | col
        return self.terms.get(key, self.backend.zero)

    def payload(self, mono: Monomial | None = None):
        """Dense payload attached to ``mono`` (the constant monomial by default)."""
        mon = 0 if mono is None else mono.packed()
        dim = self.n + 1
        zero = self.backend.zero
        get = self.terms.get
        base = mon << 16
        if self.kind == "scalar":
            return get(base, zero)
        if self.kind == "ket":
            return [get(base | (i << 8), zero) for i in range(dim)]
        if self.kind == "bra":
            return [get(base | j, zero) for j in range(dim)]
        return [[get(base | (i << 8) | j, zero) for j in range(dim)] for i in range(dim)]

    def payloads(self) -> dict[Monomial, object]:
        return {m: self.payload(m) for m in self.monomials()}

    def component(self, row: int = 0, col: int = 0) -> "Element":
        """Scalar-payload element collecting the monomials of one payload entry."""
        terms = {}
        for key, v in self.terms.items():
            if ((key >> 8) & 0xFF) == row and (key & 0xFF) == col:
                terms[key & ~0xFFFF] = v
        return Element(self.n, "scalar", terms, self.backend, self.ngen)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(key >> 16 == 0 for key in self.terms)

    def min_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(_mon_degrees(key >> 16)) for key in self.terms)

    def max_degree(self) -> int:
        return max((sum(_mon_degrees(key >> 16)) for key in self.terms), default=0)

    def generator_support(self) -> set[int]:
        """Indices of generators appearing in any monomial."""
        used = set()
        for key in self.terms:
            mon = key >> 16
            for g in range(MAX_GEN):
                if (mon >> (FIELD_BITS * g)) & _FMASK or (mon >> (FIELD_BITS * (MAX_GEN + g))) & _FMASK:
                    used.add(g)
        return used

    # arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Element") -> None:
        if other.n != self.n:
            raise ValueError(f"nilpotency degrees differ: {self.n} vs {other.n}")
        if other.backend != self.backend:
            raise ValueError(f"backends differ: {self.backend.name} vs {other.backend.name}")

    def _as_element(self, other) -> "Element":
        if isinstance(other, Element):
            return other
        return Element(self.n, "scalar", {0: self.backend.coerce(other)}, self.backend)

    def __add__(self, other):
        other = self._as_element(other)
        self._check_compatible(other)
        if other.kind != self.kind:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise TypeError(f"cannot add {self.kind} and {other.kind} elements")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return self._like(terms, ngen=max(self.ngen, other.ngen))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.n, self.kind, {k: -v for k, v in self.terms.items()}, self.backend,
                       self.ngen, _prune=False)

    def __sub__(self, other):
        return self + (-self._as_element(other))

    def __rsub__(self, other):
        return self._as_element(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = self.backend.coerce(other)
        return self._like({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.backend.coerce(other)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __truediv__(self, other):
        c = self.backend.coerce(other)
        return self._like({k: v / c for k, v in self.terms.items()})

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            return NotImplemented
        if self.kind not in ("scalar", "operator"):
            raise TypeError("only scalar and operator elements have powers")
        result = self.one_like()
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def one_like(self) -> "Element":
        if self.kind == "operator":
            return Element.identity(self.n, self.backend)
        if self.kind == "scalar":
            return Element.scalar(self.n, 1, self.backend)
        raise TypeError(f"{self.kind} elements have no multiplicative unit")

    def __eq__(self, other):
        if not isinstance(other, Element):
            if self.kind != "scalar":
                return NotImplemented
            other = self._as_element(other)
        if other.n != self.n or other.backend != self.backend:
            return False
        if other.kind != self.kind:
            return self.is_zero() and other.is_zero()
        return (self - other).is_zero()

    def adjoint(self) -> "Element":
        return adjoint(self)

    @property
    def dagger(self) -> "Element":
        return adjoint(self)

    def __repr__(self):
        return f"<Element n={self.n} kind={self.kind} terms={len(self.terms)} backend={self.backend.name}>"

    def __str__(self):
        from .serialize import format_element

        return format_element(self)


# ---------------------------------------------------------------------------
# core operations


def multiply(x: Element, y: Element) -> Element:
    """Canonical normal-ordered product ``x * y``."""
    x._check_compatible(y)
    if x.kind == "scalar":
        kind, contract = y.kind, False
    elif y.kind == "scalar":
        kind, contract = x.kind, False
    else:
        try:
            kind, contract = _PRODUCT_KIND[(x.kind, y.kind)]
        except KeyError:
            raise TypeError(f"cannot compose {x.kind} * {y.kind}") from None
    ngen = max(x.ngen, y.ngen)
    if not x.terms or not y.terms:
        return Element(x.n, kind, {}, x.backend, ngen)
    raw = kernel.product(list(x.terms), list(x.terms.values()),
                         list(y.terms), list(y.terms.values()), x.n, contract)
    return Element(x.n, kind, raw, x.backend, ngen)


def adjoint(x: Element) -> Element:
    """Antilinear anti-involution: zeta_g <-> zeta*_g, order reversed, payload daggered."""
    kind = {"ket": "bra", "bra": "ket"}.get(x.kind, x.kind)
    terms = {}
    for key, v in x.terms.items():
        mon = key >> 16
        row, col = (key >> 8) & 0xFF, key & 0xFF
        if x.kind == "ket":
            row, col = 0, row
        elif x.kind == "bra":
            row, col = col, 0
        else:
            row, col = col, row
        a, b = _mon_degrees(mon)
        v = v.conjugate()
        if ((row + col) & 1) and ((a + b) & 1):
            v = -v
        terms[(_swap_star(mon) << 16) | (row << 8) | col] = v
    return Element(x.n, kind, terms, x.backend, x.ngen, _prune=False)


# ---------------------------------------------------------------------------
# nilpotent power series


def sqrt1p(m: int) -> Fraction:
    """Coefficients of sqrt(1 + t)."""
    return _binomial(Fraction(1, 2), m)


def recip1p(m: int) -> Fraction:
    """Coefficients of 1 / (1 + t)."""
    return Fraction((-1) ** m)


def rsqrt1p(m: int) -> Fraction:
    """Coefficients of 1 / sqrt(1 + t)."""
    return _binomial(Fraction(-1, 2), m)


def exp_coeffs(m: int) -> Fraction:
    return Fraction(1, factorial(m))


def _binomial(r: Fraction, m: int) -> Fraction:
    c = Fraction(1)
    for i in range(m):
        c = c * (r - i) / (i + 1)
    return c


Coefficients = Union[Sequence[Union[int, Fraction]], Callable[[int], Fraction]]


def _coeff(coeffs: Coefficients, m: int):
    if callable(coeffs):
        return coeffs(m)
    if m >= len(coeffs):
        raise ValueError(f"coefficient sequence too short: power {m} survives")
    return coeffs[m]


def _power_bound(u: Element) -> int:
    # every monomial has degree <= 2 n ngen, each factor adds >= 1
    return 2 * u.n * u.ngen + 1


def series_apply(coeffs: Coefficients, u: Element) -> Element:
    """``sum_m coeffs[m] u^m`` for nilpotent ``u`` (no constant term)."""
    if u.kind not in ("scalar", "operator"):
        raise TypeError("series argument must have scalar or operator payload")
    if any(key >> 16 == 0 for key in u.terms):
        raise ValueError("series argument has a nonzero constant term")
    power = u.one_like()
    result = power * _coeff(coeffs, 0)
    for m in range(1, _power_bound(u) + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power * _coeff(coeffs, m)
    return result


def exp_nilpotent(x: Element) -> Element:
    """Finite exponential series of an element whose terms all carry generators."""
    if x.kind not in ("scalar", "operator"):
        raise TypeError("exponent must have scalar or operator payload")
    if any(key >> 16 == 0 for key in x.terms):
        raise ValueError("exponent is not nilpotent: it has a generator-free term")
    power = x.one_like()
    result = power
    bound = _power_bound(x)
    for m in range(1, bound + 1):
        power = power * x / m
        if power.is_zero():
            return result
        result = result + power
    raise ValueError(f"exponent power {bound} still nonzero; not nilpotent")


# ---------------------------------------------------------------------------
# matrix realization


def zeta_matrix_rep(n: int, backend: Backend = EXACT):
    """(n+1)x(n+1) matrices for zeta, zeta* with alternating 1, -i subdiagonal.

    Returns ``(zeta, zeta_star, report)``; the matrices are constant
    operator elements and the report checks {zeta, zeta*} = 0 and
    zeta^(n+1) = 0 = zeta*^(n+1).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be >= 1")
    check_degree(n, backend)
    minus_i = backend.coerce(GaussianRational(0, -1))
    one = backend.one
    z = {((k + 1) << 8) | k: (one if k % 2 == 0 else minus_i) for k in range(n)}
    zeta = Element(n, "operator", z, backend)
    zeta_star = Element(n, "operator", {k: v.conjugate() for k, v in z.items()}, backend)
    report = Report()
    anti = zeta * zeta_star + zeta_star * zeta
    report.add("core", "matrix-zeta-anticommutator", n, anti.is_zero())
    report.add("core", "matrix-zeta-nilpotent", n, (zeta ** (n + 1)).is_zero())
    report.add("core", "matrix-zeta-star-nilpotent", n, (zeta_star ** (n + 1)).is_zero())
    return zeta, zeta_star, report


def parity_operator(n: int, backend: Backend = EXACT) -> Element:
    """P = diag((-1)^k), the payload conjugator for generator crossings."""
    return Element(n, "operator", {(k << 8) | k: backend.coerce((-1) ** k) for k in range(n + 1)}, backend)
