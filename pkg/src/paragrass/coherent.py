"""Right and left ladder-operator coherent states and their weight functions.

Conventions used throughout:

* ``P_k = |alpha_0|^2 ... |alpha_{k-1}|^2`` (``P_0 = 1``), written
  ``abs2_prod(k)`` on :class:`~paragrass.fock.LadderSpec`;
* ``b_i = zeta*^i zeta^i``, which is ``(-1)^i zeta^i zeta*^i`` in canonical
  order, is the basis for every zeta*zeta-polynomial (N^2, W, W-tilde);
* bras are always obtained with :func:`~paragrass.algebra.adjoint`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element, Monomial, recip1p, series_apply, sqrt1p
from .berezin import GTable, g_recurrence, integrate
from .fock import LadderSpec, build_general_ladder
from .report import DISCREPANCY, FAIL, PASS, Report

__all__ = [
    "NormalizationTable",
    "WeightTable",
    "WEIGHT_KINDS",
    "b_element",
    "zstar_z_poly",
    "poly_coeffs",
    "to_primed",
    "from_primed",
    "normalization_coeffs",
    "inverse_series_oracle",
    "closed_form_a",
    "norm_operator",
    "right_cs",
    "left_cs",
    "cs_state",
    "verify_right_eigenproperties",
    "overlap_two_generators",
    "verify_overlap",
    "solve_weight",
    "solve_weight_for_state",
    "resolution_operator",
    "verify_resolution",
    "verify_left_properties",
    "left_power_sign",
    "closed_form_w_n3",
    "closed_form_wtilde_n3",
]

WEIGHT_KINDS = ("normalized-right", "unnormalized", "D", "Dprime")


# ---------------------------------------------------------------------------
# zeta* zeta polynomials


def b_element(n: int, i: int, backend, g: int = 0, ngen: int = 1, coeff=1) -> Element:
    """``coeff * zeta_g*^i zeta_g^i`` as a scalar-payload element."""
    a = [0] * ngen
    b = [0] * ngen
    a[g] = b[g] = i
    c = backend.coerce(coeff)
    return Element.monomial(Monomial(n, tuple(a), tuple(b)), -c if i % 2 else c, backend)


def zstar_z_poly(n: int, coeffs, backend, g: int = 0, ngen: int = 1) -> Element:
    """``sum_i coeffs[i] zeta*^i zeta^i``."""
    out = Element.zero(n, "scalar", backend, ngen)
    for i, c in enumerate(coeffs):
        out = out + b_element(n, i, backend, g, ngen, c)
    return out


def poly_coeffs(x: Element, g: int = 0) -> list:
    """Inverse of :func:`zstar_z_poly`; raises if ``x`` has other monomials."""
    n, backend = x.n, x.backend
    out = [backend.zero] * (n + 1)
    seen = 0
    for i in range(n + 1):
        a = [0] * x.ngen
        b = [0] * x.ngen
        a[g] = b[g] = i
        mono = Monomial(n, tuple(a), tuple(b))
        c = x.coefficient(mono)
        out[i] = -c if i % 2 else c
        seen += mono.packed() << 16 in x.terms
    if seen != len(x.terms):
        raise ValueError("element is not a polynomial in zeta* zeta")
    return out


def to_primed(coeffs) -> list:
    """Coefficients of ``sum_j c'_j (zeta* zeta)^j`` from those of ``zeta*^j zeta^j``."""
    return [c if (j * (j - 1) // 2) % 2 == 0 else -c for j, c in enumerate(coeffs)]


from_primed = to_primed  # the sign map is an involution


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizationTable:
    """a_0..a_n with ``N^2 = sum_j a_j zeta*^j zeta^j``.

    ``oracle`` holds the coefficients of ``(1 + u)^(-1)`` evaluated inside
    the algebra with ``u = sum_{k>=1} zeta*^k zeta^k / P_k``.
    """

    spec: LadderSpec
    a: tuple
    oracle: tuple = field(default=())

    @property
    def matches_oracle(self) -> bool:
        eq = self.spec.backend.is_zero
        return len(self.oracle) == len(self.a) and all(eq(x - y) for x, y in zip(self.a, self.oracle))

    def mismatches(self) -> list[int]:
        eq = self.spec.backend.is_zero
        return [j for j, (x, y) in enumerate(zip(self.a, self.oracle)) if not eq(x - y)]

    @property
    def primed(self) -> list:
        return to_primed(self.a)


def _norm_poly_coeffs(spec: LadderSpec) -> list:
    """1, 1/P_1, ..., 1/P_n: the unnormalized right (and left) CS norm."""
    one = spec.backend.one
    return [one / spec.abs2_prod(k) for k in range(spec.n + 1)]


def inverse_series_oracle(spec: LadderSpec) -> tuple:
    """Coefficients of ``(1 + u)^(-1)`` computed with the algebra product."""
    c = _norm_poly_coeffs(spec)
    u = zstar_z_poly(spec.n, [0] + c[1:], spec.backend)
    return tuple(spec.backend.coerce(v) for v in poly_coeffs(series_apply(recip1p, u)))


def normalization_coeffs(spec: LadderSpec) -> NormalizationTable:
    """a_0 = 1 and a_j = -sum_{m<j} a_m / P_{j-m}."""
    c = _norm_poly_coeffs(spec)
    a = [spec.backend.one]
    for j in range(1, spec.n + 1):
        s = spec.backend.zero
        for m in range(j):
            s = s + a[m] * c[j - m]
        a.append(-s)
    return NormalizationTable(spec, tuple(spec.backend.coerce(v) for v in a), inverse_series_oracle(spec))


def closed_form_a(spec: LadderSpec) -> tuple:
    """Explicit a_0..a_3 (truncated at n) in terms of the P_k."""
    one = spec.backend.one
    c = [one / spec.abs2_prod(k) for k in range(min(spec.n, 3) + 1)]
    out = [one]
    if spec.n >= 1:
        out.append(-c[1])
    if spec.n >= 2:
        out.append(-c[2] + c[1] * c[1])
    if spec.n >= 3:
        out.append(-c[3] + 2 * c[1] * c[2] - c[1] * c[1] * c[1])
    return tuple(spec.backend.coerce(v) for v in out)


def norm_operator(spec: LadderSpec, table: NormalizationTable | None = None, g: int = 0,
                  ngen: int = 1) -> Element:
    """N(zeta*zeta) = sqrt(sum_j a_j zeta*^j zeta^j) via the binomial series."""
    table = table or normalization_coeffs(spec)
    n2 = zstar_z_poly(spec.n, table.a, spec.backend, g, ngen)
    return series_apply(sqrt1p, n2 - 1)


# ---------------------------------------------------------------------------
# states


def _cs(spec: LadderSpec, signs, normalized: bool, g: int, ngen: int) -> Element:
    n, backend = spec.n, spec.backend
    z = Element.generator(n, g, False, backend, ngen)
    state = Element.zero(n, "ket", backend, ngen)
    power = Element.scalar(n, 1, backend)
    for k in range(n + 1):
        state = state + power * Element.basis_ket(n, k, backend) * (signs(k) / spec.alpha_prod(k))
        power = power * z
    if normalized:
        state = norm_operator(spec, None, g, ngen) * state
    return state


def right_cs(spec: LadderSpec, normalized: bool = False, g: int = 0, ngen: int = 1) -> Element:
    """sum_k (-1)^k zeta^k / (alpha_0...alpha_{k-1}) |k>, optionally times N."""
    return _cs(spec, lambda k: (-1) ** k, normalized, g, ngen)


def left_cs(spec: LadderSpec, normalized: bool = False, g: int = 0, ngen: int = 1) -> Element:
    """sum_k (-1)^floor((k+1)/2) zeta^k / (alpha_0...alpha_{k-1}) |k>, optionally times N."""
    return _cs(spec, lambda k: (-1) ** ((k + 1) // 2), normalized, g, ngen)


def cs_state(spec: LadderSpec, which: str) -> Element:
    """State by name: right-normalized, right-unnormalized, left-normalized, left-unnormalized."""
    side, _, norm = which.partition("-")
    build = {"right": right_cs, "left": left_cs}[side]
    return build(spec, normalized=(norm == "normalized"))


# ---------------------------------------------------------------------------
# right-CS properties


def verify_right_eigenproperties(spec: LadderSpec) -> Report:
    rep = Report()
    scope, n, backend = "right", spec.n, spec.backend
    alpha = None if spec.is_uniform else spec.alpha
    a = build_general_ladder(spec)
    ad = a.adjoint()
    z = Element.generator(n, 0, False, backend)
    zs = Element.generator(n, 0, True, backend)
    raw = right_cs(spec)
    state = right_cs(spec, normalized=True)
    bra = state.adjoint()

    rep.add(scope, "right-eigen-unnormalized", n, a * raw == raw * z, alpha=alpha)
    rep.add(scope, "right-eigen-normalized", n, a * state == state * z, alpha=alpha)
    ok = all(a ** k * state == state * z ** k for k in range(n + 2))
    rep.add(scope, "right-eigen-powers", n, ok, alpha=alpha)
    rep.add(scope, "right-unit-norm", n, bra * state == Element.scalar(n, 1, backend), alpha=alpha)
    bad = [(j, k) for j in range(n + 1) for k in range(n + 1)
           if bra * ad ** j * a ** k * state != zs ** j * z ** k]
    rep.add(scope, "right-mean-values", n, not bad, detail=f"failing (j, k): {bad}" if bad else "",
            alpha=alpha)
    norm = raw.adjoint() * raw
    want = zstar_z_poly(n, _norm_poly_coeffs(spec), backend)
    rep.add(scope, "right-norm-polynomial", n, norm == want, alpha=alpha)

    table = normalization_coeffs(spec)
    detail = "" if table.matches_oracle else (
        f"recurrence {_fmt(table.a)} vs in-algebra (1+u)^-1 {_fmt(table.oracle)}; differ at j = {table.mismatches()}")
    rep.add(scope, "normalization-recurrence-vs-inverse-series", n,
            PASS if table.matches_oracle else DISCREPANCY, detail, alpha)
    closed = closed_form_a(spec)
    rep.add(scope, "normalization-closed-forms", n,
            all(backend.is_zero(x - y) for x, y in zip(table.a, closed)), alpha=alpha)
    return rep


def _fmt(values) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def overlap_two_generators(n: int, spec: LadderSpec | None = None) -> tuple[Element, Element, bool]:
    """<zeta|eta>_r against (1 + sum_k zeta*^k eta^k / P_k) N(zeta* zeta) N(eta* eta).

    Returns ``(engine, factorized, equal)``; zeta is generator 0, eta
    generator 1. The factorized form moves both N factors to the right,
    which is exact only while zeta* zeta commutes with zeta*^k eta^k (n = 1).
    """
    spec = spec or LadderSpec.uniform(n)
    engine = _overlap(spec)
    closed = _overlap_poly(spec) * norm_operator(spec, None, 0, 2) * norm_operator(spec, None, 1, 2)
    return engine, closed, engine == closed


def _overlap(spec: LadderSpec) -> Element:
    zeta = right_cs(spec, normalized=True, g=0, ngen=2)
    eta = right_cs(spec, normalized=True, g=1, ngen=2)
    return zeta.adjoint() * eta


def _overlap_poly(spec: LadderSpec, middle: Element | None = None) -> Element:
    n, backend = spec.n, spec.backend
    zs = Element.generator(n, 0, True, backend, 2)
    et = Element.generator(n, 1, False, backend, 2)
    out = Element.zero(n, "scalar", backend, 2)
    for k in range(n + 1):
        term = zs ** k * middle * et ** k if middle is not None else zs ** k * et ** k
        out = out + term / spec.abs2_prod(k)
    return out


def verify_overlap(spec: LadderSpec) -> Report:
    """Two-generator scalar product of normalized right CS."""
    rep = Report()
    scope, n, backend = "right", spec.n, spec.backend
    alpha = None if spec.is_uniform else spec.alpha
    engine, closed, equal = overlap_two_generators(n, spec)
    rep.add(scope, "overlap-factorized-form", n, PASS if equal else DISCREPANCY,
            "" if equal else f"{len((engine - closed).terms)} monomials differ", alpha)
    nz = norm_operator(spec, None, 0, 2)
    ne = norm_operator(spec, None, 1, 2)
    rep.add(scope, "overlap-sandwich-form", n, engine == _overlap_poly(spec, nz * ne), alpha=alpha)
    raw = right_cs(spec, g=0, ngen=2).adjoint() * right_cs(spec, g=1, ngen=2)
    rep.add(scope, "overlap-unnormalized-polynomial", n, raw == _overlap_poly(spec), alpha=alpha)
    if n == 1 and spec.is_uniform:
        zs = Element.generator(1, 0, True, backend, 2)
        z = Element.generator(1, 0, False, backend, 2)
        es = Element.generator(1, 1, True, backend, 2)
        e = Element.generator(1, 1, False, backend, 2)
        want = (1 + zs * e) * (1 - zs * z / 2) * (1 - es * e / 2)
        rep.add(scope, "overlap-fermion-closed-form", n, engine == want)
    return rep


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightTable:
    """w_0..w_n with ``W = sum_i w_i zeta*^i zeta^i``."""

    n: int
    kind: str
    w: tuple
    alpha: tuple | None = None

    @property
    def primed(self) -> list:
        return to_primed(self.w)

    def element(self, backend) -> Element:
        return zstar_z_poly(self.n, self.w, backend)


def resolution_operator(weight: Element, state: Element, g: GTable) -> Element:
    """int dzeta* dzeta W |state><state|, integrand ordered weight, ket, bra."""
    return integrate(weight * state * state.adjoint(), g)


def solve_weight_for_state(state: Element, g: GTable, kind: str = "custom",
                           alpha=None) -> WeightTable:
    """Solve the moment equations for W by descending triangular substitution.

    Column i of the system is the diagonal of ``int b_i |state><state|``.
    The equation for basis index k involves only w_0..w_{n-k}, with pivot
    on w_{n-k}; a zero pivot or a nonzero off-diagonal entry is an error.
    """
    n, backend = state.n, state.backend
    proj = state * state.adjoint()
    cols = []
    for i in range(n + 1):
        m = integrate(b_element(n, i, backend) * proj, g)
        for key in m.terms:
            if (key >> 8) & 0xFF != key & 0xFF:
                raise ArithmeticError(f"moment operator for w_{i} is not diagonal")
        cols.append(m.payload())
    w = [None] * (n + 1)
    for k in range(n, -1, -1):
        p = n - k
        rhs = backend.one
        for i in range(p):
            rhs = rhs - cols[i][k][k] * w[i]
        for i in range(p + 1, n + 1):
            if not backend.is_zero(cols[i][k][k]):
                raise ArithmeticError(f"moment system is not triangular at k = {k}, i = {i}")
        pivot = cols[p][k][k]
        if backend.is_zero(pivot):
            raise ArithmeticError(f"zero pivot for w_{p}")
        w[p] = backend.coerce(rhs / pivot)
    return WeightTable(n, kind, tuple(w), alpha)


def solve_weight(spec: LadderSpec, kind: str = "normalized-right", g: GTable | None = None) -> WeightTable:
    """w (kind ``normalized-right``) or w-tilde (kind ``unnormalized``) for right CS."""
    g = g or g_recurrence(spec.n)
    if kind == "normalized-right":
        state = right_cs(spec, normalized=True)
    elif kind == "unnormalized":
        state = right_cs(spec)
    else:
        raise ValueError(f"unknown right-CS weight kind {kind!r}")
    return solve_weight_for_state(state, g, kind, spec.alpha)


def verify_resolution(spec: LadderSpec, states: str, weights: WeightTable,
                      g: GTable | None = None) -> bool:
    g = g or g_recurrence(spec.n)
    state = cs_state(spec, states)
    res = resolution_operator(weights.element(spec.backend), state, g)
    return res == Element.identity(spec.n, spec.backend)


def closed_form_w_n3(spec: LadderSpec) -> tuple:
    """Explicit n = 3 weight coefficients of the normalized right CS."""
    if spec.n != 3:
        raise ValueError("closed form is for n = 3")
    a = normalization_coeffs(spec).a
    p0, p1, p2 = (spec.abs2_prod(k) for k in (1, 2, 3))
    _, a1, a2, a3 = a
    w0 = p2
    w1 = -p1 - a1 * p2
    w2 = p0 - p2 - a1 * (p1 + a1 * p2) - a2 * p2
    w3 = (-1 + p1 + a3 * p2 + a2 * (p1 + a1 * p2)
          - a1 * (p0 - p2 - a1 * p1 - a1 * a1 * p2 - a2 * p2))
    return tuple(spec.backend.coerce(v) for v in (w0, w1, w2, w3))


def closed_form_wtilde_n3(spec: LadderSpec) -> tuple:
    """Explicit n = 3 weight coefficients of the unnormalized right CS."""
    if spec.n != 3:
        raise ValueError("closed form is for n = 3")
    p0, p1, p2 = (spec.abs2_prod(k) for k in (1, 2, 3))
    return tuple(spec.backend.coerce(v) for v in (p2, -p1, p0 - p2, -1 + p1))


# ---------------------------------------------------------------------------
# left CS


def left_power_sign(spec: LadderSpec, k: int) -> int:
    """s with ``A^k ||zeta>_l = s zeta^k ||zeta>_l``; 0 if neither sign holds."""
    a = build_general_ladder(spec)
    z = Element.generator(spec.n, 0, False, spec.backend)
    state = left_cs(spec)
    lhs = a ** k * state
    rhs = z ** k * state
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return 0


def verify_left_properties(spec: LadderSpec, weights: WeightTable | None = None,
                           g: GTable | None = None) -> Report:
    rep = Report()
    scope, n, backend = "left", spec.n, spec.backend
    alpha = None if spec.is_uniform else spec.alpha
    g = g or g_recurrence(n)
    a = build_general_ladder(spec)
    z = Element.generator(n, 0, False, backend)
    raw = left_cs(spec)
    nrm = norm_operator(spec)
    state = nrm * raw

    rep.add(scope, "left-eigen", n, a * raw == z * raw, alpha=alpha)
    want = zstar_z_poly(n, _norm_poly_coeffs(spec), backend)
    rep.add(scope, "left-norm-hermitian-form", n, raw.adjoint() * raw == want, alpha=alpha)
    rep.add(scope, "left-normalization-equals-right", n,
            state.adjoint() * state == Element.scalar(n, 1, backend), alpha=alpha)
    lhs = a * state
    rep.add(scope, "left-normalized-pulls-through-N", n, lhs == nrm * z * raw, alpha=alpha)
    if n > 1:
        rep.add(scope, "left-normalized-not-eigenstate", n, lhs != z * state, alpha=alpha)
    if n == 1:
        rep.add(scope, "left-equals-right-at-n1", n, raw == right_cs(spec), alpha=alpha)

    for k in range(1, n + 1):
        s = left_power_sign(spec, k)
        stated = (-1) ** (k - 1)
        derived = (-1) ** (k * (k - 1) // 2)
        detail = f"measured {s:+d}, stated (-1)^(k-1) = {stated:+d}, (-1)^(k(k-1)/2) = {derived:+d}"
        if s == stated:
            status = PASS
        elif k <= 2 or s == 0:
            status = FAIL
        else:
            status = DISCREPANCY
        rep.add(scope, f"left-power-sign-k{k}", n, status, detail, alpha)

    weights = weights or solve_weight(spec, "normalized-right", g)
    res = resolution_operator(weights.element(backend), state, g)
    rep.add(scope, "left-resolution-with-right-weight", n, res == Element.identity(n, backend), alpha=alpha)
    return rep

