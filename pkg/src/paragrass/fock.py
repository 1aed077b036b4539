"""n-fermion ladder operators, Fock basis and general nilpotent ladders."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from .algebra import Element, check_degree
from .report import IdentityViolation, Report
from .scalars import EXACT, Backend, GaussianRational, float_backend

__all__ = [
    "LadderSpec",
    "basis_ket",
    "basis_bra",
    "build_annihilator",
    "build_creator",
    "build_number_operator",
    "verify_core_relations",
    "build_general_ladder",
    "polynomial_form",
    "diag_relation",
    "hamiltonian",
    "verify_ladder_relations",
    "random_alpha",
]


@dataclass(frozen=True)
class LadderSpec:
    """Order ``n`` and the transition amplitudes alpha_0..alpha_{n-1}.

    ``A(n, alpha) = sum_k alpha_k |k><k+1|``. With alpha_{-1} = 0 the
    products ``alpha_prod(k) = alpha_0 ... alpha_{k-1}`` and
    ``abs2_prod(k) = |alpha_0|^2 ... |alpha_{k-1}|^2`` are 1 at k = 0.
    """

    n: int
    alpha: tuple
    backend: Backend = EXACT

    def __post_init__(self):
        check_degree(self.n, self.backend)
        alpha = tuple(self.backend.coerce(a) for a in self.alpha)
        if len(alpha) != self.n:
            raise ValueError(f"need {self.n} alpha values, got {len(alpha)}")
        if any(self.backend.is_zero(a) for a in alpha):
            raise ValueError("alpha entries must be nonzero")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def uniform(cls, n: int, backend: Backend = EXACT) -> "LadderSpec":
        return cls(n, (1,) * n, backend)

    @classmethod
    def spin(cls, j, tolerance: float | None = None) -> "LadderSpec":
        """Spin-j lowering operator J_- with |j, m> -> |m + j>; float backend."""
        j = Fraction(j)
        if j <= 0 or (2 * j).denominator != 1:
            raise ValueError("spin must be a positive half-integer")
        n = int(2 * j)
        alpha = tuple(math.sqrt((k + 1) * (n - k)) for k in range(n))
        backend = float_backend() if tolerance is None else float_backend(tolerance)
        return cls(n, alpha, backend)

    def alpha_prod(self, k: int):
        out = self.backend.one
        for a in self.alpha[:k]:
            out = out * a
        return out

    def abs2_prod(self, k: int):
        out = self.backend.one
        for a in self.alpha[:k]:
            out = out * self.backend.abs2(a)
        return self.backend.coerce(out)

    @property
    def is_uniform(self) -> bool:
        return all(a == 1 for a in self.alpha)


def random_alpha(n: int, rng: random.Random, complex_values: bool = True, max_num: int = 9,
                 max_den: int = 5) -> tuple[GaussianRational, ...]:
    """Nonzero Gaussian rationals with small numerators and denominators."""
    out = []
    while len(out) < n:
        re = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        im = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) if complex_values else Fraction(0)
        if re or im:
            out.append(GaussianRational(re, im))
    return tuple(out)


def basis_ket(n: int, k: int, backend: Backend = EXACT) -> Element:
    return Element.basis_ket(n, k, backend)


def basis_bra(n: int, k: int, backend: Backend = EXACT) -> Element:
    return Element.basis_ket(n, k, backend).adjoint()


def build_annihilator(n: int, backend: Backend = EXACT) -> Element:
    """A(n) = sum_i |i><i+1|, the superdiagonal shift."""
    check_degree(n, backend)
    return Element(n, "operator", {(i << 8) | (i + 1): backend.one for i in range(n)}, backend)


def build_creator(n: int, backend: Backend = EXACT) -> Element:
    return build_annihilator(n, backend).adjoint()


def build_number_operator(n: int, backend: Backend = EXACT) -> Element:
    """N = sum_{m=1}^n A^dag^m A^m, which is diag(0, 1, ..., n)."""
    a = build_annihilator(n, backend)
    ad = a.adjoint()
    total = Element.zero(n, "operator", backend)
    am, adm = a.one_like(), a.one_like()
    for _ in range(n):
        am = am * a
        adm = adm * ad
        total = total + adm * am
    return total


def _commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def _diag(n: int, values, backend: Backend) -> Element:
    return Element(n, "operator", {(k << 8) | k: backend.coerce(v) for k, v in enumerate(values)}, backend)


def verify_core_relations(n: int, backend: Backend = EXACT) -> Report:
    """Exact matrix checks of the n-fermion algebra and its Fock states."""
    rep = Report()
    scope = "core"
    a = build_annihilator(n, backend)
    ad = a.adjoint()
    one = Element.identity(n, backend)
    vac = basis_ket(n, 0, backend)

    rep.add(scope, "nonlinear-anticommutator", n, a * ad + ad ** n * a ** n == one)
    rep.add(scope, "annihilator-nilpotent", n, (a ** (n + 1)).is_zero() and not (a ** n).is_zero())
    rep.add(scope, "creator-nilpotent", n, (ad ** (n + 1)).is_zero())
    rep.add(scope, "vacuum-annihilated", n, (a * vac).is_zero())
    rep.add(scope, "vacuum-return", n, a * ad * vac == vac)

    table_ok = True
    for i in range(n + 1):
        for k in range(n + 1):
            got = a ** i * ad ** k * vac
            want = Element.zero(n, "ket", backend) if i > k else basis_ket(n, k - i, backend)
            table_ok &= got == want
    rep.add(scope, "ladder-vacuum-table", n, table_ok)

    ortho = all(
        (basis_bra(n, 0, backend) * a ** i * ad ** k * vac)
        == Element.scalar(n, 1 if i == k else 0, backend)
        for i in range(n + 1) for k in range(n + 1)
    )
    rep.add(scope, "fock-orthonormal", n, ortho)

    states = [ad ** k * vac for k in range(n + 1)]
    rep.add(scope, "fock-states-are-basis", n, all(states[k] == basis_ket(n, k, backend) for k in range(n + 1)))
    steps = all(
        a * states[k] == (states[k - 1] if k else Element.zero(n, "ket", backend))
        and ad * states[k] == (states[k + 1] if k < n else Element.zero(n, "ket", backend))
        for k in range(n + 1)
    )
    rep.add(scope, "raise-lower-step-one", n, steps)

    num = build_number_operator(n, backend)
    rep.add(scope, "number-operator-diagonal", n, num == _diag(n, range(n + 1), backend))
    rep.add(scope, "number-eigenvalues", n,
            all(num * states[k] == states[k] * k for k in range(n + 1)))
    num2 = Element.zero(n, "operator", backend)
    for m in range(1, n + 1):
        num2 = num2 + ad ** m * a ** m * (2 * m - 1)
    rep.add(scope, "number-squared-expansion", n, num * num == num2)
    rep.add(scope, "annihilator-number-commutator", n, _commutator(a, num) == a)
    rep.add(scope, "creator-number-commutator", n, _commutator(ad, num) == -ad)

    proj = Element.zero(n, "operator", backend)
    for i in range(n):
        proj = proj + basis_ket(n, i, backend) * basis_bra(n, i + 1, backend)
    rep.add(scope, "shift-projector-form", n, proj == a)
    closure = Element.zero(n, "operator", backend)
    for i in range(n + 1):
        closure = closure + basis_ket(n, i, backend) * basis_bra(n, i, backend)
    rep.add(scope, "fock-completeness", n, closure == one)
    return rep


def build_general_ladder(spec: LadderSpec) -> Element:
    """A(n, alpha) = sum_k alpha_k |k><k+1|."""
    return Element(spec.n, "operator", {(k << 8) | (k + 1): a for k, a in enumerate(spec.alpha)}, spec.backend)


def hamiltonian(spec: LadderSpec) -> Element:
    """H = A^dag(n, alpha) A(n, alpha) = diag(eps_0 = 0, |alpha_0|^2, ...)."""
    a = build_general_ladder(spec)
    return a.adjoint() * a


def polynomial_form(spec: LadderSpec) -> tuple[tuple, bool]:
    """Coefficients of A(n, alpha) in the basis A, A^dag A^2, ..., A^dag^(n-1) A^n.

    Returns ``(coeffs, ok)`` where ``ok`` reports the exact matrix identity.
    """
    n, backend = spec.n, spec.backend
    coeffs = (spec.alpha[0],) + tuple(spec.alpha[m - 1] - spec.alpha[m - 2] for m in range(2, n + 1))
    a = build_annihilator(n, backend)
    ad = a.adjoint()
    total = a * coeffs[0]
    for m in range(2, n + 1):
        total = total + ad ** (m - 1) * a ** m * coeffs[m - 1]
    return coeffs, total == build_general_ladder(spec)


def diag_relation(spec: LadderSpec) -> list:
    """Diagonal of A A^dag + A^dag^n A^n for the general ladder.

    Raises :class:`IdentityViolation` unless it equals
    ``diag(|alpha_0|^2, ..., |alpha_{n-1}|^2, |alpha_0|^2 ... |alpha_{n-1}|^2)``.
    """
    n, backend = spec.n, spec.backend
    a = build_general_ladder(spec)
    ad = a.adjoint()
    got = a * ad + ad ** n * a ** n
    want = [backend.abs2(x) for x in spec.alpha] + [spec.abs2_prod(n)]
    if got != _diag(n, want, backend):
        raise IdentityViolation("A A^dag + A^dag^n A^n is not the expected diagonal")
    return [backend.coerce(v) for v in want]


def verify_ladder_relations(spec: LadderSpec) -> Report:
    rep = Report()
    scope, n, backend = "core", spec.n, spec.backend
    a = build_general_ladder(spec)
    ad = a.adjoint()
    zero_ket = Element.zero(n, "ket", backend)

    acts = True
    for k in range(n + 1):
        ket = basis_ket(n, k, backend)
        down = basis_ket(n, k - 1, backend) * spec.alpha[k - 1] if k else zero_ket
        up = basis_ket(n, k + 1, backend) * spec.alpha[k].conjugate() if k < n else zero_ket
        acts &= a * ket == down and ad * ket == up
        acts &= ad * a * ket == (ket * backend.abs2(spec.alpha[k - 1]) if k else zero_ket)
    rep.add(scope, "general-ladder-action", n, acts, alpha=spec.alpha)
    rep.add(scope, "general-ladder-nilpotent", n, (a ** (n + 1)).is_zero(), alpha=spec.alpha)
    _, ok = polynomial_form(spec)
    rep.add(scope, "general-ladder-polynomial-form", n, ok, alpha=spec.alpha)
    try:
        diag_relation(spec)
        ok = True
    except IdentityViolation:
        ok = False
    rep.add(scope, "general-ladder-diagonal", n, ok, alpha=spec.alpha)
    h = hamiltonian(spec)
    num = build_number_operator(n, backend)
    rep.add(scope, "hamiltonian-commutes-with-number", n, (_commutator(h, num)).is_zero(), alpha=spec.alpha)
    return rep


def energies(spec: LadderSpec) -> list:
    """eps_k = |alpha_{k-1}|^2 with eps_0 = 0, read off the Hamiltonian diagonal."""
    h = hamiltonian(spec)
    return [h.payload()[k][k] for k in range(spec.n + 1)]


def proportional_to_number(spec: LadderSpec) -> bool:
    """Whether H = c N for some scalar c (equidistant spectrum)."""
    h = hamiltonian(spec)
    num = build_number_operator(spec.n, spec.backend)
    c = h.payload()[1][1]
    return h == num * c
