"""Generalized Berezin integration over one (n+1)-nilpotent generator pair.

The functional is fixed by ``int dzeta* dzeta zeta^i zeta*^k = delta_ik g_k``
on canonically ordered monomials, with integer weights g_0..g_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._pykernel import FIELD_BITS, MAX_GEN
from .algebra import Element
from .report import Report

__all__ = ["GTable", "g_recurrence", "g_closed", "integrate", "resolution_ok", "verify_berezin"]

_FMASK = (1 << FIELD_BITS) - 1
_STAR_SHIFT = FIELD_BITS * MAX_GEN


@dataclass(frozen=True)
class GTable:
    n: int
    g: tuple[int, ...]

    def __post_init__(self):
        if len(self.g) != self.n + 1:
            raise ValueError(f"g-table for n = {self.n} needs {self.n + 1} entries")
        object.__setattr__(self, "g", tuple(int(v) for v in self.g))

    def __getitem__(self, k: int) -> int:
        return self.g[k]

    def __iter__(self):
        return iter(self.g)

    def satisfies_recurrence(self) -> bool:
        return self.g[self.n] == 1 and all(
            self.g[k] - (-1) ** (k + 1) * self.g[k + 1] == 1 for k in range(self.n)
        )


def _check_n(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def g_recurrence(n: int) -> GTable:
    """g_n = 1, then g_k = 1 + (-1)^(k+1) g_{k+1} downwards."""
    _check_n(n)
    g = [0] * (n + 1)
    g[n] = 1
    for k in range(n - 1, -1, -1):
        g[k] = 1 + (-1) ** (k + 1) * g[k + 1]
    return GTable(n, tuple(g))


def g_closed(n: int) -> GTable:
    """g_k = 1 + sum_{i=1}^{n-k} (-1)^(k i + i(i+1)/2)."""
    _check_n(n)
    return GTable(n, tuple(
        1 + sum((-1) ** (k * i + i * (i + 1) // 2) for i in range(1, n - k + 1))
        for k in range(n + 1)
    ))


def integrate(x: Element, g: GTable) -> Element:
    """Apply the integration functional monomial by monomial.

    Only ``zeta^k zeta*^k`` terms survive, each weighted by ``g_k``. The
    result is a generator-free element of the same payload kind as ``x``.
    Raises ``ValueError`` if ``x`` involves a generator other than the first.
    """
    if g.n != x.n:
        raise ValueError(f"g-table is for n = {g.n}, element has n = {x.n}")
    if x.generator_support() - {0}:
        raise ValueError("integration is defined for single-generator elements only")
    out: dict = {}
    for key, v in x.terms.items():
        mon = key >> 16
        a = mon & _FMASK
        b = (mon >> _STAR_SHIFT) & _FMASK
        if a != b or not g.g[a]:
            continue
        slot = key & 0xFFFF
        w = v * g.g[a]
        out[slot] = out[slot] + w if slot in out else w
    return Element(x.n, x.kind, out, x.backend, x.ngen)


def resolution_ok(state: Element, g: GTable, weight: Element | None = None) -> bool:
    """Whether int W |state><state| is the identity (W = 1 by default)."""
    proj = state * state.adjoint()
    if weight is not None:
        proj = weight * proj
    return integrate(proj, g) == Element.identity(state.n, state.backend)


def verify_berezin(n: int, g: GTable | None = None) -> Report:
    """Table identities and the fermion-CS resolution integrals I_k."""
    from .algebra import Monomial

    rep = Report()
    scope = "berezin"
    rec, closed = g_recurrence(n), g_closed(n)
    g = rec if g is None else g
    rep.add(scope, "g-recurrence-equals-closed-form", n, rec == closed,
            detail="" if rec == closed else f"recurrence {rec.g} closed {closed.g}")
    rep.add(scope, "g-recurrence-holds", n, g.satisfies_recurrence(), detail=f"g = {list(g.g)}")
    if n % 2 == 1:
        rep.add(scope, "g-odd-pattern", n, g.g == tuple(k % 2 for k in range(n + 1)))
    if n >= 3:
        ok = g.g[n - 1] == 1 + (-1) ** n and g.g[n - 2] == (-1) ** (n - 1) and g.g[n - 3] == 0
        rep.add(scope, "g-top-four-values", n, ok)
    # (1 - zeta* zeta) zeta^k zeta*^k must integrate to 1 for every k
    t = Element.monomial(Monomial.of(n, 1, 1), -1)  # zeta* zeta = -zeta zeta*
    ok = True
    for k in range(n + 1):
        val = integrate((1 - t) * Element.monomial(Monomial.of(n, k, k)), g)
        ok &= val == Element.scalar(n, 1)
    rep.add(scope, "projector-integrals-unity", n, ok)
    return rep
