"""Displacement-like operators exp(X) for n-fermions and the states they generate."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import Element, Monomial, exp_nilpotent
from .berezin import GTable, g_recurrence
from .coherent import WeightTable, resolution_operator, right_cs, solve_weight_for_state
from .fock import LadderSpec, basis_ket, build_annihilator
from .report import DISCREPANCY, PASS, Report
from .scalars import EXACT, Backend

__all__ = [
    "VARIANTS",
    "exponent",
    "displacement_operator",
    "displaced_state",
    "solve_weight_displaced",
    "PUBLISHED_STATES",
    "PUBLISHED_WEIGHTS",
    "published_state",
    "compare_state",
    "compare_weights",
    "verify_displacement",
]

VARIANTS = ("D", "Dprime")


def exponent(n: int, variant: str = "D", backend: Backend = EXACT) -> Element:
    """A^dag zeta - zeta* A (D) or sum_k A^dag^k zeta^k - zeta*^k A^k (Dprime)."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    a = build_annihilator(n, backend)
    ad = a.adjoint()
    z = Element.generator(n, 0, False, backend)
    zs = Element.generator(n, 0, True, backend)
    top = 1 if variant == "D" else n
    x = Element.zero(n, "operator", backend)
    for k in range(1, top + 1):
        x = x + ad ** k * z ** k - zs ** k * a ** k
    return x


def displacement_operator(n: int, variant: str = "D", backend: Backend = EXACT,
                          check: bool = True) -> Element:
    """exp of :func:`exponent`; with ``check`` the result must be unitary."""
    d = exp_nilpotent(exponent(n, variant, backend))
    if check and d.adjoint() * d != Element.identity(n, backend):
        raise ArithmeticError(f"{variant}({n}) is not unitary")
    return d


def displaced_state(n: int, variant: str = "D", backend: Backend = EXACT) -> Element:
    return displacement_operator(n, variant, backend) * basis_ket(n, 0, backend)


def solve_weight_displaced(n: int, variant: str = "D", g: GTable | None = None,
                           backend: Backend = EXACT) -> WeightTable:
    g = g or g_recurrence(n)
    return solve_weight_for_state(displaced_state(n, variant, backend), g, variant)


# ---------------------------------------------------------------------------
# published expansions; each term is (ket index, coefficient, starred exponent,
# unstarred exponent) for c zeta*^b zeta^a, factorials read literally


def _f(num, fact=0):
    return Fraction(num, factorial(fact)) if fact else Fraction(num)


PUBLISHED_STATES = {
    ("D", 2): [
        (0, _f(1), 0, 0), (0, _f(-1, 2), 1, 1),
        (1, _f(-1), 0, 1),
        (2, _f(-1, 2), 0, 2),
    ],
    ("D", 3): [
        (0, _f(1), 0, 0), (0, _f(-1, 2), 1, 1), (0, _f(-1, 6), 3, 3),
        (1, _f(-1), 0, 1), (1, _f(1, 5), 2, 3),
        (2, _f(-1, 2), 0, 2), (2, _f(1, 4), 1, 3),
        (3, _f(1, 3), 0, 3),
    ],
    ("Dprime", 2): [
        (0, _f(1), 0, 0), (0, _f(-1, 2), 1, 1), (0, _f(-1, 2), 2, 2),
        (1, _f(-1), 0, 1), (1, _f(-1, 2), 1, 2),
        (2, _f(1, 2), 0, 2),
    ],
    ("Dprime", 3): [
        (0, _f(1), 0, 0), (0, _f(-1, 2), 1, 1), (0, _f(-1, 2), 1, 2),
        (0, _f(-1, 4), 2, 3), (0, _f(-21, 5), 3, 3),
        (1, _f(-1), 0, 1), (1, _f(-1, 2), 1, 2), (1, _f(1, 3), 1, 3),
        (1, _f(59, 5), 2, 3), (1, _f(1, 4), 3, 3),
        (2, _f(1, 2), 0, 2), (2, _f(-7, 4), 1, 3), (2, _f(1, 3), 2, 3),
        (3, Fraction(2, 3), 0, 3), (3, _f(1, 4), 3, 3),
    ],
}

# w_0..w_n of sum_i w_i zeta*^i zeta^i
PUBLISHED_WEIGHTS = {
    ("D", 2): (Fraction(4), Fraction(-7), Fraction(-9)),
    ("D", 3): (Fraction(36), Fraction(2), Fraction(178, 5), Fraction(1382, 20)),
    ("Dprime", 2): (Fraction(4), Fraction(-11), Fraction(-9)),
    ("Dprime", 3): (Fraction(9, 4), Fraction(-11, 8), Fraction(-9, 10), Fraction(-143, 32)),
}


def published_state(variant: str, n: int) -> Element:
    """A published expansion normal-ordered into the engine's canonical form."""
    entries: dict = {}
    for k, c, b, a in PUBLISHED_STATES[(variant, n)]:
        sign = -1 if (a * b) % 2 else 1
        key = (Monomial.of(n, a, b), k, 0)
        entries[key] = entries.get(key, 0) + sign * c
    return Element.from_terms(n, "ket", entries)


def compare_state(variant: str, n: int) -> list[dict]:
    """Per-term comparison of the engine state with the published one.

    Each record has ``ket``, ``monomial``, ``engine``, ``published`` and
    ``match``; terms present on either side are listed.
    """
    engine = displaced_state(n, variant)
    published = published_state(variant, n)
    keys = sorted(set(engine.terms) | set(published.terms), key=lambda k: ((k >> 8) & 0xFF, k >> 16))
    out = []
    for key in keys:
        mono = Monomial.from_packed(n, key >> 16)
        e = engine.terms.get(key, EXACT.zero)
        p = published.terms.get(key, EXACT.zero)
        out.append({"ket": (key >> 8) & 0xFF, "monomial": str(mono), "engine": e, "published": p,
                    "match": e == p})
    return out


def compare_weights(variant: str, n: int, table: WeightTable | None = None) -> list[dict]:
    table = table or solve_weight_displaced(n, variant)
    published = PUBLISHED_WEIGHTS[(variant, n)]
    return [{"index": i, "engine": table.w[i], "published": published[i], "match": table.w[i] == published[i]}
            for i in range(n + 1)]


def verify_displacement(n: int, g: GTable | None = None, backend: Backend = EXACT) -> Report:
    rep = Report()
    scope = "displacement"
    g = g or g_recurrence(n)
    a = build_annihilator(n, backend)
    z = Element.generator(n, 0, False, backend)
    one = Element.identity(n, backend)
    states = {}
    for variant in VARIANTS:
        x = exponent(n, variant, backend)
        rep.add(scope, f"{variant}-exponent-anti-hermitian", n, x.adjoint() == -x)
        bound = 2 * n + 1
        rep.add(scope, f"{variant}-exponent-nilpotent", n, (x ** bound).is_zero())
        d = displacement_operator(n, variant, backend, check=False)
        rep.add(scope, f"{variant}-unitary", n, d.adjoint() * d == one and d * d.adjoint() == one)
        state = d * basis_ket(n, 0, backend)
        states[variant] = state
        rep.add(scope, f"{variant}-state-unit-norm", n, state.adjoint() * state == Element.scalar(n, 1, backend))
        if n > 1:
            not_eigen = a * state != state * z and a * state != z * state
            rep.add(scope, f"{variant}-state-not-eigenstate", n, not_eigen)
        try:
            w = solve_weight_for_state(state, g, variant)
            res = resolution_operator(w.element(backend), state, g)
            rep.add(scope, f"{variant}-resolution-of-identity", n, res == one,
                    detail="w = [" + ", ".join(str(v) for v in w.w) + "]")
        except ArithmeticError as exc:
            rep.add(scope, f"{variant}-resolution-of-identity", n, False, detail=str(exc))
            w = None
        if backend.exact and (variant, n) in PUBLISHED_STATES:
            bad = [r for r in compare_state(variant, n) if not r["match"]]
            status = PASS if not bad else DISCREPANCY
            detail = "; ".join(f"|{r['ket']}> {r['monomial']}: engine {r['engine']}, published {r['published']}"
                               for r in bad)
            if n == 2 and bad:
                status = "fail"
            rep.add(scope, f"{variant}-state-published-expansion", n, status, detail)
        if backend.exact and w is not None and (variant, n) in PUBLISHED_WEIGHTS:
            for r in compare_weights(variant, n, w):
                rep.add(scope, f"{variant}-weight-published-w{r['index']}", n,
                        PASS if r["match"] else DISCREPANCY,
                        f"engine {r['engine']}, published {r['published']}")
    if n == 1:
        cs = right_cs(LadderSpec.uniform(1, backend), normalized=True)
        rep.add(scope, "n1-reduces-to-fermion-cs", n, states["D"] == cs and states["Dprime"] == cs)
    if n >= 2:
        d = displacement_operator(n, "D", backend, check=False)
        diff = d.adjoint() * a * d - (a + z * one)
        rep.add(scope, "D-conjugation-not-translation", n, not diff.is_zero())
    return rep
