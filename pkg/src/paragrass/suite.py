"""Verification suites by scope, as driven by ``paragrass verify``."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

from .algebra import Element, zeta_matrix_rep
from .berezin import GTable, g_recurrence, resolution_ok, verify_berezin
from .coherent import (
    closed_form_w_n3,
    closed_form_wtilde_n3,
    right_cs,
    solve_weight,
    verify_left_properties,
    verify_overlap,
    verify_right_eigenproperties,
)
from .displacement import verify_displacement
from .fock import LadderSpec, polynomial_form, random_alpha, verify_core_relations, verify_ladder_relations
from .report import DISCREPANCY, PASS, Report
from .scalars import EXACT, Backend

__all__ = ["SCOPES", "run", "run_scope"]

SCOPES = ("core", "berezin", "right", "left", "displacement")

SPIN_PRESETS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


def _specs(n: int, backend: Backend, rng: random.Random, samples: int) -> list[LadderSpec]:
    """alpha = 1 plus ``samples`` random vectors.

    Exact runs use small Gaussian rationals. Float runs keep |alpha_k| in
    [0.5, 1.5] so products stay O(1) against an absolute tolerance.
    """
    specs = [LadderSpec.uniform(n, backend)]
    for _ in range(samples):
        if backend.exact:
            alpha = random_alpha(n, rng)
        else:
            alpha = tuple(cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-math.pi, math.pi)) for _ in range(n))
        specs.append(LadderSpec(n, alpha, backend))
    return specs


def _g_for(n: int, overrides: dict[int, GTable]) -> GTable:
    return overrides.get(n) or g_recurrence(n)


def _core(n, backend, rng, samples, overrides, tolerance) -> Report:
    rep = verify_core_relations(n, backend)
    _, _, mrep = zeta_matrix_rep(n, backend)
    rep.extend(mrep)
    for spec in _specs(n, backend, rng, samples)[1:]:
        rep.extend(verify_ladder_relations(spec))
    for j in SPIN_PRESETS:
        if 2 * j == n:
            spec = LadderSpec.spin(j, tolerance)
            _, ok = polynomial_form(spec)
            rep.add("core", f"spin-{j}-polynomial-form", n, ok, alpha=spec.alpha)
            rep.extend(verify_ladder_relations(spec))
    return rep


def _berezin(n, backend, rng, samples, overrides, tolerance) -> Report:
    return verify_berezin(n, _g_for(n, overrides))


def _right(n, backend, rng, samples, overrides, tolerance) -> Report:
    rep = Report()
    g = _g_for(n, overrides)
    fermion = LadderSpec.uniform(n, backend)
    rep.add("right", "fermion-cs-resolution-of-identity", n, resolution_ok(right_cs(fermion, True), g),
            detail=f"g = {list(g.g)}")
    for spec in _specs(n, backend, rng, samples):
        alpha = None if spec.is_uniform else spec.alpha
        rep.extend(verify_right_eigenproperties(spec))
        for kind in ("normalized-right", "unnormalized"):
            try:
                w = solve_weight(spec, kind, g)
            except ArithmeticError as exc:
                rep.add("right", f"weight-{kind}-resolution-of-identity", n, False, str(exc), alpha)
                continue
            state = right_cs(spec, kind == "normalized-right")
            ok = resolution_ok(state, g, w.element(backend))
            rep.add("right", f"weight-{kind}-resolution-of-identity", n, ok,
                    "w = [" + ", ".join(str(v) for v in w.w) + "]", alpha)
            if spec.is_uniform:
                want = [1] + [0] * n if kind == "normalized-right" else [1, -1] + [0] * (n - 1)
                rep.add("right", f"weight-{kind}-uniform-reduction", n,
                        all(backend.is_zero(x - y) for x, y in zip(w.w, want)))
            if n == 3 and backend.exact:
                closed = closed_form_w_n3(spec) if kind == "normalized-right" else closed_form_wtilde_n3(spec)
                bad = [i for i in range(4) if not backend.is_zero(closed[i] - w.w[i])]
                detail = "; ".join(f"w_{i}: solved {w.w[i]}, explicit {closed[i]}" for i in bad)
                rep.add("right", f"weight-{kind}-explicit-n3", n, PASS if not bad else DISCREPANCY, detail, alpha)
        if n <= 4:
            rep.extend(verify_overlap(spec))
    return rep


def _left(n, backend, rng, samples, overrides, tolerance) -> Report:
    rep = Report()
    g = _g_for(n, overrides)
    for spec in _specs(n, backend, rng, samples):
        rep.extend(verify_left_properties(spec, g=g))
    return rep


def _displacement(n, backend, rng, samples, overrides, tolerance) -> Report:
    return verify_displacement(n, _g_for(n, overrides), backend)


_RUNNERS = {
    "core": _core,
    "berezin": _berezin,
    "right": _right,
    "left": _left,
    "displacement": _displacement,
}


def run_scope(scope: str, n: int, backend: Backend = EXACT, seed: int = 0, samples: int = 2,
              g_overrides: dict[int, GTable] | None = None, tolerance: float = 1e-10) -> Report:
    """Checks of one scope at one n; random alpha drawn from ``seed``."""
    rng = random.Random(f"{seed}:{scope}:{n}")
    return _RUNNERS[scope](n, backend, rng, samples, g_overrides or {}, tolerance)


def run(scopes, n_max: int, backend: Backend = EXACT, seed: int = 0, samples: int = 2,
        g_overrides: dict[int, GTable] | None = None, tolerance: float = 1e-10) -> Report:
    if scopes == "all":
        scopes = SCOPES
    elif isinstance(scopes, str):
        scopes = (scopes,)
    rep = Report()
    for scope in scopes:
        for n in range(1, n_max + 1):
            rep.extend(run_scope(scope, n, backend, seed, samples, g_overrides, tolerance))
    rep.checks.sort(key=lambda c: (c.scope, c.n or 0, c.identity))
    return rep

