import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paragrass.fock import (
    LadderSpec,
    build_annihilator,
    build_general_ladder,
    build_number_operator,
    diag_relation,
    energies,
    polynomial_form,
    proportional_to_number,
    random_alpha,
    verify_core_relations,
    verify_ladder_relations,
)
from paragrass.report import IdentityViolation
from paragrass.scalars import GaussianRational, float_backend

seeds = st.integers(0, 2 ** 32 - 1)


def dense(x):
    """Generator-free operator element as a nested list."""
    return [list(row) for row in x.payload()]


def matmul(a, b):
    size = len(a)
    return [[sum((a[i][m] * b[m][j] for m in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]


def dagger(a):
    return [[a[j][i].conjugate() for j in range(len(a))] for i in range(len(a))]


def matpow(a, k):
    size = len(a)
    out = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for _ in range(k):
        out = matmul(out, a)
    return out


@pytest.mark.parametrize("n", range(1, 9))
def test_core_relations(n):
    rep = verify_core_relations(n)
    assert rep.ok, rep.failures()
    assert all(c.status == "pass" for c in rep)


@pytest.mark.parametrize("n", range(1, 7))
def test_anticommutator_dense_oracle(n):
    size = n + 1
    a = [[Fraction(int(j == i + 1)) for j in range(size)] for i in range(size)]
    ad = [[a[j][i] for j in range(size)] for i in range(size)]
    lhs = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(matmul(a, ad), matmul(matpow(ad, n), matpow(a, n)))]
    assert lhs == [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    assert dense(build_annihilator(n)) == a


@pytest.mark.parametrize("n", range(1, 7))
def test_number_operator_is_diag(n):
    num = dense(build_number_operator(n))
    assert [num[k][k] for k in range(n + 1)] == list(range(n + 1))


@given(seeds, st.integers(2, 6))
def test_polynomial_form_random(seed, n):
    spec = LadderSpec(n, random_alpha(n, random.Random(seed)))
    coeffs, ok = polynomial_form(spec)
    assert ok
    # telescoping: the k-th superdiagonal entry is the partial sum of coefficients
    for k in range(n):
        assert sum(coeffs[: k + 1], 0) == spec.alpha[k]


@given(seeds, st.integers(2, 6))
def test_diag_relation_random(seed, n):
    spec = LadderSpec(n, random_alpha(n, random.Random(seed)))
    d = diag_relation(spec)
    assert d[:n] == [a.abs2() for a in spec.alpha]
    assert d[n] == math.prod((a.abs2() for a in spec.alpha), start=Fraction(1))


def test_diag_relation_raises_on_bad_ladder(monkeypatch):
    spec = LadderSpec(3, (1, 2, 3))
    import paragrass.fock as fock

    real = fock.build_general_ladder
    monkeypatch.setattr(fock, "build_general_ladder", lambda s: real(s) * 2)
    with pytest.raises(IdentityViolation):
        diag_relation(spec)


@given(seeds, st.integers(1, 6))
def test_ladder_relations_random(seed, n):
    spec = LadderSpec(n, random_alpha(n, random.Random(seed)))
    rep = verify_ladder_relations(spec)
    assert rep.ok, rep.failures()


def test_energies_and_equidistance():
    spec = LadderSpec(3, (1, 2, 3))
    assert energies(spec) == [0, 1, 4, 9]
    assert not proportional_to_number(spec)
    assert proportional_to_number(LadderSpec(2, (1, GaussianRational(1, 1))))


@pytest.mark.parametrize("j", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])
def test_spin_presets(j):
    spec = LadderSpec.spin(j, 1e-10)
    _, ok = polynomial_form(spec)
    assert ok
    assert verify_ladder_relations(spec).ok
    # J_- of spin j: m -> m-1 matrix elements sqrt(j(j+1) - m(m-1))
    n = int(2 * j)
    for k in range(n):
        m = -j + k + 1
        assert spec.alpha[k] == pytest.approx(math.sqrt(j * (j + 1) - m * (m - 1)))


def test_spec_validation():
    with pytest.raises(ValueError):
        LadderSpec(2, (1,))
    with pytest.raises(ValueError):
        LadderSpec(2, (1, 0))
    with pytest.raises(ValueError):
        LadderSpec(13, (1,) * 13)
    with pytest.raises(ValueError):
        LadderSpec.spin(Fraction(1, 3))
    assert LadderSpec.uniform(3).is_uniform
    assert build_general_ladder(LadderSpec.uniform(3)) == build_annihilator(3)
    assert LadderSpec(2, (1.0, 2.0), float_backend()).abs2_prod(2) == pytest.approx(4.0)
