"""Series assembly, prepotential, evaluation, and the coefficient cache."""

import json
import os

import pytest

from instvol.algebra import FactoredRational, Polynomial
from instvol.errors import PoleAtAssignment, StructureError
from instvol.nekrasov import (
    QSeries,
    charge_coefficient,
    evaluate,
    finst,
    parameter_table,
    reexponentiate,
    series_exp,
    series_log,
    zinst,
)
from instvol.rational import rat

from conftest import frac, lf


def _u1_expected(t):
    e1 = lf(t, eps1=1)
    e2 = lf(t, eps2=1)
    return [
        FactoredRational.one(t),
        FactoredRational(t, 1, Polynomial.one(t), [(e1, 1), (e2, 1)]),
        FactoredRational(t, rat(1, 2), Polynomial.one(t), [(e1, 2), (e2, 2)]),
        FactoredRational(t, rat(1, 6), Polynomial.one(t), [(e1, 3), (e2, 3)]),
    ]


def test_zinst_u1_values(tmp_path):
    z = zinst("su", 1, 2, cache_dir=str(tmp_path))
    expected = _u1_expected(z.coefficients[0].table)
    for got, want in zip(z.coefficients, expected[:3]):
        assert got.equals(want)


def test_zinst_charge_zero_only():
    z = zinst("su", 3, 0, bypass_cache=True)
    assert len(z.coefficients) == 1
    assert z.coefficients[0].equals(
        FactoredRational.one(parameter_table("su", 3))
    )


def test_zinst_tau_symmetry(tmp_path):
    from instvol.suite import _relabel

    z = zinst("su", 2, 2, cache_dir=str(tmp_path))
    for coeff in z.coefficients[1:]:
        swapped = _relabel(coeff, {"tau1": "tau2", "tau2": "tau1"})
        assert swapped.equals(coeff)


def test_finst_u1_law(tmp_path):
    z = zinst("su", 1, 3, cache_dir=str(tmp_path))
    f = finst(z)
    t = z.coefficients[0].table
    assert f.coefficients[0].is_zero()
    assert f.coefficients[1].equals(FactoredRational.one(t))
    assert f.coefficients[2].is_zero()
    assert f.coefficients[3].is_zero()


def test_finst_of_constant_series_is_zero():
    t = parameter_table("su", 1)
    z = QSeries("su", 1, [FactoredRational.one(t)])
    f = finst(z)
    assert all(c.is_zero() for c in f.coefficients)


def test_exp_log_roundtrip(tmp_path):
    z = zinst("su", 2, 2, cache_dir=str(tmp_path))
    back = reexponentiate(finst(z))
    assert all(a.equals(b) for a, b in zip(z.coefficients, back.coefficients))


def test_series_log_requires_unit_constant():
    t = parameter_table("su", 1)
    with pytest.raises(StructureError):
        series_log([FactoredRational.zero(t)])
    with pytest.raises(StructureError):
        series_exp([FactoredRational.one(t)])


def test_evaluate_examples(tmp_path):
    t = parameter_table("su", 1)
    half = frac(t, den_forms=[lf(t, eps1=2)])
    assert evaluate(half, {"eps1": rat(3)}) == rat(1, 6)
    z = zinst("su", 1, 2, cache_dir=str(tmp_path))
    values = evaluate(z, {"eps1": rat(1), "eps2": rat(2)})
    assert values == [rat(1), rat(1, 2), rat(1, 8)]
    with pytest.raises(PoleAtAssignment):
        evaluate(z, {"eps1": rat(0), "eps2": rat(2)})


def test_evaluate_commutes_with_multiplication():
    import random

    t = parameter_table("su", 1)
    rng = random.Random(5)
    a = frac(t, num_forms=[lf(t, eps1=1, eps2=3)], den_forms=[lf(t, eps1=1)])
    b = frac(t, den_forms=[lf(t, eps2=1), lf(t, eps1=1, eps2=-1)])
    for _ in range(10):
        point = {
            "eps1": rat(rng.randint(1, 30), rng.randint(1, 7)),
            "eps2": rat(rng.randint(31, 60), rng.randint(1, 7)),
        }
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_coefficient_degree_law(tmp_path):
    for n, k in [(1, 2), (2, 1)]:
        coeff = charge_coefficient("su", n, k, cache_dir=str(tmp_path))
        assert coeff.homogeneity_degree() == -2 * n * k


def test_cache_hit_equals_cold_value(tmp_path):
    cold = charge_coefficient("su", 2, 1, cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    warm = charge_coefficient("su", 2, 1, cache_dir=str(tmp_path))
    assert warm.equals(cold)
    bypass = charge_coefficient("su", 2, 1, cache_dir=str(tmp_path), bypass_cache=True)
    assert bypass.equals(cold)
    # a cache entry is a valid, versioned document
    doc = json.loads(files[0].read_text())
    assert "scalar" in doc and "denominator" in doc


def test_cache_key_distinguishes_conventions(tmp_path):
    a = charge_coefficient("sp", 1, 2, "paper", cache_dir=str(tmp_path))
    b = charge_coefficient("sp", 1, 2, "halved", cache_dir=str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 2
    assert not a.equals(b)


def test_parallel_series_matches_sequential(tmp_path):
    seq = zinst("su", 1, 2, jobs=1, bypass_cache=True)
    par = zinst("su", 1, 2, jobs=2, bypass_cache=True)
    assert all(a.equals(b) for a, b in zip(seq.coefficients, par.coefficients))


def test_qseries_json_roundtrip(tmp_path):
    z = zinst("su", 1, 2, cache_dir=str(tmp_path))
    doc = z.to_json()
    back = QSeries.from_json(doc)
    assert back.group == "su" and back.n == 1
    assert all(a.equals(b) for a, b in zip(z.coefficients, back.coefficients))
