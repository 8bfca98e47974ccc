"""Weight systems, central functions, volumes, validation."""

import pytest

from instvol.algebra import FactoredRational, Polynomial
from instvol.errors import ValidationError
from instvol.quotient import (
    WeightSystem,
    c4_hyperkahler_example,
    central_function,
    circle_reduction_example,
    equivariant_volume,
    validate_polarization,
    weight_system_from_json,
    weight_system_to_json,
)
from instvol.rational import rat

from conftest import frac, lf, table


def test_central_function_c4():
    ws = c4_hyperkahler_example()
    t = ws.table
    expected = frac(
        t,
        num_forms=[lf(t, tau1=1, tau2=1)],
        den_forms=list(ws.v_weights),
    )
    assert central_function(ws).equals(expected)


def test_central_function_basic():
    ws = circle_reduction_example()
    t = ws.table
    assert central_function(ws).equals(
        frac(t, den_forms=[lf(t, s1=1, tau1=1), lf(t, s1=-1, tau1=1)])
    )


def test_central_function_symplectic_variant():
    # without moment-map weights only the numerator changes
    t = table("s1:gauge", "tau1:framing")
    ws = WeightSystem(
        table=t,
        v_weights=(lf(t, s1=1, tau1=-1),),
        cutting_circle={"tau1": -1},
    )
    f = central_function(ws)
    assert f.equals(frac(t, den_forms=[lf(t, s1=1, tau1=-1)]))


def test_volume_basic_and_c4():
    ws = circle_reduction_example()
    t = ws.table
    assert equivariant_volume(ws).equals(
        FactoredRational(t, rat(1, 2), Polynomial.one(t), [(lf(t, tau1=1), 1)])
    )
    ws = c4_hyperkahler_example()
    t = ws.table
    assert equivariant_volume(ws).equals(
        FactoredRational(
            t,
            rat(1, 2),
            Polynomial.one(t),
            [(lf(t, tau1=1), 1), (lf(t, tau2=1), 1)],
        )
    )


def test_volume_degree_matches_central_plus_rank():
    ws = c4_hyperkahler_example()
    v = equivariant_volume(ws)
    assert (
        v.homogeneity_degree()
        == central_function(ws).homogeneity_degree() + 1
    )


def test_validate_polarization_flags_flipped_weight():
    from instvol.adhm import su_system

    ws = su_system(2, 1)
    flipped = list(ws.v_weights)
    idx = next(
        i for i, w in enumerate(flipped) if w == lf(ws.table, s1=1, tau1=-1)
    )
    flipped[idx] = lf(ws.table, s1=-1, tau1=1)
    bad = WeightSystem(
        table=ws.table,
        v_weights=tuple(flipped),
        muc_weights=ws.muc_weights,
        roots=ws.roots,
        weyl_order=ws.weyl_order,
        prefactor=ws.prefactor,
        cutting_circle=ws.cutting_circle,
    )
    report = validate_polarization(bad)
    assert not report["ok"]
    assert any(w == lf(ws.table, s1=-1, tau1=1) for w, _ in report["violations"])
    with pytest.raises(ValidationError):
        equivariant_volume(bad)


def test_volume_order_override_must_permute_gauge():
    from instvol.adhm import su_system

    ws = su_system(1, 2)
    with pytest.raises(ValidationError):
        equivariant_volume(ws, order=["s1"])
    a = equivariant_volume(ws, order=["s2", "s1"])
    b = equivariant_volume(ws)
    assert a.equals(b)


def test_dropping_moment_map_changes_only_numerator():
    ws = c4_hyperkahler_example()
    plain = WeightSystem(
        table=ws.table,
        v_weights=ws.v_weights,
        muc_weights=(),
        roots=ws.roots,
        weyl_order=ws.weyl_order,
        prefactor=ws.prefactor,
        cutting_circle=ws.cutting_circle,
    )
    with_mu = central_function(ws)
    without = central_function(plain)
    assert with_mu.denominator == without.denominator
    assert not with_mu.numerator == without.numerator


def test_weight_system_json_roundtrip():
    ws = c4_hyperkahler_example()
    doc = weight_system_to_json(ws)
    back = weight_system_from_json(doc)
    assert back.table == ws.table
    assert back.v_weights == ws.v_weights
    assert back.muc_weights == ws.muc_weights
    assert back.weyl_order == ws.weyl_order
    assert back.prefactor == ws.prefactor
    assert equivariant_volume(back).equals(equivariant_volume(ws))
