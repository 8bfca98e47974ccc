"""Independent oracles: characters, contours, the cohomological limit,
partition sums."""

import pytest

from instvol.adhm import sp_system, su_system
from instvol.algebra import FactoredRational, Polynomial
from instvol.errors import BetaOrderMismatch, StructureError, UnsupportedFeature
from instvol.nekrasov import charge_coefficient
from instvol.oracle import (
    CharacterFunction,
    PoleSelectionPolicy,
    beta_limit,
    character_from_weights,
    contour_residue,
    contour_residue_sum,
    parameter_table_su,
    partition_sum_su,
    partition_tuples,
    partitions_of,
    run_character_oracle,
    tangent_weights,
)
from instvol.quotient import (
    c4_hyperkahler_example,
    circle_reduction_example,
    equivariant_volume,
)
from instvol.rational import rat

from conftest import frac, lf, table


def _mono(tab, **exps):
    e = [0] * len(tab)
    for name, k in exps.items():
        e[tab.index(name)] = k
    return tuple(e)


def test_character_from_c4_weights():
    ws = c4_hyperkahler_example()
    ch = character_from_weights(ws)
    t = ws.table
    assert ch.num_factors == ((_mono(t, tau1=1, tau2=1), 1),)
    assert set(ch.den_factors) == {
        (_mono(t, s1=1, tau1=1), 1),
        (_mono(t, s1=1, tau2=1), 1),
        (_mono(t, s1=-1, tau2=1), 1),
        (_mono(t, s1=-1, tau1=1), 1),
    }


def test_character_from_basic_weights():
    ws = circle_reduction_example()
    ch = character_from_weights(ws)
    t = ws.table
    assert ch.num_factors == ()
    assert set(ch.den_factors) == {
        (_mono(t, s1=1, tau1=1), 1),
        (_mono(t, s1=-1, tau1=1), 1),
    }


def test_character_rejects_fractional_weights():
    ws = sp_system(1, 1)
    with pytest.raises(UnsupportedFeature):
        character_from_weights(ws)


def test_character_rejects_constant_factor():
    t = table("s1:gauge", "tau1:framing")
    with pytest.raises(StructureError):
        CharacterFunction.build(t, 1, [], [((0, 0), 1)])


def test_contour_selects_small_poles_only():
    # (1 - s t1) is not selected (pole outside); (1 - t1/s) is (pole at t1)
    ws = c4_hyperkahler_example()
    t = ws.table
    ch = character_from_weights(ws)
    terms = contour_residue(ch, "s1")
    assert len(terms) == 2
    expected = [
        CharacterFunction.build(
            t,
            1,
            [(_mono(t, tau1=1, tau2=1), 1)],
            [
                (_mono(t, tau1=1, tau2=1), 1),
                (_mono(t, tau2=2), 1),
                (_mono(t, tau1=1, tau2=-1), 1),
            ],
        ),
        CharacterFunction.build(
            t,
            1,
            [(_mono(t, tau1=1, tau2=1), 1)],
            [
                (_mono(t, tau1=2), 1),
                (_mono(t, tau1=1, tau2=1), 1),
                (_mono(t, tau2=1, tau1=-1), 1),
            ],
        ),
    ]
    for e in expected:
        assert any(got == e for got in terms)


def test_contour_no_dependent_factor_gives_zero():
    t = table("s1:gauge", "tau1:framing")
    ch = CharacterFunction.build(t, 1, [], [(_mono(t, tau1=1), 1)])
    assert contour_residue(ch, "s1") == []


def test_contour_policy_flip_changes_selection():
    ws = c4_hyperkahler_example()
    ch = character_from_weights(ws)
    plus = contour_residue(ch, "s1", PoleSelectionPolicy(keep_exponent=1))
    assert len(plus) == 2


def test_contour_square_exponent_unsupported():
    t = table("s1:gauge", "tau1:framing")
    ch = CharacterFunction.build(t, 1, [], [(_mono(t, s1=-2, tau1=1), 1)])
    with pytest.raises(UnsupportedFeature):
        contour_residue(ch, "s1")


def test_beta_limit_c4():
    ws = c4_hyperkahler_example()
    t = ws.table
    terms = contour_residue_sum([character_from_weights(ws)], "s1")
    result = beta_limit(terms, 2)
    assert result.equals(
        FactoredRational(
            t,
            rat(1, 2),
            Polynomial.one(t),
            [(lf(t, tau1=1), 1), (lf(t, tau2=1), 1)],
        )
    )


def test_beta_limit_order_mismatch_aborts():
    ws = c4_hyperkahler_example()
    terms = contour_residue_sum([character_from_weights(ws)], "s1")
    with pytest.raises(BetaOrderMismatch):
        beta_limit(terms, 3)


def test_beta_limit_trivial_character():
    t = table("tau1:framing")
    one = CharacterFunction.build(t, 1, [], [])
    assert beta_limit([one], 0).equals(FactoredRational.one(t))


def test_full_oracle_pipeline_matches_engine():
    for ws in [circle_reduction_example(), c4_hyperkahler_example(), su_system(1, 1)]:
        assert run_character_oracle(ws).equals(equivariant_volume(ws))


# ---------------------------------------------------------------------------
# partition sums


def test_partitions_enumeration():
    assert list(partitions_of(0)) == [()]
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(list(partition_tuples(2, 3))) == 10
    assert all(
        sum(sum(p) for p in shapes) == 3 for shapes in partition_tuples(2, 3)
    )


def test_tangent_weights_single_box():
    t = parameter_table_su(1)
    ws = tangent_weights(t, ((1,),))
    assert sorted(repr(w) for w in ws) == ["eps1", "eps2"]


def test_partition_sum_values():
    t = parameter_table_su(1)
    assert partition_sum_su(1, 0).equals(FactoredRational.one(t))
    assert partition_sum_su(1, 1).equals(
        frac(t, den_forms=[lf(t, eps1=1), lf(t, eps2=1)])
    )
    expected2 = FactoredRational(
        t,
        rat(1, 2),
        Polynomial.one(t),
        [(lf(t, eps1=1), 2), (lf(t, eps2=1), 2)],
    )
    assert partition_sum_su(1, 2).equals(expected2)


def test_partition_sum_matches_engine():
    for n, k in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        eng = charge_coefficient("su", n, k, bypass_cache=True)
        assert eng.equals(partition_sum_su(n, k))
