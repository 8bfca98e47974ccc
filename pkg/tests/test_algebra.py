"""Exact algebra layer: polynomials, linear forms, factored rationals."""

import random

import pytest

from instvol.algebra import FactoredRational, LinearForm, Polynomial, exact_divide, poly_arith
from instvol.errors import StructureError, VanishingFactor
from instvol.rational import rat
from instvol.serialize import (
    factored_rational_from_json,
    factored_rational_to_json,
)

from conftest import frac, lf, std_table, table


def test_additive_inverse_cancels():
    t = std_table()
    s = lf(t, s1=1).to_polynomial()
    assert (s + (-s)).is_zero()


def test_difference_of_squares():
    t = std_table()
    a = lf(t, eps1=1, s1=1).to_polynomial()
    b = lf(t, eps1=1, s1=-1).to_polynomial()
    expected = Polynomial(
        t,
        {
            (0, 2, 0, 0, 0): rat(1),   # eps1^2
            (2, 0, 0, 0, 0): rat(-1),  # -s1^2
        },
    )
    assert poly_arith(a, b, "mul") == expected


def test_root_product_rank_two():
    # product over ordered pairs e != f of (sigma_e - sigma_f) at rank 2;
    # oracle: (s1-s2)(s2-s1) = -(s1-s2)^2 = -s1^2 + 2 s1 s2 - s2^2
    t = table("s1:gauge", "s2:gauge")
    p = lf(t, s1=1, s2=-1).to_polynomial() * lf(t, s2=1, s1=-1).to_polynomial()
    expected = Polynomial(
        t, {(2, 0): rat(-1), (1, 1): rat(2), (0, 2): rat(-1)}
    )
    assert p == expected


def test_poly_arith_rejects_mixed_tables():
    p = Polynomial.one(std_table())
    q = Polynomial.one(table("x:aux"))
    with pytest.raises(StructureError):
        poly_arith(p, q, "add")


def test_exact_divide_difference_of_squares():
    t = std_table()
    num = lf(t, eps1=1, s1=1).to_polynomial() * lf(t, eps1=1, s1=-1).to_polynomial()
    q = exact_divide(num, lf(t, eps1=1, s1=-1))
    assert q == lf(t, eps1=1, s1=1).to_polynomial()


def test_exact_divide_not_divisible():
    t = std_table()
    assert exact_divide(lf(t, eps1=1, eps2=1).to_polynomial(), lf(t, s1=1)) is None


def test_exact_divide_parameter_factor():
    t = std_table()
    num = lf(t, tau1=1, tau2=1).to_polynomial() * lf(t, s1=1).to_polynomial()
    q = exact_divide(num, lf(t, tau1=1, tau2=1))
    assert q == lf(t, s1=1).to_polynomial()


def test_exact_divide_multiply_back():
    # cancellation soundness: whenever division succeeds, q * form == num
    rng = random.Random(7)
    t = std_table()
    names = list(t.names)
    for _ in range(25):
        coeffs = [rat(rng.randint(-3, 3)) for _ in names]
        if all(c == 0 for c in coeffs):
            coeffs[0] = rat(1)
        form = LinearForm(t, coeffs)
        other = Polynomial(
            t,
            {
                tuple(rng.randint(0, 2) for _ in names): rat(rng.randint(-5, 5))
                for _ in range(4)
            },
        )
        if other.is_zero():
            continue
        num = other * form.to_polynomial()
        q = exact_divide(num, form)
        assert q is not None
        assert q * form.to_polynomial() == num


def test_substitute_form_level():
    t = std_table()
    f = frac(t, den_forms=[lf(t, s1=1, tau2=1)])
    g = f.substitute("s1", lf(t, tau1=-1))
    assert g.denominator == ((lf(t, tau2=1, tau1=-1), 1),)


def test_substitute_three_factor_example():
    # sigma := -tau1 into 1/((s+tau2)(-s+tau2)(-s+tau1))
    #   -> 1/((tau2-tau1)(tau2+tau1)(2 tau1))
    t = std_table()
    f = frac(
        t,
        den_forms=[
            lf(t, s1=1, tau2=1),
            lf(t, s1=-1, tau2=1),
            lf(t, s1=-1, tau1=1),
        ],
    )
    g = f.substitute("s1", lf(t, tau1=-1))
    expected = frac(
        t,
        den_forms=[
            lf(t, tau2=1, tau1=-1),
            lf(t, tau2=1, tau1=1),
            lf(t, tau1=2),
        ],
    )
    assert g.equals(expected)


def test_substitute_vanishing_factor():
    t = std_table()
    f = frac(t, den_forms=[lf(t, s1=1, tau1=1)])
    with pytest.raises(VanishingFactor):
        f.substitute("s1", lf(t, tau1=-1))


def test_substitute_rejects_replacement_involving_variable():
    t = std_table()
    f = frac(t, den_forms=[lf(t, s1=1, tau1=1)])
    with pytest.raises(StructureError):
        f.substitute("s1", lf(t, s1=1, tau1=1))


def test_differentiate_inverse_variable():
    t = std_table()
    f = frac(t, den_forms=[lf(t, s1=1)])
    df = f.differentiate("s1")
    expected = FactoredRational(
        t, -1, Polynomial.one(t), [(lf(t, s1=1), 2)]
    )
    assert df.equals(expected)


def test_differentiate_quotient_rule_simple():
    # d/ds [ s/(eps1+s) ] = eps1/(eps1+s)^2
    t = std_table()
    f = FactoredRational(
        t, 1, lf(t, s1=1).to_polynomial(), [(lf(t, eps1=1, s1=1), 1)]
    )
    df = f.differentiate("s1")
    expected = FactoredRational(
        t, 1, lf(t, eps1=1).to_polynomial(), [(lf(t, eps1=1, s1=1), 2)]
    )
    assert df.equals(expected)


def test_differentiate_two_pole_example():
    # d/ds [ 1/((s+tau1)(s+tau2)) ] = -(2s+tau1+tau2)/((s+tau1)^2 (s+tau2)^2)
    t = std_table()
    f = frac(t, den_forms=[lf(t, s1=1, tau1=1), lf(t, s1=1, tau2=1)])
    df = f.differentiate("s1")
    expected = FactoredRational(
        t,
        -1,
        lf(t, s1=2, tau1=1, tau2=1).to_polynomial(),
        [(lf(t, s1=1, tau1=1), 2), (lf(t, s1=1, tau2=1), 2)],
    )
    assert df.equals(expected)


def test_denominator_closure_and_merging():
    t = std_table()
    # (s+tau1) and (2s+2tau1) are positively proportional: merged, scalar adjusted
    f = FactoredRational(
        t,
        1,
        Polynomial.one(t),
        [(lf(t, s1=1, tau1=1), 1), (lf(t, s1=2, tau1=2), 1)],
    )
    assert len(f.denominator) == 1
    assert f.denominator[0][1] == 2
    assert f.equals(
        FactoredRational(t, rat(1, 2), Polynomial.one(t), [(lf(t, s1=1, tau1=1), 2)])
    )
    # negative ratio is never merged automatically
    g = FactoredRational(
        t,
        1,
        Polynomial.one(t),
        [(lf(t, s1=1, tau1=1), 1), (lf(t, s1=-1, tau1=-1), 1)],
    )
    assert len(g.denominator) == 2


def test_auto_cancellation_keeps_value():
    t = std_table()
    # (tau1+tau2) in the numerator cancels against the same pole
    num = lf(t, tau1=1, tau2=1).to_polynomial() * lf(t, s1=1).to_polynomial()
    f = FactoredRational(
        t, 1, num, [(lf(t, tau1=1, tau2=1), 1), (lf(t, s1=1, tau1=1), 1)]
    )
    assert all(form.coeff("tau2") == 0 or form.coeff("s1") != 0 for form, _ in f.denominator)
    assert f.equals(
        FactoredRational(
            t, 1, lf(t, s1=1).to_polynomial(), [(lf(t, s1=1, tau1=1), 1)]
        )
    )


def test_addition_exact():
    # 1/(2 tau1 (tau2-tau1)) + 1/(2 tau2 (tau1-tau2)) = 1/(2 tau1 tau2)
    t = std_table()
    a = frac(t, den_forms=[lf(t, tau1=2), lf(t, tau2=1, tau1=-1)])
    b = frac(t, den_forms=[lf(t, tau2=2), lf(t, tau1=1, tau2=-1)])
    total = a + b
    expected = frac(t, den_forms=[lf(t, tau1=1), lf(t, tau2=1)], scalar=rat(1, 2))
    assert total.equals(expected)


def test_homogeneity_bookkeeping():
    t = std_table()
    f = frac(
        t,
        num_forms=[lf(t, eps1=1, eps2=1)],
        den_forms=[lf(t, s1=1, tau1=-1), lf(t, eps1=1)],
    )
    assert f.homogeneity_degree() == -1
    assert f.differentiate("s1").homogeneity_degree() == -2
    g = f.substitute("s1", lf(t, tau2=1))
    assert g.homogeneity_degree() == -1


def test_random_roundtrip_and_homogeneity():
    rng = random.Random(20240817)
    t = std_table()
    names = list(t.names)
    for _ in range(40):
        den = []
        for _ in range(rng.randint(1, 4)):
            coeffs = [rat(rng.randint(-2, 2)) for _ in names]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(len(names))] = rat(1)
            den.append((LinearForm(t, coeffs), rng.randint(1, 2)))
        num_forms = []
        for _ in range(rng.randint(0, 2)):
            coeffs = [rat(rng.randint(-2, 2)) for _ in names]
            if all(c == 0 for c in coeffs):
                coeffs[0] = rat(1)
            num_forms.append(LinearForm(t, coeffs))
        f = FactoredRational.from_factors(
            t, num_forms, [], rat(rng.randint(1, 9), rng.randint(1, 9))
        )
        f = FactoredRational(t, f.scalar, f.numerator, den)
        if f.is_zero():
            continue
        # denominator stays a multiset of linear forms under both closure ops
        df = f.differentiate("s1")
        assert all(isinstance(form, LinearForm) for form, _ in df.denominator)
        d0 = f.homogeneity_degree()
        if d0 is not None and not df.is_zero():
            assert df.homogeneity_degree() == d0 - 1
        # JSON round trip is exact
        doc = factored_rational_to_json(f, with_table=True)
        back = factored_rational_from_json(doc)
        assert back.table == f.table
        assert back.equals(f)


def test_equality_across_representations():
    t = std_table()
    a = frac(t, den_forms=[lf(t, tau1=2), lf(t, tau2=1)], scalar=2)
    b = frac(t, den_forms=[lf(t, tau1=1), lf(t, tau2=1)], scalar=1)
    assert a.equals(b)
    c = frac(t, den_forms=[lf(t, tau1=1), lf(t, tau2=1)], scalar=2)
    assert not a.equals(c)


def test_zero_form_rejected():
    t = std_table()
    with pytest.raises(StructureError):
        LinearForm(t, [rat(0)] * len(t))
