"""Independent verification routes for the residue engine.

Two oracles live here:

* the multiplicative (K-theoretic) route: build the character of functions
  on the zero level of the complex moment map as a product of factors
  (1 - monomial), project onto invariants one gauge variable at a time by
  contour residues, then degenerate to cohomology by the small-parameter
  limit that replaces every factor (1 - e^{-b*rho}) by b*rho;

* the fixed-point partition sum for unitary framing: tangent weights at the
  torus-fixed points are given by the standard arm/leg hook formula over
  tuples of partitions (this formula is literature-sourced, not derived
  here, which is exactly what makes the comparison independent).

Pole selection for the contour step is a policy: the default keeps the
poles that tend to zero when every monomial in the denominator is small,
which for a validated weight system is exactly the factors carrying the
active variable with exponent -1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FactoredRational, LinearForm, Polynomial
from .errors import BetaOrderMismatch, StructureError, UnsupportedFeature
from .rational import ZERO, rat
from .symbols import ROLE_EQUIVARIANT, ROLE_FRAMING, SymbolTable

# ---------------------------------------------------------------------------
# multiplicative characters


def _monomial_clean(expo) -> tuple:
    return tuple(int(e) for e in expo)


@dataclass(frozen=True)
class CharacterFunction:
    """scalar * prod(1 - monomial) / prod(1 - monomial).

    Monomials are integer exponent vectors over the symbol table (Laurent:
    exponents may be negative); the constant factor (1 - 1) is rejected.
    Identical monomials merge their multiplicities and cancel between
    numerator and denominator.
    """

    table: SymbolTable
    scalar: object
    num_factors: tuple = ()
    den_factors: tuple = ()

    @staticmethod
    def build(table, scalar, num_factors, den_factors) -> "CharacterFunction":
        def collect(factors):
            merged = {}
            for expo, mult in factors:
                expo = _monomial_clean(expo)
                if all(e == 0 for e in expo):
                    raise StructureError(
                        "constant factor (1 - 1) is not a valid character factor"
                    )
                if len(expo) != len(table):
                    raise StructureError("monomial width does not match table")
                merged[expo] = merged.get(expo, 0) + mult
            return merged

        num = collect(num_factors)
        den = collect(den_factors)
        for expo in list(num):
            if expo in den:
                common = min(num[expo], den[expo])
                num[expo] -= common
                den[expo] -= common
        return CharacterFunction(
            table=table,
            scalar=rat(scalar),
            num_factors=tuple(sorted((e, m) for e, m in num.items() if m)),
            den_factors=tuple(sorted((e, m) for e, m in den.items() if m)),
        )

    def is_zero(self):
        return self.scalar == 0


def _weight_to_monomial(form: LinearForm) -> tuple:
    expo = []
    for c in form.coeffs:
        if c.denominator != 1:
            raise UnsupportedFeature(
                "character oracle requires integral weights; "
                f"got coefficient {c}"
            )
        expo.append(int(c.numerator))
    return tuple(expo)


def character_from_weights(ws) -> CharacterFunction:
    """Character of the moment-map zero level: numerator factors from the
    moment-map weights, denominator factors from the vector-space weights."""
    num = [(_weight_to_monomial(w), 1) for w in ws.muc_weights]
    den = [(_weight_to_monomial(w), 1) for w in ws.v_weights]
    return CharacterFunction.build(ws.table, 1, num, den)


@dataclass(frozen=True)
class PoleSelectionPolicy:
    """Which poles the contour keeps for the active variable.

    ``keep_exponent`` is the exponent of the active variable in a selected
    denominator factor; -1 keeps the poles that tend to zero when all
    denominator monomials are small (the convention that reproduces the
    known worked examples), +1 keeps the complementary set.
    """

    keep_exponent: int = -1


def contour_residue(
    ch: CharacterFunction, var: str, policy: PoleSelectionPolicy = PoleSelectionPolicy()
) -> list[CharacterFunction]:
    """Sum of residues of (1/var) * ch over the selected poles, as a list of
    character terms.  Denominator factors must be multiplicatively linear
    (exponent -1, 0 or +1) in the active variable."""
    i = ch.table.index(var)
    if ch.is_zero():
        return []
    k_den = 0
    k_num = 0
    for expo, mult in ch.den_factors:
        if abs(expo[i]) > 1:
            raise UnsupportedFeature(
                f"denominator factor carries {var}^{expo[i]}; only exponents "
                "-1, 0, +1 are supported"
            )
        if expo[i] == -1:
            k_den += mult
    for expo, mult in ch.num_factors:
        if expo[i] == -1:
            k_num += mult
    if all(expo[i] == 0 for expo, _ in ch.den_factors):
        return []
    if k_den <= k_num:
        raise UnsupportedFeature(
            "residue at the multiplicative origin would be required "
            f"(numerator/denominator inverse-power counts {k_num}/{k_den})"
        )

    terms = []
    for expo, mult in ch.den_factors:
        if expo[i] != policy.keep_exponent:
            continue
        if mult > 1:
            raise UnsupportedFeature(
                "coincident multiplicative poles (order >= 2) are not supported"
            )
        # solving (1 - m * var^e) = 0 for var gives var = m^{-1/e}; with
        # e = +-1 the location exponents are -expo[j] * e
        e = expo[i]
        location = tuple(
            0 if j == i else -expo[j] * e for j in range(len(expo))
        )
        num = []
        den = []
        vanished = False
        for fexpo, fmult in ch.num_factors:
            sub = _substitute_monomial(fexpo, i, location)
            if all(c == 0 for c in sub):
                vanished = True
                break
            num.append((sub, fmult))
        if vanished:
            continue
        collision = False
        for fexpo, fmult in ch.den_factors:
            if fexpo == expo:
                if fmult > 1:
                    den.append((fexpo, fmult - 1))
                continue
            sub = _substitute_monomial(fexpo, i, location)
            if all(c == 0 for c in sub):
                collision = True
                break
            den.append((sub, fmult))
        if collision:
            raise UnsupportedFeature(
                "pole collision after substitution; coincident poles are "
                "not supported by the character oracle"
            )
        terms.append(CharacterFunction.build(ch.table, ch.scalar, num, den))
    return terms


def _substitute_monomial(expo, i, location):
    k = expo[i]
    if k == 0:
        return expo
    return tuple(
        0 if j == i else expo[j] + k * location[j] for j in range(len(expo))
    )


def contour_residue_sum(terms, var, policy=PoleSelectionPolicy()):
    out = []
    for t in terms:
        out.extend(contour_residue(t, var, policy))
    return out


def beta_limit(terms, degree: int, table: SymbolTable = None) -> FactoredRational:
    """Degenerate a sum of character terms to cohomology.

    Every factor (1 - m) contributes one power of the small parameter and
    the additive linear form read off from m's exponents; surviving bare
    monomial prefactors tend to one.  The power counting of each term must
    balance the requested degree exactly, otherwise the input (or the
    degree) is wrong and we abort rather than truncate.
    """
    if not terms:
        if table is None:
            raise StructureError("empty character sum needs an explicit table")
        return FactoredRational.zero(table)
    tab = terms[0].table
    total = FactoredRational.zero(tab)
    for t in terms:
        order = sum(m for _, m in t.num_factors) - sum(
            m for _, m in t.den_factors
        )
        if degree + order != 0:
            raise BetaOrderMismatch(
                f"term has net factor order {order}, expected {-degree}"
            )
        num = Polynomial.one(tab)
        for expo, mult in t.num_factors:
            form = _monomial_to_form(tab, expo)
            num = num * form.to_polynomial() ** mult
        den = []
        for expo, mult in t.den_factors:
            den.append((_monomial_to_form(tab, expo), mult))
        total = total + FactoredRational(tab, t.scalar, num, den)
    return total


def _monomial_to_form(table, expo) -> LinearForm:
    return LinearForm(table, tuple(rat(e) for e in expo))


def run_character_oracle(ws) -> FactoredRational:
    """Full pipeline: character, one contour per gauge variable (innermost
    first, matching the residue engine's order), then the cohomological
    limit at the degree -(homogeneity of the expected volume)."""
    from .quotient import central_function

    ch = character_from_weights(ws)
    terms = [ch]
    for var in reversed(ws.residue_order()):
        terms = contour_residue_sum(terms, var)
    central = central_function(ws)
    d_central = central.homogeneity_degree()
    if d_central is None:
        raise StructureError("central function is not homogeneous")
    degree = -(d_central + len(ws.residue_order()))
    result = beta_limit(terms, degree, table=ws.table)
    return result.scaled(ws.prefactor / rat(ws.weyl_order))


# ---------------------------------------------------------------------------
# partition-sum oracle (unitary framing)


def partitions_of(k: int):
    """Weakly decreasing positive integer partitions of k."""
    if k == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(k, k)


def partition_tuples(n: int, k: int):
    """All n-tuples of partitions with total size k."""

    def rec(slots, remaining):
        if slots == 1:
            for p in partitions_of(remaining):
                yield (p,)
            return
        for here in range(remaining, -1, -1):
            for p in partitions_of(here):
                for rest in rec(slots - 1, remaining - here):
                    yield (p,) + rest

    yield from rec(n, k)


def _arm(shape, r, c):
    """Boxes strictly right of (row r, column c); negative outside."""
    row = shape[r - 1] if r <= len(shape) else 0
    return row - c


def _leg(shape, r, c):
    """Boxes strictly below (row r, column c); negative outside."""
    col = sum(1 for length in shape if length >= c)
    return col - r


def parameter_table_su(n: int) -> SymbolTable:
    entries = [("eps1", ROLE_EQUIVARIANT), ("eps2", ROLE_EQUIVARIANT)]
    entries += [(f"tau{l + 1}", ROLE_FRAMING) for l in range(n)]
    return SymbolTable(entries)


def tangent_weights(table, shapes) -> list[LinearForm]:
    """Equivariant tangent weights at the fixed point labelled by the
    partition tuple, via the arm/leg formula."""
    n = len(shapes)
    weights = []

    def form(tau_i, tau_j, a1, a2):
        coeffs = {}
        if tau_i != tau_j:
            coeffs[f"tau{tau_j}"] = 1
            coeffs[f"tau{tau_i}"] = -1
        if a1:
            coeffs["eps1"] = a1
        if a2:
            coeffs["eps2"] = a2
        return LinearForm.from_dict(table, coeffs)

    for i in range(1, n + 1):
        yi = shapes[i - 1]
        for j in range(1, n + 1):
            yj = shapes[j - 1]
            for r in range(1, len(yi) + 1):
                for c in range(1, yi[r - 1] + 1):
                    weights.append(
                        form(i, j, -_leg(yj, r, c), _arm(yi, r, c) + 1)
                    )
            for r in range(1, len(yj) + 1):
                for c in range(1, yj[r - 1] + 1):
                    weights.append(
                        form(i, j, _leg(yi, r, c) + 1, -_arm(yj, r, c))
                    )
    return weights


def partition_sum_su(n: int, k: int) -> FactoredRational:
    """Localization sum over partition tuples: sum of the inverse products
    of tangent weights, as one normalized exact fraction."""
    table = parameter_table_su(n)
    if k == 0:
        return FactoredRational.one(table)
    total = FactoredRational.zero(table)
    for shapes in partition_tuples(n, k):
        weights = tangent_weights(table, shapes)
        total = total + FactoredRational.from_factors(table, [], weights)
    return total
