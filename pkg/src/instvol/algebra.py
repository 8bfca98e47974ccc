"""Exact multivariate algebra: polynomials, linear forms, factored rationals.

The central representation is ``FactoredRational``: an exact rational scalar
times a sparse polynomial numerator over a multiset of linear-form
denominator factors.  This class of functions is closed under the three
operations iterated residues need: substitution of a variable by a linear
form, partial differentiation, and removal of denominator factors.

Polarization convention: denominator factors are stored exactly as given and
are never negated by the engine.  Factors that are proportional with a
positive ratio describe the same polarized weight and are merged (the ratio
moves into the scalar); factors proportional with a negative ratio describe
oppositely polarized weights and are kept distinct, because the sign decides
whether a pole is picked up by the positive residue operation.
"""

from __future__ import annotations

import hashlib
from math import gcd

from .errors import PoleAtAssignment, StructureError, VanishingFactor
from .rational import ONE, ZERO, rat
from .symbols import SymbolTable, check_same_table

# ---------------------------------------------------------------------------
# monomial helpers


def grlex_key(exponents):
    """Graded lexicographic sort key on an exponent tuple."""
    return (sum(exponents), exponents)


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient."""

    __slots__ = ("table", "terms")

    def __init__(self, table: SymbolTable, terms: dict):
        self.table = table
        width = len(table)
        clean = {}
        for expo, coeff in terms.items():
            if len(expo) != width:
                raise StructureError("exponent tuple width does not match table")
            if coeff != 0:
                clean[tuple(expo)] = coeff
        self.terms = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def constant(cls, table, value):
        value = rat(value)
        if value == 0:
            return cls.zero(table)
        return cls(table, {(0,) * len(table): value})

    @classmethod
    def one(cls, table):
        return cls.constant(table, 1)

    @classmethod
    def variable(cls, table, name):
        e = [0] * len(table)
        e[table.index(name)] = 1
        return cls(table, {tuple(e): rat(1)})

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, var_index: int):
        if not self.terms:
            return None
        return max(e[var_index] for e in self.terms)

    def homogeneous_degree(self):
        """The common total degree, or None if zero or inhomogeneous."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order (canonical)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_coefficient(self):
        if not self.terms:
            return ZERO
        return self.terms[max(self.terms, key=grlex_key)]

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.table == other.table
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        check_same_table(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Polynomial(self.table, terms)

    def __neg__(self):
        return Polynomial(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        check_same_table(self, other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        for e2, c2 in small.items():
            for e1, c1 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.table, out)

    def scaled(self, value):
        value = rat(value)
        if value == 0:
            return Polynomial.zero(self.table)
        return Polynomial(self.table, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise StructureError("negative polynomial power")
        result = Polynomial.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    # -- calculus ------------------------------------------------------------

    def differentiate(self, var_index: int):
        out = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k == 0:
                continue
            e2 = list(e)
            e2[var_index] = k - 1
            e2 = tuple(e2)
            s = out.get(e2, ZERO) + c * k
            if s == 0:
                out.pop(e2, None)
            else:
                out[e2] = s
        return Polynomial(self.table, out)

    def substitute_var(self, var_index: int, repl_coeffs):
        """Replace one variable by the linear expression with the given
        coefficient vector (which may be all zero)."""
        max_k = self.degree_in(var_index)
        if max_k is None or max_k == 0:
            return self
        repl = Polynomial(
            self.table,
            {
                tuple(1 if j == i else 0 for j in range(len(self.table))): c
                for i, c in enumerate(repl_coeffs)
                if c != 0
            },
        )
        powers = [Polynomial.one(self.table)]
        for _ in range(max_k):
            powers.append(powers[-1] * repl)
        out = Polynomial.zero(self.table)
        by_k = {}
        for e, c in self.terms.items():
            k = e[var_index]
            e2 = list(e)
            e2[var_index] = 0
            by_k.setdefault(k, {})[tuple(e2)] = c
        for k, terms in by_k.items():
            part = Polynomial(self.table, terms)
            out = out + (part * powers[k] if k else part)
        return out

    def evaluate(self, point):
        """Exact value at a full coefficient vector of rationals."""
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    # -- normalization -------------------------------------------------------

    def content_and_primitive(self):
        """Split into (content, primitive) with integer coprime coefficients
        and positive leading (grlex) coefficient on the primitive part."""
        if not self.terms:
            return ONE, self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, int(c.numerator))
            d = int(c.denominator)
            den_lcm = den_lcm // gcd(den_lcm, d) * d
        content = rat(num_gcd, den_lcm)
        if self.leading_coefficient() < 0:
            content = -content
        inv = 1 / content
        prim = Polynomial(self.table, {e: c * inv for e, c in self.terms.items()})
        return content, prim

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{n}^{k}" if k > 1 else n
                for n, k in zip(self.table.names, e)
                if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def __getstate__(self):
        return (self.table, tuple(self.terms.items()))

    def __setstate__(self, state):
        self.table = state[0]
        self.terms = dict(state[1])


class LinearForm:
    """Homogeneous linear expression with no constant term.

    The zero form is rejected; the stored sign is the polarization and is
    never changed behind the caller's back.
    """

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SymbolTable, coeffs):
        coeffs = tuple(rat(c) for c in coeffs)
        if len(coeffs) != len(table):
            raise StructureError("coefficient vector width does not match table")
        if all(c == 0 for c in coeffs):
            raise StructureError("the zero linear form is not allowed")
        self.table = table
        self.coeffs = coeffs

    @classmethod
    def from_dict(cls, table, mapping):
        coeffs = [ZERO] * len(table)
        for name, c in mapping.items():
            coeffs[table.index(name)] = rat(c)
        return cls(table, coeffs)

    def coeff(self, name: str):
        return self.coeffs[self.table.index(name)]

    def coeff_at(self, var_index: int):
        return self.coeffs[var_index]

    def to_polynomial(self) -> Polynomial:
        width = len(self.table)
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c != 0:
                terms[tuple(1 if j == i else 0 for j in range(width))] = c
        return Polynomial(self.table, terms)

    def proportionality(self, other):
        """Return r with other == r * self, or None."""
        if self.table != other.table:
            return None
        r = None
        for a, b in zip(self.coeffs, other.coeffs):
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                return None
            q = b / a
            if r is None:
                r = q
            elif q != r:
                return None
        return r

    def scaled(self, factor):
        """Rescale by a positive rational (the only allowed normalization)."""
        factor = rat(factor)
        if factor <= 0:
            raise StructureError("linear forms may only be rescaled positively")
        return LinearForm(self.table, tuple(c * factor for c in self.coeffs))

    def pairing(self, direction: dict):
        """Pair against a direction given as symbol -> rational."""
        total = ZERO
        for name, c in zip(self.table.names, self.coeffs):
            if c != 0:
                total = total + c * rat(direction.get(name, 0))
        return total

    def substituted_coeffs(self, var_index: int, repl_coeffs):
        """Coefficient vector after var := repl; may be all zero."""
        k = self.coeffs[var_index]
        if k == 0:
            return self.coeffs
        out = list(self.coeffs)
        out[var_index] = ZERO
        for i, r in enumerate(repl_coeffs):
            if r != 0:
                out[i] = out[i] + k * r
        return tuple(out)

    def solve_for(self, var_index: int):
        """Write the zero locus as var = location; returns (var coefficient,
        location coefficient vector over the remaining variables)."""
        c = self.coeffs[var_index]
        if c == 0:
            raise StructureError("form does not involve the requested variable")
        loc = [-a / c for a in self.coeffs]
        loc[var_index] = ZERO
        return c, tuple(loc)

    def evaluate(self, point):
        total = ZERO
        for c, x in zip(self.coeffs, point):
            if c != 0:
                total = total + c * x
        return total

    def canonical_scaled(self):
        """Primitive-integer positively-rescaled copy plus the used factor.

        Only used for serialization ordering and fingerprints; polarization
        (the overall sign) is preserved.
        """
        num_gcd = 0
        den_lcm = 1
        for c in self.coeffs:
            num_gcd = gcd(num_gcd, int(c.numerator))
            d = int(c.denominator)
            den_lcm = den_lcm // gcd(den_lcm, d) * d
        factor = rat(den_lcm, num_gcd)
        return self.scaled(factor), factor

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and self.table == other.table
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.table, self.coeffs))

    def __repr__(self):
        bits = []
        for name, c in zip(self.table.names, self.coeffs):
            if c == 0:
                continue
            if c == 1:
                bits.append(f"+{name}" if bits else name)
            elif c == -1:
                bits.append(f"-{name}")
            else:
                sign = "+" if c > 0 and bits else ""
                bits.append(f"{sign}{c}*{name}")
        return "".join(bits)

    def __getstate__(self):
        return (self.table, self.coeffs)

    def __setstate__(self, state):
        self.table, self.coeffs = state


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch add/sub/mul; structural error on mismatched tables."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise StructureError(f"unknown polynomial operation {op!r}")


def exact_divide(num: Polynomial, form: LinearForm):
    """Exact quotient num / form, or None when the division leaves a remainder.

    The inputs are never mutated; on success q * form == num bit-exactly.
    """
    if num.table != form.table:
        raise StructureError("operands use different symbol tables")
    if num.is_zero():
        return num
    pivot = next(i for i, c in enumerate(form.coeffs) if c != 0)
    c_pivot = form.coeffs[pivot]
    form_poly = form.to_polynomial()
    remainder = num
    quotient = Polynomial.zero(num.table)
    while not remainder.is_zero():
        d = remainder.degree_in(pivot)
        if d == 0:
            return None
        slice_terms = {}
        for e, c in remainder.terms.items():
            if e[pivot] == d:
                e2 = list(e)
                e2[pivot] = d - 1
                slice_terms[tuple(e2)] = c / c_pivot
        q_piece = Polynomial(num.table, slice_terms)
        quotient = quotient + q_piece
        remainder = remainder - q_piece * form_poly
    return quotient


class FactoredRational:
    """scalar * numerator / product of linear-form factors with multiplicities.

    Construction normalizes: positively proportional denominator factors are
    merged (scalar adjusted), the numerator is reduced against each factor by
    exact division (a cancelled factor carries no pole, so nothing is lost),
    and the numerator content is folded into the scalar.
    """

    __slots__ = ("table", "scalar", "numerator", "denominator")

    def __init__(self, table, scalar, numerator: Polynomial, denominator):
        scalar = rat(scalar)
        if numerator.table != table:
            raise StructureError("numerator table mismatch")
        if scalar == 0 or numerator.is_zero():
            self.table = table
            self.scalar = ZERO
            self.numerator = Polynomial.zero(table)
            self.denominator = ()
            return

        merged: list[list] = []  # [form, multiplicity]
        for entry in denominator:
            form, mult = entry
            if form.table != table:
                raise StructureError("denominator factor table mismatch")
            if mult <= 0 or int(mult) != mult:
                raise StructureError("factor multiplicity must be a positive integer")
            placed = False
            for slot in merged:
                r = slot[0].proportionality(form)
                if r is not None and r > 0:
                    slot[1] += mult
                    scalar = scalar / r**mult
                    placed = True
                    break
            if not placed:
                merged.append([form, int(mult)])

        # cancel numerator against factors; each successful division removes
        # a pole with zero residue
        for slot in merged:
            while slot[1] > 0:
                q = exact_divide(numerator, slot[0])
                if q is None:
                    break
                numerator = q
                slot[1] -= 1

        content, numerator = numerator.content_and_primitive()
        scalar = scalar * content

        self.table = table
        self.scalar = scalar
        self.numerator = numerator
        self.denominator = tuple((f, m) for f, m in merged if m > 0)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, table):
        return cls(table, 0, Polynomial.zero(table), ())

    @classmethod
    def one(cls, table):
        return cls(table, 1, Polynomial.one(table), ())

    @classmethod
    def constant(cls, table, value):
        return cls(table, value, Polynomial.one(table), ())

    @classmethod
    def from_factors(cls, table, numerator_forms, denominator_forms, scalar=1):
        """Product of linear forms over a list of linear-form poles."""
        num = Polynomial.one(table)
        for f in numerator_forms:
            num = num * f.to_polynomial()
        return cls(table, scalar, num, [(f, 1) for f in denominator_forms])

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return self.scalar == 0

    def homogeneity_degree(self):
        """deg(numerator) - sum of multiplicities; None if not homogeneous."""
        if self.is_zero():
            return None
        d = self.numerator.homogeneous_degree()
        if d is None:
            return None
        return d - sum(m for _, m in self.denominator)

    def denominator_polynomial(self) -> Polynomial:
        out = Polynomial.one(self.table)
        for f, m in self.denominator:
            out = out * f.to_polynomial() ** m
        return out

    def __repr__(self):
        den = "".join(
            f"({f!r})" + (f"^{m}" if m > 1 else "") for f, m in self.denominator
        )
        return f"{self.scalar}*({self.numerator!r})" + (f"/{den}" if den else "")

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        return FactoredRational(
            self.table, -self.scalar, self.numerator, self.denominator
        )

    def scaled(self, value):
        return FactoredRational(
            self.table, self.scalar * rat(value), self.numerator, self.denominator
        )

    def __mul__(self, other):
        check_same_table(self, other)
        return FactoredRational(
            self.table,
            self.scalar * other.scalar,
            self.numerator * other.numerator,
            self.denominator + other.denominator,
        )

    def mul_poly(self, poly: Polynomial):
        return FactoredRational(
            self.table, self.scalar, self.numerator * poly, self.denominator
        )

    def over_form(self, form: LinearForm, mult: int = 1):
        """Divide by a linear form (append a denominator factor)."""
        return FactoredRational(
            self.table,
            self.scalar,
            self.numerator,
            self.denominator + ((form, mult),),
        )

    def __add__(self, other):
        check_same_table(self, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self

        # group both denominators into proportionality classes (any ratio);
        # the common denominator keeps every stored factor of self plus
        # whatever of other's entries exceed the class totals of self.
        classes: list[dict] = []

        def locate(form):
            for cl in classes:
                r = cl["rep"].proportionality(form)
                if r is not None:
                    return cl, r
            cl = {"rep": form, "self": [], "other": []}
            classes.append(cl)
            return cl, ONE

        for f, m in self.denominator:
            cl, r = locate(f)
            cl["self"].append((f, m, r))
        for f, m in other.denominator:
            cl, r = locate(f)
            cl["other"].append((f, m, r))

        # numerator multipliers: self needs D / den(self), other D / den(other)
        mult_self = Polynomial.one(self.table)
        mult_other = Polynomial.one(self.table)
        scale_self = ONE
        scale_other = ONE
        common = []
        for cl in classes:
            m_self = sum(m for _, m, _ in cl["self"])
            m_other = sum(m for _, m, _ in cl["other"])
            depth = max(m_self, m_other)
            entries = list(cl["self"])
            need = depth - m_self
            for f, m, r in cl["other"]:
                if need <= 0:
                    break
                take = min(m, need)
                entries.append((f, take, r))
                need -= take
            if need > 0:
                entries.append((cl["rep"], need, ONE))
            common.extend((f, m) for f, m, _ in entries)
            # D / den(self): entries minus self's own, as rep-powers and ratios
            prod_all = ONE
            for f, m, r in entries:
                prod_all = prod_all * r**m
            rep_poly = cl["rep"].to_polynomial()
            prod_self = ONE
            for _, m, r in cl["self"]:
                prod_self = prod_self * r**m
            prod_other = ONE
            for _, m, r in cl["other"]:
                prod_other = prod_other * r**m
            if depth - m_self:
                mult_self = mult_self * rep_poly ** (depth - m_self)
            scale_self = scale_self * prod_all / prod_self
            if depth - m_other:
                mult_other = mult_other * rep_poly ** (depth - m_other)
            scale_other = scale_other * prod_all / prod_other

        num = self.numerator.scaled(self.scalar * scale_self) * mult_self + (
            other.numerator.scaled(other.scalar * scale_other) * mult_other
        )
        return FactoredRational(self.table, 1, num, common)

    def __sub__(self, other):
        return self + (-other)

    def equals(self, other) -> bool:
        """Exact equality, decided by cross-multiplied comparison."""
        check_same_table(self, other)
        return (self - other).is_zero()

    # -- core closure operations ----------------------------------------------

    def substitute(self, var: str, repl) -> FactoredRational:
        """Eliminate var everywhere by var := repl.

        repl is a LinearForm not involving var, or a plain coefficient vector
        (possibly zero) over the table.  A denominator factor that vanishes
        identically raises VanishingFactor.
        """
        i = self.table.index(var)
        if isinstance(repl, LinearForm):
            if repl.table != self.table:
                raise StructureError("replacement uses a different table")
            if repl.coeffs[i] != 0:
                raise StructureError("replacement involves the substituted variable")
            repl_coeffs = repl.coeffs
        else:
            repl_coeffs = tuple(rat(c) for c in repl)
            if repl_coeffs[i] != 0:
                raise StructureError("replacement involves the substituted variable")
        if self.is_zero():
            return self
        den = []
        for f, m in self.denominator:
            coeffs = f.substituted_coeffs(i, repl_coeffs)
            if all(c == 0 for c in coeffs):
                raise VanishingFactor(f)
            den.append((LinearForm(self.table, coeffs), m))
        num = self.numerator.substitute_var(i, repl_coeffs)
        return FactoredRational(self.table, self.scalar, num, den)

    def differentiate(self, var: str) -> FactoredRational:
        """Exact partial derivative, recombined over the factored denominator."""
        i = self.table.index(var)
        if self.is_zero():
            return self
        dep = [(f, m) for f, m in self.denominator if f.coeffs[i] != 0]
        indep = [(f, m) for f, m in self.denominator if f.coeffs[i] == 0]
        dep_polys = [f.to_polynomial() for f, _ in dep]
        prod_dep = Polynomial.one(self.table)
        for p in dep_polys:
            prod_dep = prod_dep * p
        num = self.numerator.differentiate(i) * prod_dep
        for j, (f, m) in enumerate(dep):
            others = Polynomial.one(self.table)
            for k, p in enumerate(dep_polys):
                if k != j:
                    others = others * p
            num = num - self.numerator.scaled(rat(m) * f.coeffs[i]) * others
        den = [(f, m + 1) for f, m in dep] + indep
        return FactoredRational(self.table, self.scalar, num, den)

    def without_factors(self, members) -> FactoredRational:
        """Remove the given (form, multiplicity) entries from the denominator.

        Used by residue extraction; entries must literally be present.
        """
        den = list(self.denominator)
        for form, mult in members:
            for idx, (f, m) in enumerate(den):
                if f == form:
                    if m < mult:
                        raise StructureError("removing more copies than present")
                    if m == mult:
                        den.pop(idx)
                    else:
                        den[idx] = (f, m - mult)
                    break
            else:
                raise StructureError("factor not present in denominator")
        return FactoredRational(self.table, self.scalar, self.numerator, den)

    # -- evaluation / canonical form ------------------------------------------

    def evaluate(self, assignment: dict):
        """Exact rational value at symbol -> rational; raises PoleAtAssignment."""
        point = tuple(rat(assignment.get(n, 0)) for n in self.table.names)
        if self.is_zero():
            return ZERO
        value = self.scalar * self.numerator.evaluate(point)
        for f, m in self.denominator:
            fv = f.evaluate(point)
            if fv == 0:
                raise PoleAtAssignment(f)
            value = value / fv**m
        return value

    def depends_on(self, var: str) -> bool:
        i = self.table.index(var)
        if any(e[i] for e in self.numerator.terms):
            return True
        return any(f.coeffs[i] != 0 for f, _ in self.denominator)

    def canonical(self) -> FactoredRational:
        """Deterministic representative: primitive integer factors with
        positive leading grlex coefficient, factors sorted, scalar adjusted.

        This erases polarization, so it is only for serialization ordering,
        fingerprints and final reporting, never for further residue work.
        """
        if self.is_zero():
            return self
        scalar = self.scalar
        norm = []
        for f, m in self.denominator:
            prim, factor = f.canonical_scaled()
            lead = next(c for c in prim.coeffs if c != 0)
            if lead < 0:
                prim = LinearForm(prim.table, tuple(-c for c in prim.coeffs))
                scalar = scalar * (-1) ** m
            scalar = scalar * factor**m
            norm.append((prim, m))
        norm.sort(key=lambda fm: (fm[0].coeffs, fm[1]), reverse=True)
        out = FactoredRational.__new__(FactoredRational)
        out.table = self.table
        out.scalar = scalar
        out.numerator = self.numerator
        out.denominator = tuple(norm)
        return out

    def fingerprint(self) -> str:
        from .serialize import canonical_dumps, factored_rational_to_json

        blob = canonical_dumps(factored_rational_to_json(self.canonical()))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def project(self, new_table: SymbolTable) -> FactoredRational:
        """Re-express on a table of a subset of symbols (by name); all
        coefficients on dropped symbols must vanish."""
        idx = []
        for name in new_table.names:
            idx.append(self.table.index(name))
        keep = set(idx)
        if self.is_zero():
            return FactoredRational.zero(new_table)
        for e in self.numerator.terms:
            for i, k in enumerate(e):
                if k and i not in keep:
                    raise StructureError("numerator involves a dropped symbol")
        terms = {}
        for e, c in self.numerator.terms.items():
            terms[tuple(e[i] for i in idx)] = c
        den = []
        for f, m in self.denominator:
            for i, c in enumerate(f.coeffs):
                if c != 0 and i not in keep:
                    raise StructureError("denominator involves a dropped symbol")
            den.append((LinearForm(new_table, tuple(f.coeffs[i] for i in idx)), m))
        return FactoredRational(
            new_table, self.scalar, Polynomial(new_table, terms), den
        )

    def __getstate__(self):
        return (self.table, self.scalar, self.numerator, self.denominator)

    def __setstate__(self, state):
        self.table, self.scalar, self.numerator, self.denominator = state
