"""One-variable and iterated residues of factored rational functions.

The positive residue ``res_plus`` takes, for the active variable, the sum of
residues at the poles of denominator factors whose stored coefficient of
that variable is positive.  Grouping into pole classes handles coincident
poles exactly: factors that are proportional as linear forms (any ratio
sign) share a zero locus, and the class is treated as one pole of the total
order, evaluated through the derivative formula.

The iterated operator applies the innermost (last listed) variable first and
distributes over the branches it creates.  Selections for the later
variables are driven by the ORIGINAL factors: every denominator factor
keeps its label while substitutions transform it, and a pole class is
selected for a variable exactly when it contains the image of a so-far
unconsumed factor whose original coefficient of that variable is positive.
This label-keeping convention is what makes the iterated operator agree
with the admissible-path expansion (and with the independent fixed-point
oracles); testing the substituted images instead picks up spurious poles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .algebra import FactoredRational, LinearForm
from .errors import StructureError, UnsupportedFeature
from .rational import ZERO, rat
from .serialize import linear_form_to_json

# ---------------------------------------------------------------------------
# pole classes


@dataclass(frozen=True)
class PoleClass:
    """A proportionality class of denominator factors in the active variable."""

    var: str
    var_index: int
    representative: LinearForm
    members: tuple  # (form, multiplicity, positively_polarized)
    total_order: int
    location: tuple  # coefficient vector: the pole is var = location

    @property
    def is_positive(self) -> bool:
        """Selected by res_plus iff some member is positively polarized."""
        return any(pos for _, _, pos in self.members)

    def summary(self) -> dict:
        return {
            "var": self.var,
            "representative": linear_form_to_json(self.representative),
            "order": self.total_order,
            "members": [
                [linear_form_to_json(f), m, bool(pos)]
                for f, m, pos in self.members
            ],
        }


def pole_classes(f: FactoredRational, var: str) -> list[PoleClass]:
    """Group the var-dependent denominator factors of f by pole locus.

    Factors with zero coefficient of var are inert constants for this step
    and belong to no class.
    """
    i = f.table.index(var)
    groups: list[list] = []
    for form, mult in f.denominator:
        c = form.coeffs[i]
        if c == 0:
            continue
        for g in groups:
            if g[0].proportionality(form) is not None:
                g.append((form, mult, c > 0))
                break
        else:
            groups.append([form, (form, mult, c > 0)])
    classes = []
    for g in groups:
        rep = g[0]
        members = tuple(g[1:])
        _, location = rep.solve_for(i)
        classes.append(
            PoleClass(
                var=var,
                var_index=i,
                representative=rep,
                members=members,
                total_order=sum(m for _, m, _ in members),
                location=location,
            )
        )
    return classes


def residue_at(f: FactoredRational, var: str, cls: PoleClass) -> FactoredRational:
    """Residue of f at the pole class, of arbitrary order m.

    Computed as the (m-1)-fold derivative of f with the class factors
    cleared, evaluated at the pole location, divided by (m-1)! and by the
    var-coefficients of the cleared factors.  Raises a structural error when
    the class does not match f's denominator.  The result does not involve
    var and its homogeneity degree is one above f's.
    """
    if cls.var != var:
        raise StructureError("pole class belongs to a different variable")
    i = cls.var_index
    try:
        g = f.without_factors([(form, mult) for form, mult, _ in cls.members])
    except StructureError as exc:
        raise StructureError(f"pole class does not match the function: {exc}") from exc
    scale = rat(1)
    for form, mult, _ in cls.members:
        scale = scale * form.coeffs[i] ** mult
    g = g.scaled(1 / scale)
    m = cls.total_order
    for _ in range(m - 1):
        g = g.differentiate(var)
    g = g.substitute(var, cls.location)
    if m > 1:
        g = g.scaled(rat(1, factorial(m - 1)))
    d_in = f.homogeneity_degree()
    d_out = g.homogeneity_degree()
    if d_in is not None and d_out is not None:
        assert d_out == d_in + 1, "residue must raise homogeneity degree by one"
    return g


# ---------------------------------------------------------------------------
# traces


@dataclass
class TraceBranch:
    pole: dict  # PoleClass summary
    residue_fp: str
    child: "ResidueTrace | None" = None


@dataclass
class ResidueTrace:
    """Record of the branch tree: which pole classes were taken per variable.

    Replaying a trace against the original input recomputes every recorded
    branch and checks the fingerprints bit-exactly.
    """

    input_fp: str
    var: str | None
    branches: list[TraceBranch] = field(default_factory=list)
    result_fp: str = ""

    def to_json(self) -> dict:
        return {
            "input": self.input_fp,
            "var": self.var,
            "result": self.result_fp,
            "branches": [
                {
                    "pole": b.pole,
                    "residue": b.residue_fp,
                    "child": b.child.to_json() if b.child else None,
                }
                for b in self.branches
            ],
        }

    def diagram(self, indent: int = 0) -> str:
        """Plain-text path diagram of the branch tree."""
        pad = "  " * indent
        if self.var is None:
            return f"{pad}[leaf {self.result_fp}]"
        lines = [f"{pad}res+ in {self.var}  ({len(self.branches)} pole(s))"]
        for b in self.branches:
            rep = b.pole["representative"]
            pretty = " ".join(
                (f"{v['n']}*{k}" if v["d"] == "1" else f"{v['n']}/{v['d']}*{k}")
                for k, v in rep.items()
            )
            lines.append(
                f"{pad}  pole at {pretty} (order {b.pole['order']}) -> {b.residue_fp}"
            )
            if b.child is not None:
                lines.append(b.child.diagram(indent + 2))
        lines.append(f"{pad}= {self.result_fp}")
        return "\n".join(lines)

    def replay(self, f: FactoredRational) -> FactoredRational:
        if f.fingerprint() != self.input_fp:
            raise StructureError("trace replay: input does not match recording")
        result = _replay_node(f, self)
        if result.fingerprint() != self.result_fp:
            raise StructureError("trace replay: result fingerprint mismatch")
        return result


def _replay_node(f: FactoredRational, node: ResidueTrace) -> FactoredRational:
    if node.var is None:
        return f
    classes = {
        _class_key(c): c for c in pole_classes(f, node.var)
    }
    total = FactoredRational.zero(f.table)
    for b in node.branches:
        key = _summary_key(b.pole)
        if key not in classes:
            raise StructureError("trace replay: recorded pole class not found")
        r = residue_at(f, node.var, classes[key])
        if r.fingerprint() != b.residue_fp:
            raise StructureError("trace replay: branch fingerprint mismatch")
        total = total + (_replay_node(r, b.child) if b.child else r)
    return total


def _class_key(cls: PoleClass):
    from .serialize import canonical_dumps

    return canonical_dumps(linear_form_to_json(cls.representative))


def _summary_key(summary: dict):
    from .serialize import canonical_dumps

    return canonical_dumps(summary["representative"])


# ---------------------------------------------------------------------------
# positive residues


def res_plus(f: FactoredRational, var: str):
    """Sum of residues over the positively polarized pole classes of var.

    Each class is counted exactly once, no matter how many positive members
    it contains.  Returns (result, trace); an empty selection returns zero.
    """
    trace = ResidueTrace(input_fp=f.fingerprint(), var=var)
    total = FactoredRational.zero(f.table)
    for cls in pole_classes(f, var):
        if not cls.is_positive:
            continue
        r = residue_at(f, var, cls)
        trace.branches.append(
            TraceBranch(pole=cls.summary(), residue_fp=r.fingerprint())
        )
        total = total + r
    trace.result_fp = total.fingerprint()
    return total, trace


def res_plus_iterated(f: FactoredRational, variables):
    """Iterated positive residue: the last listed variable is taken first.

    The operator distributes over the branch sums it creates: residues for
    the next variable are taken branch by branch.  The positivity test for
    every step is made against the original denominator factors of f (each
    factor keeps its label while substitutions transform it); a pole class
    of the current branch function is selected when it contains the image
    of an unconsumed original factor with positive original coefficient of
    the active variable.  Exact arithmetic makes the final sum independent
    of evaluation order.
    """
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise StructureError("residue variables must be distinct")
    for v in variables:
        f.table.index(v)
    sequence = list(reversed(variables))
    labels = [form for form, _ in f.denominator]
    images = [form.coeffs for form in labels]
    result, trace = _iterate_labeled(f, sequence, labels, images)
    for v in variables:
        if result.depends_on(v):
            raise StructureError(f"result unexpectedly involves {v}")
    return result, trace


def _leaf(f: FactoredRational) -> ResidueTrace:
    fp = f.fingerprint()
    return ResidueTrace(input_fp=fp, var=None, result_fp=fp)


def _update_images(images, var_index, location):
    """Push a substitution var := location through the tracked factor
    images; an image that vanishes is a consumed (or collapsed) factor."""
    out = []
    for img in images:
        if img is None:
            out.append(None)
            continue
        k = img[var_index]
        if k == 0:
            out.append(img)
            continue
        sub = list(img)
        sub[var_index] = ZERO
        for j, l in enumerate(location):
            if l != 0:
                sub[j] = sub[j] + k * l
        sub = tuple(sub)
        out.append(None if all(c == 0 for c in sub) else sub)
    return out


def _iterate_labeled(f: FactoredRational, sequence, labels, images):
    if not sequence:
        return f, _leaf(f)
    var = sequence[0]
    i = f.table.index(var)
    node = ResidueTrace(input_fp=f.fingerprint(), var=var)
    classes = pole_classes(f, var)
    selected = []  # (class position, triggering label positions)
    for j, label in enumerate(labels):
        img = images[j]
        if img is None or label.coeffs[i] <= 0 or img[i] == 0:
            continue
        for k, cls in enumerate(classes):
            if _vec_proportional(cls.representative.coeffs, img) is not None:
                for pos, trig in selected:
                    if pos == k:
                        trig.append(j)
                        break
                else:
                    selected.append((k, [j]))
                break
    total = FactoredRational.zero(f.table)
    for k, triggers in selected:
        cls = classes[k]
        r = residue_at(f, var, cls)
        new_images = _update_images(images, i, cls.location)
        if r.is_zero():
            node.branches.append(
                TraceBranch(pole=cls.summary(), residue_fp=r.fingerprint())
            )
            continue
        sub, child = _iterate_labeled(r, sequence[1:], labels, new_images)
        node.branches.append(
            TraceBranch(pole=cls.summary(), residue_fp=r.fingerprint(), child=child)
        )
        total = total + sub
    node.result_fp = total.fingerprint()
    return total, node


# ---------------------------------------------------------------------------
# exponential-weighted one-variable residues (cut-limit demonstration mode)


@dataclass(frozen=True)
class ExpTerm:
    """g(x) * e^{lambda * exponent}, exponent a linear form (None means 0).

    The cut parameter lambda is a positive formal scale; only the exponent's
    coefficient of the active variable decides whether the term enters the
    residue sum.
    """

    g: FactoredRational
    exponent: LinearForm | None = None


@dataclass
class ExpResidueSum:
    """Outcome of the exponential-weighted residue.

    ``value`` collects residues whose exponent vanished at the pole (these
    survive the cut limit); ``tagged`` holds the residues that keep a
    nonzero exponent, each paired with the residual exponent form, so the
    cut-limit driver can discard them on the convergence cone.
    """

    value: FactoredRational
    tagged: list


def jkres_plus_exp(terms, var: str) -> ExpResidueSum:
    """Residues over all pole classes for the terms with nonnegative
    lambda-coefficient of var; both polarizations are included.

    Exponentials over higher-order poles are outside this demonstration mode
    and are reported as unsupported.
    """
    if not terms:
        raise StructureError("no terms given")
    tab = terms[0].g.table
    i = tab.index(var)
    total = FactoredRational.zero(tab)
    tagged = []
    for term in terms:
        if term.g.table != tab:
            raise StructureError("terms use different symbol tables")
        exponent = term.exponent
        if exponent is not None and exponent.table != tab:
            raise StructureError("exponent uses a different symbol table")
        lam = exponent.coeffs[i] if exponent is not None else ZERO
        if lam < 0:
            continue
        for cls in pole_classes(term.g, var):
            if exponent is not None and cls.total_order > 1 and lam != 0:
                raise UnsupportedFeature(
                    "exponential over a higher-order pole is not supported "
                    "in one-variable demonstration mode"
                )
            r = residue_at(term.g, var, cls)
            residual = None
            if exponent is not None:
                coeffs = exponent.substituted_coeffs(i, cls.location)
                if any(c != 0 for c in coeffs):
                    residual = LinearForm(tab, coeffs)
            if residual is None:
                total = total + r
            else:
                tagged.append((residual, r))
    return ExpResidueSum(value=total, tagged=tagged)


# ---------------------------------------------------------------------------
# admissible paths


@dataclass
class AdmissiblePath:
    """One admissible pole choice per variable, in application order.

    ``note`` is empty for a path carrying its own residue; "merged" marks a
    path whose pole class coincides with an earlier sibling (the earlier one
    carries the full class residue once); "no-pole" marks a path whose
    chosen factor lost its pole (cancelled, or variable coefficient gone).
    """

    choices: tuple  # ((var, weight_index), ...)
    contribution: FactoredRational
    note: str = ""


@dataclass
class PathEnumeration:
    paths: list
    total: FactoredRational

    def nonzero_paths(self):
        return [p for p in self.paths if not p.contribution.is_zero()]


def _vec_proportional(a, b):
    r = None
    for x, y in zip(a, b):
        if x == 0 and y == 0:
            continue
        if x == 0 or y == 0:
            return None
        q = y / x
        if r is None:
            r = q
        elif q != r:
            return None
    return r


def admissible_paths(
    central: FactoredRational, weights, variables
) -> PathEnumeration:
    """Enumerate admissible paths over the polarized weight list.

    A path assigns to each residue variable (innermost first) a distinct
    weight whose stored coefficient of that variable is positive; this is
    the reordered admissibility test, checked on the original weights, so
    no residue needs to be computed to enumerate.  Contributions are the
    iterated residues of the central function at the substituted images of
    the chosen weights; coincident images are evaluated once per pole class
    and attributed to the first path reaching the class.
    """
    tab = central.table
    sequence = list(reversed(list(variables)))
    idx = [tab.index(v) for v in sequence]
    paths: list[AdmissiblePath] = []

    def recurse(g, depth, used, chosen, images):
        if depth == len(sequence):
            paths.append(AdmissiblePath(choices=tuple(chosen), contribution=g))
            return g
        var = sequence[depth]
        i = idx[depth]
        candidates = [
            j
            for j in range(len(weights))
            if j not in used and weights[j].coeffs[i] > 0
        ]
        classes = pole_classes(g, var)
        taken = {}  # class position -> first candidate
        total = FactoredRational.zero(tab)
        for j in candidates:
            image = images[j]
            here = tuple(chosen) + ((var, j),)
            if image is None or all(c == 0 for c in image) or image[i] == 0:
                paths.append(
                    AdmissiblePath(
                        choices=here,
                        contribution=FactoredRational.zero(tab),
                        note="no-pole",
                    )
                )
                continue
            pos = None
            for k, cls in enumerate(classes):
                if _vec_proportional(cls.representative.coeffs, image) is not None:
                    pos = k
                    break
            if pos is None:
                paths.append(
                    AdmissiblePath(
                        choices=here,
                        contribution=FactoredRational.zero(tab),
                        note="no-pole",
                    )
                )
                continue
            if pos in taken:
                paths.append(
                    AdmissiblePath(
                        choices=here,
                        contribution=FactoredRational.zero(tab),
                        note="merged",
                    )
                )
                continue
            taken[pos] = j
            cls = classes[pos]
            r = residue_at(g, var, cls)
            new_images = []
            for img in images:
                if img is None:
                    new_images.append(None)
                    continue
                if img[i] == 0:
                    sub = img
                else:
                    sub = tuple(
                        c + img[i] * l for c, l in zip(_zero_at(img, i), cls.location)
                    )
                new_images.append(None if all(c == 0 for c in sub) else sub)
            total = total + recurse(
                r, depth + 1, used | {j}, here, new_images
            )
        return total

    images = [w.coeffs for w in weights]
    total = recurse(central, 0, frozenset(), (), images)
    return PathEnumeration(paths=paths, total=total)


def _zero_at(vec, i):
    out = list(vec)
    out[i] = ZERO
    return tuple(out)


def enumerate_admissible_paths(ws) -> PathEnumeration:
    """Admissible-path enumeration for a weight system; the path total must
    reproduce the iterated positive residue of its central function."""
    from .quotient import central_function

    central = central_function(ws)
    return admissible_paths(central, list(ws.v_weights), ws.residue_order())
