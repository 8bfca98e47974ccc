"""Weight systems and the volume-by-iterated-residue operator.

A ``WeightSystem`` is the complete combinatorial description of a linear
quotient problem: the symbols, the (polarized) weights on the vector space,
the weights on the complex moment map, the squared-root-product factors of
the quotienting group, the Weyl order, the calibrated prefactor, and the
direction of the cutting circle.  The equivariant volume is

    prefactor / weyl_order * Res+ ( root_product * moment_product / weights )

iterated over the gauge variables, innermost one first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FactoredRational, LinearForm, Polynomial
from .errors import ValidationError
from .rational import rat
from .residue import res_plus_iterated
from .serialize import (
    linear_form_from_json,
    linear_form_to_json,
    rational_from_json,
    rational_to_json,
    symbol_table_from_json,
    symbol_table_to_json,
)
from .symbols import ROLE_FRAMING, ROLE_GAUGE, SymbolTable


@dataclass
class WeightSystem:
    table: SymbolTable
    v_weights: tuple
    muc_weights: tuple = ()
    roots: tuple = ()  # linear factors whose plain product is the squared root product
    weyl_order: int = 1
    prefactor: object = 1
    cutting_circle: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.v_weights = tuple(self.v_weights)
        self.muc_weights = tuple(self.muc_weights)
        self.roots = tuple(self.roots)
        self.prefactor = rat(self.prefactor)
        self.cutting_circle = {k: rat(v) for k, v in self.cutting_circle.items()}

    def residue_order(self) -> tuple:
        """Gauge variables in table order; the last one is taken first."""
        return self.table.gauge()

    def framing_symbols(self) -> tuple:
        return tuple(
            n for n, r in self.table.entries() if r == ROLE_FRAMING
        )

    def gauge_count(self) -> int:
        return len(self.table.gauge())


def validate_polarization(ws: WeightSystem) -> dict:
    """Check that every vector-space weight pairs strictly positively with
    the cutting circle; report-only."""
    pairings = []
    violations = []
    for w in ws.v_weights:
        p = w.pairing(ws.cutting_circle)
        pairings.append((w, p))
        if p <= 0:
            violations.append((w, p))
    return {
        "ok": not violations,
        "pairings": pairings,
        "violations": violations,
    }


def validate(ws: WeightSystem) -> None:
    problems = []
    for w in list(ws.v_weights) + list(ws.muc_weights) + list(ws.roots):
        if w.table != ws.table:
            problems.append((w, "foreign symbol table"))
    if ws.weyl_order < 1 or int(ws.weyl_order) != ws.weyl_order:
        problems.append((ws.weyl_order, "weyl order must be a positive integer"))
    if not ws.v_weights:
        problems.append((None, "no vector-space weights"))
    report = validate_polarization(ws)
    for w, p in report["violations"]:
        problems.append((w, f"pairs {p} with the cutting circle (needs > 0)"))
    if problems:
        raise ValidationError(
            "invalid weight system"
            + (f" {ws.name!r}" if ws.name else "")
            + ": "
            + "; ".join(f"{w}: {msg}" for w, msg in problems),
            violations=problems,
        )


def central_function(ws: WeightSystem) -> FactoredRational:
    """Squared root product times the moment-map weights over the
    vector-space weights; scalar one, numerator expanded."""
    validate(ws)
    num = Polynomial.one(ws.table)
    for form in ws.roots:
        num = num * form.to_polynomial()
    for form in ws.muc_weights:
        num = num * form.to_polynomial()
    return FactoredRational(
        ws.table, 1, num, [(w, 1) for w in ws.v_weights]
    )


def equivariant_volume(ws: WeightSystem, order=None, with_trace: bool = False):
    """prefactor/weyl_order times the iterated positive residue of the
    central function over the gauge variables.

    ``order`` overrides the residue order (a permutation of the gauge
    variables; the last entry is still taken first).
    """
    central = central_function(ws)
    variables = tuple(order) if order is not None else ws.residue_order()
    if sorted(variables) != sorted(ws.residue_order()):
        raise ValidationError(
            f"residue order {variables} is not a permutation of the gauge variables"
        )
    result, trace = res_plus_iterated(central, variables)
    result = result.scaled(ws.prefactor / rat(ws.weyl_order))
    d_central = central.homogeneity_degree()
    d_result = result.homogeneity_degree()
    if d_central is not None and d_result is not None:
        assert d_result == d_central + len(variables), (
            "volume homogeneity degree must be the central function's "
            "plus the number of gauge variables"
        )
    if with_trace:
        return result, trace
    return result


# ---------------------------------------------------------------------------
# worked examples


def circle_reduction_example() -> WeightSystem:
    """Plane reduced by the anti-diagonal circle, with the diagonal circle
    acting equivariantly: weights sigma+tau and -sigma+tau, no complex
    moment map.  The volume is 1/(2 tau)."""
    t = SymbolTable([("s1", ROLE_GAUGE), ("tau1", ROLE_FRAMING)])
    return WeightSystem(
        table=t,
        v_weights=(
            LinearForm.from_dict(t, {"s1": 1, "tau1": 1}),
            LinearForm.from_dict(t, {"s1": -1, "tau1": 1}),
        ),
        cutting_circle={"tau1": 1},
        name="circle-reduction",
    )


def c4_hyperkahler_example() -> WeightSystem:
    """Four-dimensional space reduced by a hyperbolic circle with a
    quadratic moment map: the simplest hyper-Kahler quotient.  The volume
    is 1/(2 tau1 tau2)."""
    t = SymbolTable(
        [("s1", ROLE_GAUGE), ("tau1", ROLE_FRAMING), ("tau2", ROLE_FRAMING)]
    )
    return WeightSystem(
        table=t,
        v_weights=(
            LinearForm.from_dict(t, {"s1": 1, "tau1": 1}),
            LinearForm.from_dict(t, {"s1": 1, "tau2": 1}),
            LinearForm.from_dict(t, {"s1": -1, "tau2": 1}),
            LinearForm.from_dict(t, {"s1": -1, "tau1": 1}),
        ),
        muc_weights=(LinearForm.from_dict(t, {"tau1": 1, "tau2": 1}),),
        cutting_circle={"tau1": 1, "tau2": 1},
        name="c4-hyperkahler",
    )


# ---------------------------------------------------------------------------
# JSON schema


def weight_system_to_json(ws: WeightSystem) -> dict:
    return {
        "format": "weight-system/1",
        "name": ws.name,
        "symbols": symbol_table_to_json(ws.table),
        "v_weights": [linear_form_to_json(w) for w in ws.v_weights],
        "muc_weights": [linear_form_to_json(w) for w in ws.muc_weights],
        "roots": [linear_form_to_json(w) for w in ws.roots],
        "weyl_order": int(ws.weyl_order),
        "prefactor": rational_to_json(ws.prefactor),
        "cutting_circle": {
            k: rational_to_json(v) for k, v in ws.cutting_circle.items()
        },
    }


def weight_system_from_json(doc: dict) -> WeightSystem:
    table = symbol_table_from_json(doc["symbols"])
    return WeightSystem(
        table=table,
        v_weights=tuple(
            linear_form_from_json(w, table) for w in doc["v_weights"]
        ),
        muc_weights=tuple(
            linear_form_from_json(w, table) for w in doc.get("muc_weights", [])
        ),
        roots=tuple(linear_form_from_json(w, table) for w in doc.get("roots", [])),
        weyl_order=int(doc.get("weyl_order", 1)),
        prefactor=rational_from_json(doc.get("prefactor", {"n": "1", "d": "1"})),
        cutting_circle={
            k: rational_from_json(v)
            for k, v in doc.get("cutting_circle", {}).items()
        },
        name=doc.get("name", ""),
    )
