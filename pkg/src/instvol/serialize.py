"""Versioned JSON schemas for every value the engine exchanges.

Formats (all wrapped as {"format": "<name>/1", ...} at document level):

* rational           {"n": "<decimal int>", "d": "<positive decimal int>"}
* symbol table       [{"name": str, "role": str}, ...] in table order
* linear form        {symbol: rational} for the nonzero coefficients
* polynomial         [[rational, {symbol: int exponent}], ...] in descending
                     graded-lexicographic order
* factored rational  {"scalar": rational, "numerator": polynomial,
                      "denominator": [[linear form, multiplicity], ...]}

Round-tripping any value reproduces it exactly; ``canonical_dumps`` yields a
byte-stable encoding (sorted keys, no whitespace variation) for hashing and
deterministic output.
"""

from __future__ import annotations

import json

from .algebra import FactoredRational, LinearForm, Polynomial, grlex_key
from .errors import StructureError
from .rational import rat_from_str
from .symbols import SymbolTable

FORMAT_VERSION = 1


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- rationals ---------------------------------------------------------------


def rational_to_json(r):
    return {"n": str(r.numerator), "d": str(r.denominator)}


def rational_from_json(doc):
    try:
        return rat_from_str(doc["n"]) / rat_from_str(doc["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"bad rational document: {doc!r}") from exc


# -- symbol tables -------------------------------------------------------------


def symbol_table_to_json(table: SymbolTable):
    return [{"name": n, "role": r} for n, r in table.entries()]


def symbol_table_from_json(doc) -> SymbolTable:
    try:
        return SymbolTable((e["name"], e["role"]) for e in doc)
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad symbol table document: {doc!r}") from exc


# -- linear forms --------------------------------------------------------------


def linear_form_to_json(form: LinearForm):
    return {
        name: rational_to_json(c)
        for name, c in zip(form.table.names, form.coeffs)
        if c != 0
    }


def linear_form_from_json(doc, table: SymbolTable) -> LinearForm:
    return LinearForm.from_dict(
        table, {name: rational_from_json(v) for name, v in doc.items()}
    )


# -- polynomials ---------------------------------------------------------------


def polynomial_to_json(poly: Polynomial):
    out = []
    for expo, coeff in sorted(
        poly.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True
    ):
        emap = {
            name: k for name, k in zip(poly.table.names, expo) if k
        }
        out.append([rational_to_json(coeff), emap])
    return out


def polynomial_from_json(doc, table: SymbolTable) -> Polynomial:
    terms = {}
    width = len(table)
    for coeff_doc, emap in doc:
        expo = [0] * width
        for name, k in emap.items():
            expo[table.index(name)] = int(k)
        terms[tuple(expo)] = rational_from_json(coeff_doc)
    return Polynomial(table, terms)


# -- factored rationals ---------------------------------------------------------


def factored_rational_to_json(f: FactoredRational, with_table=False):
    doc = {
        "scalar": rational_to_json(f.scalar),
        "numerator": polynomial_to_json(f.numerator),
        "denominator": [
            [linear_form_to_json(form), m] for form, m in f.denominator
        ],
    }
    if with_table:
        doc["symbols"] = symbol_table_to_json(f.table)
        doc["format"] = f"factored-rational/{FORMAT_VERSION}"
    return doc


def factored_rational_from_json(doc, table: SymbolTable = None) -> FactoredRational:
    if table is None:
        table = symbol_table_from_json(doc["symbols"])
    num = polynomial_from_json(doc["numerator"], table)
    den = [
        (linear_form_from_json(fd, table), int(m)) for fd, m in doc["denominator"]
    ]
    return FactoredRational(table, rational_from_json(doc["scalar"]), num, den)
