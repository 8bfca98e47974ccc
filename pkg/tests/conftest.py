"""Shared helpers for building small algebra objects in tests."""

from __future__ import annotations

import pytest

from instvol.algebra import FactoredRational, LinearForm, Polynomial
from instvol.rational import rat
from instvol.symbols import SymbolTable


@pytest.fixture(autouse=True, scope="session")
def _hermetic_cache(tmp_path_factory):
    """Point the coefficient cache at a session-local directory so tests
    never read or write the user's cache."""
    import os

    path = tmp_path_factory.mktemp("coeff-cache")
    old = os.environ.get("INSTVOL_CACHE_DIR")
    os.environ["INSTVOL_CACHE_DIR"] = str(path)
    yield
    if old is None:
        os.environ.pop("INSTVOL_CACHE_DIR", None)
    else:
        os.environ["INSTVOL_CACHE_DIR"] = old


def table(*entries) -> SymbolTable:
    """table("s1:gauge", "eps1:equivariant", ...)"""
    return SymbolTable(tuple(e.split(":", 1) for e in entries))


def lf(tab, **coeffs) -> LinearForm:
    return LinearForm.from_dict(tab, {k: rat(v) for k, v in coeffs.items()})


def frac(tab, num_forms=(), den_forms=(), scalar=1) -> FactoredRational:
    return FactoredRational.from_factors(tab, num_forms, den_forms, scalar)


def poly(form: LinearForm) -> Polynomial:
    return form.to_polynomial()


# a small standard table used across many tests: one gauge variable,
# the two rotation parameters and two framing parameters
def std_table() -> SymbolTable:
    return table(
        "s1:gauge",
        "eps1:equivariant",
        "eps2:equivariant",
        "tau1:framing",
        "tau2:framing",
    )
