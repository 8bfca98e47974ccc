"""Instanton partition function as a formal charge series.

The coefficient of q^k is the equivariant volume of the charge-k moduli
space, an exact rational function of the rotation and framing parameters.
The prepotential series is eps1*eps2 times the series logarithm, computed by
the exact recurrence; re-exponentiating reproduces the series bit-exactly.

Charge coefficients dominate runtime and are cached to disk, content
addressed by the canonical hash of the generating weight system together
with the engine version and conventions.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field

from . import __version__ as ENGINE_VERSION
from .adhm import AdhmSpec, rescale_epsilon, system_for
from .algebra import FactoredRational, Polynomial
from .errors import StructureError
from .parallel import pmap
from .quotient import equivariant_volume, weight_system_to_json
from .rational import rat
from .serialize import (
    canonical_dumps,
    factored_rational_from_json,
    factored_rational_to_json,
)
from .symbols import ROLE_EQUIVARIANT, ROLE_FRAMING, SymbolTable

CACHE_ENV = "INSTVOL_CACHE_DIR"


def parameter_table(group: str, n: int) -> SymbolTable:
    """Symbols the series coefficients live in (no gauge variables)."""
    framings = n if group in ("su", "sp") else n // 2
    entries = [("eps1", ROLE_EQUIVARIANT), ("eps2", ROLE_EQUIVARIANT)]
    entries += [(f"tau{l + 1}", ROLE_FRAMING) for l in range(framings)]
    return SymbolTable(entries)


def expected_volume_degree(ws) -> int:
    """Factor-count homogeneity of the volume: numerator factors minus
    denominator weights plus the number of gauge variables."""
    return (
        len(ws.roots)
        + len(ws.muc_weights)
        - len(ws.v_weights)
        + ws.gauge_count()
    )


@dataclass
class QSeries:
    group: str
    n: int
    coefficients: list  # index = charge; FactoredRational on parameter_table
    conventions: dict = field(default_factory=dict)

    @property
    def kmax(self) -> int:
        return len(self.coefficients) - 1

    def to_json(self) -> dict:
        return {
            "format": "q-series/1",
            "group": self.group,
            "n": self.n,
            "conventions": dict(self.conventions),
            "coefficients": [
                factored_rational_to_json(c, with_table=True)
                for c in self.coefficients
            ],
        }

    @staticmethod
    def from_json(doc) -> "QSeries":
        return QSeries(
            group=doc["group"],
            n=int(doc["n"]),
            coefficients=[
                factored_rational_from_json(c) for c in doc["coefficients"]
            ],
            conventions=dict(doc.get("conventions", {})),
        )


# ---------------------------------------------------------------------------
# cache


def cache_directory(explicit=None):
    if explicit:
        return explicit
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "instvol")


def coefficient_cache_key(ws, convention: str) -> str:
    blob = canonical_dumps(
        {
            "engine": ENGINE_VERSION,
            "convention": convention,
            "system": weight_system_to_json(ws),
        }
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_read(path):
    try:
        with open(path) as fh:
            return factored_rational_from_json(json.load(fh))
    except FileNotFoundError:
        return None


def _cache_write(path, value):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    doc = factored_rational_to_json(value, with_table=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# series assembly


def charge_coefficient(
    group: str,
    n: int,
    k: int,
    convention: str = "paper",
    cache_dir=None,
    bypass_cache: bool = False,
) -> FactoredRational:
    """Equivariant volume of the charge-k space, on the parameter table."""
    params = parameter_table(group, n)
    if k == 0:
        return FactoredRational.one(params)
    ws = system_for(AdhmSpec(group, n, k, convention))
    path = None
    if not bypass_cache:
        path = os.path.join(
            cache_directory(cache_dir), coefficient_cache_key(ws, convention) + ".json"
        )
        cached = _cache_read(path)
        if cached is not None:
            return cached
    volume = equivariant_volume(ws)
    if group != "su":
        volume = rescale_epsilon(volume, convention)
    expected = expected_volume_degree(ws)
    actual = volume.homogeneity_degree()
    if actual is not None and actual != expected:
        raise StructureError(
            f"volume degree {actual} violates the factor-count law {expected}"
        )
    if group == "su":
        assert expected == -2 * n * k, "unitary dimension law"
    coeff = volume.project(params)
    if path is not None:
        _cache_write(path, coeff)
    return coeff


def zinst(
    group: str,
    n: int,
    kmax: int,
    convention: str = "paper",
    jobs: int = 1,
    cache_dir=None,
    bypass_cache: bool = False,
) -> QSeries:
    """Partition function series up to charge kmax; charge zero is one."""
    if kmax < 0:
        raise StructureError("kmax must be nonnegative")
    charges = list(range(1, kmax + 1))
    values = pmap(
        _CoefficientJob(group, n, convention, cache_dir, bypass_cache),
        charges,
        jobs=jobs,
    )
    params = parameter_table(group, n)
    coefficients = [FactoredRational.one(params)] + values
    return QSeries(
        group=group,
        n=n,
        coefficients=coefficients,
        conventions={"rescale": convention, "engine": ENGINE_VERSION},
    )


class _CoefficientJob:
    """Picklable charge-coefficient worker for process pools."""

    def __init__(self, group, n, convention, cache_dir, bypass_cache):
        self.args = (group, n, convention, cache_dir, bypass_cache)

    def __call__(self, k):
        group, n, convention, cache_dir, bypass_cache = self.args
        return charge_coefficient(
            group, n, k, convention, cache_dir, bypass_cache
        )


# ---------------------------------------------------------------------------
# series logarithm / exponential


def series_log(coefficients: list) -> list:
    """log of a series with constant term one, by the exact recurrence."""
    if not coefficients or not coefficients[0].equals(
        FactoredRational.one(coefficients[0].table)
    ):
        raise StructureError("series logarithm needs constant term one")
    table = coefficients[0].table
    out = [FactoredRational.zero(table)]
    for k in range(1, len(coefficients)):
        acc = coefficients[k]
        for j in range(1, k):
            acc = acc - (out[j] * coefficients[k - j]).scaled(rat(j, k))
        out.append(acc)
    return out


def series_exp(coefficients: list) -> list:
    """exp of a series with constant term zero."""
    if not coefficients or not coefficients[0].is_zero():
        raise StructureError("series exponential needs constant term zero")
    table = coefficients[0].table
    out = [FactoredRational.one(table)]
    for k in range(1, len(coefficients)):
        acc = FactoredRational.zero(table)
        for j in range(1, k + 1):
            acc = acc + (coefficients[j] * out[k - j]).scaled(rat(j, k))
        out.append(acc)
    return out


def finst(z: QSeries) -> QSeries:
    """Prepotential series: eps1*eps2 times the series logarithm."""
    table = z.coefficients[0].table
    eps_poly = Polynomial.variable(table, "eps1") * Polynomial.variable(
        table, "eps2"
    )
    logs = series_log(z.coefficients)
    coeffs = [c.mul_poly(eps_poly) for c in logs]
    return QSeries(
        group=z.group,
        n=z.n,
        coefficients=coeffs,
        conventions={**z.conventions, "series": "prepotential"},
    )


def reexponentiate(f: QSeries) -> QSeries:
    """Inverse of finst: exp(F / (eps1 eps2)), for round-trip checks."""
    table = f.coefficients[0].table
    one_over = FactoredRational(
        table,
        1,
        Polynomial.one(table),
        [
            (_form_of(table, "eps1"), 1),
            (_form_of(table, "eps2"), 1),
        ],
    )
    scaled = [c * one_over for c in f.coefficients]
    return QSeries(
        group=f.group,
        n=f.n,
        coefficients=series_exp(scaled),
        conventions={**f.conventions, "series": "partition"},
    )


def _form_of(table, name):
    from .algebra import LinearForm

    return LinearForm.from_dict(table, {name: 1})


# ---------------------------------------------------------------------------
# evaluation


def evaluate(obj, assignment: dict):
    """Exact evaluation of a coefficient or a whole series."""
    if isinstance(obj, QSeries):
        return [c.evaluate(assignment) for c in obj.coefficients]
    if isinstance(obj, FactoredRational):
        return obj.evaluate(assignment)
    raise StructureError(f"cannot evaluate {type(obj).__name__}")
