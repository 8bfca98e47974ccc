"""Weight-system generators for the framed-instanton moduli spaces.

Each generator transcribes, factor by factor, the closed product formulas
for the equivariant Euler classes of the space of ADHM data, its complex
moment map, and the squared root product of the quotienting group:

* unitary framing (su): quotient by the unitary group of rank equal to the
  instanton charge c, with the global-weight-one lift of the rotation torus;
* symplectic framing (sp): quotient by the orthogonal group of the charge,
  with the global-weight-two lift; the extra 1/2 accounts for the quotient
  group having two components;
* orthogonal framing (so): quotient by the symplectic group of rank c, also
  with the weight-two lift.

Quadratic differences A^2 - B^2 are expanded into the polarized linear pair
(A - B), (A + B); each expanded factor is a genuine torus weight and pairs
positively with the relevant cutting circle (checked by the validator).

Convention notes recorded here rather than silently chosen:
* odd-charge sp: the quadratic block over pairs of gauge variables is
  transcribed with the general index pattern ((eps_k)^2 - (sigma_i +
  sigma_j)^2) over i <= j, which matches the dimension count of the
  symmetric square; printed specializations of these indices exist in the
  literature and disagree with the count.
* so: the zero-weight multiplicity of the moment-map Euler class is taken
  as floor(n/2), the framing-torus rank, which matches the even-n closed
  form literally and extends it to odd n with an integer exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .algebra import FactoredRational, LinearForm, Polynomial
from .errors import StructureError
from .rational import rat
from .quotient import WeightSystem
from .symbols import ROLE_EQUIVARIANT, ROLE_FRAMING, ROLE_GAUGE, SymbolTable

GROUPS = ("su", "sp", "so")
CONVENTIONS = ("paper", "halved")

HALF = rat(1, 2)


@dataclass(frozen=True)
class AdhmSpec:
    group: str
    n: int
    c: int
    rescale_convention: str = "paper"

    def __post_init__(self):
        if self.group not in GROUPS:
            raise StructureError(f"unknown gauge group family {self.group!r}")
        if self.n < 1 or self.c < 1:
            raise StructureError("rank and charge must both be at least 1")
        if self.rescale_convention not in CONVENTIONS:
            raise StructureError(
                f"unknown rescale convention {self.rescale_convention!r}"
            )


def _adhm_table(gauge_count: int, framing_count: int) -> SymbolTable:
    entries = [(f"s{i + 1}", ROLE_GAUGE) for i in range(gauge_count)]
    entries += [("eps1", ROLE_EQUIVARIANT), ("eps2", ROLE_EQUIVARIANT)]
    entries += [(f"tau{l + 1}", ROLE_FRAMING) for l in range(framing_count)]
    return SymbolTable(entries)


def _lf(table, **coeffs):
    return LinearForm.from_dict(table, coeffs)


def su_system(n: int, c: int) -> WeightSystem:
    """Unitary instantons: rank n framing, charge c.

    Ranges are transcribed verbatim, including the diagonal i = j factors,
    so eps1, eps2 and eps1+eps2 each enter with multiplicity c; they have no
    gauge coefficient and never serve as poles.
    """
    AdhmSpec("su", n, c)
    t = _adhm_table(c, n)
    s = [f"s{i + 1}" for i in range(c)]
    tau = [f"tau{l + 1}" for l in range(n)]

    v = []
    for eps in ("eps1", "eps2"):
        for i in range(c):
            for j in range(c):
                coeffs = {eps: 1}
                if i != j:
                    coeffs[s[i]] = coeffs.get(s[i], 0) + 1
                    coeffs[s[j]] = coeffs.get(s[j], 0) - 1
                v.append(_lf(t, **coeffs))
    for i in range(c):
        for o in range(n):
            v.append(_lf(t, **{s[i]: 1, tau[o]: -1}))
    for p in range(c):
        for q in range(n):
            v.append(_lf(t, **{"eps1": 1, "eps2": 1, s[p]: -1, tau[q]: 1}))

    muc = []
    for g in range(c):
        for h in range(c):
            coeffs = {"eps1": 1, "eps2": 1}
            if g != h:
                coeffs[s[g]] = 1
                coeffs[s[h]] = -1
            muc.append(_lf(t, **coeffs))

    roots = []
    for e in range(c):
        for f in range(c):
            if e != f:
                roots.append(_lf(t, **{s[e]: 1, s[f]: -1}))

    circle = {"eps1": rat(1), "eps2": rat(1)}
    circle.update({name: rat(-1) for name in tau})
    return WeightSystem(
        table=t,
        v_weights=v,
        muc_weights=muc,
        roots=roots,
        weyl_order=factorial(c),
        prefactor=1,
        cutting_circle=circle,
        name=f"su(n={n},c={c})",
    )


def _combo(*terms) -> dict:
    """Accumulate (name, coefficient) pairs; repeated names add up."""
    out = {}
    for name, coeff in terms:
        out[name] = out.get(name, 0) + coeff
    return {k: v for k, v in out.items() if v != 0}


def _quad_pair(t, a_coeffs: dict, b_coeffs: dict):
    """Expand A^2 - B^2 into the polarized pair (A - B, A + B)."""
    minus = dict(a_coeffs)
    plus = dict(a_coeffs)
    for k, c in b_coeffs.items():
        minus[k] = minus.get(k, 0) - c
        plus[k] = plus.get(k, 0) + c
    return (_lf(t, **{k: v for k, v in minus.items() if v != 0}),
            _lf(t, **{k: v for k, v in plus.items() if v != 0}))


def sp_system(n: int, c: int) -> WeightSystem:
    """Symplectic-framing instantons: quotient by the orthogonal group of
    the charge; gauge rank floor(c/2), weight-two lift, extra factor 1/2."""
    AdhmSpec("sp", n, c)
    m = c // 2
    odd = c % 2 == 1
    t = _adhm_table(m, n)
    s = [f"s{i + 1}" for i in range(m)]
    tau = [f"tau{l + 1}" for l in range(n)]
    eps_sum_half = {"eps1": HALF, "eps2": HALF}

    v = []
    for eps in ("eps1", "eps2"):
        if odd:
            v.append(_lf(t, **{eps: 1}))
            for i in range(m):
                v.extend(_quad_pair(t, {eps: 1}, {s[i]: 1}))
        for i in range(m):
            for j in range(m):
                coeffs = {eps: 1}
                if i != j:
                    coeffs[s[i]] = 1
                    coeffs[s[j]] = -1
                v.append(_lf(t, **coeffs))
        for i in range(m):
            for j in range(i, m):
                v.extend(_quad_pair(t, {eps: 1}, _combo((s[i], 1), (s[j], 1))))
    for i in range(m):
        for l in range(n):
            for tau_sign in (1, -1):
                a = dict(eps_sum_half)
                a[tau[l]] = tau_sign
                v.extend(_quad_pair(t, a, {s[i]: 1}))
    if odd:
        for l in range(n):
            v.extend(_quad_pair(t, dict(eps_sum_half), {tau[l]: 1}))

    muc = []
    for _ in range(m):
        muc.append(_lf(t, eps1=1, eps2=1))
    if odd:
        for i in range(m):
            muc.extend(_quad_pair(t, {"eps1": 1, "eps2": 1}, {s[i]: 1}))
    for i in range(m):
        for j in range(i + 1, m):
            muc.extend(_quad_pair(t, {"eps1": 1, "eps2": 1}, _combo((s[i], 1), (s[j], 1))))
            muc.extend(
                _quad_pair(t, {"eps1": 1, "eps2": 1}, {s[i]: 1, s[j]: -1})
            )

    roots = []
    for i in range(m):
        for j in range(i + 1, m):
            for _ in range(2):
                roots.append(_lf(t, **{s[i]: 1, s[j]: -1}))
                roots.append(_lf(t, **{s[i]: 1, s[j]: 1}))
    if odd:
        for i in range(m):
            for _ in range(2):
                roots.append(_lf(t, **{s[i]: 1}))

    weyl = 2 ** (m - 1) * factorial(m) if not odd else 2**m * factorial(m)
    if not odd and m == 0:
        raise StructureError("even charge must be at least 2")
    return WeightSystem(
        table=t,
        v_weights=v,
        muc_weights=muc,
        roots=roots,
        weyl_order=weyl,
        prefactor=HALF,
        cutting_circle={"eps1": rat(2), "eps2": rat(2)},
        name=f"sp(n={n},c={c})",
    )


def so_system(n: int, c: int) -> WeightSystem:
    """Orthogonal-framing instantons: quotient by the symplectic group of
    rank c, weight-two lift; framing torus has rank floor(n/2) and odd n
    contributes one extra fixed framing direction."""
    AdhmSpec("so", n, c)
    m = n // 2
    odd = n % 2 == 1
    t = _adhm_table(c, m)
    s = [f"s{i + 1}" for i in range(c)]
    tau = [f"tau{l + 1}" for l in range(m)]
    eps_sum_half = {"eps1": HALF, "eps2": HALF}

    v = []
    for eps in ("eps1", "eps2"):
        for i in range(c):
            for j in range(c):
                coeffs = {eps: 1}
                if i != j:
                    coeffs[s[i]] = 1
                    coeffs[s[j]] = -1
                v.append(_lf(t, **coeffs))
        for i in range(c):
            for j in range(i + 1, c):
                v.extend(_quad_pair(t, {eps: 1}, _combo((s[i], 1), (s[j], 1))))
    for i in range(c):
        for l in range(m):
            for tau_sign in (1, -1):
                a = dict(eps_sum_half)
                a[tau[l]] = tau_sign
                v.extend(_quad_pair(t, a, {s[i]: 1}))
    if odd:
        for i in range(c):
            v.extend(_quad_pair(t, dict(eps_sum_half), {s[i]: 1}))

    muc = []
    for _ in range(m):
        muc.append(_lf(t, eps1=1, eps2=1))
    for i in range(c):
        for j in range(i + 1, c):
            muc.extend(_quad_pair(t, {"eps1": 1, "eps2": 1}, {s[i]: 1, s[j]: -1}))
    for i in range(c):
        for j in range(i, c):
            muc.extend(_quad_pair(t, {"eps1": 1, "eps2": 1}, _combo((s[i], 1), (s[j], 1))))

    roots = []
    for i in range(c):
        for j in range(i + 1, c):
            for _ in range(2):
                roots.append(_lf(t, **{s[i]: 1, s[j]: -1}))
                roots.append(_lf(t, **{s[i]: 1, s[j]: 1}))
    for i in range(c):
        for _ in range(2):
            roots.append(_lf(t, **{s[i]: 2}))

    return WeightSystem(
        table=t,
        v_weights=v,
        muc_weights=muc,
        roots=roots,
        weyl_order=2**c * factorial(c),
        prefactor=1,
        cutting_circle={"eps1": rat(2), "eps2": rat(2)},
        name=f"so(n={n},c={c})",
    )


def system_for(spec: AdhmSpec) -> WeightSystem:
    if spec.group == "su":
        return su_system(spec.n, spec.c)
    if spec.group == "sp":
        return sp_system(spec.n, spec.c)
    return so_system(spec.n, spec.c)


def scale_symbols(f: FactoredRational, factors: dict) -> FactoredRational:
    """Substitute sym := factor * sym for each entry; exact and linear."""
    if f.is_zero():
        return f
    idx = {f.table.index(name): rat(v) for name, v in factors.items()}
    terms = {}
    for e, coeff in f.numerator.terms.items():
        c = coeff
        for i, scale in idx.items():
            if e[i]:
                c = c * scale ** e[i]
        terms[e] = c
    den = []
    for form, mult in f.denominator:
        coeffs = list(form.coeffs)
        for i, scale in idx.items():
            coeffs[i] = coeffs[i] * scale
        den.append((LinearForm(f.table, coeffs), mult))
    return FactoredRational(f.table, f.scalar, Polynomial(f.table, terms), den)


def rescale_epsilon(f: FactoredRational, convention: str) -> FactoredRational:
    """Convert weight-two-lift output to weight-one normalization by the
    exact substitution eps_k := eps_k / 2; identity for "paper"."""
    if convention not in CONVENTIONS:
        raise StructureError(f"unknown rescale convention {convention!r}")
    if convention == "paper":
        return f
    return scale_symbols(f, {"eps1": HALF, "eps2": HALF})
