"""Named verification suites.

The volume suite holds every weight system whose equivariant volume the
acceptance tests compute; the fidelity suite holds the generator instances
whose weight multisets are compared against independently transcribed
closed product formulas.  The check runners return structured reports and
are shared by the command line and the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

from .adhm import so_system, sp_system, su_system
from .algebra import FactoredRational, LinearForm, Polynomial
from .errors import InstvolError
from .nekrasov import (
    charge_coefficient,
    expected_volume_degree,
    finst,
    zinst,
)
from .oracle import partition_sum_su, run_character_oracle
from .quotient import (
    c4_hyperkahler_example,
    central_function,
    circle_reduction_example,
    equivariant_volume,
)
from .rational import rat
from .residue import enumerate_admissible_paths
from .symbols import ROLE_FRAMING

SU_VOLUME_CASES = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]
SP_VOLUME_CASES = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]
SO_VOLUME_CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)]

SP_FIDELITY_CASES = [(n, c) for n in (1, 2) for c in (1, 2, 3)]
SO_FIDELITY_CASES = [(n, c) for n in (2, 3, 4, 5) for c in (1, 2, 3)]


def volume_systems():
    """Every weight system whose volume the acceptance suite computes."""
    out = [circle_reduction_example(), c4_hyperkahler_example()]
    out += [su_system(n, c) for n, c in SU_VOLUME_CASES]
    out += [sp_system(n, c) for n, c in SP_VOLUME_CASES]
    out += [so_system(n, c) for n, c in SO_VOLUME_CASES]
    return out


def small_volume_systems():
    """The subset cheap enough for per-test reuse."""
    out = [circle_reduction_example(), c4_hyperkahler_example()]
    out += [su_system(n, c) for n, c in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]]
    out += [sp_system(n, c) for n, c in [(1, 1), (1, 2), (2, 2), (1, 3)]]
    out += [so_system(n, c) for n, c in [(2, 1), (2, 2), (3, 1), (4, 1)]]
    return out


# ---------------------------------------------------------------------------
# reference product transcriptions (for transcription fidelity)
#
# The reference side evaluates the closed product formulas numerically with
# plain rational arithmetic, never touching the weight-list generators or
# the polynomial classes: this is polynomial identity testing with exact
# coefficients, factor by factor, so nothing is ever expanded.


def reference_value(group: str, n: int, c: int, val):
    """Value of (numerator product, denominator product) of the closed
    formulas at a point; ``val`` maps symbol name -> rational."""
    e1, e2 = val("eps1"), val("eps2")
    esum = e1 + e2
    half = rat(1, 2)
    num = rat(1)
    den = rat(1)

    def sq(a, b):
        return a * a - b * b

    if group == "su":
        s = [val(f"s{i+1}") for i in range(c)]
        tau = [val(f"tau{l+1}") for l in range(n)]
        for e in range(c):
            for f in range(c):
                if e != f:
                    num = num * (s[e] - s[f])
        for g in range(c):
            for h in range(c):
                num = num * (esum + s[g] - s[h])
        for eps in (e1, e2):
            for i in range(c):
                for j in range(c):
                    den = den * (eps + s[i] - s[j])
        for i in range(c):
            for o in range(n):
                den = den * (s[i] - tau[o])
        for p in range(c):
            for q in range(n):
                den = den * (esum - s[p] + tau[q])
        return num, den

    if group == "sp":
        m = c // 2
        odd = c % 2 == 1
        s = [val(f"s{i+1}") for i in range(m)]
        tau = [val(f"tau{l+1}") for l in range(n)]
        for i in range(m):
            for j in range(i + 1, m):
                num = num * sq(s[i], s[j]) ** 2
        if odd:
            for i in range(m):
                num = num * s[i] * s[i]
        num = num * esum**m
        if odd:
            for i in range(m):
                num = num * sq(esum, s[i])
        for i in range(m):
            for j in range(i + 1, m):
                num = num * sq(esum, s[i] + s[j]) * sq(esum, s[i] - s[j])
        for eps in (e1, e2):
            if odd:
                den = den * eps
                for i in range(m):
                    den = den * sq(eps, s[i])
            for i in range(m):
                for j in range(m):
                    den = den * (eps + s[i] - s[j])
            for i in range(m):
                for j in range(i, m):
                    den = den * sq(eps, s[i] + s[j])
        for i in range(m):
            for l in range(n):
                den = den * sq(esum * half + tau[l], s[i])
                den = den * sq(esum * half - tau[l], s[i])
        if odd:
            for l in range(n):
                den = den * sq(esum * half, tau[l])
        return num, den

    # orthogonal framing
    m = n // 2
    odd = n % 2 == 1
    s = [val(f"s{i+1}") for i in range(c)]
    tau = [val(f"tau{l+1}") for l in range(m)]
    for i in range(c):
        for j in range(i + 1, c):
            num = num * sq(s[i], s[j]) ** 2
    for i in range(c):
        num = num * (s[i] + s[i]) ** 2
    num = num * esum**m
    for i in range(c):
        for j in range(i + 1, c):
            num = num * sq(esum, s[i] - s[j])
    for i in range(c):
        for j in range(i, c):
            num = num * sq(esum, s[i] + s[j])
    for eps in (e1, e2):
        for i in range(c):
            for j in range(c):
                den = den * (eps + s[i] - s[j])
        for i in range(c):
            for j in range(i + 1, c):
                den = den * sq(eps, s[i] + s[j])
    for i in range(c):
        for l in range(m):
            den = den * sq(esum * half + tau[l], s[i])
            den = den * sq(esum * half - tau[l], s[i])
    if odd:
        for i in range(c):
            den = den * sq(esum * half, s[i])
    return num, den


def generated_value(ws, point: tuple):
    """Products of the generated weight multisets, evaluated exactly."""
    num = rat(1)
    for form in list(ws.roots) + list(ws.muc_weights):
        num = num * form.evaluate(point)
    den = rat(1)
    for form in ws.v_weights:
        den = den * form.evaluate(point)
    return num, den


def fidelity_check(group: str, n: int, c: int, points: int = 20, seed: int = 0):
    """Polynomial identity testing at random rational points: the generated
    weight multisets re-multiplied must reproduce the reference products
    exactly at every point."""
    builder = {"su": su_system, "sp": sp_system, "so": so_system}[group]
    ws = builder(n, c)
    rng = random.Random(repr((seed, group, n, c)))
    mismatches = []
    for p in range(points):
        point = tuple(
            rat(rng.randint(1, 97), rng.randint(1, 13)) for _ in ws.table.names
        )
        lookup = dict(zip(ws.table.names, point))
        ref_num, ref_den = reference_value(group, n, c, lambda name: lookup[name])
        gen_num, gen_den = generated_value(ws, point)
        if ref_num != gen_num:
            mismatches.append((p, "numerator", ref_num, gen_num))
        if ref_den != gen_den:
            mismatches.append((p, "denominator", ref_den, gen_den))
    return {
        "system": ws.name,
        "points": points,
        "ok": not mismatches,
        "mismatches": mismatches,
    }


# ---------------------------------------------------------------------------
# check runners


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}" + (
            f"  ({self.detail})" if self.detail else ""
        )


def _expected_basic(ws):
    t = ws.table
    return FactoredRational(
        t,
        rat(1, 2),
        Polynomial.one(t),
        [(LinearForm.from_dict(t, {"tau1": 1}), 1)],
    )


def _expected_c4(ws):
    t = ws.table
    return FactoredRational(
        t,
        rat(1, 2),
        Polynomial.one(t),
        [
            (LinearForm.from_dict(t, {"tau1": 1}), 1),
            (LinearForm.from_dict(t, {"tau2": 1}), 1),
        ],
    )


def check_paper_examples() -> list:
    """The two closed-form worked examples, engine and character oracle."""
    results = []
    ws = circle_reduction_example()
    v = equivariant_volume(ws)
    results.append(
        CheckResult("circle-reduction volume = 1/(2 tau)", v.equals(_expected_basic(ws)))
    )
    ko = run_character_oracle(ws)
    results.append(
        CheckResult("circle-reduction character oracle agrees", ko.equals(v))
    )
    ws = c4_hyperkahler_example()
    v = equivariant_volume(ws)
    results.append(
        CheckResult("c4 quotient volume = 1/(2 tau1 tau2)", v.equals(_expected_c4(ws)))
    )
    pe = enumerate_admissible_paths(ws)
    results.append(
        CheckResult(
            "c4 admissible paths: two terms summing to the volume",
            len(pe.nonzero_paths()) == 2
            and pe.total.scaled(ws.prefactor / rat(ws.weyl_order)).equals(v),
        )
    )
    ko = run_character_oracle(ws)
    results.append(CheckResult("c4 character oracle agrees", ko.equals(v)))
    su11 = su_system(1, 1)
    results.append(
        CheckResult(
            "su(1,1) character oracle agrees",
            run_character_oracle(su11).equals(equivariant_volume(su11)),
        )
    )
    return results


def check_su_oracle(cases=None, jobs: int = 1, cache_dir=None) -> list:
    """Engine volumes against the partition-sum oracle."""
    cases = list(cases) if cases is not None else list(SU_VOLUME_CASES)
    results = []
    for n, k in cases:
        eng = charge_coefficient("su", n, k, cache_dir=cache_dir)
        orc = partition_sum_su(n, k)
        results.append(
            CheckResult(f"su(n={n},c={k}) volume = partition sum", eng.equals(orc))
        )
    return results


def check_series() -> list:
    """Rank-one series law: Z = exp(q/(eps1 eps2)) up to charge three."""
    z = zinst("su", 1, 3, bypass_cache=True)
    f = finst(z)
    t = z.coefficients[0].table
    e1e2 = [
        (LinearForm.from_dict(t, {"eps1": 1}), 1),
        (LinearForm.from_dict(t, {"eps2": 1}), 1),
    ]
    expected = [
        FactoredRational.one(t),
        FactoredRational(t, 1, Polynomial.one(t), e1e2),
        FactoredRational(t, rat(1, 2), Polynomial.one(t), [(f_, 2) for f_, _ in e1e2]),
        FactoredRational(t, rat(1, 6), Polynomial.one(t), [(f_, 3) for f_, _ in e1e2]),
    ]
    ok_z = all(a.equals(b) for a, b in zip(z.coefficients, expected))
    ok_f = (
        f.coefficients[1].equals(FactoredRational.one(t))
        and f.coefficients[2].is_zero()
        and f.coefficients[3].is_zero()
    )
    return [
        CheckResult("rank-one series coefficients 1/(k! (eps1 eps2)^k)", ok_z),
        CheckResult("rank-one prepotential q-coefficients [1, 0, 0]", ok_f),
    ]


def check_path_lemma(systems=None) -> list:
    results = []
    for ws in systems if systems is not None else small_volume_systems():
        v = equivariant_volume(ws)
        pe = enumerate_admissible_paths(ws)
        ok = pe.total.scaled(ws.prefactor / rat(ws.weyl_order)).equals(v)
        results.append(CheckResult(f"{ws.name} path sum = iterated residue", ok))
    return results


def check_fidelity(cases_sp=None, cases_so=None) -> list:
    results = []
    for n, c in cases_sp if cases_sp is not None else SP_FIDELITY_CASES:
        rep = fidelity_check("sp", n, c)
        results.append(
            CheckResult(f"sp(n={n},c={c}) transcription fidelity", rep["ok"])
        )
    for n, c in cases_so if cases_so is not None else SO_FIDELITY_CASES:
        rep = fidelity_check("so", n, c)
        results.append(
            CheckResult(f"so(n={n},c={c}) transcription fidelity", rep["ok"])
        )
    return results


# ---------------------------------------------------------------------------
# symmetry and ordering reports


def tau_permutation_agrees(ws, volume=None) -> bool:
    """Volume invariance under permutations of the framing parameters."""
    v = volume if volume is not None else equivariant_volume(ws)
    taus = [n for n in ws.table.names if ws.table.role(n) == ROLE_FRAMING]
    ok = True
    for perm in permutations(taus):
        if perm == tuple(taus):
            continue
        ok = ok and _relabel(v, dict(zip(taus, perm))).equals(v)
    return ok


def signed_tau_agrees(ws, volume=None) -> bool:
    """Volume invariance under sign flips of each framing parameter."""
    v = volume if volume is not None else equivariant_volume(ws)
    taus = [n for n in ws.table.names if ws.table.role(n) == ROLE_FRAMING]
    ok = True
    for flip in taus:
        ok = ok and _flip_sign(v, flip).equals(v)
    return ok


def _relabel(f: FactoredRational, mapping: dict) -> FactoredRational:
    t = f.table
    perm = [t.index(mapping.get(name, name)) for name in t.names]
    terms = {}
    for e, coeff in f.numerator.terms.items():
        out = [0] * len(e)
        for src, dst in enumerate(perm):
            out[dst] = e[src]
        terms[tuple(out)] = coeff
    den = []
    for form, mult in f.denominator:
        coeffs = [rat(0)] * len(t)
        for src, dst in enumerate(perm):
            coeffs[dst] = form.coeffs[src]
        den.append((LinearForm(t, coeffs), mult))
    return FactoredRational(t, f.scalar, Polynomial(t, terms), den)


def _flip_sign(f: FactoredRational, name: str) -> FactoredRational:
    from .adhm import scale_symbols

    return scale_symbols(f, {name: rat(-1)})


def check_symmetry(systems=None) -> list:
    results = []
    for ws in systems if systems is not None else small_volume_systems():
        v = equivariant_volume(ws)
        group = ws.name.split("(")[0]
        ok = tau_permutation_agrees(ws, v)
        if group in ("sp", "so"):
            ok = ok and signed_tau_agrees(ws, v)
        label = "signed tau symmetry" if group in ("sp", "so") else "tau symmetry"
        results.append(CheckResult(f"{ws.name} {label}", ok))
    return results


def check_dimension(systems=None) -> list:
    results = []
    for ws in systems if systems is not None else small_volume_systems():
        v = equivariant_volume(ws)
        ok = v.homogeneity_degree() == expected_volume_degree(ws)
        results.append(CheckResult(f"{ws.name} homogeneity degree law", ok))
    return results


def ordering_report(ws) -> dict:
    """Volumes under every gauge-variable ordering, with merged-class
    attribution for any disagreement."""
    orderings = []
    base = None
    for order in permutations(ws.residue_order()):
        v, trace = equivariant_volume(ws, order=order, with_trace=True)
        merged = _has_merged_class(trace)
        if base is None:
            base = v
        orderings.append(
            {
                "order": list(order),
                "fingerprint": v.fingerprint(),
                "agrees": v.equals(base),
                "merged_class_seen": merged,
            }
        )
    disagreements = [o for o in orderings if not o["agrees"]]
    return {
        "system": ws.name,
        "orderings": orderings,
        "all_agree": not disagreements,
        "disagreements_explained": all(
            o["merged_class_seen"] for o in disagreements
        ),
    }


def _has_merged_class(trace) -> bool:
    if trace is None or trace.var is None:
        return False
    for b in trace.branches:
        if b.pole["order"] > 1:
            return True
        if b.child is not None and _has_merged_class(b.child):
            return True
    return False


def check_ordering(systems=None) -> list:
    results = []
    pool = systems if systems is not None else [
        ws for ws in small_volume_systems() if 2 <= ws.gauge_count() <= 3
    ]
    for ws in pool:
        rep = ordering_report(ws)
        ok = rep["all_agree"] or rep["disagreements_explained"]
        detail = "all orderings agree" if rep["all_agree"] else "disagreements traced to merged classes"
        results.append(CheckResult(f"{ws.name} ordering independence", ok, detail))
    return results


SUITES = {
    "paper-examples": lambda: check_paper_examples(),
    "su-oracle": lambda: check_su_oracle(),
    "series": lambda: check_series(),
    "path-lemma": lambda: check_path_lemma(),
    "fidelity": lambda: check_fidelity(),
    "symmetry": lambda: check_symmetry(),
    "dimension": lambda: check_dimension(),
    "ordering": lambda: check_ordering(),
}


def run_suite(name: str) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise InstvolError(
            f"unknown suite {name!r}; available: {', '.join(list(SUITES) + ['all'])}"
        )
    return SUITES[name]()
