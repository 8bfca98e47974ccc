"""Plain-text and LaTeX rendering of engine values.

Rendering always goes through the canonical form, so identical values print
identically regardless of the computation that produced them.
"""

from __future__ import annotations

from .algebra import FactoredRational, LinearForm, Polynomial

_LATEX_NAMES = {
    "eps1": r"\epsilon_1",
    "eps2": r"\epsilon_2",
}


def _latex_symbol(name: str) -> str:
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if head == "s":
        head = r"\sigma"
    elif head == "tau":
        head = r"\tau"
    return f"{head}_{{{tail}}}" if tail else head


def _rat_latex(r) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    sign = "-" if r < 0 else ""
    return rf"{sign}\frac{{{abs(r.numerator)}}}{{{r.denominator}}}"


def polynomial_latex(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for expo, coeff in p.sorted_terms():
        mono = " ".join(
            _latex_symbol(n) + (f"^{{{k}}}" if k > 1 else "")
            for n, k in zip(p.table.names, expo)
            if k
        )
        if not mono:
            term = _rat_latex(coeff)
        elif coeff == 1:
            term = mono
        elif coeff == -1:
            term = f"-{mono}"
        else:
            term = f"{_rat_latex(coeff)} {mono}"
        if bits and not term.startswith("-"):
            bits.append("+")
        bits.append(term)
    return " ".join(bits)


def linear_form_latex(form: LinearForm) -> str:
    return polynomial_latex(form.to_polynomial())


def factored_rational_latex(f: FactoredRational) -> str:
    f = f.canonical()
    if f.is_zero():
        return "0"
    num = polynomial_latex(f.numerator)
    scalar = "" if f.scalar == 1 else _rat_latex(f.scalar) + r" \, "
    if num == "1":
        top = "1"
    elif scalar:
        top = rf"\left({num}\right)"
    else:
        top = num
    if not f.denominator:
        return f"{scalar}{top}" if top != "1" or not scalar else scalar.rstrip(r" \, ") or "1"
    den = " ".join(
        rf"\left({linear_form_latex(form)}\right)" + (f"^{{{m}}}" if m > 1 else "")
        for form, m in f.denominator
    )
    return rf"{scalar}\frac{{{top}}}{{{den}}}"


def factored_rational_text(f: FactoredRational) -> str:
    f = f.canonical()
    if f.is_zero():
        return "0"
    parts = []
    if f.scalar != 1 or (f.numerator.degree() == 0 and not f.denominator):
        parts.append(str(f.scalar))
    num = repr(f.numerator)
    if num != "1":
        parts.append(f"({num})")
    head = " * ".join(parts) if parts else "1"
    if not f.denominator:
        return head
    den = " ".join(
        f"({form!r})" + (f"^{m}" if m > 1 else "") for form, m in f.denominator
    )
    return f"{head} / {den}"
