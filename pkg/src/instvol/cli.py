"""Command-line front end.

Subcommands: volume, series, residue, check, trace, export.  All outputs are
deterministic for a fixed configuration and engine version; exit codes are 0
for success, 1 for validation or usage errors, 2 for computation errors, and
3 for a failed check suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .adhm import AdhmSpec, rescale_epsilon, system_for
from .errors import (
    BetaOrderMismatch,
    InstvolError,
    PoleAtAssignment,
    StructureError,
    UnsupportedFeature,
    ValidationError,
    VanishingFactor,
)
from .nekrasov import evaluate, finst, zinst
from .parallel import default_jobs
from .quotient import (
    equivariant_volume,
    validate_polarization,
    weight_system_from_json,
    weight_system_to_json,
)
from .rational import rat_from_str
from .render import factored_rational_latex, factored_rational_text
from .serialize import canonical_dumps, factored_rational_to_json
from .suite import run_suite

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPUTATION = 2
EXIT_CHECK_FAILED = 3


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    n: int | None = None
    charge: int | None = None
    kmax: int | None = None
    input_path: str | None = None
    output_path: str | None = None
    sigma_order: list | None = None
    rescale: str = "paper"
    assignment: dict = field(default_factory=dict)
    fmt: str = "text"
    jobs: int = 1
    cache_dir: str | None = None
    bypass_cache: bool = False
    suite: str = "all"
    prepotential: bool = False

    def validate(self):
        generator = self.group is not None
        from_file = self.input_path is not None
        if self.command in ("volume", "trace"):
            if generator == from_file:
                raise ValidationError(
                    "exactly one input source required: either --group/--n/"
                    "--charge or --input FILE"
                )
            if generator and (self.n is None or self.charge is None):
                raise ValidationError("--group needs --n and --charge")
        if self.command == "residue" and not from_file:
            raise ValidationError("residue needs --input FILE")
        if self.command in ("series", "export") and (
            self.group is None or self.n is None
        ):
            raise ValidationError(f"{self.command} needs --group and --n")
        if self.command == "series" and self.kmax is None:
            raise ValidationError("series needs --kmax")
        if self.command == "export" and self.charge is None:
            raise ValidationError("export needs --charge")


def _load_system(config: RunConfig):
    if config.input_path:
        try:
            with open(config.input_path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read weight system: {exc}") from exc
        return weight_system_from_json(doc)
    spec = AdhmSpec(config.group, config.n, config.charge, config.rescale)
    return system_for(spec)


def _emit(config: RunConfig, text: str):
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _render_value(config: RunConfig, value) -> str:
    if config.fmt == "json":
        return canonical_dumps(factored_rational_to_json(value, with_table=True))
    if config.fmt == "latex":
        return factored_rational_latex(value)
    return factored_rational_text(value)


def _cmd_volume(config: RunConfig) -> int:
    ws = _load_system(config)
    volume = equivariant_volume(ws, order=config.sigma_order)
    if config.group in ("sp", "so"):
        volume = rescale_epsilon(volume, config.rescale)
    lines = [_render_value(config, volume)]
    if config.assignment:
        value = evaluate(volume, config.assignment)
        lines.append(f"value at assignment: {value}")
    _emit(config, "\n".join(lines))
    return EXIT_OK


def _cmd_residue(config: RunConfig) -> int:
    ws = _load_system(config)
    report = validate_polarization(ws)
    if not report["ok"]:
        raise ValidationError(
            "weight system fails polarization validation",
            violations=report["violations"],
        )
    volume = equivariant_volume(ws, order=config.sigma_order)
    _emit(config, _render_value(config, volume))
    return EXIT_OK


def _cmd_series(config: RunConfig) -> int:
    series = zinst(
        config.group,
        config.n,
        config.kmax,
        convention=config.rescale,
        jobs=config.jobs,
        cache_dir=config.cache_dir,
        bypass_cache=config.bypass_cache,
    )
    if config.prepotential:
        series = finst(series)
    if config.fmt == "json":
        _emit(config, canonical_dumps(series.to_json()))
        return EXIT_OK
    lines = []
    for k, coeff in enumerate(series.coefficients):
        rendered = (
            factored_rational_latex(coeff)
            if config.fmt == "latex"
            else factored_rational_text(coeff)
        )
        lines.append(f"q^{k}: {rendered}")
    if config.assignment:
        values = evaluate(series, config.assignment)
        lines.append("values: " + ", ".join(str(v) for v in values))
    _emit(config, "\n".join(lines))
    return EXIT_OK


def _cmd_check(config: RunConfig) -> int:
    results = run_suite(config.suite)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def _cmd_trace(config: RunConfig) -> int:
    ws = _load_system(config)
    _, trace = equivariant_volume(ws, order=config.sigma_order, with_trace=True)
    if config.fmt == "json":
        _emit(config, canonical_dumps(trace.to_json()))
    else:
        _emit(config, trace.diagram())
    return EXIT_OK


def _cmd_export(config: RunConfig) -> int:
    spec = AdhmSpec(config.group, config.n, config.charge, config.rescale)
    ws = system_for(spec)
    _emit(config, canonical_dumps(weight_system_to_json(ws)))
    return EXIT_OK


_COMMANDS = {
    "volume": _cmd_volume,
    "series": _cmd_series,
    "residue": _cmd_residue,
    "check": _cmd_check,
    "trace": _cmd_trace,
    "export": _cmd_export,
}


def run(config: RunConfig) -> int:
    try:
        config.validate()
        return _COMMANDS[config.command](config)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (
        VanishingFactor,
        PoleAtAssignment,
        UnsupportedFeature,
        BetaOrderMismatch,
    ) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except StructureError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InstvolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


def _parse_assignment(text: str) -> dict:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValidationError(f"bad assignment entry {item!r} (need name=value)")
        name, value = item.split("=", 1)
        try:
            out[name.strip()] = rat_from_str(value)
        except ValueError as exc:
            raise ValidationError(f"bad rational {value!r} in assignment") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="instvol",
        description=(
            "Exact equivariant volumes of linear symplectic and hyper-Kahler "
            "quotients by iterated positive residues, and instanton "
            "partition function series for the classical gauge groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_generator(p, charge=True):
        p.add_argument("--group", choices=("su", "sp", "so"))
        p.add_argument("--n", type=int, help="framing rank parameter")
        if charge:
            p.add_argument("--charge", type=int, help="instanton charge")
        p.add_argument(
            "--rescale",
            choices=("paper", "halved"),
            default="paper",
            help="weight-two lift handling for sp/so outputs",
        )

    def add_common(p):
        p.add_argument("--format", dest="fmt", choices=("text", "json", "latex"), default="text")
        p.add_argument("--output", dest="output_path", help="write to file instead of stdout")

    p = sub.add_parser("volume", help="equivariant volume of one space")
    add_generator(p)
    p.add_argument("--input", dest="input_path", help="weight-system JSON file")
    p.add_argument("--order", help="comma-separated gauge variable order")
    p.add_argument("--eval", dest="assignment", help="name=value,... exact evaluation")
    add_common(p)

    p = sub.add_parser("series", help="partition function series")
    add_generator(p, charge=False)
    p.add_argument("--kmax", type=int, help="maximal charge")
    p.add_argument("--prepotential", action="store_true", help="emit the log series")
    p.add_argument("--eval", dest="assignment", help="name=value,... exact evaluation")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--cache-dir", dest="cache_dir")
    p.add_argument("--no-cache", dest="bypass_cache", action="store_true")
    add_common(p)

    p = sub.add_parser("residue", help="volume of a weight system from JSON")
    p.add_argument("--input", dest="input_path", required=True)
    p.add_argument("--order", help="comma-separated gauge variable order")
    add_common(p)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument(
        "--suite",
        default="all",
        help="paper-examples, su-oracle, series, path-lemma, fidelity, "
        "symmetry, dimension, ordering, or all",
    )
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("trace", help="export the residue branch tree")
    add_generator(p)
    p.add_argument("--input", dest="input_path")
    p.add_argument("--order", help="comma-separated gauge variable order")
    add_common(p)

    p = sub.add_parser("export", help="write a generated weight system as JSON")
    add_generator(p)
    add_common(p)
    return parser


def config_from_args(args) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in (
        "group",
        "n",
        "charge",
        "kmax",
        "input_path",
        "output_path",
        "cache_dir",
        "suite",
        "jobs",
        "fmt",
        "rescale",
        "prepotential",
        "bypass_cache",
    ):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(config, name, getattr(args, name))
    if getattr(args, "order", None):
        config.sigma_order = [v.strip() for v in args.order.split(",")]
    if getattr(args, "assignment", None):
        config.assignment = _parse_assignment(args.assignment)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
