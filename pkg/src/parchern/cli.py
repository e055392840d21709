"""Command-line entry point ``parchern``.

Exit codes: 0 when every executed check passes, 1 when a check fails, 2 on
unusable input (unknown scenario, bad parameter, malformed file).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import corpus
from .chow import ChowModel
from .errors import InvalidModelError, ModelMismatchError, PreconditionError, SchemaError
from .grr import chi, family_from_dict, log_de_rham_euler
from .parabolic import ParabolicKClass, ch_par, normal_form
from .scenarios import SCENARIOS, ScenarioError, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_model(ref: str) -> ChowModel:
    builtins = corpus.models()
    if ref in builtins and not Path(ref).exists():
        return builtins[ref]
    return ChowModel.from_dict(_load_json(ref), source=ref)


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputError(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_list(args) -> int:
    width = max(len(n) for n in SCENARIOS)
    for name, entry in SCENARIOS.items():
        params = " ".join(f"{k}={d!r}" if isinstance(d, str) else f"{k}={d}"
                          for k, (_, d) in entry.params.items())
        extra = " (needs --input)" if entry.needs_input else ""
        print(f"{name:<{width}}  {entry.summary}{extra}" + (f"  [{params}]" if params else ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _load_json(args.input) if args.input else None
    report = run_scenario(args.scenario, _parse_params(args.param), data, args.input)
    sys.stdout.write(report.to_json() if args.report == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_chern(args) -> int:
    model = _load_model(args.model)
    data = _load_json(args.bundle)
    if isinstance(data, dict) and data.get("model") not in (None, model.name):
        raise SchemaError(f"bundle refers to model {data['model']!r} but {model.name!r} was given",
                          "$.model", args.bundle)
    F = ParabolicKClass.from_dict(data, model, source=args.bundle)
    ch = ch_par(F)
    nf = normal_form(F)
    normal = [{"mult": m, "c1": lb.c1.to_dict(), "twist": lb.twist.to_dict()}
              for lb, m in sorted(nf.items(), key=lambda kv: repr(kv[0].c1) + repr(kv[0].twist))]
    payload = {"model": model.name, "rank": F.rank, "ch_par": ch.to_dict(), "normal_form": normal}
    _emit(payload, f"rank {F.rank}\nch_par = {ch!r}\n", args.report)
    return EXIT_OK


def cmd_chi(args) -> int:
    fam = family_from_dict(_load_json(args.family), corpus.models(), source=args.family)
    raw = _load_json(args.cls)
    if not isinstance(raw, dict):
        raise SchemaError("a class must map basis labels to rationals", "$", args.cls)
    try:
        x = fam.total.element(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(str(exc), "$", args.cls) from None
    value = chi(fam, x)
    drv = log_de_rham_euler(fam, x)
    payload = {"family": fam.name, "chi": value.to_dict(), "log_de_rham_euler": drv.to_dict(),
               "in_ch0": drv.in_ch0()}
    _emit(payload, f"chi = {value!r}\nlog de Rham Euler class = {drv!r}\n", args.report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parchern",
                                description="Exact parabolic Chern-character checks.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios").set_defaults(func=cmd_list)

    v = sub.add_parser("verify", help="run a scenario")
    v.add_argument("scenario")
    v.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    v.add_argument("--report", choices=("text", "json"), default="text")
    v.add_argument("--input", metavar="FILE")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chern", help="parabolic Chern character of a bundle")
    c.add_argument("bundle")
    c.add_argument("--model", required=True, help="model JSON file or built-in model name")
    c.add_argument("--report", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_chern)

    x = sub.add_parser("chi", help="relative Euler characteristic of a class on a family")
    x.add_argument("family")
    x.add_argument("--class", dest="cls", required=True, metavar="ELEMENT")
    x.add_argument("--report", choices=("text", "json"), default="text")
    x.set_defaults(func=cmd_chi)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SchemaError, InputError, ScenarioError, InvalidModelError, ModelMismatchError,
            PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
