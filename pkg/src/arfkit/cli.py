"""Command-line front end.

    arfkit form "x1*x2 + x3^2 + x3*x4"
    arfkit semigroup --generators 4,6,7
    arfkit branch --input cusp.txt --truncation 64 --json
    arfkit ramify --orders 8,8,8,2,2,1 --abelian false --json
    arfkit --from-json previous_report.json

Exit codes: 0 ok, 1 input error, 2 precision failure, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import quadratic, ramification
from .branch import (
    CONSISTENT,
    DEFAULT_MAX_STEPS,
    MAX_TRUNCATION,
    BranchParam,
    branch_report,
)
from .errors import ArfkitError, InconsistencyError, InputError
from .semigroup import (
    NumericalSemigroup,
    arf_closure,
    characters,
    from_generators,
    is_arf,
    jacobian_multiplicity_sequence,
    multiplicity_sequence,
)
from .series import DEFAULT_TRUNCATION, check_characteristic

SUBCOMMANDS = ("form", "semigroup", "branch", "ramify")
MIN_TRUNCATION = 8


@dataclass
class Request:
    subcommand: str
    payload: dict[str, Any]
    truncation: int = DEFAULT_TRUNCATION
    max_steps: int = DEFAULT_MAX_STEPS
    format: str = "text"
    precision_guard: bool = True


@dataclass
class Report:
    subcommand: str
    input: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    exit_code: int = 0

    def as_dict(self) -> dict[str, Any]:
        out = {"subcommand": self.subcommand, "input": self.input}
        out.update(self.results)
        out["diagnostics"] = self.diagnostics
        out["exit_code"] = self.exit_code
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _add_global(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--truncation", type=int, default=d(None),
                   help="working truncation T (default $ARFKIT_TRUNCATION or 64)")
    p.add_argument("--max-steps", type=int, default=d(DEFAULT_MAX_STEPS))
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--json", dest="format", action="store_const", const="json", default=d("text"),
                   help="shorthand for --format json")
    p.add_argument("--no-precision-guard", dest="precision_guard", action="store_false",
                   default=d(True))
    p.add_argument("--from-json", metavar="FILE", default=d(None),
                   help="re-run the input echoed in a previous JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arfkit", description=__doc__.split("\n\n")[0])
    _add_global(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    form = sub.add_parser("form", help="Arf invariant of a quadratic form over GF(2)")
    form.add_argument("form", nargs="?", help='monomials, e.g. "x1*x2 + x3^2"')
    form.add_argument("--dim", type=int)

    sg = sub.add_parser("semigroup", help="Arf closure, multiplicity sequence and characters")
    sg.add_argument("--generators", type=_int_list)

    br = sub.add_parser("branch", help="multiplicity sequence of a parametrized branch, two ways")
    br.add_argument("--input", help="file with one series per line, or - for stdin")
    br.add_argument("--char", type=int, default=0, help="coefficient characteristic (0 or prime)")

    ra = sub.add_parser("ramify", help="Herbrand function and Hasse-Arf check")
    ra.add_argument("--orders", type=_int_list, help="|G_-1|,|G_0|,...,|G_r|")
    ra.add_argument("--abelian", type=_bool, default=False)
    ra.add_argument("--label", default="")

    for p in (form, sg, br, ra):
        _add_global(p, suppress=True)
    return parser


def _default_truncation() -> int:
    raw = os.environ.get("ARFKIT_TRUNCATION")
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"ARFKIT_TRUNCATION must be an integer, got {raw!r}") from None


def _read_branch(source: str) -> list[str]:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"--input: cannot read {source}: {exc.strerror}") from None
    lines = [ln.strip() for ln in text.splitlines()]
    return [ln for ln in lines if ln and not ln.startswith("#")]


def parse_args(argv: Sequence[str]) -> Request:
    ns = build_parser().parse_args(list(argv))
    truncation = ns.truncation if ns.truncation is not None else _default_truncation()
    if truncation < MIN_TRUNCATION:
        raise InputError(f"--truncation must be at least {MIN_TRUNCATION}, got {truncation}")
    if ns.max_steps < 1:
        raise InputError(f"--max-steps must be at least 1, got {ns.max_steps}")
    opts = dict(truncation=truncation, max_steps=ns.max_steps, format=ns.format,
                precision_guard=ns.precision_guard)

    if ns.from_json:
        try:
            with open(ns.from_json, encoding="utf-8") as fh:
                data = json.load(fh)
            subcommand, payload = data["subcommand"], dict(data["input"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"--from-json: not a readable arfkit report ({exc})") from None
        if subcommand not in SUBCOMMANDS:
            raise InputError(f"--from-json: unknown subcommand {subcommand!r}")
        if ns.subcommand and ns.subcommand != subcommand:
            raise InputError(f"--from-json: report is for {subcommand!r}, not {ns.subcommand!r}")
        if subcommand == "branch":
            opts.update(truncation=payload.pop("truncation", truncation),
                        max_steps=payload.pop("max_steps", ns.max_steps),
                        precision_guard=payload.pop("precision_guard", ns.precision_guard))
        return Request(subcommand, payload, **opts)

    if ns.subcommand is None:
        raise InputError("arfkit: a subcommand is required (form, semigroup, branch, ramify)")
    if ns.subcommand == "form":
        if ns.form is None:
            raise InputError("form: the FORM argument is required")
        q = quadratic.QuadraticFormF2.parse(ns.form, ns.dim)
        payload = {"form": str(q), "dim": q.dim}
    elif ns.subcommand == "semigroup":
        if ns.generators is None:
            raise InputError("semigroup: --generators is required")
        payload = {"generators": sorted(set(ns.generators))}
    elif ns.subcommand == "branch":
        if ns.input is None:
            raise InputError("branch: --input is required")
        payload = {"coords": _read_branch(ns.input), "char": check_characteristic(ns.char)}
    else:
        if ns.orders is None:
            raise InputError("ramify: --orders is required")
        payload = {"orders": ns.orders, "abelian": ns.abelian, "label": ns.label}
    return Request(ns.subcommand, payload, **opts)


def _semigroup_json(S: NumericalSemigroup) -> dict[str, Any]:
    return {"elements_below_conductor": list(S.small), "conductor": S.conductor}


def _frac(x: Fraction) -> str:
    return str(x)


def _run_form(req: Request, rep: Report) -> None:
    p = req.payload
    q = quadratic.QuadraticFormF2.parse(p["form"], p.get("dim"))
    rep.input = {"form": str(q), "dim": q.dim}
    nondeg = quadratic.is_nondegenerate(q)
    ones = quadratic.count_ones(q) if q.dim <= quadratic.ENUMERATION_LIMIT else None
    rep.results = {"dim": q.dim, "nondegenerate": nondeg, "count_ones": ones, "arf": None}
    if not nondeg:
        rep.diagnostics.append("degenerate form: the Arf invariant is undefined")
        rep.exit_code = InputError.exit_code
        return
    arf = quadratic.arf_symplectic(q)
    basis = quadratic.symplectic_basis(q)
    rep.results["symplectic_basis"] = [[list(a), list(b)] for a, b in basis.pairs]
    if ones is not None and quadratic.arf_democratic(q) != arf:
        raise InconsistencyError("majority rule and symplectic formula disagree")
    rep.results["arf"] = arf


def _run_semigroup(req: Request, rep: Report) -> None:
    gens = [int(g) for g in req.payload["generators"]]
    rep.input = {"generators": sorted(set(gens))}
    G = from_generators(gens)
    A = arf_closure(G)
    seq = multiplicity_sequence(A)
    chars = characters(A)
    jac = jacobian_multiplicity_sequence(chars)
    rep.results = {
        **_semigroup_json(G),
        "is_arf": is_arf(G),
        "closure": list(A.small),
        "closure_conductor": A.conductor,
        "multiplicity_sequence": list(seq),
        "characters": list(chars),
        "jacobian_sequence": list(jac),
    }
    if jac != seq:
        raise InconsistencyError(f"Jacobian replay {jac} differs from closure sequence {seq}")


def _run_branch(req: Request, rep: Report) -> None:
    coords = [str(c) for c in req.payload["coords"]]
    char = check_characteristic(int(req.payload.get("char", 0)))
    rep.input = {"coords": coords, "char": char, "truncation": req.truncation,
                 "max_steps": req.max_steps, "precision_guard": req.precision_guard}
    # literals are exact polynomials: parse once at the largest precision any retry may need
    b = BranchParam.parse(coords, 2 * max(req.truncation, MAX_TRUNCATION), char)
    r = branch_report(b, req.truncation, req.max_steps, req.precision_guard,
                      max(req.truncation, MAX_TRUNCATION))
    rep.results = {
        "coords_canonical": list(r.coords),
        "truncation_used": r.truncation,
        "multiplicity_sequence_blowup": list(r.blowup_sequence),
        "orders_semigroup": _semigroup_json(r.orders),
        "is_arf_ring": r.ring_is_arf,
        "arf_ring_closure": _semigroup_json(r.ring_closure_orders),
        "multiplicity_sequence_semigroup": list(r.semigroup_sequence),
        "characters": list(r.characters),
        "jacobian_sequence": list(r.jacobian_sequence),
        "semigroup_closure": _semigroup_json(r.semigroup_closure),
        "closures_agree": r.closures_agree,
        "verdict": r.verdict,
    }
    rep.diagnostics.extend(r.diagnostics)
    if r.verdict != CONSISTENT:
        if char == 0:
            raise InconsistencyError("blow-up and semigroup routes disagree in characteristic 0")
        rep.diagnostics.append(f"routes disagree in characteristic {char} (reported, not asserted)")


def _run_ramify(req: Request, rep: Report) -> None:
    p = req.payload
    F = ramification.Filtration(ramification.parse_orders(p["orders"]), bool(p.get("abelian")),
                                str(p.get("label", "")))
    rep.input = {"orders": list(F.orders), "abelian": F.abelian, "label": F.label}
    check = ramification.hasse_arf_check(F)
    rep.results = {
        "phi_breakpoints": [[u, _frac(v)] for u, v in ramification.phi_breakpoints(F)],
        "lower_jumps": ramification.lower_jumps(F),
        "upper_jumps": [_frac(j) for j in check.jumps],
        "all_integral": check.all_integral,
        "tame_drop": ramification.is_tamely_split(F),
        "verdict": check.verdict,
    }


_RUNNERS = {"form": _run_form, "semigroup": _run_semigroup, "branch": _run_branch,
            "ramify": _run_ramify}


def run(req: Request) -> Report:
    rep = Report(req.subcommand, dict(req.payload))
    try:
        _RUNNERS[req.subcommand](req, rep)
    except ArfkitError as exc:
        rep.diagnostics.append(f"{type(exc).__name__}: {exc}")
        rep.exit_code = exc.exit_code
    except Exception as exc:  # noqa: BLE001 - never crash past the exit-code contract
        rep.diagnostics.append(f"internal error {type(exc).__name__}: {exc}")
        rep.exit_code = InconsistencyError.exit_code
    return rep


def _text_value(v: Any, nested: bool = False) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return "-"
    if isinstance(v, list):
        if not v:
            return "()" if nested else "(none)"
        inner = ", ".join(_text_value(x, True) for x in v)
        return f"({inner})" if nested else inner
    return str(v)


def _flatten(prefix: str, d: dict[str, Any], out: list[tuple[str, str]]) -> None:
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            _flatten(key + ".", v, out)
        else:
            out.append((key, _text_value(v)))


def render(rep: Report, fmt: str = "text") -> str:
    data = rep.as_dict()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
    rows: list[tuple[str, str]] = []
    _flatten("", data, rows)
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return InputError.exit_code
    rep = run(req)
    sys.stdout.write(render(rep, req.format))
    for line in rep.diagnostics:
        if rep.exit_code:
            print(line, file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
