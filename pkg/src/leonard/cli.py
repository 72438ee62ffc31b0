"""Command line surface: JSON in, JSON or scoreboard text out.

Exit codes: 0 when every requested check passes, 1 when a check fails or a
requested construction is impossible for the given scalars, 2 when the input
itself is malformed (bad JSON, bad field spec, unknown names).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .classify import _first_case1_base, classify
from .errors import (
    BaseNotApplicable,
    BudgetExceeded,
    CharacteristicMismatch,
    IdentityViolated,
    LengthMismatch,
    LeonardError,
    NeedsFieldExtension,
    NoCaseMatched,
    NonPrimeModulus,
    PreconditionViolated,
    ProportionalityViolated,
    ReducibleModulus,
)
from .families import FamilyParams, family_param_names, generate
from .fields import Field, extension_field, prime_field, rational_field
from .ortho import ortho_data, verify_nu_sums, verify_orthogonality
from .parray import (
    ParameterArray,
    array_from_json,
    base_candidates,
    enumerate_arrays,
    validate,
)
from .polys import corresponding_polys, duality_check, endpoint_values, verify_proportionality
from .recur import recurrence_coeffs, verify_alt_formulas, verify_difference, verify_three_term
from .splitmat import build, s_matrix, verify_conjugation, verify_leonard_conditions
from .report import CheckReport

OK, FAIL, BAD_INPUT = 0, 1, 2


def parse_field(text: str) -> Field:
    if text == "rational":
        return rational_field()
    if text.startswith("prime:"):
        return prime_field(int(text.split(":", 1)[1]))
    if text.startswith("ext:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError("extension field spec is ext:p:k:modulusCSV")
        p, k = int(parts[1]), int(parts[2])
        modulus = tuple(int(c) for c in parts[3].split(","))
        return extension_field(p, k, modulus)
    raise ValueError(f"unknown field spec {text!r}; "
                     "use rational | prime:p | ext:p:k:modulusCSV")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_array(path: str) -> ParameterArray:
    return array_from_json(json.loads(_read_text(path)))


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _scoreboard(p: ParameterArray) -> tuple[list[str], bool]:
    """Run every verification in a fixed order; never stop at a failure."""
    lines: list[str] = []
    all_ok = True

    def emit(name: str, status: str, detail: str = "") -> None:
        nonlocal all_ok
        if status == "fail":
            all_ok = False
        text = f"{name}: {status}"
        if detail:
            text += f" ({detail})"
        lines.append(text)

    rep = validate(p)
    if rep.ok():
        emit("validate", "pass")
    else:
        bad = [line for line in rep.lines() if not line.endswith("pass")]
        emit("validate", "fail", "; ".join(bad))
        for name in ("conjugation", "leonard-conditions", "proportionality",
                     "endpoint-values", "duality", "orthogonality",
                     "weight-sums", "three-term", "difference",
                     "alt-recurrence", "transition-matrix"):
            emit(name, "skipped", "array invalid")
        return lines, False

    def from_report(report: CheckReport) -> None:
        if report.ok():
            emit(report.name, "pass")
        else:
            emit(report.name, "fail", "; ".join(report.failures[:4]))

    from_report(verify_conjugation(p))
    from_report(verify_leonard_conditions(p))
    try:
        verify_proportionality(p)
        emit("proportionality", "pass")
    except ProportionalityViolated as e:
        emit("proportionality", "fail", str(e))
    try:
        endpoint_values(p)
        emit("endpoint-values", "pass")
    except IdentityViolated as e:
        emit("endpoint-values", "fail", str(e))
    from_report(duality_check(p))
    from_report(verify_orthogonality(p))
    from_report(verify_nu_sums(p))
    from_report(verify_three_term(p))
    from_report(verify_difference(p))
    if p.d >= 1:
        from_report(verify_alt_formulas(p))
    else:
        emit("alt-recurrence", "skipped", "no interior coefficients at d = 0")

    # Transition matrix against the q-binomial closed form, when a usable
    # base exists in the field.
    q = None
    skip_reason = None
    if p.d >= 3:
        bc = base_candidates(p)
        if bc.kind == "quadratic_only":
            skip_reason = "no in-field base"
        else:
            root = bc.roots[0]
            if root == p.field.one() or root == -p.field.one():
                skip_reason = "base ±1"
            else:
                q = root
    else:
        q = _first_case1_base(p.field)
        if q is None:
            skip_reason = "no in-field base"
    if q is None:
        emit("transition-matrix", "skipped", skip_reason)
    else:
        try:
            S = s_matrix(p, q)
            alpha = S.rows[0][0].inverse()
            if build(p).G == S.scale(alpha):
                emit("transition-matrix", "pass")
            else:
                emit("transition-matrix", "fail",
                     "G differs from the scaled closed form")
        except BaseNotApplicable as e:
            emit("transition-matrix", "skipped", str(e))
    return lines, all_ok


def _require_valid(p: ParameterArray) -> None:
    rep = validate(p)
    if not rep.ok():
        for line in rep.lines():
            print(line, file=sys.stderr)
        raise IdentityViolated("array fails validation; see report above")


def cmd_validate(args) -> int:
    p = load_array(args.file)
    rep = validate(p)
    if args.emit:
        sys.stdout.write(dump_json(p.to_json()))
        for line in rep.lines():
            print(line, file=sys.stderr)
    else:
        for line in rep.lines():
            print(line)
    return OK if rep.ok() else FAIL


def cmd_gen(args) -> int:
    field = parse_field(args.field)
    names = family_param_names(args.family)
    values = {}
    for item in args.param or []:
        if "=" not in item:
            raise ValueError(f"--param takes name=value, got {item!r}")
        name, text = item.split("=", 1)
        if name not in names:
            raise ValueError(f"{args.family} has no parameter {name!r}")
        values[name] = field.parse(text)
    missing = set(names) - set(values)
    if missing:
        raise ValueError(f"missing parameters: {', '.join(sorted(missing))}")
    fp = FamilyParams(family=args.family, d=args.d, values=values)
    try:
        p = generate(fp, field)
    except (PreconditionViolated, CharacteristicMismatch) as e:
        print(str(e), file=sys.stderr)
        return FAIL
    sys.stdout.write(dump_json(p.to_json()))
    return OK


def cmd_verify(args) -> int:
    p = load_array(args.file)
    lines, ok = _scoreboard(p)
    for line in lines:
        print(line)
    return OK if ok else FAIL


def cmd_classify(args) -> int:
    p = load_array(args.file)
    _require_valid(p)
    try:
        w = classify(p)
    except (NeedsFieldExtension, NoCaseMatched) as e:
        print(str(e), file=sys.stderr)
        return FAIL
    out = {
        "case": w.case,
        "family": w.family,
        "parameters": w.params.to_json(),
        "field_of_witness": w.field.spec.to_json(),
    }
    sys.stdout.write(dump_json(out))
    return OK


def cmd_poly_table(args) -> int:
    p = load_array(args.file)
    _require_valid(p)
    table = corresponding_polys(p)
    if args.format == "json":
        sys.stdout.write(dump_json(table.P.to_json()))
    else:
        cells = [[p.field.format(x) for x in row] for row in table.P.rows]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            print("  ".join(c.rjust(width) for c in row))
    return OK


def cmd_weights(args) -> int:
    p = load_array(args.file)
    _require_valid(p)
    data = ortho_data(p)
    fmt = p.field.format
    sys.stdout.write(dump_json({
        "k": [fmt(x) for x in data.k],
        "kstar": [fmt(x) for x in data.kstar],
        "nu": fmt(data.nu),
    }))
    return OK


def cmd_recurrence(args) -> int:
    p = load_array(args.file)
    _require_valid(p)
    co = recurrence_coeffs(p)
    fmt = p.field.format
    sys.stdout.write(dump_json({
        name: [fmt(x) for x in getattr(co, name)]
        for name in ("a", "b", "c", "astar", "bstar", "cstar")
    }))
    return OK


def cmd_matrices(args) -> int:
    p = load_array(args.file)
    _require_valid(p)
    m = build(p)
    names = ("A", "B", "Astar", "Bstar", "T", "Tstar", "Tdown",
             "D", "Ddown", "Z", "H", "Hstar", "G")
    sys.stdout.write(dump_json({name: getattr(m, name).to_json()
                                for name in names}))
    return OK


def cmd_enumerate(args) -> int:
    field = parse_field(args.field)
    shard = None
    if args.shard:
        index, count = args.shard.split(":", 1)
        shard = (int(index), int(count))
    emitted = 0
    try:
        for p in enumerate_arrays(field, args.d, budget=args.budget, shard=shard):
            print(json.dumps(p.to_json(), separators=(",", ":")))
            emitted += 1
            if args.limit is not None and emitted >= args.limit:
                break
    except BudgetExceeded as e:
        print(str(e), file=sys.stderr)
        return FAIL
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leonard",
        description="Exact construction, verification, and classification "
                    "of parameter arrays.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check PA1-PA5 on an array file")
    s.add_argument("file")
    s.add_argument("--emit", action="store_true",
                   help="print the canonical array JSON instead of the report")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("gen", help="instantiate a named family")
    s.add_argument("family")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--field", required=True)
    s.add_argument("--param", nargs="+", action="extend", default=None,
                   metavar="NAME=VALUE")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("verify", help="run the full verification scoreboard")
    s.add_argument("file")
    s.add_argument("--all", action="store_true",
                   help="accepted for symmetry; the full scoreboard always runs")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("classify", help="recover family scalars with a witness")
    s.add_argument("file")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("poly-table", help="emit the evaluation matrix f_j(theta_i)")
    s.add_argument("file")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(fn=cmd_poly_table)

    s = sub.add_parser("weights", help="emit orthogonality weights and nu")
    s.add_argument("file")
    s.set_defaults(fn=cmd_weights)

    s = sub.add_parser("recurrence", help="emit recurrence and dual coefficients")
    s.add_argument("file")
    s.set_defaults(fn=cmd_recurrence)

    s = sub.add_parser("matrices", help="emit the split-basis matrix set")
    s.add_argument("file")
    s.set_defaults(fn=cmd_matrices)

    s = sub.add_parser("enumerate", help="stream every array over a finite field")
    s.add_argument("--field", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--budget", type=int, default=10_000_000)
    s.add_argument("--shard", default=None, metavar="INDEX:COUNT")
    s.set_defaults(fn=cmd_enumerate)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code not in (0, None) else OK
    try:
        return args.fn(args)
    except (NonPrimeModulus, ReducibleModulus, LengthMismatch) as e:
        print(f"bad input: {e}", file=sys.stderr)
        return BAD_INPUT
    except LeonardError as e:
        print(str(e), file=sys.stderr)
        return FAIL
    except (ValueError, KeyError, TypeError, json.JSONDecodeError,
            OSError) as e:
        print(f"bad input: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
