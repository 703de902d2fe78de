"""Command line interface.

Subcommands: validate, diagonal, am, unit, moebius, product, clifford,
spectrum, gap-search, verify.  Input is a file path, inline JSON (first
non-space character '{'), or '-' for stdin.  Matrices and vectors are
always written in canonical element order, with "perm" mapping canonical
positions back to input indices.

Exit codes: 0 success, 2 validation or verification failure, 3 method
cross-check mismatch, 4 file/IO failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import clifford as clifford_mod
from . import enumeration
from .diagonal import (
    DiagonalTensor,
    diagonal_recursive,
    unit,
    verify_diagonal,
)
from .exactlinalg import rat, rat_decimal, rat_str
from .moebius import diagonal_via_mobius, mobius_table
from .semilattice import (
    Semilattice,
    ValidationReport,
    from_json_dict as semilattice_from_json,
    product,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3
EXIT_IO = 4


class InputError(Exception):
    def __init__(self, code, payload=None, message=""):
        super().__init__(message or str(payload))
        self.code = code
        self.payload = payload


def _fail_invalid(axiom, *witness):
    return InputError(
        EXIT_INVALID,
        {"ok": False, "violations": [{"axiom": axiom, "witness": list(witness)}]},
    )


def _load_json(arg: str):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(EXIT_IO, message=f"cannot read {arg}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail_invalid("json", str(exc))


def _semilattice(obj) -> Semilattice:
    result = semilattice_from_json(obj)
    if isinstance(result, ValidationReport):
        raise InputError(EXIT_INVALID, result.to_json_dict())
    return result


def _clifford(obj) -> clifford_mod.CliffordSemigroup:
    result = clifford_mod.from_json_dict(obj)
    if isinstance(result, ValidationReport):
        raise InputError(EXIT_INVALID, result.to_json_dict())
    return result


def _semilattice_payload(s: Semilattice) -> dict:
    return {
        "ok": True,
        "n": s.n,
        "labels": list(s.labels),
        "minimum": s.minimum,
        "levels": list(s.level),
        "height": s.height,
        "ideal_chain": [sorted(part) for part in s.ideal_chain],
        "hasse": [list(e) for e in s.hasse],
        "perm": list(s.canonical_perm),
        "unital": s.is_unital(),
    }


def _canonical_matrix_strings(d: DiagonalTensor):
    m = d.matrix_canonical()
    return [[rat_str(v) for v in row] for row in m.data]


def _semilattice_diagonal(s: Semilattice, method: str) -> DiagonalTensor:
    if method == "recursive":
        return diagonal_recursive(s)
    if method == "moebius":
        return diagonal_via_mobius(s)
    if method == "solver":
        trivial = clifford_mod.build_clifford(
            s, [clifford_mod.FiniteAbelianGroup([1]) for _ in range(s.n)], {}
        )
        return clifford_mod.collapse(clifford_mod.diagonal_solve(trivial))
    raise ValueError(method)


def _diagonal_with_method(s: Semilattice, method: str) -> DiagonalTensor:
    if method != "all":
        return _semilattice_diagonal(s, method)
    computed = {
        name: _semilattice_diagonal(s, name)
        for name in ("recursive", "moebius", "solver")
    }
    reference = computed["recursive"]
    for name, d in computed.items():
        if d.entries != reference.entries:
            detail = {
                "mismatch": name,
                "recursive": _canonical_matrix_strings(reference),
                name: _canonical_matrix_strings(d),
            }
            raise InputError(EXIT_MISMATCH, message=json.dumps(detail, sort_keys=True))
    return reference


def _am_fields(am, digits: int) -> dict:
    return {
        "am": rat_str(am),
        "am_decimal": rat_decimal(am, digits),
        "am_mod4": int(am) % 4 if am.denominator == 1 else None,
    }


def _diagonal_payload(s: Semilattice, d: DiagonalTensor, method: str, digits: int) -> dict:
    u = unit(s)
    perm = s.canonical_perm
    am = d.am()
    payload = {
        "ok": True,
        "method": method,
        "n": s.n,
        "perm": list(perm),
        "labels": [s.labels[x] for x in perm],
        "unit": [rat_str(u.coeffs[x]) for x in perm],
        "diagonal": _canonical_matrix_strings(d),
    }
    payload.update(_am_fields(am, digits))
    return payload


def cmd_validate(args) -> tuple:
    s = _semilattice(_load_json(args.input))
    return _semilattice_payload(s), EXIT_OK


def cmd_diagonal(args) -> tuple:
    s = _semilattice(_load_json(args.input))
    d = _diagonal_with_method(s, args.method)
    return _diagonal_payload(s, d, args.method, args.digits), EXIT_OK


def cmd_am(args) -> tuple:
    s = _semilattice(_load_json(args.input))
    d = _diagonal_with_method(s, args.method)
    payload = {"ok": True, "method": args.method, "n": s.n}
    payload.update(_am_fields(d.am(), args.digits))
    return payload, EXIT_OK


def cmd_unit(args) -> tuple:
    s = _semilattice(_load_json(args.input))
    u = unit(s)
    perm = s.canonical_perm
    return {
        "ok": True,
        "n": s.n,
        "perm": list(perm),
        "labels": [s.labels[x] for x in perm],
        "unit": [rat_str(u.coeffs[x]) for x in perm],
    }, EXIT_OK


def cmd_moebius(args) -> tuple:
    s = _semilattice(_load_json(args.input))
    table = mobius_table(s)
    return {
        "ok": True,
        "n": s.n,
        "labels": list(s.labels),
        "mu": [[t, x, v] for (t, x, v) in table.pairs()],
    }, EXIT_OK


def cmd_product(args) -> tuple:
    obj = _load_json(args.input)
    if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
        raise _fail_invalid("input", "a and b")
    p = product(_semilattice(obj["a"]), _semilattice(obj["b"]))
    payload = _semilattice_payload(p)
    payload["table"] = [list(row) for row in p.table]
    return payload, EXIT_OK


def cmd_clifford(args) -> tuple:
    g = _clifford(_load_json(args.input))
    u = clifford_mod.unit_solve(g)
    d = clifford_mod.diagonal_solve(g)
    skel_d = diagonal_recursive(g.skeleton)
    collapsed = clifford_mod.collapse(d)
    am = d.am()
    skel_am = skel_d.am()
    payload = {
        "ok": True,
        "n": g.n,
        "labels": list(g.labels),
        "blocks": [
            [g.offset[s] + i for i in range(g.groups[s].order)]
            for s in range(g.skeleton.n)
        ],
        "unit": [rat_str(c) for c in u.coeffs],
        "diagonal": [[rat_str(v) for v in row] for row in d.entries],
        "skeleton_am": rat_str(skel_am),
        "collapse_matches_skeleton": collapsed.entries == skel_d.entries,
        "am_ge_skeleton": am >= skel_am,
    }
    payload.update(_am_fields(am, args.digits))
    return payload, EXIT_OK


def cmd_spectrum(args) -> tuple:
    report = enumeration.spectrum(args.max_size)
    return report.to_json_dict(), EXIT_OK


def cmd_gap_search(args) -> tuple:
    report = enumeration.gap_search(
        skeleton_max_size=args.skeleton_max_size,
        max_cyclic_order=args.max_cyclic_order,
        instance_limit=args.limit,
    )
    return report.to_json_dict(), EXIT_OK if report.ok else EXIT_INVALID


def _parse_matrix(raw, n: int):
    if not isinstance(raw, list) or len(raw) != n or not all(
        isinstance(row, list) and len(row) == n for row in raw
    ):
        raise _fail_invalid("diagonal_shape", n)
    out = []
    for row in raw:
        vals = []
        for v in row:
            if isinstance(v, float):
                raise _fail_invalid("float_entry", v)
            try:
                vals.append(rat(v))
            except (ValueError, TypeError, ZeroDivisionError):
                raise _fail_invalid("entry", str(v))
        out.append(vals)
    return out


def cmd_verify(args) -> tuple:
    obj = _load_json(args.input)
    if not isinstance(obj, dict) or "base" not in obj or "diagonal" not in obj:
        raise _fail_invalid("input", "base and diagonal")
    base_obj = obj["base"]
    if isinstance(base_obj, dict) and "skeleton" in base_obj:
        base = _clifford(base_obj)
        u = clifford_mod.unit_solve(base)
        perm = list(range(base.n))
    else:
        base = _semilattice(base_obj)
        u = unit(base)
        perm = list(base.canonical_perm)
    canon = _parse_matrix(obj["diagonal"], base.n)
    # input matrices are in canonical order; store back by element id
    entries = [[None] * base.n for _ in range(base.n)]
    for i, g in enumerate(perm):
        for j, h in enumerate(perm):
            entries[g][h] = canon[i][j]
    d = DiagonalTensor(base, entries)
    ok, witness = verify_diagonal(d, u)
    if ok:
        return {"ok": True}, EXIT_OK
    rendered = {
        k: (rat_str(v) if k in ("lhs", "rhs") else v)
        for k, v in witness.items()
    }
    rendered["pair"] = list(witness["pair"]) if "pair" in witness else None
    if rendered["pair"] is None:
        rendered.pop("pair")
    return {"ok": False, "witness": rendered}, EXIT_INVALID


def _render_table(payload: dict, command: str) -> str:
    lines = []

    def matrix_lines(labels, rows, title):
        width = max(
            [len(x) for row in rows for x in row] + [len(x) for x in labels]
        )
        lines.append(title)
        lines.append(" ".join(x.rjust(width) for x in [""] + list(labels)))
        for lbl, row in zip(labels, rows):
            lines.append(
                " ".join(x.rjust(width) for x in [lbl] + list(row))
            )

    if command in ("diagonal", "clifford"):
        labels = payload["labels"]
        lines.append(
            f"n = {payload['n']}  am = {payload['am']}"
            f"  am_mod4 = {payload['am_mod4']}  am ~ {payload['am_decimal']}"
        )
        lines.append("unit: " + " ".join(payload["unit"]))
        matrix_lines(labels, payload["diagonal"], "diagonal:")
        if command == "clifford":
            lines.append(f"skeleton_am = {payload['skeleton_am']}")
            lines.append(
                f"collapse_matches_skeleton = {payload['collapse_matches_skeleton']}"
            )
            lines.append(f"am_ge_skeleton = {payload['am_ge_skeleton']}")
    elif command == "am":
        lines.append(
            f"am = {payload['am']}  am_mod4 = {payload['am_mod4']}"
            f"  am ~ {payload['am_decimal']}"
        )
    elif command == "unit":
        lines.append("order: " + " ".join(payload["labels"]))
        lines.append("unit:  " + " ".join(payload["unit"]))
    elif command == "moebius":
        for t, s, v in payload["mu"]:
            lines.append(f"mu[{t},{s}] = {v}")
    elif command in ("validate", "product"):
        for key in ("n", "minimum", "height", "unital"):
            lines.append(f"{key} = {payload[key]}")
        lines.append("labels: " + " ".join(payload["labels"]))
        lines.append("levels: " + " ".join(str(v) for v in payload["levels"]))
        lines.append(
            "hasse: " + " ".join(f"{a}<{b}" for a, b in payload["hasse"])
        )
        if "table" in payload:
            matrix_lines(
                payload["labels"],
                [[str(v) for v in row] for row in payload["table"]],
                "table:",
            )
    elif command == "spectrum":
        lines.append("size count")
        for size, count in enumerate(payload["counts"], start=1):
            lines.append(f"{size:4d} {count:5d}")
        lines.append("size index am am_mod4 unital d_min")
        for row in payload["classes"]:
            lines.append(
                f"{row['size']:4d} {row['index']:5d} {row['am']:>6s}"
                f" {row['am_mod4']:7d} {str(row['unital']):6s} {row['d_min']}"
            )
    elif command == "gap-search":
        lines.append(
            f"instances = {payload['instances']}  ok = {payload['ok']}"
            f"  min_am_above_5 = {payload['min_am_above_5']}"
        )
        lines.append("am count")
        for value, count in payload["am_counts"]:
            lines.append(f"{value:>6s} {count:5d}")
    elif command == "verify":
        if payload["ok"]:
            lines.append("ok")
        else:
            lines.append(f"FAIL {json.dumps(payload['witness'], sort_keys=True)}")
    else:
        lines.append(json.dumps(payload, sort_keys=True))
    return "\n".join(lines)


def _render_csv(payload: dict, command: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command == "spectrum":
        writer.writerow(
            [
                "size",
                "index",
                "am",
                "am_mod4",
                "unital",
                "d_min",
                "lower_bound_ok",
                "off_top_diagonal_even",
                "table",
            ]
        )
        for row in payload["classes"]:
            writer.writerow(
                [
                    row["size"],
                    row["index"],
                    row["am"],
                    row["am_mod4"],
                    row["unital"],
                    row["d_min"],
                    row["lower_bound_ok"],
                    row["off_top_diagonal_even"],
                    ";".join(",".join(str(v) for v in r) for r in row["table"]),
                ]
            )
    elif command == "gap-search":
        writer.writerow(["am", "count"])
        for value, count in payload["am_counts"]:
            writer.writerow([value, count])
    elif command == "moebius":
        writer.writerow(["t", "s", "mu"])
        for t, s, v in payload["mu"]:
            writer.writerow([t, s, v])
    else:
        raise _fail_invalid("format", f"csv not supported for {command}")
    return buf.getvalue().rstrip("\n")


def _emit(payload: dict, command: str, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "table":
        print(_render_table(payload, command))
    else:
        print(_render_csv(payload, command))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiam",
        description=(
            "Exact diagonals and amenability constants of finite semilattice"
            " and Clifford semigroup algebras."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, needs_input=True, method=False, digits=False):
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument(
                "input",
                help="file path, inline JSON, or - for stdin",
            )
        if method:
            p.add_argument(
                "--method",
                choices=["recursive", "moebius", "solver", "all"],
                default="recursive",
            )
        if digits:
            p.add_argument("--digits", type=int, default=6)
        p.add_argument("--format", choices=["json", "table", "csv"], default="json")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate)
    add("diagonal", cmd_diagonal, method=True, digits=True)
    add("am", cmd_am, method=True, digits=True)
    add("unit", cmd_unit)
    add("moebius", cmd_moebius)
    add("product", cmd_product)
    add("clifford", cmd_clifford, digits=True)
    spec = add("spectrum", cmd_spectrum, needs_input=False)
    spec.add_argument("--max-size", type=int, required=True)
    gap = add("gap-search", cmd_gap_search, needs_input=False)
    gap.add_argument("--skeleton-max-size", type=int, default=3)
    gap.add_argument("--max-cyclic-order", type=int, default=4)
    gap.add_argument("--limit", type=int, default=20000)
    add("verify", cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
        _emit(payload, args.command, args.format)
    except InputError as exc:
        if exc.payload is not None:
            print(json.dumps(exc.payload, indent=2, sort_keys=True))
        else:
            print(str(exc), file=sys.stderr)
        return exc.code
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
