"""Command-line front end: ``hyperfact <verb> [options]``.

Arrangements are read from a file in the text format (``-`` for stdin) or
taken from the catalog with an ``@`` prefix, e.g. ``@intermediate:2,4,2``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Callable, Optional

from .arrangement import (
    Arrangement,
    ArrangementError,
    flat_of,
    format_arrangement,
    format_form,
    localization,
    parse_arrangement,
    restriction,
)
from .catalog import (
    CATALOG_HELP,
    catalog_arrangement,
    intermediate,
    tail_flat,
    intermediate_certificate,
    paper_arrangement,
)
from .exactfield import FieldMismatch
from .induction import (
    emit_induction_table,
    format_certificate,
    format_induction_table,
    hereditarily_indfac,
    indfac_search,
    parse_certificate,
    verify_certificate,
)
from .isomorphism import SizeLimitExceeded, isomorphism_obstruction, lattice_isomorphic
from .lattice import NoSplit, exponent_candidates
from .modularity import chain_partition, supersolvable
from .partition import (
    Partition,
    hereditarily_nice,
    is_nice,
    nice_search,
)

FORMATS = ("text", "csv", "jsonl")


# ---------------------------------------------------------------------------
# input and output helpers


def load(source: str, on_duplicate: str = "warn") -> tuple[Arrangement, Optional[Partition]]:
    if source.startswith("@"):
        return catalog_arrangement(source[1:])
    if source == "-":
        text = sys.stdin.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    return parse_arrangement(text, on_duplicate=on_duplicate), None


def emit(records: list[dict], fmt: str, out) -> None:
    """Write records as aligned key/value text, CSV or JSON lines."""
    if not records:
        return
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    keys = list(records[0])
    for rec in records[1:]:
        keys += [k for k in rec if k not in keys]
    if fmt == "csv":
        w = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for rec in records:
            w.writerow({k: _cell(rec.get(k, "")) for k in keys})
        return
    if len(records) == 1:
        width = max(len(k) for k in keys)
        for k in keys:
            out.write(f"{k.ljust(width)}  {_cell(records[0][k])}\n")
        return
    rows = [[_cell(rec.get(k, "")) for k in keys] for rec in records]
    widths = [max(len(x) for x in col) for col in zip(keys, *rows)]
    for row in [keys, *rows]:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if v is None:
        return "-"
    return str(v)


def _exps(A) -> Optional[list]:
    e = exponent_candidates(A)
    return None if e is NoSplit else list(e)


def _flat_arg(A: Arrangement, text: str):
    try:
        idx = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ArrangementError(f"--flat expects hyperplane indices, got {text!r}") from None
    return flat_of(A, idx)


def _arrangement_records(A: Arrangement) -> list[dict]:
    return [
        {
            "label": A.label,
            "field": A.field.conductor,
            "dim": A.dim,
            "hyperplanes": [[c.format() for c in H.normal] for H in A.hyperplanes],
        }
    ]


def _write_arrangement(A: Arrangement, fmt: str, out) -> None:
    if fmt == "jsonl":
        emit(_arrangement_records(A), fmt, out)
    elif fmt == "csv":
        rows = [{"index": i, "form": format_form(H.normal), "coefficients": " ".join(c.format() for c in H.normal)} for i, H in enumerate(A.hyperplanes)]
        emit(rows, fmt, out)
    else:
        out.write(format_arrangement(A))


# ---------------------------------------------------------------------------
# verbs


def cmd_info(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    L = A.lattice
    counts = [len(L.flats_of_rank(k)) for k in range(L.rank + 1)]
    chain = supersolvable(A)
    emit(
        [
            {
                "label": A.label,
                "field": f"Q(zeta_{A.field.conductor})" if A.field.conductor > 2 else "Q",
                "dim": A.dim,
                "hyperplanes": len(A),
                "rank": L.rank,
                "flats_per_rank": counts,
                "poincare": str(L.poincare()),
                "exponents": _exps(A) or "no split",
                "supersolvable": chain is not None,
            }
        ],
        args.format,
        out,
    )
    return True


def cmd_charpoly(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    L = A.lattice
    chi = [0] * (A.dim + 1)
    for r, mu in zip(L.ranks, L.mobius):
        chi[A.dim - r] += mu
    emit(
        [
            {
                "poincare": str(L.poincare()),
                "poincare_coeffs": list(L.poincare().coeffs),
                "charpoly_coeffs_low_to_high": chi,
                "exponents": _exps(A) or "no split",
            }
        ],
        args.format,
        out,
    )
    return True


def cmd_supersolvable(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    chain = supersolvable(A)
    rec = {"supersolvable": chain is not None}
    if chain is not None:
        rec["chain"] = ["{" + " ".join(str(i) for i in sorted(X)) + "}" for X in chain.flats]
        rec["partition"] = chain_partition(A, chain).format()
    emit([rec], args.format, out)
    return chain is not None


def cmd_nice_check(args, out) -> bool:
    A, pi = load(args.source, args.on_duplicate)
    if args.partition is not None:
        pi = Partition.parse(args.partition)
    if pi is None:
        raise ArrangementError("no partition given; use --partition \"0; 1 2; ...\"")
    rep = is_nice(A, pi)
    emit(
        [
            {
                "partition": pi.format(),
                "independent": rep.independent,
                "singleton_failures": [" ".join(map(str, sorted(X))) for X in rep.singleton_failures] or None,
                "poincare_factored": rep.poincare_factored,
                "nice": rep.nice,
            }
        ],
        args.format,
        out,
    )
    return rep.nice


def cmd_nice_search(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    t0 = time.perf_counter()
    pi = nice_search(A, args.max_hyperplanes, args.max_rank)
    rec = {"nice": pi is not None, "partition": pi.format() if pi else None}
    if not args.no_timing:
        rec["seconds"] = round(time.perf_counter() - t0, 3)
    emit([rec], args.format, out)
    return pi is not None


def cmd_indfac_search(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    t0 = time.perf_counter()
    cert = indfac_search(A, args.max_hyperplanes, args.max_rank)
    rec = {"inductively_factored": cert is not None}
    if cert is not None:
        rec["partition"] = cert.final_partition.format()
        rec["order"] = cert.order()
        if args.certificate_out:
            with open(args.certificate_out, "w", encoding="utf-8") as fh:
                fh.write(format_certificate(A, cert))
    if not args.no_timing:
        rec["seconds"] = round(time.perf_counter() - t0, 3)
    emit([rec], args.format, out)
    return cert is not None


def cmd_induction_table(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    if args.certificate:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = parse_certificate(A, fh.read())
    else:
        cert = indfac_search(A, args.max_hyperplanes, args.max_rank)
        if cert is None:
            out.write("no inductive factorisation\n")
            return False
    res = verify_certificate(A, cert)
    if not res.ok:
        out.write(f"certificate rejected at step {res.step}: {res.reason}\n")
        return False
    rows = emit_induction_table(A, cert)
    if args.format == "jsonl":
        emit([{"exp_before": list(r.exp_before), "form": r.added_form, "exp_restriction": list(r.exp_restriction), "part": r.part_assigned} for r in rows], "jsonl", out)
    else:
        out.write(format_induction_table(rows, args.format))
    return True


def cmd_restrict(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    _write_arrangement(restriction(A, _flat_arg(A, args.flat)), args.format, out)
    return True


def cmd_localize(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    _write_arrangement(localization(A, _flat_arg(A, args.flat)), args.format, out)
    return True


def cmd_hereditary(args, out) -> bool:
    A, _ = load(args.source, args.on_duplicate)
    fn = hereditarily_indfac if args.indfac else hereditarily_nice
    res = fn(A, args.max_hyperplanes, args.max_rank)
    rec = {
        "property": "hereditarily inductively factored" if args.indfac else "hereditarily factored",
        "holds": res.ok,
        "flats_checked": len(res.partitions),
        "witness": " ".join(map(str, sorted(res.witness))) if res.witness is not None else None,
    }
    emit([rec], args.format, out)
    return res.ok


def cmd_catalog(args, out) -> bool:
    A, pi = catalog_arrangement(args.key)
    _write_arrangement(A, args.format, out)
    if pi is not None and args.format == "text":
        out.write(f"# partition {pi.format()}\n")
    return True


# ---------------------------------------------------------------------------
# reproduce


def _row(name: str, expected, fn: Callable[[], object], no_timing: bool) -> dict:
    t0 = time.perf_counter()
    try:
        observed = fn()
    except Exception as exc:  # a crashing row is reported, not fatal
        observed = f"error: {exc}"
    rec = {"row": name, "expected": expected, "observed": observed, "pass": observed == expected}
    if not no_timing:
        rec["seconds"] = round(time.perf_counter() - t0, 3)
    return rec


def _rows_table2(nt: bool) -> list[dict]:
    B, _ = paper_arrangement("E6_A1cubed")
    C, pi_c = paper_arrangement("E6_A1A2")
    D, pi_d = paper_arrangement("E7_A1A3dd")
    return [
        _row("(E6,A1^3) nice", False, lambda: nice_search(B) is not None, nt),
        _row("(E6,A1^3) exponents", [1, 4, 5], lambda: _exps(B), nt),
        _row("(E6,A1A2) nice (stored partition)", True, lambda: is_nice(C, pi_c).nice, nt),
        _row("(E6,A1A2) inductively factored", True, lambda: indfac_search(C) is not None, nt),
        _row("(E6,A1A2) exponents", [1, 4, 5], lambda: _exps(C), nt),
        _row("(E7,(A1A3)'') nice (stored partition)", True, lambda: is_nice(D, pi_d).nice, nt),
        _row("(E7,(A1A3)'') inductively factored", True, lambda: indfac_search(D) is not None, nt),
        _row("(E7,(A1A3)'') exponents", [1, 5, 5], lambda: _exps(D), nt),
        _row("(E6,A1^3) vs (E6,A1A2) lattice obstruction", "rank-2 profile", lambda: isomorphism_obstruction(B, C), nt),
    ]


def _intermediate_exps(r: int, ell: int, k: int) -> list[int]:
    return sorted([1] + [j * r + 1 for j in range(1, ell - 1)] + [(ell - 1) * r + k - ell + 1])


def _table1_check(r: int, ell: int) -> list:
    A, cert = intermediate_certificate(r, ell)
    rows = emit_induction_table(A, cert)
    return [len(rows), sorted(e for e in A.lattice.exponents() if e)]


def _rows_table1(nt: bool) -> list[dict]:
    out = []
    for r in (2, 3):
        out.append(_row(f"A^2_4({r}) certificate verifies", True, lambda r=r: verify_certificate(*intermediate_certificate(r, 4)).ok, nt))
        out.append(
            _row(
                f"A^2_4({r}) table rows and final exponents",
                [2 + 6 * r, _intermediate_exps(r, 4, 2)],
                lambda r=r: _table1_check(r, 4),
                nt,
            )
        )
        out.append(_row(f"A^2_4({r}) inductively factored (search)", True, lambda r=r: indfac_search(intermediate(r, 4, 2)) is not None, nt))
    return out


def _rows_smallcases(nt: bool) -> list[dict]:
    out = []
    for r in (2, 3, 4):
        for k in range(4):
            out.append(_row(f"A^{k}_3({r}) nice", True, lambda r=r, k=k: nice_search(intermediate(r, 3, k)) is not None, nt))
    for r in (2, 3):
        out.append(_row(f"A^1_4({r}) nice", False, lambda r=r: nice_search(intermediate(r, 4, 1)) is not None, nt))
    out.append(
        _row(
            "localisation of A^2_5(2) at the tail flat ~ A^1_4(2)",
            True,
            lambda: lattice_isomorphic(localization(intermediate(2, 5, 2), tail_flat(2, 5)), intermediate(2, 4, 1)) is not None,
            nt,
        )
    )
    for k in range(5):
        out.append(_row(f"A^{k}_4(2) inductively factored", k >= 2, lambda k=k: indfac_search(intermediate(2, 4, k)) is not None, nt))
    return out


REPRODUCE = {"table2-subset": _rows_table2, "table1": _rows_table1, "thm33-smallcases": _rows_smallcases}


def cmd_reproduce(args, out) -> bool:
    rows = REPRODUCE[args.target](args.no_timing)
    for rec in rows:
        rec["pass"] = "PASS" if rec["pass"] else "FAIL"
    emit(rows, args.format, out)
    return all(rec["pass"] == "PASS" for rec in rows)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--no-timing", action="store_true", help="omit timings so output is byte-stable")
    common.add_argument("--max-hyperplanes", type=int, default=24)
    common.add_argument("--max-rank", type=int, default=5)
    common.add_argument("--on-duplicate", choices=("ignore", "warn", "error"), default="warn")

    p = argparse.ArgumentParser(prog="hyperfact", description="Nice and inductively factored hyperplane arrangements.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text, source=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if source:
            sp.add_argument("source", help="arrangement file, '-' for stdin, or @<catalog key>")
        sp.set_defaults(fn=fn)
        return sp

    verb("info", cmd_info, "summary of the lattice")
    verb("charpoly", cmd_charpoly, "Poincare and characteristic polynomial")
    verb("supersolvable", cmd_supersolvable, "maximal modular chain, if any")
    verb("nice-check", cmd_nice_check, "check a partition").add_argument("--partition", help='e.g. "0; 1 2 3; 4 5"')
    verb("nice-search", cmd_nice_search, "find a nice partition")
    verb("indfac-search", cmd_indfac_search, "find an inductive factorisation").add_argument(
        "--certificate-out", help="write the certificate to this file"
    )
    verb("induction-table", cmd_induction_table, "induction table of a certificate").add_argument(
        "--certificate", help="certificate file; searched for when omitted"
    )
    verb("restrict", cmd_restrict, "restriction to a flat").add_argument("--flat", required=True, help='hyperplane indices, e.g. "0 3"')
    verb("localize", cmd_localize, "localisation at a flat").add_argument("--flat", required=True, help='hyperplane indices, e.g. "0 3"')
    verb("hereditary", cmd_hereditary, "niceness of every restriction").add_argument(
        "--indfac", action="store_true", help="check inductive factorisations instead"
    )
    verb("catalog", cmd_catalog, "print a catalog arrangement", source=False).add_argument("key", help=CATALOG_HELP)
    verb("reproduce", cmd_reproduce, "rerun the desk-scale checks", source=False).add_argument("target", choices=sorted(REPRODUCE))
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        ok = args.fn(args, out)
    except SizeLimitExceeded as exc:
        print(f"hyperfact: size limit: {exc}", file=sys.stderr)
        return 2
    except (ArrangementError, FieldMismatch, ValueError, OSError) as exc:
        print(f"hyperfact: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
