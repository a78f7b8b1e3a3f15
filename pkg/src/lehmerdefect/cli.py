"""Command-line surface for the classification, search and audit operations.

Subcommand grammar:

    seq <phi|psi|pi|rho|zeta0..zeta3> <k>
    u <a> <b> <n>
    check <a> <b> <n> [--format F]
    family <n> --bound N [--format F]
    search <n> --bound N [--jobs J] [--checkpoint PATH] [--format F]
    verify <n> --bound N [--jobs J] [--format F]
    audit [--format F]

Formats: text (default), tsv (tab separated, one record per line, "#" header
line), json (a single document per invocation).  Values that can exceed 64
bits (a, b, sequence elements, products, residuals, primes) are serialized as
decimal strings in json and as plain decimal in text/tsv.

Exit codes: 0 success with no discrepancy; 1 usage or validation error;
2 when a verify/audit run completes but reports a non-empty discrepancy.

LEHMERDEFECT_JOBS sets the default worker count; --jobs wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import IO, Sequence

from . import families, harness, pairs, primdiv, sequences

FORMATS = ("text", "tsv", "json")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lehmerdefect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print one sequence element")
    p.add_argument("id", choices=[s.value for s in sequences.SequenceId])
    p.add_argument("k", type=int)

    p = sub.add_parser("u", help="print the n-th element of the pair (a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("check", help="defectiveness witness for (a, b) at n")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=FORMATS, default="text")

    def common(p):
        p.add_argument("n", type=int)
        p.add_argument("--bound", type=int, required=True)
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("family", help="enumerate family table entries")
    common(p)

    p = sub.add_parser("search", help="exhaustive scan for defective pairs")
    common(p)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--checkpoint", default=None)

    p = sub.add_parser("verify", help="compare search against the family table")
    common(p)
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("audit", help="re-verify the table corrections")
    p.add_argument("--format", choices=FORMATS, default="text")
    return parser


def _jobs_of(ns) -> int:
    if getattr(ns, "jobs", None) is not None:
        return max(1, ns.jobs)
    return max(1, int(os.environ.get("LEHMERDEFECT_JOBS", "1")))


def _params_doc(params: families.FamilyParams) -> dict:
    return {
        name: getattr(params, name)
        for name in ("k", "l", "q", "eps")
        if getattr(params, name) is not None
    }


def _params_cell(params: families.FamilyParams, name: str) -> str:
    v = getattr(params, name)
    return "-" if v is None else str(v)


def _entry_doc(e: families.FamilyEntry) -> dict:
    return {
        "row": e.row.value,
        "params": _params_doc(e.params),
        "raw_a": str(e.raw_ab[0]),
        "raw_b": str(e.raw_ab[1]),
        "canonical_a": str(e.canonical_ab[0]),
        "canonical_b": str(e.canonical_ab[1]),
        "provenance": [
            {"row": s.row.value, "params": _params_doc(s.params)} for s in e.provenance
        ],
    }


def _provenance_cell(e: families.FamilyEntry) -> str:
    if not e.provenance:
        return "-"
    return ";".join(f"{s.row.value}({s.params.compact()})" for s in e.provenance)


def _emit_check(witness: primdiv.DefectWitness, fmt: str, out: IO[str]) -> None:
    primes = witness.primitive_primes or ()
    if fmt == "json":
        doc = {
            "a": str(witness.pair.a),
            "b": str(witness.pair.b),
            "n": witness.n,
            "u_n": str(witness.u_n),
            "nonprim_product": str(witness.nonprim_product),
            "residual": str(witness.residual),
            "defective": witness.defective,
            "primitive_primes": [str(p) for p in primes],
        }
        out.write(json.dumps(doc) + "\n")
    elif fmt == "tsv":
        out.write("# a\tb\tn\tu_n\tnonprim_product\tresidual\tdefective\tprimitive_primes\n")
        out.write(
            f"{witness.pair.a}\t{witness.pair.b}\t{witness.n}\t{witness.u_n}\t"
            f"{witness.nonprim_product}\t{witness.residual}\t"
            f"{str(witness.defective).lower()}\t{','.join(str(p) for p in primes)}\n"
        )
    else:
        out.write(f"pair: ({witness.pair.a}, {witness.pair.b})\n")
        out.write(f"n: {witness.n}\n")
        out.write(f"u_n: {witness.u_n}\n")
        out.write(f"nonprim_product: {witness.nonprim_product}\n")
        out.write(f"residual: {witness.residual}\n")
        out.write(f"defective: {str(witness.defective).lower()}\n")
        out.write(f"primitive_primes: {list(primes)}\n")


def _emit_family(n: int, bound: int, entries, fmt: str, out: IO[str]) -> None:
    if fmt == "json":
        doc = {
            "n": n,
            "bound": bound,
            "count": len(entries),
            "entries": [_entry_doc(e) for e in entries],
        }
        out.write(json.dumps(doc) + "\n")
    elif fmt == "tsv":
        out.write("# n\trow\tk\tl\tq\teps\traw_a\traw_b\tcanon_a\tcanon_b\tprovenance\n")
        for e in entries:
            cells = [str(n), e.row.value]
            cells += [_params_cell(e.params, f) for f in ("k", "l", "q", "eps")]
            cells += [str(e.raw_ab[0]), str(e.raw_ab[1])]
            cells += [str(e.canonical_ab[0]), str(e.canonical_ab[1])]
            cells.append(_provenance_cell(e))
            out.write("\t".join(cells) + "\n")
    else:
        out.write(f"n={n} bound={bound} entries={len(entries)}\n")
        for e in entries:
            out.write(
                f"row={e.row.value} params={e.params.compact()} raw={e.raw_ab} "
                f"canonical={e.canonical_ab}\n"
            )


def _emit_search(result: harness.SearchResult, fmt: str, out: IO[str]) -> None:
    if fmt == "json":
        doc = {
            "n": result.n,
            "bound": result.bound,
            "count": len(result.pairs),
            "pairs": [[str(a), str(b)] for a, b in result.pairs],
        }
        out.write(json.dumps(doc) + "\n")
    elif fmt == "tsv":
        out.write("# a\tb\n")
        for a, b in result.pairs:
            out.write(f"{a}\t{b}\n")
    else:
        out.write(f"n={result.n} bound={result.bound} count={len(result.pairs)}\n")
        for a, b in result.pairs:
            out.write(f"{a} {b}\n")


def _failure_doc(f: harness.TableFailure) -> dict:
    return {
        "row": f.row.value,
        "params": _params_doc(f.params),
        "raw_a": str(f.raw_ab[0]),
        "raw_b": str(f.raw_ab[1]),
        "reason": f.reason,
    }


def _emit_verify(report: harness.DiscrepancyReport, fmt: str, out: IO[str]) -> None:
    if fmt == "json":
        doc = {
            "n": report.n,
            "bound": report.bound,
            "matched_count": report.matched_count,
            "exact_agreement": report.exact_agreement,
            "missing_from_table": [[str(a), str(b)] for a, b in report.missing_from_table],
            "table_failures": [_failure_doc(f) for f in report.table_failures],
            "equivalent_duplicates": [
                {
                    "kept": {"row": kept.row.value, "params": _params_doc(kept.params)},
                    "shadow": {"row": sh.row.value, "params": _params_doc(sh.params)},
                    "canonical_a": str(kept.canonical_ab[0]),
                    "canonical_b": str(kept.canonical_ab[1]),
                }
                for kept, sh in report.equivalent_duplicates
            ],
        }
        out.write(json.dumps(doc) + "\n")
    elif fmt == "tsv":
        out.write("# kind\ta\tb\tdetail\n")
        out.write(
            f"summary\t-\t-\tn={report.n} bound={report.bound} "
            f"matched={report.matched_count} "
            f"exact_agreement={str(report.exact_agreement).lower()}\n"
        )
        for a, b in report.missing_from_table:
            out.write(f"missing\t{a}\t{b}\t-\n")
        for f in report.table_failures:
            out.write(
                f"table_failure\t{f.raw_ab[0]}\t{f.raw_ab[1]}\t"
                f"{f.row.value}({f.params.compact()}) {f.reason}\n"
            )
        for kept, sh in report.equivalent_duplicates:
            out.write(
                f"equivalent_duplicate\t{kept.canonical_ab[0]}\t{kept.canonical_ab[1]}\t"
                f"kept={kept.row.value}({kept.params.compact()}) "
                f"shadow={sh.row.value}({sh.params.compact()})\n"
            )
    else:
        out.write(
            f"n={report.n} bound={report.bound} matched={report.matched_count} "
            f"exact_agreement={str(report.exact_agreement).lower()}\n"
        )
        for a, b in report.missing_from_table:
            out.write(f"missing from table: ({a}, {b})\n")
        for f in report.table_failures:
            out.write(
                f"table failure: {f.row.value}({f.params.compact()}) raw={f.raw_ab} {f.reason}\n"
            )
        for kept, sh in report.equivalent_duplicates:
            out.write(
                f"equivalent duplicate: kept {kept.row.value}({kept.params.compact()}) "
                f"shadow {sh.row.value}({sh.params.compact()}) at {kept.canonical_ab}\n"
            )


def _emit_audit(items, fmt: str, out: IO[str]) -> None:
    all_passed = all(i.passed for i in items)
    if fmt == "json":
        doc = {
            "all_passed": all_passed,
            "changes": [
                {"id": i.change_id, "passed": i.passed, "evidence": i.evidence}
                for i in items
            ],
        }
        out.write(json.dumps(doc) + "\n")
    elif fmt == "tsv":
        out.write("# change\tpassed\tevidence\n")
        for i in items:
            out.write(f"{i.change_id}\t{str(i.passed).lower()}\t{i.evidence}\n")
    else:
        for i in items:
            out.write(f"{i.change_id} {'PASS' if i.passed else 'FAIL'} {i.evidence}\n")
        out.write(f"all_passed: {str(all_passed).lower()}\n")


def run(argv: Sequence[str], stdout: IO[str] | None = None, stderr: IO[str] | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except _UsageError as e:
        err.write(f"error: {e}\n")
        return 1
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 1

    try:
        if ns.command == "seq":
            out.write(f"{sequences.seq_eval(sequences.SequenceId(ns.id), ns.k)}\n")
            return 0
        if ns.command == "u":
            pair = pairs.require_pair(ns.a, ns.b)
            out.write(f"{pairs.lehmer_number(pair, ns.n)}\n")
            return 0
        if ns.command == "check":
            pair = pairs.require_pair(ns.a, ns.b)
            witness = primdiv.defect_witness(pair, ns.n, factor_residual=True)
            _emit_check(witness, ns.format, out)
            return 0
        if ns.command == "family":
            if ns.bound < 0:
                raise ValueError(f"bound must be nonnegative, got {ns.bound}")
            entries = families.enumerate_families(ns.n, ns.bound)
            _emit_family(ns.n, ns.bound, entries, ns.format, out)
            return 0
        if ns.command == "search":
            if ns.checkpoint is not None:
                result = harness.search_with_checkpoint(
                    ns.n, ns.bound, ns.checkpoint, jobs=_jobs_of(ns)
                )
                assert result is not None  # no stop_after_chunks from the CLI
            else:
                result = harness.search_defective(ns.n, ns.bound, jobs=_jobs_of(ns))
            _emit_search(result, ns.format, out)
            return 0
        if ns.command == "verify":
            report = harness.verify_table(ns.n, ns.bound, jobs=_jobs_of(ns))
            _emit_verify(report, ns.format, out)
            return 0 if report.exact_agreement else 2
        if ns.command == "audit":
            items = harness.audit_changes()
            _emit_audit(items, ns.format, out)
            return 0 if all(i.passed for i in items) else 2
    except (
        ValueError,
        OSError,
        pairs.InvalidPairError,
        families.UnsupportedNError,
        primdiv.UnsupportedIndexError,
        harness.CheckpointMismatchError,
    ) as e:
        err.write(f"error: {e}\n")
        return 1
    raise AssertionError(f"unhandled command {ns.command!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))
