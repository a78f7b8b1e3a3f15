"""Exhaustive search over bounded (a, b) and table-vs-search verification.

The scan walks canonical representatives only (a > 0, so each equivalence
class {(a, b), (-a, -b)} is visited once), iterating q directly so that the
a == b mod 4 constraint holds by construction.  Validity checks are inlined
for speed and must stay in lockstep with pairs.validate_ab; a test pins the
equivalence.

Searches fan out over contiguous a-chunks.  Chunk boundaries depend only on
the bound, never on the worker count, and results are merged in chunk order,
so output is byte-identical for any --jobs value and checkpoint files written
by interrupted runs line up with any later resume.

Checkpoint format: the state file opens with a "# n <tab> bound" header
(chunk boundaries for different bounds can coincide, so the header is what
makes a wrong-bound resume detectable) followed by one line per completed
chunk, "n <tab> a_from <tab> a_to <tab> hit-count"; a sibling "<path>.hits"
file carries the corresponding "a <tab> b" lines.  A state line is only
written after its hits are flushed, so the state file is the commit record;
loading truncates both files to the last consistent prefix.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from .families import (
    SUPPORTED_N,
    DuplicateOf,
    FamilyEntry,
    FamilyParams,
    FamilyRowId,
    InvalidPair,
    UnsupportedNError,
    audit_exclusion,
    enumerate_families,
    enumerate_with_anomalies,
    instantiate,
    raw_ab,
)
from .pairs import (
    DEGENERATE_PQ,
    FailureKind,
    LehmerPair,
    canonicalize,
    lehmer_prefix,
    validate_ab,
)
from .primdiv import is_defective, residual_after_stripping


@dataclass(frozen=True)
class SearchResult:
    """Canonical n-defective pairs with max(|a|, |b|) <= bound, (a, b)-lex order."""

    n: int
    bound: int
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TableFailure:
    row: FamilyRowId
    params: FamilyParams
    raw_ab: tuple[int, int]
    reason: str


@dataclass(frozen=True)
class DiscrepancyReport:
    """Outcome of comparing exhaustive search against the family tables."""

    n: int
    bound: int
    missing_from_table: tuple[tuple[int, int], ...]
    table_failures: tuple[TableFailure, ...]
    equivalent_duplicates: tuple[tuple[FamilyEntry, FamilyEntry], ...]
    matched_count: int

    @property
    def exact_agreement(self) -> bool:
        return (
            not self.missing_from_table
            and not self.table_failures
            and not self.equivalent_duplicates
        )


@dataclass(frozen=True)
class AuditItem:
    change_id: str
    passed: bool
    evidence: str


class CheckpointMismatchError(RuntimeError):
    """Checkpoint file does not match this (n, bound) chunking."""


def _check_args(n: int, bound: int) -> None:
    if n not in SUPPORTED_N:
        raise UnsupportedNError(f"no classified families for n={n}")
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")


def _scan_range(n: int, a_from: int, a_to: int, bound: int) -> list[tuple[int, int]]:
    """Defective canonical pairs with a_from <= a <= a_to, ordered by (a, b)."""
    hits: list[tuple[int, int]] = []
    bad = DEGENERATE_PQ
    for a in range(max(1, a_from), min(a_to, bound) + 1):
        q_hi = (a + bound) // 4
        q_lo = -((bound - a) // 4)
        for q in range(q_hi, q_lo - 1, -1):  # descending q = ascending b
            if q == 0:
                continue
            b = a - 4 * q
            if b == 0:
                continue
            if gcd(a, q) != 1:
                continue
            if -1 <= q <= 1 and (a, q) in bad:
                continue
            if residual_after_stripping(a, b, n) == 1:
                hits.append((a, b))
    return hits


def _scan_worker(args: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    return _scan_range(*args)


def _chunks(bound: int) -> list[tuple[int, int]]:
    # Chunking is a function of the bound alone so resumes and differing
    # worker counts agree on boundaries.
    width = max(32, bound // 128)
    out = []
    a = 1
    while a <= bound:
        out.append((a, min(a + width - 1, bound)))
        a += width
    return out


def _run_chunks(n, chunks, bound, jobs):
    if jobs <= 1 or len(chunks) <= 1:
        for lo, hi in chunks:
            yield _scan_range(n, lo, hi, bound)
    else:
        args = [(n, lo, hi, bound) for lo, hi in chunks]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            yield from ex.map(_scan_worker, args)


def search_defective(n: int, bound: int, jobs: int = 1) -> SearchResult:
    """Scan every candidate (a, b), 0 < a <= bound, |b| <= bound, a == b mod 4."""
    _check_args(n, bound)
    pairs: list[tuple[int, int]] = []
    for chunk_hits in _run_chunks(n, _chunks(bound), bound, jobs):
        pairs.extend(chunk_hits)
    return SearchResult(n, bound, tuple(pairs))


def _load_checkpoint(
    state_path: Path, hits_path: Path, n: int, bound: int, chunks: list[tuple[int, int]]
) -> tuple[int, list[tuple[int, int]]]:
    header = f"# {n}\t{bound}"
    if not state_path.exists():
        state_path.write_text(header + "\n")
        hits_path.write_text("")
        return 0, []
    state_lines = state_path.read_text().splitlines()
    if not state_lines or state_lines[0] != header:
        raise CheckpointMismatchError(
            f"checkpoint header {state_lines[0] if state_lines else '<missing>'!r} "
            f"does not match n={n} bound={bound}"
        )
    state_lines = state_lines[1:]
    hit_lines = hits_path.read_text().splitlines() if hits_path.exists() else []
    done = 0
    need = 0
    for i, line in enumerate(state_lines):
        parts = line.split("\t")
        if len(parts) != 4:
            break
        rn, lo, hi, cnt = (int(x) for x in parts)
        if i >= len(chunks) or rn != n or (lo, hi) != chunks[i]:
            raise CheckpointMismatchError(
                f"checkpoint line {i + 1} ({line!r}) does not match chunk "
                f"{chunks[i] if i < len(chunks) else 'past end'} for n={n}"
            )
        if need + cnt > len(hit_lines):
            break  # state line committed before its hits landed; drop it
        done += 1
        need += cnt
    hits = [tuple(int(x) for x in l.split("\t")) for l in hit_lines[:need]]
    state_path.write_text(header + "\n" + "".join(l + "\n" for l in state_lines[:done]))
    hits_path.write_text("".join(f"{a}\t{b}\n" for a, b in hits))
    return done, hits  # type: ignore[return-value]


def search_with_checkpoint(
    n: int,
    bound: int,
    path: str | Path,
    jobs: int = 1,
    stop_after_chunks: int | None = None,
) -> SearchResult | None:
    """search_defective with resumable progress in a checkpoint file pair.

    Completed chunks found in the files are not recomputed.  With
    stop_after_chunks set, at most that many new chunks are processed and
    None is returned if work remains (used to exercise interruption).
    """
    _check_args(n, bound)
    chunks = _chunks(bound)
    state_path = Path(path)
    hits_path = Path(str(path) + ".hits")
    done, hits = _load_checkpoint(state_path, hits_path, n, bound, chunks)
    todo = chunks[done:]
    if stop_after_chunks is not None:
        todo = todo[:stop_after_chunks]
    if todo:
        with open(state_path, "a", encoding="utf-8") as sf, open(
            hits_path, "a", encoding="utf-8"
        ) as hf:
            for (lo, hi), chunk_hits in zip(todo, _run_chunks(n, todo, bound, jobs)):
                for a, b in chunk_hits:
                    hf.write(f"{a}\t{b}\n")
                hf.flush()
                sf.write(f"{n}\t{lo}\t{hi}\t{len(chunk_hits)}\n")
                sf.flush()
                hits.extend(chunk_hits)
    if done + len(todo) < len(chunks):
        return None
    return SearchResult(n, bound, tuple(hits))


def verify_table(n: int, bound: int, jobs: int = 1) -> DiscrepancyReport:
    """Compare search_defective against enumerate_families up to equivalence.

    Mismatches are classified, never raised: pairs the search found with no
    table entry, table entries that fail validation or are not defective, and
    equivalent duplicates within the table.
    """
    _check_args(n, bound)
    result = search_defective(n, bound, jobs)
    entries, anomalies = enumerate_with_anomalies(n, bound)
    failures = [
        TableFailure(row, params, raw, f"invalid:{fail.describe()}")
        for row, params, raw, fail in anomalies
    ]
    for e in entries:
        residual = residual_after_stripping(e.raw_ab[0], e.raw_ab[1], n)
        if residual != 1:
            failures.append(
                TableFailure(e.row, e.params, e.raw_ab, f"not_defective:residual={residual}")
            )
    duplicates = tuple((e, shadow) for e in entries if e.provenance for shadow in e.provenance)
    table_canon = {e.canonical_ab for e in entries}
    search_set = set(result.pairs)
    missing = tuple(p for p in result.pairs if p not in table_canon)
    matched = len(table_canon & search_set)
    return DiscrepancyReport(
        n=n,
        bound=bound,
        missing_from_table=missing,
        table_failures=tuple(failures),
        equivalent_duplicates=duplicates,
        matched_count=matched,
    )


# ---------------------------------------------------------------------------
# Changes audit
# ---------------------------------------------------------------------------


def _kind_of(reason) -> FailureKind | None:
    if isinstance(reason, InvalidPair):
        return reason.failure.kind
    return None


def _expect_invalid(n, row, params, kind, pq=None) -> tuple[bool, str]:
    reason = audit_exclusion(n, row, params)
    ab = raw_ab(row, params)
    ok = _kind_of(reason) is kind
    if ok and pq is not None:
        ok = reason.failure.pq == pq
    detail = reason.failure.describe() if isinstance(reason, InvalidPair) else f"{reason!r}"
    return ok, f"{row.value}({params.compact()}) -> (a,b)={ab}: {detail}"


def _expect_duplicate(n, row, params, of_params) -> tuple[bool, str]:
    reason = audit_exclusion(n, row, params)
    ab = raw_ab(row, params)
    ok = (
        isinstance(reason, DuplicateOf)
        and reason.row is row
        and reason.params == of_params
    )
    detail = (
        f"duplicate of {reason.row.value}({reason.params.compact()}) at {reason.canonical_ab}"
        if isinstance(reason, DuplicateOf)
        else f"{reason!r}"
    )
    return ok, f"{row.value}({params.compact()}) -> (a,b)={ab}: {detail}"


def _boundary_eliminations(row: FamilyRowId, ks: tuple[int, ...]) -> tuple[bool, str]:
    notes = []
    ok = True
    for k in ks:
        for eps in (1, -1):
            ab = raw_ab(row, FamilyParams(k=k, eps=eps))
            res = validate_ab(*ab)
            if isinstance(res, LehmerPair):
                ok = False
                notes.append(f"k={k},eps={eps}:{ab} UNEXPECTEDLY VALID")
            else:
                notes.append(f"k={k},eps={eps}:{ab}={res.describe()}")
    return ok, f"{row.value}: " + " ".join(notes)


def audit_changes() -> list[AuditItem]:
    """Re-verify each correction baked into the family tables.

    Every item recomputes the claimed fact from first principles: the
    excluded tuple really produces an invalid pair (with the recorded
    failure kind), the excluded duplicate really collides with the kept
    tuple, and the added instances really are valid and defective.
    """
    items: list[AuditItem] = []

    ok, ev = _expect_invalid(3, FamilyRowId.N3_Q, FamilyParams(q=-1), FailureKind.ZERO_A)
    items.append(AuditItem("n=3(1)", ok, ev))

    ok, ev = _expect_invalid(
        4, FamilyRowId.N4_Q, FamilyParams(q=-1), FailureKind.DEGENERATE_RATIO, (-1, -1)
    )
    items.append(AuditItem("n=4(1)", ok, ev))

    ok, ev = _expect_invalid(
        4, FamilyRowId.N4_POW2, FamilyParams(k=1, q=-1), FailureKind.ZERO_A
    )
    items.append(AuditItem("n=4(2)", ok, ev))

    entry = instantiate(FamilyRowId.N5_PSI, FamilyParams(k=1, eps=1))
    ok = (
        isinstance(entry, FamilyEntry)
        and entry.raw_ab == (-1, -5)
        and lehmer_prefix(entry.pair, 5) == [0, 1, 1, -2, -3, 5]
        and is_defective(entry.pair, 5)
    )
    items.append(
        AuditItem(
            "n=5(1)",
            ok,
            "N5_PSI(k=1,eps=1) -> (a,b)=(-1,-5): valid, u_0..u_5=[0,1,1,-2,-3,5], 5-defective",
        )
    )

    ok, ev = _expect_duplicate(
        5, FamilyRowId.N5_PSI, FamilyParams(k=0, eps=-1), FamilyParams(k=0, eps=1)
    )
    items.append(AuditItem("n=5(2)", ok, ev))

    ok, ev = _expect_invalid(
        6, FamilyRowId.N6_Q, FamilyParams(q=-1), FailureKind.DEGENERATE_RATIO, (-2, -1)
    )
    items.append(AuditItem("n=6(1)", ok, ev))

    ok1, ev1 = _expect_invalid(
        6, FamilyRowId.N6_POW3, FamilyParams(l=1, q=-1), FailureKind.ZERO_A
    )
    ok2, ev2 = _expect_invalid(
        6, FamilyRowId.N6_POW2, FamilyParams(k=1, q=-1), FailureKind.DEGENERATE_RATIO, (-1, -1)
    )
    items.append(AuditItem("n=6(2)", ok1 and ok2, f"{ev1}; {ev2}"))

    ok1, ev1 = _boundary_eliminations(FamilyRowId.N8_RHO, (0, 1))
    ok2, ev2 = _boundary_eliminations(FamilyRowId.N8_PI, (0, 1))
    items.append(AuditItem("n=8", ok1 and ok2, f"no changes; {ev1}; {ev2}"))

    entry = instantiate(FamilyRowId.N10_PSI, FamilyParams(k=1, eps=1))
    ok = (
        isinstance(entry, FamilyEntry)
        and entry.raw_ab == (-5, -1)
        and entry.canonical_ab == (5, 1)
        and is_defective(entry.pair, 10)
    )
    items.append(
        AuditItem(
            "n=10(1)",
            ok,
            "N10_PSI(k=1,eps=1) -> (a,b)=(-5,-1), canonical (5,1): valid, 10-defective",
        )
    )

    ok, ev = _expect_duplicate(
        10, FamilyRowId.N10_PSI, FamilyParams(k=0, eps=-1), FamilyParams(k=0, eps=1)
    )
    items.append(AuditItem("n=10(2)", ok, ev))

    expected_kinds = {
        (FamilyRowId.N12_ZETA0, 0, 1): (FailureKind.ZERO_Q, None),
        (FamilyRowId.N12_ZETA0, 0, -1): (FailureKind.ZERO_Q, None),
        (FamilyRowId.N12_ZETA0, 1, 1): (FailureKind.ZERO_A, None),
        (FamilyRowId.N12_ZETA0, 1, -1): (FailureKind.ZERO_B, None),
        (FamilyRowId.N12_ZETA1, 0, 1): (FailureKind.DEGENERATE_RATIO, (2, 1)),
        (FamilyRowId.N12_ZETA1, 0, -1): (FailureKind.DEGENERATE_RATIO, (2, 1)),
        (FamilyRowId.N12_ZETA2, 0, 1): (FailureKind.DEGENERATE_RATIO, (1, 1)),
        (FamilyRowId.N12_ZETA2, 0, -1): (FailureKind.DEGENERATE_RATIO, (3, 1)),
    }
    all_ok = True
    notes = []
    for (row, k, eps), (kind, pq) in expected_kinds.items():
        ok, ev = _expect_invalid(12, row, FamilyParams(k=k, eps=eps), kind, pq)
        all_ok = all_ok and ok
        notes.append(ev)
    items.append(AuditItem("n=12(2)", all_ok, "; ".join(notes)))

    entry = instantiate(FamilyRowId.N12_ZETA3, FamilyParams(k=0, eps=1))
    canon_set = {e.canonical_ab for e in enumerate_families(12, 5)}
    ok = (
        isinstance(entry, FamilyEntry)
        and entry.raw_ab == (-1, -5)
        and entry.canonical_ab == (1, 5)
        and (1, 5) in canon_set
        and is_defective(canonicalize(entry.pair), 12)
    )
    items.append(
        AuditItem(
            "n=12(3)",
            ok,
            "N12_ZETA3(k=0,eps=1) -> (a,b)=(-1,-5), canonical (1,5): enumerated at bound 5, 12-defective",
        )
    )
    return items
