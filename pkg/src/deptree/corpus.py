"""Treebank ingestion, per-sentence analysis and report rendering."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import TextIO

from deptree.arrangement import CrossingStats, LengthStats, LinearArrangement, crossing_count, length_stats
from deptree.bounds import BoundsReport, BoundViolation, bound_violations, compute_bounds
from deptree.tree import DegreeStats, Tree, TreeError, degree_stats, validate_tree

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REPORT_COLUMNS = (
    "sent_id",
    "n",
    "mean_k2",
    "var_k",
    "mean_d",
    "mean_d2",
    "C",
    "M",
    "dmin_eq10",
    "dmin_eq11",
    "dmax_eq7",
    "cmax_eq12",
    "cmax_eq13",
    "cpairs_eq14",
    "E_d_baseline",
)
AGGREGATE_COLUMNS = ("n", "sentences", "mean_d", "mean_d2", "var_k", "mean_k2", "C", "mean_d_over_E_d")
SKIP_REASONS = ("multi-root", "no-root", "cycle", "bad-head", "bad-line")


class EdgeListError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SentenceRecord:
    sent_id: str
    n: int
    head: tuple[int, ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, h) for i, h in enumerate(self.head, start=1) if h != 0]

    def tree(self) -> Tree:
        return validate_tree(self.n, self.edges)


@dataclass(frozen=True)
class Skip:
    sent_id: str
    reason: str
    line: int
    detail: str

    def to_json(self) -> str:
        return json.dumps(
            {"sent_id": self.sent_id, "reason": self.reason, "line": self.line, "detail": self.detail},
            separators=(",", ":"),
        )


@dataclass
class ParseLog:
    blocks: int = 0
    accepted: int = 0
    skips: list[Skip] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {reason: 0 for reason in SKIP_REASONS}
        for s in self.skips:
            out[s.reason] += 1
        return out


@dataclass(frozen=True)
class SentenceReport:
    sent_id: str
    n: int
    degrees: DegreeStats
    lengths: LengthStats
    crossings: CrossingStats
    bounds: BoundsReport

    @property
    def E_d(self) -> Fraction:
        return self.bounds.E_d

    def values(self) -> dict[str, object]:
        b = self.bounds
        return {
            "sent_id": self.sent_id,
            "n": self.n,
            "mean_k2": self.degrees.mean_k2,
            "var_k": self.degrees.var_k,
            "mean_d": self.lengths.mean_d,
            "mean_d2": self.lengths.mean_d2,
            "C": self.crossings.C,
            "M": self.crossings.M,
            "dmin_eq10": b.dmin_star_ensemble,
            "dmin_eq11": b.dmin_hubiness,
            "dmax_eq7": b.dmax_noncrossing,
            "cmax_eq12": b.cmax_uncrossable,
            "cmax_eq13": b.cmax_length,
            "cpairs_eq14": b.cpairs_degree,
            "E_d_baseline": b.E_d,
        }


# --- CoNLL-U -----------------------------------------------------------------


def _blocks(stream: Iterable[str]) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    block: list[tuple[int, str]] = []
    start = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            if block:
                yield start, block
                block = []
            continue
        if not block:
            start = lineno
        block.append((lineno, line))
    if block:
        yield start, block


def _parse_block(start: int, block: list[tuple[int, str]], ordinal: int) -> SentenceRecord | Skip:
    sent_id = str(ordinal)
    rows: list[tuple[int, str, str]] = []
    for lineno, line in block:
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep and key.strip() == "sent_id":
                sent_id = value.strip()
            continue
        cols = line.split("\t")
        rows.append((lineno, cols[0], cols[6] if len(cols) == 10 else ""))
        if len(cols) != 10:
            return Skip(sent_id, "bad-line", lineno, f"expected 10 tab-separated columns, got {len(cols)}")

    heads: list[int] = []
    for lineno, tok_id, head in rows:
        if "-" in tok_id or "." in tok_id:
            continue
        try:
            i = int(tok_id)
            h = int(head)
        except ValueError:
            return Skip(sent_id, "bad-line", lineno, f"non-integer ID or HEAD ({tok_id!r}, {head!r})")
        if i != len(heads) + 1:
            return Skip(sent_id, "bad-line", lineno, f"token ID {i} out of sequence")
        heads.append(h)
    n = len(heads)
    if n == 0:
        return Skip(sent_id, "bad-line", start, "sentence has no tokens")
    for i, h in enumerate(heads, start=1):
        if not 0 <= h <= n:
            return Skip(sent_id, "bad-head", start, f"token {i} has head {h} outside 0..{n}")
    roots = heads.count(0)
    if roots == 0:
        return Skip(sent_id, "no-root", start, "no token has head 0")
    if roots > 1:
        return Skip(sent_id, "multi-root", start, f"{roots} tokens have head 0")
    record = SentenceRecord(sent_id, n, tuple(heads))
    try:
        record.tree()
    except TreeError as exc:
        return Skip(sent_id, "cycle", start, str(exc))
    return record


def parse_conllu(stream: Iterable[str], parse_log: ParseLog | None = None) -> Iterator[SentenceRecord]:
    """Yield the valid sentences of a CoNLL-U stream.

    Only the ID and HEAD columns are read. Multiword-token ranges and empty
    nodes are ignored. Invalid sentences are skipped and appended to
    ``parse_log.skips`` with a reason from :data:`SKIP_REASONS`.
    """
    if parse_log is None:
        parse_log = ParseLog()
    for ordinal, (start, block) in enumerate(_blocks(stream), start=1):
        parse_log.blocks += 1
        result = _parse_block(start, block, ordinal)
        if isinstance(result, Skip):
            log.info("skipping sentence %s: %s (%s)", result.sent_id, result.reason, result.detail)
            parse_log.skips.append(result)
            continue
        parse_log.accepted += 1
        yield result


def to_conllu(record: SentenceRecord) -> str:
    lines = [f"# sent_id = {record.sent_id}"]
    for i, h in enumerate(record.head, start=1):
        lines.append("\t".join([str(i), "_", "_", "_", "_", "_", str(h), "_", "_", "_"]))
    return "\n".join(lines) + "\n\n"


# --- edge lists --------------------------------------------------------------


def parse_edgelist(stream: Iterable[str]) -> tuple[Tree, LinearArrangement | None]:
    """Read ``n``, then one ``u v`` edge per line, then optionally a line of
    ``n`` positions (the position of each vertex in ID order).

    ``#`` starts a comment. With ``n = 2`` a second data line after the edge is
    read as the arrangement.
    """
    data: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            data.append((lineno, [int(tok) for tok in text.split()]))
        except ValueError:
            raise EdgeListError(f"non-integer token in {text!r}", lineno) from None
    if not data:
        raise EdgeListError("empty edge list")
    header_line, header = data[0]
    if len(header) != 1 or header[0] < 1:
        raise EdgeListError("first line must hold the vertex count n >= 1", header_line)
    n = header[0]
    body = data[1:]
    arrangement = None
    if body and len(body[-1][1]) == n and (n != 2 or len(body) == 2):
        arr_line, positions = body.pop()
        try:
            arrangement = LinearArrangement.from_positions(positions)
        except ValueError as exc:
            raise EdgeListError(str(exc), arr_line) from None
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise EdgeListError(f"expected an edge 'u v', got {len(toks)} values", lineno)
        edges.append((toks[0], toks[1]))
    try:
        tree = validate_tree(n, edges)
    except TreeError as exc:
        raise EdgeListError(f"{type(exc).__name__}: {exc}") from exc
    return tree, arrangement


def format_edgelist(tree: Tree, arr: LinearArrangement | None = None) -> str:
    lines = [str(tree.n)] + [f"{u} {v}" for u, v in tree.edges]
    if arr is not None:
        lines.append(" ".join(str(p) for p in arr.positions))
    return "\n".join(lines) + "\n"


# --- analysis ----------------------------------------------------------------


def analyze_tree(sent_id: str, tree: Tree, arr: LinearArrangement | None = None, validate: bool = False) -> SentenceReport:
    if arr is None:
        arr = LinearArrangement.identity(tree.n)
    dstats = degree_stats(tree)
    lstats = length_stats(tree, arr)
    cstats = crossing_count(tree, arr)
    report = compute_bounds(tree, dstats, lstats, cstats)
    if validate:
        problems = bound_violations(dstats, lstats, cstats, report)
        if problems:
            raise BoundViolation(f"sentence {sent_id}: " + "; ".join(problems))
    return SentenceReport(sent_id, tree.n, dstats, lstats, cstats, report)


def _analyze_record(args: tuple[SentenceRecord, bool]) -> SentenceReport:
    record, validate = args
    return analyze_tree(record.sent_id, record.tree(), validate=validate)


def analyze_corpus(
    records: Iterable[SentenceRecord], min_n: int = 2, validate: bool = False, executor=None
) -> Iterator[SentenceReport]:
    """One report per sentence with ``n >= min_n``, in input order.

    Token order is the arrangement. ``executor`` may be any object with an
    order-preserving ``map`` (e.g. a process pool).
    """
    if min_n < 2:
        raise ValueError(f"min_n must be >= 2, got {min_n}")
    work = ((r, validate) for r in records if r.n >= min_n)
    if executor is None:
        yield from map(_analyze_record, work)
    else:
        yield from executor.map(_analyze_record, work, chunksize=64)


@dataclass
class _Accumulator:
    sentences: int = 0
    mean_d: Fraction = Fraction(0)
    mean_d2: Fraction = Fraction(0)
    var_k: Fraction = Fraction(0)
    mean_k2: Fraction = Fraction(0)
    C: int = 0
    ratio: Fraction = Fraction(0)


def aggregate_by_length(reports: Iterable[SentenceReport]) -> list[dict[str, object]]:
    """Per sentence length: count and means of the main statistics, ordered by n."""
    acc: dict[int, _Accumulator] = {}
    for r in reports:
        a = acc.setdefault(r.n, _Accumulator())
        a.sentences += 1
        a.mean_d += r.lengths.mean_d
        a.mean_d2 += r.lengths.mean_d2
        a.var_k += r.degrees.var_k
        a.mean_k2 += r.degrees.mean_k2
        a.C += r.crossings.C
        a.ratio += r.lengths.mean_d / r.E_d
    rows = []
    for n in sorted(acc):
        a = acc[n]
        k = a.sentences
        rows.append(
            {
                "n": n,
                "sentences": k,
                "mean_d": a.mean_d / k,
                "mean_d2": a.mean_d2 / k,
                "var_k": a.var_k / k,
                "mean_k2": a.mean_k2 / k,
                "C": Fraction(a.C, k),
                "mean_d_over_E_d": a.ratio / k,
            }
        )
    return rows


# --- rendering ---------------------------------------------------------------


def decimal_str(value: object) -> str:
    """Render a number with 12 significant digits, no exponent for ordinary magnitudes."""
    if isinstance(value, bool) or value is None:
        return "NA" if value is None else str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".12g")
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        with localcontext() as ctx:
            ctx.prec = 40
            value = Decimal(value.numerator) / Decimal(value.denominator)
        return format(value, ".12g")
    return str(value)


def exact_str(value: object) -> object:
    """JSON rendering: exact ``p/q`` strings for numbers, plain values otherwise."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    return value


def write_csv(out: TextIO, columns: Iterable[str], rows: Iterable[dict[str, object]]) -> None:
    columns = list(columns)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([decimal_str(row[c]) for c in columns])


def json_line(payload: dict[str, object]) -> str:
    return json.dumps({k: exact_str(v) for k, v in payload.items()}, separators=(",", ":"))


def render_csv(reports: list[SentenceReport], aggregates: list[dict[str, object]]) -> str:
    buf = io.StringIO()
    write_csv(buf, REPORT_COLUMNS, (r.values() for r in reports))
    buf.write("\n")
    write_csv(buf, AGGREGATE_COLUMNS, aggregates)
    return buf.getvalue()
