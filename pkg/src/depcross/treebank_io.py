"""Reading dependency trees (CoNLL-U, edge lists) and writing analysis tables.

CoNLL-U is read for the ID and HEAD columns only (plus DEPREL when
punctuation is dropped).  The edge to the artificial root 0 is not a tree
edge, so an n-word sentence yields n - 1 edges and token ``i`` becomes
vertex ``i`` at position ``i``.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Callable, Iterable, Iterator

from .arrangement import LinearArrangement
from .errors import (CycleInHeads, MalformedRow, MultipleRoots, NoRoot, NotATree,
                     ParseError)
from .tree import Tree


@dataclass(frozen=True)
class SentenceRecord:
    sentence_id: str
    tokens: tuple[str, ...]
    heads: tuple[int, ...]            # heads[i - 1] is the head of token i, 0 for the root
    deprels: tuple[str, ...] = ()
    source: str = "<stream>"
    lines: tuple[int, int] = (0, 0)  # first and last line of the sentence block

    @property
    def n(self) -> int:
        return len(self.tokens)

    def to_tree(self, drop_punct: bool = False) -> tuple[Tree, LinearArrangement]:
        """Word-level tree and the attested (identity) arrangement.

        With ``drop_punct`` tokens whose relation is ``punct`` are removed
        and the rest re-indexed; their dependents (rare) are reattached to
        the nearest kept ancestor.
        """
        rec = self.without_punct() if drop_punct else self
        edges = tuple((i, h) for i, h in enumerate(rec.heads, start=1) if h != 0)
        return Tree(rec.n, edges), LinearArrangement.identity(rec.n)

    def without_punct(self) -> SentenceRecord:
        if not self.deprels:
            return self
        keep = [i for i in range(1, self.n + 1) if self.deprels[i - 1].split(":")[0] != "punct"]
        if len(keep) == self.n:
            return self
        if not keep:
            raise NoRoot("every token is punctuation", self.sentence_id, self.lines[0])
        new_index = {old: new for new, old in enumerate(keep, start=1)}

        def kept_ancestor(h):
            seen = set()
            while h != 0 and h not in new_index:
                if h in seen:
                    raise CycleInHeads("heads loop", self.sentence_id, self.lines[0])
                seen.add(h)
                h = self.heads[h - 1]
            return 0 if h == 0 else new_index[h]

        heads = [kept_ancestor(self.heads[i - 1]) for i in keep]
        roots = [i for i, h in enumerate(heads, start=1) if h == 0]
        if len(roots) > 1:
            # punctuation root with several dependents: keep the first as root
            for r in roots[1:]:
                heads[r - 1] = roots[0]
        rec = SentenceRecord(
            self.sentence_id,
            tuple(self.tokens[i - 1] for i in keep),
            tuple(heads),
            tuple(self.deprels[i - 1] for i in keep),
            self.source,
            self.lines,
        )
        _check_heads(rec.heads, rec.sentence_id, rec.lines[0])
        return rec


def _check_heads(heads, sid, line):
    n = len(heads)
    for i, h in enumerate(heads, start=1):
        if not 0 <= h <= n:
            raise MalformedRow(f"token {i} has HEAD {h} outside 0..{n}", sid, line)
        if h == i:
            raise CycleInHeads(f"token {i} is its own head", sid, line)
    # every token must reach HEAD 0; without a root some walk has to loop
    state = [0] * (n + 1)  # 0 unknown, 1 on current path, 2 reaches root
    for start in range(1, n + 1):
        path = []
        v = start
        while v != 0 and state[v] == 0:
            state[v] = 1
            path.append(v)
            v = heads[v - 1]
        if v != 0 and state[v] == 1:
            raise CycleInHeads(f"heads loop through token {v}", sid, line)
        for u in path:
            state[u] = 2
    roots = [i for i, h in enumerate(heads, start=1) if h == 0]
    if not roots:
        raise NoRoot("no token has HEAD 0", sid, line)
    if len(roots) > 1:
        raise MultipleRoots(f"tokens {roots} all have HEAD 0", sid, line)


_ID_INT = re.compile(r"^\d+$")
_ID_RANGE = re.compile(r"^\d+-\d+$")
_ID_EMPTY = re.compile(r"^\d+\.\d+$")


def _text_lines(stream) -> Iterator[str]:
    # a one-line string naming an existing file is read as a path
    is_path = isinstance(stream, Path) or (
        isinstance(stream, str) and "\n" not in stream and Path(stream).is_file())
    if is_path:
        with open(stream, encoding="utf-8") as fh:
            yield from fh
        return
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        yield from io.StringIO(stream)
        return
    for line in stream:
        yield line.decode("utf-8") if isinstance(line, bytes) else line


def parse_conllu(stream, *, source: str = "<stream>",
                 on_error: Callable[[ParseError], None] | None = None) -> Iterator[SentenceRecord]:
    """Sentences of a CoNLL-U document, in order.

    ``stream`` is text, bytes, a path or an iterable of lines.  Errors name
    the sentence and line; with ``on_error`` each bad sentence is reported
    to the callback and skipped, otherwise the first one is raised.
    """
    block: list[tuple[int, str]] = []
    comments: dict[str, str] = {}
    count = 0
    lineno = 0

    def flush():
        nonlocal count
        if not block:
            return None
        count += 1
        sid = comments.get("sent_id", str(count))
        try:
            return _read_block(block, sid, source)
        except ParseError as exc:
            if on_error is None:
                raise
            on_error(exc)
            return None

    for lineno, raw in enumerate(_text_lines(stream), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            rec = flush()
            if rec is not None:
                yield rec
            block, comments = [], {}
            continue
        if line.startswith("#"):
            if not block:
                m = re.match(r"#\s*([\w.-]+)\s*=\s*(.*)$", line)
                if m:
                    comments[m.group(1)] = m.group(2).strip()
            continue
        block.append((lineno, line))
    rec = flush()
    if rec is not None:
        yield rec


def _read_block(block, sid, source) -> SentenceRecord:
    tokens, heads, rels = [], [], []
    for lineno, line in block:
        cols = line.split("\t")
        if len(cols) != 10:
            raise MalformedRow(f"expected 10 tab-separated columns, got {len(cols)}", sid, lineno)
        tid = cols[0]
        if _ID_RANGE.match(tid) or _ID_EMPTY.match(tid):
            continue
        if not _ID_INT.match(tid):
            raise MalformedRow(f"bad ID {tid!r}", sid, lineno)
        if int(tid) != len(tokens) + 1:
            raise MalformedRow(f"ID {tid} out of sequence", sid, lineno)
        try:
            head = int(cols[6])
        except ValueError:
            raise MalformedRow(f"bad HEAD {cols[6]!r}", sid, lineno) from None
        tokens.append(cols[1])
        heads.append(head)
        rels.append(cols[7])
    if not tokens:
        raise MalformedRow("sentence without word tokens", sid, block[0][0])
    _check_heads(heads, sid, block[0][0])
    return SentenceRecord(sid, tuple(tokens), tuple(heads), tuple(rels), source,
                          (block[0][0], block[-1][0]))


# ---------------------------------------------------------------- edge lists

@dataclass
class EdgeListEntry:
    sentence_id: str
    tree: Tree
    arrangement: LinearArrangement
    words: tuple[str, ...] = field(default=())


def parse_edge_lists(text: str, *, source: str = "<text>",
                     on_error: Callable[[Exception], None] | None = None) -> Iterator[EdgeListEntry]:
    """Trees in the edge-list format, several per text.

    Each block starts with ``n=<int>`` and holds one ``u v`` line per edge,
    optionally ``order: v1 ... vn`` (vertices left to right), ``id: name``
    and ``words: w1 ... wn``.  ``id:`` may precede its ``n=`` line.  ``#``
    starts a comment.  A block without an id is named after the file when
    it is the only one, else by its 1-based index.  With ``on_error`` a bad
    block is reported and skipped instead of raising.
    """
    blocks = []
    pending_id = None
    cur = None
    stray = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        key = key.strip().lower()
        if line.replace(" ", "").lower().startswith("n="):
            cur = {"n": None, "edges": [], "order": None, "id": pending_id, "words": (),
                   "line": lineno, "error": None}
            pending_id = None
            blocks.append(cur)
            try:
                cur["n"] = int(line.split("=", 1)[1])
            except ValueError:
                cur["error"] = (f"bad header {line!r}", lineno)
            continue
        if sep and key == "id":
            if cur is not None and cur["id"] is None and not cur["edges"]:
                cur["id"] = val.strip()
            else:
                pending_id = val.strip()
            continue
        if cur is None:
            if stray is None:
                stray = MalformedRow(f"expected 'n=<int>' header, got {line!r}", pending_id, lineno)
            continue
        if cur["error"] is not None:
            continue
        if sep and key == "order":
            try:
                cur["order"] = [int(x) for x in val.split()]
            except ValueError:
                cur["error"] = (f"bad order line {line!r}", lineno)
        elif sep and key == "words":
            cur["words"] = tuple(val.split())
        else:
            parts = line.split()
            if len(parts) != 2 or not all(_ID_INT.match(x) for x in parts):
                cur["error"] = (f"expected 'u v', got {line!r}", lineno)
            else:
                cur["edges"].append((int(parts[0]), int(parts[1])))

    def fail(exc):
        if on_error is None:
            raise exc
        on_error(exc)

    if stray is not None:
        fail(stray)
    for i, b in enumerate(blocks, start=1):
        sid = b["id"] or (Path(source).stem if len(blocks) == 1 and source != "<text>" else str(i))
        if b["error"] is not None:
            fail(MalformedRow(b["error"][0], sid, b["error"][1]))
            continue
        try:
            tree = Tree(b["n"], tuple(b["edges"]))
        except NotATree as exc:
            fail(MalformedRow(f"not a tree ({exc.reason}): {exc}", sid, b["line"]) if on_error else exc)
            continue
        if b["order"] is None:
            arr = LinearArrangement.identity(b["n"])
        elif sorted(b["order"]) != list(range(1, b["n"] + 1)):
            fail(MalformedRow(f"order is not a permutation of 1..{b['n']}", sid, b["line"]))
            continue
        else:
            arr = LinearArrangement.from_order(b["order"])
        yield EdgeListEntry(sid, tree, arr, b["words"])


def parse_edge_list(text: str) -> tuple[Tree, LinearArrangement]:
    """Single tree in edge-list format; the arrangement defaults to the identity."""
    entries = list(parse_edge_lists(text))
    if len(entries) != 1:
        if not entries:
            raise MalformedRow("no 'n=<int>' header found")
        raise MalformedRow(f"expected one tree, found {len(entries)}")
    return entries[0].tree, entries[0].arrangement


def format_edge_list(tree: Tree, arr: LinearArrangement | None = None, sentence_id: str | None = None,
                     words: Iterable[str] = ()) -> str:
    lines = []
    if sentence_id:
        lines.append(f"id: {sentence_id}")
    lines.append(f"n={tree.n}")
    words = tuple(words)
    if words:
        lines.append("words: " + " ".join(words))
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    if arr is not None:
        lines.append("order: " + " ".join(map(str, arr.order)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- CSV

CSV_COLUMNS = (
    "sentence_id", "n", "mean_k2", "C", "D", "C_max", "D_min", "D_max",
    "E0_C", "eps0", "E1_C", "eps1", "E_C_given_D", "eps_cond",
    "pL_C", "pR_C", "pL_dev", "pR_dev", "R", "method", "seed", "E_C_given_D_se",
)
_INT_COLUMNS = {"n", "C", "D", "C_max", "D_min", "D_max"}
_STR_COLUMNS = {"sentence_id", "method"}

CURVE_COLUMNS = ("D", "R", "mean_C", "mean_E1C")


def format_value(x) -> str:
    """Lossless text for a cell: integers as is, other numbers via float repr."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return repr(float(x))
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if x.is_integer() and abs(x) < 2**53:
            return str(int(x))
        return repr(x)
    return str(x)


def write_metadata(sink: IO[str], metadata: dict | None):
    for key, val in (metadata or {}).items():
        sink.write(f"# {key}: {val}\n")


def write_csv(records: Iterable, sink: IO[str], metadata: dict | None = None) -> int:
    """One row per :class:`~depcross.analysis.SentenceAnalysis`; returns the row count."""
    write_metadata(sink, metadata)
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    count = 0
    for rec in records:
        row = rec.as_row() if hasattr(rec, "as_row") else rec
        w.writerow([format_value(row.get(c)) for c in CSV_COLUMNS])
        count += 1
    return count


def write_curve_csv(rows: Iterable, sink: IO[str], metadata: dict | None = None) -> int:
    write_metadata(sink, metadata)
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(CURVE_COLUMNS)
    count = 0
    for r in rows:
        w.writerow([format_value(getattr(r, c)) for c in CURVE_COLUMNS])
        count += 1
    return count


def _parse_cell(col: str, text: str):
    if text == "":
        return None
    if col in _STR_COLUMNS:
        return text
    if col in _INT_COLUMNS or col == "seed":
        return int(text)
    val = float(text)
    return val


def read_csv(source) -> list[dict]:
    """Rows written by :func:`write_csv`, values typed; ``#`` lines are skipped."""
    lines = [ln for ln in _text_lines(source) if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return [{c: _parse_cell(c, row[c]) for c in reader.fieldnames} for row in reader]
