"""Instance and solution file formats.

Four textual formats are supported:

* ``.dat`` -- the tuple-set data format::

      k = 26;
      b = 6;
      AtomicConstraints = {<1,3>, <2,3>};
      SoftAtomicConstraints = {};
      DisjunctiveConstraints = {<8,15,8,16>};
      DirectSuccessors = {1,2,8,7,};

  Whitespace and newlines are insignificant, empty sets and a trailing
  comma before ``}`` are accepted, and exactly these six parameters must
  each appear once. Anything else is a hard error.

* ``.dzn`` -- the same data as MiniZinc-style assignments (emit only).
  Non-empty constraint tables use 2-d array literals, empty ones use
  ``array2d``/``array1d`` with explicit index sets so that k = 0 and empty
  sets stay well-formed.

* ``.json`` -- the canonical machine format; schema mirrors the instance
  fields verbatim plus ``format``/``version`` tags.

* solution files -- one permutation per file, declared either as the tour
  (``tour 5 3 4 2 1``: job per position) or as positions (``positions ...``:
  position per job), with optional ``instance`` id and ``claimed`` cost
  lines; ``#`` starts a comment line.

CSV report emitters for the benchmark harness live here as well.
"""

from __future__ import annotations

import csv
import io as _io
import json
import re
import warnings
from dataclasses import dataclass

from .costs import CostBreakdown
from .errors import ParseError, SchemaError
from .model import Instance

DAT_PARAMS = (
    "k",
    "b",
    "AtomicConstraints",
    "SoftAtomicConstraints",
    "DisjunctiveConstraints",
    "DirectSuccessors",
)

REPORT_COLUMNS = (
    "instance",
    "k",
    "b",
    "state",
    "S",
    "M",
    "L",
    "N",
    "objective",
    "runtime_ms",
    "nodes",
    "sum_of_constraints",
    "avg_constrainedness",
    "max_constrainedness",
    "flags",
)

METRICS_COLUMNS = (
    "instance",
    "k",
    "b",
    "n",
    "atomic",
    "soft_atomic",
    "disjunctive",
    "direct_successors",
    "sum_of_constraints",
    "avg_constrainedness",
    "max_constrainedness",
)


# ---------------------------------------------------------------------------
# .DAT


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?\d+|[={}<>,;]|\S")


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for m in _TOKEN.finditer(line):
            toks.append(_Tok(m.group(), lineno, m.start() + 1))
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, expect: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            raise ParseError(
                f"unexpected end of input (expected {expect or 'more input'})",
                last.line if last else 1,
                last.col if last else 1,
            )
        if expect is not None and tok.text != expect:
            raise ParseError(f"expected '{expect}', found '{tok.text}'", tok.line, tok.col)
        self.i += 1
        return tok

    def next_int(self) -> tuple[int, _Tok]:
        tok = self.next()
        try:
            return int(tok.text), tok
        except ValueError:
            raise ParseError(f"expected an integer, found '{tok.text}'", tok.line, tok.col)


def _parse_int_set(cur: _Cursor) -> list[tuple[int, _Tok]]:
    cur.next("{")
    items: list[tuple[int, _Tok]] = []
    while True:
        tok = cur.peek()
        if tok is None or tok.text == "}":
            cur.next("}")
            return items
        items.append(cur.next_int())
        tok = cur.peek()
        if tok is not None and tok.text == ",":
            cur.next()
        elif tok is not None and tok.text != "}":
            raise ParseError(f"expected ',' or '}}', found '{tok.text}'", tok.line, tok.col)


def _parse_tuple_set(cur: _Cursor, arity: int) -> list[tuple[tuple[int, ...], _Tok]]:
    cur.next("{")
    items: list[tuple[tuple[int, ...], _Tok]] = []
    while True:
        tok = cur.peek()
        if tok is None or tok.text == "}":
            cur.next("}")
            return items
        start = cur.next("<")
        values = []
        for pos in range(arity):
            if pos:
                cur.next(",")
            values.append(cur.next_int()[0])
        cur.next(">")
        items.append((tuple(values), start))
        tok = cur.peek()
        if tok is not None and tok.text == ",":
            cur.next()
        elif tok is not None and tok.text != "}":
            raise ParseError(f"expected ',' or '}}', found '{tok.text}'", tok.line, tok.col)


def _dedupe(name: str, items: list):
    seen = set()
    out = []
    dropped = 0
    for value, tok in items:
        if value in seen:
            dropped += 1
        else:
            seen.add(value)
            out.append(value)
    if dropped:
        warnings.warn(f"{name}: {dropped} duplicate entr{'y' if dropped == 1 else 'ies'} dropped")
    return out


def parse_dat(text: str) -> Instance:
    """Parse the tuple-set data format into an Instance.

    Duplicate entries inside one set are dropped with a warning; all other
    invariant breaches (ids out of range, b > k/2, a pair both hard and
    soft, ...) are errors.
    """
    cur = _Cursor(_tokenize(text))
    seen: dict[str, object] = {}
    first_tok: dict[str, _Tok] = {}
    while cur.peek() is not None:
        name_tok = cur.next()
        name = name_tok.text
        if name not in DAT_PARAMS:
            raise ParseError(f"unknown parameter '{name}'", name_tok.line, name_tok.col)
        if name in seen:
            raise ParseError(f"parameter '{name}' assigned twice", name_tok.line, name_tok.col)
        first_tok[name] = name_tok
        cur.next("=")
        if name in ("k", "b"):
            value, vtok = cur.next_int()
            if value < 0:
                raise ParseError(f"{name} must be >= 0, found {value}", vtok.line, vtok.col)
            seen[name] = value
        elif name == "DirectSuccessors":
            seen[name] = _parse_int_set(cur)
        elif name == "DisjunctiveConstraints":
            seen[name] = _parse_tuple_set(cur, 4)
        else:
            seen[name] = _parse_tuple_set(cur, 2)
        cur.next(";")
    missing = [p for p in DAT_PARAMS if p not in seen]
    if missing:
        raise ParseError(f"missing parameter(s): {', '.join(missing)}")

    k = seen["k"]
    b = seen["b"]
    if 2 * b > k:
        tok = first_tok["b"]
        raise ParseError(f"b = {b} exceeds k/2 (k = {k})", tok.line, tok.col)

    def check_range(items, name, arity):
        for value, tok in items:
            entries = value if arity > 1 else (value,)
            for j in entries:
                if not 1 <= j <= k:
                    raise ParseError(
                        f"{name}: job {j} is outside 1..{k}", tok.line, tok.col
                    )

    check_range(seen["AtomicConstraints"], "AtomicConstraints", 2)
    check_range(seen["SoftAtomicConstraints"], "SoftAtomicConstraints", 2)
    check_range(seen["DisjunctiveConstraints"], "DisjunctiveConstraints", 4)
    for value, tok in seen["DirectSuccessors"]:
        if not 1 <= value <= 2 * b:
            raise ParseError(
                f"DirectSuccessors: {value} is not a two-sided cable end (b = {b})",
                tok.line,
                tok.col,
            )
    for name in ("AtomicConstraints", "SoftAtomicConstraints"):
        for value, tok in seen[name]:
            if value[0] == value[1]:
                raise ParseError(
                    f"{name}: <{value[0]},{value[1]}> relates a job to itself",
                    tok.line,
                    tok.col,
                )
    for value, tok in seen["DisjunctiveConstraints"]:
        if value[0] == value[1] or value[2] == value[3]:
            raise ParseError(
                f"DisjunctiveConstraints: <{','.join(map(str, value))}> has a trivial disjunct",
                tok.line,
                tok.col,
            )

    atomic = _dedupe("AtomicConstraints", seen["AtomicConstraints"])
    soft = _dedupe("SoftAtomicConstraints", seen["SoftAtomicConstraints"])
    disj = _dedupe("DisjunctiveConstraints", seen["DisjunctiveConstraints"])
    ds = _dedupe("DirectSuccessors", seen["DirectSuccessors"])

    both = set(atomic) & set(soft)
    if both:
        tok = first_tok["SoftAtomicConstraints"]
        raise ParseError(
            f"constraints both hard and soft: {sorted(both)}", tok.line, tok.col
        )
    return Instance(
        k=k,
        b=b,
        atomic=tuple(atomic),
        soft_atomic=tuple(soft),
        disjunctive=tuple(disj),
        direct_successors=tuple(ds),
    )


def emit_dat(inst: Instance) -> str:
    """Serialize to the tuple-set format, constraint sets sorted ascending."""
    c = inst.canonical()
    lines = [f"k = {c.k};", f"b = {c.b};"]
    lines.append(
        "AtomicConstraints = {%s};"
        % ", ".join(f"<{a.before},{a.after}>" for a in c.atomic)
    )
    lines.append(
        "SoftAtomicConstraints = {%s};"
        % ", ".join(f"<{a.before},{a.after}>" for a in c.soft_atomic)
    )
    lines.append(
        "DisjunctiveConstraints = {%s};"
        % ", ".join(f"<{d.c1before},{d.c1after},{d.c2before},{d.c2after}>" for d in c.disjunctive)
    )
    lines.append(
        "DirectSuccessors = {%s};" % ",".join(str(i) for i in c.direct_successors)
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# .DZN


def _dzn_table(name: str, rows: list[tuple[int, ...]], width: int) -> str:
    if not rows:
        return f"{name} = array2d(1..0, 1..{width}, []);"
    body = " | ".join(", ".join(str(v) for v in row) for row in rows)
    return f"{name} = [| {body} |];"


def emit_dzn(inst: Instance) -> str:
    """MiniZinc-style data text with the six parameter assignments."""
    c = inst.canonical()
    lines = [f"k = {c.k};", f"b = {c.b};"]
    lines.append(_dzn_table("AtomicConstraints", [tuple(a) for a in c.atomic], 2))
    lines.append(_dzn_table("SoftAtomicConstraints", [tuple(a) for a in c.soft_atomic], 2))
    lines.append(_dzn_table("DisjunctiveConstraints", [tuple(d) for d in c.disjunctive], 4))
    if c.direct_successors:
        lines.append(
            "DirectSuccessors = [%s];" % ", ".join(str(i) for i in c.direct_successors)
        )
    else:
        lines.append("DirectSuccessors = array1d(1..0, []);")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON

JSON_FORMAT = "ctw-instance"
JSON_VERSION = 1


def emit_json(inst: Instance) -> str:
    """Canonical machine format; field order and constraint order preserved."""
    doc = {
        "format": JSON_FORMAT,
        "version": JSON_VERSION,
        "k": inst.k,
        "b": inst.b,
        "atomic": [list(a) for a in inst.atomic],
        "soft_atomic": [list(a) for a in inst.soft_atomic],
        "disjunctive": [list(d) for d in inst.disjunctive],
        "direct_successors": list(inst.direct_successors),
    }
    return json.dumps(doc, indent=2) + "\n"


def _expect_int(value, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"expected an integer, found {value!r}", path)
    return value


def _expect_rows(value, path: str, width: int) -> list[tuple[int, ...]]:
    if not isinstance(value, list):
        raise SchemaError(f"expected a list, found {type(value).__name__}", path)
    rows = []
    for idx, row in enumerate(value):
        rpath = f"{path}[{idx}]"
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(f"expected a list of {width} integers", rpath)
        rows.append(tuple(_expect_int(v, f"{rpath}[{i}]") for i, v in enumerate(row)))
    return rows


def parse_json(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", "$")
    for field_name in ("format", "version", "k", "b", "atomic", "soft_atomic",
                       "disjunctive", "direct_successors"):
        if field_name not in doc:
            raise SchemaError("missing required field", f"$.{field_name}")
    if doc["format"] != JSON_FORMAT:
        raise SchemaError(f"expected {JSON_FORMAT!r}, found {doc['format']!r}", "$.format")
    if doc["version"] != JSON_VERSION:
        raise SchemaError(f"unsupported version {doc['version']!r}", "$.version")
    k = _expect_int(doc["k"], "$.k")
    b = _expect_int(doc["b"], "$.b")
    atomic = _expect_rows(doc["atomic"], "$.atomic", 2)
    soft = _expect_rows(doc["soft_atomic"], "$.soft_atomic", 2)
    disj = _expect_rows(doc["disjunctive"], "$.disjunctive", 4)
    if not isinstance(doc["direct_successors"], list):
        raise SchemaError("expected a list", "$.direct_successors")
    ds = tuple(
        _expect_int(v, f"$.direct_successors[{i}]")
        for i, v in enumerate(doc["direct_successors"])
    )
    return Instance(k=k, b=b, atomic=tuple(atomic), soft_atomic=tuple(soft),
                    disjunctive=tuple(disj), direct_successors=ds)


def load_instance(path) -> Instance:
    """Parse an instance file, picking the format from the extension."""
    from pathlib import Path

    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix.lower() == ".json":
        return parse_json(text)
    if p.suffix.lower() == ".dat":
        return parse_dat(text)
    raise ParseError(f"cannot infer format from extension {p.suffix!r} (use .dat or .json)")


# ---------------------------------------------------------------------------
# Solution files


@dataclass(frozen=True)
class SolutionFile:
    """A permutation claimed by some solver, before any checking.

    ``kind`` is ``"tour"`` (values are jobs by position) or ``"positions"``
    (values are positions by job). Bijectivity is checked downstream when
    the file is audited against an instance.
    """

    instance_id: str | None
    kind: str
    values: tuple[int, ...]
    claimed: CostBreakdown | None = None

    def pfc(self) -> tuple[int, ...]:
        """Position-per-job view; raises ValueError when not invertible."""
        if self.kind == "positions":
            return self.values
        k = len(self.values)
        pos = [0] * k
        for x, job in enumerate(self.values, start=1):
            if not 1 <= job <= k or pos[job - 1] != 0:
                raise ValueError(f"tour is not a bijection at position {x}")
            pos[job - 1] = x
        return tuple(pos)


_CLAIMED = re.compile(
    r"^S=(\d+)\s+M=(\d+)\s+L=(\d+)\s+N=(\d+)\s+objective=(\d+)$"
)


def parse_solution(text: str) -> SolutionFile:
    instance_id = None
    kind = None
    values: tuple[int, ...] | None = None
    claimed = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "instance":
            instance_id = rest or None
        elif head in ("tour", "positions"):
            if kind is not None:
                raise ParseError("more than one permutation line", lineno, 1)
            kind = head
            try:
                values = tuple(int(v) for v in rest.split())
            except ValueError:
                raise ParseError(f"non-integer entry in {head} line", lineno, 1)
        elif head == "claimed":
            m = _CLAIMED.match(rest)
            if not m:
                raise ParseError(
                    "claimed line must read 'claimed S=<int> M=<int> L=<int> N=<int> objective=<int>'",
                    lineno,
                    1,
                )
            s, mm, l, n, obj = (int(g) for g in m.groups())
            claimed = CostBreakdown(s, mm, l, n, obj)
        else:
            raise ParseError(f"unknown line '{head}'", lineno, 1)
    if kind is None or values is None:
        raise ParseError("no 'tour' or 'positions' line found")
    return SolutionFile(instance_id=instance_id, kind=kind, values=values, claimed=claimed)


# ---------------------------------------------------------------------------
# CSV reports


def emit_report_csv(rows) -> str:
    """Benchmark report; one line per instance, ordered as given.

    ``rows`` is an iterable of ``bench.BenchRow``. Constrainedness is
    reported to one decimal; cost columns stay empty when no solution
    exists for the row.
    """
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        bd = row.breakdown
        writer.writerow(
            [
                row.instance_id,
                row.metrics.k,
                row.metrics.b,
                row.state.value,
                bd.S if bd else "",
                bd.M if bd else "",
                bd.L if bd else "",
                bd.N if bd else "",
                bd.objective if bd else "",
                row.runtime_ms,
                row.nodes,
                row.metrics.sum_of_constraints,
                f"{row.metrics.avg_constrainedness:.1f}",
                f"{row.metrics.max_constrainedness:.1f}",
                ";".join(row.flags),
            ]
        )
    return buf.getvalue()


def emit_metrics_csv(items) -> str:
    """Instance metrics only; ``items`` yields (instance_id, InstanceMetrics)."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(METRICS_COLUMNS)
    for instance_id, m in items:
        writer.writerow(
            [
                instance_id,
                m.k,
                m.b,
                m.n,
                m.atomic_count,
                m.soft_count,
                m.disjunctive_count,
                m.ds_count,
                m.sum_of_constraints,
                f"{m.avg_constrainedness:.1f}",
                f"{m.max_constrainedness:.1f}",
            ]
        )
    return buf.getvalue()
