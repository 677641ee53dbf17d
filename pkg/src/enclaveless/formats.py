"""graph6 and edge-list serialization plus sweep report emission."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import MAX_ORDER, Graph, GraphError, build_graph
from .invariants import InvariantReport

HEADER = ">>graph6<<"
RECORD_FIELDS = (
    "graph6", "n", "gamma", "Gamma", "psi", "Psi", "alpha", "IR",
    "psg_plus", "psg_minus", "gg", "ggp", "checks",
)


class Graph6Error(GraphError):
    pass


class Graph6SizeError(Graph6Error):
    """The encoded order is valid graph6 but wider than supported."""


class EdgeListError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# -- graph6 -----------------------------------------------------------------

def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g``; bits run over the upper triangle column by column."""
    if g.n > MAX_ORDER:
        raise Graph6SizeError(f"order {g.n} exceeds {MAX_ORDER}")
    out = [HEADER] if header else []
    out.append(_encode_order(g.n))
    chunk, filled = 0, 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            chunk = chunk << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(63 + chunk))
                chunk, filled = 0, 0
    if filled:
        out.append(chr(63 + (chunk << (6 - filled))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} at offset {pos} is outside the printable graph6 range")
    data = [ord(ch) - 63 for ch in s]
    if data[0] != 63:
        n, body = data[0], data[1:]
    elif len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise Graph6Error("truncated order field")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        if len(data) < 8:
            raise Graph6Error("truncated order field")
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        body = data[8:]
    if n > MAX_ORDER:
        raise Graph6SizeError(f"order {n} exceeds supported width {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise Graph6Error(f"truncated body: {len(body)} of {need} characters")
    if len(body) > need:
        raise Graph6Error(f"trailing data: {len(body) - need} extra characters")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    if n == 0:
        raise Graph6Error("graphs need at least one vertex")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Parse a newline-separated graph6 stream, skipping blank lines."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield parse_graph6(line)
        except Graph6SizeError:
            raise
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from None


# -- edge lists -------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by one ``u v`` pair per line.

    ``#`` starts a comment; blank lines are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise EdgeListError(lineno, f"expected 'n <count>', got {raw!r}")
            n = int(parts[1])
            if not 1 <= n <= MAX_ORDER:
                raise EdgeListError(lineno, f"order {n} outside 1..{MAX_ORDER}")
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise EdgeListError(lineno, f"expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise EdgeListError(lineno, f"edge ({u}, {v}) inconsistent with n = {n}")
        if u == v:
            raise EdgeListError(lineno, f"loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        raise EdgeListError(0, "missing 'n <count>' header")
    return build_graph(n, edges)


def write_edge_list(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges()])


# -- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SweepRecord:
    graph6: str
    report: InvariantReport
    game_values: dict[str, int | None]
    checks: list[CheckResult] = field(default_factory=list)
    multiplicity: int = 1

    @property
    def violations(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        r = self.report
        return {
            "graph6": self.graph6,
            "n": r.n,
            "gamma": r.gamma,
            "Gamma": r.Gamma,
            "psi": r.psi,
            "Psi": r.Psi,
            "alpha": r.alpha,
            "IR": r.IR,
            "psg_plus": self.game_values.get("psg_plus"),
            "psg_minus": self.game_values.get("psg_minus"),
            "gg": self.game_values.get("gg"),
            "ggp": self.game_values.get("ggp"),
            "checks": [[c.name, c.passed, c.detail] for c in self.checks],
        }


def summarize(records: Sequence[SweepRecord], skipped: int = 0) -> dict:
    failed = [r for r in records if r.violations]
    return {
        "graphs_checked": len(records),
        "labeled_graphs_covered": sum(r.multiplicity for r in records),
        "checks_run": sum(len(r.checks) for r in records),
        "violations": sum(len(r.violations) for r in records),
        "graphs_with_violations": len(failed),
        "skipped": skipped,
    }


def emit_report(records: Sequence[SweepRecord], fmt: str = "table", skipped: int = 0) -> str:
    """Render records as a human table or as JSON lines ending in a summary."""
    summary = summarize(records, skipped)
    if fmt == "records":
        lines = [json.dumps(r.as_dict()) for r in records]
        lines.append(json.dumps({"summary": summary}))
        return "\n".join(lines) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    cols = RECORD_FIELDS[:-1]
    rows = []
    for r in records:
        d = r.as_dict()
        bad = ",".join(c.name for c in r.violations) or "ok"
        rows.append([str("-" if d[c] is None else d[c]) for c in cols] + [bad])
    header = list(cols) + ["checks"]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    out += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows]
    out.append("")
    out += [f"{k}: {v}" for k, v in summary.items()]
    for r in records:
        for c in r.violations:
            out.append(f"VIOLATION {c.name} on {r.graph6}: {c.detail}")
    return "\n".join(out) + "\n"
