"""Graph and colour-list file formats.

Graph files are whitespace-separated text.  Blank lines and lines starting
with ``c`` or ``#`` are ignored.  Two headers are accepted:

    p edge <n> <m> [base]     followed by m lines  e <u> <v>
    <n> <m> [base]            followed by m lines  <u> <v>

``base`` is the index of the first vertex, 0 or 1.  It defaults to 1 for the
``p edge`` form (as in DIMACS) and to 0 for the plain form.

Lists files are JSON objects mapping a vertex id (same base as the graph
file) to a non-empty array of colours from {1,2,3,4}.  Vertices not
mentioned get the full palette.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, InvalidInstanceError
from .instance import ColorLists, Graph, Instance


@dataclass(frozen=True)
class GraphFile:
    n: int
    edges: tuple[tuple[int, int], ...]
    base: int = 0
    dimacs: bool = False

    def to_text(self) -> str:
        b = self.base
        if self.dimacs:
            head = f"p edge {self.n} {len(self.edges)}" + ("" if b == 1 else f" {b}")
            body = [f"e {u + b} {v + b}" for u, v in self.edges]
        else:
            head = f"{self.n} {len(self.edges)}" + ("" if b == 0 else f" {b}")
            body = [f"{u + b} {v + b}" for u, v in self.edges]
        return "\n".join([head, *body]) + "\n"


def _int(tok: str, what: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: expected integer {what}, got {tok!r}") from None


def parse_graph(text: str) -> GraphFile:
    lines = []
    for k, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#") or s.split()[0] == "c":
            continue
        lines.append((k, s.split()))
    if not lines:
        raise InputError("empty graph file")
    k, head = lines[0]
    dimacs = head[0] == "p"
    if dimacs:
        if len(head) not in (4, 5) or head[1] not in ("edge", "col"):
            raise InputError(f"line {k}: expected 'p edge <n> <m> [base]'")
        nums = head[2:]
        base = 1
    else:
        if len(head) not in (2, 3):
            raise InputError(f"line {k}: expected '<n> <m> [base]'")
        nums = head
        base = 0
    n = _int(nums[0], "vertex count", k)
    m = _int(nums[1], "edge count", k)
    if len(nums) == 3:
        base = _int(nums[2], "index base", k)
    if base not in (0, 1):
        raise InputError(f"line {k}: index base must be 0 or 1")
    if n < 0 or m < 0:
        raise InputError(f"line {k}: negative counts")
    edges = []
    for k, toks in lines[1:]:
        if dimacs:
            if toks[0] != "e" or len(toks) != 3:
                raise InputError(f"line {k}: expected 'e <u> <v>'")
            toks = toks[1:]
        elif len(toks) != 2:
            raise InputError(f"line {k}: expected '<u> <v>'")
        u = _int(toks[0], "vertex", k) - base
        v = _int(toks[1], "vertex", k) - base
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {k}: vertex out of range")
        edges.append((u, v))
    if len(edges) != m:
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    return GraphFile(n, tuple(edges), base, dimacs)


def parse_lists(text: str, n: int, base: int = 0) -> ColorLists:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"lists file is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise InputError("lists file must be a JSON object")
    mapping = {}
    for key, cols in data.items():
        try:
            v = int(key) - base
        except ValueError:
            raise InputError(f"bad vertex id {key!r} in lists file") from None
        if not 0 <= v < n:
            raise InputError(f"lists file names unknown vertex {key}")
        if not isinstance(cols, list) or not cols:
            raise InputError(f"list for vertex {key} must be a non-empty array")
        if any(not isinstance(c, int) or isinstance(c, bool) or c not in (1, 2, 3, 4) for c in cols):
            raise InputError(f"list for vertex {key} has colours outside {{1,2,3,4}}")
        mapping[v] = cols
    return ColorLists.from_mapping(n, mapping)


def build_instance(gf: GraphFile, lists: ColorLists | None = None) -> Instance:
    try:
        g = Graph.from_edges(gf.n, gf.edges)
    except InputError as e:
        raise InvalidInstanceError(str(e)) from None
    return Instance(g, lists if lists is not None else ColorLists.full(gf.n))


def load_instance(graph_path: str | Path, lists_path: str | Path | None = None) -> tuple[Instance, GraphFile, str]:
    """Read files and return (instance, parsed graph file, sha256 digest of the inputs)."""
    h = hashlib.sha256()
    try:
        gbytes = Path(graph_path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read graph file: {e}") from None
    h.update(gbytes)
    gf = parse_graph(gbytes.decode("utf-8", errors="replace"))
    lists = None
    if lists_path is not None:
        try:
            lbytes = Path(lists_path).read_bytes()
        except OSError as e:
            raise InputError(f"cannot read lists file: {e}") from None
        h.update(b"\0")
        h.update(lbytes)
        lists = parse_lists(lbytes.decode("utf-8", errors="replace"), gf.n, gf.base)
    return build_instance(gf, lists), gf, h.hexdigest()


def lists_to_json(lists: ColorLists, base: int = 0) -> str:
    return json.dumps({str(v + base): sorted(lists[v]) for v in range(len(lists.masks))}, indent=1)
