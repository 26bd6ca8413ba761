"""Edge-list files.

One problem line ``p edge <n> <m>`` followed by ``m`` lines ``e <u> <v>`` with 0-based vertex
ids. Lines starting with ``c`` are comments and blank lines are ignored. The writer emits edges
with ``u < v`` in lexicographic order, so writing a parsed file back reproduces it byte for byte
up to comments.
"""

from pathlib import Path
from typing import Iterable, Optional

from equicolor.errors import GraphFormatError
from equicolor.models.graph import Graph


def _int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", line_number) from None


def parse_edge_list(lines: Iterable[str]) -> Graph:
    n: Optional[int] = None
    declared_m = 0
    edges: list[tuple[int, int]] = []
    for line_number, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        match tokens:
            case ["p", "edge", n_token, m_token]:
                if n is not None:
                    raise GraphFormatError("second problem line", line_number)
                n, declared_m = _int(n_token, line_number), _int(m_token, line_number)
                if n < 0 or declared_m < 0:
                    raise GraphFormatError("negative size in problem line", line_number)
            case ["e", u_token, v_token]:
                if n is None:
                    raise GraphFormatError("edge before the problem line", line_number)
                u, v = _int(u_token, line_number), _int(v_token, line_number)
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"edge {u}-{v} out of range for n={n}", line_number)
                if u == v:
                    raise GraphFormatError(f"self-loop at {u}", line_number)
                edges.append((u, v))
            case _:
                raise GraphFormatError(f"unrecognised line {raw.strip()!r}", line_number)
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != declared_m:
        raise GraphFormatError(f"problem line declares {declared_m} edges, found {len(edges)}")
    if len({(min(u, v), max(u, v)) for u, v in edges}) != len(edges):
        raise GraphFormatError("parallel edges")
    return Graph(n, edges)


def format_edge_list(g: Graph, comment: Optional[str] = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: Path) -> Graph:
    data = path.read_bytes()
    try:
        text = data.decode()
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"not UTF-8 text: {e.reason}", data.count(b"\n", 0, e.start) + 1) from e
    return parse_edge_list(text.splitlines())


def write_edge_list(g: Graph, path: Path, comment: Optional[str] = None) -> None:
    path.write_text(format_edge_list(g, comment))
