"""Text formats: posets, graphs, PACE-style tree decompositions, certificates, DOT.

Poset files::

    # comment
    p poset <n> <#covers>
    l <id> <label>          (optional)
    c <low> <high>

Graph files use ``p graph <n> <m>`` and ``e <u> <v>`` lines. Element and
vertex ids are 0-based in both. Tree decompositions follow the PACE ``.td``
convention, which is 1-based for bags and vertices: ``s td <#bags>
<width+1> <n>``, ``b <bag> <v...>``, then one ``<i> <j>`` line per tree edge.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import CycleError, ParseError
from .generators import TreeDecomposition
from .graph import Graph
from .poset import Poset, from_cover_relations


def _lines(text: str):
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield num, line.split()


def _ints(tokens, num):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", num) from None


def _header(tok, num, kind):
    if len(tok) != 4 or tok[0] != "p" or tok[1] != kind:
        raise ParseError(f"expected 'p {kind} <n> <count>' header", num)
    n, count = _ints(tok[2:], num)
    if n < 0 or count < 0:
        raise ParseError("negative size in header", num)
    return n, count


def parse_poset(text: str) -> Poset:
    n = count = None
    covers: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    for num, tok in _lines(text):
        if n is None:
            n, count = _header(tok, num, "poset")
            continue
        kind = tok[0]
        if kind == "c":
            if len(tok) != 3:
                raise ParseError("cover line needs two elements", num)
            lo, hi = _ints(tok[1:], num)
            if not (0 <= lo < n and 0 <= hi < n):
                raise ParseError(f"element out of range 0..{n - 1}", num)
            if (lo, hi) in seen:
                raise ParseError(f"duplicate cover ({lo}, {hi})", num)
            seen.add((lo, hi))
            covers.append((lo, hi))
        elif kind == "l":
            if len(tok) < 3:
                raise ParseError("label line needs an id and a label", num)
            (i,) = _ints(tok[1:2], num)
            if not 0 <= i < n:
                raise ParseError(f"label id out of range 0..{n - 1}", num)
            labels[i] = " ".join(tok[2:])
        elif kind == "p":
            raise ParseError("duplicate header", num)
        else:
            raise ParseError(f"unknown line type {kind!r}", num)
    if n is None:
        raise ParseError("missing 'p poset' header")
    if len(covers) != count:
        raise ParseError(f"header announces {count} covers, found {len(covers)}")
    label_list = None
    if labels:
        label_list = [labels.get(i, str(i)) for i in range(n)]
    try:
        return from_cover_relations(n, covers, label_list)
    except CycleError as exc:
        raise ParseError(str(exc)) from None


def format_poset(P: Poset, comment: str | None = None) -> str:
    covers = P.cover_relations()
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append(f"p poset {P.n} {len(covers)}")
    if P.labels is not None:
        out += [f"l {i} {lab}" for i, lab in enumerate(P.labels)]
    out += [f"c {x} {y}" for x, y in covers]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    n = count = None
    edges = []
    for num, tok in _lines(text):
        if n is None:
            n, count = _header(tok, num, "graph")
            continue
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError("expected 'e <u> <v>'", num)
        u, v = _ints(tok[1:], num)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad edge ({u}, {v})", num)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'p graph' header")
    if len(edges) != count:
        raise ParseError(f"header announces {count} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(G: Graph) -> str:
    return "\n".join([f"p graph {G.n} {G.m}"] + [f"e {u} {v}" for u, v in G.edges]) + "\n"


def format_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    out += [f"{i + 1} {j + 1}" for i, j in td.edges]
    return "\n".join(out) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Returns ``(decomposition, n)`` with everything converted to 0-based ids."""
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if header is not None or len(tok) != 5 or tok[1] != "td":
                raise ParseError("bad or repeated 's td' line", num)
            header = _ints(tok[2:], num)
        elif header is None:
            raise ParseError("content before 's td' line", num)
        elif tok[0] == "b":
            ids = _ints(tok[1:], num)
            if not ids or not 1 <= ids[0] <= header[0]:
                raise ParseError("bag id out of range", num)
            if ids[0] in bags:
                raise ParseError(f"bag {ids[0]} defined twice", num)
            if any(not 1 <= v <= header[2] for v in ids[1:]):
                raise ParseError("vertex out of range", num)
            bags[ids[0]] = frozenset(v - 1 for v in ids[1:])
        else:
            ids = _ints(tok, num)
            if len(ids) != 2 or not all(1 <= i <= header[0] for i in ids):
                raise ParseError("bad tree edge", num)
            edges.append((ids[0] - 1, ids[1] - 1))
    if header is None:
        raise ParseError("missing 's td' line")
    nbags, maxbag, n = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise ParseError(f"expected bags 1..{nbags}")
    td = TreeDecomposition([bags[i] for i in range(1, nbags + 1)], edges)
    if td.width + 1 != maxbag:
        raise ParseError(f"declared max bag size {maxbag}, actual {td.width + 1}")
    return td, n


def format_certificate(partition: Sequence[Sequence[tuple[int, int]]],
                       extensions: Iterable[Sequence[int]] = ()) -> str:
    classes = [c for c in partition if c]
    out = [f"d {max(len(classes), 1)}"]
    for k, cls in enumerate(classes):
        out += [f"x {k} {x} {y}" for x, y in cls]
    for L in extensions:
        out.append("L " + " ".join(map(str, L)))
    return "\n".join(out) + "\n"


def parse_certificate(text: str):
    """Returns ``(dim, partition, extensions)``."""
    d = None
    classes: dict[int, list[tuple[int, int]]] = {}
    exts = []
    for num, tok in _lines(text):
        if tok[0] == "d":
            (d,) = _ints(tok[1:], num)
        elif tok[0] == "x":
            if len(tok) != 4:
                raise ParseError("expected 'x <class> <x> <y>'", num)
            k, x, y = _ints(tok[1:], num)
            classes.setdefault(k, []).append((x, y))
        elif tok[0] == "L":
            exts.append(_ints(tok[1:], num))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", num)
    if d is None:
        raise ParseError("missing 'd' line")
    return d, [classes[k] for k in sorted(classes)], exts


def format_dot(P: Poset, name: str = "P") -> str:
    """Diagram as a DOT digraph: edges point low to high, one rank per level."""
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in range(P.n):
        out.append(f'  {x} [label="{P.label(x)}"];')
    by_level: dict[int, list[int]] = {}
    for x, lvl in enumerate(P.levels):
        by_level.setdefault(lvl, []).append(x)
    for lvl in sorted(by_level):
        out.append("  { rank=same; " + " ".join(f"{x};" for x in by_level[lvl]) + " }")
    out += [f"  {x} -> {y};" for x, y in P.cover_relations()]
    out.append("}")
    return "\n".join(out) + "\n"
