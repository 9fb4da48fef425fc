"""Directed 2-complexes, cell references and Tietze-style surgery.

Edges and cells are addressed by dense integer indices; the user-facing
string ids are kept alongside for printing. A word (1-path) is a tuple of
edge indices. Negative cells are never stored: a :class:`CellRef` carries a
sign bit instead.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

Word = tuple  # tuple[int, ...] of edge indices


class ComplexError(ValueError):
    """Raised when a complex or a word violates the structural invariants."""


class CellRef(NamedTuple):
    cell: int
    sign: int = 1

    def inv(self) -> "CellRef":
        return CellRef(self.cell, -self.sign)


class Edge(NamedTuple):
    name: str
    src: int
    dst: int


class Cell(NamedTuple):
    name: str
    top: Word
    bottom: Word


class DirectedComplex:
    """A directed graph together with positive 2-cells.

    Instances are treated as immutable. ``_memo`` holds derived data
    (rewriting view, forests) computed lazily by other modules.
    """

    def __init__(self, vertices: Sequence[str], edges: Sequence[Edge], cells: Sequence[Cell]):
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(*e) for e in edges)
        self.cells = tuple(Cell(c[0], tuple(c[1]), tuple(c[2])) for c in cells)
        self.vertex_index = _index([v for v in self.vertices], "vertex")
        self.edge_index = _index([e.name for e in self.edges], "edge")
        self.cell_index = _index([c.name for c in self.cells], "cell")
        # ShortLex compares edges by their string ids.
        order = sorted(range(len(self.edges)), key=lambda i: self.edges[i].name)
        self.edge_rank = [0] * len(self.edges)
        for r, i in enumerate(order):
            self.edge_rank[i] = r
        self._memo: dict = {}
        self.validate()

    # -- structure ---------------------------------------------------------
    def validate(self) -> None:
        nv = len(self.vertices)
        for e in self.edges:
            if not (0 <= e.src < nv and 0 <= e.dst < nv):
                raise ComplexError(f"edge {e.name} has an unknown endpoint")
        for c in self.cells:
            if not c.top or not c.bottom:
                raise ComplexError(f"cell {c.name} has an empty side")
            for side in (c.top, c.bottom):
                for i in side:
                    if not 0 <= i < len(self.edges):
                        raise ComplexError(f"cell {c.name} uses an unknown edge")
                if not self.is_path(side):
                    raise ComplexError(f"cell {c.name}: side {self.fmt(side)} is not a path")
            if self.source(c.top) != self.source(c.bottom) or self.target(c.top) != self.target(c.bottom):
                raise ComplexError(f"endpoint mismatch in cell {c.name}")

    @property
    def one_vertex(self) -> bool:
        return len(self.vertices) == 1

    def is_path(self, w: Word) -> bool:
        return all(self.edges[a].dst == self.edges[b].src for a, b in zip(w, w[1:]))

    def source(self, w: Word, anchor: int | None = None) -> int:
        if w:
            return self.edges[w[0]].src
        return self._anchor(anchor)

    def target(self, w: Word, anchor: int | None = None) -> int:
        if w:
            return self.edges[w[-1]].dst
        return self._anchor(anchor)

    def _anchor(self, anchor):
        if anchor is not None:
            return anchor
        if self.one_vertex:
            return 0
        raise ComplexError("empty word needs an anchor vertex")

    def top(self, f: CellRef) -> Word:
        c = self.cells[f.cell]
        return c.top if f.sign > 0 else c.bottom

    def bottom(self, f: CellRef) -> Word:
        c = self.cells[f.cell]
        return c.bottom if f.sign > 0 else c.top

    def cell_source(self, f: CellRef) -> int:
        return self.source(self.cells[f.cell].top)

    def cell_target(self, f: CellRef) -> int:
        return self.target(self.cells[f.cell].top)

    def signed_cells(self) -> list[CellRef]:
        return [CellRef(i, s) for i in range(len(self.cells)) for s in (1, -1)]

    def shortlex(self, w: Word) -> tuple:
        return (len(w), tuple(self.edge_rank[i] for i in w))

    # -- names -------------------------------------------------------------
    def word(self, text) -> Word:
        """Parse a word given as edge ids.

        Accepts a list of ids, a whitespace separated string, or (when every
        character is an edge id) a packed string like ``"xxy"``. ``"1"`` and
        ``""`` denote the empty word.
        """
        if isinstance(text, (list, tuple)):
            toks = list(text)
        else:
            text = text.strip()
            if text in ("", "1"):
                return ()
            toks = text.split()
            if len(toks) == 1 and toks[0] not in self.edge_index:
                toks = list(toks[0])
        try:
            w = tuple(self.edge_index[t] for t in toks)
        except KeyError as exc:
            raise ComplexError(f"unknown edge {exc.args[0]!r}") from None
        if not self.is_path(w):
            raise ComplexError(f"{' '.join(toks)} is not a path")
        return w

    def fmt(self, w: Word) -> str:
        names = [self.edges[i].name for i in w]
        if not names:
            return "1"
        if all(len(self.edges[i].name) == 1 for i in range(len(self.edges))):
            return "".join(names)
        return " ".join(names)

    def fmt_cell(self, f: CellRef) -> str:
        name = self.cells[f.cell].name
        return name if f.sign > 0 else name + "^-1"

    def cell_ref(self, text: str) -> CellRef:
        text = text.strip()
        sign = 1
        if text.endswith("^-1"):
            text, sign = text[:-3], -1
        if text not in self.cell_index:
            raise ComplexError(f"unknown cell {text!r}")
        return CellRef(self.cell_index[text], sign)

    def __repr__(self):
        return (f"DirectedComplex({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, {len(self.cells)} cells)")

    def same_as(self, other: "DirectedComplex") -> bool:
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.cells == other.cells)


def _index(names, kind):
    out = {}
    for i, n in enumerate(names):
        if n in out:
            raise ComplexError(f"duplicate {kind} id {n!r}")
        out[n] = i
    return out


def from_presentation(letters: Sequence[str], rules: Sequence[tuple]) -> DirectedComplex:
    """One vertex, one loop per letter, one cell per rule ``lhs = rhs``.

    Rules are ``(lhs, rhs)`` or ``(name, lhs, rhs)``; sides are strings of
    letters (packed or space separated) or sequences of letters.
    """
    edges = [Edge(a, 0, 0) for a in letters]
    idx = {a: i for i, a in enumerate(letters)}
    cells = []
    for k, rule in enumerate(rules):
        name, lhs, rhs = rule if len(rule) == 3 else (f"f{k}", *rule)
        sides = []
        for side in (lhs, rhs):
            toks = side.split() if isinstance(side, str) and " " in side else list(side)
            if not toks:
                raise ComplexError(f"rule {name} has an empty side")
            try:
                sides.append(tuple(idx[t] for t in toks))
            except KeyError as exc:
                raise ComplexError(f"rule {name} uses unknown letter {exc.args[0]!r}") from None
        cells.append(Cell(name, sides[0], sides[1]))
    return DirectedComplex(["v"], edges, cells)


def _fresh(existing, base):
    # A fresh id that sorts after every existing one keeps new edges last in
    # the ShortLex order.
    name = (max(existing) if existing else base) + "'"
    while name in existing:
        name += "'"
    return name


def subdivide(K: DirectedComplex, cell: str, edge_name: str | None = None) -> DirectedComplex:
    """Replace cell f by a new edge e and the cells top(f)=e, e=bottom(f)."""
    if cell not in K.cell_index:
        raise ComplexError(f"unknown cell {cell!r}")
    c = K.cells[K.cell_index[cell]]
    names = [e.name for e in K.edges]
    e = edge_name or _fresh(names, "e")
    new = len(K.edges)
    edges = list(K.edges) + [Edge(e, K.source(c.top), K.target(c.top))]
    cells = []
    for d in K.cells:
        if d.name == cell:
            cells.append(Cell(cell + "_a", d.top, (new,)))
            cells.append(Cell(cell + "_b", (new,), d.bottom))
        else:
            cells.append(d)
    return DirectedComplex(K.vertices, edges, cells)


def tietze_add_edge(K: DirectedComplex, u, edge_name: str | None = None,
                    cell_name: str | None = None) -> DirectedComplex:
    """Add an edge e parallel to the non-empty path u and a cell u = e."""
    w = K.word(u) if not isinstance(u, tuple) else u
    if not w:
        raise ComplexError("tietze_add_edge needs a non-empty path")
    names = [e.name for e in K.edges]
    e = edge_name or _fresh(names, "e")
    cname = cell_name or _fresh([c.name for c in K.cells], "t")
    edges = list(K.edges) + [Edge(e, K.source(w), K.target(w))]
    cells = list(K.cells) + [Cell(cname, w, (len(K.edges),))]
    return DirectedComplex(K.vertices, edges, cells)
