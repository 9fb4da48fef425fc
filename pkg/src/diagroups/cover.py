"""Level-truncated universal 2-covers, lifting of diagrams and bounded
rooted-2-tree checks."""

from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass, field

from .complex import Cell, CellRef, ComplexError, DirectedComplex, Edge, Word
from .diagrams import Diagram, Step, apply_step, canonical, reduce


class CoverError(ComplexError):
    pass


@dataclass
class CoverComplex:
    base: DirectedComplex = field(repr=False)
    p: Word
    vertices: list = field(default_factory=list)     # names
    vlevel: list = field(default_factory=list)
    edges: list = field(default_factory=list)        # Edge(name, src, dst)
    elabel: list = field(default_factory=list)       # base edge index
    elevel: list = field(default_factory=list)
    cells: list = field(default_factory=list)        # Cell(name, top, bottom)
    clabel: list = field(default_factory=list)       # signed base cell
    clevel: list = field(default_factory=list)
    root: Word = ()
    level: int = 0
    index: dict = field(default_factory=dict)        # (cover path, base CellRef) -> cover CellRef
    canon: list = field(default_factory=list)        # per edge: seed-independent digest
    _complex: DirectedComplex | None = field(default=None, repr=False)

    @property
    def complex(self) -> DirectedComplex:
        if self._complex is None or len(self._complex.cells) != len(self.cells) \
                or len(self._complex.edges) != len(self.edges):
            self._complex = DirectedComplex(self.vertices, self.edges, self.cells)
        return self._complex

    def counts(self, level: int | None = None):
        lv = self.level if level is None else level
        return (sum(1 for x in self.vlevel if x <= lv),
                sum(1 for x in self.elevel if x <= lv),
                sum(1 for x in self.clevel if x <= lv))

    def label(self, w: Word) -> Word:
        return tuple(self.elabel[e] for e in w)

    def out_edges(self, v: int, max_level: int):
        return [i for i, e in enumerate(self.edges) if e.src == v and self.elevel[i] <= max_level]

    def paths(self, max_level: int, max_len: int):
        """All non-empty paths using edges of level <= max_level."""
        outs = {}
        for i, e in enumerate(self.edges):
            if self.elevel[i] <= max_level:
                outs.setdefault(e.src, []).append(i)
        res = []
        stack = [((i,), self.edges[i].dst) for v in sorted(outs) for i in outs[v]]
        while stack:
            w, v = stack.pop()
            res.append(w)
            if len(w) < max_len:
                for i in outs.get(v, ()):
                    stack.append((w + (i,), self.edges[i].dst))
        return sorted(res)

    def signed_cell_data(self, ref: CellRef):
        c = self.cells[ref.cell]
        lab = self.clabel[ref.cell]
        if ref.sign > 0:
            return c.top, c.bottom, lab
        return c.bottom, c.top, lab.inv()

    def dump(self) -> str:
        K = self.base
        X = self.complex
        lines = [f"# universal 2-cover of base {K.fmt(self.p)} to level {self.level}"]
        for i, v in enumerate(self.vertices):
            lines.append(f"vertex {v}")
        for i, e in enumerate(self.edges):
            lines.append(f"edge {e.name}: {self.vertices[e.src]} -> {self.vertices[e.dst]}")
        for c in self.cells:
            lines.append(f"cell {c.name}: {' '.join(X.edges[i].name for i in c.top)} => "
                         f"{' '.join(X.edges[i].name for i in c.bottom)}")
        for i, e in enumerate(self.edges):
            lines.append(f"label {e.name} {K.edges[self.elabel[i]].name}")
        for i, c in enumerate(self.cells):
            lines.append(f"label {c.name} {K.fmt_cell(self.clabel[i])}")
        for i, v in enumerate(self.vertices):
            lines.append(f"level {v} {self.vlevel[i]}")
        for i, e in enumerate(self.edges):
            lines.append(f"level {e.name} {self.elevel[i]}")
        for i, c in enumerate(self.cells):
            lines.append(f"level {c.name} {self.clevel[i]}")
        lines.append("root " + " ".join(self.edges[i].name for i in self.root))
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> frozenset:
        """Seed-independent description: cell digests built from genealogy."""
        out = set()
        for i, c in enumerate(self.cells):
            out.add((tuple(self.canon[e] for e in c.top), self.clabel[i], self.clevel[i]))
        return frozenset(out)


def _digest(*parts) -> str:
    return hashlib.sha256(repr(parts).encode()).hexdigest()[:16]


def build_cover(K: DirectedComplex, p: Word, level: int, seed: int | None = None) -> CoverComplex:
    """Grow the natural filtration M_0 .. M_level of the universal 2-cover."""
    if not p:
        raise CoverError("the base path must be non-empty")
    salt = "" if seed is None else f"s{seed}:"
    cov = CoverComplex(K, tuple(p))
    n = len(p)
    for i in range(n + 1):
        cov.vertices.append(f"{salt}r{i}")
        cov.vlevel.append(0)
    for i, e in enumerate(p):
        cov.edges.append(Edge(f"{salt}r{i}e", i, i + 1))
        cov.elabel.append(e)
        cov.elevel.append(0)
        cov.canon.append(_digest("root", i))
    cov.root = tuple(range(n))
    rng = random.Random(seed) if seed is not None else None
    for _ in range(level):
        extend(cov, rng, salt)
    return cov


def extend(cov: CoverComplex, rng=None, salt: str = "") -> None:
    """Add level ``cov.level + 1``."""
    K = cov.base
    lv = cov.level
    signed = K.signed_cells()
    maxtop = max((len(K.top(f)) for f in signed), default=0)
    work = []
    for r in cov.paths(lv, maxtop):
        lab = cov.label(r)
        for f in signed:
            if K.top(f) == lab:
                work.append((r, f))
    if rng is not None:
        rng.shuffle(work)
    for r, f in work:
        if (r, f) in cov.index:
            continue
        a, b = cov.edges[r[0]].src, cov.edges[r[-1]].dst
        bot = K.bottom(f)
        ckey = _digest(tuple(cov.canon[e] for e in r), f)
        hname = ckey[:8]
        vs = [a]
        for j in range(len(bot) - 1):
            cov.vertices.append(f"{salt}{hname}/{K.fmt_cell(f)}/v{j}")
            cov.vlevel.append(lv + 1)
            vs.append(len(cov.vertices) - 1)
        vs.append(b)
        arc = []
        for j, e in enumerate(bot):
            cov.edges.append(Edge(f"{salt}{hname}/{K.fmt_cell(f)}/{j}", vs[j], vs[j + 1]))
            cov.elabel.append(e)
            cov.elevel.append(lv + 1)
            cov.canon.append(_digest(ckey, j))
            arc.append(len(cov.edges) - 1)
        arc = tuple(arc)
        ci = len(cov.cells)
        cov.cells.append(Cell(f"{salt}{hname}/{K.fmt_cell(f)}/c", r, arc))
        cov.clabel.append(f)
        cov.clevel.append(lv + 1)
        cov.index[(r, f)] = CellRef(ci, 1)
        cov.index[(arc, f.inv())] = CellRef(ci, -1)
    cov.level = lv + 1
    cov._complex = None


def trivial_cover(K: DirectedComplex, p: Word) -> CoverComplex:
    """K itself with the identity labelling; used to exercise the checks."""
    cov = CoverComplex(K, tuple(p))
    cov.vertices = list(K.vertices)
    cov.vlevel = [0] * len(K.vertices)
    cov.edges = list(K.edges)
    cov.elabel = list(range(len(K.edges)))
    cov.elevel = [0] * len(K.edges)
    cov.canon = [_digest("edge", i) for i in range(len(K.edges))]
    cov.cells = list(K.cells)
    cov.clabel = [CellRef(i, 1) for i in range(len(K.cells))]
    cov.clevel = [0] * len(K.cells)
    cov.root = tuple(p)
    for i, c in enumerate(K.cells):
        cov.index.setdefault((c.top, CellRef(i, 1)), CellRef(i, 1))
        cov.index.setdefault((c.bottom, CellRef(i, -1)), CellRef(i, -1))
    return cov


# -- lifting -----------------------------------------------------------------------

def lift_diagram(cov: CoverComplex, d: Diagram, start: Word | None = None) -> tuple:
    """The unique lift of d with top ``start`` (default the root arc)."""
    K = cov.base
    cur = cov.root if start is None else tuple(start)
    if cov.label(cur) != d.top:
        raise CoverError("top of the diagram is not the label of the starting path")
    top = cur
    steps = []
    for k, s in enumerate(d.steps):
        t = K.top(s.cell)
        seg = cur[s.offset:s.offset + len(t)]
        ref = cov.index.get((seg, s.cell))
        if ref is None:
            raise CoverError(
                f"cover level {cov.level} is too small; level {len(d.steps)} suffices")
        _, bot, _ = cov.signed_cell_data(ref)
        steps.append(Step(s.offset, ref))
        cur = cur[:s.offset] + bot + cur[s.offset + len(t):]
    X = cov.complex
    src = X.source(top) if top else 0
    return Diagram(X, top, tuple(steps), src), cur


def project(cov: CoverComplex, d: Diagram) -> Diagram:
    K = cov.base
    steps = []
    for s in d.steps:
        lab = cov.clabel[s.cell.cell]
        steps.append(Step(s.offset, lab if s.cell.sign > 0 else lab.inv()))
    return canonical(Diagram(K, cov.label(d.top), tuple(steps), K.source(cov.label(d.top))
                             if d.top else 0))


# -- rooted-tree checks -------------------------------------------------------------

@dataclass
class TreeReport:
    t1: list = field(default_factory=list)
    t2: list = field(default_factory=list)
    u2: list = field(default_factory=list)
    t3: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.t1 or self.t2 or self.u2 or self.t3)

    def lines(self):
        out = []
        for name in ("t1", "t2", "u2", "t3"):
            bad = getattr(self, name)
            out.append(f"{name.upper()}: {'pass' if not bad else 'FAIL ' + str(bad[0])}")
        return out


def verify_rooted_tree(cov: CoverComplex, max_cells: int = 4, max_path_len: int | None = None) -> TreeReport:
    rep = TreeReport()
    K = cov.base
    X = cov.complex
    n = cov.level
    # T1: every vertex lies on a path from the start to the end of the root
    a = X.source(cov.root)
    b = X.target(cov.root)
    fwd, bwd = {a}, {b}
    for seen, forward in ((fwd, True), (bwd, False)):
        stack = list(seen)
        while stack:
            v = stack.pop()
            for e in X.edges:
                s, t = (e.src, e.dst) if forward else (e.dst, e.src)
                if s == v and t not in seen:
                    seen.add(t)
                    stack.append(t)
    for v in range(len(X.vertices)):
        if v not in fwd or v not in bwd:
            rep.t1.append(X.vertices[v])
    maxtop = max((len(K.top(f)) for f in K.signed_cells()), default=1)
    inner = n - 1               # interior margin of one level; empty at level 0
    # U2': exactly one cell per (interior path, base cell) pair
    for r in cov.paths(inner, maxtop):
        lab = cov.label(r)
        for f in K.signed_cells():
            if K.top(f) != lab:
                continue
            hits = 0
            for ci in range(len(cov.cells)):
                for sgn in (1, -1):
                    t, _, l = cov.signed_cell_data(CellRef(ci, sgn))
                    if t == r and l == f:
                        hits += 1
            if hits != 1:
                rep.u2.append((r, K.fmt_cell(f), hits))
    # T2: interior paths with equal endpoints are homotopic inside the truncation
    plen = max_path_len or (len(X.edges) + 1)
    allp = cov.paths(n, plen)
    idx = {w: i for i, w in enumerate(allp)}
    parent = list(range(len(allp)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for w, i in idx.items():
        for ci in range(len(cov.cells)):
            for sgn in (1, -1):
                t, bot, _ = cov.signed_cell_data(CellRef(ci, sgn))
                for s in range(len(w) - len(t) + 1):
                    if w[s:s + len(t)] == t:
                        w2 = w[:s] + bot + w[s + len(t):]
                        j = idx.get(w2)
                        if j is not None:
                            parent[find(i)] = find(j)
    groups = {}
    for w in cov.paths(inner, plen):
        key = (X.source(w), X.target(w))
        groups.setdefault(key, []).append(w)
    for key, ws in groups.items():
        roots = {find(idx[w]) for w in ws}
        if len(roots) > 1:
            rep.t2.append(tuple(ws[:2]))
    # bounded T3: no reduced nontrivial spherical diagram at the root
    w = find_spherical_witness(X, cov.root, max_cells)
    if w is not None:
        rep.t3.append(w)
    return rep


def find_spherical_witness(X: DirectedComplex, p: Word, max_cells: int):
    """Search for a reduced nontrivial (p, p)-diagram with at most max_cells cells."""
    frontier = {(): p}
    seen_canon = set()
    for depth in range(1, max_cells + 1):
        nxt = {}
        for steps, w in frontier.items():
            for f in X.signed_cells():
                t = X.top(f)
                for s in range(len(w) - len(t) + 1):
                    if w[s:s + len(t)] != t:
                        continue
                    st = steps + (Step(s, f),)
                    d = Diagram(X, p, st, X.source(p))
                    r = reduce(d)
                    if len(r.steps) < depth:
                        continue  # contains a dipole; its reduced form was seen earlier
                    key = r.steps
                    if key in seen_canon:
                        continue
                    seen_canon.add(key)
                    nxt[r.steps] = r.bottom
                    if r.bottom == p:
                        return r
        frontier = nxt
    return None


# -- bounded consistency with reduced diagrams ------------------------------------

def squier_ball(cov: CoverComplex, radius: int):
    """Vertices of Sq(cover, root) within ``radius`` atomic steps, and the number
    of edges (oriented by the base orientation) between them."""
    K = cov.base
    signed = K.signed_cells()
    pos = [f for f in signed if f.sign > 0]

    def moves(w, cells):
        lab = cov.label(w)
        for f in cells:
            t = K.top(f)
            for s in range(len(w) - len(t) + 1):
                if lab[s:s + len(t)] != t:
                    continue
                ref = cov.index.get((w[s:s + len(t)], f))
                if ref is not None:
                    yield w[:s] + cov.signed_cell_data(ref)[1] + w[s + len(t):]

    dist = {cov.root: 0}
    todo = deque([cov.root])
    while todo:
        w = todo.popleft()
        if dist[w] == radius:
            continue
        for w2 in moves(w, signed):
            if w2 not in dist:
                dist[w2] = dist[w] + 1
                todo.append(w2)
    edges = sum(1 for w in dist for w2 in moves(w, pos) if w2 in dist)
    return set(dist), edges


def diagram_ball(K: DirectedComplex, p: Word, radius: int):
    """Reduced diagrams with top p and at most ``radius`` cells, and the number of
    pairs (diagram, positive atomic step) staying inside that set."""
    signed = K.signed_cells()
    start = Diagram(K, p, (), K.source(p))
    ball = {(): start}
    frontier = [start]

    def moves(d, cells):
        w = d.bottom
        for f in cells:
            t = K.top(f)
            for s in range(len(w) - len(t) + 1):
                if w[s:s + len(t)] == t:
                    yield reduce(Diagram(K, p, d.steps + (Step(s, f),), d.start))

    for _ in range(radius):
        nxt = []
        for d in frontier:
            for r in moves(d, signed):
                if r.steps not in ball:
                    ball[r.steps] = r
                    nxt.append(r)
        frontier = nxt
    pos = [f for f in signed if f.sign > 0]
    edges = sum(1 for d in ball.values() for r in moves(d, pos) if r.steps in ball)
    return ball, edges
