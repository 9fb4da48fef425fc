"""Bounded Squier components, thin cubes, spanning forests and the
collapsing-scheme classification of cubes."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .complex import CellRef, ComplexError, DirectedComplex, Word
from .rewriting import RewritingView, require_complete, view


class SquierError(ComplexError):
    pass


# -- components -----------------------------------------------------------------

@dataclass(frozen=True)
class SquierComponent:
    K: DirectedComplex = field(repr=False, compare=False)
    base: Word
    vertices: tuple          # words, in BFS order
    edges: tuple             # (u, f, v) with f negative for the rewriting view
    max_len: int
    max_vertices: int
    exhaustive: bool

    def __contains__(self, w):
        return w in set(self.vertices)


def component(K: DirectedComplex, w: Word, max_len: int = 8, max_vertices: int = 10000) -> SquierComponent:
    """BFS closure of ``w`` under atomic steps of both signs, within limits."""
    if not w:
        raise SquierError("the base word must be non-empty")
    rv = view(K)
    seen = {w: 0}
    order = [w]
    queue = deque([w])
    exhaustive = True
    while queue:
        u = queue.popleft()
        for f in K.signed_cells():
            t, b = K.top(f), K.bottom(f)
            for s in range(len(u) - len(t) + 1):
                if u[s:s + len(t)] != t:
                    continue
                nxt = u[:s] + b + u[s + len(t):]
                if nxt in seen:
                    continue
                if len(nxt) > max_len or len(seen) >= max_vertices:
                    exhaustive = False
                    continue
                seen[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    edges = []
    for u in order:
        for f in rv.negative_cells():
            t, b = K.top(f), K.bottom(f)
            for s in range(len(u) - len(t) + 1):
                if u[s:s + len(t)] == t and u[:s] + b + u[s + len(t):] in seen:
                    edges.append((u[:s], f, u[s + len(t):]))
    return SquierComponent(K, w, tuple(order), tuple(edges), max_len, max_vertices, exhaustive)


def export_dot(comp: SquierComponent) -> str:
    K = comp.K
    idx = {w: i for i, w in enumerate(comp.vertices)}
    lines = ["digraph squier {"]
    for w, i in idx.items():
        lines.append(f'  n{i} [label="{K.fmt(w)}"];')
    for u, f, v in comp.edges:
        a = idx[u + K.top(f) + v]
        b = idx[u + K.bottom(f) + v]
        lines.append(f'  n{a} -> n{b} [label="({K.fmt(u)},{K.fmt_cell(f)},{K.fmt(v)})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- thin cubes -------------------------------------------------------------------

@dataclass(frozen=True)
class ThinCube:
    """eps(u0) + f1 + eps(u1) + ... + fn + eps(un)."""
    words: tuple   # u0 .. un
    cells: tuple   # f1 .. fn (CellRef)

    @property
    def dim(self) -> int:
        return len(self.cells)

    def top(self, K) -> Word:
        return self._face_word(K, [0] * self.dim)

    def bottom(self, K) -> Word:
        return self._face_word(K, [1] * self.dim)

    def _face_word(self, K, ks):
        w = self.words[0]
        for f, k, u in zip(self.cells, ks, self.words[1:]):
            w = w + (K.top(f) if k == 0 else K.bottom(f)) + u
        return w

    def fmt(self, K) -> str:
        parts = [f"e({K.fmt(self.words[0])})"]
        for f, u in zip(self.cells, self.words[1:]):
            parts += [K.fmt_cell(f), f"e({K.fmt(u)})"]
        return "+".join(parts)


def cube(words, cells) -> ThinCube:
    return ThinCube(tuple(tuple(u) for u in words), tuple(cells))


def cube_faces(K: DirectedComplex, c: ThinCube, i: int, k: int) -> ThinCube:
    """Top (k=0) or bottom (k=1) i-th face, 1 <= i <= dim."""
    if not 1 <= i <= c.dim:
        raise SquierError(f"face index {i} out of range for a {c.dim}-cube")
    f = c.cells[i - 1]
    mid = K.top(f) if k == 0 else K.bottom(f)
    words = c.words[:i - 1] + (c.words[i - 1] + mid + c.words[i],) + c.words[i + 1:]
    return ThinCube(words, c.cells[:i - 1] + c.cells[i:])


def cubes_on(K: DirectedComplex, w: Word, n: int, rv: RewritingView | None = None):
    """All n-cubes with top word w (negative cells on disjoint segments)."""
    rv = rv or view(K)
    occ = []
    for f in rv.negative_cells():
        t = K.top(f)
        for s in range(len(w) - len(t) + 1):
            if w[s:s + len(t)] == t:
                occ.append((s, s + len(t), f))
    occ.sort(key=lambda o: (o[0], o[1], o[2].cell))
    out = []

    def rec(start_idx, pos, chosen):
        if len(chosen) == n:
            words, cells, last = [], [], 0
            for s, e, f in chosen:
                words.append(w[last:s])
                cells.append(f)
                last = e
            words.append(w[last:])
            out.append(cube(words, cells))
            return
        for j in range(start_idx, len(occ)):
            s, e, f = occ[j]
            if s >= pos:
                rec(j + 1, e, chosen + [occ[j]])

    rec(0, 0, [])
    return out


def all_cubes(comp: SquierComponent, n: int) -> list:
    """Every n-cube of the bounded component whose vertices all lie in it."""
    K = comp.K
    verts = set(comp.vertices)
    out = []
    for w in comp.vertices:
        for c in cubes_on(K, w, n):
            if n == 0 or c.bottom(K) in verts and all(_vertices_in(K, c, verts)):
                out.append(c)
    return out


def _vertices_in(K, c, verts):
    from itertools import product
    for ks in product((0, 1), repeat=c.dim):
        yield c._face_word(K, ks) in verts


# -- forests ------------------------------------------------------------------------

class Forest:
    """A left or right spanning forest given by wildcard edges.

    Left forests store pairs ``(u, f)`` meaning every edge ``(u, f, *)``;
    right forests store ``(f, v)`` meaning every edge ``(*, f, v)``. For a
    complete complex membership is decided by the shortest reducible
    prefix (suffix) rule, so the forest need not be materialized.
    """

    def __init__(self, K: DirectedComplex, kind: str, explicit=None, external: bool = False):
        self.K = K
        self.kind = kind
        self.rv = view(K)
        self.explicit = None if explicit is None else frozenset(explicit)
        self.external = external

    def __contains__(self, pair) -> bool:
        if self.explicit is not None:
            return tuple(pair) in self.explicit
        K, rv = self.K, self.rv
        if self.kind == "left":
            u, f = pair
            if not rv.is_negative(f) or K.top(f) == K.bottom(f):
                return False
            w = tuple(u) + K.bottom(f)
            red = rv.first_redex(w)
            return red is not None and red[0] == len(u) and red[1].ref.cell == f.cell \
                and red[0] + len(red[1].lhs) == len(w)
        f, v = pair
        if not rv.is_negative(f) or K.top(f) == K.bottom(f):
            return False
        w = K.bottom(f) + tuple(v)
        red = rv.last_redex(w)
        return red is not None and red[0] == 0 and red[1].ref.cell == f.cell \
            and len(red[1].lhs) == len(K.bottom(f))

    def assigned(self, p: Word):
        """The forest edge ``(u, f, v)`` pointing into the reducible word p."""
        rv = self.rv
        if self.explicit is not None:
            return self._assigned_explicit(p)
        red = rv.first_redex(p) if self.kind == "left" else rv.last_redex(p)
        if red is None:
            return None
        s, r = red
        return (p[:s], r.ref.inv(), p[s + len(r.lhs):])

    def _assigned_explicit(self, p):
        K = self.K
        hits = []
        for pair in self.explicit:
            if self.kind == "left":
                u, f = pair
                b = K.bottom(f)
                if p[:len(u)] == u and p[len(u):len(u) + len(b)] == b:
                    hits.append((u, f, p[len(u) + len(b):]))
            else:
                f, v = pair
                b = K.bottom(f)
                n = len(p) - len(v) - len(b)
                if n >= 0 and p[len(p) - len(v):] == v and p[n:n + len(b)] == b:
                    hits.append((p[:n], f, v))
        return hits[0] if len(hits) == 1 else (None if not hits else hits)

    def pairs_in(self, comp: SquierComponent) -> set:
        out = set()
        for p in comp.vertices:
            e = self.assigned(p)
            if e is not None and not isinstance(e, list):
                out.add((e[0], e[1]) if self.kind == "left" else (e[1], e[2]))
        return out

    def edges_in(self, comp: SquierComponent) -> list:
        K = self.K
        out = []
        for u, f, v in comp.edges:
            key = (u, f) if self.kind == "left" else (f, v)
            if key in self:
                out.append((u, f, v))
        return out


def left_forest(K: DirectedComplex, comp: SquierComponent | None = None) -> Forest:
    require_complete(K)
    return Forest(K, "left")


def right_forest(K: DirectedComplex, comp: SquierComponent | None = None) -> Forest:
    require_complete(K)
    return Forest(K, "right")


def external_forest(K: DirectedComplex, pairs, kind: str = "left") -> Forest:
    """A user-supplied forest; only F1 (irreducible context) is validated."""
    rv = view(K)
    clean = []
    for a, b in pairs:
        u, f = (a, b) if kind == "left" else (b, a)
        ctx = a if kind == "left" else b
        if rv.reducible(ctx):
            raise SquierError(f"forest context {K.fmt(ctx)} is reducible")
        cell = f
        if K.top(cell) == K.bottom(cell):
            raise SquierError("forest cells must change the word")
        clean.append((tuple(a), b) if kind == "left" else (a, tuple(b)))
    return Forest(K, kind, clean, external=True)


# -- classification -------------------------------------------------------------------

@dataclass(frozen=True)
class CubeClass:
    kind: str                 # "essential" | "redundant" | "collapsible"
    partner: ThinCube | None = None   # paired collapsible cube, or the free face

    def __str__(self):
        return self.kind


def classify_cube(K: DirectedComplex, c: ThinCube, tl: Forest) -> CubeClass:
    rv = tl.rv
    for i, u in enumerate(c.words):
        if i > 0 and (c.words[i - 1], c.cells[i - 1]) in tl:
            return CubeClass("collapsible", cube_faces(K, c, i, 1))
        if rv.reducible(u):
            p, f, q = tl.assigned(u)
            words = c.words[:i] + (p, q) + c.words[i + 1:]
            cells = c.cells[:i] + (f,) + c.cells[i:]
            return CubeClass("redundant", ThinCube(words, cells))
    return CubeClass("essential")


def bar(K: DirectedComplex, c: ThinCube) -> ThinCube:
    rv = view(K)
    return ThinCube(tuple(rv.irr(u) for u in c.words), c.cells)


def census(comp: SquierComponent, tl: Forest, max_dim: int) -> Counter:
    out = Counter()
    for n in range(max_dim + 1):
        for c in all_cubes(comp, n):
            out[(n, classify_cube(comp.K, c, tl).kind)] += 1
    return out


def census_csv(counts: Counter) -> str:
    lines = ["dimension,class,count"]
    for (n, kind), v in sorted(counts.items()):
        lines.append(f"{n},{kind},{v}")
    return "\n".join(lines) + "\n"
