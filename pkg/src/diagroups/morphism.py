"""Morphisms of directed 2-complexes and diagram substitution."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import CellRef, ComplexError, DirectedComplex
from .diagrams import Diagram, Step, canonical, inverse


class MorphismError(ComplexError):
    pass


@dataclass(frozen=True)
class Morphism:
    src: DirectedComplex
    dst: DirectedComplex
    vmap: tuple   # vertex index -> vertex index
    emap: tuple   # edge index -> non-empty word of dst
    cmap: tuple   # positive cell index -> Diagram over dst

    def word(self, w) -> tuple:
        out = ()
        for e in w:
            out += self.emap[e]
        return out


def validate_morphism(src: DirectedComplex, dst: DirectedComplex, vmap, emap, cmap) -> Morphism:
    """Check M1 and M2 and build the morphism.

    ``vmap``/``emap``/``cmap`` are dicts keyed by source ids; edge images are
    words of ``dst`` (tuples of edge indices or strings), cell images are
    diagrams over ``dst``.
    """
    def pick(table, names, kind):
        out = []
        for n in names:
            if n not in table:
                raise MorphismError(f"missing assignment for {kind} {n}")
            out.append(table[n])
        return out

    if vmap is None:
        vmap = {v: dst.vertices[0] for v in src.vertices} if dst.one_vertex else {}
    vs = tuple(dst.vertex_index[v] if isinstance(v, str) else v
               for v in pick(vmap, src.vertices, "vertex"))
    es = []
    for e, img in zip(src.edges, pick(emap, [e.name for e in src.edges], "edge")):
        w = dst.word(img) if not isinstance(img, tuple) else img
        if not w:
            raise MorphismError(f"edge {e.name} is mapped to the empty word")
        if dst.source(w) != vs[e.src] or dst.target(w) != vs[e.dst]:
            raise MorphismError(f"M1 violated: image of edge {e.name} has wrong endpoints")
        es.append(w)
    m = Morphism(src, dst, vs, tuple(es), ())
    cs = []
    for c, d in zip(src.cells, pick(cmap, [c.name for c in src.cells], "cell")):
        if d.top != m.word(c.top) or d.bottom != m.word(c.bottom):
            raise MorphismError(f"M2 violated: image of cell {c.name} has wrong top or bottom")
        cs.append(d)
    return Morphism(src, dst, vs, tuple(es), tuple(cs))


def identity_morphism(K: DirectedComplex) -> Morphism:
    cmap = {c.name: Diagram(K, c.top, (Step(0, CellRef(i, 1)),), K.source(c.top))
            for i, c in enumerate(K.cells)}
    return validate_morphism(K, K, {v: v for v in K.vertices},
                             {e.name: (i,) for i, e in enumerate(K.edges)}, cmap)


def substitute(d: Diagram, m: Morphism) -> Diagram:
    """Image of ``d`` under ``m``: canonicalized but not reduced."""
    if d.K is not m.src and not d.K.same_as(m.src):
        raise MorphismError("diagram is not over the source of the morphism")
    K = m.src
    word = d.top
    steps = []
    for s in d.steps:
        img = m.cmap[s.cell.cell]
        if s.cell.sign < 0:
            img = inverse(img)
        shift = len(m.word(word[:s.offset]))
        steps.extend(Step(t.offset + shift, t.cell) for t in img.steps)
        t = K.top(s.cell)
        word = word[:s.offset] + K.bottom(s.cell) + word[s.offset + len(t):]
    top = m.word(d.top)
    start = m.vmap[d.start]
    return canonical(Diagram(m.dst, top, tuple(steps), start))

