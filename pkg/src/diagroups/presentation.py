"""Presentations of diagram groups of complete complexes.

Generators are negative edges (u, f, v) of the Squier complex; relations come
from squares. Group words are tuples of ``(generator index, +1 | -1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complex import CellRef, ComplexError, DirectedComplex, Word
from .diagrams import Diagram, concat, identity, inverse, mult, reduce
from .diagrams import atomic as atomic_diagram
from .homology import ClassSemigroup, Elem
from .rewriting import require_complete, view
from .squier import Forest, SquierComponent, component, left_forest, right_forest

TRUNCATION_BANNER = "# truncated: enumeration limited by word length; presentation may be incomplete"


class PresentationError(ComplexError):
    pass


# -- free group words ---------------------------------------------------------------

def free_reduce(word) -> tuple:
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def winv(word) -> tuple:
    return tuple((g, -e) for g, e in reversed(word))


def wmul(*words) -> tuple:
    out = ()
    for w in words:
        out += tuple(w)
    return free_reduce(out)


def conj(x, y) -> tuple:
    """x^y = y^-1 x y."""
    return wmul(winv(y), x, y)


def fmt_word(word, names) -> str:
    """Render a word, spotting the conjugate shape c^-1 g c."""
    word = free_reduce(word)
    if not word:
        return "1"
    n = len(word)
    if n % 2 == 1:
        k = n // 2
        c = word[k + 1:]
        if word[k][1] == 1 and winv(c) == word[:k]:
            base = names[word[k][0]]
            return base if not c else f"{base}^({_powers(c, names)})"
    return _powers(word, names)


def _powers(word, names) -> str:
    parts = []
    i = 0
    while i < len(word):
        g, e = word[i]
        j = i
        while j < len(word) and word[j] == (g, e):
            j += 1
        k = (j - i) * e
        parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
        i = j
    return " ".join(parts)


# -- presentations ----------------------------------------------------------------

@dataclass
class Presentation:
    K: DirectedComplex = field(repr=False)
    base: Word
    generators: list          # (u, f, v)
    relations: list           # (lhs word, rhs word)
    exhaustive: bool = True
    kind: str = "minimal"
    banner: str = ""

    def names(self):
        return [f"x{i}" for i in range(len(self.generators))]

    def index(self, triple) -> int:
        return self._idx[triple]

    def __post_init__(self):
        self._idx = {g: i for i, g in enumerate(self.generators)}

    def text(self) -> str:
        K = self.K
        names = self.names()
        lines = []
        if self.banner:
            lines.append(self.banner)
        if not self.exhaustive:
            lines.append(TRUNCATION_BANNER)
        for i, (u, f, v) in enumerate(self.generators):
            lines.append(f"gen {names[i]} = ({K.fmt(u)}, {K.fmt_cell(f)}, {K.fmt(v)})")
        for a, b in self.relations:
            lines.append(f"rel {fmt_word(a, names)} = {fmt_word(b, names)}")
        return "\n".join(lines) + "\n"

    def as_json(self) -> str:
        K = self.K
        names = self.names()
        data = {
            "base": K.fmt(self.base),
            "exhaustive": self.exhaustive,
            "generators": [
                {"name": names[i], "u": K.fmt(u), "f": K.fmt_cell(f), "v": K.fmt(v)}
                for i, (u, f, v) in enumerate(self.generators)],
            "kind": self.kind,
            "relations": [
                {"lhs": [[names[g], e] for g, e in a], "rhs": [[names[g], e] for g, e in b]}
                for a, b in self.relations],
        }
        return json.dumps(data, sort_keys=True, indent=2)


def _triple_key(K, t):
    u, f, v = t
    return (K.shortlex(u), f.cell, f.sign, K.shortlex(v))


# -- bracket words --------------------------------------------------------------------

class Brackets:
    """Evaluates [u, f, v] by the four-case recursion."""

    def __init__(self, K: DirectedComplex, tl: Forest, tr: Forest, index, budget: int = 100000):
        self.K = K
        self.rv = view(K)
        self.tl, self.tr = tl, tr
        self.index = index      # callable: triple -> generator index or None
        self.budget = budget
        self.memo: dict = {}

    def __call__(self, u: Word, f: CellRef, v: Word) -> tuple:
        key = (u, f, v)
        if key in self.memo:
            return self.memo[key]
        self.budget -= 1
        if self.budget < 0:
            raise PresentationError("bracket recursion budget exceeded")
        rv = self.rv
        ub = rv.irr(u)
        if ub != u:
            out = self(ub, f, v)
        elif (u, f) in self.tl:
            out = ()
        elif not rv.reducible(v):
            i = self.index((u, f, v))
            if i is None:
                raise PresentationError("bracket reached a triple outside the generating set")
            out = ((i, 1),)
        else:
            p, g, q = self.tr.assigned(v)
            inner = self(u, f, p + self.K.top(g) + q)
            c = self(rv.irr(u + self.K.top(f) + p), g, q)
            out = conj(inner, c)
        self.memo[key] = out
        return out


def bracket_word(K, u, f, v, tl=None, tr=None, index=None):
    tl = tl or left_forest(K)
    tr = tr or right_forest(K)
    if index is None:
        gens = {}

        def index(t):
            return gens.setdefault(t, len(gens))
        b = Brackets(K, tl, tr, index)
        word = b(u, f, v)
        return word, sorted(gens, key=gens.get)
    return Brackets(K, tl, tr, index)(u, f, v)


def minimal_presentation(K: DirectedComplex, w, max_len: int | None = None,
                         max_elements: int = 2000) -> Presentation:
    """Generators: essential 1-cubes; relations over (p,f1), q, (f2,r)."""
    rv = require_complete(K)
    w = K.word(w) if not isinstance(w, tuple) else w
    if not w:
        raise PresentationError("the base word must be non-empty")
    S = ClassSemigroup(K, max_elements, max_len)
    tl, tr = left_forest(K), right_forest(K)
    target = S.make(w)
    P = S.elements
    neg = rv.negative_cells()

    def val(u: Elem, f):
        return Elem(u.src, K.cell_target(f), rv.irr(u.word + K.top(f)))

    left_letters = [(p, f) for p in P for f in neg
                    if K.cell_source(f) == p.dst and (p.word, f) not in tl]
    gens = []
    for u, f in left_letters:
        a = val(u, f)
        for v in P:
            if S.mul(a, v) == target:
                gens.append((u.word, f, v.word))
    gens.sort(key=lambda t: _triple_key(K, t))
    idx = {g: i for i, g in enumerate(gens)}
    br = Brackets(K, tl, tr, idx.get)
    right_letters = [(f, r) for f in neg for r in P
                     if K.cell_target(f) == r.src and (f, r.word) not in tr]
    rels = []
    for p, f1 in left_letters:
        a = val(p, f1)
        for q in P:
            aq = S.mul(a, q)
            if aq is None:
                continue
            for f2, r in right_letters:
                if K.cell_source(f2) != q.dst:
                    continue
                tail = Elem(K.cell_source(f2), r.dst, rv.irr(K.top(f2) + r.word))
                if S.mul(aq, tail) != target:
                    continue
                lhs = br(p.word, f1, q.word + K.bottom(f2) + r.word)
                rhs = conj(br(p.word, f1, q.word + K.top(f2) + r.word),
                           br(rv.irr(p.word + K.top(f1) + q.word), f2, r.word))
                rels.append((lhs, rhs))
    return Presentation(K, w, gens, rels, S.exact, "minimal")


def wirtinger_presentation(K: DirectedComplex, w, max_len: int = 8,
                           max_vertices: int = 10000) -> Presentation:
    """Generators: negative edges with irreducible left context, not in the
    left forest; one relation per square of the explored component."""
    rv = require_complete(K)
    w = K.word(w) if not isinstance(w, tuple) else w
    comp = component(K, w, max_len, max_vertices)
    tl = left_forest(K)
    verts = set(comp.vertices)
    gens = sorted((e for e in comp.edges if not rv.reducible(e[0]) and (e[0], e[1]) not in tl),
                  key=lambda t: _triple_key(K, t))
    idx = {g: i for i, g in enumerate(gens)}
    neg = rv.negative_cells()
    rels = []
    complete = comp.exhaustive
    for x in comp.vertices:
        # squares with top x = p top(f1) q top(f2) r
        for f1 in neg:
            t1 = K.top(f1)
            for s1 in range(len(x) - len(t1) + 1):
                if x[s1:s1 + len(t1)] != t1:
                    continue
                p = x[:s1]
                if rv.reducible(p) or (p, f1) in tl:
                    continue
                rest = x[s1 + len(t1):]
                for f2 in neg:
                    t2 = K.top(f2)
                    for s2 in range(len(rest) - len(t2) + 1):
                        if rest[s2:s2 + len(t2)] != t2:
                            continue
                        q, r = rest[:s2], rest[s2 + len(t2):]
                        b1, b2 = K.bottom(f1), K.bottom(f2)
                        corners = [p + b1 + q + t2 + r, p + t1 + q + b2 + r, p + b1 + q + b2 + r]
                        if any(c not in verts for c in corners):
                            complete = False
                            continue
                        e = (rv.irr(p + t1 + q), f2, r)
                        lhs_t = (p, f1, q + b2 + r)
                        rhs_t = (p, f1, q + t2 + r)
                        if lhs_t not in idx or rhs_t not in idx:
                            continue
                        lhs = ((idx[lhs_t], 1),)
                        base = ((idx[rhs_t], 1),)
                        if (e[0], e[1]) in tl:
                            rels.append((lhs, base))
                        elif e in idx:
                            rels.append((lhs, conj(base, ((idx[e], 1),))))
                        else:
                            complete = False
    return Presentation(K, w, gens, rels, complete, "wirtinger")


# -- generator loops as diagrams ----------------------------------------------------

def tree_path(K: DirectedComplex, p: Word, start: int | None = None) -> Diagram:
    """Positive 2-path from p to irr(p) along assigned left-forest edges."""
    return view(K).irreducible_form(p, start)[1]


def edge_loop(K: DirectedComplex, u: Word, f: CellRef, v: Word, base: Word | None = None) -> Diagram:
    """Spherical diagram at the irreducible base: tree path out, the edge, tree path back."""
    rv = view(K)
    top = u + K.top(f) + v
    bot = u + K.bottom(f) + v
    base = rv.irr(top) if base is None else base
    out = inverse(tree_path(K, top))
    d = concat(out, atomic_diagram(K, u, f, v))
    d = concat(d, tree_path(K, bot))
    if d.top != base:
        raise PresentationError("edge lies outside the component of the base")
    return reduce(d)


def generator_diagram(K: DirectedComplex, gen, tl: Forest | None = None) -> Diagram:
    u, f, v = gen
    tl = tl or left_forest(K)
    if (u, f) in tl:
        raise PresentationError("forest edges are not generators")
    return edge_loop(K, u, f, v)


def evaluate(word, diagrams, base: Diagram) -> Diagram:
    out = base
    for g, e in word:
        d = diagrams[g] if e > 0 else inverse(diagrams[g])
        out = mult(out, d)
    return out


def verify_relations(pres: Presentation) -> list:
    """Return the indices of relations that fail as diagram equalities."""
    K = pres.K
    tl = left_forest(K)
    ds = [generator_diagram(K, g, tl) for g in pres.generators]
    base = identity(K, view(K).irr(pres.base))
    bad = []
    for i, (a, b) in enumerate(pres.relations):
        if evaluate(a, ds, base).steps != evaluate(b, ds, base).steps:
            bad.append(i)
    return bad
