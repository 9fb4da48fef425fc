"""The positive rewriting relation, irreducible forms and completeness checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .complex import Cell, CellRef, ComplexError, DirectedComplex, Edge, Word
from .diagrams import Diagram, Step


class RewritingError(ComplexError):
    pass


class Rule(NamedTuple):
    ref: CellRef   # the signed cell acting as a left-to-right rule
    lhs: Word
    rhs: Word


class RewritingView:
    """Reducing cells of ``K`` under a fixed orientation.

    ``orient[c]`` is +1 when the stored orientation of cell ``c`` is the
    positive one for rewriting, -1 when the cell is flipped. Cells whose
    sides coincide are never reducing.
    """

    def __init__(self, K: DirectedComplex, reorient: bool = True):
        self.K = K
        self.reorient = reorient
        self.orient = []
        for c in K.cells:
            flip = reorient and c.top != c.bottom and K.shortlex(c.top) < K.shortlex(c.bottom)
            self.orient.append(-1 if flip else 1)
        self.rules = []
        for i, c in enumerate(K.cells):
            if c.top != c.bottom:
                ref = CellRef(i, self.orient[i])
                self.rules.append(Rule(ref, K.top(ref), K.bottom(ref)))
        self.by_lhs: dict = {}
        for r in self.rules:
            self.by_lhs.setdefault(r.lhs, []).append(r)
        self.lengths = sorted({len(r.lhs) for r in self.rules})
        self._irr: dict = {}

    # -- oriented cells ----------------------------------------------------
    def positive(self, cell: int) -> CellRef:
        return CellRef(cell, self.orient[cell])

    def negative(self, cell: int) -> CellRef:
        return CellRef(cell, -self.orient[cell])

    def negative_cells(self) -> list:
        return [self.negative(i) for i in range(len(self.K.cells))]

    def is_negative(self, f: CellRef) -> bool:
        return f.sign == -self.orient[f.cell]

    # -- redex search ------------------------------------------------------
    def _rules_at(self, w: Word, start: int, end: int):
        return self.by_lhs.get(w[start:end], ())

    def first_redex(self, w: Word):
        """Shortest reducible prefix: ``(start, rule)`` with lowest cell id, or None."""
        for e in range(1, len(w) + 1):
            best = None
            for L in self.lengths:
                if L > e:
                    break
                for r in self._rules_at(w, e - L, e):
                    if best is None or r.ref.cell < best[1].ref.cell:
                        best = (e - L, r)
            if best is not None:
                return best
        return None

    def last_redex(self, w: Word):
        """Shortest reducible suffix: ``(start, rule)`` with lowest cell id, or None."""
        n = len(w)
        for s in range(n - 1, -1, -1):
            best = None
            for L in self.lengths:
                if s + L > n:
                    break
                for r in self._rules_at(w, s, s + L):
                    if best is None or r.ref.cell < best[1].ref.cell:
                        best = (s, r)
            if best is not None:
                return best
        return None

    def reducible(self, w: Word) -> bool:
        return self.first_redex(w) is not None

    def all_redexes(self, w: Word):
        out = []
        for L in self.lengths:
            for s in range(len(w) - L + 1):
                for r in self._rules_at(w, s, s + L):
                    out.append((s, r))
        return out

    def irr(self, w: Word, budget: int = 100000) -> Word:
        w = tuple(w)
        hit = self._irr.get(w)
        if hit is not None:
            return hit
        cur = w
        for _ in range(budget):
            red = self.first_redex(cur)
            if red is None:
                self._irr[w] = cur
                return cur
            s, r = red
            cur = cur[:s] + r.rhs + cur[s + len(r.lhs):]
        raise RewritingError(f"reduction budget exhausted on {self.K.fmt(w)}")

    def irreducible_form(self, w: Word, start: int | None = None, budget: int = 100000):
        """``(irr(w), witness)`` where the witness is a positive 2-path w -> irr(w)."""
        w = tuple(w)
        cur = w
        steps = []
        for _ in range(budget):
            red = self.first_redex(cur)
            if red is None:
                return cur, Diagram(self.K, w, tuple(steps), self.K.source(w, start))
            s, r = red
            steps.append(Step(s, r.ref))
            cur = cur[:s] + r.rhs + cur[s + len(r.lhs):]
        raise RewritingError(f"reduction budget exhausted on {self.K.fmt(w)}")


def view(K: DirectedComplex, reorient: bool = True) -> RewritingView:
    key = ("view", reorient)
    if key not in K._memo:
        K._memo[key] = RewritingView(K, reorient)
    return K._memo[key]


def irreducible_form(K: DirectedComplex, w, budget: int = 100000):
    w = K.word(w) if not isinstance(w, tuple) else w
    return view(K).irreducible_form(w, budget=budget)


# -- Noetherian certificate ---------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    verdict: str   # "Certified" | "CertifiedNonNoetherian" | "Unknown"
    reoriented: tuple = ()
    cycle: tuple = ()

    def __str__(self):
        return self.verdict


def _words_up_to(K: DirectedComplex, L: int):
    level = [((), v) for v in range(len(K.vertices))]
    out = []
    for _ in range(L):
        nxt = []
        for w, v in level:
            for i, e in enumerate(K.edges):
                if e.src == v:
                    nxt.append((w + (i,), e.dst))
        out.extend(w for w, _ in nxt)
        level = nxt
    return out


def noetherian_certificate(K: DirectedComplex, reorient: bool = True, max_len: int = 6) -> Certificate:
    rv = view(K, reorient)
    flipped = tuple(K.cells[i].name for i, o in enumerate(rv.orient) if o < 0)
    if all(K.shortlex(r.lhs) > K.shortlex(r.rhs) for r in rv.rules):
        return Certificate("Certified", flipped)
    # look for a cycle of one-step rewrites among words of bounded length
    words = _words_up_to(K, max_len)
    succ = {}
    for w in words:
        succ[w] = [w[:s] + r.rhs + w[s + len(r.lhs):] for s, r in rv.all_redexes(w)
                   if len(w) - len(r.lhs) + len(r.rhs) <= max_len]
    color = {}
    for root in words:
        if root in color:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
                continue
            c = color.get(nxt, 0)
            if c == 1:
                cyc = path[path.index(nxt):] + [nxt]
                return Certificate("CertifiedNonNoetherian", flipped, tuple(cyc))
            if c == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return Certificate("Unknown", flipped)


# -- critical pairs and confluence ----------------------------------------------

@dataclass(frozen=True)
class CriticalPair:
    kind: str          # "overlap" | "containment"
    word: Word
    first: Step
    second: Step
    results: tuple     # (word after first, word after second)


def critical_pairs(K: DirectedComplex, rv: RewritingView | None = None) -> list:
    rv = rv or view(K)
    out = []
    seen = set()
    for r1 in rv.rules:
        for r2 in rv.rules:
            t1, t2 = r1.lhs, r2.lhs
            # overlap: t1 = p s, t2 = s q with p, q, s non-empty
            for k in range(1, min(len(t1), len(t2))):
                if t1[len(t1) - k:] == t2[:k]:
                    key = ("overlap", r1.ref.cell, r2.ref.cell, len(t1) - k)
                    if key in seen:
                        continue
                    seen.add(key)
                    w = t1 + t2[k:]
                    p = len(t1) - k
                    res = (r1.rhs + t2[k:], t1[:p] + r2.rhs)
                    out.append(CriticalPair("overlap", w, Step(0, r1.ref), Step(p, r2.ref), res))
            # containment: t2 occurs inside t1, distinct cells
            if r1.ref.cell != r2.ref.cell and len(t2) <= len(t1):
                for i in range(len(t1) - len(t2) + 1):
                    if t1[i:i + len(t2)] == t2:
                        key = ("containment", r1.ref.cell, r2.ref.cell, i)
                        if key in seen:
                            continue
                        seen.add(key)
                        res = (r1.rhs, t1[:i] + r2.rhs + t1[i + len(t2):])
                        out.append(CriticalPair("containment", t1, Step(0, r1.ref), Step(i, r2.ref), res))
    return out


@dataclass(frozen=True)
class Confluence:
    confluent: bool
    pair: CriticalPair | None = None
    normal_forms: tuple = ()

    def __str__(self):
        return "Confluent" if self.confluent else "NotConfluent"


def confluence_check(K: DirectedComplex, reorient: bool = True) -> Confluence:
    cert = noetherian_certificate(K, reorient)
    if cert.verdict != "Certified":
        raise RewritingError(f"confluence check needs a termination certificate (got {cert.verdict})")
    rv = view(K, reorient)
    for cp in critical_pairs(K, rv):
        a, b = rv.irr(cp.results[0]), rv.irr(cp.results[1])
        if a != b:
            return Confluence(False, cp, (a, b))
    return Confluence(True)


def is_complete(K: DirectedComplex) -> bool:
    if noetherian_certificate(K).verdict != "Certified":
        return False
    return confluence_check(K).confluent


def require_complete(K: DirectedComplex) -> RewritingView:
    key = "complete"
    if key not in K._memo:
        K._memo[key] = is_complete(K)
    if not K._memo[key]:
        raise RewritingError("the complex is not complete (Noetherian and confluent)")
    return view(K)


# -- completion by retract ---------------------------------------------------------

class IncompleteEnumeration(RewritingError):
    pass


def complete_by_retract(K: DirectedComplex, max_word_len: int = 6, max_classes: int = 64) -> DirectedComplex:
    """Add a cell per edge and per composable pair of touched homotopy classes.

    Classes are found by union-find over all words of length at most
    ``max_word_len`` joined by atomic steps that stay inside that bound.
    """
    words = [((), v) for v in range(len(K.vertices))]
    words = [w for w in words] + [(w, K.source(w)) for w in _words_up_to(K, max_word_len)]
    key = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (w, _), i in key.items():
        if not w:
            continue
        for c in K.signed_cells():
            t, b = K.top(c), K.bottom(c)
            for s in range(len(w) - len(t) + 1):
                if w[s:s + len(t)] == t:
                    w2 = w[:s] + b + w[s + len(t):]
                    if len(w2) <= max_word_len:
                        a, z = find(i), find(key[(w2, K.source(w2))])
                        if a != z:
                            parent[a] = z
    classes: dict = {}
    for (w, v), i in key.items():
        classes.setdefault(find(i), []).append((w, v))
    rep = {}
    for root, members in classes.items():
        rep[root] = min(members, key=lambda m: K.shortlex(m[0]))
    cls_of = {m: root for root, members in classes.items() for m in members}
    # Only classes reached from edges and empty paths by multiplying
    # representatives are used; words near the length bound can look
    # isolated without being so.
    touched = [cls_of[((), v)] for v in range(len(K.vertices))]
    touched += [cls_of[((i,), e.src)] for i, e in enumerate(K.edges)]
    touched = list(dict.fromkeys(touched))
    k = 0
    while k < len(touched):
        for U in touched[:k + 1]:
            for a, b in ((U, touched[k]), (touched[k], U)):
                pu, su = rep[a]
                pv, sv = rep[b]
                if sv != K.target(pu, su):
                    continue
                w = pu + pv
                if len(w) > max_word_len:
                    raise IncompleteEnumeration(
                        f"product {K.fmt(w)} of class representatives exceeds max_word_len")
                W = cls_of[(w, K.source(w, su))]
                if W not in touched:
                    touched.append(W)
                    if len(touched) > max_classes:
                        raise IncompleteEnumeration(
                            f"more than max_classes={max_classes} homotopy classes are needed")
        k += 1
    cells = list(K.cells)
    names = {c.name for c in K.cells}

    def fresh(base):
        n, k = base, 0
        while n in names:
            k += 1
            n = f"{base}_{k}"
        names.add(n)
        return n

    for i, e in enumerate(K.edges):
        p = rep[cls_of[((i,), e.src)]][0]
        cells.append(Cell(fresh(f"r_{e.name}"), (i,), p))
    roots = sorted(touched, key=lambda r: K.shortlex(rep[r][0]) + (rep[r][1],))
    for U in roots:
        pu, su = rep[U]
        for V in roots:
            pv, sv = rep[V]
            if sv != K.target(pu, su):
                continue
            w = pu + pv
            if not w:
                continue
            pw = rep[cls_of[(w, K.source(w))]][0]
            cells.append(Cell(fresh(f"r_{K.fmt(pu).replace(' ', '')}_{K.fmt(pv).replace(' ', '')}"), w, pw))
    oriented = []
    for c in cells:
        if c.top != c.bottom and K.shortlex(c.top) < K.shortlex(c.bottom):
            c = Cell(c.name, c.bottom, c.top)
        oriented.append(c)
    return DirectedComplex(K.vertices, [Edge(*e) for e in K.edges], oriented)
