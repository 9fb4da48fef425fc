"""Betti numbers, Poincare series and geometric dimension of diagram groups
of complete complexes, via counting essential cubes with a finite automaton.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .complex import ComplexError, DirectedComplex, Word
from .rewriting import require_complete, view
from .squier import Forest, ThinCube, bar, classify_cube, cube_faces, left_forest

EXTERNAL_BANNER = "forest supplied externally; completeness not certified"


class HomologyError(ComplexError):
    pass


# -- class semigroup ---------------------------------------------------------------

@dataclass(frozen=True)
class Elem:
    """A homotopy class: its irreducible word with explicit endpoints."""
    src: int
    dst: int
    word: Word


class ClassSemigroup:
    """Irreducible words under p*q = irr(pq); ``None`` plays the zero.

    With ``max_len`` set the element list is truncated to words of that
    length and ``exact`` is False unless the closure stayed inside it.
    """

    def __init__(self, K: DirectedComplex, max_elements: int = 2000, max_len: int | None = None,
                 forest: Forest | None = None):
        self.K = K
        self.rv = view(K)
        if forest is None:
            require_complete(K)
        gens = [Elem(v, v, ()) for v in range(len(K.vertices))]
        gens += [self.make((i,)) for i in range(len(K.edges))]
        elems = list(dict.fromkeys(gens))
        seen = set(elems)
        frontier = list(elems)
        self.exact = True
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    for p in (self.mul(a, g), self.mul(g, a)):
                        if p is None or p in seen:
                            continue
                        if max_len is not None and len(p.word) > max_len:
                            self.exact = False
                            continue
                        seen.add(p)
                        elems.append(p)
                        nxt.append(p)
                        if len(elems) > max_elements:
                            raise HomologyError(
                                "class semigroup exceeds the bound: the complex is not almost "
                                "2-path connected within bounds")
            frontier = nxt
        self.elements = sorted(elems, key=lambda e: (K.shortlex(e.word), e.src, e.dst))

    def make(self, w: Word, src: int | None = None) -> Elem:
        K = self.K
        s = K.source(w, src)
        r = self.rv.irr(w)
        return Elem(s, K.target(w, s), r)

    def mul(self, a: Elem | None, b: Elem | None) -> Elem | None:
        if a is None or b is None or a.dst != b.src:
            return None
        return Elem(a.src, b.dst, self.rv.irr(a.word + b.word))


def class_semigroup(K: DirectedComplex, max_elements: int = 2000) -> ClassSemigroup:
    return ClassSemigroup(K, max_elements)


# -- counting automaton -------------------------------------------------------------

START = "start"


class CountAutomaton:
    """Letters are pairs (u, f) not in the left forest; a word of n letters
    followed by a final irreducible u_n is an essential n-cube whose top is
    homotopic to the base."""

    def __init__(self, K: DirectedComplex, w: Word, forest: Forest | None = None,
                 max_len: int | None = None, max_elements: int = 2000):
        if not w:
            raise HomologyError("the base word must be non-empty")
        self.K = K
        self.external = forest is not None and forest.external
        self.S = ClassSemigroup(K, max_elements, max_len, forest)
        self.forest = forest or left_forest(K)
        rv = self.S.rv
        self.target = self.S.make(w)
        self.letters = []   # (u, f, value)
        for u in self.S.elements:
            for f in rv.negative_cells():
                if K.cell_source(f) != u.dst:
                    continue
                if (u.word, f) in self.forest:
                    continue
                val = Elem(u.src, K.cell_target(f), rv.irr(u.word + K.top(f)))
                self.letters.append((u, f, val))
        self.finals = list(self.S.elements)

    @property
    def exact(self) -> bool:
        return self.S.exact

    def step(self, state, value):
        if state == START:
            return value
        return self.S.mul(state, value)

    def accepts(self, state, u) -> bool:
        return self.step(state, u) == self.target

    def transitions(self, state):
        for u, f, val in self.letters:
            nxt = self.step(state, val)
            if nxt is not None:
                yield (u, f), nxt

    def states(self):
        """Reachable non-zero states."""
        seen = {START}
        order = [START]
        i = 0
        while i < len(order):
            for _, nxt in self.transitions(order[i]):
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
            i += 1
        return order

    def accept_count(self, state) -> int:
        return sum(1 for u in self.finals if self.accepts(state, u))


def _automaton(K, w, forest=None, max_len=None):
    w = K.word(w) if not isinstance(w, tuple) else w
    return CountAutomaton(K, w, forest, max_len)


def betti_numbers(K: DirectedComplex, w, n_max: int, forest: Forest | None = None,
                  max_len: int | None = None) -> list:
    """Ranks r_0 .. r_{n_max} by dynamic programming over automaton states."""
    A = _automaton(K, w, forest, max_len)
    counts = {START: 1}
    out = []
    for n in range(n_max + 1):
        out.append(sum(c * A.accept_count(s) for s, c in counts.items()))
        nxt = defaultdict(int)
        for s, c in counts.items():
            for _, t in A.transitions(s):
                nxt[t] += c
        counts = nxt
    return out


def betti(K: DirectedComplex, w, n: int, **kw) -> int:
    return betti_numbers(K, w, n, **kw)[n]


def essential_cubes(K: DirectedComplex, w, n: int, forest: Forest | None = None,
                    max_len: int | None = None) -> list:
    """All essential n-cubes whose top is homotopic to w, in deterministic order."""
    A = _automaton(K, w, forest, max_len)
    out = []

    def rec(state, words, cells):
        if len(cells) == n:
            for u in A.finals:
                if A.accepts(state, u):
                    out.append(ThinCube(tuple(words) + (u.word,), tuple(cells)))
            return
        for (u, f), t in A.transitions(state):
            rec(t, words + [u.word], cells + [f])

    rec(START, [], [])
    return out


# -- rational generating function ------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """num/den with integer coefficients in ascending degree, den[0] == 1."""
    num: tuple
    den: tuple

    @staticmethod
    def from_sympy(expr, t) -> "RationalFunction":
        n, d = sympy.fraction(sympy.cancel(sympy.together(expr)))
        pn, pd = sympy.Poly(n, t), sympy.Poly(d, t)
        c0 = _frac(pd.eval(0))
        if c0 == 0:
            raise HomologyError("series has a pole at t = 0")
        num = [_frac(c) / c0 for c in reversed(pn.all_coeffs())]
        den = [_frac(c) / c0 for c in reversed(pd.all_coeffs())]
        if any(c.denominator != 1 for c in num + den):
            raise HomologyError("non-integral normalized series")
        return RationalFunction(_trim([int(c) for c in num]), _trim([int(c) for c in den]))

    def as_sympy(self, t=None):
        t = t if t is not None else sympy.Symbol("t")
        num = sum(c * t ** i for i, c in enumerate(self.num))
        den = sum(c * t ** i for i, c in enumerate(self.den))
        return num / den

    def coefficients(self, n: int) -> list:
        out = []
        for k in range(n):
            a = self.num[k] if k < len(self.num) else 0
            a -= sum(self.den[j] * out[k - j] for j in range(1, min(k, len(self.den) - 1) + 1))
            out.append(a)
        return out

    def __str__(self):
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"


def _frac(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _trim(cs):
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_str(cs) -> str:
    out = ""
    for k, c in enumerate(cs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = str(mag) if (k == 0 or mag != 1) else ""
        term = body + mono
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += ("-" if c < 0 else "+") + term
    return out or "0"


def poincare_series(K: DirectedComplex, w, forest: Forest | None = None) -> RationalFunction:
    """Solve x = F + t M x exactly over Q(t); the series is x[start]."""
    A = _automaton(K, w, forest)
    if not A.exact:
        raise HomologyError("class semigroup is not finite")
    states = A.states()
    idx = {s: i for i, s in enumerate(states)}
    n = len(states)
    t = sympy.Symbol("t")
    M = sympy.zeros(n, n)
    F = sympy.zeros(n, 1)
    for s in states:
        F[idx[s], 0] = A.accept_count(s)
        for _, nxt in A.transitions(s):
            M[idx[s], idx[nxt]] += 1
    sol = (sympy.eye(n) - t * M).LUsolve(F)
    return RationalFunction.from_sympy(sol[idx[START], 0], t)


# -- geometric dimension --------------------------------------------------------------

INFINITE = "Infinite"


def geometric_dimension(K: DirectedComplex, w, n_max: int | None = None,
                        forest: Forest | None = None):
    """``(dimension or "Infinite", exact)`` from the useful part of the automaton."""
    A = _automaton(K, w, forest)
    states = A.states()
    succ = {s: [t for _, t in A.transitions(s)] for s in states}
    useful = {s for s in states if A.accept_count(s) > 0}
    changed = True
    while changed:
        changed = False
        for s in states:
            if s not in useful and any(t in useful for t in succ[s]):
                useful.add(s)
                changed = True
    # cycle detection on useful states
    color = {}

    def has_cycle(s):
        color[s] = 1
        for t in succ[s]:
            if t not in useful:
                continue
            c = color.get(t, 0)
            if c == 1 or (c == 0 and has_cycle(t)):
                return True
        color[s] = 2
        return False

    for s in states:
        if s in useful and color.get(s, 0) == 0 and has_cycle(s):
            return INFINITE, A.exact
    longest = {}

    def depth(s):
        if s not in longest:
            best = 0 if A.accept_count(s) > 0 else None
            for t in succ[s]:
                if t in useful:
                    d = depth(t)
                    if d is not None and (best is None or d + 1 > best):
                        best = d + 1
            longest[s] = best
        return longest[s]

    return depth(START) or 0, A.exact


# -- chains ----------------------------------------------------------------------------

def boundary(K: DirectedComplex, c: ThinCube) -> dict:
    """sum_i (-1)^i (top_i(c) - bot_i(c)) as a dict cube -> coefficient."""
    if c.dim == 0:
        raise HomologyError("the boundary of a 0-cube is not defined here")
    out = defaultdict(int)
    for i in range(1, c.dim + 1):
        sgn = -1 if i % 2 else 1
        out[cube_faces(K, c, i, 0)] += sgn
        out[cube_faces(K, c, i, 1)] -= sgn
    return {k: v for k, v in out.items() if v}


def chain_boundary(K, chain: dict) -> dict:
    out = defaultdict(int)
    for c, a in chain.items():
        for d, b in boundary(K, c).items():
            out[d] += a * b
    return {k: v for k, v in out.items() if v}


def phi(K: DirectedComplex, c: ThinCube, tl: Forest) -> dict:
    """c-bar if it is essential, 0 if it is collapsible."""
    cb = bar(K, c)
    kind = classify_cube(K, cb, tl).kind
    if kind == "essential":
        return {cb: 1}
    if kind == "collapsible":
        return {}
    raise HomologyError("bar of a cube cannot be redundant")


def phi_chain(K, chain: dict, tl: Forest) -> dict:
    out = defaultdict(int)
    for c, a in chain.items():
        for d, b in phi(K, c, tl).items():
            out[d] += a * b
    return {k: v for k, v in out.items() if v}
