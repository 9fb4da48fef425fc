"""Diagrams stored as 2-paths: a top word plus a list of atomic steps.

Isotopy of diagrams is the congruence generated by swapping adjacent
independent steps, so a diagram is an element of a trace-like structure and
has a lexicographically least representative (:func:`canonical`). Reduction
removes dipoles until none are left (:func:`reduce`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .complex import CellRef, ComplexError, DirectedComplex, Word


class DiagramError(ValueError):
    pass


class Step(NamedTuple):
    offset: int
    cell: CellRef


def apply_step(K: DirectedComplex, word: Word, step: Step) -> Word:
    t = K.top(step.cell)
    o = step.offset
    if o < 0 or word[o:o + len(t)] != t:
        raise DiagramError(
            f"step ({o}, {K.fmt_cell(step.cell)}) does not apply to {K.fmt(word)}")
    return word[:o] + K.bottom(step.cell) + word[o + len(t):]


@dataclass(frozen=True)
class Diagram:
    K: DirectedComplex = field(compare=False, repr=False)
    top: Word
    steps: tuple = ()
    start: int = 0  # initial vertex, needed when the top word is empty

    def __post_init__(self):
        w = self.top
        for s in self.steps:
            w = apply_step(self.K, w, s)
        object.__setattr__(self, "_bottom", w)

    @property
    def bottom(self) -> Word:
        return self._bottom  # type: ignore[attr-defined]

    @property
    def end(self) -> int:
        return self.K.target(self.top, self.start)

    def __len__(self):
        return len(self.steps)

    def words(self) -> list:
        out = [self.top]
        for s in self.steps:
            out.append(apply_step(self.K, out[-1], s))
        return out

    def is_spherical(self) -> bool:
        return self.top == self.bottom

    def fmt(self) -> str:
        K = self.K
        steps = " ".join(f"({s.offset}, {K.fmt_cell(s.cell)})" for s in self.steps)
        return f"top: {K.fmt(self.top)}\nsteps: {steps}".rstrip()

    def __str__(self):
        return self.fmt()


def identity(K: DirectedComplex, w: Word, start: int | None = None) -> Diagram:
    """The trivial diagram eps(w)."""
    return Diagram(K, tuple(w), (), K.source(w, start))


def diagram(K: DirectedComplex, top: Word, steps, start: int | None = None) -> Diagram:
    steps = tuple(Step(o, c if isinstance(c, CellRef) else CellRef(*c)) for o, c in steps)
    return Diagram(K, tuple(top), steps, K.source(top, start))


def atomic(K: DirectedComplex, p: Word, f: CellRef, q: Word) -> Diagram:
    if K.target(p, K.cell_source(f)) != K.cell_source(f) or \
            K.source(q, K.cell_target(f)) != K.cell_target(f):
        raise DiagramError("endpoint mismatch in atomic 2-path")
    top = tuple(p) + K.top(f) + tuple(q)
    return Diagram(K, top, (Step(len(p), f),), K.source(top))


# -- commutation ------------------------------------------------------------

def _delta(K, f: CellRef) -> int:
    return len(K.bottom(f)) - len(K.top(f))


def swap(K: DirectedComplex, a: Step, b: Step):
    """Swap adjacent steps ``a`` then ``b``; return ``(b', a')`` or None.

    None means the steps are not independent (b's top segment meets a's
    bottom segment).
    """
    a_bot_end = a.offset + len(K.bottom(a.cell))
    b_end = b.offset + len(K.top(b.cell))
    if b_end <= a.offset:
        return b, Step(a.offset + _delta(K, b.cell), a.cell)
    if b.offset >= a_bot_end:
        return Step(b.offset - _delta(K, a.cell), b.cell), a
    return None


def _key(s: Step):
    return (s.offset, s.cell.cell, 0 if s.cell.sign > 0 else 1)


def _bubble_front(K, steps: list, k: int):
    """Move steps[k] to the front by legal swaps; return (moved, rest) or None."""
    cur = steps[k]
    rest = steps[:k]
    tail = []
    for j in range(k - 1, -1, -1):
        r = swap(K, rest[j], cur)
        if r is None:
            return None
        cur, moved_a = r
        tail.append(moved_a)
    return cur, list(reversed(tail)) + steps[k + 1:]


def canonical_steps(K: DirectedComplex, steps) -> tuple:
    rem = list(steps)
    out = []
    while rem:
        best = None
        for k in range(len(rem)):
            r = _bubble_front(K, rem, k)
            if r is not None and (best is None or _key(r[0]) < _key(best[0])):
                best = r
        out.append(best[0])
        rem = best[1]
    return tuple(out)


def canonical(d: Diagram) -> Diagram:
    return Diagram(d.K, d.top, canonical_steps(d.K, d.steps), d.start)


def isotopic(d1: Diagram, d2: Diagram) -> bool:
    return d1.top == d2.top and canonical(d1).steps == canonical(d2).steps


# -- reduction ----------------------------------------------------------------

def _find_dipole(K, steps: list):
    for i, a in enumerate(steps):
        inv = a.cell.inv()
        for j in range(i + 1, len(steps)):
            if steps[j].cell != inv:
                continue
            cur = steps[j]
            mid = steps[i + 1:j]
            moved = []
            ok = True
            for k in range(len(mid) - 1, -1, -1):
                r = swap(K, mid[k], cur)
                if r is None:
                    ok = False
                    break
                cur, m = r
                moved.append(m)
            if ok and cur.offset == a.offset:
                return steps[:i] + list(reversed(moved)) + steps[j + 1:]
    return None


def reduce(d: Diagram) -> Diagram:
    """The unique reduced diagram equivalent to ``d``, in canonical form."""
    steps = list(canonical_steps(d.K, d.steps))
    while True:
        nxt = _find_dipole(d.K, steps)
        if nxt is None:
            return Diagram(d.K, d.top, tuple(steps), d.start)
        steps = list(canonical_steps(d.K, nxt))


def is_reduced(d: Diagram) -> bool:
    return _find_dipole(d.K, list(d.steps)) is None


# -- groupoid operations ----------------------------------------------------

def concat(d1: Diagram, d2: Diagram) -> Diagram:
    if d1.bottom != d2.top or (not d1.bottom and d1.end != d2.start):
        raise DiagramError("bottom of the first diagram differs from top of the second")
    return canonical(Diagram(d1.K, d1.top, d1.steps + d2.steps, d1.start))


def sum_(d1: Diagram, d2: Diagram) -> Diagram:
    K = d1.K
    if d1.end != d2.start:
        raise DiagramError("endpoint mismatch in sum")
    shift = len(d1.bottom)
    steps = d1.steps + tuple(Step(s.offset + shift, s.cell) for s in d2.steps)
    return canonical(Diagram(K, d1.top + d2.top, steps, d1.start))


def inverse(d: Diagram) -> Diagram:
    steps = tuple(Step(s.offset, s.cell.inv()) for s in reversed(d.steps))
    return canonical(Diagram(d.K, d.bottom, steps, d.start))


def mult(d1: Diagram, d2: Diagram) -> Diagram:
    for d in (d1, d2):
        if not d.is_spherical():
            raise DiagramError("mult needs spherical diagrams")
        if not d.top:
            raise DiagramError("diagrams at the empty base are not supported")
    if d1.top != d2.top:
        raise DiagramError("base mismatch")
    return reduce(concat(d1, d2))


def transport(d: Diagram, g: Diagram) -> Diagram:
    if not d.is_spherical() or not d.top:
        raise DiagramError("transport needs a spherical diagram at a non-empty base")
    if g.top != d.top:
        raise DiagramError("shape mismatch: g must start at the base of d")
    return reduce(concat(concat(inverse(g), d), g))


def power(d: Diagram, n: int) -> Diagram:
    out = identity(d.K, d.top, d.start)
    base = d if n >= 0 else inverse(d)
    for _ in range(abs(n)):
        out = mult(out, base)
    return out
