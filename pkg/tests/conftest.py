import random
import sys
from pathlib import Path

import pytest

from diagroups.diagrams import Diagram, Step, apply_step, canonical, identity, swap
from diagroups.fixtures import f_generators
from diagroups.presentation import evaluate

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def applicable(K, w, max_len=None):
    """Every step (offset, signed cell) that applies to the word w."""
    out = []
    for f in K.signed_cells():
        t = K.top(f)
        for s in range(len(w) - len(t) + 1):
            if w[s:s + len(t)] == t:
                if max_len is None or len(w) - len(t) + len(K.bottom(f)) <= max_len:
                    out.append(Step(s, f))
    return out


def random_diagram(K, top, n, rng, max_len=6):
    """A random 2-path with at most n steps from ``top``."""
    w = tuple(top)
    steps = []
    for _ in range(n):
        opts = applicable(K, w, max_len)
        if not opts:
            break
        s = rng.choice(opts)
        steps.append(s)
        w = apply_step(K, w, s)
    return Diagram(K, tuple(top), tuple(steps), K.source(top))


def all_step_sequences(K, top, max_cells, max_len):
    """Every 2-path from top with at most max_cells steps and bounded words."""
    out = []

    def rec(w, steps):
        out.append(tuple(steps))
        if len(steps) == max_cells:
            return
        for s in applicable(K, w, max_len):
            rec(apply_step(K, w, s), steps + [s])

    rec(tuple(top), [])
    return out


def swap_closure(K, seq):
    """All step orders reachable by swapping adjacent independent steps."""
    seen = {tuple(seq)}
    todo = [tuple(seq)]
    while todo:
        s = todo.pop()
        for i in range(len(s) - 1):
            r = swap(K, s[i], s[i + 1])
            if r is not None:
                t = s[:i] + r + s[i + 2:]
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    return seen


def brute_reduce(K, top, seq, memo):
    """All end results of cancelling adjacent dipoles in every order."""
    key = frozenset(swap_closure(K, seq))
    if key in memo:
        return memo[key]
    results = set()
    for s in key:
        for i in range(len(s) - 1):
            if s[i + 1].cell == s[i].cell.inv() and s[i + 1].offset == s[i].offset:
                results |= brute_reduce(K, top, s[:i] + s[i + 2:], memo)
    if not results:
        results = {canonical(Diagram(K, top, tuple(seq))).steps}
    memo[key] = results
    return results


def random_f_element(K, rng, length):
    """A random product of the generators x0, x1 and their inverses."""
    gens = f_generators(K)
    word = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(length)]
    return evaluate(word, gens, identity(K, gens[0].top))


@pytest.fixture
def rng():
    return random.Random(20261015)


# acceptance lines, filled by test_acceptance.py and echoed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
