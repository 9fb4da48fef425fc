"""Line-based text formats for complexes, diagrams, morphisms and forests."""

from __future__ import annotations

import re
from pathlib import Path

from .complex import Cell, ComplexError, DirectedComplex, Edge, from_presentation
from .diagrams import Diagram, Step
from .morphism import Morphism, validate_morphism


class ParseError(ComplexError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _at(n, fn, *args):
    """Call fn, tagging lookup errors with the input line number."""
    try:
        return fn(*args)
    except ParseError:
        raise
    except (ComplexError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        if isinstance(exc, KeyError):
            msg = f"unknown name {msg!r}"
        raise ParseError(msg, n) from None


def parse_complex(text: str) -> DirectedComplex:
    lines = list(_lines(text))
    if lines and lines[0][1] == "presentation":
        return _parse_presentation(lines[1:])
    vertices, edges, cells = [], [], []
    seen_v = set()
    for n, line in lines:
        head, _, rest = line.partition(" ")
        if head == "vertex":
            v = rest.strip()
            if not v or " " in v:
                raise ParseError("expected `vertex <id>`", n)
            if v in seen_v:
                raise ParseError(f"duplicate vertex id {v!r}", n)
            seen_v.add(v)
            vertices.append(v)
        elif head == "edge":
            m = re.fullmatch(r"([^\s:]+)(?:\s*:\s*(\S+)\s*->\s*(\S+))?", rest.strip())
            if not m:
                raise ParseError("expected `edge <id>: <src> -> <dst>`", n)
            e, s, t = m.groups()
            edges.append((n, e, s or "*", t or "*"))
        elif head == "cell":
            m = re.fullmatch(r"(\S+)\s*:\s*(.*?)\s*=>\s*(.*)", rest.strip())
            if not m:
                raise ParseError("expected `cell <id>: <edges> => <edges>`", n)
            cells.append((n, m.group(1), m.group(2).split(), m.group(3).split()))
        else:
            raise ParseError(f"unknown directive {head!r}", n)
    if not vertices:
        # one-vertex shorthand: bare `edge <id>` lines are loops at "v"
        named = sorted({x for _, _, s, t in edges for x in (s, t)} - {"*"})
        if len(named) > 1:
            raise ParseError("complexes with several vertices must declare them")
        vertices = named or ["v"]
    if len(vertices) == 1:
        edges = [(n, e, vertices[0] if s == "*" else s, vertices[0] if t == "*" else t)
                 for n, e, s, t in edges]
    vidx = {v: i for i, v in enumerate(vertices)}
    E = []
    names = {}
    for n, e, s, t in edges:
        if e in names:
            raise ParseError(f"duplicate edge id {e!r}", n)
        if s not in vidx or t not in vidx:
            raise ParseError(f"edge {e} uses an undeclared vertex", n)
        names[e] = len(E)
        E.append(Edge(e, vidx[s], vidx[t]))
    C = []
    cnames = set()
    for n, c, top, bot in cells:
        if c in cnames:
            raise ParseError(f"duplicate cell id {c!r}", n)
        cnames.add(c)
        try:
            C.append(Cell(c, tuple(names[x] for x in top), tuple(names[x] for x in bot)))
        except KeyError as exc:
            raise ParseError(f"cell {c} uses unknown edge {exc.args[0]!r}", n) from None
    try:
        return DirectedComplex(vertices, E, C)
    except ComplexError as exc:
        raise ParseError(str(exc)) from None


def _parse_presentation(lines):
    letters = None
    rules = []
    for n, line in lines:
        if line.startswith("letters:"):
            letters = line.split(":", 1)[1].split()
        elif line.startswith("rule"):
            m = re.fullmatch(r"rule\s+(\S+)\s*:\s*(.*?)\s*=>\s*(.*)", line)
            if not m:
                raise ParseError("expected `rule <id>: <letters> => <letters>`", n)
            rules.append((m.group(1), m.group(2).split(), m.group(3).split()))
        else:
            raise ParseError(f"unexpected line in presentation: {line!r}", n)
    if letters is None:
        raise ParseError("presentation needs a `letters:` line")
    return from_presentation(letters, rules)


def serialize_complex(K: DirectedComplex) -> str:
    lines = [f"vertex {v}" for v in K.vertices]
    for e in K.edges:
        lines.append(f"edge {e.name}: {K.vertices[e.src]} -> {K.vertices[e.dst]}")
    for c in K.cells:
        top = " ".join(K.edges[i].name for i in c.top)
        bot = " ".join(K.edges[i].name for i in c.bottom)
        lines.append(f"cell {c.name}: {top} => {bot}")
    return "\n".join(lines) + "\n"


def load_complex(path) -> DirectedComplex:
    return parse_complex(Path(path).read_text())


# -- diagrams ---------------------------------------------------------------------

_STEP = re.compile(r"\(\s*(\d+)\s*,\s*([^)\s]+)\s*\)")


def parse_steps(K: DirectedComplex, text: str) -> tuple:
    steps = []
    pos = 0
    text = text.strip()
    for m in _STEP.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"cannot read step list near {text[pos:m.start()]!r}")
        steps.append(Step(int(m.group(1)), K.cell_ref(m.group(2))))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"cannot read step list near {text[pos:]!r}")
    return tuple(steps)


def parse_diagram(K: DirectedComplex, text: str) -> Diagram:
    top = None
    steps = ()
    anchor = None
    for n, line in _lines(text):
        if line.startswith("top:"):
            body = line[4:].strip()
            if body.startswith("@"):
                anchor = _at(n, K.vertex_index.__getitem__, body[1:])
                body = ""
            top = _at(n, K.word, body)
        elif line.startswith("steps:"):
            steps += _at(n, parse_steps, K, line[6:])
        elif line.startswith("("):
            steps += _at(n, parse_steps, K, line)
        else:
            raise ParseError("expected `top:` or `steps:`", n)
    if top is None:
        raise ParseError("diagram needs a `top:` line")
    return Diagram(K, top, steps, K.source(top, anchor))


def serialize_diagram(d: Diagram) -> str:
    K = d.K
    top = " ".join(K.edges[i].name for i in d.top)
    steps = " ".join(f"({s.offset}, {K.fmt_cell(s.cell)})" for s in d.steps)
    return f"top: {top}\nsteps: {steps}\n".replace(" \n", "\n")


def load_diagram(K, path) -> Diagram:
    return parse_diagram(K, Path(path).read_text())


# -- morphisms ----------------------------------------------------------------------

def parse_morphism(src: DirectedComplex, dst: DirectedComplex, text: str, base_dir=None) -> Morphism:
    vmap, emap, cmap = {}, {}, {}
    for n, line in _lines(text):
        head, _, rest = line.partition(" ")
        lhs, arrow, rhs = rest.partition("->")
        if not arrow:
            raise ParseError("expected `<kind> <id> -> <image>`", n)
        lhs, rhs = lhs.strip(), rhs.strip()
        if head == "vertex":
            vmap[lhs] = rhs
        elif head == "edge":
            emap[lhs] = dst.word(rhs)
        elif head == "cell":
            if lhs not in src.cell_index:
                raise ParseError(f"unknown cell {lhs!r}", n)
            cmap[lhs] = rhs
        else:
            raise ParseError(f"unknown directive {head!r}", n)
    diagrams = {}
    for name, rhs in cmap.items():
        c = src.cells[src.cell_index[name]]
        if rhs.startswith("@"):
            p = Path(rhs[1:])
            if base_dir is not None and not p.is_absolute():
                p = Path(base_dir) / p
            diagrams[name] = parse_diagram(dst, p.read_text())
        else:
            top = ()
            for e in c.top:
                top += emap.get(src.edges[e].name, ())
            diagrams[name] = Diagram(dst, top, parse_steps(dst, rhs), dst.source(top))
    return validate_morphism(src, dst, vmap or None, emap, diagrams)


# -- forests -------------------------------------------------------------------------

def parse_forest(K: DirectedComplex, text: str):
    """Lines ``<context edges or 1> | <cell>[^-1]`` (left) or
    ``<cell>[^-1] | <context>`` (right); an optional ``right`` header line."""
    kind = "left"
    pairs = []
    for n, line in _lines(text):
        if line in ("left", "right"):
            kind = line
            continue
        a, bar, b = line.partition("|")
        if not bar:
            raise ParseError("expected `<word> | <cell>`", n)
        if kind == "left":
            pairs.append((_at(n, K.word, a.strip()), _at(n, K.cell_ref, b.strip())))
        else:
            pairs.append((_at(n, K.cell_ref, a.strip()), _at(n, K.word, b.strip())))
    return kind, pairs
