"""Command-line front end: ``diagroups <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cover import build_cover
from .diagrams import mult, reduce
from .homology import EXTERNAL_BANNER, betti_numbers, geometric_dimension, poincare_series
from .io import (load_complex, load_diagram, parse_forest, parse_morphism, serialize_complex,
                 serialize_diagram)
from .morphism import substitute
from .presentation import minimal_presentation, verify_relations, wirtinger_presentation
from .rewriting import complete_by_retract, confluence_check, critical_pairs, noetherian_certificate, view
from .squier import census, census_csv, component, export_dot, external_forest, left_forest


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagroups", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def cmd(name, help, base=False):
        s = sub.add_parser(name, help=help)
        s.add_argument("--complex", required=True, metavar="PATH")
        if base:
            s.add_argument("--base", required=True, metavar="WORD")
        s.add_argument("--json", action="store_true")
        return s

    s = cmd("check", "termination certificate and confluence verdict")
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--no-reorient", action="store_true")

    s = cmd("reduce", "reduce a diagram")
    s.add_argument("--diagram", required=True, metavar="PATH")

    s = cmd("mult", "product of spherical diagrams")
    s.add_argument("--diagram", required=True, action="append", metavar="PATH")

    s = cmd("present", "presentation of the diagram group", base=True)
    s.add_argument("--max-len", type=int)
    s.add_argument("--max-vertices", type=int, default=10000)
    s.add_argument("--wirtinger", action="store_true")
    s.add_argument("--verify", action="store_true")

    s = cmd("homology", "integer homology ranks", base=True)
    s.add_argument("--max-dim", type=int, default=4)
    s.add_argument("--max-len", type=int)
    s.add_argument("--forest", metavar="PATH")

    cmd("poincare", "rational Poincare series", base=True)

    s = cmd("squier", "bounded Squier component and cube census", base=True)
    s.add_argument("--max-len", type=int, default=8)
    s.add_argument("--max-vertices", type=int, default=10000)
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("--dot", metavar="PATH")

    s = cmd("cover", "truncated universal 2-cover", base=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--stats", action="store_true")

    s = cmd("complete", "completion by adding cells")
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--max-classes", type=int, default=64)

    s = cmd("morphism", "validate a morphism, optionally mapping a diagram")
    s.add_argument("--target", required=True, metavar="PATH")
    s.add_argument("--morphism", required=True, metavar="PATH")
    s.add_argument("--diagram", metavar="PATH")
    return p


def _check(a, K, out):
    rv = view(K, not a.no_reorient)
    cert = noetherian_certificate(K, not a.no_reorient, a.max_len)
    pairs = critical_pairs(K, rv)
    data = {"certificate": cert.verdict, "reoriented": list(cert.reoriented),
            "critical_pairs": len(pairs)}
    lines = [f"certificate: {cert.verdict}"]
    if cert.reoriented:
        lines.append("reoriented: " + " ".join(cert.reoriented))
    if cert.cycle:
        cyc = " -> ".join(K.fmt(w) for w in cert.cycle)
        lines.append(f"cycle: {cyc}")
        data["cycle"] = [K.fmt(w) for w in cert.cycle]
    lines.append(f"critical pairs: {len(pairs)}")
    if cert.verdict == "Certified":
        conf = confluence_check(K, not a.no_reorient)
        lines.append(f"confluence: {conf}")
        data["confluence"] = str(conf)
        if conf.pair is not None:
            w = K.fmt(conf.pair.word)
            nf = " / ".join(K.fmt(x) for x in conf.normal_forms)
            lines.append(f"witness: {w} -> {nf}")
            data["witness"] = {"word": w, "normal_forms": [K.fmt(x) for x in conf.normal_forms]}
    else:
        lines.append("confluence: Unknown (no termination certificate)")
        data["confluence"] = "Unknown"
    _emit(out, a, lines, data)


def _reduce(a, K, out):
    d = reduce(load_diagram(K, a.diagram))
    out.write(serialize_diagram(d))
    out.write(f"cells: {len(d)}\n")


def _mult(a, K, out):
    ds = [load_diagram(K, p) for p in a.diagram]
    d = ds[0]
    for e in ds[1:]:
        d = mult(d, e)
    d = reduce(d)
    out.write(serialize_diagram(d))
    out.write(f"cells: {len(d)}\n")


def _present(a, K, out):
    w = K.word(a.base)
    if a.wirtinger:
        pres = wirtinger_presentation(K, w, a.max_len or 8, a.max_vertices)
    else:
        pres = minimal_presentation(K, w, a.max_len)
    out.write(pres.as_json() + "\n" if a.json else pres.text())
    if a.verify:
        bad = verify_relations(pres)
        out.write("verified: all relations\n" if not bad else f"failed relations: {bad}\n")


def _homology(a, K, out):
    w = K.word(a.base)
    forest = None
    if a.forest:
        kind, pairs = parse_forest(K, Path(a.forest).read_text())
        forest = external_forest(K, pairs, kind)
        if a.max_len is None:
            raise UsageError("--forest needs --max-len to bound the class semigroup")
    r = betti_numbers(K, w, a.max_dim, forest, a.max_len)
    lines = []
    if forest is not None:
        lines.append(f"# {EXTERNAL_BANNER}")
    lines.append("r: " + " ".join(map(str, r)))
    data = {"betti": r}
    if forest is None and a.max_len is None:
        series = poincare_series(K, w)
        dim, _ = geometric_dimension(K, w)
        lines += [f"series: {series}", f"dimension: {dim}"]
        data.update(series=str(series), dimension=dim)
    _emit(out, a, lines, data)


def _poincare(a, K, out):
    series = poincare_series(K, K.word(a.base))
    _emit(out, a, [str(series)], {"series": str(series), "num": series.num, "den": series.den})


def _squier(a, K, out):
    comp = component(K, K.word(a.base), a.max_len, a.max_vertices)
    if a.dot:
        Path(a.dot).write_text(export_dot(comp))
    lines = [f"vertices: {len(comp.vertices)}", f"edges: {len(comp.edges)}",
             f"exhaustive: {'yes' if comp.exhaustive else 'no'}"]
    counts = census(comp, left_forest(K), a.max_dim)
    if a.json:
        data = {"vertices": len(comp.vertices), "edges": len(comp.edges),
                "exhaustive": comp.exhaustive,
                "census": [[n, k, v] for (n, k), v in sorted(counts.items())]}
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
        return
    out.write("\n".join(lines) + "\n")
    out.write(census_csv(counts))


def _cover(a, K, out):
    cov = build_cover(K, K.word(a.base), a.level)
    if a.stats:
        rows = [cov.counts(n) for n in range(a.level + 1)]
        lines = [f"level {n}: vertices {v} edges {e} cells {c}" for n, (v, e, c) in enumerate(rows)]
        _emit(out, a, lines, {"levels": [list(r) for r in rows]})
    else:
        out.write(cov.dump())


def _complete(a, K, out):
    out.write(serialize_complex(complete_by_retract(K, a.max_len, a.max_classes)))


def _morphism(a, K, out):
    dst = load_complex(a.target)
    m = parse_morphism(K, dst, Path(a.morphism).read_text(), Path(a.morphism).parent)
    out.write("morphism: valid\n")
    if a.diagram:
        d = substitute(load_diagram(K, a.diagram), m)
        out.write(serialize_diagram(d))


def _emit(out, a, lines, data):
    if a.json:
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


COMMANDS = {"check": _check, "reduce": _reduce, "mult": _mult, "present": _present,
            "homology": _homology, "poincare": _poincare, "squier": _squier, "cover": _cover,
            "complete": _complete, "morphism": _morphism}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = _parser().parse_args(argv)
        K = load_complex(a.complex)
        COMMANDS[a.cmd](a, K, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:        # --help
        return int(exc.code or 0)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:        # every domain error derives from ValueError
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
