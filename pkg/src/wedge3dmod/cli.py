"""Command line front end.

Every subcommand maps to one library call or to a suite of named checks.
Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import bott, dmodcat, quiverrep, schur
from . import charseries as cs
from . import weights as wt
from .spectral import SpectralGrid, ss_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue().rstrip("\n")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(wt.parse_weight(text, dominant=False))
    except ValueError as e:
        raise UsageError(str(e)) from None


# --------------------------------------------------------------------------- subcommands


def cmd_bott(a) -> tuple[str, int]:
    try:
        res = bott.cohomology(_ints(a.alpha), _ints(a.beta), a.k, a.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if a.format == "csv":
        return _csv([("degree", "weight")] + ([] if res.vanishing else [(res.degree, wt.format_weight(res.weight))])), 0
    return _dumps(res.to_json()), 0


def cmd_char(a) -> tuple[str, int]:
    if a.name not in cs.NAMES:
        raise UsageError(f"unknown character {a.name!r}")
    if a.weight is not None:
        mu = _ints(a.weight)
        if len(mu) != 6:
            raise UsageError("a weight needs 6 entries")
        c = cs.character_coefficient(a.name, mu)
        if a.format == "json":
            return _dumps({"name": a.name, "weight": list(mu), "multiplicity": c}), 0
        return str(c), 0
    if a.min_deg is None or a.max_deg is None:
        raise UsageError("give --weight or both --min-deg and --max-deg")
    try:
        window = cs.TruncationWindow.make(a.min_deg, a.max_deg, a.min_entry, a.max_entry)
        m = cs.named_character(a.name, window)
    except cs.WindowError as e:
        raise UsageError(f"{e}; bound the entries with --min-entry/--max-entry") from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    terms = sorted(m.terms.items())
    if a.format == "json":
        return m.dumps(), 0
    if a.format == "csv":
        return _csv([("weight", "multiplicity")] + [(wt.format_weight(k), v) for k, v in terms]), 0
    lines = [f"({wt.format_weight(k)})  {v}" for k, v in terms]
    lines.append(f"{len(terms)} weights")
    return "\n".join(lines), 0


def cmd_plethysm(a) -> tuple[str, int]:
    if a.of != "wedge3":
        raise UsageError("only --of wedge3 is supported")
    p = schur.plethysm(a.wedge, 3, 6)
    terms = sorted(p.terms.items(), reverse=True)
    total = sum(c * schur.weyl_dim(k) for k, c in terms)
    if a.format == "json":
        return _dumps({
            "terms": [{"weight": list(k), "multiplicity": c, "dim": schur.weyl_dim(k)} for k, c in terms],
            "total_dim": total,
        }), 0
    if a.format == "csv":
        return _csv([("weight", "multiplicity", "dim")] + [(wt.format_weight(k), c, schur.weyl_dim(k)) for k, c in terms]), 0
    lines = [f"({wt.format_weight(k)})  x{c}  dim {schur.weyl_dim(k)}" for k, c in terms]
    lines.append(f"total dim {total} = C(20,{a.wedge}) = {comb(20, a.wedge)}")
    return "\n".join(lines), 0


def cmd_gr_scan(a) -> tuple[str, int]:
    try:
        rows = bott.gr_eta_scan(a.x, a.k)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if a.format == "json":
        return _dumps({str(i): {"count": r.count, "triplets": [list(t) for t in r.triplets]} for i, r in rows.items()}), 0
    if a.format == "csv":
        return _csv([("i", "count", "triplets")] + [(i, r.count, " ".join(",".join(map(str, t)) for t in r.triplets)) for i, r in rows.items()]), 0
    if not rows:
        return f"no contributions for x={a.x}, k={a.k}", 0
    return "\n".join(f"H^{i}: {r.count}  {' '.join(str(t) for t in r.triplets)}" for i, r in rows.items()), 0


def _rep_summary(r: quiverrep.QuiverRep) -> dict:
    return {"dims": {v: r.dims[v] for v in quiverrep.QUIVER.vertices}, "top": r.top_dims(), "socle": r.socle_dims()}


def cmd_quiver(a) -> tuple[str, int]:
    q = quiverrep.QUIVER
    if a.what == "paths":
        items = [{"source": p.source, "target": p.target, "path": p.name()} for p in quiverrep.path_basis()]
        if a.format == "json":
            return _dumps(items), 0
        if a.format == "csv":
            return _csv([("source", "target", "path")] + [(d["source"], d["target"], d["path"]) for d in items]), 0
        return "\n".join(f"{d['source']} -> {d['target']}: {d['path']}" for d in items) + f"\n{len(items)} paths", 0
    if a.what in ("proj", "inj"):
        if a.vertex is None:
            raise UsageError(f"quiver {a.what} needs a vertex")
        v = quiverrep.SIMPLE_AT.get(a.vertex, a.vertex)
        if v not in q.vertices:
            raise UsageError(f"unknown vertex {a.vertex!r}")
        r = quiverrep.projective_cover(v) if a.what == "proj" else quiverrep.injective_envelope(v)
        if a.format == "json":
            return r.dumps(), 0
        s = _rep_summary(r)
        if a.format == "csv":
            return _csv([("vertex", "dim", "top", "socle")] + [(v, s["dims"][v], s["top"][v], s["socle"][v]) for v in q.vertices]), 0
        return "\n".join(f"{v}: dim {s['dims'][v]}  top {s['top'][v]}  socle {s['socle'][v]}" for v in q.vertices), 0
    if a.what == "indecomposables":
        reps = quiverrep.enumerate_indecomposables()
        summaries = [_rep_summary(r) for r in reps]
        if a.format == "json":
            return _dumps(summaries), 0
        vs = q.vertices
        if a.format == "csv":
            return _csv([vs] + [[s["dims"][v] for v in vs] for s in summaries]), 0
        lines = [" ".join(f"{v}={s['dims'][v]}" for v in vs if s["dims"][v]) for s in summaries]
        return "\n".join(lines) + f"\n{len(reps)} indecomposables", 0
    raise UsageError(f"unknown quiver query {a.what!r}")


def cmd_loccoh(a) -> tuple[str, int]:
    try:
        t = dmodcat.loc_coh_table(a.source, dmodcat.Orbit.parse(a.support))
    except (KeyError, ValueError) as e:
        raise UsageError(str(e).strip("'\"")) from None
    if a.format == "json":
        return _dumps(t.to_json()), 0
    if a.format == "csv":
        return _csv([("i", "label", "multiplicity", "nonsplit")] + [
            (i, lab, c, int(i in t.nonsplit)) for i, s in sorted(t.rows.items()) for lab, c in s.items()
        ]), 0
    if not t.rows:
        return f"H_{t.support}({t.source}) = 0", 0
    lines = []
    for i, s in sorted(t.rows.items()):
        note = "  (nonsplit)" if i in t.nonsplit else ""
        lines.append(f"H^{i}_{t.support}({t.source}) = {s}{note}")
    return "\n".join(lines), 0


def cmd_lyubeznik(a) -> tuple[str, int]:
    try:
        table = dmodcat.lyubeznik_table(dmodcat.Orbit.parse(a.orbit))
    except ValueError as e:
        raise UsageError(str(e)) from None
    if a.format == "json":
        return _dumps([{"i": i, "j": j, "value": v} for (i, j), v in table.items()]), 0
    return _csv([("i", "j", "value")] + [(i, j, v) for (i, j), v in table.items()]), 0


def cmd_ss_check(a) -> tuple[str, int]:
    try:
        data = json.loads(Path(a.grid).read_text())
        grid = SpectralGrid.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise UsageError(f"cannot read grid {a.grid}: {e}") from None
    res = ss_check(grid)
    code = EXIT_OK if res.consistent else EXIT_FAIL
    if a.format == "json":
        return _dumps(res.to_json()), code
    if a.format == "csv":
        return _csv([("from", "to", "label", "count", "kind")] + [
            (f"{c.source[0]},{c.source[1]}", f"{c.target[0]},{c.target[1]}", c.label, c.count, c.kind)
            for c in res.cancellations
        ]), code
    lines = ["consistent" if res.consistent else "inconsistent"]
    for c in res.cancellations:
        lines.append(f"{c.kind}: {c.source} -> {c.target}  {c.count}x{c.label}")
    if res.extension_rows:
        lines.append(f"uses extension rows {list(res.extension_rows)} (composition factors only)")
    return "\n".join(lines), code


# --------------------------------------------------------------------------- verify suites

W = cs.TruncationWindow.make


def _chk_char_b4_identity() -> bool:
    window = W(-18, 0, -8, 8)
    return cs.char_b4_via_filtration(window) == cs.expand(cs.CHAR_B4.times_monomial(wt.const(3)), window)


def _chk_fourier_s_e() -> bool:
    m = cs.expand(cs.CHAR_S, W(0, 24))
    f = cs.fourier(m)
    return f == cs.expand(cs.CHAR_E, f.window)


def _composition(name: str, parts: Sequence[str]) -> bool:
    window = W(-36, 6, -10, 4)
    whole = cs.named_character(name, window)
    rest = whole
    for p in parts:
        piece = cs.named_character(p, window)
        if not piece.is_nonnegative():
            return False
        rest = rest - piece
    return rest.terms == {}


def _chk_witnesses() -> bool:
    cat = dmodcat.simples_catalog()
    labels = ("D3", "D2", "D1", "E")
    return all(
        cs.character_coefficient(other, cat[lab].witness) == int(other == lab) for lab in labels for other in labels
    )


def _chk_plethysm() -> bool:
    p = schur.plethysm(7, 3, 6)
    return (
        sorted(p.terms) == sorted(schur.WEDGE7_WEDGE3)
        and set(p.terms.values()) == {1}
        and sum(schur.weyl_dim(k) for k in p.terms) == comb(20, 7)
    )


def _chk_b4_overlap() -> bool:
    return schur.b4_overlap_check(W(-45, -30, -12, 0))


def _chk_gauss() -> bool:
    return bott.gaussian_binomial(6, 3, step=2)[::2] == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]


def _chk_cone() -> bool:
    h = bott.cone_local_cohomology_from_betti(bott.grassmannian_betti())
    return h == {j: int(j in (13, 15)) for j in range(11, 21)}


GR_TABLES = {
    -5: {0: 5, 1: 5, 3: 5, 4: 5, 5: 4},
    -8: {0: 8, 1: 8, 3: 8, 4: 8, 5: 7, 6: 7, 8: 6},
}


def _chk_gr(x: int) -> Callable[[], bool]:
    def check() -> bool:
        for k in range(13):
            want = {i: 1 for i, kmin in GR_TABLES[x].items() if k >= kmin}
            if bott.gr_eta_profile(x, k) != want:
                return False
        return True

    return check


def _chk_gr_sigma() -> bool:
    return all({5: 1, 6: 1}.items() <= bott.gr_eta_profile(-6, k).items() for k in range(5, 13))


def _chk_nonsplit_h1() -> bool:
    res = bott.cohomology((0, 0, -1), (1, 0, 0))
    return not res.vanishing and res.degree == 1 and res.weight == wt.zero()


def _chk_de() -> bool:
    return dmodcat.de_coefficients_from_scan() == ({7: 1}, {10: 1}) == dmodcat.de_coefficients_from_table()


# indecomposables of A <-> B <-> C (all 2-cycles zero) with dims <= 2, by orbit counting over F_2
LINE_QUIVER_INDECOMPOSABLES = {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1, (0, 1, 1): 2, (1, 1, 0): 2, (1, 1, 1): 4}


def _chk_indecomposables() -> bool:
    from collections import Counter

    reps = quiverrep.enumerate_indecomposables()
    for comp in (("s", "d3", "e"), ("b4", "d2", "d1")):
        got = Counter(d for d in quiverrep.restrict_dims(reps, comp) if max(d) <= 2)
        if dict(got) != LINE_QUIVER_INDECOMPOSABLES:
            return False
    return True


def _chk_solve(unknown: str, outer: str, inner: str) -> Callable[[], bool]:
    def check() -> bool:
        sols = dmodcat.solve_table(unknown, outer, inner)
        return len(sols) == 1 and sols[0] == dmodcat.loc_coh_table(unknown, outer).rows

    return check


def _chk_lyubeznik(z: str) -> Callable[[], bool]:
    return lambda: dmodcat.derive_lyubeznik(z) == dmodcat.lyubeznik_table(z)


def _chk_vanishing() -> bool:
    O = dmodcat.Orbit
    return all(min(dmodcat.loc_coh_table("S", o).rows) == o.codim for o in (O.O0, O.O1, O.O2, O.O3))


def _chk_spectral() -> bool:
    O = dmodcat.Orbit
    for source in dmodcat.MODULES:
        for inner in O:
            for outer in O:
                if outer < inner:
                    g = dmodcat.spectral_grid(source, outer, inner, exact=True)
                    if g.euler() != g.abutment_euler() or not ss_check(g).consistent:
                        return False
    return True


def _chk_charcycles() -> bool:
    cat = dmodcat.simples_catalog()
    return all(dmodcat.fourier_on_char_cycle(i.char_cycle) == cat[i.fourier_partner].char_cycle for i in cat.values())


def _chk_bfunction() -> bool:
    roots = dmodcat.b_function_roots()
    jumps = dmodcat.filtration_jumps()
    return sorted(jumps["Sf"] + jumps["SfSqrt"]) == roots and all(
        r + s == -6 for r, s in zip(roots, reversed(roots))
    )


def _chk_quiver_sf() -> bool:
    return quiverrep.is_isomorphic(quiverrep.injective_envelope("s"), quiverrep.module_sf())


def _chk_quiver_sfsqrt() -> bool:
    return quiverrep.is_isomorphic(quiverrep.injective_envelope("b4"), quiverrep.module_sf_sqrt())


def _chk_ext_d3_d2() -> bool:
    d3, d2 = quiverrep.simple("d3"), quiverrep.simple("d2")
    return quiverrep.ext1_dim(d3, d2) == 0 == quiverrep.ext1_dim(d2, d3)


CHECKS: list[tuple[str, str, Callable[[], bool]]] = [
    ("characters", "charB4.identity", _chk_char_b4_identity),
    ("characters", "charFourier.S_E", _chk_fourier_s_e),
    ("characters", "charSf.composition", lambda: _composition("Sf", ("S", "D3", "E"))),
    ("characters", "charSfSqrt.composition", lambda: _composition("SfSqrt", ("B4", "D2", "D1"))),
    ("characters", "witness.weights", _chk_witnesses),
    ("characters", "plethysm.wedge7", _chk_plethysm),
    ("characters", "charB4.overlap", _chk_b4_overlap),
    ("bott", "bott.nonsplitH1", _chk_nonsplit_h1),
    ("bott", "gauss.grassmannian", _chk_gauss),
    ("bott", "locO1.betti", _chk_cone),
    ("bott", "grScan.x-5", _chk_gr(-5)),
    ("bott", "grScan.x-8", _chk_gr(-8)),
    ("bott", "grScan.x-6", _chk_gr_sigma),
    ("bott", "locO2.witness", _chk_de),
    ("quiver", "quiver.paths", lambda: len(quiverrep.path_basis()) == 18),
    ("quiver", "quiver.injS", _chk_quiver_sf),
    ("quiver", "quiver.injB4", _chk_quiver_sfsqrt),
    ("quiver", "quiver.extD3D2", _chk_ext_d3_d2),
    ("quiver", "quiver.indecomposables", _chk_indecomposables),
    ("loccoh", "loc.vanishing", _chk_vanishing),
    ("loccoh", "loc.spectral", _chk_spectral),
    ("loccoh", "locD1.solve", _chk_solve("D1", "O0", "O1")),
    ("loccoh", "locD2.solve", _chk_solve("D2", "O1", "O2")),
    ("loccoh", "lyubeznik.O1", _chk_lyubeznik("O1")),
    ("loccoh", "lyubeznik.O2", _chk_lyubeznik("O2")),
    ("loccoh", "lyubeznik.O3", _chk_lyubeznik("O3")),
    ("loccoh", "charCycle.fourier", _chk_charcycles),
    ("loccoh", "bFunction.roots", _chk_bfunction),
]
SUITES = ("characters", "bott", "quiver", "loccoh", "all")


def run_checks(suite: str) -> list[tuple[str, bool, str]]:
    out = []
    for s, cid, fn in CHECKS:
        if suite != "all" and s != suite:
            continue
        try:
            ok, err = bool(fn()), ""
        except Exception as e:  # a crashing check is a failed check
            ok, err = False, f"{type(e).__name__}: {e}"
        out.append((cid, ok, err))
    return out


def cmd_verify(a) -> tuple[str, int]:
    results = run_checks(a.suite)
    failed = sum(not ok for _, ok, _ in results)
    code = EXIT_FAIL if failed else EXIT_OK
    if a.format == "json":
        return _dumps({
            "suite": a.suite,
            "checks": [{"id": cid, "passed": ok, **({"error": err} if err else {})} for cid, ok, err in results],
            "passed": len(results) - failed,
            "failed": failed,
        }), code
    if a.format == "csv":
        return _csv([("id", "passed")] + [(cid, int(ok)) for cid, ok, _ in results]), code
    lines = [f"{'PASS' if ok else 'FAIL'}  {cid}" + (f"  ({err})" if err else "") for cid, ok, err in results]
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines), code


# --------------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = _Parser(prog="wedge3dmod", description=__doc__.splitlines()[0], parents=[fmt])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bott", parents=[fmt], help="Borel-Weil-Bott on Gr(k, n)")
    b.add_argument("--alpha", required=True, help="weight of Q, e.g. 0,0,-1 (use --alpha=-1,... for a leading minus)")
    b.add_argument("--beta", required=True)
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--n", type=int, default=6)
    b.set_defaults(func=cmd_bott)

    c = sub.add_parser("char", parents=[fmt], help="characters of S, E, S_f, ... on a window")
    c.add_argument("--name", required=True, choices=cs.NAMES)
    c.add_argument("--min-deg", type=int)
    c.add_argument("--max-deg", type=int)
    c.add_argument("--min-entry", type=int)
    c.add_argument("--max-entry", type=int)
    c.add_argument("--weight", help="single weight, e.g. --weight=-3,-3,-3,-3,-3,-3")
    c.set_defaults(func=cmd_char)

    pl = sub.add_parser("plethysm", parents=[fmt], help="decompose wedge^k(wedge^3 C^6)")
    pl.add_argument("--wedge", type=int, default=7)
    pl.add_argument("--of", default="wedge3")
    pl.set_defaults(func=cmd_plethysm)

    g = sub.add_parser("gr-scan", parents=[fmt], help="weight (x^6) in H^i(Gr, L^-k (x) Sym gr eta)")
    g.add_argument("--x", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.set_defaults(func=cmd_gr_scan)

    q = sub.add_parser("quiver", parents=[fmt], help="the quiver with relations")
    q.add_argument("what", choices=("paths", "proj", "inj", "indecomposables"))
    q.add_argument("vertex", nargs="?")
    q.set_defaults(func=cmd_quiver)

    lc = sub.add_parser("loccoh", parents=[fmt], help="local cohomology table")
    lc.add_argument("--source", required=True)
    lc.add_argument("--support", required=True)
    lc.set_defaults(func=cmd_loccoh)

    ly = sub.add_parser("lyubeznik", parents=[fmt], help="Lyubeznik numbers")
    ly.add_argument("--orbit", required=True)
    ly.set_defaults(func=cmd_lyubeznik)

    ss = sub.add_parser("ss-check", parents=[fmt], help="check a spectral sequence grid (JSON file)")
    ss.add_argument("--grid", required=True)
    ss.set_defaults(func=cmd_ss_check)

    v = sub.add_parser("verify", parents=[fmt], help="run named checks")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = args.func(args)
    except UsageError as e:
        print(f"wedge3dmod: error: {e}", file=err)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
