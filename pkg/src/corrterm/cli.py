"""Command-line front end.

Exit codes: 0 success, 1 a ``check`` found a discrepancy, 2 usage or input
error, 3 the class budget was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .blackgraph import BlackGraph, GraphError, UnsupportedShapeError, load_graph
from .bounds import Family, bounds_report, detect_family, family_kappas
from .braidlang import BraidParseError, BraidWord, family_braid, parse_braid, st_length_upper_bound
from .dinv import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DInvariantTable,
    brute_force_max,
    certified_radius,
)
from .goeritz import FormError
from .openbook import compile_layering, crosscheck_h1, h1_open_book
from .report import (
    CheckSection,
    ComplexitySection,
    DRow,
    GenusRow,
    GraphEcho,
    InputEcho,
    LayeringSection,
    NormSection,
    Report,
)
from .spinc import class_of, homology_group

ELIDE_ABOVE = 200
ORACLE_MAX_POINTS = 2_000_000

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrterm",
        description="Correction terms, Z2-norm and complexity bounds for double branched covers "
        "of alternating 3-braid closures and black graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "dinv": "d-invariant table of every spin^c class",
        "norms": "nonorientable genus bounds and Z2-Thurston norms",
        "complexity": "lower and upper bounds on the triangulation complexity",
        "layer": "layered triangulation of the genus-one open book of a braid",
        "check": "run the brute-force oracle and the homology cross-check",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--braid", metavar="TOKENS", help='braid word, e.g. "1 2^-2 1 2^-4"')
        src.add_argument(
            "--family",
            nargs="+",
            metavar="ARG",
            help="family kind (even|odd) followed by its integer parameters",
        )
        src.add_argument("--graph", metavar="FILE", help="black graph file (JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--full", action="store_true", help=f"never elide tables above {ELIDE_ABOVE} classes")
        p.add_argument("--kmax", type=int, default=2, help="sigma_2 conjugation search depth (default 2)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of classes")
    return parser


def _resolve_input(args) -> tuple[InputEcho, BraidWord | None, Family | None, BlackGraph | None]:
    if args.braid is not None:
        w = parse_braid(args.braid)
        fam = detect_family(w)
        return InputEcho("braid", braid=w.tokens()), w, fam, None
    if args.family is not None:
        kind, *rest = args.family
        try:
            params = tuple(int(x) for x in rest)
        except ValueError as exc:
            raise UsageError(f"family parameters must be integers: {rest}") from exc
        w = family_braid(kind, params)
        echo = InputEcho("family", braid=w.tokens(), family=kind, params=params)
        return echo, w, Family(kind, params), None
    g = load_graph(args.graph)
    echo = InputEcho("graph", graph=GraphEcho(g.vertex_count, g.edges))
    return echo, None, None, g


def _labels(tbl: DInvariantTable, fam: Family | None) -> dict[tuple[int, ...], list[str]]:
    out: dict[tuple[int, ...], list[str]] = {}
    if fam is None:
        return out
    for i, kappa in enumerate(family_kappas(fam.kind, fam.params)):
        out.setdefault(class_of(tbl.form, kappa).class_id, []).append(f"kappa{i}")
    return out


def _d_rows(tbl: DInvariantTable, fam: Family | None, full: bool) -> tuple[tuple[DRow, ...], bool]:
    labels = _labels(tbl, fam)
    rows = [
        DRow(
            e.spinc.class_id,
            e.spinc.representative,
            e.maximizer,
            e.norm_sq,
            e.d,
            tuple(labels.get(e.spinc.class_id, ())),
        )
        for e in tbl.entries
    ]
    if full or len(rows) <= ELIDE_ABOVE:
        return tuple(rows), False
    top = max(rows, key=lambda r: r.d)
    bottom = min(rows, key=lambda r: r.d)
    keep = {top.class_id, bottom.class_id} | set(labels)
    return tuple(r for r in rows if r.class_id in keep), True


def _layering(w: BraidWord, k_max: int) -> LayeringSection:
    _, stw = st_length_upper_bound(w, k_max)
    plan = compile_layering(stw)
    h1 = h1_open_book(plan.matrix)
    return LayeringSection(
        st_word=str(stw),
        flips=plan.flips,
        tetrahedra=plan.tetrahedron_count,
        monodromy=str(plan.monodromy),
        matrix=plan.matrix,
        h1_torsion=h1.torsion,
        h1_free_rank=h1.free_rank,
    )


def build_report(args) -> Report:
    echo, w, fam, g = _resolve_input(args)
    cmd = args.command
    if args.kmax < 0:
        raise UsageError("--kmax must be nonnegative")

    if cmd == "layer":
        if w is None:
            raise UsageError("layer needs a braid (--braid or --family)")
        return Report(command=cmd, input=echo, layering=_layering(w, args.kmax))

    if w is not None:
        source = fam if fam is not None else w
    else:
        source = g
    rep = bounds_report(source, k_max=args.kmax, budget=args.budget)
    tbl = rep.table
    f = tbl.form
    rows, elided = _d_rows(tbl, fam, args.full)
    base = dict(
        command=cmd,
        input=echo,
        Q=f.Q,
        abs_det=f.abs_det,
        invariant_factors=homology_group(f).invariant_factors,
        class_count=len(tbl),
        d_table=rows,
        d_table_elided=elided,
    )
    if cmd == "dinv":
        return Report(**base)
    if cmd == "check":
        return Report(**base, check=_check(tbl, w))

    genus = tuple(GenusRow(x.torsion, x.theta, x.genus) for x in rep.genus_bounds)
    norms = NormSection(
        lower=rep.norm_lower,
        upper=rep.norm_upper,
        exact=rep.norms_exact,
        failed_inequalities=rep.taut_failed,
    )
    extra = dict(genus_bounds=genus, norms=norms, flags=rep.flags)
    if cmd == "norms":
        return Report(**base, **extra)
    layering = _layering(w, args.kmax) if w is not None else None
    complexity = ComplexitySection(rep.complexity_lower, rep.complexity_upper)
    return Report(**base, **extra, complexity=complexity, layering=layering)


def _check(tbl: DInvariantTable, w: BraidWord | None) -> CheckSection:
    f = tbl.form
    checked = mismatches = skipped = 0
    for e in tbl.entries:
        r = certified_radius(f, e.spinc)
        if (2 * r + 1) ** f.b > ORACLE_MAX_POINTS:
            skipped += 1
            continue
        checked += 1
        if brute_force_max(f, e.spinc, r) != e.norm_sq:
            mismatches += 1
    cross = crosscheck_h1(w) if w is not None else None
    return CheckSection(
        oracle_classes=checked,
        oracle_mismatches=mismatches,
        oracle_skipped=skipped,
        h1_crosscheck=None if cross is None else cross.ok,
        h1_open_book=None if cross is None else cross.open_book.torsion,
        h1_goeritz=homology_group(f).invariant_factors,
    )


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _group(factors) -> str:
    return " ⊕ ".join(f"Z/{d}" for d in factors) if factors else "0"


def render_text(r: Report) -> str:
    out: list[str] = []
    inp = r.input
    if inp.kind == "graph":
        out.append(f"input: graph with {inp.graph.vertices} vertices, {len(inp.graph.edges)} edges")
    elif inp.kind == "family":
        out.append(f"input: family {inp.family} {' '.join(map(str, inp.params))}  braid: {inp.braid}")
    else:
        out.append(f"input: braid {inp.braid or '(empty)'}")
    if r.Q is not None:
        out.append("Q = [" + ", ".join(_fmt_vec(row) for row in r.Q) + "]")
        out.append(f"|det Q| = {r.abs_det}   H = {_group(r.invariant_factors)}")
    if r.d_table is not None:
        note = f" (showing {len(r.d_table)} of {r.class_count})" if r.d_table_elided else ""
        out.append(f"d-invariants{note}:")
        for row in r.d_table:
            tag = f"  [{', '.join(row.labels)}]" if row.labels else ""
            out.append(
                f"  class {_fmt_vec(row.class_id)}  max kappa {_fmt_vec(row.maximizer)}"
                f"  |kappa|^2 = {row.norm_sq}  d = {row.d}{tag}"
            )
    if r.genus_bounds is not None:
        out.append("nonorientable genus lower bounds:")
        for i, gb in enumerate(r.genus_bounds, 1):
            out.append(f"  A{i} = {_fmt_vec(gb.torsion)}: h >= {gb.genus}")
    if r.norms is not None:
        n = r.norms
        if n.lower is None:
            out.append("Z2-norms: no bound")
        else:
            lo = ", ".join(str(x) for x in n.lower)
            if n.exact:
                out.append(f"Z2-norms = ({lo})  [exact]")
            elif n.upper is not None:
                out.append(f"Z2-norms in [({lo}), {_fmt_vec(n.upper)}]")
            else:
                out.append(f"Z2-norms >= ({lo})")
    if r.complexity is not None:
        c = r.complexity
        lo = "?" if c.lower is None else c.lower
        hi = "?" if c.upper is None else c.upper
        out.append(f"C ∈ [{lo}, {hi}]")
    if r.layering is not None:
        lay = r.layering
        out.append(f"layering word: {lay.st_word}")
        out.append(f"flips ({lay.tetrahedra}): {' '.join(lay.flips) or '-'}")
        out.append(f"monodromy: {lay.monodromy}")
        out.append("matrix: " + _fmt_vec(_fmt_vec(row) for row in lay.matrix))
        if lay.h1_free_rank:
            out.append(f"H1 = {_group(lay.h1_torsion)} ⊕ Z^{lay.h1_free_rank} (infinite)")
        else:
            order = 1
            for d in lay.h1_torsion:
                order *= d
            out.append(f"H1 = {_group(lay.h1_torsion)}, order {order}")
    if r.check is not None:
        ch = r.check
        out.append(
            f"oracle: {ch.oracle_classes} classes checked, {ch.oracle_mismatches} mismatches"
            + (f", {ch.oracle_skipped} skipped (box too large)" if ch.oracle_skipped else "")
        )
        if ch.h1_crosscheck is not None:
            verdict = "agree" if ch.h1_crosscheck else "DISAGREE"
            out.append(
                f"H1 cross-check: open book {_group(ch.h1_open_book)} vs Goeritz "
                f"{_group(ch.h1_goeritz)}: {verdict}"
            )
        out.append("check: " + ("PASS" if ch.ok else "FAIL"))
    for flag in r.flags:
        out.append(f"note: {flag}")
    return "\n".join(out) + "\n"


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = build_report(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BUDGET
    except (UsageError, BraidParseError, GraphError, UnsupportedShapeError, FormError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(report.to_json() + "\n" if args.json else render_text(report))
    if report.check is not None and not report.check.ok:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
