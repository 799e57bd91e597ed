"""Command-line front end.

    orthoprime verify    --surface gamma2 --grading 1,2,2 --gamma-max 20
    orthoprime enumerate --surface pants:2,2,2 --grading 2,2,2 --format csv
    orthoprime gaps      --surface pants:2,2,2 --grading 2,2,2 --rays 1000 --seed 7
    orthoprime measure   --case cusp-cusp --c 5
    orthoprime count     --surface sym4 --grading 1,1,1,1 --grid 6,8,10,12

Exit status is 0 on success, 1 when --assert-residual fails and 2 on bad
input. Boundary indices in every report are 1-based.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .enumeration import EnumerationCutoff, classes_csv, enumerate_classes
from .errors import OrthoError
from .identity import basmajian_convergence_report, counting_report, identity_report
from .measures import basmajian_measure, gap_measure_ortholength, gap_measure_traces, graded_half_trace
from .raysim import RayTracer, _origin, gap_intervals, rays_csv, sample_rays
from .surfaces import BoundaryShape, Grading, admissibility_check, parse_surface

SUBCOMMANDS = ("verify", "enumerate", "gaps", "measure", "count")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    surface: str | None
    grading: Grading | None
    gamma_max: float
    word_max: int
    tol: float
    fmt: str
    seed: int
    threads: int
    assert_residual: float | None

    def __post_init__(self):
        if not self.gamma_max > 0:
            raise UsageError("--gamma-max must be positive")
        if not 0 < self.tol <= 1e-3:
            raise UsageError("--tol must lie in (0, 1e-3]")
        if self.word_max < 1:
            raise UsageError("--word-max must be at least 1")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


def _common(p: argparse.ArgumentParser, surface: bool = True, gamma: float = 20.0) -> None:
    if surface:
        p.add_argument("--surface", required=True, help="model name or pants:<v>,<v>,<v>")
        p.add_argument("--grading", required=True, help="comma separated grades, 'inf' allowed")
    p.add_argument("--gamma-max", type=float, default=gamma)
    p.add_argument("--word-max", type=int, default=4096)
    p.add_argument("--tol", type=float, default=1e-6, help="overshoot tolerance for sums")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--assert-residual", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthoprime", description="Prime orthogeodesics and gap-measure identities.")
    p.add_argument("--version", action="version", version=f"orthoprime {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="per-boundary identity sums and residuals")
    _common(v)
    v.add_argument("--grades", help="increasing uniform grades; runs the grade-limit report instead")

    e = sub.add_parser("enumerate", help="orthogeodesic classes with depth and primality")
    _common(e)

    g = sub.add_parser("gaps", help="gap intervals, coverage and sampled orthorays")
    _common(g, gamma=16.0)
    g.add_argument("--rays", type=int, default=0, help="number of orthorays to sample")
    g.add_argument("--budget", type=int, default=10_000, help="tile crossings per ray")

    m = sub.add_parser("measure", help="evaluate one gap measure")
    _common(m, surface=False)
    m.add_argument("--case", required=True, help="<start>-<end> with cusp|geodesic|cone, or basmajian")
    m.add_argument("--c", type=float, help="half-trace of gamma_mu")
    m.add_argument("--mu", type=float, help="ortholength (geodesic-geodesic and basmajian only)")
    m.add_argument("--start-value", type=float, help="start length or cone angle")
    m.add_argument("--end-value", type=float, help="end length or cone angle")
    m.add_argument("--shape-params", help="start,end lengths or angles (alternative to the two flags above)")
    m.add_argument("--grades", default="1,1", help="grades of start and end")

    c = sub.add_parser("count", help="prime counts N(L) and growth fit")
    _common(c)
    c.add_argument("--grid", help="comma separated length bounds (default: 8 points up to --gamma-max)")
    return p


def _config(args) -> RunConfig:
    grading = Grading.parse(args.grading) if getattr(args, "grading", None) else None
    return RunConfig(
        args.cmd, getattr(args, "surface", None), grading, args.gamma_max, args.word_max, args.tol,
        args.format, args.seed, args.threads, args.assert_residual,
    )


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad {what} {text!r}") from None


def _csv_rows(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cut(cfg: RunConfig) -> EnumerationCutoff:
    return EnumerationCutoff(cfg.gamma_max, cfg.word_max)


def _surface(cfg: RunConfig):
    s = parse_surface(cfg.surface)
    admissibility_check(s, cfg.grading)  # raises on a length mismatch
    return s


def cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    s = _surface(cfg)
    if args.grades:
        grades = [int(g) for g in _floats(args.grades, "grade list")]
        rep = basmajian_convergence_report(s, grades, _cut(cfg))
        if cfg.fmt == "csv":
            rows = [
                [r.grade, b + 1, repr(r.rhs[b]), repr(r.limit[b]), repr(r.residual[b])]
                for r in rep.rows for b in range(len(r.rhs))
            ]
            return _csv_rows(["grade", "boundary", "rhs", "limit", "residual"], rows), 0
        return _dump(rep.to_dict()), 0
    rep = identity_report(s, cfg.grading, _cut(cfg), threads=cfg.threads)
    out = rep.to_csv() if cfg.fmt == "csv" else None
    if out is None:
        d = rep.to_dict()
        d["flags"]["overshoot"] = any(b.residual < -cfg.tol for b in rep.boundaries)
        out = _dump(d)
    code = 0
    if cfg.assert_residual is not None and any(abs(b.residual) > cfg.assert_residual for b in rep.boundaries):
        code = 1
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return out, code


def cmd_enumerate(cfg: RunConfig, args) -> tuple[str, int]:
    s = _surface(cfg)
    en = enumerate_classes(s, cfg.grading, _cut(cfg))
    if cfg.fmt == "csv":
        return classes_csv(en.classes), 0
    rows = [
        {
            "start": x.start + 1, "end": x.end + 1, "canonical_word": x.word_str, "c": x.c,
            "gamma_length": x.gamma_length, "ortholength": x.ortholength, "depth": _grading_json(x.depth),
            "prime": x.prime, "ambiguous": x.ambiguous,
        }
        for x in en.classes
    ]
    return _dump({
        "surface": s.name, "grading": _grading_json(cfg.grading),
        "cutoff": {"gamma_max": cfg.gamma_max, "word_max": cfg.word_max},
        "classes": rows, "flags": {"possibly_incomplete": en.possibly_incomplete},
    }), 0


def _grading_json(k: Grading) -> list:
    return ["inf" if g == math.inf else int(g) for g in k]


def cmd_gaps(cfg: RunConfig, args) -> tuple[str, int]:
    s = _surface(cfg)
    k = cfg.grading
    en = enumerate_classes(s, k, _cut(cfg))
    primes = en.primes()
    rep = gap_intervals(s, k, primes)
    rays = []
    if args.rays > 0:
        origins = {i: _origin(s, k, i, primes) for i in range(s.n_boundaries)}
        rays = sample_rays(RayTracer(s, k, origins=origins), args.rays, cfg.seed, budget=args.budget)
    if cfg.fmt == "csv":
        if rays:
            return rays_csv(rays), 0
        rows = [[g.boundary + 1, g.cls.end + 1, g.cls.word_str, repr(g.lo), repr(g.hi), repr(g.width), repr(g.foot)]
                for g in rep.intervals]
        return _csv_rows(["boundary", "end", "word", "lo", "hi", "width", "foot"], rows), 0
    d = {
        "surface": s.name, "grading": _grading_json(k),
        "cutoff": {"gamma_max": cfg.gamma_max, "word_max": cfg.word_max},
        "lengths": {str(i + 1): v for i, v in rep.lengths.items()},
        "coverage": {str(i + 1): v for i, v in rep.coverage.items()},
        "max_overlap": rep.max_overlap,
        "max_width_error": rep.max_width_error,
        "intervals": [
            {"boundary": g.boundary + 1, "end": g.cls.end + 1, "word": g.cls.word_str,
             "lo": g.lo, "hi": g.hi, "width": g.width, "foot": g.foot}
            for g in rep.intervals
        ],
        "flags": {"possibly_incomplete": en.possibly_incomplete},
    }
    if rays:
        exited = sum(r.exited for r in rays)
        d["rays"] = {"n": len(rays), "seed": cfg.seed, "exited": exited, "alive_fraction": 1 - exited / len(rays)}
    return _dump(d), 0


_KINDS = ("cusp", "geodesic", "cone")


def _shape(kind: str, value) -> BoundaryShape:
    if kind == "cusp":
        return BoundaryShape.cusp()
    if value is None:
        raise UsageError(f"a {kind} end needs its length or angle")
    return BoundaryShape.geodesic(value) if kind == "geodesic" else BoundaryShape.cone(value)


def cmd_measure(cfg: RunConfig, args) -> tuple[str, int]:
    case = args.case.strip().lower()
    if case == "basmajian":
        if args.mu is None:
            raise UsageError("basmajian needs --mu")
        out = {"case": case, "mu": args.mu, "lambda_k": basmajian_measure(args.mu)}
    else:
        parts = case.split("-")
        if len(parts) != 2 or any(p not in _KINDS for p in parts):
            raise UsageError(f"unknown case {args.case!r}")
        ks = Grading.parse(args.grades)
        if len(ks) != 2:
            raise UsageError("--grades needs two entries")
        sv, ev = args.start_value, args.end_value
        if args.shape_params:
            vals = _floats(args.shape_params, "shape parameters")
            if len(vals) != 2:
                raise UsageError("--shape-params needs two entries")
            sv, ev = vals
        start, end = _shape(parts[0], sv), _shape(parts[1], ev)
        if args.c is not None:
            gm = gap_measure_traces(start, ks[0], end, ks[1], args.c)
            out = {"case": case, "c": args.c}
        elif args.mu is not None and parts == ["geodesic", "geodesic"]:
            A, B = graded_half_trace(start, ks[0]), graded_half_trace(end, ks[1])
            gm = gap_measure_ortholength(A, B, args.mu)
            out = {"case": case, "mu": args.mu}
        else:
            raise UsageError("give --c, or --mu for a geodesic-geodesic case")
        out.update({"lambda": gm.lam, "lambda_k": gm.lam_k})
    # fixed 12 significant digits, so the printed values are stable across platforms
    out = {key: _sig12(v) for key, v in out.items()}
    if cfg.fmt == "csv":
        return _csv_rows(list(out), [["" if v is None else v for v in out.values()]]), 0
    return "{" + ", ".join(f'"{key}": {_json_atom(v)}' for key, v in out.items()) + "}\n", 0


def _sig12(v):
    return f"{v:.12g}" if isinstance(v, float) else v


def _json_atom(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, str) and v != "" and v[0] in "-0123456789" and v not in ("inf", "-inf", "nan"):
        return v
    return json.dumps(v)


def cmd_count(cfg: RunConfig, args) -> tuple[str, int]:
    s = _surface(cfg)
    if args.grid:
        grid = _floats(args.grid, "grid")
    else:
        grid = [cfg.gamma_max * (i + 1) / 8 for i in range(8)]
    rep = counting_report(s, cfg.grading, grid, cfg.word_max)
    if cfg.fmt == "csv":
        return _csv_rows(["L", "count"], [[repr(L), n] for L, n in zip(rep.grid, rep.counts)]), 0
    return _dump(rep.to_dict()), 0


_COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "gaps": cmd_gaps,
    "measure": cmd_measure,
    "count": cmd_count,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        text, code = _COMMANDS[args.cmd](cfg, args)
    except (UsageError, OrthoError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"orthoprime: error: {msg}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


__all__ = ["RunConfig", "SUBCOMMANDS", "build_parser", "run", "main"]
