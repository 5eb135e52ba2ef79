"""Rank-k numerical ranges and 2x2 normal compressions of normal matrices.

Exit codes: 0 success, 2 precondition failure, 3 numerical verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bset, hrnr, nnc, normcomp
from .errors import PreconditionError, VerificationError
from .export import SvgCanvas, csv_header, write_csv, write_json
from .numkit import (
    Frame, as_matrix, matrix_from_json, normal_defect, spectrum_from_json, spectrum_to_json,
)
from .planegeom import convex_hausdorff, convex_hull, signed_distance

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFICATION = 0, 2, 3

COLORS = {"eig": "#c00000", "a": "#d07000", "exact": "#0030c0", "sample": "#10a010",
          "grid": "#bbbbbb", "hull": "#555555", "lisze": "#0030c0", "normal": "#c000c0",
          "ellipse": "#1060d0"}


@dataclass
class RunConfig:
    subcommand: str
    seed: int = 0
    n_samples: int = 4000
    n_theta: int = 4096
    tol: float = 1e-9
    out: Path = Path(".")
    emit: tuple = ("csv", "svg")
    params: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        emit = tuple(e.strip() for e in args.emit.split(",") if e.strip())
        bad = set(emit) - {"csv", "svg"}
        if bad:
            raise PreconditionError(f"unknown --emit value(s): {sorted(bad)}")
        return cls(args.command, args.seed, args.samples, args.theta_steps, args.tol, Path(args.out), emit)

    def header(self, extra=None) -> list[str]:
        params = {"samples": self.n_samples, "theta_steps": self.n_theta, "tol": self.tol}
        params.update(self.params)
        params.update(extra or {})
        return csv_header(self.subcommand, self.seed, params)


# ------------------------------------------------------------------ parsing


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.replace(" ", "").split(",") if p.strip() != ""]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise PreconditionError(f"cannot parse {text!r} as 're,im'")


def parse_spectrum(text: str) -> np.ndarray:
    items = [s for s in text.split(";") if s.strip()]
    if not items:
        raise PreconditionError("empty spectrum")
    return np.array([parse_complex(s) for s in items], dtype=np.complex128)


def load_input(args):
    """Return (matrix, spectrum or None)."""
    if args.spectrum:
        z = parse_spectrum(args.spectrum)
        return np.diag(z), z
    if not args.input:
        raise PreconditionError("provide --input or --spectrum")
    try:
        obj = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read {args.input}: {exc}") from exc
    try:
        if isinstance(obj, list):
            z = spectrum_from_json(obj)
            return np.diag(z), z
        if "spectrum" in obj:
            z = spectrum_from_json(obj["spectrum"])
            return np.diag(z), z
        return matrix_from_json(obj), None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise PreconditionError(f"malformed input JSON: {exc}") from exc


def require_normal(m, z):
    if z is not None:
        return z
    defect = normal_defect(m)
    if defect > 1e-10 * max(1.0, float(np.linalg.norm(m)) ** 2):
        raise PreconditionError(f"matrix is not normal: |MM* - M*M|_F = {defect:.3e}")
    return np.linalg.eigvals(m)


def require_a(args, name="a") -> complex:
    val = getattr(args, name)
    if val is None:
        raise PreconditionError(f"--{name} is required")
    return parse_complex(val)


def parse_path(spec: str, a: complex) -> list[complex]:
    """Approach sequences for the continuity probe.

    from:re,im,count   a + (p - a) / 2^n for n = 0..count-1
    radial:r0,ratio,count[,angle]   a + r0 ratio^n exp(i angle)
    points:re,im;re,im;...   explicit list
    """
    try:
        kind, body = spec.split(":", 1)
        if kind == "points":
            return list(parse_spectrum(body))
        vals = [float(v) for v in body.split(",")]
        if kind == "from" and len(vals) == 3 and vals[2] >= 1:
            p = complex(vals[0], vals[1])
            return [a + (p - a) / 2 ** n for n in range(int(vals[2]))]
        if kind == "radial" and len(vals) in (3, 4) and vals[2] >= 1:
            ang = vals[3] if len(vals) == 4 else 0.0
            return [a + vals[0] * vals[1] ** n * np.exp(1j * ang) for n in range(int(vals[2]))]
    except (ValueError, PreconditionError):
        pass
    raise PreconditionError(f"malformed path spec {spec!r}")


# ----------------------------------------------------------------- drawing


def _frame_spectrum(canvas: SvgCanvas, z):
    grid = canvas.layer("grid")
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            canvas.polyline(grid, [z[i], z[j]], COLORS["grid"], 0.002)
    hull = convex_hull(z)
    canvas.polyline(canvas.layer("numerical-range"), hull.vertices, COLORS["hull"], 0.003,
                    closed=len(hull) > 2)
    canvas.points(canvas.layer("eigenvalues"), z, COLORS["eig"], 0.012)


def _poly_rows(tag, poly):
    return [(tag, poly.kind, i, "", v.real, v.imag) for i, v in enumerate(poly.vertices)]


# ---------------------------------------------------------------- commands


def cmd_lambda(args, cfg: RunConfig) -> int:
    m, z = load_input(args)
    m = as_matrix(m)
    if args.k is None:
        raise PreconditionError("--k is required")
    k = args.k
    results = {}
    if args.method in ("lisze", "both"):
        results["lisze"] = hrnr.lambda_k_lisze(m, k, hrnr.SweepConfig(n_theta=cfg.n_theta))
    if args.method in ("normal", "both"):
        zz = require_normal(m, z)
        results["normal"] = hrnr.lambda_k_normal(zz, k)
    for name, poly in results.items():
        print(f"{name}: kind={poly.kind} vertices={len(poly)}")
    extra = {"k": k, "method": args.method}
    if len(results) == 2:
        d = convex_hausdorff(results["lisze"], results["normal"])
        print(f"hausdorff(lisze, normal) = {d:.3e}")
        extra["hausdorff"] = float(d) if np.isfinite(d) else "inf"
    if "csv" in cfg.emit:
        rows = []
        for name, poly in results.items():
            rows += _poly_rows(name, poly)
        write_csv(cfg.out / "lambda.csv", cfg.header(extra), ["layer", "kind", "index", "r", "x", "y"], rows)
    if "svg" in cfg.emit:
        canvas = SvgCanvas()
        spec = z if z is not None else np.linalg.eigvals(m)
        _frame_spectrum(canvas, spec)
        for name, poly in results.items():
            if not poly.is_empty:
                canvas.polyline(canvas.layer(f"lambda-{name}"), poly.vertices, COLORS[name], 0.006,
                                closed=len(poly) > 2)
                if len(poly) == 1:
                    canvas.points(canvas.layer(f"lambda-{name}-point"), poly.vertices, COLORS[name], 0.012)
        canvas.write(cfg.out / "lambda.svg", [
            f"figure: rank-{k} numerical range ({args.method})", f"seed={cfg.seed}",
            f"theta_steps={cfg.n_theta}"])
    return EXIT_OK


def _description_rows(desc):
    rows = []
    for ci, comp in enumerate(desc.components):
        if isinstance(comp, bset.Wedge):
            comp = comp.curve
        if isinstance(comp, bset.CurveTrace):
            rows += [(f"exact{ci}", "curve", i, r, p.real, p.imag)
                     for i, (r, p) in enumerate(zip(comp.r, comp.points))]
        else:
            rows += _poly_rows(f"exact{ci}", comp)
    return rows


def cmd_bset(args, cfg: RunConfig) -> int:
    m, z = load_input(args)
    z = require_normal(m, z)
    a = require_a(args)
    sd = float(signed_distance(convex_hull(z), [a])[0])
    if sd > cfg.tol:
        raise PreconditionError(f"a = {a} lies {sd:.3e} outside conv(z)")
    desc, note = None, ""
    try:
        desc = {3: bset.b_of_a_N3, 4: bset.b_of_a_N4, 5: bset.starfish}.get(len(z), lambda *_: None)(z, a)
    except PreconditionError as exc:
        note = str(exc)
        print(f"exact description skipped: {note}", file=sys.stderr)
    cloud = None
    if len(z) >= 4:
        cloud = bset.sample_b_of_a(z, a, cfg.n_samples, cfg.seed)
        res = cloud.witness_residuals()
        worst = max(res.values())
        if worst > 1e-10:
            raise VerificationError(f"sampled witnesses fail verification: {res}", worst)
        print(f"samples={len(cloud)} max witness residual={worst:.3e}")
        if desc is not None and not desc.is_empty:
            dist = desc.distance(cloud.points)
            print(f"exact kind={desc.kind} max sample distance={dist.max():.3e}")
    elif desc is not None:
        print(f"exact kind={desc.kind}")
    extra = {"a": f"{a.real!r},{a.imag!r}", "exact": desc.kind if desc is not None else "none"}
    if "csv" in cfg.emit:
        rows = [("eigenvalue", "point", i, "", v.real, v.imag) for i, v in enumerate(z)]
        rows.append(("a", "point", 0, "", a.real, a.imag))
        if desc is not None:
            rows += _description_rows(desc)
        if cloud is not None:
            rows += [("sample", "point", i, "", p.real, p.imag) for i, p in enumerate(cloud.points)]
        write_csv(cfg.out / "bset.csv", cfg.header(extra), ["layer", "kind", "index", "r", "x", "y"], rows)
    if "svg" in cfg.emit:
        canvas = SvgCanvas()
        _frame_spectrum(canvas, z)
        if cloud is not None:
            canvas.points(canvas.layer("samples"), cloud.points, COLORS["sample"], 0.003)
        if desc is not None:
            layer = canvas.layer("exact")
            for comp in desc.components:
                if isinstance(comp, bset.Wedge):
                    canvas.polyline(layer, np.concatenate([[comp.apex], comp.curve.points, [comp.apex]]),
                                    COLORS["exact"], 0.004)
                elif isinstance(comp, bset.CurveTrace):
                    canvas.polyline(layer, comp.points, COLORS["exact"], 0.006)
                elif len(comp) == 1:
                    canvas.points(layer, comp.vertices, COLORS["exact"], 0.012)
                else:
                    canvas.polyline(layer, comp.vertices, COLORS["exact"], 0.006, closed=len(comp) > 2)
        canvas.points(canvas.layer("a-marker"), [a], COLORS["a"], 0.014)
        title = {3: "triangle case", 4: "quadrilateral case", 5: "starfish wedges"}.get(len(z), "sample cloud")
        canvas.write(cfg.out / "bset.svg", [
            f"figure: matching-eigenvalue set B(a), {title}, N={len(z)}",
            f"seed={cfg.seed} samples={cfg.n_samples}", f"a={a.real:.6g}{a.imag:+.6g}i"])
    return EXIT_OK


def _witness_json(z, a, b, frame, residual, tol):
    return {
        "schema_version": 1,
        "spectrum": spectrum_to_json(z),
        "a": {"re": a.real, "im": a.imag},
        "b": {"re": b.real, "im": b.imag},
        "frame": frame.to_json(),
        "residual": residual,
        "tolerance": tol,
    }


def cmd_witness(args, cfg: RunConfig) -> int:
    m, z = load_input(args)
    z = require_normal(m, z)
    a, b = require_a(args), require_a(args, "b")
    frame = normcomp.construct_rank2_witness(z, a, b, tol=cfg.tol)
    residual = normcomp.witness_residual(z, frame, a, b)
    swapped = normcomp.witness_residual(z, frame.swapped(), b, a)
    ok, bad = normcomp.necessary_condition_check([a, b], z)
    print(f"residual={residual:.3e} swapped_residual={swapped:.3e} necessary_check={'pass' if ok else bad}")
    write_json(cfg.out / "witness.json", _witness_json(z, a, b, frame, residual, cfg.tol))
    if max(residual, swapped) > cfg.tol:
        raise VerificationError(f"witness residual {max(residual, swapped):.3e} exceeds {cfg.tol:g}", residual)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if not args.input:
        raise PreconditionError("--input witness.json is required")
    try:
        obj = json.loads(Path(args.input).read_text())
        z = spectrum_from_json(obj["spectrum"])
        a = complex(obj["a"]["re"], obj["a"]["im"])
        b = complex(obj["b"]["re"], obj["b"]["im"])
        frame = Frame.from_json(obj["frame"])
    except (OSError, KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, (PreconditionError, VerificationError)):
            raise
        raise PreconditionError(f"malformed witness file: {exc}") from exc
    residual = normcomp.witness_residual(z, frame, a, b)
    print(f"residual={residual:.3e} tolerance={cfg.tol:g}")
    if residual > cfg.tol:
        raise VerificationError(f"witness residual {residual:.3e} exceeds {cfg.tol:g}", residual)
    return EXIT_OK


def cmd_continuity(args, cfg: RunConfig) -> int:
    m, z = load_input(args)
    z = require_normal(m, z)
    a = require_a(args)
    if not args.path:
        raise PreconditionError("--path is required")
    seq = parse_path(args.path, a)
    hull = convex_hull(z)
    for p in [a] + seq:
        if float(signed_distance(hull, [p])[0]) > cfg.tol:
            raise PreconditionError(f"{p} lies outside conv(z)")
    rep = bset.continuity_probe(z, a, seq, cfg.n_samples, cfg.seed)
    print(f"a grid distance={rep.grid_distance:.3e} on_grid={rep.on_grid}")
    for i, row in enumerate(rep.rows):
        print(f"{i}: step={row.step:.3e} forward={row.forward:.4f} backward={row.backward:.4f} "
              f"hausdorff={row.hausdorff:.4f} forward_exact={row.forward_exact:.3e}")
    extra = {"a": f"{a.real!r},{a.imag!r}", "path": args.path,
             "a_grid_distance": rep.grid_distance, "a_on_grid": rep.on_grid}
    if "csv" in cfg.emit:
        rows = [(i, r.a_n.real, r.a_n.imag, r.step, r.forward, r.backward, r.hausdorff, r.grid_distance,
                 r.forward_exact) for i, r in enumerate(rep.rows)]
        write_csv(cfg.out / "continuity.csv", cfg.header(extra),
                  ["n", "x", "y", "step", "forward", "backward", "hausdorff", "grid_distance", "forward_exact"], rows)
    return EXIT_OK


def cmd_ellipses(args, cfg: RunConfig) -> int:
    m, z = load_input(args)
    z = require_normal(m, z)
    a = require_a(args)
    if float(signed_distance(convex_hull(z), [a])[0]) > cfg.tol:
        raise PreconditionError(f"a = {a} lies outside conv(z)")
    els = nnc.sample_eigenvalue_pinned_compressions(z, a, cfg.n_samples, cfg.seed)
    focus_err = max(min(abs(e.foci[0] - a), abs(e.foci[1] - a)) for e in els)
    if focus_err > 1e-10:
        raise VerificationError(f"a is not a focus of every ellipse (error {focus_err:.3e})", focus_err)
    print(f"ellipses={len(els)} focus error={focus_err:.3e}")
    extra = {"a": f"{a.real!r},{a.imag!r}"}
    if "csv" in cfg.emit:
        rows = [(i, e.foci[0].real, e.foci[0].imag, e.foci[1].real, e.foci[1].imag, e.minor_axis,
                 e.major_axis, e.center.real, e.center.imag, e.rotation) for i, e in enumerate(els)]
        write_csv(cfg.out / "ellipses.csv", cfg.header(extra),
                  ["index", "f1_x", "f1_y", "f2_x", "f2_y", "minor", "major", "cx", "cy", "rotation"], rows)
    if "svg" in cfg.emit:
        canvas = SvgCanvas()
        _frame_spectrum(canvas, z)
        layer = canvas.layer("ellipses")
        for e in els:
            canvas.ellipse(layer, e.center, e.major_axis / 2, e.minor_axis / 2, np.degrees(e.rotation),
                           COLORS["ellipse"], 0.002)
        canvas.points(canvas.layer("a-marker"), [a], COLORS["a"], 0.014)
        canvas.write(cfg.out / "ellipses.svg", [
            "figure: numerical ranges of compressions with a pinned eigenvalue",
            f"seed={cfg.seed} samples={cfg.n_samples}", f"a={a.real:.6g}{a.imag:+.6g}i"])
    return EXIT_OK


COMMANDS = {
    "lambda": cmd_lambda, "bset": cmd_bset, "witness": cmd_witness,
    "verify": cmd_verify, "continuity": cmd_continuity, "ellipses": cmd_ellipses,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matrix or spectrum JSON (witness JSON for verify)")
    common.add_argument("--spectrum", help='inline eigenvalues "re,im;re,im;..."')
    common.add_argument("--a", help='point "re,im"')
    common.add_argument("--b", help='second point "re,im" (witness)')
    common.add_argument("--k", type=int, help="rank of the numerical range (lambda)")
    common.add_argument("--method", choices=["lisze", "normal", "both"], default="both")
    common.add_argument("--samples", type=int, default=4000)
    common.add_argument("--theta-steps", type=int, default=4096)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default=".")
    common.add_argument("--emit", default="csv,svg")
    common.add_argument("--path", help="approach path for continuity, e.g. from:1,0,8")
    parser = argparse.ArgumentParser(prog="normcompress", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if cfg.n_samples < 1:
            raise PreconditionError("--samples must be positive")
        return COMMANDS[args.command](args, cfg)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
