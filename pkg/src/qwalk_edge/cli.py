"""Command-line front end: edge detection runs, block mode, baselines, sweeps.

Every run writes its outputs into --out-dir and finishes with a
``summary.json`` echoing the full parameter set and the computed metrics.
Exit codes: 0 on success, 1 on I/O failure, 2 on bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, baselines, blocks1d, lattice2d
from .imagekit import Image, ImageFormatError, ProbabilityMap, load_image, pad_to_even, write_image
from .lattice2d import WalkParams
from .walkcore import CoinKind

__all__ = ["main", "build_parser"]

_COIN_NAMES = {"grover": CoinKind.GROVER_LACKADAISICAL, "skw": CoinKind.SKW, "cg": CoinKind.CG}


class UsageError(ValueError):
    """Bad flag values detected after argparse (exit code 2)."""


def _float_field(value: float) -> str:
    return repr(float(value))


def _write_curve_csv(path: Path, values: np.ndarray) -> None:
    lines = ["step,p_s"]
    lines.extend(f"{step},{_float_field(p)}" for step, p in enumerate(values))
    path.write_text("\n".join(lines) + "\n")


def _write_grid_csv(path: Path, values: np.ndarray) -> None:
    lines = [",".join(_float_field(v) for v in row) for row in values]
    path.write_text("\n".join(lines) + "\n")


def _write_summary(path: Path, summary: dict) -> None:
    path.write_text(json.dumps(summary, indent=2) + "\n")


def _summary_base(method: str, args: argparse.Namespace, img: Image) -> dict:
    return {
        "tool": "qwalk-edge",
        "version": __version__,
        "method": method,
        "input": str(args.input),
        "image": {"width": img.width, "height": img.height, "n_pixels": img.width * img.height},
    }


def _parse_steps(raw: str) -> int | None:
    """Returns None for 'auto', else a nonnegative step count."""
    if raw == "auto":
        return None
    try:
        steps = int(raw)
    except ValueError:
        raise UsageError(f"--steps must be an integer or 'auto', got {raw!r}")
    if steps < 0:
        raise UsageError(f"--steps must be >= 0, got {steps}")
    return steps


def cmd_detect(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    steps = _parse_steps(args.steps)
    img = load_image(args.input)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    kind = _COIN_NAMES[args.coin]

    if steps is None:
        scout, _, _ = lattice2d.run_search(
            img, WalkParams(kind=kind, s=args.self_loop_weight, t=args.horizon, a_th=args.threshold)
        )
        t_run = scout.argmax_t
        curve = scout
    else:
        t_run = steps
        curve = None
    params = WalkParams(kind=kind, s=args.self_loop_weight, t=t_run, a_th=args.threshold)
    run_curve, state, marked = lattice2d.run_search(img, params)
    if curve is None:
        curve = run_curve

    raw = lattice2d.edge_map(state, img.width, img.height)
    edge = lattice2d.edge_map(state, img.width, img.height, p_th=args.edge_threshold)
    write_image(edge, out / "edge.png")
    write_image(raw, out / "raw.png")
    _write_grid_csv(out / "raw.csv", raw.values)
    _write_curve_csv(out / "curve.csv", curve.values)

    n = img.width * img.height
    summary = _summary_base("qws2d", args, img)
    summary["params"] = {
        "coin": args.coin,
        "s": args.self_loop_weight,
        "steps": t_run,
        "steps_requested": args.steps,
        "horizon": args.horizon,
        "a_th": args.threshold,
        "p_th": args.edge_threshold,
    }
    summary["n_vertices"] = n
    summary["n_marked"] = marked.m
    summary["metrics"] = {
        "p_s": float(run_curve.values[t_run]),
        "initial_p_s": marked.m / n,
        "argmax_t": curve.argmax_t,
        "max_p_s": curve.max_p,
    }
    summary["wall_seconds"] = time.perf_counter() - t0
    summary["outputs"] = {
        "edge": str(out / "edge.png"),
        "raw": str(out / "raw.png"),
        "raw_csv": str(out / "raw.csv"),
        "curve": str(out / "curve.csv"),
    }
    _write_summary(out / "summary.json", summary)
    return 0


def cmd_blocks(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.shots is not None and args.shots < 1:
        raise UsageError(f"--shots must be >= 1, got {args.shots}")
    img = pad_to_even(load_image(args.input))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    result = blocks1d.run_blocks(
        img,
        s=args.self_loop_weight,
        t=args.steps,
        a_th=args.threshold,
        p_th=args.edge_threshold,
        shots=args.shots,
        seed=args.seed,
    )

    write_image(result.edge, out / "edge.png")
    peak = result.vertex_probs.max()
    display = result.vertex_probs / peak if peak > 0 else result.vertex_probs
    write_image(Image(pixels=display, source_depth=8), out / "raw.png")
    _write_grid_csv(out / "raw.csv", result.vertex_probs)

    lines = ["block_x,block_y,m_local,p_s_block,estimated_p"]
    for rep in result.blocks:
        est = "" if rep.estimated_p is None else _float_field(rep.estimated_p)
        lines.append(f"{rep.block_x},{rep.block_y},{rep.m_local},{_float_field(rep.p_s_block)},{est}")
    (out / "blocks.csv").write_text("\n".join(lines) + "\n")

    summary = _summary_base("blocks1d", args, img)
    summary["params"] = {
        "s": args.self_loop_weight,
        "steps": args.steps,
        "a_th": args.threshold,
        "p_th": args.edge_threshold,
    }
    if args.shots is not None:
        summary["params"]["shots"] = args.shots
        summary["params"]["seed"] = args.seed
    summary["n_vertices"] = img.width * img.height
    summary["n_marked"] = sum(rep.m_local for rep in result.blocks)
    summary["metrics"] = {
        "mean_block_p_s": result.mean_success,
        "no_marked_blocks": result.no_marked_blocks,
    }
    summary["wall_seconds"] = time.perf_counter() - t0
    summary["outputs"] = {
        "edge": str(out / "edge.png"),
        "raw": str(out / "raw.png"),
        "raw_csv": str(out / "raw.csv"),
        "blocks": str(out / "blocks.csv"),
    }
    _write_summary(out / "summary.json", summary)
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    img = load_image(args.input)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    metrics: dict
    if args.method == "hed":
        result, edge, raw = baselines.hed(img, args.threshold)
        metrics = {"p_h": result.p_h, "p_h_tilde": result.p_h_tilde, "p_h_bar": result.p_h_bar}
        raw_values = raw.values
        write_image(raw, out / "raw.png")
    elif args.method == "qsobel":
        p_q, edge, raw, bound = baselines.qsobel(img, args.threshold)
        metrics = {"p_q": p_q, "bound_m_over_n": bound}
        raw_values = raw.values
        write_image(raw, out / "raw.png")
    else:  # sobel
        edge = baselines.sobel_edges(img, args.threshold)
        field = baselines.normalized_sobel(img)
        metrics = {"n_marked": int(edge.pixels.sum())}
        raw_values = field
        write_image(Image(pixels=field, source_depth=8), out / "raw.png")

    write_image(edge, out / "edge.png")
    _write_grid_csv(out / "raw.csv", raw_values)

    summary = _summary_base(args.method, args, img)
    summary["params"] = {"a_th": args.threshold}
    summary["metrics"] = metrics
    summary["wall_seconds"] = time.perf_counter() - t0
    summary["outputs"] = {
        "edge": str(out / "edge.png"),
        "raw": str(out / "raw.png"),
        "raw_csv": str(out / "raw.csv"),
    }
    _write_summary(out / "summary.json", summary)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    kinds = []
    for name in filter(None, (tok.strip() for tok in args.coins.split(","))):
        if name not in _COIN_NAMES:
            raise UsageError(f"unknown coin {name!r}; choose from {sorted(_COIN_NAMES)}")
        kinds.append(_COIN_NAMES[name])
    try:
        s_grid = [float(tok) for tok in filter(None, (t.strip() for t in args.s_grid.split(",")))]
    except ValueError as exc:
        raise UsageError(f"bad --s-grid value: {exc}")
    if not kinds:
        raise UsageError("--coins must name at least one coin")
    if not s_grid:
        raise UsageError("--s-grid must contain at least one value")

    img = load_image(args.input)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = lattice2d.sweep(img, kinds, s_grid, args.horizon, args.threshold)

    lines = ["kind,s,argmax_t,max_p_s"]
    curve_paths = []
    for row in rows:
        lines.append(f"{row.kind.value},{_float_field(row.s)},{row.argmax_t},{_float_field(row.max_p)}")
        curve_path = out / f"curve_{row.kind.value}_s{row.s:g}.csv"
        _write_curve_csv(curve_path, row.curve.values)
        curve_paths.append(str(curve_path))
    (out / "sweep.csv").write_text("\n".join(lines) + "\n")

    summary = _summary_base("qws2d", args, img)
    summary["params"] = {
        "coins": [k.value for k in kinds],
        "s_grid": s_grid,
        "horizon": args.horizon,
        "a_th": args.threshold,
    }
    summary["rows"] = [
        {"kind": row.kind.value, "s": row.s, "argmax_t": row.argmax_t, "max_p_s": row.max_p}
        for row in rows
    ]
    summary["wall_seconds"] = time.perf_counter() - t0
    summary["outputs"] = {"sweep": str(out / "sweep.csv"), "curves": curve_paths}
    _write_summary(out / "summary.json", summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk-edge",
        description="Image edge detection by quantum walk search, with baseline detectors.",
    )
    parser.add_argument("--version", action="version", version=f"qwalk-edge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="2D walk search over the whole image")
    detect.add_argument("--input", required=True)
    detect.add_argument("--coin", choices=sorted(_COIN_NAMES), default="cg")
    detect.add_argument("--self-loop-weight", type=float, default=0.01)
    detect.add_argument("--steps", default="auto", help="iteration count, or 'auto' to pick the curve peak")
    detect.add_argument("--horizon", type=int, default=200, help="steps scanned when --steps auto")
    detect.add_argument("--threshold", type=float, required=True, help="gradient marking threshold")
    detect.add_argument("--edge-threshold", type=float, required=True, help="probability binarization threshold")
    detect.add_argument("--out-dir", required=True)
    detect.set_defaults(func=cmd_detect)

    blocks = sub.add_parser("blocks", help="independent 4-cycle walks over 2x2 blocks")
    blocks.add_argument("--input", required=True)
    blocks.add_argument("--self-loop-weight", type=float, default=0.1)
    blocks.add_argument("--steps", type=int, default=2)
    blocks.add_argument("--threshold", type=float, required=True)
    blocks.add_argument("--edge-threshold", type=float, required=True)
    blocks.add_argument("--shots", type=int, default=None)
    blocks.add_argument("--seed", type=int, default=0)
    blocks.add_argument("--out-dir", required=True)
    blocks.set_defaults(func=cmd_blocks)

    baseline = sub.add_parser("baseline", help="comparison detectors")
    baseline.add_argument("--method", choices=["hed", "qsobel", "sobel"], required=True)
    baseline.add_argument("--input", required=True)
    baseline.add_argument("--threshold", type=float, required=True)
    baseline.add_argument("--out-dir", required=True)
    baseline.set_defaults(func=cmd_baseline)

    swp = sub.add_parser("sweep", help="grid of (coin, s) search runs")
    swp.add_argument("--input", required=True)
    swp.add_argument("--coins", required=True, help="comma-separated: grover,skw,cg")
    swp.add_argument("--s-grid", required=True, help="comma-separated self-loop weights")
    swp.add_argument("--horizon", type=int, required=True)
    swp.add_argument("--threshold", type=float, required=True)
    swp.add_argument("--out-dir", required=True)
    swp.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qwalk-edge: error: {exc}", file=sys.stderr)
        return 2
    except (ImageFormatError, OSError) as exc:
        print(f"qwalk-edge: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"qwalk-edge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
