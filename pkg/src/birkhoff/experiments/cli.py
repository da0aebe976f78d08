"""Command-line entry point: ``birkhoff <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..complexprod import build_B_n, build_F_n, polygon_table, product_P
from ..distribution import fourier_coeffs, ratio_histogram, symmetry_defect
from ..errors import BirkhoffError
from ..renorm import (
    beta_selfsimilarity_report,
    build_beta_n,
    build_beta_periodic,
    build_f_n,
    build_f_nm,
    build_h_n,
    build_s_n,
    monotonicity_violation,
)
from ..rotations import convergent
from ..sums import birkhoff_irrational
from .config import ExperimentConfig
from .figures import FIGURE_HELP, FIGURES, write_table
from .oracle import DEFAULT_PROVENANCE, SUITES, run_oracle
from .regression import run_regression

SUBCOMMANDS = {
    "sums": "S_1..S_K along the orbit (Figure 1 trace)",
    "renorm": "step functions f_n, h_n, s_n and f_{n,m} (Figures 3, 5, 6)",
    "beta": "beta_n with its rescaling residuals (Figures 3, 4, 5)",
    "distribution": "histogram of S_k/log k (Figure 2)",
    "fourier": "Fourier coefficients of S_k/log k (Figure 2 companion)",
    "complex": "F_n and B_n images and P_K (Figure 7)",
    "polygon": "|P_{q_n - 1}(p_n/q_n)| against q_n (no figure; diagonal identity table)",
    "figure": "all data behind one figure: " + ", ".join(FIGURES),
    "oracle": "256-bit and n-sweep references; writes the provenance file (no figure)",
    "regression": "evaluate the golden-value records (no figure)",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", default="golden",
                   help="preset (golden, silver, sqrt41minus6, sqrt3minus1over2, sqrt2minus1over2) "
                        "or a,b,c,d for (a + b sqrt d)/c")
    p.add_argument("--obs", default="logsin",
                   help="logsin | hecke | hecke-raw | hecke-rad | trigpoly:c0,c1,... "
                        "(f_n and h_n do not depend on the Hecke mean, so either form reproduces Figure 6)")
    p.add_argument("--n", type=int, default=None, help="convergent index (default depends on command)")
    p.add_argument("--K", type=int, default=None, help="sum length (default q_n)")
    p.add_argument("--x0", default="0", help="orbit start as a fraction, e.g. 1/2")
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--range", type=float, nargs=2, default=(0.0, 2.0), metavar=("LO", "HI"))
    p.add_argument("--normalization", choices=("logk", "logqn"), default="logk")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--deep", action="store_true", help="use q_28 instead of q_24 for histograms")
    p.add_argument("--index-offset", type=int, default=0,
                   help="1 selects Fibonacci labels with q = 1, 1, 2, 3, 5, ...")
    p.add_argument("--m", type=int, default=1, help="f_{n,m} step for renorm")
    p.add_argument("--m-max", type=int, default=32, help="largest Fourier mode")


def build_parser() -> argparse.ArgumentParser:
    epilog = "figures:\n" + "\n".join(f"  {k}: {v}" for k, v in FIGURE_HELP.items())
    parser = argparse.ArgumentParser(prog="birkhoff", description=__doc__, epilog=epilog,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command",
                                title="subcommands")
    for name, text in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=text, description=text)
        if name == "figure":
            p.add_argument("fig", choices=FIGURES)
        if name == "oracle":
            p.add_argument("--suite", action="append", choices=SUITES,
                           help="repeatable; default runs every suite")
            p.add_argument("--empty", action="store_true", help="write an empty provenance file")
        if name in ("oracle", "regression"):
            p.add_argument("--provenance", default=str(DEFAULT_PROVENANCE))
        if name not in ("oracle", "regression"):
            _common(p)
        elif name == "regression":
            p.add_argument("--out", default=None, help="write the JSON report here")
    return parser


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(alpha=args.alpha, obs=args.obs, n=args.n, K=args.K, x0=args.x0,
                            out=args.out, format=args.format, normalization=args.normalization,
                            index_offset=args.index_offset, bins=args.bins, range=tuple(args.range),
                            deep=args.deep, m=args.m, m_max=args.m_max)


def _K(cfg: ExperimentConfig, default_n: int) -> int:
    if cfg.K:
        return cfg.K
    return convergent(cfg.rotation(), cfg.n or default_n, cfg.index_offset).q


def _step(out, name, step, fmt) -> str:
    return write_table(out, name, {"x_left": np.arange(step.q) / step.q, "value": step.vals}, fmt)


def _manifest(out: Path, name: str, cfg: ExperimentConfig, files: List[str], extra=None) -> None:
    m = {"command": name, "config": cfg.to_dict(), "rotation": cfg.rotation().as_dict(),
         "files": files, **(extra or {})}
    (out / f"{name}_manifest.json").write_text(json.dumps(m, indent=2, sort_keys=True, default=str) + "\n")


def _run(args) -> int:
    if args.command == "oracle":
        path = run_oracle([] if args.empty else (args.suite or SUITES), args.provenance)
        print(f"wrote {path}")
        return 0
    if args.command == "regression":
        report = run_regression(args.provenance)
        text = report.to_json()
        if args.out:
            Path(args.out).write_text(text + "\n")
        for r in report.records:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.id} [{r.provenance}] "
                  f"actual={r.actual:.10g} expected={r.expected:.10g}")
        print(json.dumps(report.counts_by_provenance(), sort_keys=True))
        return 0 if report.passed else 1

    cfg = _config(args)
    if args.command == "figure":
        from .figures import run_figure
        for p in run_figure(args.fig, cfg):
            print(p)
        return 0

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    rot, obs, fmt = cfg.rotation(), cfg.observable(), cfg.format
    files: List[str] = []
    extra = {}
    cmd = args.command
    if cmd == "sums":
        trace = birkhoff_irrational(obs, rot, _K(cfg, 14), cfg.x0_point())
        k = np.arange(1, trace.K + 1)
        ratio = np.full(trace.K, np.nan)
        ratio[1:] = trace.ratios()
        files.append(write_table(out, "sums", {"k": k, "S_k": trace.values, "S_k/log(k)": ratio}, fmt))
        extra["metadata"] = trace.metadata()
    elif cmd == "renorm":
        n = cfg.n or 20
        off = cfg.index_offset
        files.append(_step(out, f"f_{n}_{cfg.m}", build_f_nm(obs, rot, n, cfg.m, off), fmt))
        files.append(_step(out, f"h_{n}", build_h_n(obs, rot, n, off), fmt))
        files.append(_step(out, f"s_{n}", build_s_n(obs, rot, n, off), fmt))
    elif cmd == "beta":
        n = cfg.n or 24
        f = build_f_n(obs, rot, n, cfg.index_offset)
        beta = build_beta_n(f, rot)
        files.append(_step(out, f"beta_{n}", beta, fmt))
        rep = beta_selfsimilarity_report(beta, rot)
        extra["selfsimilarity"] = asdict(rep)
        extra["monotonicity_violation"] = monotonicity_violation(beta)
        if len(rot.cf_period) == 2:
            p_, q_ = rot.cf_period
            ft = build_f_n(obs, rot, n + 1, cfg.index_offset).resample(f.q)
            bp = build_beta_periodic(f, ft, p_, q_, rot)
            files.append(_step(out, f"beta_periodic_{n}", bp, fmt))
            extra["periodic_monotonicity_violation"] = monotonicity_violation(bp)
    elif cmd == "distribution":
        n = cfg.n or (28 if cfg.deep else 24)
        K = cfg.K or convergent(rot, n, cfg.index_offset).q
        h = ratio_histogram(birkhoff_irrational(obs, rot, K, cfg.x0_point()), K, cfg.bins, *cfg.range)
        files.append(write_table(out, "histogram", {"bin_center": h.centers,
                                                    "normalized_density": h.density()}, fmt))
        extra.update(K=K, total=h.total, out_of_range=h.out_of_range)
        if cfg.bins % 2 == 0 and h.counts.sum():
            extra["symmetry_defect"] = symmetry_defect(h)
    elif cmd == "fourier":
        K = _K(cfg, 24)
        fc = fourier_coeffs(birkhoff_irrational(obs, rot, K, cfg.x0_point()), K, cfg.m_max,
                            cfg.normalization)
        z = fc.coeffs
        files.append(write_table(out, f"fourier_{cfg.normalization}", {
            "m": list(range(len(z))), "Re": z.real, "Im": z.imag, "modulus": np.abs(z)}, fmt))
    elif cmd == "complex":
        n = cfg.n or 15
        F = build_F_n(rot, n, cfg.index_offset)
        for name, fn in (("F", F), ("B", build_B_n(F, rot))):
            z = fn.vals
            files.append(write_table(out, f"{name}_{n}", {"x_left": np.arange(fn.q) / fn.q,
                                                           "Re": z.real, "Im": z.imag}, fmt))
        if cfg.K:
            P = product_P(rot, cfg.K, cfg.x0_point())
            extra["P_K"] = {"K": cfg.K, "log_abs": P.log_abs, "arg": P.arg}
    elif cmd == "polygon":
        rows = polygon_table(rot, cfg.n or 24, cfg.index_offset)
        files.append(write_table(out, "polygon", {"n": [r[0] for r in rows],
                                                  "|P_{q_n-1}|": [r[1] for r in rows],
                                                  "q_n": [r[2] for r in rows]}, fmt))
    _manifest(out, cmd, cfg, files, extra)
    for f in files:
        print(out / f)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (BirkhoffError, ValueError) as exc:
        print(f"birkhoff {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
