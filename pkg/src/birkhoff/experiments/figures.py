"""Data emitters for figures 1-7.

Each ``run_figure`` call writes plain tables plus ``<fig>_manifest.json``.  No
timestamps or host data go into any file, so equal configs give equal bytes.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..complexprod import build_B_n, build_F_n
from ..distribution import fourier_coeffs, ratio_histogram
from ..observables import Observable
from ..renorm import build_beta_n, build_f_n, build_h_n
from ..rotations import RotationNumber, convergent, preset
from ..sums import birkhoff_irrational, subsequence_at_convergents
from .config import ExperimentConfig

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

FIGURE_HELP = {
    "fig1": "trace S_k up to q_14 with the S_{q_n} and S_{q_n - 1} envelopes (Figure 1)",
    "fig2": "200-bin histogram of S_k/log k on [0, 2] up to q_24, q_28 with --deep (Figure 2)",
    "fig3": "f_n and beta_n at n = 24 (Figure 3)",
    "fig4": "beta against its rescalings beta_1, beta_2 (Figure 4)",
    "fig5": "f_{3n}, f_{3n+1}, f_{3n+2} at n = 3 for sqrt(41) - 6 (Figure 5)",
    "fig6": "Hecke sawtooth trace and h_16, h_17 against -+ (pi/sqrt5) x^2 (Figure 6)",
    "fig7": "images of F_n and B_n at Fibonacci labels 15 and 16 (Figure 7)",
}


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def write_table(out: Path, name: str, columns: Dict[str, Sequence], fmt: str = "csv") -> str:
    """Write equal-length columns as CSV (17 significant digits) or JSON; return the file name."""
    cols = {k: list(np.asarray(v).tolist()) if not isinstance(v, list) else v
            for k, v in columns.items()}
    lengths = {len(v) for v in cols.values()}
    if len(lengths) > 1:
        raise ValueError(f"table {name}: columns differ in length {sorted(lengths)}")
    if fmt == "json":
        fname = f"{name}.json"
        data = {k: [None if isinstance(x, float) and not math.isfinite(x) else x for x in v]
                for k, v in cols.items()}
        (out / fname).write_text(json.dumps(data, sort_keys=False) + "\n")
        return fname
    fname = f"{name}.csv"
    with open(out / fname, "w") as fh:
        fh.write(",".join(cols) + "\n")
        for row in zip(*cols.values()):
            fh.write(",".join("" if isinstance(x, float) and math.isnan(x) else _fmt(x)
                              for x in row) + "\n")
    return fname


def _convergent_rows(rot: RotationNumber, ns: Sequence[int], index_offset: int) -> List[dict]:
    rows = []
    for n in ns:
        c = convergent(rot, n, index_offset)
        rows.append({"n": n, "p": c.p, "q": c.q})
    return rows


def _grid(N: int) -> np.ndarray:
    return (np.arange(N) + 0.5) / N


def _fig1(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot, obs = cfg.rotation(), cfg.observable()
    n = cfg.n or 14
    q = convergent(rot, n, cfg.index_offset).q
    K = cfg.K or q
    trace = birkhoff_irrational(obs, rot, K, cfg.x0_point())
    k = np.arange(1, K + 1)
    ratio = np.full(K, np.nan)
    ratio[1:] = trace.values[1:] / np.log(k[1:])
    files.append(write_table(out, "fig1_trace", {"k": k, "S_k": trace.values, "S_k/log(k)": ratio},
                             cfg.format))
    env = [c for c in subsequence_at_convergents(obs, rot, n, cfg.x0_point(), cfg.index_offset)
           if c.q <= K and c.q >= 2]
    files.append(write_table(out, "fig1_envelopes", {
        "n": [c.n for c in env], "q_n": [c.q for c in env],
        "S_qn": [c.S_q for c in env], "S_qn_minus_1": [c.S_q_minus_1 for c in env],
        "S_qn_minus_1/log(q_n)": [c.S_q_minus_1 / math.log(c.q) for c in env],
    }, cfg.format))
    return {"n": n, "K": K, "convergents": _convergent_rows(rot, range(1, n + 1), cfg.index_offset)}


def _fig2(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot, obs = cfg.rotation(), cfg.observable()
    n = cfg.n or (28 if cfg.deep else 24)
    K = cfg.K or convergent(rot, n, cfg.index_offset).q
    trace = birkhoff_irrational(obs, rot, K, cfg.x0_point())
    lo, hi = cfg.range
    h = ratio_histogram(trace, K, cfg.bins, lo, hi)
    files.append(write_table(out, "fig2_histogram",
                             {"bin_center": h.centers, "normalized_density": h.density()}, cfg.format))
    for norm in ("logk", "logqn"):
        fc = fourier_coeffs(trace, K, cfg.m_max, norm)
        z = fc.coeffs
        files.append(write_table(out, f"fig2_fourier_{norm}", {
            "m": list(range(len(z))), "Re": z.real, "Im": z.imag, "modulus": np.abs(z)}, cfg.format))
    return {"n": n, "K": K, "bins": cfg.bins, "range": [lo, hi], "m_max": cfg.m_max,
            "total": h.total, "out_of_range": h.out_of_range}


def _step_columns(step) -> Dict[str, np.ndarray]:
    return {"x_left": np.arange(step.q) / step.q, "value": step.vals}


def _fig3(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot, obs = cfg.rotation(), cfg.observable()
    n = cfg.n or 24
    f = build_f_n(obs, rot, n, cfg.index_offset)
    beta = build_beta_n(f, rot)
    files.append(write_table(out, f"fig3_f_{n}", _step_columns(f), cfg.format))
    files.append(write_table(out, f"fig3_beta_{n}", _step_columns(beta), cfg.format))
    return {"n": n, "q_n": f.q, "f_one_minus": f.one_minus, "beta_one_minus": beta.one_minus}


def _fig4(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot, obs = cfg.rotation(), cfg.observable()
    n = cfg.n or 24
    beta = build_beta_n(build_f_n(obs, rot, n, cfg.index_offset), rot)
    alpha = rot.value
    ia = int(math.floor(alpha * beta.q))
    a, b, c = float(beta.vals[ia - 1]), float(beta.vals[ia + 1]), beta.one_minus
    x = _grid(1000)
    ref = beta(x)
    b1 = beta(alpha * x) * c / a
    b2 = (beta(alpha + (1 - alpha) * x) - b) * c / (c - b)
    files.append(write_table(out, "fig4_beta_rescalings", {
        "x": x, "beta": ref, "beta_1": b1, "beta_2": b2,
        "residual_1": ref - b1, "residual_2": ref - b2}, cfg.format))
    return {"n": n, "q_n": beta.q, "a": a, "b": b, "c": c}


def _fig5(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot = cfg.rotation() if cfg.alpha != "golden" else preset("sqrt41minus6")
    obs = cfg.observable()
    L = len(rot.cf_period)
    n = cfg.n or 3
    cols: Dict[str, np.ndarray] = {"x": _grid(2000)}
    qs = {}
    for r in range(L):
        m = L * n + r
        f = build_f_n(obs, rot, m, cfg.index_offset)
        cols[f"f_{m}"] = f.sample(2000)
        qs[m] = f.q
    files.append(write_table(out, "fig5_f_family", cols, cfg.format))
    return {"n": n, "period": L, "q": {str(k): v for k, v in qs.items()}}


def _fig6(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot = cfg.rotation()
    obs = cfg.observable() if cfg.obs != "logsin" else Observable.hecke(scale=2 * math.pi)
    offset = cfg.index_offset or 1
    n = cfg.n or 16
    K = cfg.K or convergent(rot, 20).q
    trace = birkhoff_irrational(obs, rot, K, cfg.x0_point())
    files.append(write_table(out, "fig6_trace", {"k": np.arange(1, K + 1), "S_k": trace.values},
                             cfg.format))
    c = math.pi / math.sqrt(5)
    meta = {"n": [n, n + 1], "K": K, "c": c, "index_offset": offset}
    for m in (n, n + 1):
        h = build_h_n(obs, rot, m, offset)
        x = np.arange(h.q) / h.q
        # even labels approach -c x^2, odd labels +c x^2
        sign = -1.0 if m % 2 == 0 else 1.0
        files.append(write_table(out, f"fig6_h_{m}", {
            "x_left": x, "value": h.vals, "reference": sign * c * x ** 2}, cfg.format))
        meta[f"sup_gap_{m}"] = float(np.max(np.abs(h.vals - sign * c * x ** 2)))
    return meta


def _fig7(cfg: ExperimentConfig, out: Path, files: List[str]) -> dict:
    rot = cfg.rotation()
    offset = cfg.index_offset or 1
    n = cfg.n or 15
    meta = {"n": [n, n + 1], "index_offset": offset}
    for m in (n, n + 1):
        F = build_F_n(rot, m, offset)
        B = build_B_n(F, rot)
        for name, fn in (("F", F), ("B", B)):
            z = fn.vals
            files.append(write_table(out, f"fig7_{name}_{m}", {
                "x_left": np.arange(fn.q) / fn.q, "Re": z.real, "Im": z.imag}, cfg.format))
        meta[f"q_{m}"] = F.q
    return meta


_RUNNERS = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4,
            "fig5": _fig5, "fig6": _fig6, "fig7": _fig7}


def run_figure(fig: str, cfg: Optional[ExperimentConfig] = None) -> List[Path]:
    """Write the data behind ``fig`` into cfg.out; return the written paths (manifest last)."""
    if fig not in _RUNNERS:
        raise ValueError(f"unknown figure {fig!r}; choose from {', '.join(FIGURES)}")
    cfg = cfg or ExperimentConfig()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    files: List[str] = []
    params = _RUNNERS[fig](cfg, out, files)
    manifest = {"figure": fig, "description": FIGURE_HELP[fig], "config": cfg.to_dict(),
                "rotation": cfg.rotation().as_dict(), "parameters": params, "files": files}
    mname = f"{fig}_manifest.json"
    (out / mname).write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return [out / f for f in files] + [out / mname]
