"""Plot the CSV tables written by ``birkhoff figure``.

    birkhoff figure fig1 --out results
    python scripts/render_figures.py results

Needs matplotlib (``pip install artifact[plot]``).
"""
import argparse
import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    cols = {h: [] for h in header}
    for r in body:
        for h, v in zip(header, r):
            cols[h].append(float(v) if v else math.nan)
    return cols


def _step(ax, path, label=None, key="value"):
    t = read(path)
    ax.step(t["x_left"], t[key], where="post", lw=0.6, label=label or path.stem)
    return t


def fig1(d, ax):
    t = read(d / "fig1_trace.csv")
    ax.plot(t["k"], t["S_k"], lw=0.5)
    ax.set_xlabel("k")
    ax.set_ylabel("S_k")


def fig2(d, ax):
    t = read(d / "fig2_histogram.csv")
    ax.bar(t["bin_center"], t["normalized_density"], width=t["bin_center"][1] - t["bin_center"][0])
    ax.set_xlabel("S_k / log k")


def fig3(d, ax):
    for p in sorted(d.glob("fig3_*.csv")):
        _step(ax, p)
    ax.legend()


def fig4(d, ax):
    t = read(d / "fig4_beta_rescalings.csv")
    for k in ("beta", "beta_1", "beta_2"):
        ax.plot(t["x"], t[k], lw=0.7, label=k)
    ax.legend()


def fig5(d, ax):
    t = read(d / "fig5_f_family.csv")
    for k in t:
        if k != "x":
            ax.plot(t["x"], t[k], lw=0.6, label=k)
    ax.legend()


def fig6(d, ax):
    for p in sorted(d.glob("fig6_h_*.csv")):
        t = _step(ax, p)
        ax.plot(t["x_left"], t["reference"], "k--", lw=0.5)
    ax.legend()


def fig7(d, ax):
    for p in sorted(d.glob("fig7_*.csv")):
        t = read(p)
        ax.plot(t["Re"], t["Im"], lw=0.5, label=p.stem)
    ax.set_aspect("equal")
    ax.legend()


PLOTS = {f.__name__: f for f in (fig1, fig2, fig3, fig4, fig5, fig6, fig7)}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("directory", type=Path)
    ap.add_argument("--only", choices=sorted(PLOTS), action="append")
    args = ap.parse_args(argv)
    for name in args.only or sorted(PLOTS):
        if not (args.directory / f"{name}_manifest.json").exists():
            continue
        fig, ax = plt.subplots(figsize=(7, 4))
        PLOTS[name](args.directory, ax)
        ax.set_title(name)
        fig.tight_layout()
        out = args.directory / f"{name}.png"
        fig.savefig(out, dpi=150)
        plt.close(fig)
        print(out)


if __name__ == "__main__":
    main()
