"""Compare the frozen probe thresholds with the oracle sweep they came from.

    python scripts/lock_thresholds.py            # read the shipped provenance file
    python scripts/lock_thresholds.py --refresh  # rerun the oracle first (a few seconds)
"""
import argparse

from birkhoff.experiments import DEFAULT_PROVENANCE, THRESHOLDS, load_provenance, run_oracle


def observed(prov):
    """Worst observed value per threshold key, where the sweep records one."""
    sweep = prov["suites"]["renorm"]["golden_logsin"]
    hist = prov["suites"]["distribution"]["histogram"]
    cplx = prov["suites"]["complex"]["F_n_fibonacci_labels"]
    return {
        "f_cauchy_median_n24": sweep["24"]["f_cauchy_median"],
        "f_x_envelope_slack": sweep["24"]["x_envelope_ratio"] - 1,
        "beta_monotone_violation_n24": sweep["24"]["beta_violation"],
        "beta_selfsim_lower_sup_rel": sweep["24"]["selfsim_lower_sup_rel"],
        "beta_selfsim_upper_sup_rel": sweep["24"]["selfsim_upper_sup_rel"],
        "symmetry_defect_q24": hist["24"]["symmetry_defect"],
        "fourier_stability_gap": max(prov["suites"]["distribution"]["fourier_gap_20_24"].values()),
        "half_plane_violation": max(min(r["upper_fraction"], r["lower_fraction"]) for r in cplx.values()),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--refresh", action="store_true")
    ap.add_argument("--provenance", default=DEFAULT_PROVENANCE)
    args = ap.parse_args(argv)
    if args.refresh:
        run_oracle(path=args.provenance)
    obs = observed(load_provenance(args.provenance))
    print(f"{'threshold':34s} {'locked':>10s} {'observed':>12s}  margin")
    for key, locked in sorted(THRESHOLDS.items()):
        if key in obs:
            print(f"{key:34s} {locked:10.4g} {obs[key]:12.4g}  {'ok' if obs[key] < locked else 'EXCEEDED'}")
        else:
            print(f"{key:34s} {locked:10.4g} {'(test only)':>12s}")


if __name__ == "__main__":
    main()
