#!/usr/bin/env python3
"""Run the full transference pipeline at desk scale and pretty-print the
staged report (weights -> spectra -> Bohr smoothing -> level sets ->
sumset count -> three-fold sums -> integer lift)."""

import argparse
import json

from chen3.transference import run_transference


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=99_999,
                    help="odd multiple of 3")
    ap.add_argument("--profile", choices=("desk", "paper"), default="desk")
    ap.add_argument("--kappa", type=float)
    ap.add_argument("--delta", type=float)
    ap.add_argument("--epsilon", type=float)
    args = ap.parse_args()

    overrides = {k: v for k, v in
                 (("kappa", args.kappa), ("delta", args.delta),
                  ("epsilon", args.epsilon)) if v is not None}
    report = run_transference(args.n, profile=args.profile, overrides=overrides)
    print(json.dumps(report, indent=2, default=str))


if __name__ == "__main__":
    main()
