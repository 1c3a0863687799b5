"""Emit (log Lambda, log N(Lambda)) for the S3 and invariant-part spectra plus the fitted slopes.

Data only; plot with whatever is at hand.
"""
import argparse
import sys

import numpy as np

from ncgkk import spectra

ap = argparse.ArgumentParser()
ap.add_argument("--kmax", type=int, default=200)
ap.add_argument("--nmax", type=int, default=400)
args = ap.parse_args()

tables = {"s3": spectra.s3_dirac_spectrum(args.kmax), "d0": spectra.d0_invariant_spectrum(args.nmax)}
w = sys.stdout.write
w("model,log_lambda,log_count\n")
for name, t in tables.items():
    lams, counts = spectra.counting_function(t)
    for l, c in zip(np.log(lams), np.log(counts)):
        w(f"{name},{l:.12g},{c:.12g}\n")
for name, t in tables.items():
    print(f"# {name} slope {spectra.summability_exponent(t):.4f}", file=sys.stderr)
