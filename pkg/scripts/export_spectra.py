"""Write the closed-form and truncated spectra as CSV files into one directory."""
import argparse
from pathlib import Path

from ncgkk.cli import spectrum_text
from ncgkk.config import SpectrumConfig

ap = argparse.ArgumentParser()
ap.add_argument("--out", default="spectra")
ap.add_argument("--kmax", type=int, default=10)
ap.add_argument("--nmax", type=int, default=10)
ap.add_argument("--box", type=int, default=8)
ap.add_argument("--theta", type=float, default=0.25)
args = ap.parse_args()

out = Path(args.out)
out.mkdir(parents=True, exist_ok=True)
sc = SpectrumConfig(kmax=args.kmax, nmax=args.nmax, box=args.box, theta=args.theta)
for model in ("s3", "d0", "s2shifted", "nctorus", "product"):
    (out / f"{model}.csv").write_text(spectrum_text(model, sc))
    print(out / f"{model}.csv")
