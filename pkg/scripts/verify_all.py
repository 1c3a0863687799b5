"""Run every suite and write the JSON report next to a short text summary."""
import argparse
import sys
from pathlib import Path

from ncgkk.config import load_config
from ncgkk.verify import run_verify

ap = argparse.ArgumentParser()
ap.add_argument("--out", default="verify_report.json")
ap.add_argument("--config")
args = ap.parse_args()

rep = run_verify("all", load_config(args.config).verify)
Path(args.out).write_text(rep.to_json() + "\n")
print(rep.to_text().splitlines()[-1])
sys.exit(0 if rep.status == "pass" else 1)
