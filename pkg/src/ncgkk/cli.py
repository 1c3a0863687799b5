"""ncgkk command line: verify, spectrum, report, gauge.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import gauge, spectra, torus
from .config import load_config
from .numeric import hermitian_eigenvalues
from .verify import SUITES, corrupted_table, gauge_composition_residual, gws_examples, gws_rule_residual, run_verify


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="TOML file with [verify] / [spectrum] sections")
    p.add_argument("--box", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--margin", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--json", dest="json_path", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncgkk", description="Checks and spectra for the Hopf and torus factorizations.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("all",) + SUITES)
    _common(v)
    v.add_argument("--corrupt-table", action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("spectrum", help="emit a spectrum table")
    s.add_argument("model", choices=("s3", "s2shifted", "d0", "nctorus", "product"))
    _common(s)
    s.add_argument("--format", dest="fmt", choices=("csv", "json"))

    r = sub.add_parser("report", help="run every suite and print a JSON report")
    _common(r)

    g = sub.add_parser("gauge", help="gauge identity residuals for one witness")
    g.add_argument("--model", choices=("torus", "gws"), required=True)
    g.add_argument("--witness", default=None,
                   help="torus: U1, U2, U1U2 or dual:N; gws: examples or random:K")
    _common(g)
    return ap


def _overrides(args) -> dict:
    ov = {k: getattr(args, k, None) for k in ("box", "theta", "margin", "nmax", "kmax")}
    if getattr(args, "fmt", None):
        ov["fmt"] = args.fmt
    return ov


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args, cfg) -> int:
    vc = cfg.verify
    if args.corrupt_table:
        vc = replace(vc, table_id=corrupted_table())
    rep = run_verify(args.suite, vc)
    print(rep.to_text())
    if rep.status == "fail":
        for c in rep.failures():
            print(f"FAILED {c.id}: {c.residual}", file=sys.stderr)
    if args.json_path:
        _emit(rep.to_json() + "\n", args.json_path)
    return 0 if rep.status == "pass" else 1


def spectrum_text(model: str, sc) -> str:
    if model == "s3":
        table = spectra.s3_dirac_spectrum(sc.kmax)
    elif model == "d0":
        table = spectra.d0_invariant_spectrum(sc.nmax)
    elif model == "s2shifted":
        table = spectra.s2_shifted_spectrum(sc.nmax)
    else:
        if sc.box < 1:
            raise ValueError("box >= 1 required")
        if model == "nctorus":
            M = torus.build_nc_torus(sc.box, sc.theta).dirac.matrix
        else:
            M = torus.torus_product_operator(sc.box).matrix
        spec = hermitian_eigenvalues(M)
        return spec.to_csv() if sc.fmt == "csv" else spec.to_json() + "\n"
    return table.to_csv() if sc.fmt == "csv" else table.to_json() + "\n"


def cmd_spectrum(args, cfg) -> int:
    _emit(spectrum_text(args.model, cfg.spectrum), args.json_path)
    return 0


def cmd_report(args, cfg) -> int:
    rep = run_verify("all", cfg.verify)
    _emit(rep.to_json() + "\n", args.json_path)
    return 0 if rep.status == "pass" else 1


def gauge_report(model: str, witness: str | None, vc) -> dict:
    rows = {}
    if model == "torus":
        witness = witness or "U1"
        m = torus.build_nc_torus(vc.box, vc.theta, vc.margin)
        if witness.startswith("dual:"):
            n = int(witness.split(":", 1)[1])
            rows["dual_action"] = gauge.dual_action_residual(m, n)
            rows["normal_subgroup"] = abs(gauge.normal_subgroup_witness(m, m.LU1, n) - 1.0)
            tol = 1e-12
        else:
            words = {"U1": m.LU1, "U2": m.LU2, "U1U2": m.LU1 @ m.LU2}
            if witness not in words:
                raise UsageError(f"unknown torus witness {witness!r}")
            rows["conjugation"] = gauge.conjugation_residual(m.spin(words[witness]), m.dirac.matrix, m.interior_spinor())
            tol = 1e-10
    else:
        witness = witness or "examples"
        if witness == "examples":
            z1, z2 = 0.7 - 1.1j, -0.3 + 2.0j
            for cid, got, want in gws_examples(z1, z2):
                rows[cid] = float(np.abs(np.array(got) - np.array(want)).max())
            tol = 0.0
        elif witness.startswith("random:"):
            k = int(witness.split(":", 1)[1])
            rows["gws_rule"] = gws_rule_residual(k, vc.seed)
            rows["composition"] = gauge_composition_residual(k, vc.seed)
            tol = 1e-12
        else:
            raise UsageError(f"unknown gws witness {witness!r}")
    status = "pass" if all(r <= tol for r in rows.values()) else "fail"
    return {"model": model, "witness": witness, "tolerance": tol, "status": status, "residuals": rows}


def cmd_gauge(args, cfg) -> int:
    try:
        out = gauge_report(args.model, args.witness, cfg.verify)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.json_path)
    return 0 if out["status"] == "pass" else 1


COMMANDS = {"verify": cmd_verify, "spectrum": cmd_spectrum, "report": cmd_report, "gauge": cmd_gauge}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = load_config(args.config, _overrides(args))
        return COMMANDS[args.cmd](args, cfg)
    except (UsageError, ValueError, OSError) as e:
        print(f"ncgkk: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
