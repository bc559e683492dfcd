"""Command-line front end.

Exit codes: 0 all checks pass, 1 some check failed, 2 flagged (or an
unreadable member in ``report``), 64 usage error or unknown suite,
65 spec/config parse error, 66 constructor precondition violated,
67 grid outside the reliable radius, 68 empty results directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import specio, suites
from .analysis import operator_norm
from .errors import PreconditionError, ReliabilityWarning, SpecError
from .transforms import berezin, reliable_radius

EXIT_OK, EXIT_FAIL, EXIT_FLAGGED = 0, 1, 2
EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_RADIUS, EXIT_EMPTY = 64, 65, 66, 67, 68

SUITE_TITLES = {
    "weyl-toeplitz": "Weyl operators are Toeplitz operators with plane-wave symbols",
    "berezin-heat": "Berezin transform of T_f is the heat transform of f at time 1",
    "composition-kernel": "bivariate Berezin transform of a product",
    "wco-symbol": "weighted composition operators as Toeplitz operators",
    "wco-berezin": "Berezin transform of weighted composition operators",
    "distance-bound": "distance of non-compact weighted composition operators to the Toeplitz algebra",
    "volterra-matrix": "V_(z^2/2) equals the Toeplitz operator of (z/|z|)^2",
    "volterra-berezin": "Berezin series of Volterra-type operators",
    "volterra-decomposition": "Volterra-type operators in the Toeplitz algebra",
    "index-volterra": "Fredholm index of V_(z^2/2) is -2",
    "singular-multiplier": "singular integral operators as Fourier multipliers, norm sup|m|",
    "singular-berezin": "Berezin transform of singular integral operators",
    "singular-shift": "phase-space shifts of singular integral operators",
    "singular-vertical-toeplitz": "singular integral operators as vertical Toeplitz operators",
    "toeplitztype-convolution": "Toeplitz-type operators as QHA convolutions",
    "laguerre-fourier-weyl": "Fourier-Weyl transform of e_j x e_j",
    "hausdorff-eigen": "Hausdorff operators of atomic measures as radial Toeplitz operators",
    "hausdorff-norm": "norm of Hausdorff operators with positive measures",
    "hausdorff-decay": "Berezin transform of Hausdorff operators at infinity",
    "localization-wiener": "off-diagonal domination of Hausdorff and Weyl kernels",
    "bargmann-basis": "Bargmann transform maps Hermite functions to e_n",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _complex_arg(s: str) -> complex:
    try:
        if "," in s:
            re_, im_ = s.split(",")
            return complex(float(re_), float(im_))
        return complex(s.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}") from exc


def _load_config(args) -> suites.RunConfig:
    path = args.config or os.environ.get("FOCKBENCH_CONFIG")
    cfg = suites.RunConfig.load(path) if path else suites.RunConfig()
    if getattr(args, "truncation", None):
        cfg = suites.with_truncation(cfg, args.truncation)
    if getattr(args, "out", None):
        cfg = suites.replace(cfg, out=str(args.out))
    return cfg


def _err(msg):
    print(f"fockbench: {msg}", file=sys.stderr)


def cmd_verify(args) -> int:
    name = args.suite
    if name != "all" and name not in suites.SUITES:
        _err(f"unknown suite {name!r}; choose from {', '.join(suites.SUITES)}, all")
        return EXIT_USAGE
    try:
        cfg = _load_config(args)
    except SpecError as exc:
        _err(str(exc))
        return EXIT_PARSE
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    statuses = []
    for s in (suites.SUITES if name == "all" else (name,)):
        res = suites.run_suite(s, cfg)
        st = suites.suite_status(res)
        statuses.append(st)
        (out / f"{s}.json").write_text(suites.payload(res) + "\n")
        print(f"{st.upper():8s} {s} ({len(res['checks'])} checks, {res['wall_time']:.2f}s)")
        for c in res["checks"]:
            if c["status"] != "pass":
                print(f"    {c['status']}: {c['name']} measured={c['measured']} expected={c['expected']} tol={c['tolerance']}")
    return suites.exit_code(statuses)


def _build(args):
    spec = specio.load_spec(args.spec)
    return specio.build_from_dict(spec, args.truncation)


def _guarded(fn):
    def run(args):
        try:
            return fn(args)
        except SpecError as exc:
            _err(f"parse error: {exc}")
            return EXIT_PARSE
        except PreconditionError as exc:
            _err(f"precondition violated: {exc}")
            return EXIT_PRECONDITION
    return run


@_guarded
def cmd_matrix(args) -> int:
    A = _build(args)
    specio.write_matrix(A, args.out)
    print(f"wrote {A.dim}x{A.dim} matrix to {args.out}")
    return EXIT_OK


@_guarded
def cmd_berezin_grid(args) -> int:
    n = args.resolution
    if n < 1 or args.half_width < 0:
        _err("grid needs resolution >= 1 and half-width >= 0")
        return EXIT_USAGE
    A = _build(args)
    c = args.center
    g = np.linspace(-args.half_width, args.half_width, n) if n > 1 else np.zeros(1)
    pts = (c.real + g[:, None] + 1j * (c.imag + g[None, :])).ravel()
    R = reliable_radius(A.dim)
    if np.max(np.abs(pts)) > R + 1e-12 and not args.force:
        _err(f"grid reaches |z| = {np.max(np.abs(pts)):.3g}, beyond the reliable radius {R:.3g} for N = {A.dim} (use --force)")
        return EXIT_RADIUS
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ReliabilityWarning)
        vals = np.atleast_1d(berezin(A, pts))
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "value_re", "value_im"])
        for p, v in zip(pts, vals):
            w.writerow([repr(float(p.real)), repr(float(p.imag)), repr(float(v.real)), repr(float(v.imag))])
    print(f"wrote {pts.size} Berezin samples to {args.out}")
    return EXIT_OK


@_guarded
def cmd_spectrum(args) -> int:
    A = _build(args)
    M = A.entries
    sv = np.sort(np.linalg.svd(M, compute_uv=False))[::-1]
    scale = max(operator_norm(M) ** 2, 1e-300)
    normal = bool(np.max(np.abs(M @ M.conj().T - M.conj().T @ M), initial=0.0) <= 1e-10 * scale)
    doc = {"dim": A.dim, "singular_values": [float(s) for s in sv], "normal": normal}
    if normal:
        ev = np.linalg.eigvals(M)
        ev = sorted(ev, key=lambda v: (-v.real, -v.imag))
        doc["eigenvalues"] = [[float(v.real), float(v.imag)] for v in ev]
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote spectrum of {A.dim}x{A.dim} section to {args.out}")
    return EXIT_OK


def cmd_report(args) -> int:
    d = Path(args.results_dir)
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if not files:
        _err(f"no result files in {d}")
        return EXIT_EMPTY
    rows, codes = [], []
    for f in files:
        try:
            res = json.loads(f.read_text())
            st = suites.suite_status(res)
            suite = res["suite"]
            n = len(res["checks"])
            nfail = sum(c["status"] == "fail" for c in res["checks"])
        except (OSError, ValueError, KeyError, TypeError):
            rows.append({"file": f.name, "suite": f.stem, "status": "unreadable", "result": SUITE_TITLES.get(f.stem, "")})
            codes.append("flagged")
            continue
        rows.append({"file": f.name, "suite": suite, "status": st, "checks": n, "failed": nfail,
                     "result": SUITE_TITLES.get(suite, "")})
        codes.append(st)
    overall = max(codes, key=lambda s: suites.STATUS_ORDER[s])
    if any(r["status"] == "unreadable" for r in rows) and overall != "fail":
        overall = "unreadable"
    doc = {"overall": overall, "rows": rows}
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    width = max(len(r["suite"]) for r in rows)
    for r in rows:
        print(f"{r['suite']:{width}s}  {r['status']:10s}  {r['result']}")
    print(f"overall: {overall}")
    return suites.exit_code(codes)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fockbench", description="Numerical checks for operators on the Fock space.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help="suite name or 'all'")
    v.add_argument("--config", help="JSON run config (falls back to $FOCKBENCH_CONFIG)")
    v.add_argument("--out", help="output directory for SuiteResult files")
    v.add_argument("--truncation", type=int, help="truncation N (scales the smaller sizes too)")
    v.set_defaults(func=cmd_verify)

    def spec_cmd(name, func, helptext):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("spec", help="operator spec (JSON)")
        s.add_argument("--truncation", type=int, default=48)
        s.add_argument("--out", required=True)
        s.set_defaults(func=func)
        return s

    spec_cmd("matrix", cmd_matrix, "export the truncated matrix")
    g = spec_cmd("berezin-grid", cmd_berezin_grid, "sample the Berezin transform on a square grid")
    g.add_argument("--center", type=_complex_arg, default=0j, help="grid center, 're,im'")
    g.add_argument("--half-width", type=float, default=1.0)
    g.add_argument("--resolution", type=int, default=11)
    g.add_argument("--force", action="store_true", help="allow points beyond the reliable radius")
    spec_cmd("spectrum", cmd_spectrum, "singular values and (for normal sections) eigenvalues")

    r = sub.add_parser("report", help="aggregate SuiteResult files")
    r.add_argument("results_dir")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "truncation", None) is not None and args.truncation < 1:
        _err("--truncation must be positive")
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
