"""Command-line front end: ``arealmahler {mahler,zeta,zeros,verify,plotdata}``.

Output is CSV (header row, 17 significant digits) or JSON lines.  Exit codes:
0 on success, 1 on computation errors or failed checks, 2 on bad flags.
Wall times are only written with ``--timing`` so that repeated runs with the
same flags produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import mahler, verify, walks, zetamahler
from .errors import ArealMahlerError

# error bounds each producer guarantees for its value
ERR_XYK = 1e-11
ERR_QK_THM12 = 1e-10
ERR_QK_DENSITY = 1e-9
ERR_ROOTS = 1e-12
ERR_ZETA = 1e-8

FIELDS = ("quantity", "k", "s_re", "s_im", "value_re", "value_im", "err", "method", "wall_time_ms")


@dataclass(frozen=True)
class OutputRecord:
    quantity: str
    value: complex
    err: float
    method: str
    k: float | None = None
    s: complex | None = None
    wall_time_ms: float = 0.0

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError("record value must be finite")
        if not self.method:
            raise ValueError("record method must be nonempty")
        if not self.err >= 0:
            raise ValueError("record err must be >= 0")

    def row(self) -> dict:
        v = complex(self.value)
        s = None if self.s is None else complex(self.s)
        return {
            "quantity": self.quantity,
            "k": self.k,
            "s_re": None if s is None else s.real,
            "s_im": None if s is None else s.imag,
            "value_re": v.real,
            "value_im": v.imag,
            "err": self.err,
            "method": self.method,
            "wall_time_ms": self.wall_time_ms,
        }


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def render(records: Iterable[OutputRecord], fmt: str) -> str:
    rows = [r.row() for r in records]
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in rows:
        w.writerow([_fmt(r[f]) for f in FIELDS])
    return buf.getvalue()


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _range(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from exc
    if not a < b:
        raise argparse.ArgumentTypeError(f"need lo < hi in {text!r}")
    return a, b


def _grid(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}") from exc
    if n < 1 or (n > 1 and not a < b):
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    return a, b, n


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a complex number such as -3.5+6.7j, got {text!r}") from exc


def _samples(text: str) -> int:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a sample count, got {text!r}") from exc
    if v < 1 or v != int(v):
        raise argparse.ArgumentTypeError(f"sample count must be a positive integer, got {text!r}")
    return int(v)


def _nonneg(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError("k must be >= 0")
    return v


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1e3 if self.enabled else 0.0
        return False


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

XYK_ROUTES = {False: ("cm", "hyp"), True: ("hyp3f2", "difference", "dilog", "direct")}
QK_ROUTES = {False: ("density",), True: ("thm12", "density")}


def cmd_mahler(args) -> list[OutputRecord]:
    out = []
    if args.family == "uni":
        if not args.coeffs:
            raise ArealMahlerError("--family uni needs --coeffs")
        p = mahler.UniPoly(tuple(args.coeffs))
        fn = mahler.pritsker_areal if args.areal else mahler.jensen_mahler
        with _Timer(args.timing) as t:
            mv = fn(p)
        return [OutputRecord("m_D" if args.areal else "m", mv.value, ERR_ROOTS, mv.method, None, None, t.ms)]
    quantity = ("m_D" if args.areal else "m") + ("(x+y+k)" if args.family == "xyk" else "(Q_k)")
    for k in args.k:
        if args.route == "mc":
            if not args.areal:
                raise ArealMahlerError("Monte Carlo estimates are areal; add --areal")
            cfg = walks.MCConfig(args.samples, args.seed, min(64, args.samples))
            fn = walks.mc_areal_mahler_xyk if args.family == "xyk" else walks.mc_areal_mahler_qk
            with _Timer(args.timing) as t:
                est = fn(k, cfg)
            out.append(OutputRecord(quantity, est.mean, est.std_error, "monte-carlo", k, None, t.ms))
            continue
        if args.family == "xyk":
            routes = XYK_ROUTES[args.areal] if args.all_routes else (args.route or XYK_ROUTES[args.areal][0],)
            fn = mahler.md_xyk if args.areal else mahler.m_xyk
            for r in routes:
                if r not in XYK_ROUTES[args.areal]:
                    raise ArealMahlerError(f"route {r!r} not available for this family")
                with _Timer(args.timing) as t:
                    mv = fn(k, r)
                out.append(OutputRecord(quantity, mv.value, ERR_XYK, f"{mv.method}:{r}", k, None, t.ms))
        else:
            if not args.areal:
                with _Timer(args.timing) as t:
                    mv = mahler.m_qk(k)
                out.append(OutputRecord(quantity, mv.value, ERR_QK_THM12, mv.method, k, None, t.ms))
                continue
            routes = QK_ROUTES[True] if args.all_routes else (args.route or "thm12",)
            for r in routes:
                if r not in QK_ROUTES[True]:
                    raise ArealMahlerError(f"route {r!r} not available for this family")
                with _Timer(args.timing) as t:
                    mv = mahler.md_qk(k, r)
                err = ERR_QK_THM12 if r == "thm12" else ERR_QK_DENSITY
                out.append(OutputRecord(quantity, mv.value, err, f"{mv.method}:{r}", k, None, t.ms))
    return out


def cmd_zeta(args) -> list[OutputRecord]:
    fns = {"zd_xyk": zetamahler.zd_xyk, "z_xyk": zetamahler.z_xyk, "z_x_plus_k": zetamahler.z_x_plus_k}
    out = []
    for k in args.k:
        for s in args.s:
            with _Timer(args.timing) as t:
                val = fns[args.function](s, k)
            out.append(OutputRecord(args.function, val, ERR_ZETA * max(1.0, abs(val)), "closed-form", k, s, t.ms))
    return out


def cmd_zeros(args) -> list[OutputRecord]:
    box = zetamahler.ZeroBox(args.re[0], args.re[1], args.im[0], args.im[1], args.density)
    with _Timer(args.timing) as t:
        zeros = zetamahler.find_zeros(box, args.k[0], check_winding=args.check_winding)
    out = [OutputRecord("zero of Z_D(s,x+y+k)", z.location, z.residual, "newton", args.k[0], None, t.ms) for z in zeros]
    if args.check_winding:
        count = zetamahler.winding_number(lambda s: zetamahler.zd_xyk(s, args.k[0]), box)
        out.append(OutputRecord("winding count", float(count), 0.0, "argument-principle", args.k[0], None, 0.0))
    return out


def cmd_verify(args) -> tuple[list[OutputRecord], bool]:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    out = []
    ok = True
    for name in names:
        kwargs = {}
        if name == "thm11" and args.grid:
            kwargs["grid"] = args.grid
        if name in ("crazymatrix", "ibp", "bmatrix") and args.k:
            kwargs["ks"] = tuple(args.k)
        if name == "montecarlo":
            kwargs["samples"] = args.samples
            kwargs["seed"] = args.seed
        with _Timer(args.timing) as t:
            checks = verify.run_suite(name, **kwargs)
        for c in checks:
            ok = ok and c.passed
            out.append(
                OutputRecord(
                    f"{name}: {c.name}", c.residual, c.tol, "pass" if c.passed else "FAIL", None, None, t.ms
                )
            )
    return out, ok


def cmd_plotdata(args) -> list[OutputRecord]:
    re_lo, re_hi, nre = args.re_grid
    im_lo, im_hi, nim = args.im_grid
    xs = np.linspace(re_lo, re_hi, nre)
    ys = np.linspace(im_lo, im_hi, nim)
    k = args.k[0]
    out = []
    for y in ys:
        for x in xs:
            s = complex(x, y)
            val = zetamahler.zd_xyk(s, k)
            out.append(OutputRecord("Z_D(s,x+y+k)", val, ERR_ZETA * max(1.0, abs(val)), "closed-form", k, s))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="record wall times (output is then not reproducible)")
    common.add_argument("--tol", type=float, default=None, help="accepted for symmetry; routes carry their own tolerances")

    p = argparse.ArgumentParser(prog="arealmahler", description="Classical and areal Mahler measures and Zeta Mahler functions.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mahler", parents=[common], help="Mahler measures m and m_D")
    m.add_argument("--family", choices=("xyk", "qk", "uni"), default="xyk")
    m.add_argument("--k", type=_floats, default=[1.0], help="comma-separated k values")
    m.add_argument("--coeffs", type=_floats, help="univariate coefficients, constant term first")
    m.add_argument("--areal", action="store_true")
    m.add_argument("--route", help="route name (cm, hyp, hyp3f2, difference, dilog, direct, thm12, density, mc)")
    m.add_argument("--all-routes", action="store_true")
    m.add_argument("--samples", type=_samples, default=10**6)
    m.add_argument("--seed", type=int, default=0)

    z = sub.add_parser("zeta", parents=[common], help="Zeta Mahler functions")
    z.add_argument("--function", choices=("zd_xyk", "z_xyk", "z_x_plus_k"), default="zd_xyk")
    z.add_argument("--k", type=_floats, default=[1.0])
    z.add_argument("--s", type=_complex, action="append", required=True)

    zz = sub.add_parser("zeros", parents=[common], help="zeros of Z_D(s, x+y+k) in a box")
    zz.add_argument("--k", type=_floats, default=[1.0])
    zz.add_argument("--re", type=_range, default=(-4.0, -3.0))
    zz.add_argument("--im", type=_range, default=(5.0, 50.0))
    zz.add_argument("--density", type=int, default=4, help="grid points per unit length")
    zz.add_argument("--check-winding", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="run identity and oracle suites")
    v.add_argument("--suite", choices=("all",) + tuple(verify.SUITES), default="all")
    v.add_argument("--grid", type=int, default=None)
    v.add_argument("--k", type=_floats, default=None)
    v.add_argument("--samples", type=_samples, default=10**6)
    v.add_argument("--seed", type=int, default=42)

    pd = sub.add_parser("plotdata", parents=[common], help="grid of Z_D(s, x+y+k) values")
    pd.add_argument("--k", type=_floats, default=[1.0])
    pd.add_argument("--re-grid", type=_grid, default=(-4.0, -3.0, 21))
    pd.add_argument("--im-grid", type=_grid, default=(5.0, 8.0, 31))
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is not None and any(k < 0 for k in args.k):
        parser.error("k must be >= 0")
    status = 0
    try:
        if args.command == "mahler":
            records = cmd_mahler(args)
        elif args.command == "zeta":
            records = cmd_zeta(args)
        elif args.command == "zeros":
            records = cmd_zeros(args)
        elif args.command == "verify":
            records, ok = cmd_verify(args)
            status = 0 if ok else 1
        else:
            records = cmd_plotdata(args)
    except (ArealMahlerError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(records, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
