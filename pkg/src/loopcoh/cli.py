"""Command-line front end.

    loopcoh poincare --which main -r 1 -p 2 -N 6
    loopcoh basis --which main -r 2 -p 2 -N 14
    loopcoh pages --which morse-e1 -r 1 -p 2
    loopcoh derived -r 1 -p 2 --max-simplicial 2
    loopcoh verify [--strict] [--mutate qk-sign] [--jobs 4]

Exit codes: 0 all pass, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import checks, derived, geodesy, specseq
from .algebra import is_prime
from .loopspace import (
    TruncSpaceParams, main_module, main_poincare, main_poincare_closed, rational_borel_series,
)
from .series import expand

WHICH_POINCARE = ("main", "morse-e1", "serre-e3", "geodesics", "rational")
WHICH_BASIS = ("main", "grassmann", "geodesics", "unit-tangent", "borel")
WHICH_PAGES = ("morse-e1", "morse-e1-plain", "serre-e2", "serre-e3")


@dataclass
class RunConfig:
    command: str
    r_range: list
    p_list: list
    alpha: int
    cutoff: int | None
    output_format: str
    output_path: str | None
    jobs: int

    def N(self, r, p):
        """The cutoff for one cell and whether it was chosen automatically."""
        if self.cutoff is not None:
            return self.cutoff, False
        env = os.environ.get("LOOPCOH_CUTOFF")
        if env:
            return int(env), False
        return TruncSpaceParams(r, p, 2).default_cutoff(), True


# ----------------------------------------------------------- parsing

def parse_range(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        for sep in ("..", "-"):
            if sep in part:
                a, b = part.split(sep, 1)
                out.extend(range(int(a), int(b) + 1))
                break
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty range")
    return sorted(set(out))


def _range_arg(text):
    try:
        xs = parse_range(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    if min(xs) < 1:
        raise argparse.ArgumentTypeError("r must be >= 1")
    return xs


def _primes_arg(text):
    try:
        xs = parse_range(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    bad = [p for p in xs if not is_prime(p)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {bad}")
    return xs


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("cutoff must be >= 0")
    return n


def build_parser():
    ap = argparse.ArgumentParser(prog="loopcoh", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, r="1", p="2"):
        sp.add_argument("-r", type=_range_arg, default=_range_arg(r), help="r values, e.g. 1..4 or 1,3")
        sp.add_argument("-p", type=_primes_arg, default=_primes_arg(p), help="primes, e.g. 2,3,5")
        sp.add_argument("--alpha", type=int, default=2)
        sp.add_argument("-N", "--cutoff", type=_nonneg, default=None)
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--output", default=None)
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("poincare", help="Poincare series")
    common(sp)
    sp.add_argument("--which", choices=WHICH_POINCARE, default="main")

    sp = sub.add_parser("basis", help="generators and their degrees")
    common(sp)
    sp.add_argument("--which", choices=WHICH_BASIS, default="main")
    sp.add_argument("-n", type=int, default=1, help="geodesic multiplicity for --which borel")

    sp = sub.add_parser("pages", help="spectral sequence pages")
    common(sp)
    sp.add_argument("--which", choices=WHICH_PAGES, default="morse-e1")

    sp = sub.add_parser("derived", help="derived functor homology table")
    common(sp)
    sp.add_argument("--max-simplicial", type=int, default=3)
    sp.add_argument("--internal-cutoff", type=int, default=None)

    sp = sub.add_parser("verify", help="run the verification suite")
    common(sp, r="1..4", p="2,3,5")
    sp.add_argument("--strict", action="store_true", help="include the derived functor brute force")
    sp.add_argument("--max-simplicial", type=int, default=3)
    sp.add_argument("--internal-cutoff", type=int, default=None)
    sp.add_argument("--mutate", action="append", default=[], choices=("qk-sign",))
    return ap


# ---------------------------------------------------------- rendering

def render(doc, fmt):
    """``doc`` is ``{"command", "header", "rows", ...}``."""
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = doc["rows"]
    if fmt == "csv":
        if not rows:
            return "(none)\n"
        buf = io.StringIO()
        cols = list(rows[0].keys())
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()})
        return buf.getvalue()
    out = [f"# {h}" for h in doc.get("header", [])]
    for block in doc.get("text", []):
        out.append(block)
    if not doc.get("text"):
        if not rows:
            out.append("(none)")
        for row in rows:
            out.append("  ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
    return "\n".join(out) + "\n"


def _fmt(v):
    if isinstance(v, list):
        return ",".join(str(x) for x in v) if v else "-"
    return str(v)


def _header(cfg, r, p, extra=""):
    N, auto = cfg.N(r, p)
    return f"r={r} p={p} alpha={cfg.alpha} N={N}{' (auto 6*rho*p)' if auto else ''}{extra}"


def _cells(cfg):
    return [(r, p) for r in cfg.r_range for p in cfg.p_list]


def _pmap(fn, args, jobs):
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, args))
    return [fn(a) for a in args]


# ---------------------------------------------------------- commands

def _poincare_cell(arg):
    which, r, p, alpha, N = arg
    closed = None
    if which == "main":
        series = main_poincare(r, p, N)
        if (r + 1) % p == 0:
            closed = main_poincare_closed(r, p).render()
        else:
            closed = "(1 + P_IF(t)) / (1 - t)"
    elif which == "morse-e1":
        closed = specseq.morse_closed_form(r, p).render()
        series = expand(specseq.morse_closed_form(r, p), N)
    elif which == "serre-e3":
        series = specseq.serre_e3_rank(r, p, N, alpha).total_series(N)
    elif which == "geodesics":
        closed = geodesy.projective_bundle_series(r).render()
        series = expand(geodesy.projective_bundle_series(r), N)
    else:
        series = rational_borel_series(r, alpha, N)
    return {"r": r, "p": p, "N": N, "closed_form": closed, "coefficients": series.to_list()}


def cmd_poincare(cfg, args):
    ps = [0] if args.which in ("rational", "geodesics") else cfg.p_list
    cells = [(args.which, r, p, cfg.alpha, cfg.N(r, p if p else 2)[0]) for r in cfg.r_range for p in ps]
    rows = _pmap(_poincare_cell, cells, cfg.jobs)
    header = [f"poincare --which {args.which}"]
    text = []
    for (_, r, p, _, N), row in zip(cells, rows):
        header_line = _header(cfg, r, p if p else 2) if p else f"r={r} alpha={cfg.alpha} N={N}"
        text.append(f"# {header_line}")
        if row["closed_form"]:
            text.append(f"closed form: {row['closed_form']}")
        text.append(" ".join(str(c) for c in row["coefficients"]))
    return {"command": "poincare", "header": header, "rows": rows, "text": text}, 0


def cmd_basis(cfg, args):
    rows = []
    header = [f"basis --which {args.which}"]
    for r, p in _cells(cfg):
        N, _ = cfg.N(r, p)
        header.append(_header(cfg, r, p))
        if args.which == "main":
            mod = main_module(r, p, N)
            for (kind, deg) in sorted(mod.labels, key=lambda k: (k[1], k[0])):
                rows.append({"r": r, "p": p, "name": f"{kind}{deg}", "degree": deg,
                             "type": "free" if kind == "f" else "torsion"})
        else:
            space = {"grassmann": "grassmann", "geodesics": "geodesics",
                     "unit-tangent": "unit-tangent", "borel": "borel"}[args.which]
            for row in geodesy.report_rows(space, r, p, args.n, N):
                if row["dim"]:
                    rows.append({"r": r, "p": p, "degree": row["degree"], "dim": row["dim"],
                                 "basis": row["basis"]})
    return {"command": "basis", "header": header, "rows": rows}, 0


def cmd_pages(cfg, args):
    rows, text = [], []
    header = [f"pages --which {args.which}"]
    for r, p in _cells(cfg):
        N, _ = cfg.N(r, p)
        if args.which == "morse-e1":
            page = specseq.morse_e1(r, p, True, N).page()
        elif args.which == "morse-e1-plain":
            page = specseq.morse_e1(r, p, False, N).page()
        elif args.which == "serre-e2":
            page = specseq.serre_e2(r, p, N, cfg.alpha)
        else:
            page = specseq.serre_e3_rank(r, p, N, cfg.alpha)
        text.append(f"# {_header(cfg, r, p)}")
        text.append(page.grid())
        for row in page.to_rows():
            rows.append({"r": r, "p": p, **row})
    return {"command": "pages", "header": header, "rows": rows, "text": text}, 0


def cmd_derived(cfg, args):
    rows = []
    header = ["derived"]
    ok = True
    for r, p in _cells(cfg):
        H = derived.homology_table(r, p, cfg.alpha, args.max_simplicial, args.internal_cutoff)
        header.append(f"r={r} p={p} alpha={cfg.alpha} max_simplicial={args.max_simplicial} "
                      f"internal_cutoff={H.cutoff}")
        for row in H.rows():
            rows.append({"r": r, "p": p, "alpha": cfg.alpha, **row})
        ok &= not H.mismatches()
    return {"command": "derived", "header": header, "rows": rows}, 0 if ok else 1


def _verify_cell(arg):
    r, p, N, strict, ms, ic, mutate = arg
    return checks.run_cell(r, p, N, strict, ms, ic, tuple(mutate))


def cmd_verify(cfg, args):
    cells = [(r, p, cfg.N(r, p)[0], args.strict, args.max_simplicial, args.internal_cutoff, args.mutate)
             for r, p in _cells(cfg)]
    results = _pmap(_verify_cell, cells, cfg.jobs)
    rows = [row for res in results for row in res.rows()]
    header = ["verify" + (" --strict" if args.strict else "")
              + "".join(f" --mutate {m}" for m in args.mutate)]
    header += [_header(cfg, r, p) for r, p in _cells(cfg)]
    failures = [{"check": row["check"], "r": row["r"], "p": row["p"], "where": row["failures"]}
                for row in rows if row["status"] == "FAIL"]
    text = [f"{row['status']} {row['check']} r={row['r']} p={row['p']}" for row in rows]
    text.append(f"{'PASS' if not failures else 'FAIL'}: {len(rows) - len(failures)}/{len(rows)} checks passed")
    doc = {"command": "verify", "header": header, "rows": rows, "failures": failures, "text": text}
    return doc, 0 if not failures else 1


COMMANDS = {"poincare": cmd_poincare, "basis": cmd_basis, "pages": cmd_pages,
            "derived": cmd_derived, "verify": cmd_verify}


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.alpha < 2 or args.alpha % 2:
        ap.error("--alpha must be even and >= 2")
    if args.jobs < 1:
        ap.error("--jobs must be >= 1")
    if os.environ.get("LOOPCOH_CUTOFF"):
        try:
            _nonneg(os.environ["LOOPCOH_CUTOFF"])
        except (ValueError, argparse.ArgumentTypeError):
            ap.error("LOOPCOH_CUTOFF must be a non-negative integer")
    cfg = RunConfig(args.command, args.r, args.p, args.alpha, args.cutoff,
                    args.format, args.output, args.jobs)
    doc, code = COMMANDS[args.command](cfg, args)
    text = render(doc, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
