"""Command-line front end.

Every subcommand prints CSV to stdout unless ``--out`` is given, and writes JSON
with ``--json``.  Exit codes: 0 success, 1 verification failure, 2 invalid
arguments, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__, lattice, modcore, parametrize
from . import experiments as ex
from .lattice import SymMat, UniMat


@dataclass
class Result:
    header: tuple
    rows: list
    data: dict
    text: str | None = None
    failed: bool = False


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    version: str
    wall_time: float
    workers: int
    outputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


# ----------------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, complex):
        return f"{format(x.real, '.17g')}{format(x.imag, '+.17g')}j"
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def as_result(obj) -> Result:
    if isinstance(obj, Result):
        return obj
    if isinstance(obj, parametrize.ParamReport):
        d = obj.to_dict()
        rows = [("hits", obj.hits), ("elements_enumerated", obj.elements_enumerated),
                ("misses", len(obj.misses)), ("double_hits", len(obj.double_hits)),
                ("extras", len(obj.extras)), ("inconclusive", obj.inconclusive), ("passed", obj.passed)]
        return Result(("field", "value"), rows, d, failed=not obj.passed)
    return Result(tuple(obj.CSV_HEADER), list(obj.csv_rows()), obj.to_dict())


def csv_text(obj) -> str:
    r = as_result(obj)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(r.header)
    for row in r.rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(_jsonable(as_result(obj).data), indent=2, allow_nan=True) + "\n"


def _write(path, text: str) -> str:
    data = text.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest()


def emit_csv(report, path) -> str:
    """Write one row per line with a header; returns the SHA-256 of the bytes written."""
    return _write(path, csv_text(report))


def emit_json(report, path) -> str:
    return _write(path, json_text(report))


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def _scalar(name: str, value, data: dict | None = None) -> Result:
    return Result((name,), [(value,)], dict(data or {}, **{name: value}), text=_fmt(value))


def _sym(s: str) -> SymMat:
    return SymMat(*_ints(s, 3))


def _ints(s: str, n: int) -> tuple:
    parts = [int(x) for x in s.replace("(", "").replace(")", "").split(",")]
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated integers, got {s!r}")
    return tuple(parts)


def _intervals(s: str | None):
    if not s:
        return ex.deciles()
    out = []
    for part in s.split(","):
        lo, hi = part.split(":")
        out.append((Fraction(lo), Fraction(hi)))
    return out


def cmd_roots(a):
    if a.p is not None:
        rs = modcore.roots_mod_prime_power(a.a, a.h, a.p, a.j)
    else:
        rs = modcore.roots_mod_k(a.a, a.h, a.k)
    return Result(("residue",), [(r,) for r in rs.roots], dict(modulus=rs.modulus, roots=list(rs.roots)))


def cmd_rho(a):
    return _scalar("rho", modcore.rho(a.a, a.h, a.k))


def cmd_jacobi(a):
    return _scalar("jacobi", modcore.jacobi(a.n, a.m))


def cmd_sqrt(a):
    rs = modcore.sqrt_mod_p(a.n, a.p)
    return Result(("residue",), [(r,) for r in rs.roots], dict(modulus=rs.modulus, roots=list(rs.roots)))


def cmd_factor(a):
    fac = modcore.factorize(a.n)
    g = modcore.gpf(a.n) if a.n >= 2 else None
    return Result(("prime", "exponent"), list(fac.pairs),
                  dict(n=a.n, pairs=[list(p) for p in fac.pairs], gpf=g, is_prime=modcore.is_prime(a.n)))


def cmd_heegner(a):
    pts = lattice.heegner_points(a.h)
    rows = [(*p.sym, p.stab_order) for p in pts]
    return Result(("aa", "bb", "cc", "stab_order"), rows, dict(h=a.h, points=[list(r) for r in rows]))


def cmd_cosets(a):
    reps = lattice.coset_reps(a.q)
    return Result(("a", "b", "c", "d"), [tuple(g) for g in reps], dict(q=a.q, reps=[list(g) for g in reps]))


def cmd_act(a):
    gamma, g = UniMat(*_ints(a.gamma, 4)), _sym(a.g)
    out = lattice.act(gamma, g)
    c = lattice.c_transform(gamma, g)
    return Result(("aa", "bb", "cc"), [tuple(out)], dict(result=list(out), c_transform=c))


def cmd_reduce(a):
    pt, gamma = lattice.reduce(_sym(a.g))
    row = (*pt.sym, lattice.stabilizer_order(pt), *gamma)
    return Result(("aa", "bb", "cc", "stab_order", "a", "b", "c", "d"), [row],
                  dict(point=list(pt.sym), stab_order=pt.stab_order, gamma=list(gamma)))


def cmd_u(a):
    if a.matrix:
        return _scalar("u", lattice.u_skewed(_ints(a.matrix, 4), a.R))
    w = complex(a.w.replace(" ", ""))
    z = complex(a.z.replace(" ", ""))
    return _scalar("u", lattice.u_invariant(w, z))


def cmd_enumerate_s(a):
    rows = [tuple(g) for g in parametrize.enumerate_S(a.a, a.h, a.d, a.bound)]
    return Result(("aa", "bb", "cc"), rows, dict(triples=[list(r) for r in rows]))


def cmd_para1(a):
    return parametrize.verify_para1(a.a, a.h, a.d, a.bound, a.gen_bound)


def cmd_para2(a):
    return parametrize.verify_para2(a.a, a.h, a.s, a.n1, a.n2, a.bound)


def cmd_para3(a):
    return parametrize.verify_para3(a.a, a.h, a.y, a.d, a.bound)


def cmd_hecke(a):
    orbs = parametrize.hecke_orbits(a.h)
    rows = [tuple(o) for o in orbs]
    data = dict(h=a.h, orbits=[list(r) for r in rows])
    if a.apply_box is not None:
        box = a.apply_box
        ind = lambda m: 1.0 if max(abs(x) for x in m) <= box else 0.0
        data["apply_box"] = parametrize.hecke_apply(a.h, ind, (1.0, 0.0, 0.0, 1.0))
    return Result(("e", "f", "g"), rows, data)


def cmd_cube(a):
    sigma, base = parametrize.cube_decompose(_sym(a.g), a.h, a.y, a.a, a.d)
    return Result(("e", "f", "g", "aa", "bb", "cc"), [(*sigma, *base)], dict(sigma=list(sigma), base=list(base)))


def cmd_bump(a):
    psi = ex.bump(a.lo, a.hi, a.delta)
    xs = [a.x] if a.x is not None else []
    return Result(("x", "value"), [(x, ex.bump_eval(psi, x)) for x in xs],
                  dict(psi.to_dict(), integral=psi.integral, integral_error=psi.integral_error),
                  text=_fmt(psi.integral) if a.x is None else _fmt(ex.bump_eval(psi, a.x)))


def cmd_type1(a):
    return ex.type1(a.X, a.K if a.K else a.X, a.D, a.a, a.h, ex.bump(1, 2, a.delta), ex.bump(-1, 1, a.delta),
                    a.theta, workers=a.threads)


def cmd_type2(a):
    return ex.type2(a.X, a.M, a.N, a.a, a.h, a.alpha, a.beta, ex.bump(-1, 1, a.delta), a.theta, workers=a.threads)


def cmd_equidist(a):
    return ex.equidist(a.X, a.a, a.h, _intervals(a.intervals), workers=a.threads)


def cmd_weyl(a):
    s = ex.weyl_sum(a.X, a.a, a.h, a.m, workers=a.threads)
    return Result(("real", "imag"), [(s.real, s.imag)], dict(X=a.X, a=a.a, h=a.h, m=a.m, real=s.real, imag=s.imag))


def cmd_gpf(a):
    return ex.gpf_scan(a.X, a.a, a.h)


def cmd_chebyshev(a):
    r = as_result(ex.chebyshev_identity(a.X, a.a, a.h))
    r.failed = r.data["difference"] != 0.0
    return r


def cmd_hypothesis(a):
    s = ex.hypothesis_sum(a.a, a.h, a.Y, a.Z)
    rhs = ex.hypothesis_rhs(a.Y, a.Z, a.eps)
    return Result(("sum", "rhs"), [(s, rhs)], dict(a=a.a, h=a.h, Y=a.Y, Z=a.Z, eps=a.eps, sum=s, rhs=rhs),
                  text=_fmt(s))


def cmd_kernel_heegner(a):
    return ex.kernel_heegner(a.Qlo, a.Qhi, a.h, Fraction(a.Z), workers=a.threads)


def cmd_kernel_lt(a):
    return ex.kernel_lowertriang(a.D, a.N0, a.N1, a.N2, a.T, a.V, Fraction(a.Z), Fraction(a.R), workers=a.threads)


def cmd_rho_cubic(a):
    return _scalar("rho", ex.rho_cubic(a.a, a.b, a.y, a.d))


def cmd_ypoisson(a):
    r = ex.ypoisson_check(a.a, a.b, a.d, a.B, ex.bump(1, 1 + a.delta, a.delta))
    res = as_result(r)
    res.failed = r.complete_sum != r.d
    return res


def cmd_x2y3(a):
    X = a.X
    f = ex.bump(1, 1 + a.delta, a.delta)
    A = a.A if a.A else math.sqrt(X)
    B = a.B if a.B else X ** (1 / 3)
    K = a.K if a.K else math.isqrt(math.isqrt(X**3))
    D = a.Dmax if a.Dmax else max(1, int(X**0.25))
    return ex.x2y3_typeI2(X, K, D, a.a, a.b, f, f, f, A, B)


# name -> (handler, library operations it exercises, argument spec)
I, F, S = int, float, str
DISPATCH: dict[str, tuple[Callable, tuple[str, ...], dict]] = {
    "roots": (cmd_roots, ("roots_mod_k", "roots_mod_prime_power"),
              dict(a=(I, 1), h=(I, None), k=(I, 1), p=(I, None), j=(I, 1))),
    "rho": (cmd_rho, ("rho",), dict(a=(I, 1), h=(I, None), k=(I, None))),
    "jacobi": (cmd_jacobi, ("jacobi",), dict(n=(I, None), m=(I, None))),
    "sqrt": (cmd_sqrt, ("sqrt_mod_p",), dict(n=(I, None), p=(I, None))),
    "factor": (cmd_factor, ("factorize", "gpf", "is_prime"), dict(n=(I, None))),
    "heegner": (cmd_heegner, ("heegner_points", "stabilizer_order"), dict(h=(I, None))),
    "cosets": (cmd_cosets, ("coset_reps",), dict(q=(I, None))),
    "act": (cmd_act, ("act", "c_transform"), dict(gamma=(S, None), g=(S, None))),
    "reduce": (cmd_reduce, ("reduce", "stabilizer_order"), dict(g=(S, None))),
    "u": (cmd_u, ("u_invariant", "u_skewed"), dict(w=(S, "1j"), z=(S, "1j"), matrix=(S, None), R=(F, 1.0))),
    "enumerate-s": (cmd_enumerate_s, ("enumerate_S",), dict(a=(I, 1), h=(I, None), d=(I, 1), bound=(I, None))),
    "verify-para1": (cmd_para1, ("verify_para1",),
                     dict(a=(I, 1), h=(I, None), d=(I, 1), bound=(I, None), gen_bound=(I, None))),
    "verify-para2": (cmd_para2, ("verify_para2",),
                     dict(a=(I, 1), h=(I, None), s=(I, 1), n1=(I, None), n2=(I, None), bound=(I, None))),
    "verify-para3": (cmd_para3, ("verify_para3",), dict(a=(I, 1), h=(I, None), y=(I, None), d=(I, 1), bound=(I, None))),
    "hecke": (cmd_hecke, ("hecke_orbits", "hecke_apply"), dict(h=(I, None), apply_box=(F, None))),
    "cube": (cmd_cube, ("cube_decompose",), dict(g=(S, None), h=(I, None), y=(I, None), a=(I, 1), d=(I, 1))),
    "bump": (cmd_bump, ("bump", "bump_eval", "bump_integral"),
             dict(lo=(F, -1.0), hi=(F, 1.0), delta=(F, 1.0), x=(F, None))),
    "type1": (cmd_type1, ("type1",), dict(X=(I, None), K=(I, None), D=(I, None), a=(I, 1), h=(I, 1),
                                          theta=(F, ex.DEFAULT_THETA), delta=(F, 1.0))),
    "type2": (cmd_type2, ("type2",), dict(X=(I, None), M=(I, None), N=(I, None), a=(I, 1), h=(I, 1),
                                          alpha=(S, "one"), beta=(S, "squarefree"),
                                          theta=(F, ex.DEFAULT_THETA), delta=(F, 1.0))),
    "equidist": (cmd_equidist, ("equidist",), dict(X=(I, None), a=(I, 1), h=(I, 1), intervals=(S, None))),
    "weyl": (cmd_weyl, ("weyl_sum",), dict(X=(I, None), a=(I, 1), h=(I, 1), m=(I, 1))),
    "gpf": (cmd_gpf, ("gpf_scan",), dict(X=(I, None), a=(I, 1), h=(I, 1))),
    "chebyshev": (cmd_chebyshev, ("chebyshev_identity",), dict(X=(I, None), a=(I, 1), h=(I, 1))),
    "hypothesis": (cmd_hypothesis, ("hypothesis_sum",), dict(a=(I, 1), h=(I, 1), Y=(I, None), Z=(I, None), eps=(F, 0.1))),
    "kernel-heegner": (cmd_kernel_heegner, ("kernel_heegner",), dict(Qlo=(I, None), Qhi=(I, None), h=(I, 1), Z=(S, None))),
    "kernel-lt": (cmd_kernel_lt, ("kernel_lowertriang",),
                  dict(D=(I, 1), N0=(I, 1), N1=(I, 1), N2=(I, 1), T=(I, 1), V=(I, 1), Z=(S, None), R=(S, "1"))),
    "rho-cubic": (cmd_rho_cubic, ("rho_cubic",), dict(a=(I, 1), b=(I, 1), y=(I, None), d=(I, None))),
    "ypoisson": (cmd_ypoisson, ("ypoisson_check",), dict(a=(I, 1), b=(I, 1), d=(I, None), B=(F, None), delta=(F, 0.5))),
    "x2y3": (cmd_x2y3, ("x2y3_typeI2",), dict(X=(I, None), K=(I, None), Dmax=(I, None), a=(I, 1), b=(I, 1),
                                              A=(F, None), B=(F, None), delta=(F, 0.5))),
}
del I, F, S

_REQUIRED = {
    "roots": ("h",), "rho": ("h", "k"), "jacobi": ("n", "m"), "sqrt": ("n", "p"), "factor": ("n",),
    "heegner": ("h",), "cosets": ("q",), "act": ("gamma", "g"), "reduce": ("g",),
    "enumerate-s": ("h", "bound"), "verify-para1": ("h", "bound"), "verify-para2": ("h", "n1", "n2", "bound"),
    "verify-para3": ("h", "y", "bound"), "hecke": ("h",), "cube": ("g", "h", "y"),
    "type1": ("X", "D"), "type2": ("X", "M", "N"), "equidist": ("X",), "weyl": ("X",), "gpf": ("X",),
    "chebyshev": ("X",), "hypothesis": ("Y", "Z"), "kernel-heegner": ("Qlo", "Qhi", "Z"), "kernel-lt": ("Z",),
    "rho-cubic": ("y", "d"), "ypoisson": ("d", "B"), "x2y3": ("X",),
}
_COMMON = ("out", "json", "threads", "config", "manifest")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadcong", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    p.subcommands = {}
    for name, (_, ops, spec) in DISPATCH.items():
        sp = p.subcommands[name] = sub.add_parser(name, help=", ".join(ops))
        for key, (typ, default) in spec.items():
            sp.add_argument(f"--{key.replace('_', '-')}", dest=key, type=typ, default=default)
        sp.add_argument("--out", help="CSV output path")
        sp.add_argument("--json", help="JSON output path")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--config", help="flat key=value file; flags override it")
        sp.add_argument("--manifest", help="write a run manifest here")
    return p


def read_config(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        raise _Usage("quadcong: error: a subcommand is required")
    if args.config:
        try:
            cfg = read_config(args.config)
        except (OSError, ValueError) as e:
            raise _Usage(f"cannot read config: {e}")
        spec = DISPATCH[args.command][2]
        unknown = set(cfg) - set(spec) - {"threads"}
        if unknown:
            raise _Usage(f"unknown config keys for {args.command}: {', '.join(sorted(unknown))}")
        # string defaults are run through each argument's type by argparse
        parser.subcommands[args.command].set_defaults(**cfg)
        args = parser.parse_args(argv)
    missing = [k for k in _REQUIRED.get(args.command, ()) if getattr(args, k) is None]
    if missing:
        raise _Usage(f"quadcong {args.command}: missing --{', --'.join(m.replace('_', '-') for m in missing)}")
    if args.threads < 1:
        raise _Usage("--threads must be >= 1")
    return args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _parse(argv)
    except _Usage as e:
        print(e, file=sys.stderr)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    handler = DISPATCH[args.command][0]
    t0 = time.perf_counter()
    try:
        result = as_result(handler(args))
    except (ValueError, OverflowError, ZeroDivisionError) as e:
        print(f"quadcong {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    wall = time.perf_counter() - t0
    outputs = {}
    try:
        if args.out:
            outputs[args.out] = emit_csv(result, args.out)
        if args.json:
            outputs[args.json] = emit_json(result, args.json)
        if not args.out and not args.json:
            sys.stdout.write(result.text + "\n" if result.text is not None else csv_text(result))
        if args.manifest:
            params = {k: v for k, v in vars(args).items() if k not in _COMMON and k != "command"}
            m = RunManifest(args.command, params, __version__, wall, args.threads, outputs)
            Path(args.manifest).write_text(json.dumps(_jsonable(m.to_dict()), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        print(f"quadcong {args.command}: {e}", file=sys.stderr)
        return 3
    return 1 if result.failed else 0


if __name__ == "__main__":
    sys.exit(main())
