"""Command-line front end: every subcommand prints a JSON report on stdout.

Exit codes: 0 success, 1 negative verdict (with --strict, or an identity
that is not proved), 2 usage or parse error, 3 invalid setup.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import acceptance, dsmink, stdspace
from .euler import NotEuler, catalog_crosscheck, check_euler, hj_element, is_symmetric, symmetry_method
from .exactla import RatMatrix
from .gl2embed import NoSuchRoot, SymmetricInput, build_embedding, verify_gl2
from .liealg import LieAlgebraError, build_algebra
from .modcov import (SETUPS, InvalidSetup, get_setup, negcond_certificate, neccond_exact, reverify)
from .netcalc import (CONTEXTS, TermSyntaxError, UnknownSymbol, check_duality, make_context,
                      mink_noncov_chain, parse_identity, verify_identity)
from .netcalc.rules import JUSTIFICATION

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_SETUP = 0, 1, 2, 3
SEED_ENV = "WEDGELAB_SEED"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = acceptance.DEFAULT_SEED
    output: str | None = None
    jobs: int = 1


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return acceptance.DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed {what} JSON: {exc}") from None


def _rat_matrix(text: str) -> RatMatrix:
    rows = _load_json(text, "matrix")
    try:
        return RatMatrix.from_rows(rows)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad exact matrix: {exc}") from None


def _float_matrix(text: str, shape=(2, 2)) -> np.ndarray:
    rows = _load_json(text, "matrix")
    try:
        m = np.array([[float(Fraction(str(v))) for v in r] for r in rows], dtype=float)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad matrix: {exc}") from None
    if m.shape != shape:
        raise UsageError(f"expected a {shape[0]}x{shape[1]} matrix, got shape {m.shape}")
    return m


def _vector(text: str, n: int = 3) -> np.ndarray:
    try:
        v = np.array([float(Fraction(p.strip())) for p in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from None
    if v.shape != (n,):
        raise UsageError(f"expected {n} comma-separated coordinates")
    return v


def _fl(x: float) -> float:
    return float(f"{float(x):.12g}") + 0.0


def _fl_matrix(m: np.ndarray) -> list:
    return [[_fl(v) for v in row] for row in np.asarray(m, dtype=float)]


def _element(args):
    if args.hj:
        try:
            n, j = (int(p) for p in args.hj.split(","))
            return hj_element(n, j)
        except ValueError as exc:
            raise UsageError(f"--hj expects n,j: {exc}") from None
    if not args.element:
        raise UsageError("give --element (with --algebra) or --hj")
    try:
        A = build_algebra(args.algebra)
        return A.from_matrix(_rat_matrix(args.element))
    except LieAlgebraError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------------

def cmd_euler(args) -> int:
    x = _element(args)
    report = {"algebra": x.algebra.name, "element": x.matrix.to_json()}
    try:
        e = check_euler(x)
    except NotEuler as exc:
        report.update(euler=False, reason=str(exc), witness=exc.witness)
        _dump(report)
        return EXIT_FALSE if args.strict else EXIT_OK
    report.update(euler=True, grading_dims=list(e.grading_dims))
    try:
        report["symmetric"] = is_symmetric(e)
        report["symmetry_method"] = symmetry_method(x.algebra)
    except ValueError as exc:
        report["symmetric"] = None
        report["symmetry_method"] = str(exc)
    report["catalog_crosscheck"] = catalog_crosscheck(e)
    _dump(report)
    return EXIT_OK


def cmd_embed(args) -> int:
    x = _element(args)
    try:
        emb = build_embedding(x)
    except (NotEuler, SymmetricInput, NoSuchRoot) as exc:
        _dump({"algebra": x.algebra.name, "embedding": None, "reason": f"{type(exc).__name__}: {exc}"})
        return EXIT_FALSE
    rep = verify_gl2(emb)
    _dump({
        "algebra": x.algebra.name,
        "h": x.matrix.to_json(),
        "alpha": list(emb.alpha),
        "x_alpha": emb.x_alpha.matrix.to_json(),
        "y_alpha": emb.y_alpha.matrix.to_json(),
        "h_alpha": emb.h_alpha.matrix.to_json(),
        "h_c": emb.h_c.matrix.to_json(),
        "h1": emb.h1.matrix.to_json(),
        "k2": emb.k2().matrix.to_json(),
        "verify": rep.to_json(),
    })
    return EXIT_OK if rep.passed else EXIT_FALSE


def cmd_ds2(args) -> int:
    if args.action == "map":
        x = _vector(args.point)
        X = dsmink.tilde(x)
        on_ds = abs(x[1] ** 2 + x[2] ** 2 - x[0] ** 2 - 1.0) <= dsmink.CONSTRUCT_TOL * max(1.0, x[0] ** 2)
        _dump({"point": [_fl(v) for v in x], "tilde": _fl_matrix(X),
               "minkowski_square": _fl(dsmink.minkowski(x, x)), "four_det": _fl(4 * np.linalg.det(X)),
               "on_de_sitter": bool(on_ds),
               "in_base_wedge": bool(abs(x[0]) < x[1]),
               "untilde_roundtrip": [_fl(v) for v in dsmink.untilde(X)]})
        return EXIT_OK
    g = _float_matrix(args.g)
    try:
        L = dsmink.lambda_cover(g)
    except dsmink.NotUnimodular as exc:
        raise UsageError(str(exc)) from None
    _dump({"g": _fl_matrix(g), "lambda": _fl_matrix(L),
           "preserves_form": bool(np.allclose(L.T @ dsmink.ETA @ L, dsmink.ETA, atol=1e-9)),
           "orthochronous": bool(L[0, 0] > 0)})
    return EXIT_OK


def cmd_wedge(args) -> int:
    g = _float_matrix(args.g) if args.g else np.eye(2)
    try:
        W = dsmink.ds_wedge_of(g, args.base)
    except dsmink.NotUnimodular as exc:
        raise UsageError(str(exc)) from None
    report = {"base": args.base, "g": _fl_matrix(g), "euler_element": _fl_matrix(W.euler_element),
              "dual_euler_element": _fl_matrix(W.dual().euler_element),
              "equals_base": W == dsmink.base_wedge(args.base)}
    if args.point:
        p = _vector(args.point)
        report["point"] = [_fl(v) for v in p]
        report["contains"] = W.contains(p)
        report["dual_contains"] = W.dual().contains(p)
    _dump(report)
    return EXIT_OK


def certify(name: str, t: float = 1.0, s: float = 0.5) -> tuple[dict, bool]:
    setup = get_setup(name)
    cert = negcond_certificate(setup)
    if cert.violated:
        ok = reverify(setup, cert)
    else:
        ok = neccond_exact(setup)
    chain = mink_noncov_chain(cert, setup, t, s) if (cert.violated or setup.difference.is_zero()) else None
    report = cert.to_json()
    report.update({
        "algebra": setup.algebra.name,
        "h1": setup.h1.matrix.to_json(),
        "h2": setup.h2.element.matrix.to_json(),
        "hsub": {lab: y.matrix.to_json() for lab, y in zip(setup.labels(), setup.hsub)},
        "reverified": ok,
        "minkowski_chain": None if chain is None else chain.to_json(),
        "justifications": {
            "condition": "a modular covariant net forces [h, h1 - h2] into the centralizer of h2",
            "witness": "y in h with [h2, [y, h1 - h2]] != 0 violates that condition",
            "chain": "modular image and covariant target compared as stabilizer cosets",
            "rules": JUSTIFICATION,
        },
    })
    return report, ok


def cmd_modcov(args) -> int:
    try:
        report, ok = certify(args.setup, args.t, args.s)
    except (InvalidSetup, KeyError) as exc:
        sys.stderr.write(f"invalid setup: {exc}\n")
        return EXIT_SETUP
    _dump(report, args.json)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_stdspace(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.n < 1:
        raise UsageError("--n must be positive")
    rng = np.random.default_rng(seed)
    worst = {"roundtrip": 0.0, "complement_delta": 0.0, "complement_J": 0.0}
    for _ in range(args.count):
        H = stdspace.random_standard_subspace(args.n, rng, args.max_ratio)
        worst["roundtrip"] = max(worst["roundtrip"], stdspace.roundtrip_error(H))
        c = stdspace.complement_residuals(H)
        worst["complement_delta"] = max(worst["complement_delta"], c["delta"])
        worst["complement_J"] = max(worst["complement_J"], c["J"])
    ok = all(v < stdspace.TOL for v in worst.values())
    _dump({"n": args.n, "count": args.count, "seed": seed, "bound": "1e-10",
           "worst": {k: f"{v:.3e}" for k, v in worst.items()}, "passed": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_net(args) -> int:
    try:
        ctx = make_context(args.context)
    except UnknownSymbol as exc:
        raise UsageError(str(exc)) from None
    if args.action == "duality":
        twist = None if args.twist is None else args.twist == "yes"
        rep = check_duality(ctx, twist)
        _dump(rep)
        return EXIT_OK if rep["dual"] else EXIT_FALSE
    try:
        lhs, rhs = parse_identity(args.identity)
        res = verify_identity(lhs, rhs, ctx)
    except TermSyntaxError as exc:
        raise UsageError(f"parse error: {exc}") from None
    except UnknownSymbol as exc:
        raise UsageError(str(exc)) from None
    out = res.to_json()
    out["context"] = ctx.name
    _dump(out)
    return EXIT_OK if res.proved else EXIT_FALSE


def _run_one(args: tuple) -> dict:
    name, seed = args
    entry = next(c for c in acceptance.CRITERIA if c[0] == name)
    return acceptance.run_criterion(entry, seed)


def run_suite(cfg: RunConfig, only: str | None = None) -> tuple[dict, list[float]]:
    entries = acceptance.select(only)
    jobs = [(e[0], cfg.seed) for e in entries]
    start = time.perf_counter()
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
        times = [float("nan")] * len(results)
    else:
        results, times = [], []
        for j in jobs:
            t0 = time.perf_counter()
            results.append(_run_one(j))
            times.append(time.perf_counter() - t0)
    elapsed = time.perf_counter() - start
    report = {"seed": cfg.seed, "criteria": results,
              "passed": all(r["passed"] for r in results)}
    return report, times + [elapsed]


def cmd_suite(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = RunConfig(seed=seed, output=args.json, jobs=args.jobs)
    try:
        report, times = run_suite(cfg, args.only)
    except KeyError as exc:
        sys.stderr.write(f"unknown suite name: {exc.args[0]}; choose from "
                         f"{', '.join(acceptance.NAMES + acceptance.GROUPS)}\n")
        return EXIT_USAGE
    for r, t in zip(report["criteria"], times):
        mark = "PASS" if r["passed"] else "FAIL"
        took = "" if t != t else f" ({t:.2f}s)"
        sys.stderr.write(f"{mark} {r['name']}{took}\n")
    _dump(report, cfg.output)
    if not report["passed"]:
        first = next(r for r in report["criteria"] if not r["passed"])
        sys.stderr.write(f"first failure: {first['name']}: {first.get('error', 'criterion not met')}\n")
        return EXIT_FALSE
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wedgelab", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def element_flags(sp):
        sp.add_argument("--algebra", default="sl(3)", help="sl(n), gl(n), so(1,d) or sl2xi")
        sp.add_argument("--element", help='matrix as JSON, entries integers or "p/q" strings')
        sp.add_argument("--hj", help="use h_j of sl(n), given as n,j")

    e = sub.add_parser("euler", help="decide whether an element is an Euler element")
    e.add_argument("action", choices=["check"])
    element_flags(e)
    e.add_argument("--strict", action="store_true", help="exit 1 if the element is not Euler")
    e.set_defaults(fn=cmd_euler)

    m = sub.add_parser("embed", help="gl2 subalgebra through a non-symmetric Euler element")
    element_flags(m)
    m.set_defaults(fn=cmd_embed)

    d = sub.add_parser("ds2", help="de Sitter plane: point maps and the covering SL2 -> SO(1,2)")
    d.add_argument("action", choices=["map", "cover"])
    d.add_argument("--point", default="0,1,0", help="x0,x1,x2")
    d.add_argument("--g", default="[[1,0],[0,1]]", help="2x2 matrix as JSON")
    d.set_defaults(fn=cmd_ds2)

    w = sub.add_parser("wedge", help="the dS2 wedge g.W and point containment")
    w.add_argument("--g", help="2x2 matrix of determinant one as JSON")
    w.add_argument("--base", choices=sorted(dsmink.BASE_GENERATORS), default="x1")
    w.add_argument("--point", help="x0,x1,x2")
    w.set_defaults(fn=cmd_wedge)

    c = sub.add_parser("modcov", help="modular covariance certificates")
    c.add_argument("action", choices=["certify"])
    c.add_argument("--setup", required=True, help=", ".join(SETUPS))
    c.add_argument("--json", help="also write the certificate to this file")
    c.add_argument("--t", type=float, default=1.0, help="modular parameter for the chain")
    c.add_argument("--s", type=float, default=0.5, help="group parameter for the chain")
    c.set_defaults(fn=cmd_modcov)

    s = sub.add_parser("stdspace", help="standard subspace round trips")
    s.add_argument("action", choices=["roundtrip"])
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, help=f"default from {SEED_ENV}, else 42")
    s.add_argument("--max-ratio", type=float, default=1e4, help="spread of the modular spectrum")
    s.set_defaults(fn=cmd_stdspace)

    n = sub.add_parser("net", help="label-level identities between nets")
    n.add_argument("action", choices=["verify", "duality"])
    n.add_argument("--context", default="ds2-twisted", help=", ".join(CONTEXTS))
    n.add_argument("--identity", default="Htilde(W') = Z·Htilde(W)'")
    n.add_argument("--twist", choices=["yes", "no"], help="duality: override the context default")
    n.set_defaults(fn=cmd_net)

    u = sub.add_parser("suite", help="run the acceptance suite")
    u.add_argument("--seed", type=int, help=f"default from {SEED_ENV}, else 42")
    u.add_argument("--only", help="comma-separated criterion or group names")
    u.add_argument("--json", help="also write the report to this file")
    u.add_argument("--jobs", type=int, default=1, help="worker processes")
    u.set_defaults(fn=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
