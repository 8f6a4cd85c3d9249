"""Command-line front end: ``fockd <subcommand> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 usage, parse or cap error.
JSON documents keep a fixed key order so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import coxeter, fock, partitions, spectral, verify, wick
from .coxeter import RankCapError
from .partitions import CapError, EpsilonPattern

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, q_default=None, dim_default=1):
    g = p.add_argument_group("common")
    g.add_argument("--q", type=float, default=q_default, help="deformation parameter")
    g.add_argument("--dim", type=int, default=dim_default, help="one-particle dimension d")
    g.add_argument("--involution", default="identity", help="identity | diag:+,-,... | swap")
    g.add_argument("--seed", type=int, default=0, help="seed for numpy.random.default_rng")
    g.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    g.add_argument("--explain", action="store_true", help="include per-term or per-check detail")
    g.add_argument("--exact", action="store_true", help="exact integer polynomials in q where possible")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockd", description="Type-D Fock space computations and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poincare", help="Poincare polynomial of a Coxeter group")
    _common(p)
    p.add_argument("--family", choices=coxeter.FAMILIES, default="D")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with the product of q-numbers (family D)")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("partitions", help="list or count partitions")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="klass", choices=("p12", "p2", "pd12", "pd2"), default="pd12")
    p.add_argument("--eps", default=None, help='pattern over {1,*}, e.g. "11**"')
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("wick", help="evaluate a Wick formula")
    _common(p, q_default=0.0)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--gaussian", type=int, default=None, metavar="K", help="Gaussian word of length K")
    src.add_argument("--eps", default=None, help="creation/annihilation pattern")
    p.add_argument("--vectors", default=None, help="JSON file with the vectors")
    p.add_argument("--unit-eigenvector", action="store_true", help="use e_1 for every slot")
    p.add_argument("--oracle", action="store_true", help="also apply the operator matrices")
    p.set_defaults(func=cmd_wick)

    p = sub.add_parser("moments", help="moments of the Gaussian law")
    _common(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("norm", help="q-norm of a creation operator")
    _common(p, q_default=0.0)
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--vector", default=None, help="JSON list of [re, im] pairs (default e_1)")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("symmetrizer", help="build and compare symmetrizer matrices")
    _common(p, q_default=0.0, dim_default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="write the matrix as CSV row,col,re,im")
    p.set_defaults(func=cmd_symmetrizer)

    p = sub.add_parser("spectrum", help="eigenvalues of the truncated Jacobi matrix")
    _common(p, q_default=0.0)
    p.add_argument("--size", type=int, default=spectral.DEFAULT_TRUNCATION)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run acceptance checks")
    _common(p)
    p.add_argument("--suite", choices=sorted(verify.SUITES), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _space(args) -> fock.HilbertSpaceSpec:
    try:
        return fock.HilbertSpaceSpec(args.dim, args.involution)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _operator_q(args) -> float:
    if args.q is None or not -1.0 < args.q < 1.0:
        raise UsageError(f"this command needs --q strictly inside (-1, 1), got {args.q}")
    return args.q


# ---------------------------------------------------------------------------


def cmd_poincare(args) -> tuple:
    table = coxeter.enumerate_group(args.family, args.n)
    poly = coxeter.poincare_polynomial(table)
    out = {"family": args.family, "n": args.n, "poly": poly.to_json()}
    if args.check:
        if args.family != "D":
            raise UsageError("--check compares against the type-D product formula; use --family D")
        formula = coxeter.product_formula(args.n)
        out["product"] = formula.to_json()
        out["equal"] = formula == poly
    if args.q is not None:
        out["value"] = float(poly(args.q))
    if args.explain:
        out["order"] = len(table)
    code = EXIT_FAIL if args.check and not out["equal"] else EXIT_OK
    return _dumps(out) + "\n", code


def cmd_partitions(args) -> tuple:
    eps = EpsilonPattern.parse(args.eps) if args.eps is not None else None
    pairs_only = args.klass in ("p2", "pd2")
    if args.klass.startswith("pd"):
        parts = partitions.enumerate_type_d(args.n, eps=eps, pairs_only=pairs_only)
        rows = [p.to_json() for p in parts]
    else:
        parts = partitions.enumerate_partitions_12(args.n, pairs_only=pairs_only, eps=eps)
        rows = [{"blocks": [list(b) for b in p.blocks], "stats": partitions.compute_stats(p).to_json()} for p in parts]
    if args.count:
        return f"{len(rows)}\n", EXIT_OK
    return "".join(_dumps(r) + "\n" for r in rows), EXIT_OK


def _load_vectors(path: str, dim: int) -> np.ndarray:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read vectors from {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("vectors")
    try:
        vecs = np.array([fock.vector_from_json(v) for v in data])
    except (TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"malformed vectors in {path}: {exc}") from exc
    if vecs.ndim != 2 or vecs.shape[1] != dim:
        raise UsageError(f"vectors in {path} must have dimension {dim}")
    return vecs


def _unit_eigenvector(space: fock.HilbertSpaceSpec) -> np.ndarray:
    e = np.zeros(space.dim, dtype=np.complex128)
    e[0] = 1.0
    if not np.allclose(np.abs(space.bar(e)), np.abs(e)) or abs(abs(np.vdot(e, space.bar(e))) - 1) > 1e-12:
        raise UsageError("e_1 is not an eigenvector of the involution")
    return e


def cmd_wick(args) -> tuple:
    space = _space(args)
    if not -1.0 <= args.q <= 1.0:
        raise UsageError("--q must lie in [-1, 1]")
    eps = EpsilonPattern.parse(args.eps) if args.eps is not None else None
    length = len(eps) if eps is not None else args.gaussian
    if length is None:
        raise UsageError("give --gaussian K or --eps PATTERN")
    if args.vectors:
        vecs = _load_vectors(args.vectors, space.dim)
        if vecs.shape[0] != length:
            raise UsageError(f"{vecs.shape[0]} vectors supplied for a word of length {length}")
    elif args.unit_eigenvector:
        vecs = np.tile(_unit_eigenvector(space), (length, 1))
    else:
        vecs = fock.random_vectors(length, space.dim, args.seed)
    query = wick.WickQuery(args.q, vecs.reshape(length, space.dim), eps, space)
    out: dict = {}
    if eps is not None and sum(1 if s != partitions.ANNIHILATE else -1 for s in eps.symbols) != 0:
        res = wick.wick_vector(query)
        vec = res.to_vector(query)
        out["level"] = res.level
        out["state"] = fock.vector_to_json(vec)
        if args.explain:
            out["terms"] = [t.to_json() for t in res.terms]
        num = None
    else:
        res = wick.wick_vacuum(query, exact=args.exact)
        out.update(res.to_json(explain=args.explain))
        num = res.value
    if args.oracle:
        q = _operator_q(args)
        trunc = fock.FockTruncation(space, max(length, 1), q)
        state = wick.wick_oracle(query, trunc)
        if num is not None:
            out["oracle"] = [float(state.omega.real), float(state.omega.imag)]
            out["residual"] = float(abs(state.omega - num))
        else:
            comb = res.to_state(query, trunc)
            out["residual"] = float((state - comb).max_abs())
    return _dumps(out) + "\n", EXIT_OK


def cmd_moments(args) -> tuple:
    table = spectral.moments_from_jacobi(args.order)
    exact = args.exact or args.q is None
    rows = [(k, m) for k, m in table.rows() if k % 2 == 0]
    buf = io.StringIO()
    if args.format == "jsonl":
        for k, m in rows:
            rec = {"order": k, "poly": m.to_json()}
            if args.q is not None:
                rec["value"] = float(m(args.q))
            buf.write(_dumps(rec) + "\n")
        return buf.getvalue(), EXIT_OK
    w = csv.writer(buf, lineterminator="\n")
    if exact and args.q is None:
        w.writerow(["order", "poly"])
        for k, m in rows:
            w.writerow([k, str(m)])
    else:
        w.writerow(["order", "value"] + (["poly"] if args.exact else []))
        for k, m in rows:
            w.writerow([k, repr(float(m(args.q)))] + ([str(m)] if args.exact else []))
    return buf.getvalue(), EXIT_OK


def cmd_norm(args) -> tuple:
    q = _operator_q(args)
    space = _space(args)
    if args.vector:
        try:
            x = fock.vector_from_json(json.loads(args.vector))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"malformed --vector: {exc}") from exc
        if x.shape != (space.dim,):
            raise UsageError(f"--vector must have {space.dim} entries")
    else:
        x = np.zeros(space.dim, dtype=np.complex128)
        x[0] = 1.0
    if args.levels < 1:
        raise UsageError("--levels must be >= 1")
    if space.dim ** args.levels > 4096:
        raise UsageError(f"dim**levels = {space.dim ** args.levels} exceeds the 4096 level-size cap")
    trunc = fock.FockTruncation(space, args.levels, q)
    op = fock.creation(trunc, x)
    est = fock.power_iteration_norm(trunc, op, seed=args.seed)
    xnorm = float(np.linalg.norm(x))
    lo, hi = fock.creation_norm_bounds(q, xnorm)
    out = {
        "q": q, "levels": args.levels, "lower": lo, "estimate": est, "upper": hi,
        "upper_rule": "sqrt(2/(1-q))" if q >= 0 else "sqrt(1+|q|+q^2)",
        "within": bool(lo - 1e-6 <= est <= hi + 1e-6),
    }
    if args.explain:
        out["blockwise"] = fock.q_operator_norm(trunc, op)
    return _dumps(out) + "\n", EXIT_OK


def cmd_symmetrizer(args) -> tuple:
    q = _operator_q(args)
    space = _space(args)
    trunc = fock.FockTruncation(space, max(args.n, 0), q)
    direct = fock.build_symmetrizer_direct(trunc, args.n)
    rec = trunc.symmetrizer(args.n)
    if args.dump:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "re", "im"])
        for (i, j), z in np.ndenumerate(rec):
            w.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue(), EXIT_OK
    evals = fock.hermitian_eigenvalues(direct)
    out = {
        "n": args.n, "q": q, "dim": space.dim, "involution": args.involution,
        "max_abs_diff": float(np.max(np.abs(direct - rec))),
        "min_eigenvalue": evals[0], "max_eigenvalue": evals[-1],
    }
    return _dumps(out) + "\n", EXIT_OK


def cmd_spectrum(args) -> tuple:
    q = _operator_q(args)
    vals = spectral.spectrum_approx(q, args.size)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "eigenvalue"])
    for i, v in enumerate(vals):
        w.writerow([i, repr(float(v))])
    return buf.getvalue(), EXIT_OK


def cmd_verify(args) -> tuple:
    results = verify.run_suite(args.suite)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    rows = []
    for r in results:
        row = r.to_json()
        if not args.explain:
            row.pop("seconds")
        rows.append(row)
    report = {"suite": args.suite, "passed": passed, "criteria": rows}
    if not passed:
        report["failing"] = [r.cid for r in results if not r.passed]
    return _dumps(report) + "\n", EXIT_OK if passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, CapError, RankCapError, ValueError, fock.TruncationOverflow) as exc:
        print(f"fockd {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
