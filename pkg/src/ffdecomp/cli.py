"""Command-line front end.

Exit codes: 0 found / holds, 1 proven none / does not hold, 2 input error,
3 budget exhausted.  Results go to ``--out`` or stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io, oracle
from .budget import Budget, BudgetExhausted
from .decompose import MAX_RANK, decompose, tensor_rank
from .field import field
from .reduction import ConstantlyUnsat, reduce_to_rank2_wildcard
from .tensor import evaluate
from .wildcard import WILDCARD, rank1_wildcard, rank1_wildcard_gf2, rank1_wildcard_matrix

EXIT_FOUND, EXIT_NONE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _parse(reader, path: str, *args):
    try:
        return reader(_read(path), *args)
    except io.ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as f:
            f.write(text)


def _budget(args) -> Budget:
    return Budget(args.budget)


def _warn_cost(gf, R: int) -> None:
    if gf.q > 3 and R == MAX_RANK:
        print(
            f"warning: rank {R} over a field of order {gf.q} enumerates on the order of "
            f"{gf.q}^12 candidates; consider --budget",
            file=sys.stderr,
        )


def cmd_decompose(args) -> int:
    gf, T = _parse(io.read_tensor, args.input, False)
    if not 0 <= args.rank <= MAX_RANK:
        raise InputError(f"--rank must be in 0..{MAX_RANK}")
    _warn_cost(gf, args.rank)
    d = decompose(gf, T, args.rank, _budget(args))
    if d is None:
        print(f"no decomposition of rank {args.rank}", file=sys.stderr)
        return EXIT_NONE
    _emit(io.write_decomposition(gf, d), args.out)
    return EXIT_FOUND


def cmd_rank(args) -> int:
    gf, T = _parse(io.read_tensor, args.input, False)
    _warn_cost(gf, args.max_rank)
    r = tensor_rank(gf, T, args.max_rank, _budget(args))
    if r is None:
        print(f"rank exceeds {args.max_rank}", file=sys.stderr)
        return EXIT_NONE
    _emit(f"{r}\n", args.out)
    return EXIT_FOUND


def cmd_rank1w(args) -> int:
    if args.matrix:
        gf, W = _parse(io.read_matrix, args.input)
        vecs = rank1_wildcard_matrix(gf, W)
    else:
        gf, W = _parse(io.read_tensor, args.input)
        vecs = rank1_wildcard_gf2(gf, W) if gf.q == 2 else rank1_wildcard(gf, W)
    if vecs is None:
        print("no rank-1 completion", file=sys.stderr)
        return EXIT_NONE
    _emit(io.write_vectors(gf, vecs), args.out)
    return EXIT_FOUND


def cmd_verify(args) -> int:
    gf, W = _parse(io.read_tensor, args.input)
    gf2, d = _parse(io.read_decomposition, args.decomp)
    if gf2 != gf:
        raise InputError(f"field mismatch: tensor over GF({gf.q}), decomposition over GF({gf2.q})")
    if d.dims != W.shape:
        raise InputError(f"shape mismatch: tensor {W.shape}, decomposition {d.dims}")
    fixed = W != WILDCARD
    diff = np.argwhere(fixed & (evaluate(gf, d) != W))
    if diff.size:
        print(f"{len(diff)} cell(s) differ, first at {tuple(int(v) for v in diff[0])}", file=sys.stderr)
        return EXIT_NONE
    print("ok", file=sys.stderr)
    return EXIT_FOUND


def cmd_reduce_nae(args) -> int:
    inst = _parse(io.read_cnf, args.input)
    out = reduce_to_rank2_wildcard(inst)
    if isinstance(out, ConstantlyUnsat):
        print(f"clause {out.clause + 1} is NAE(x, x, x): unsatisfiable", file=sys.stderr)
        return EXIT_NONE
    for idx in out.dropped:
        print(f"clause {idx + 1} always holds; dropped", file=sys.stderr)
    _emit(io.write_tensor(field(2), out.cells), args.out)
    return EXIT_FOUND


def cmd_oracle(args) -> int:
    budget = _budget(args)
    if args.what == "decompose":
        if args.rank is None:
            raise InputError("oracle decompose needs --rank")
        gf, T = _parse(io.read_tensor, args.input, False)
        d = oracle.brute_force_decompose(gf, T, args.rank, budget)
        if d is None:
            return EXIT_NONE
        _emit(io.write_decomposition(gf, d), args.out)
        return EXIT_FOUND
    if args.what == "rank1w":
        reader = io.read_matrix if args.matrix else io.read_tensor
        gf, W = _parse(reader, args.input)
        vecs = oracle.brute_force_rank1_wildcard(gf, W, budget)
        if vecs is None:
            return EXIT_NONE
        _emit(io.write_vectors(gf, vecs), args.out)
        return EXIT_FOUND
    gf, W = _parse(io.read_tensor, args.input)
    if gf.q != 2:
        raise InputError("oracle rank2 works over GF(2) only")
    sols = list(oracle.enumerate_rank2_decompositions(gf, W, budget))
    _emit(f"{len(sols)}\n" + "".join(io.write_decomposition(gf, d) for d in sols), args.out)
    return EXIT_FOUND if sols else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffdecomp", description="Exact low-rank tensor decomposition over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--in", dest="input", required=True, help="input file ('-' for stdin)")
        if out:
            p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--budget", type=int, default=None, help="cap on enumerated candidates")

    p = sub.add_parser("decompose", help="find a rank-R decomposition")
    common(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="return the first solution in enumeration order (the search is sequential either way)",
    )
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("rank", help=f"smallest rank up to --max-rank (at most {MAX_RANK})")
    common(p)
    p.add_argument("--max-rank", type=int, default=MAX_RANK, choices=range(MAX_RANK + 1))
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("rank1w", help="rank-1 completion of a wildcard tensor or matrix")
    common(p)
    p.add_argument("--matrix", action="store_true", help="input is a MATRIX file")
    p.set_defaults(func=cmd_rank1w)

    p = sub.add_parser("verify", help="check a decomposition against a tensor (wildcards skipped)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--decomp", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce-nae", help="NAE-3SAT instance to a rank-2 wildcard tensor over GF(2)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce_nae)

    p = sub.add_parser("oracle", help="brute-force reference searches")
    p.add_argument("what", choices=["decompose", "rank1w", "rank2"])
    common(p)
    p.add_argument("--rank", type=int)
    p.add_argument("--matrix", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
