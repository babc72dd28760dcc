"""
Command-line front end.

Exit codes: 0 success / valid, 1 invalid code, 2 usage or format error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from math import comb

from . import matrixfile
from .bounds import girth5_edge_bound, optimal_N, optimal_N_t, tiling_bound, uniform_max_n, uniform_max_n_t
from .constructions import (
    ConstructionError, augment_pairs_code, construct_girth5, construct_path_pack, construct_range,
    construct_saturated, construct_spread, construct_uniform_replication, triangle_code,
)
from .core import grouped_matrix, total_storage
from .graphs import Graph
from .reports import format_compare, format_table1
from .search import (
    SearchBudget, Status, find_span_witness_graph, max_girth5_edges_search, max_uniform_n_search,
    min_storage_search,
)
from .verifier import BudgetExceeded, is_cbc, naive_is_cbc

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3

METHODS = ['auto', 'grouped', 'range', 'saturated', 'spread', 'uniform-replication', 'pairs-augmented']


class UsageError(Exception):
    pass


def _auto_method(n, k, m, t):
    if t >= 2:
        if m == k and n <= t * k:
            return 'spread'
        if k in (9, 10) and t == 2 and n >= comb(m, 2):
            return 'pairs-augmented'
        return 'uniform-replication'
    full = (k - 1) * comb(m, k - 1)
    if n == full:
        return 'grouped'
    if n > full:
        return 'saturated'
    return 'range'


def _build(args):
    n, k, m, t = args.n, args.k, args.m, args.t
    method = args.method if args.method != 'auto' else _auto_method(n, k, m, t)
    if method == 'grouped':
        if n != (k - 1) * comb(m, k - 1):
            raise UsageError(f"grouped needs n = (k-1)C(m,k-1) = {(k - 1) * comb(m, k - 1)}")
        return method, grouped_matrix(m, k).flatten()
    if method == 'range':
        return method, construct_range(n, k, m)[0]
    if method == 'saturated':
        return method, construct_saturated(n, k, m)
    if method == 'spread':
        if m != k:
            raise UsageError("spread needs m = k")
        return method, construct_spread(n, k, t)
    if method == 'uniform-replication':
        c = args.c
        if c is None:
            for cand in range(1, m):
                b = uniform_max_n_t(m, cand, k, t)
                if b.value == n and not b.is_unbounded:
                    c = cand
                    break
        if c is None or n % comb(m, c):
            raise UsageError("uniform-replication needs --c with n a multiple of C(m, c)")
        return method, construct_uniform_replication(m, c, n // comb(m, c), k, t)
    if method == 'pairs-augmented':
        if t != 2:
            raise UsageError("pairs-augmented needs t = 2")
        extra = construct_path_pack(m) if k == 9 else construct_girth5(m)
        need = n - comb(m, 2)
        if not 0 <= need <= len(extra):
            raise UsageError(f"pairs-augmented supports {comb(m, 2)} <= n <= {comb(m, 2) + len(extra)}")
        return method, augment_pairs_code(m, Graph(m, extra.edge_list()[:need]), k)
    raise UsageError(f"unknown method {method}")


def cmd_construct(args, out):
    if min(args.n, args.k, args.m, args.t) < 1 or args.k > args.n:
        raise UsageError("need positive n, k, m, t with k <= n")
    try:
        method, M = _build(args)
    except (ValueError, ConstructionError) as exc:
        raise UsageError(str(exc)) from None
    ok, _ = is_cbc(M, args.k, args.t)
    mf = matrixfile.MatrixFile(M, args.k, args.t)
    if args.out:
        matrixfile.write(args.out, mf, as_json=args.json, comments=[f"method {method}"])
    elif args.json:
        out.write(matrixfile.format_json(mf))
    else:
        out.write(matrixfile.format_text(mf))
    print(f"n={M.n} N={total_storage(M)} method={method} {'VALID' if ok else 'INVALID'}", file=out)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_verify(args, out):
    try:
        mf = matrixfile.read(args.file)
    except (OSError, matrixfile.MatrixFormatError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    M = mf.matrix
    if args.k > M.n:
        raise UsageError(f"k={args.k} exceeds n={M.n}")
    ok, witness = is_cbc(M, args.k, args.t)
    if args.naive:
        try:
            naive = naive_is_cbc(M, args.k, args.t)
        except BudgetExceeded as exc:
            raise UsageError(str(exc)) from None
        print(f"naive check: {'VALID' if naive else 'INVALID'}", file=out)
    if ok:
        print(f"VALID (n={M.n}, N={total_storage(M)}, k={args.k}, m={M.m}, t={args.t})", file=out)
        return EXIT_OK
    print(f"INVALID: {witness.describe()}", file=out)
    print(f"  items {','.join(map(str, sorted(witness.items)))}", file=out)
    print(f"  servers {','.join(map(str, sorted(witness.spanned)))}", file=out)
    return EXIT_INVALID


def cmd_bound(args, out):
    try:
        if args.what == 'N':
            res = optimal_N(args.n, args.k, args.m) if args.t == 1 else optimal_N_t(args.n, args.k, args.m, args.t)
        elif args.what == 'uniform':
            res = uniform_max_n(args.m, args.c, args.k) if args.t == 1 else uniform_max_n_t(args.m, args.c, args.k, args.t)
        elif args.what == 'tiling':
            tb = tiling_bound(args.m)
            print(f"delta >= {tb.delta} (d={tb.d}, g={tb.g}, s={tb.s}, e={tb.e}, "
                  f"m'={tb.m_prime}, oct={tb.oct}, l'={tb.l_prime}, delta''={tb.delta_second})", file=out)
            return EXIT_OK
        else:
            print(f"{girth5_edge_bound(args.v)} LOWER (triangle- and square-free edges, v={args.v})", file=out)
            return EXIT_OK
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(str(res), file=out)
    if res.note:
        print(f"note: {res.note}", file=out)
    return EXIT_OK


def cmd_report(args, out):
    out.write(format_table1() if args.which == 'table1' else format_compare())
    return EXIT_OK


def cmd_search(args, out):
    budget = SearchBudget(args.max_nodes, args.max_seconds)
    try:
        if args.what == 'min-storage':
            res = min_storage_search(args.n, args.k, args.m, args.t, budget)
        elif args.what == 'uniform':
            res = max_uniform_n_search(args.m, args.c, args.k, args.t, budget)
        elif args.what == 'g8':
            res = find_span_witness_graph(args.v, args.triangles, args.k, budget)
        else:
            res = max_girth5_edges_search(args.v, budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if res.status is Status.EXHAUSTED:
        print(f"EXHAUSTED after {res.nodes} nodes; best so far {res.value}", file=out)
        return EXIT_EXHAUSTED
    if res.status in (Status.NONE, Status.UNBOUNDED):
        print(res.status.value, file=out)
        return EXIT_OK
    print(res.value, file=out)
    if args.what == 'g8':
        G, tris = res.witness
        print(f"edges {' '.join(f'{a}-{b}' for a, b in G.edge_list())}", file=out)
        M = triangle_code(G, tris)
        if args.out:
            matrixfile.write(args.out, matrixfile.MatrixFile(M, args.k, 1))
    elif args.what == 'girth5':
        print(f"edges {' '.join(f'{a}-{b}' for a, b in res.witness.edge_list())}", file=out)
    elif args.out and res.witness is not None:
        matrixfile.write(args.out, matrixfile.MatrixFile(res.witness, args.k, args.t))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog='batchcodes', description="Combinatorial batch codes")
    sub = p.add_subparsers(dest='command', required=True)

    c = sub.add_parser('construct', help="build a code and write its incidence matrix")
    c.add_argument('--n', type=int, required=True)
    c.add_argument('--k', type=int, required=True)
    c.add_argument('--m', type=int, required=True)
    c.add_argument('--t', type=int, default=1)
    c.add_argument('--c', type=int, help="column weight for uniform-replication")
    c.add_argument('--method', choices=METHODS, default='auto')
    c.add_argument('--out')
    c.add_argument('--json', action='store_true')
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser('verify', help="check a matrix file")
    v.add_argument('--k', type=int, required=True)
    v.add_argument('--t', type=int, default=1)
    v.add_argument('--naive', action='store_true', help="also enumerate every k-subset")
    v.add_argument('file')
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser('bound', help="closed-form values and bounds")
    bs = b.add_subparsers(dest='what', required=True)
    bn = bs.add_parser('N')
    for f in ('n', 'k', 'm'):
        bn.add_argument(f'--{f}', type=int, required=True)
    bn.add_argument('--t', type=int, default=1)
    bu = bs.add_parser('uniform')
    for f in ('m', 'c', 'k'):
        bu.add_argument(f'--{f}', type=int, required=True)
    bu.add_argument('--t', type=int, default=1)
    bt = bs.add_parser('tiling')
    bt.add_argument('--m', type=int, required=True)
    bg = bs.add_parser('girth5')
    bg.add_argument('--v', type=int, required=True)
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser('report', help="reproduce the tables")
    r.add_argument('which', choices=['table1', 'compare'])
    r.set_defaults(func=cmd_report)

    s = sub.add_parser('search', help="exhaustive oracles")
    ss = s.add_subparsers(dest='what', required=True)
    sm = ss.add_parser('min-storage')
    for f in ('n', 'k', 'm'):
        sm.add_argument(f'--{f}', type=int, required=True)
    sm.add_argument('--t', type=int, default=1)
    su = ss.add_parser('uniform')
    for f in ('m', 'c', 'k'):
        su.add_argument(f'--{f}', type=int, required=True)
    su.add_argument('--t', type=int, default=1)
    sg = ss.add_parser('g8')
    sg.add_argument('--v', type=int, default=8)
    sg.add_argument('--triangles', type=int, default=16)
    sg.add_argument('--k', type=int, default=6)
    sgi = ss.add_parser('girth5')
    sgi.add_argument('--v', type=int, required=True)
    for sp in (sm, su, sg, sgi):
        sp.add_argument('--max-nodes', type=int, default=10_000_000)
        sp.add_argument('--max-seconds', type=float, default=600.0)
        sp.add_argument('--out')
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
