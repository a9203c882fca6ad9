"""Command-line interface.

Exit codes: 0 success, 1 counterexample (or inequivalence) found, 2 usage or
input error.  Reports are JSON with sorted keys so repeated runs are
byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .enumeration import EnumerationSpec, enumerate_signed
from .hoffman import (
    b_matrix,
    direct_sum_check,
    finest_decomposition,
    hoffman_eigen_min,
    is_H_line,
    part_class,
    read_hsg,
)
from .limits import (
    BlockSpec,
    D0_DEFAULT,
    DEFAULT_SCHEDULE,
    blow_up,
    f_value,
    limit_experiment,
    n0_for,
)
from .lines import (
    line_dagger,
    line_graph_double_edge,
    line_graph_unsigned,
    line_signed_graph,
    read_mg,
)
from .rootrep import classify, find_integral_representation, representation_graph
from .sigraph import (
    FormatError,
    SignedGraph,
    _vertex_invariants,
    canonical_switch_form,
    canonical_switching_set,
    format_sg,
    read_sg,
    switching_equivalent,
)
from .spectra import AlgebraicThreshold, approx_spectrum, char_poly, lambda_min_cmp

SCHEMA_VERSION = 1
THRESHOLDS = ("-2", "-sqrt2", "-1")


class UsageError(Exception):
    pass


def _report(command: list, result, counterexamples=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": result,
        "counterexamples": list(counterexamples),
    }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _read_graph(path: str) -> SignedGraph:
    p = Path(path)
    if p.suffix == ".hsg":
        return read_hsg(p).slim_subgraph()
    return read_sg(p)


def _edges_json(S: SignedGraph) -> list:
    return [[u, v, s] for u, v, s in S.edges()]


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit_code)

def cmd_spectrum(args):
    S = _read_graph(args.file)
    if S.n == 0:
        raise UsageError("graph has no vertices")
    spec = approx_spectrum(S.adjacency_matrix(), tol=args.tol)
    flags = {t: lambda_min_cmp(S, t).name for t in THRESHOLDS}
    return {
        "n": S.n,
        "char_poly": str(char_poly(S)),
        "lambda_min_vs": flags,
        "eigenvalues": [float(x) for x in spec.eigenvalues],
        "enclosures": [[str(lo), str(hi)] for lo, hi in spec.certified_bounds],
    }, 0


def cmd_canon(args):
    S = _read_graph(args.file)
    C = canonical_switch_form(S)
    if args.sg:
        return format_sg(C), 0
    return {"switching_set": sorted(canonical_switching_set(S)), "graph": format_sg(C)}, 0


def _distinguishing(S1: SignedGraph, S2: SignedGraph) -> str:
    if S1.n != S2.n:
        return "vertex count"
    if S1.num_edges != S2.num_edges:
        return "edge count"
    if sorted(_vertex_invariants(S1)) != sorted(_vertex_invariants(S2)):
        return "closed walk counts"
    if char_poly(S1) != char_poly(S2):
        return "characteristic polynomial"
    return "exhaustive search"


def cmd_equiv(args):
    S1, S2 = _read_graph(args.a), _read_graph(args.b)
    w = switching_equivalent(S1, S2)
    if w is None:
        return {"equivalent": False, "invariant": _distinguishing(S1, S2)}, 1
    return {"equivalent": True, "witness": w.to_json()}, 0


def cmd_linegraph(args):
    path = Path(args.file)
    if path.suffix == ".mg":
        H = read_mg(path)
        if args.dagger:
            L = line_dagger(H, *args.dagger)
        elif args.double or not H.is_simple:
            L = line_graph_double_edge(H)
        else:
            L = line_graph_unsigned(H)
    else:
        if args.dagger or args.double:
            raise UsageError("--dagger and --double need a .mg input")
        L = line_signed_graph(_read_graph(args.file))
    return (format_sg(L), 0) if args.sg else ({"graph": format_sg(L)}, 0)


def cmd_hoffman(args):
    path = Path(args.file)
    if args.action == "isline":
        if path.suffix == ".hsg":
            S = read_hsg(path).slim_subgraph()
        else:
            S = read_sg(path)
        fam = [f for f in args.family.split(",") if f]
        cert = is_H_line(S, fam, limit=args.limit)
        return {"family": fam, "is_line": cert is not None, "certificate": cert and cert.to_json()}, 0
    h = read_hsg(path)
    if args.action == "eig":
        B = b_matrix(h)
        if B.size == 0:
            raise UsageError("Hoffman graph has no slim vertices")
        return {
            "b_matrix": B.tolist(),
            "char_poly": str(char_poly(B)),
            "lambda_min_vs": {t: hoffman_eigen_min(h, t).name for t in THRESHOLDS},
            "eigenvalues": [float(x) for x in approx_spectrum(B).eigenvalues],
        }, 0
    dec = finest_decomposition(h)
    return {
        "parts": dec.to_json(),
        "classes": [part_class(h, p) if len(p) <= 6 else None for p in dec.parts],
        "decomposable": len(dec) > 1,
        "direct_sum": direct_sum_check(h, dec.parts),
    }, 0


def cmd_blowup(args):
    G = blow_up(read_hsg(args.file), args.t)
    return (format_sg(G), 0) if args.sg else ({"graph": format_sg(G)}, 0)


def random_block_spec(rng: np.random.Generator, m: int, n: int, bound: int = 3, complex_entries: bool = False):
    """Hermitian A, D and L with integer (or Gaussian integer) entries of modulus <= bound; D PD by rejection."""

    gaussian = np.array([a + 1j * b for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
                         if a * a + b * b <= bound * bound])

    def entries(shape):
        if complex_entries:
            return rng.choice(gaussian, shape)
        return rng.integers(-bound, bound + 1, shape).astype(float)

    def hermitian(k, low=-bound):
        M = np.triu(entries((k, k)), 1)
        return M + M.conj().T + np.diag(rng.integers(low, bound + 1, k))

    A = hermitian(m)
    L = entries((m, n))
    while True:
        try:
            # a positive definite D has a positive diagonal, so draw that directly
            return BlockSpec(A, L, hermitian(n, low=1))
        except ValueError:
            continue


def cmd_limit(args):
    schedule = [int(x) for x in args.schedule.split(",")] if args.schedule else list(DEFAULT_SCHEDULE)
    if args.random is not None:
        rng = np.random.default_rng(args.random)
        spec = random_block_spec(rng, args.m, args.n, complex_entries=args.complex)
        report = limit_experiment(spec, schedule)
        report.meta = {"seed": args.random, "m": args.m, "n": args.n, "complex": args.complex}
    elif args.file:
        report = limit_experiment(read_hsg(args.file), schedule)
    else:
        raise UsageError("give an .hsg file or --random SEED")
    if args.csv:
        return report.to_csv(), 0
    return report.to_json(), 0 if report.ok else 1


def cmd_represent(args):
    S = _read_graph(args.file)
    rep = find_integral_representation(S)
    if rep is None:
        return {"represented": False}, 0
    H = representation_graph(rep)
    return {
        "represented": True,
        "n": rep.dim,
        "vectors": rep.to_json(),
        "rep_graph": {"n": H.n, "edges": [list(e) for e in H.edges]},
    }, 0


def cmd_classify(args):
    S = _read_graph(args.file)
    return classify(S, alternatives=args.alternatives, e8=args.e8).to_json(), 0


def cmd_n0(args):
    lam = AlgebraicThreshold.parse(args.lam)
    return {"lambda": str(lam), "n0": n0_for(lam), "d0": args.d0, "f": f_value(lam, args.d0)}, 0


def cmd_enumerate(args):
    filters = []
    for f in args.filter or []:
        op, _, t = f.partition(":")
        filters.append((op, AlgebraicThreshold.parse(t)))
    spec = EnumerationSpec(
        args.max_n,
        args.min_n,
        connected=not args.all,
        dedup=args.dedup,
        lambda_filters=tuple(filters),
        min_degree=args.min_degree,
    )
    graphs = [format_sg(S) for S in enumerate_signed(spec)]
    return {"count": len(graphs), "graphs": [] if args.count_only else graphs}, 0


def cmd_verify(args):
    which = args.which
    kw = {}
    if which in ("comp", "seidel", "prop12", "thm11S") and args.max_n is not None:
        kw["max_n"] = args.max_n
    if which == "thm11S":
        if args.lam:
            kw["lam"] = AlgebraicThreshold.parse(args.lam)
        kw["d0"] = args.d0
    if which == "sum":
        kw["seed"] = args.seed
    if which == "oddodd" and args.max_n is not None:
        kw["lengths"] = tuple(k for k in range(3, args.max_n + 1, 2))
    result = verify_mod.VERIFIERS[which](**kw)
    bad = result.get("counterexamples", [])
    if bad and args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, item in enumerate(bad):
            text = item if isinstance(item, str) else item.get("graph")
            if isinstance(text, str):
                (out / f"{which}_{i:04d}.sg").write_text(text)
    return result, 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hoffsign", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("spectrum", help="exact and floating spectrum of a .sg graph")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(fn=cmd_spectrum)

    s = sub.add_parser("canon", help="canonical switching form")
    s.add_argument("file")
    s.add_argument("--sg", action="store_true", help="print plain .sg instead of JSON")
    s.set_defaults(fn=cmd_canon)

    s = sub.add_parser("equiv", help="switching equivalence up to relabelling")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=cmd_equiv)

    s = sub.add_parser("linegraph", help="line signed graph of a .sg or line graph of a .mg")
    s.add_argument("file")
    s.add_argument("--dagger", nargs=2, type=int, metavar=("U", "U_PRIME"))
    s.add_argument("--double", action="store_true")
    s.add_argument("--sg", action="store_true")
    s.set_defaults(fn=cmd_linegraph)

    s = sub.add_parser("hoffman", help="Hoffman signed graph operations")
    s.add_argument("file")
    s.add_argument("action", choices=("eig", "decompose", "isline"))
    s.add_argument("--family", default="h2,h2-,h3")
    s.add_argument("--limit", type=int, default=12)
    s.set_defaults(fn=cmd_hoffman)

    s = sub.add_parser("blowup", help="replace fat vertices by positive cliques")
    s.add_argument("file")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--sg", action="store_true")
    s.set_defaults(fn=cmd_blowup)

    s = sub.add_parser("limit", help="smallest eigenvalue along a blow-up schedule")
    s.add_argument("file", nargs="?")
    s.add_argument("--random", type=int, metavar="SEED")
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--complex", action="store_true")
    s.add_argument("--schedule", help="comma-separated increasing t values")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_limit)

    s = sub.add_parser("represent", help="integral root representation")
    s.add_argument("file")
    s.set_defaults(fn=cmd_represent)

    s = sub.add_parser("classify", help="shape of the representation graph")
    s.add_argument("file")
    s.add_argument("--alternatives", action="store_true")
    s.add_argument("--e8", action="store_true")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("n0", help="blow-up size pushing all catalogue graphs below lambda")
    s.add_argument("--lambda", dest="lam", required=True, help="e.g. --lambda=-3/2 or --lambda=-sqrt3")
    s.add_argument("--d0", type=int, default=D0_DEFAULT)
    s.set_defaults(fn=cmd_n0)

    s = sub.add_parser("enumerate", help="signed graphs up to switching/isomorphism")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-n", type=int, default=1)
    s.add_argument("--all", action="store_true", help="include disconnected graphs")
    s.add_argument("--dedup", choices=("switching", "isomorphism"), default="switching")
    s.add_argument("--filter", action="append", help="OP:THRESHOLD, e.g. '>=:-sqrt2'")
    s.add_argument("--min-degree", type=int)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("verify", help="exhaustive checks at small sizes")
    s.add_argument("which", choices=sorted(verify_mod.VERIFIERS))
    s.add_argument("--max-n", type=int)
    s.add_argument("--seed", type=int, default=12345)
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--d0", type=int, default=D0_DEFAULT)
    s.add_argument("--out-dir")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.fn(args)
    except (UsageError, FormatError, FileNotFoundError, ValueError) as exc:
        print(f"hoffsign: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        counter = payload.get("counterexamples", []) if isinstance(payload, dict) else []
        sys.stdout.write(_dump(_report(argv, payload, counter)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
