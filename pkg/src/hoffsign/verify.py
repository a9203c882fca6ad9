"""Exhaustive and sampled checks of the classification results at desk scale.

Every ``verify_*`` function returns a plain dict with ``checked`` and
``counterexamples`` (a list of ``.sg`` texts or small dicts); an empty
counterexample list means the statement held on the whole family.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import networkx as nx

from .enumeration import EnumerationSpec, enumerate_signed, parallel_map, unsigned_graphs
from .hoffman import CATALOG, HoffmanSGraph, direct_sum_check, slim_switch, verify_decomposition
from .limits import D0_DEFAULT, DEFAULT_SCHEDULE, f_value, limit_experiment, n0_for
from .lines import (
    Multigraph,
    line_dagger,
    line_graph_double_edge,
    line_graph_unsigned,
    multigraph_isomorphic,
)
from .rootrep import Tag, classify, corollary14_check, dagger_edges, find_integral_representation
from .sigraph import SignedGraph, format_sg, min_degree, switching_equivalent
from .spectra import AlgebraicThreshold, Cmp, lambda_min_cmp

SQRT2 = AlgebraicThreshold.sqrt(2, -1)


def switching_complete(S: SignedGraph) -> bool:
    return switching_equivalent(S, SignedGraph.complete(S.n)) is not None


# ---------------------------------------------------------------------------
# spectral lemmas

def verify_oddodd(lengths=(3, 5, 7, 9)) -> dict:
    checked, bad = 0, []
    for n in lengths:
        for k in range(1, n + 1, 2):
            for neg in itertools.combinations(range(n), k):
                S = SignedGraph.cycle(n, negative=neg)
                checked += 1
                if lambda_min_cmp(S, -2) is not Cmp.EQUAL:
                    bad.append(format_sg(S))
    return {"lengths": list(lengths), "checked": checked, "counterexamples": bad}


def _class_check(spec: EnumerationSpec, predicate) -> tuple[int, list]:
    graphs = list(enumerate_signed(spec))
    results = parallel_map(predicate, graphs)
    return len(graphs), [format_sg(S) for S, ok in zip(graphs, results) if not ok]


def verify_comp(max_n: int = 6) -> dict:
    """Complete underlying graph and lambda_min >= -sqrt2 forces switching-complete."""
    checked, bad = 0, []
    for n in range(1, max_n + 1):
        spec = EnumerationSpec(n, n, lambda_filters=((">=", SQRT2),))
        for S in enumerate_signed(spec):
            if S.num_edges != n * (n - 1) // 2:
                continue
            checked += 1
            if not switching_complete(S):
                bad.append(format_sg(S))
    return {"max_n": max_n, "checked": checked, "counterexamples": bad}


def verify_seidel(max_n: int = 6) -> dict:
    spec = EnumerationSpec(max_n, lambda_filters=((">", SQRT2),))
    checked, bad = _class_check(spec, switching_complete)
    return {"max_n": max_n, "checked": checked, "counterexamples": bad}


def verify_prop12(max_n: int = 6) -> dict:
    """delta >= 3 and lambda_min >= -sqrt2 force switching-complete with lambda_min = -1."""
    spec = EnumerationSpec(max_n, lambda_filters=((">=", SQRT2),), min_degree=3)
    checked, bad = _class_check(
        spec, lambda S: switching_complete(S) and lambda_min_cmp(S, -1) is Cmp.EQUAL
    )
    total = sum(1 for _ in enumerate_signed(EnumerationSpec(max_n)))
    # the degree bound cannot drop to 2: the 4-cycle with one negative edge
    C4 = SignedGraph.cycle(4, negative=[3])
    boundary = {
        "graph": format_sg(C4),
        "min_degree": min_degree(C4),
        "lambda_min_vs_-sqrt2": lambda_min_cmp(C4, SQRT2).name,
        "switching_complete": switching_complete(C4),
    }
    return {
        "max_n": max_n,
        "classes": total,
        "checked": checked,
        "counterexamples": bad,
        "boundary_witness": boundary,
    }


def verify_thm11S(lam="-3/2", max_n: int = 7, d0: int = D0_DEFAULT) -> dict:
    """Min degree >= f(lam) and lambda_min >= lam force switching-complete."""
    lam_t = AlgebraicThreshold.of(lam)
    f = f_value(lam_t, d0)
    out = {"lambda": str(lam_t), "n0": n0_for(lam_t), "d0": d0, "f": f, "max_n": max_n}
    if f > max_n - 1:
        out.update(checked=0, vacuous=True, counterexamples=[])
        return out
    spec = EnumerationSpec(max_n, lambda_filters=((">=", lam_t),), min_degree=f)
    checked, bad = _class_check(spec, switching_complete)
    out.update(checked=checked, vacuous=checked == 0, counterexamples=bad)
    return out


# ---------------------------------------------------------------------------
# line graph classification corpus

@dataclass
class Instance:
    kind: Tag
    H: Multigraph

    def build(self) -> SignedGraph:
        if self.kind in (Tag.TREE, Tag.ODD_UNICYCLIC):
            return line_graph_unsigned(self.H)
        if self.kind is Tag.EVEN_UNICYCLIC:
            return line_dagger(self.H, *dagger_edges(self.H))
        return line_graph_double_edge(self.H)


def _atlas_unicyclic(max_edges: int):
    for n in range(3, max_edges + 1):
        for edges in unsigned_graphs(n):
            if len(edges) == n:
                yield Multigraph(n, edges)


def thm3_corpus(tree_edges=8, odd_edges=7, even_edges=7, even_cycles=(4, 6), double_edges=6):
    """Source multigraphs for the four shapes."""
    inst = []
    for order in range(2, tree_edges + 2):
        for T in nx.nonisomorphic_trees(order):
            inst.append(Instance(Tag.TREE, Multigraph.from_networkx(T)))
    for H in _atlas_unicyclic(max(odd_edges, even_edges)):
        c = len(H.cycle_edges())
        if c % 2 and H.m <= odd_edges:
            inst.append(Instance(Tag.ODD_UNICYCLIC, H))
        elif c % 2 == 0 and c in even_cycles and H.m <= even_edges:
            inst.append(Instance(Tag.EVEN_UNICYCLIC, H))
    doubled: list[Multigraph] = []
    for order in range(2, double_edges + 1):
        for T in nx.nonisomorphic_trees(order):
            base = Multigraph.from_networkx(T)
            for e in base.edges:
                H = Multigraph(base.n, base.edges + (e,))
                if not any(multigraph_isomorphic(H, G) for G in doubled):
                    doubled.append(H)
    # the bare double edge builds two isolated vertices, represented by e0 + e1 and e0 - e1
    inst += [Instance(Tag.DOUBLE_EDGE_TREE, H) for H in doubled]
    return inst


def check_instance(item: Instance) -> dict:
    S = item.build()
    row = {"kind": item.kind.value, "H": [list(e) for e in item.H.edges], "m": S.n}
    row["gt_minus2"] = lambda_min_cmp(S, -2) is Cmp.GREATER
    rep = find_integral_representation(S) if row["gt_minus2"] else None
    row["represented"] = rep is not None and rep.is_valid_for(S)
    verdict = classify(S, alternatives=True)
    row["tag"] = verdict.tag.value
    direct = (
        verdict.tag is item.kind
        and verdict.rep_graph is not None
        and multigraph_isomorphic(verdict.rep_graph, item.H)
    )
    via_alt = any(t is item.kind and multigraph_isomorphic(G, item.H) for t, G in verdict.alternatives)
    row["recovered"] = direct or via_alt
    row["recovered_directly"] = direct
    row["witness_ok"] = verdict.witness is not None and verdict.witness.apply(S) == verdict.reconstruction
    if item.kind is not Tag.TREE:
        try:
            c = corollary14_check(S, verdict)
            rest = S if c.removed is None else _delete(S, c.removed)
            row["corollary_ok"] = c.tree.shape() == "tree" and c.witness.apply(rest) == line_graph_unsigned(c.tree)
        except (ValueError, AssertionError):
            row["corollary_ok"] = False
    return row


def _delete(S: SignedGraph, v: int) -> SignedGraph:
    from .sigraph import delete_vertex

    return delete_vertex(S, v)


def verify_thm3_converse(**corpus_kw) -> dict:
    inst = thm3_corpus(**corpus_kw)
    rows = parallel_map(check_instance, inst)
    counts = {}
    for r in rows:
        counts[r["kind"]] = counts.get(r["kind"], 0) + 1
    bad5 = [r for r in rows if not (r["gt_minus2"] and r["represented"])]
    bad6 = [r for r in rows if not (r["recovered"] and r["witness_ok"])]
    bad7 = [r for r in rows if r["kind"] != Tag.TREE.value and not r.get("corollary_ok")]
    ambiguous = [r for r in rows if r["recovered"] and not r["recovered_directly"]]
    return {
        "instances": len(rows),
        "by_kind": counts,
        "converse_failures": bad5,
        "round_trip_failures": bad6,
        "corollary_failures": bad7,
        "ambiguous": [{"kind": r["kind"], "H": r["H"], "primary_tag": r["tag"]} for r in ambiguous],
        "counterexamples": bad5 + bad6 + bad7,
    }


# ---------------------------------------------------------------------------
# Hoffman graphs

def verify_limit_catalog(schedule=DEFAULT_SCHEDULE, gap: float = 0.1) -> dict:
    rows, bad = [], []
    for name in ("h2", "h3", "h4", "h2-", "h2--"):
        r = limit_experiment(CATALOG[name], schedule)
        lam = r.target
        inside = all(lam < x < lam + 1 for x in r.lambda_min)
        ok = inside and r.monotone and r.final_gap < gap
        rows.append({"name": name, "target": lam, "values": r.lambda_min, "final_gap": r.final_gap, "ok": ok})
        if not ok:
            bad.append(name)
    return {"schedule": list(schedule), "results": rows, "checked": len(rows), "counterexamples": bad}


_GLUE_PARTS = ("h2", "h2-", "h2--", "h3", "h4")


def random_glued(rng: random.Random, parts: int = 3, pool: int = 4):
    """Glue catalogue graphs along shared fat vertices; slim cross edges follow inner products.

    Returns (HoffmanSGraph, parts) or None when some inner product leaves {-1, 0, 1}.
    """
    slim_vecs, slim_owner, internal = [], [], []
    part_fats = []
    for p in range(parts):
        h = CATALOG[rng.choice(_GLUE_PARTS)]
        fats = rng.sample(range(pool), len(h.fat))
        fmap = dict(zip(h.fat, fats))
        smap = {}
        for x in h.slim:
            smap[x] = len(slim_vecs)
            slim_vecs.append({fmap[F]: h.graph.sign(x, F) for F in h.fat if h.graph.sign(x, F)})
            slim_owner.append(p)
        for x, y in itertools.combinations(h.slim, 2):
            if h.graph.sign(x, y):
                internal.append((smap[x], smap[y], h.graph.sign(x, y)))
        part_fats.append(set(fats))
    k = len(slim_vecs)
    edges = list(internal)
    for i, j in itertools.combinations(range(k), 2):
        if slim_owner[i] == slim_owner[j]:
            continue
        ip = sum(s * slim_vecs[j].get(c, 0) for c, s in slim_vecs[i].items())
        if abs(ip) > 1:
            return None
        if ip:
            edges.append((i, j, ip))
    used = sorted(set().union(*part_fats))
    fidx = {c: k + i for i, c in enumerate(used)}
    for i, v in enumerate(slim_vecs):
        edges += [(i, fidx[c], s) for c, s in v.items()]
    h = HoffmanSGraph(SignedGraph.from_signed_edges(k + len(used), edges), ("s",) * k + ("f",) * len(used))
    W = {i for i in range(k) if rng.random() < 0.5}
    h = slim_switch(h, W)
    decomposition = [
        {i for i in range(k) if slim_owner[i] == p} | {fidx[c] for c in part_fats[p]}
        for p in range(parts)
    ]
    return h, decomposition


def verify_sum(samples: int = 200, seed: int = 12345) -> dict:
    rng = random.Random(seed)
    checked, rejected, bad = 0, 0, []
    while checked < samples:
        got = random_glued(rng, parts=rng.randint(2, 4), pool=rng.randint(2, 6))
        if got is None:
            rejected += 1
            continue
        h, parts = got
        checked += 1
        if not verify_decomposition(h, parts) or not direct_sum_check(h, parts):
            bad.append({"graph": format_sg(h.graph), "labels": "".join(h.labels), "parts": [sorted(p) for p in parts]})
    return {"seed": seed, "checked": checked, "rejected": rejected, "counterexamples": bad}


VERIFIERS = {
    "oddodd": verify_oddodd,
    "comp": verify_comp,
    "seidel": verify_seidel,
    "prop12": verify_prop12,
    "thm3-converse": verify_thm3_converse,
    "limit-catalog": verify_limit_catalog,
    "sum": verify_sum,
    "thm11S": verify_thm11S,
}
