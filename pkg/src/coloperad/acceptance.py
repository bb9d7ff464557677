"""The acceptance suite: nine exact checks plus a determinism comparison.

Each criterion returns a JSON-ready dict without timings, so that the
serialized suite is byte-identical however the criteria are scheduled.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor

from .csmodules import (
    ConstantBifunctor, ConstantCS, HomBifunctor, RepresentableCS, check_plethysm_unit,
    check_twisted_arrow_coend, random_bifunctor, unit_module,
)
from .dw import check_equivariance, check_gluing_suite, dw_count, enumerate_covers
from .free import ConstantModule, check_monad_laws
from .frobenius import check_gfrobenius, drinfeld_module_check, dw_frobenius, state_sum
from .graphs import enumerate_stable_graphs, genus, is_stable, stable_graphs
from .groupoids import group_as_groupoid, inverse_duality, loop_groupoid, trivial_groupoid
from .groups import conjugacy_classes, make_group

MATRIX = ["Z2", "Z3", "Z4", "S3", "Q8"]


def stable_types(max_weight=6, closed=False):
    """(g, n) with 2g + n <= max_weight and 2g - 2 + n > 0."""
    out = []
    for n in range(max_weight + 1):
        for g in range((max_weight - n) // 2 + 1):
            if 2 * g - 2 + n > 0 or (closed and n == 0 and g >= 2):
                out.append((g, n))
    return out


def class_tuples(G, n):
    """Sorted tuples of conjugacy-class representatives."""
    reps = [c[0] for c in conjugacy_classes(G)]
    return itertools.combinations_with_replacement(reps, n)


def criterion_1():
    G2, S3 = make_group("Z2"), make_group("S3")
    hand = {
        "Z2 (0; e,e,e)": (dw_count(G2, 0, ("e", "e", "e")), 4),
        "Z2 (1; e)": (dw_count(G2, 1, ("e",)), 4),
        "Z2 (2; -)": (dw_count(G2, 2, ()), 8),
        "S3 (0; (12),(12),e)": (dw_count(S3, 0, ("(12)", "(12)", "e")), 12),
    }
    ok = all(a == b for a, b in hand.values())
    entries, mismatches = {}, []
    for name in MATRIX:
        G = make_group(name)
        k = 0
        for g, n in stable_types():
            if n == 0:
                continue
            for col in class_tuples(G, n):
                k += 1
                if len(enumerate_covers(G, g, col)) != dw_count(G, g, col):
                    mismatches.append([name, g, list(col)])
        entries[name] = k
    ok = ok and not mismatches
    return {"name": "counting baseline", "passed": ok,
            "details": {"hand_values": {k: str(a) for k, (a, _) in hand.items()},
                        "cover_entries": entries, "mismatches": mismatches[:5]}}


def criterion_2():
    counts, ok, witness = {}, True, None
    for name in ["Z2", "Z3", "Z4", "S3"]:
        r = check_gluing_suite(name, 6)
        counts[name] = r.checked
        if not r.ok:
            ok, witness = False, repr(r.witness)
    total = sum(counts.values())
    return {"name": "gluing laws", "passed": ok and total >= 10 ** 4,
            "details": {"instances": counts, "total": total, "witness": witness}}


def criterion_3():
    G = make_group("S3")
    checked, bad = 0, []
    for col in itertools.product(G.elements, repeat=3):
        r = check_equivariance(G, 0, col)
        checked += r.checked
        if not r.ok:
            bad.append(list(col))
    return {"name": "equivariance", "passed": not bad,
            "details": {"triples": G.order ** 3, "checks": checked, "violations": bad[:5]}}


def criterion_4():
    details, ok = {}, True
    for name in ["trivial", "Z2", "S3"]:
        G = make_group(name)
        C, D = loop_groupoid(G)
        V = ConstantModule(C, D, [(0, 3), (1, 1)])
        for g, n in [(0, 4), (0, 5), (1, 1), (1, 2)]:
            classes = 0
            for col in class_tuples(G, n):
                r = check_monad_laws(V, g, col)
                classes += r.details.get("MV", 0)
                if not r.ok:
                    ok = False
                    details[f"{name} ({g},{n}) failure"] = [list(col), r.violation]
            details[f"{name} ({g},{n})"] = classes
    return {"name": "monad laws", "passed": ok, "details": details}


def criterion_5():
    details, ok = {}, True
    for name in ["Z2", "S3"]:
        C = loop_groupoid(make_group(name))[0]
        functors = [("hom", HomBifunctor(C)), ("constant", ConstantBifunctor(C, 2))]
        functors += [(f"random {s}", random_bifunctor(C, s)) for s in range(20)]
        sizes = []
        for label, F in functors:
            r = check_twisted_arrow_coend(F)
            lin = check_twisted_arrow_coend(F, kind="vect")
            if not (r.ok and lin.ok and lin.details == r.details):
                ok = False
            sizes.append([label, r.details.get("coend"), r.details.get("twisted")])
        details[name] = sizes
    return {"name": "twisted arrows and coends", "passed": ok, "details": details}


def plethysm_test_modules():
    """(label, module, largest arity checked)."""
    out = []
    for label, C in [("S3 as one object", group_as_groupoid(make_group("S3"))),
                     ("L(Z2)", loop_groupoid(make_group("Z2"))[0])]:
        out.append((f"{label} representable", RepresentableCS(C, [0, 1, 2]), 3))
        out.append((f"{label} constant", ConstantCS(C, {1: 1, 2: 2}), 3))
    C = loop_groupoid(make_group("S3"))[0]
    out.append(("L(S3) constant", ConstantCS(C, {1: 1, 2: 2}), 3))
    out.append(("L(S3) representable", RepresentableCS(C, [1]), 3))
    return out


def criterion_6():
    details, ok = {}, True
    for label, V, n_max in plethysm_test_modules():
        r = check_plethysm_unit(V, n_max)
        details[label] = {"ok": r.ok, "checked": r.checked}
        ok = ok and r.ok
    units = {}
    for name in ["trivial", "Z2", "Z3", "S3", "Q8"]:
        G = make_group(name)
        units[name] = unit_module(group_as_groupoid(G)).size(1, 0, (0,))
        ok = ok and units[name] == G.order
    details["e(1) dimensions"] = units
    return {"name": "plethysm unit", "passed": ok, "details": details}


def _multigraph_classes(g, n):
    """Stable graphs as vertex multigraphs with genus labels and leg
    positions, up to vertex relabeling; generated without flags."""
    classes = set()
    for E in range(3 * g - 3 + n + 1):
        for V in range(1, E + 2):
            loops = E - V + 1
            if loops > g:
                continue
            pairs = [(a, b) for a in range(V) for b in range(a, V)]
            for edges in itertools.combinations_with_replacement(pairs, E):
                reach, todo = {0}, [0]
                while todo:
                    v = todo.pop()
                    for a, b in edges:
                        for x, y in ((a, b), (b, a)):
                            if x == v and y not in reach:
                                reach.add(y)
                                todo.append(y)
                if len(reach) != V:
                    continue
                for legs in itertools.product(range(V), repeat=n):
                    for gen in itertools.product(range(g - loops + 1), repeat=V):
                        if sum(gen) != g - loops:
                            continue
                        val = [0] * V
                        for a, b in edges:
                            val[a] += 1
                            val[b] += 1
                        for v in legs:
                            val[v] += 1
                        if any(2 * gen[v] - 2 + val[v] <= 0 for v in range(V)):
                            continue
                        forms = []
                        for p in itertools.permutations(range(V)):
                            inv = [0] * V
                            for i, x in enumerate(p):
                                inv[x] = i
                            forms.append((tuple(gen[x] for x in p), tuple(inv[v] for v in legs),
                                          tuple(sorted(tuple(sorted((inv[a], inv[b]))) for a, b in edges))))
                        classes.add(min(forms))
    return classes


def criterion_7():
    C = trivial_groupoid()
    D = inverse_duality(C)
    details, ok = {}, True
    for (g, n), expected in [((1, 1), 2), ((0, 4), 4)]:
        plain = enumerate_stable_graphs(g, n)
        colored = enumerate_stable_graphs(g, n, C, D, (0,) * n)
        oracle = len(_multigraph_classes(g, n))
        graphs_ok = all(is_stable(G) and genus(G) == g and len(G.legs) == n for G in stable_graphs(g, n))
        good = len(plain) == len(colored) == oracle == expected and graphs_ok
        details[f"({g},{n})"] = {"classes": len(colored), "oracle": oracle, "graphs_valid": graphs_ok}
        ok = ok and good
    return {"name": "strata counts", "passed": ok, "details": details}


def _orbit(G, t):
    return {tuple(G.conj(h, x) for h, x in zip(hs, s))
            for s in itertools.permutations(t) for hs in itertools.product(G.elements, repeat=3)}


def frobenius_mutations(name="S3"):
    """Single-constant mutations of the algebra; each must fail some axiom."""
    out = []
    A = dw_frobenius(name)
    G = A.group
    B = dw_frobenius(name)
    B.product[(1, 2)] = {G.mul[1][2]: B.product[(1, 2)][G.mul[1][2]] + 1}
    out.append(("product constant +1", check_gfrobenius(B)))
    B = dw_frobenius(name)
    B.correlators[(0, 3)][(1, 1, 0)] += 1
    out.append(("three-point constant +1", check_gfrobenius(B)))
    B = dw_frobenius(name)
    for t in _orbit(G, (1, 1, 0)):
        B.correlators[(0, 3)][t] += 1
    out.append(("three-point orbit +1", check_gfrobenius(B)))
    B = dw_frobenius(name)
    B.correlators[(1, 1)][(0,)] += 1
    out.append(("one-point constant +1", check_gfrobenius(B)))
    B = dw_frobenius(name)
    B.metric[0][0] += 1
    out.append(("metric constant +1", check_gfrobenius(B)))
    B = dw_frobenius(name)
    g = list(B.grading)
    g[1], g[3] = g[3], g[1]
    B.grading = tuple(g)
    out.append(("scrambled grading", drinfeld_module_check(B)))
    return out


def criterion_8():
    details, ok = {}, True
    for name in MATRIX:
        A = dw_frobenius(name)
        r = check_gfrobenius(A)
        d = drinfeld_module_check(A)
        details[name] = {"axioms": sorted(k for k, v in r.details.items() if v["ok"]),
                         "drinfeld": d.ok}
        ok = ok and r.ok and d.ok
    mutations = {}
    for label, r in frobenius_mutations():
        caught = (not r.ok) and r.witness is not None
        failed = sorted(k for k, v in r.details.items() if not v["ok"]) if "grading" in r.details \
            else [r.violation]
        mutations[label] = {"caught": caught, "failed": failed}
        ok = ok and caught
    details["mutations"] = mutations
    return {"name": "G-Frobenius suite", "passed": ok, "details": details}


def criterion_9():
    details, ok = {}, True
    for name in MATRIX:
        A = dw_frobenius(name)
        G = A.group
        for g, n in [(0, 4), (1, 1)]:
            direct = {t: dw_count(G, g, t) for t in itertools.product(G.elements, repeat=n)}
            direct = {t: v for t, v in direct.items() if v}
            graphs = [H for H in stable_graphs(g, n)
                      if all((H.genus[v], H.valence(v)) == (0, 3) for v in range(H.n_vertices))]
            agree = all(state_sum(A, H) == direct for H in graphs)
            details[f"{name} ({g},{n})"] = {"decompositions": len(graphs), "agree": agree}
            ok = ok and agree and bool(graphs)
    return {"name": "decomposition independence", "passed": ok, "details": details}


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def run_criterion(k):
    out = CRITERIA[k]()
    return {"criterion": k, **out}


def run_acceptance(workers=1, criteria=None):
    ids = sorted(CRITERIA) if criteria is None else sorted(criteria)
    if workers <= 1:
        results = [run_criterion(k) for k in ids]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_criterion, ids))
    return {"criteria": results, "passed": all(r["passed"] for r in results)}


def serialize(result) -> str:
    return json.dumps(result, sort_keys=True, indent=2, default=str) + "\n"
