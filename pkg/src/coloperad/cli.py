"""Command-line interface.  Every command prints one JSON object; rationals
are written as "p/q" strings and the exit code is 0 exactly when all
requested checks pass."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import acceptance
from .dw import (
    SCALE_BOUND, check_equivariance, check_gluing_suite, check_self_gluing, check_two_vertex_gluing,
    dw_count, enumerate_covers,
)
from .free import ConstantModule, IncompleteColimitError, check_monad_laws, free_modular, module_from_dict
from .frobenius import check_gfrobenius, drinfeld_module_check, dw_frobenius, from_dict
from .graphs import enumerate_stable_graphs
from .groupoids import groupoid_algebra, inverse_duality, loop_groupoid, trivial_groupoid
from .groups import conjugacy_classes, make_group, parse_element


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


@dataclass
class RunConfig:
    command: str
    group: str | None
    genus: int
    legs: int | None
    monodromy: str | None
    input: str | None
    output: str | None
    workers: int
    bound: int
    max_weight: int
    full: bool


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _group(cfg):
    return make_group(cfg.group or "trivial")


def _colors(G, cfg):
    """Leg colors from --monodromy, or identities on --legs legs."""
    if cfg.monodromy is not None:
        toks = [t for t in cfg.monodromy.split(",") if t.strip()]
        cols = tuple(parse_element(G, t) for t in toks)
        if cfg.legs is not None and cfg.legs != len(cols):
            raise CLIError(f"--legs {cfg.legs} but {len(cols)} monodromy entries")
        return cols
    return (0,) * (cfg.legs or 0)


def _read_input(cfg):
    if cfg.input is None:
        return None
    with open(cfg.input) as fh:
        return json.load(fh)


def _report(r):
    return _jsonable(r.to_dict() | ({"details": r.details} if r.details else {}))


def cmd_group_info(cfg):
    G = _group(cfg)
    return {"name": G.name, "order": G.order, "labels": list(G.labels), "abelian": G.is_abelian(),
            "classes": [[G.labels[x] for x in c] for c in conjugacy_classes(G)],
            "mul": [list(r) for r in G.mul]}, True


def cmd_loop_groupoid(cfg):
    G = _group(cfg)
    C, D = loop_groupoid(G)
    out = C.to_dict()
    out["components"] = len(C.components)
    out["duality"] = {"objects": list(D.on_objects), "morphisms": list(D.on_morphisms),
                      "eta": list(D.eta)}
    out["object_labels"] = list(G.labels)
    return out, True


def cmd_groupoid_algebra(cfg):
    G = _group(cfg)
    C, _ = loop_groupoid(G)
    A = groupoid_algebra(C)
    r = A.check()
    return {"dim": A.dim, "commutative": A.is_commutative(), "check": _report(r),
            "product": A.product_table()}, r.ok


def cmd_strata(cfg):
    n = cfg.legs if cfg.legs is not None else 0
    if cfg.group is None and cfg.monodromy is None:
        C = trivial_groupoid()
        strata = enumerate_stable_graphs(cfg.genus, n, C, inverse_duality(C), (0,) * n)
    else:
        G = _group(cfg)
        cols = _colors(G, cfg) if cfg.monodromy is not None else (0,) * n
        C, D = loop_groupoid(G)
        strata = enumerate_stable_graphs(cfg.genus, len(cols), C, D, cols)
    out = {"classes": len(strata)}
    if cfg.full:
        out["strata"] = [s.to_dict() for s in strata]
    return out, True


def _module(cfg):
    G = _group(cfg)
    C, D = loop_groupoid(G)
    data = _read_input(cfg)
    V = module_from_dict(C, D, data) if data is not None else ConstantModule(C, D, [(0, 3), (1, 1)])
    return G, V


def cmd_free_operad(cfg):
    G, V = _module(cfg)
    cols = _colors(G, cfg)
    P = free_modular(V, cfg.genus, cols, bound=cfg.bound)
    out = {"classes": P.size, "objects": len(P.objects), "kind": P.kind}
    if cfg.full:
        out["presentation"] = P.to_dict()
    return out, True


def cmd_check_monad_laws(cfg):
    G, V = _module(cfg)
    r = check_monad_laws(V, cfg.genus, _colors(G, cfg))
    return _report(r), r.ok


def cmd_dw_count(cfg):
    G = _group(cfg)
    return {"count": str(dw_count(G, cfg.genus, _colors(G, cfg)))}, True


def cmd_enumerate_covers(cfg):
    G = _group(cfg)
    covers = enumerate_covers(G, cfg.genus, _colors(G, cfg), bound=cfg.bound)
    return {"count": len(covers), "covers": [c.to_dict(G) for c in covers]}, True


def cmd_check_gluing(cfg):
    G = _group(cfg)
    if cfg.monodromy is None and cfg.legs is None:
        r = check_gluing_suite(G, cfg.max_weight)
        return _report(r), r.ok
    cols = _colors(G, cfg)
    g, n = cfg.genus, len(cols)
    reports = [check_equivariance(G, g, cols)]
    for g1 in range(g + 1):
        for mask in range(1 << n):
            a = tuple(c for i, c in enumerate(cols) if mask >> i & 1)
            b = tuple(c for i, c in enumerate(cols) if not mask >> i & 1)
            if 2 * g1 - 1 + len(a) > 0 and 2 * (g - g1) - 1 + len(b) > 0:
                reports.append(check_two_vertex_gluing(G, g1, a, g - g1, b))
    if g >= 1:
        reports.append(check_self_gluing(G, g - 1, cols))
    ok = all(r.ok for r in reports)
    return {"ok": ok, "checked": sum(r.checked for r in reports),
            "failures": [_report(r) for r in reports if not r.ok]}, ok


def cmd_check_frobenius(cfg):
    data = _read_input(cfg)
    A = from_dict(data) if data is not None else dw_frobenius(_group(cfg))
    r = check_gfrobenius(A)
    d = drinfeld_module_check(A)
    ok = r.ok and d.ok
    return {"ok": ok, "axioms": {k: _jsonable(v) for k, v in r.details.items()} or _report(r),
            "drinfeld": _report(d)}, ok


def cmd_acceptance(cfg):
    result = acceptance.run_acceptance(cfg.workers)
    return result, result["passed"]


COMMANDS = {
    "group-info": cmd_group_info,
    "loop-groupoid": cmd_loop_groupoid,
    "groupoid-algebra": cmd_groupoid_algebra,
    "strata": cmd_strata,
    "free-operad": cmd_free_operad,
    "check-monad-laws": cmd_check_monad_laws,
    "dw-count": cmd_dw_count,
    "enumerate-covers": cmd_enumerate_covers,
    "check-gluing": cmd_check_gluing,
    "check-frobenius": cmd_check_frobenius,
    "acceptance": cmd_acceptance,
}


def build_parser():
    p = _Parser(prog="coloperad", description=__doc__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("-g", "--group")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("-n", "--legs", type=int)
    p.add_argument("--monodromy", help="comma-separated element labels or indices")
    p.add_argument("--bound", type=int, default=SCALE_BOUND)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--max-weight", type=int, default=6, help="largest 2g+n for check-gluing")
    p.add_argument("--full", action="store_true", help="include the enumerated objects")
    return p


def parse_config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    if a.workers < 1:
        raise CLIError("--workers must be positive")
    if a.bound < 1:
        raise CLIError("--bound must be positive")
    return RunConfig(a.command, a.group, a.genus, a.legs, a.monodromy, a.input, a.output,
                     a.workers, a.bound, a.max_weight, a.full)


def dumps(obj) -> str:
    if isinstance(obj, dict) and "criteria" in obj:
        return acceptance.serialize(obj)
    return json.dumps(_jsonable(obj), sort_keys=True) + "\n"


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        out, ok = COMMANDS[cfg.command](cfg)
        code = 0 if ok else 1
    except (CLIError, ValueError, KeyError, TypeError, OSError, IncompleteColimitError) as exc:
        out, code = {"error": type(exc).__name__, "message": str(exc)}, 2
        cfg = None
    text = dumps(out)
    if cfg is not None and cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
