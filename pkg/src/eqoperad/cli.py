"""Command line front end.

Results go to stdout, diagnostics to stderr.  Exit status: 0 when every check
passes, 1 on an axiom or validation failure, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .groups import FIXTURE_NAMES, load_group, lattice
from .gset import GMap, GSet, coproduct, orbit_decomposition, orbit_gset, pullback

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- parsing fixture files ------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc


def _group(name: str | None):
    if name is None:
        raise InputError("--group is required")
    try:
        return load_group(name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc


def _subgroup(G, label):
    L = lattice(G)
    if isinstance(label, list):
        try:
            return L.subgroups[L.find(label)]
        except KeyError:
            raise InputError(f"{label} is not a subgroup of {G.name}") from None
    for H in L.subgroups:
        if L.label(H) == label:
            return H
    for H in L.representatives:
        if L.label(H).split("_")[0] == label:
            return H
    raise InputError(f"unknown subgroup label {label!r} for {G.name}")


def parse_gset(data, G) -> GSet:
    """A G-set given either by an action table or by a list of orbit labels."""
    if not isinstance(data, dict):
        raise InputError("a G-set must be a JSON object")
    if "orbits" in data:
        parts = [orbit_gset(G, _subgroup(G, lab)) for lab in data["orbits"]]
        return coproduct(*parts)[0] if parts else GSet.empty(G)
    if "action" in data:
        X = GSet(G, data["action"]) if data["action"] and data["action"][0] else GSet.empty(G)
        X.validate()
        return X
    raise InputError("a G-set needs an 'orbits' or an 'action' field")


def parse_gmap(data, G) -> GMap:
    f = GMap(parse_gset(data["source"], G), parse_gset(data["target"], G), data["map"])
    f.validate()
    return f


def parse_arrow(data, G):
    from .spans import ArrowObject
    a = ArrowObject(parse_gset(data["u"], G), parse_gset(data["v"], G), data["f"])
    a.validate(small=False)
    return a


def parse_span(data, G):
    """A morphism of pointed finite G-sets.  Either the raw ``zm`` table or a
    ``points`` list of [u, y, x]: the apex point (u, y) goes to x in the
    target, and apex points not listed are dropped."""
    from .spans import DROPPED, NOT_OVER, SpanMorphism
    src, tgt = parse_arrow(data["source"], G), parse_arrow(data["target"], G)
    k = list(data["k"])
    if "zm" in data:
        zm = data["zm"]
    else:
        nY = tgt.v.size
        zm = [NOT_OVER] * (src.u.size * nY)
        for u in range(src.u.size):
            for y in range(nY):
                if src.f[u] == k[y]:
                    zm[u * nY + y] = DROPPED
        for u, y, x in data.get("points", []):
            if zm[u * nY + y] == NOT_OVER:
                raise InputError(f"({u}, {y}) is not a point of the apex")
            zm[u * nY + y] = x
    m = SpanMorphism(src, tgt, k, zm)
    if len(m.k) != tgt.v.size or len(m.zm) != src.u.size * tgt.v.size:
        raise InputError("span data has the wrong shape")
    m.validate()
    return m


def _fixture_path(path: str, kind: str) -> str:
    """A path on disk, or else the name of a shipped fixture."""
    import os
    from importlib import resources
    if os.path.exists(path):
        return path
    shipped = resources.files("eqoperad").joinpath("data", kind, os.path.basename(path))
    if shipped.is_file():
        return str(shipped)
    raise InputError(f"no such file: {path}")


def _file_group(data, args):
    name = data.get("group") if isinstance(data, dict) else None
    return _group(name or args.group)


# -- output -----------------------------------------------------------------------

def emit(args, text: str | None = None, obj=None, dot: str | None = None) -> None:
    if args.format == "json" and obj is not None:
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    elif args.format == "dot" and dot is not None:
        sys.stdout.write(dot)
    else:
        if args.format != "text":
            print(f"note: --format {args.format} not available here, using text", file=sys.stderr)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_text(title: str, report) -> str:
    r = report.sorted() if hasattr(report, "sorted") else report
    lines = [f"{title}: {'PASS' if r.passed else 'FAIL'}"]
    lines += [f"  {a}: {w}" for a, w in r.violations]
    return "\n".join(lines)


def _report_json(report) -> dict:
    return report.to_json() if hasattr(report, "to_json") else {
        "passed": report.passed, "violations": [{"axiom": a, "witness": w} for a, w in report.violations]}


# -- groups / gset ----------------------------------------------------------------

def cmd_groups(args) -> int:
    if args.action == "list":
        groups = [load_group(n) for n in FIXTURE_NAMES]
        emit(args, "\n".join(f"{G.name}\t{G.order}" for G in groups),
             [{"name": G.name, "order": G.order} for G in groups])
        return EXIT_OK
    G = _group(args.name or args.group)
    L = lattice(G)
    classes = [{"label": L.label(H), "order": H.order, "elements": list(H.elements),
                "conjugates": len(L.classes[i])} for i, H in enumerate(L.representatives)]
    lines = [f"{G.name}: order {G.order}, {'abelian' if G.is_abelian() else 'non-abelian'}, "
             f"{len(L)} subgroups in {len(classes)} conjugacy classes"]
    lines += [f"  {c['label']}\torder {c['order']}\t{c['conjugates']} conjugate(s)\t{c['elements']}"
              for c in classes]
    emit(args, "\n".join(lines), {"name": G.name, "order": G.order, "abelian": G.is_abelian(),
                                  "subgroup_classes": classes})
    return EXIT_OK


def _orbit_summary(X: GSet) -> list[dict]:
    L = lattice(X.group)
    return [{"points": list(o.points), "stabilizer": L.label(L.representatives[o.class_id])}
            for o in orbit_decomposition(X)]


def cmd_gset(args) -> int:
    data = _read_json(args.file)
    G = _file_group(data, args)
    if args.action == "orbits":
        X = parse_gset(data, G)
        orbs = _orbit_summary(X)
        text = "\n".join(f"{G.name}/{o['stabilizer']}\t{o['points']}" for o in orbs) or "(empty)"
        emit(args, text, {"size": X.size, "orbits": orbs})
        return EXIT_OK
    f, g = parse_gmap(data["f"], G), parse_gmap(data["g"], G)
    if f.target != g.target:
        raise InputError("pullback needs maps with a common target")
    P, pf, pg = pullback(f, g)
    orbs = _orbit_summary(P)
    text = [f"pullback of size {P.size}"]
    text += [f"  ({a}, {b})" for a, b in zip(pf.map, pg.map)]
    text += [f"  orbit {G.name}/{o['stabilizer']}: {o['points']}" for o in orbs]
    emit(args, "\n".join(text), {"size": P.size, "pairs": [list(t) for t in zip(pf.map, pg.map)],
                                 "orbits": orbs})
    return EXIT_OK


# -- span ------------------------------------------------------------------------

def _span_line(m) -> str:
    return f"{m}  [{m.classify().label}{', fiberwise' if m.is_fiberwise else ''}]"


def cmd_span(args) -> int:
    from . import spans
    if args.action == "hom":
        if args.file:
            data = _read_json(args.file)
            G = _file_group(data, args)
            a, b = parse_arrow(data["source"], G), parse_arrow(data["target"], G)
            homs = sorted(spans.hom_set(a, b))
            emit(args, "\n".join([f"{len(homs)} morphisms {a} -> {b}"] + [_span_line(m) for m in homs]),
                 {"count": len(homs), "morphisms": [m.to_json() for m in homs]})
            return EXIT_OK
        cat = spans.UFin(_group(args.group), args.max_size)
        counts = {"inert": 0, "active": 0, "cocartesian": 0, "mixed": 0}
        for _, _, m in cat.morphisms():
            counts[m.classify().label] += 1
        total = sum(counts.values())
        lines = [f"{cat}: {len(cat)} objects, {total} morphisms"]
        lines += [f"  {k}: {v}" for k, v in counts.items()]
        lines += [f"  {i}: {o}" for i, o in enumerate(cat.objects)]
        emit(args, "\n".join(lines), {"group": cat.group.name, "max_size": cat.max_size,
                                      "objects": len(cat), "morphisms": total, "classes": counts},
             cat.to_dot())
        return EXIT_OK
    if args.action == "compose":
        data = _read_json(args.file)
        G = _file_group(data, args)
        f, g = parse_span(data["f"], G), parse_span(data["g"], G)
        if f.tgt != g.src:
            raise InputError("f's target differs from g's source")
        c = spans.compose(g, f)
        emit(args, _span_line(c), c.to_json())
        return EXIT_OK
    if args.file:
        data = _read_json(args.file)
        G = _file_group(data, args)
        m = parse_span(data, G)
        inert, active = spans.factorize(m, mode=args.mode)
        emit(args, f"inert:  {_span_line(inert)}\nactive: {_span_line(active)}",
             {"inert": inert.to_json(), "active": active.to_json()})
        return EXIT_OK
    return _factorization_system(args, spans)


def _factorization_system(args, spans) -> int:
    G = _group(args.group)
    cat = spans.UFin(G, args.max_size)
    fact = spans.factorization_failures(cat)
    right = spans.right_cancellation_failures(cat)
    left_fw = spans.left_cancellation_failures(cat, fiberwise=True)
    cocart = [str(m) for _, _, m in cat.morphisms()
              if (m.is_inert and m.is_active) != spans.is_cocartesian_shaped(m)][:5]
    f, g = spans.active_left_cancellation_counterexample(G)
    witness_ok = g.is_active and spans.compose(g, f).is_active and not f.is_active
    checks = [("unique inert / fiberwise-active factorization", fact),
              ("inert right cancellation", right),
              ("fiberwise-active left cancellation", [f"{a} then {b}" for a, b in left_fw]),
              ("inert and active iff cocartesian", cocart)]
    lines = [f"{cat}"]
    for name, bad in checks:
        lines.append(f"{'PASS' if not bad else 'FAIL'}  {name}")
        lines += [f"    {w}" for w in bad]
    lines.append(f"{'PASS' if witness_ok else 'FAIL'}  active left cancellation fails: "
                 f"f = {f}, g = {g}")
    emit(args, "\n".join(lines), {
        "group": G.name, "max_size": args.max_size,
        "checks": [{"name": n, "passed": not b, "witnesses": b} for n, b in checks],
        "active_left_cancellation_counterexample": {"f": f.to_json(), "g": g.to_json(),
                                                    "verified": witness_ok}})
    ok = witness_ok and not any(b for _, b in checks)
    return EXIT_OK if ok else EXIT_FAIL


# -- operad ----------------------------------------------------------------------

BUILTIN_OPERADS = ("com", "triv", "e0")


def _builtin_operad(name: str, base):
    from . import operad
    return {"com": operad.com_operad_all, "triv": operad.triv_operad_plain,
            "e0": operad.e0_operad}[name](base)


def cmd_operad(args) -> int:
    from . import operad
    from .spans import UFin
    if args.action == "check":
        if args.file:
            O = operad.load_operad(_fixture_path(args.file, "operads"))
        else:
            O = _builtin_operad(args.builtin, UFin(_group(args.group), args.max_size))
        report = operad.check_operad_axioms(O)
        emit(args, _report_text(f"{O.name} over {O.base}", report), report.to_json())
        return EXIT_OK if report.passed else EXIT_FAIL
    if args.action == "triv":
        return _triv(args, operad, UFin)
    if args.action == "envelope":
        from .equivariant import envelope_triv_correspondence
        G = _group(args.group)
        cells = envelope_triv_correspondence(G, args.max_n, args.max_size)
        lines = [f"Env(Triv) over {G.name}: objects per orbit G/H and arity n"]
        lines += [f"  H={c.H} n={c.n}: envelope={c.envelope} graph-subgroups={c.graph} "
                  f"H-sets={c.hsets} (plain {c.hsets_plain}) homs={c.homs_ok} {c.status}" for c in cells]
        emit(args, "\n".join(lines), {"group": G.name, "cells": [c.to_json() for c in cells]})
        return EXIT_FAIL if any(c.status == "disagree" for c in cells) else EXIT_OK
    # mulset
    base = UFin(_group(args.group), args.max_size)
    O = _builtin_operad(args.builtin, base)
    rows = []
    for j in base.orbit_objects():
        for i in range(len(base)):
            for alpha in base.hom(i, j):
                if not (alpha.is_active and alpha.is_fiberwise):
                    continue
                for x in O.fiber(i):
                    for y in O.fiber(j):
                        rows.append((str(alpha), str(x), str(y), len(operad.mul_set(O, alpha, x, y).elements)))
    text = "\n".join([f"Mul sets of {O.name} over {base}"] + [f"  |Mul({a})| = {n}" for a, _, _, n in rows])
    emit(args, text, {"operad": O.name, "entries": [{"alpha": a, "x": x, "y": y, "size": n}
                                                    for a, x, y, n in rows]})
    return EXIT_OK


def _triv(args, operad, UFin) -> int:
    G = _group(args.group)
    base = UFin(G, min(args.max_size, 3))
    T = operad.triv_operad(base)
    report = operad.check_operad_axioms(T)
    unital = operad.is_unital(T)
    rng = random.Random(args.seed)
    trials = []
    for _ in range(20):
        C = operad.random_poset_category(G, rng)
        TC = operad.triv_operad(base, C)
        bad = [i for i in range(len(base)) if len(TC.fiber(i)) != TC.orbit_fiber_product(i)]
        trials.append(not bad)
    lines = [_report_text(f"{T.name} over {base}", report),
             f"unital: {unital}",
             f"Triv(C) fiber = product over orbits: {sum(trials)}/{len(trials)} random C (seed {args.seed})"]
    emit(args, "\n".join(lines), {"axioms": report.to_json(), "unital": unital,
                                  "fiber_product_trials": trials, "seed": args.seed})
    return EXIT_OK if report.passed and all(trials) and not unital else EXIT_FAIL


# -- colored ---------------------------------------------------------------------

COLORED_INSTANCES = ("com", "com-z2", "triv", "poset", "reroute-comp", "shift-unit", "shift-base-change")


def _colored_instance(name: str, G, seed: int):
    from . import colored
    from .operad import random_poset_category
    if name == "com":
        return colored.commutative_colored(G)
    if name == "com-z2":
        return colored.commutative_colored(G, 2)
    if name == "triv":
        return colored.triv_colored(G)
    if name == "poset":
        return colored.PosetColoredOperad(random_poset_category(G, random.Random(seed)))
    return {"reroute-comp": colored.RerouteComp, "shift-unit": colored.ShiftUnit,
            "shift-base-change": colored.ShiftBaseChange}[name](G)


def cmd_colored(args) -> int:
    from . import colored
    from .operad import check_operad_axioms
    G = _group(args.group)
    O = _colored_instance(args.instance, G, args.seed)
    if args.action == "check":
        report = colored.check_colored_axioms(O, bound=args.max_size)
        emit(args, _report_text(f"{O.name} over {G.name}, |U| <= {args.max_size}", report),
             report.to_json())
        return EXIT_OK if report.passed else EXIT_FAIL
    N = colored.operadic_nerve(O, args.max_size)
    n_obj, n_mor = len(N.objects()), N.count_homs()
    lines = [f"nerve of {O.name} over {N.base}: {n_obj} objects, {n_mor} morphisms"]
    obj = {"instance": O.name, "objects": n_obj, "morphisms": n_mor}
    if len(O.color_maps(GSet.point(G))) == 1:
        same = n_obj == len(N.base) and n_mor == N.base.count_homs()
        lines.append(f"one color: matches the base ({len(N.base)} objects, "
                     f"{N.base.count_homs()} morphisms): {same}")
        obj["matches_base"] = same
    status = EXIT_OK
    if args.check:
        report = check_operad_axioms(N)
        lines.append(_report_text("operad axioms", report))
        obj["axioms"] = report.to_json()
        status = EXIT_OK if report.passed else EXIT_FAIL
    emit(args, "\n".join(lines), obj)
    return status


# -- indexing ------------------------------------------------------------------

def _parse_pairs(data, G):
    """Pairs [K, H] with K <= H, by label or element list; the pairs (H, H)
    are always included."""
    from .indexing import reflexive_pairs
    L = lattice(G)
    pairs = set(reflexive_pairs(G))
    for K, H in data["pairs"]:
        k, h = L.index[_subgroup(G, K).elements], L.index[_subgroup(G, H).elements]
        pairs.add((k, h))
    return pairs


def _system_text(s) -> str:
    L = lattice(s.group)
    return ", ".join(f"{L.label(L.subgroups[k])}->{L.label(L.subgroups[h])}"
                     for k, h in s.proper_pairs()) or "(isomorphisms only)"


def cmd_indexing(args) -> int:
    from . import indexing
    if args.action in ("check", "closure"):
        data = _read_json(args.file)
        G = _file_group(data, args)
        pairs = _parse_pairs(data, G)
        if args.action == "check":
            why = indexing.violation(G, pairs)
            emit(args, "indexing system" if why is None else f"not an indexing system: {why}",
                 {"valid": why is None, "violation": why})
            return EXIT_OK if why is None else EXIT_FAIL
        s = indexing.generate_closure(G, pairs)
        emit(args, _system_text(s), {"group": G.name, **s.to_json()})
        return EXIT_OK
    G = _group(args.group)
    systems = indexing.enumerate_indexing_systems(G)
    if args.action == "enumerate":
        lines = [f"{len(systems)} indexing systems for {G.name}"]
        lines += [f"  {i}: {_system_text(s)}" for i, s in enumerate(systems)]
        lines += [f"  {i} < {j}" for i, j in indexing.hasse(systems)]
        emit(args, "\n".join(lines), indexing.lattice_to_json(G, systems),
             indexing.lattice_to_dot(G, systems))
        if args.plot:
            from .plotting import plot_hasse
            plot_hasse(systems, args.plot)
            print(f"wrote {args.plot}", file=sys.stderr)
        return EXIT_OK
    # dict
    L = lattice(G)
    bound = args.max_size
    rows, ok = [], True
    for s in systems:
        F = indexing.to_blumberg_hill(s)
        rep = indexing.check_bh(F, bound)
        back = indexing.from_blumberg_hill(F, bound) if rep.passed else None
        bar = indexing.to_bar_closure(s).recover()
        good = rep.passed and back == s and bar == s
        ok &= good
        gens = {L.label(L.subgroups[h]): [L.label(L.subgroups[k]) for k in ks]
                for h, ks in sorted(F.orbit_generators().items())}
        rows.append({"system": _system_text(s), "admissible_orbits": gens, "bh_conditions": rep.passed,
                     "bh_roundtrip": back == s, "bar_roundtrip": bar == s})
    lines = [f"{G.name}: indexing system <-> admissible sets <-> subcategory of finite G-sets "
             f"(G-sets up to size {bound})"]
    for r in rows:
        lines.append(f"  {r['system']}: admissible H/K {r['admissible_orbits']} "
                     f"bh={r['bh_conditions']} roundtrip={r['bh_roundtrip'] and r['bar_roundtrip']}")
    emit(args, "\n".join(lines), {"group": G.name, "bound": bound, "systems": rows})
    return EXIT_OK if ok else EXIT_FAIL


# -- burnside / graph subgroups ---------------------------------------------------

def cmd_burnside(args) -> int:
    from .equivariant import burnside_table, check_burnside_laws, compare_burnside
    G = _group(args.group)
    T = burnside_table(G, args.method)
    mismatches = compare_burnside(G)
    laws = check_burnside_laws(T)
    text = T.to_text() + f"methods agree: {not mismatches}\nlaws hold: {not laws}\n"
    obj = {**T.to_json(), "methods_agree": not mismatches, "laws": laws}
    if args.bound_apex is not None:
        from .spans import burnside_hom_set
        L = lattice(G)
        orbs = [(L.label(H), orbit_gset(G, H)) for H in L.representatives]
        counts = [[len(burnside_hom_set(A, B, args.bound_apex)) for _, B in orbs] for _, A in orbs]
        text += f"span hom-set sizes with apex size <= {args.bound_apex}:\n"
        text += "".join(f"  {a} -> {b}: {counts[i][j]}\n"
                        for i, (a, _) in enumerate(orbs) for j, (b, _) in enumerate(orbs))
        obj["span_homs"] = {"bound_apex": args.bound_apex, "labels": [a for a, _ in orbs],
                            "counts": counts}
    emit(args, text, obj)
    if args.plot:
        from .plotting import plot_burnside
        plot_burnside(T, args.plot)
        print(f"wrote {args.plot}", file=sys.stderr)
    return EXIT_OK if not mismatches and not laws else EXIT_FAIL


def cmd_graphsub(args) -> int:
    from .equivariant import graph_subgroups, hset_classes
    G = _group(args.group)
    L = lattice(G)
    rows = []
    for n in range(args.max_n + 1):
        for H in L.representatives:
            cls = graph_subgroups(G, n, H)
            rows.append({"n": n, "H": L.label(H), "classes": [c.to_json() for c in cls],
                         "count": len(cls), "hset_classes": hset_classes(G, H, n, True)})
    lines = [f"graph subgroups of {G.name} x Sigma_n, per H up to conjugacy and Weyl twist"]
    for r in rows:
        phis = "; ".join(str(c["phi"]) for c in r["classes"])
        lines.append(f"  n={r['n']} H={r['H']}: {r['count']}  [{phis}]")
    emit(args, "\n".join(lines), {"group": G.name, "rows": rows})
    return EXIT_OK if all(r["count"] == r["hset_classes"] for r in rows) else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="fixture group name (see `groups list`)")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--max-size", type=int, default=4, help="bound on |U| (default 4)")
    common.add_argument("--max-n", type=int, default=3, help="bound on arity (default 3)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")

    p = argparse.ArgumentParser(prog="eqoperad", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, actions=None, **kw):
        q = sub.add_parser(name, parents=[common], help=help_, **kw)
        if actions:
            q.add_argument("action", choices=actions)
        return q

    q = add("groups", "list fixture groups or show one", ("list", "show"))
    q.add_argument("name", nargs="?")
    q.set_defaults(run=cmd_groups)

    q = add("gset", "orbit decomposition or pullback of G-sets", ("orbits", "pullback"))
    q.add_argument("file")
    q.set_defaults(run=cmd_gset)

    q = add("span", "pointed finite G-sets: hom-sets, composition, factorization",
            ("hom", "compose", "factorize"))
    q.add_argument("file", nargs="?")
    q.add_argument("--mode", choices=("active", "fiberwise"), default="active")
    q.set_defaults(run=cmd_span)

    q = add("operad", "discrete operads: axioms, Triv, envelope, multimorphisms",
            ("check", "triv", "envelope", "mulset"))
    q.add_argument("file", nargs="?")
    q.add_argument("--builtin", choices=BUILTIN_OPERADS, default="com")
    q.set_defaults(run=cmd_operad)

    q = add("colored", "set-colored operads and their operadic nerve", ("check", "nerve"))
    q.add_argument("--instance", choices=COLORED_INSTANCES, default="com")
    q.add_argument("--check", action="store_true", help="also run the operad axioms on the nerve")
    q.set_defaults(run=cmd_colored)

    q = add("indexing", "indexing systems", ("check", "closure", "enumerate", "dict"))
    q.add_argument("file", nargs="?")
    q.add_argument("--plot", metavar="PNG", help="write a Hasse diagram (enumerate only)")
    q.set_defaults(run=cmd_indexing)

    q = add("burnside", "Burnside ring multiplication table")
    q.add_argument("--method", choices=("orbits", "double-cosets", "spans"), default="orbits")
    q.add_argument("--bound-apex", type=int, help="also count spans between orbits with apex up to this size")
    q.add_argument("--plot", metavar="PNG", help="write a heatmap of the table")
    q.set_defaults(run=cmd_burnside)

    q = add("graphsub", "graph subgroups of G x Sigma_n")
    q.set_defaults(run=cmd_graphsub)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_file = {("gset", None), ("span", "compose"), ("indexing", "check"), ("indexing", "closure")}
    if getattr(args, "file", "x") is None and (
            (args.command, getattr(args, "action", None)) in needs_file or args.command == "gset"):
        parser.error(f"{args.command} {args.action} needs an input file")
    try:
        return args.run(args)
    except (InputError, ValueError, KeyError, TypeError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, InputError) and exc.args else f"{type(exc).__name__}: {exc}"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
