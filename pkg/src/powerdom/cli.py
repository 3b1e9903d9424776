"""``powerdom`` command line.

Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 inconclusive within
budget, 4 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds, families
from .errors import CapExceeded, GraphFormatError, NotATreeError, PartitionError, PowerDomError
from .graph import Graph, cartesian_product, graph_from_json_obj, is_tree, mask_of, parse_edge_list, parse_graph6, write_graph6
from .observe import is_dominating_set, is_power_dominating_set, is_zero_forcing_set
from .partition import PD, ZF, VertexPartition, check_obs5, compute_ell, is_failed_partition
from .solve import (
    SearchBudget,
    domination_number,
    power_domination_number,
    spider_cover_number,
    zero_forcing_number,
)
from .treepart import check_condition1, tree_condition1_partition, verify_condition1_partition
from .trees import MAX_ENUM_ORDER, enumerate_trees

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_CAP = 0, 1, 2, 3, 4

FORMATS = {".el": "el", ".txt": "el", ".edges": "el", ".g6": "g6", ".json": "json"}
PAIR_SWEEP_MAX_N = 9
SINGLE_SWEEP_MAX_N = 10


class InputError(PowerDomError):
    """Bad command-line input (exit 2)."""


class CheckFailed(PowerDomError):
    """A verification came back negative (exit 1)."""


# -- graph files -----------------------------------------------------------------


def infer_format(path: str, override: str | None = None) -> str:
    if override:
        return override
    return FORMATS.get(Path(path).suffix.lower(), "el")


def read_graph(path: str, fmt: str | None = None) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    kind = infer_format(path, fmt)
    try:
        if kind == "g6":
            return parse_graph6(text.strip().splitlines()[0] if text.strip() else "")
        if kind == "json":
            return graph_from_json_obj(json.loads(text))
        return parse_edge_list(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def graph_text(g: Graph, fmt: str) -> str:
    if fmt == "g6":
        return write_graph6(g) + "\n"
    if fmt == "json":
        return dump(g.to_json_obj())
    return g.to_edge_list()


def write_graph(g: Graph, path: str, fmt: str | None = None) -> None:
    Path(path).write_text(graph_text(g, infer_format(path, fmt)))


def dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def vertex_list(g: Graph, text: str) -> list[int]:
    """Comma separated labels or indices; ``-`` or empty means no vertices."""
    text = text.strip()
    if text in ("", "-"):
        return []
    out = []
    for tok in text.split(","):
        try:
            out.append(g.vertex(tok.strip()))
        except (KeyError, ValueError, IndexError) as exc:
            raise InputError(f"unknown vertex {tok.strip()!r}") from exc
    return out


def budget_from(args) -> SearchBudget:
    kw = {"workers": args.workers}
    if args.max_subsets is not None:
        kw["max_subsets"] = args.max_subsets
    if args.time_ms is not None:
        kw["time_ms"] = args.time_ms
    try:
        return SearchBudget(**kw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def emit(args, obj: dict, human: list[str]) -> None:
    out = dump(obj) if args.json else "\n".join(human) + "\n"
    if getattr(args, "output", None) and args.command in ("pd", "zf", "dom", "sp", "ell", "zell", "cutset"):
        Path(args.output).write_text(dump(obj))
    sys.stdout.write(out)


def names(g: Graph, vs) -> str:
    return " ".join(g.name(v) for v in vs)


# -- invariants ---------------------------------------------------------------------

SOLVERS = {
    "pd": lambda g, b, a: power_domination_number(g, b, prune=a.prune),
    "zf": lambda g, b, a: zero_forcing_number(g, b),
    "dom": lambda g, b, a: domination_number(g, b, prune=a.prune),
    "sp": lambda g, b, a: spider_cover_number(g, b),
    "ell": lambda g, b, a: compute_ell(g, PD, budget=b),
    "zell": lambda g, b, a: compute_ell(g, ZF, budget=b),
}


def cmd_invariant(args) -> int:
    g = read_graph(args.graph, args.format)
    if args.command == "sp" and not is_tree(g):
        raise InputError(f"{args.graph}: sp needs a tree")
    w = SOLVERS[args.command](g, budget_from(args), args)
    obj = w.to_json_obj(g, timing=args.timing)
    human = []
    if w.inconclusive:
        human.append(f"{w.invariant}: inconclusive, in [{w.lower}, {w.upper if w.upper is not None else '?'}]")
    else:
        human.append(f"{w.invariant} = {w.value}")
    if args.command in ("ell", "zell"):
        mode = PD if args.command == "ell" else ZF
        parts = [list(p) for p in w.witness]
        if len(parts) >= 2:
            cert = is_failed_partition(g, parts, mode)
            obj["certificate"] = cert.to_json_obj()
        for i, p in enumerate(parts):
            human.append(f"  part {i}: {names(g, p)}")
    elif args.command == "sp":
        for i, p in enumerate(w.witness):
            human.append(f"  spider {i}: {names(g, p)}")
        if args.leaf_paths and g.n >= 2:
            part, reports = tree_condition1_partition(g)
            obj["certificate"] = {
                "parts": [sorted(p) for p in part.parts],
                "reports": [r.to_json_obj() for r in reports],
            }
            human.append("  leaf path partition:")
            for r, p in zip(reports, part.parts):
                human.append(f"    {names(g, sorted(p))}  leaves {names(g, r.leaves)}")
    elif w.value is not None:
        human.append(f"  witness: {names(g, w.witness)}")
    if w.note:
        human.append(f"  ({w.note})")
    if args.timing:
        human.append(f"  {w.elapsed * 1000:.1f} ms")
    emit(args, obj, human)
    return EXIT_INCONCLUSIVE if w.inconclusive else EXIT_OK


# -- product ----------------------------------------------------------------------

PRODUCT_CHECKS = ("vizing", "lemma2", "thm6")


def report_lines(rep: bounds.BoundReport) -> list[str]:
    lines = [rep.title]
    for b in rep.bounds:
        lines.append(f"  {b.name} = {b.value if b.value is not None else '?'}")
    if rep.exact is None:
        lines.append("  exact: unknown")
    for label, ok in rep.holds.items():
        lines.append(f"  [{'holds' if ok else 'FAILS'}] {label}")
    lines += [f"  note: {n}" for n in rep.notes]
    return lines


def cmd_product(args) -> int:
    g = read_graph(args.g, args.format)
    h = read_graph(args.h, args.format)
    cap = args.cap
    prod, _ = cartesian_product(g, h, cap=cap)
    if args.output:
        write_graph(prod, args.output)
    b = budget_from(args)
    obj = {"n": prod.n, "edges": prod.num_edges, "reports": []}
    human = [f"product: {prod.n} vertices, {prod.num_edges} edges"]
    ok = True
    inconclusive = False
    for check in args.check or []:
        if check == "thm6":
            rep = bounds.check_theorem6(g, h, b, cap=cap)
        else:
            rep = bounds.check_product_bounds(g, h, b, cap=cap)
            if check == "vizing" and not (is_tree(g) and is_tree(h)):
                raise InputError("the vizing check needs two trees")
            keep = {
                "vizing": "gamma_P(T1)*gamma_P(T2) <= gamma_P(GxH)",
                "lemma2": "max(gamma_P(G),gamma_P(H)) <= gamma_P(GxH)",
            }[check]
            rep.holds = {k: v for k, v in rep.holds.items() if k == keep or k.startswith("no ")}
            rep.slack = {k: v for k, v in rep.slack.items() if k == keep}
            if check == "lemma2" and not rep.holds:
                raise InputError("the lemma2 check needs connected factors")
        ro = rep.to_json_obj()
        ro["check"] = check
        obj["reports"].append(ro)
        human += report_lines(rep)
        ok &= rep.ok
        inconclusive |= not rep.holds
    emit(args, obj, human)
    if not ok:
        return EXIT_FAILED
    return EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


# -- gen ---------------------------------------------------------------------------


def base_graph(spec: str) -> Graph:
    """``p<n>``, ``c<n>``, ``k<n>``, ``s<n>`` (star with n leaves) or a graph file."""
    s = spec.strip().lower()
    makers = {"p": families.gen_path, "c": families.gen_cycle, "k": families.gen_complete, "s": families.gen_star}
    if len(s) > 1 and s[0] in makers and s[1:].isdigit():
        return makers[s[0]](int(s[1:]))
    if os.path.exists(spec):
        return read_graph(spec)
    raise InputError(f"unknown base graph {spec!r} (use p<n>, c<n>, k<n>, s<n> or a file)")


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma separated integers, got {text!r}") from exc


def need(args, *names_):
    for n in names_:
        if getattr(args, n) is None:
            raise InputError(f"{args.family} needs --{n}")
    return [getattr(args, n) for n in names_]


def build_family(args) -> families.FamilyInstance:
    fam = args.family
    if fam == "figure1":
        return families.gen_figure1()
    if fam == "figure2":
        return families.gen_figure2()
    if fam == "gms":
        return families.gen_gms(*need(args, "m", "s"))
    if fam == "necklace":
        return families.gen_necklace(*need(args, "k"))
    if fam == "familyF":
        (h,) = need(args, "h")
        flags = None
        if args.flags is not None:
            flags = [c == "1" for c in args.flags.replace(",", "")]
        return families.gen_family_F(base_graph(h), flags)
    if fam == "section4":
        return families.gen_section4_example(*need(args, "n"))
    if fam == "spider":
        (legs,) = need(args, "legs")
        return families.FamilyInstance(families.gen_spider(int_list(legs)), None)
    if fam == "path":
        return families.FamilyInstance(families.gen_path(*need(args, "n")), None)
    if fam == "star":
        return families.FamilyInstance(families.gen_star(*need(args, "n")), None)
    if fam == "doublestar":
        return families.FamilyInstance(families.gen_doublestar(*need(args, "p", "q")), None)
    if fam == "complete_bipartite":
        return families.FamilyInstance(families.gen_complete_bipartite(*need(args, "a", "b")), None)
    raise InputError(f"unknown family {fam!r}")


def bundle_obj(inst: families.FamilyInstance) -> dict:
    g = inst.graph
    obj = {"graph": g.to_json_obj()}
    if inst.partition is not None:
        obj["parts"] = [sorted(p) for p in inst.partition.parts]
        cert = is_failed_partition(g, inst.partition, PD)
        if cert.failed:
            obj["witnesses"] = [sorted(w) for w in cert.witnesses]
            obj["mode"] = PD
    if inst.u_sets is not None:
        obj["u_sets"] = [sorted(u) for u in inst.u_sets]
    if inst.cut is not None:
        obj["cut"] = list(inst.cut)
    if inst.cut_parts is not None:
        obj["cut_parts"] = [list(c) for c in inst.cut_parts]
    return obj


def cmd_gen(args) -> int:
    try:
        inst = build_family(args)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    bundle = bundle_obj(inst)
    g = inst.graph
    human = [f"{args.family}: {g.n} vertices, {g.num_edges} edges"]
    if inst.partition is not None:
        human.append(f"  partition into {inst.partition.k} parts")
    if inst.u_sets is not None:
        human.append(f"  U-sets: {len(inst.u_sets)}")
    if args.output:
        write_graph(g, args.output)
        cert_path = str(Path(args.output).with_suffix("")) + ".cert.json"
        if len(bundle) > 1:
            Path(cert_path).write_text(dump(bundle))
            human.append(f"  wrote {args.output} and {cert_path}")
        else:
            human.append(f"  wrote {args.output}")
        sys.stdout.write("\n".join(human) + "\n" if not args.json else dump(bundle))
    else:
        sys.stdout.write(dump(bundle) if args.json or len(bundle) > 1 else g.to_edge_list())
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


class Discrepancy(CheckFailed):
    pass


def _vertices(g: Graph, raw, what: str) -> list[int]:
    if not isinstance(raw, list):
        raise InputError(f"{what}: expected a list of vertices")
    out = []
    for x in raw:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise InputError(f"{what}: bad vertex {x!r}")
        try:
            out.append(g.vertex(x))
        except (KeyError, ValueError, IndexError) as exc:
            raise InputError(f"{what}: unknown vertex {x!r}") from exc
    return out


def _parts(g: Graph, raw, what="parts") -> list[list[int]]:
    if not isinstance(raw, list):
        raise InputError(f"{what}: expected a list of parts")
    return [_vertices(g, p, f"{what}[{i}]") for i, p in enumerate(raw)]


def _partition(g: Graph, parts: list[list[int]]) -> VertexPartition:
    try:
        return VertexPartition.of(g.n, parts)
    except PartitionError as exc:
        raise Discrepancy(f"not a partition: {exc}") from exc


def verify_witness(g: Graph, cert: dict) -> list[str]:
    inv = cert["invariant"]
    value = cert.get("value")
    if value is None:
        raise Discrepancy("certificate carries no value (inconclusive search)")
    if inv in ("gamma_P", "Z", "gamma"):
        s = _vertices(g, cert.get("witness"), "witness")
        check = {"gamma_P": is_power_dominating_set, "Z": is_zero_forcing_set, "gamma": is_dominating_set}[inv]
        if len(set(s)) != value:
            raise Discrepancy(f"witness has {len(set(s))} vertices, value says {value}")
        if not check(g, s):
            raise Discrepancy(f"witness is not a {inv} set")
        return [f"{inv} witness of size {value} revalidated"]
    if inv == "sp":
        parts = _parts(g, cert.get("witness"), "witness")
        part = _partition(g, parts)
        from .graph import component_masks, induced_subgraph, is_spider
        for i, p in enumerate(part.parts):
            sub, _ = induced_subgraph(g, sorted(p))
            if not is_spider(sub):
                raise Discrepancy(f"part {i} does not induce a spider")
        if part.k != value:
            raise Discrepancy(f"{part.k} spiders, value says {value}")
        return [f"spider partition into {value} parts revalidated"]
    if inv in ("ell", "z_ell"):
        parts = _parts(g, cert.get("witness"), "witness")
        part = _partition(g, parts)
        if part.k != value:
            raise Discrepancy(f"{part.k} parts, value says {value}")
        if part.k >= 2:
            res = is_failed_partition(g, part, PD if inv == "ell" else ZF)
            if not res.failed:
                raise Discrepancy(f"part {res.index} is observed from its complement")
        return [f"{inv} partition with {value} parts revalidated"]
    raise InputError(f"unknown invariant {inv!r}")


def verify_partition(g: Graph, cert: dict, mode: str) -> list[str]:
    parts = _parts(g, cert["parts"])
    part = _partition(g, parts)
    lines = []
    if "witnesses" in cert or "u_sets" not in cert:
        if part.k < 2:
            raise Discrepancy("a failed partition needs at least two parts")
        res = is_failed_partition(g, part, mode)
        if not res.failed:
            raise Discrepancy(f"part {res.index} is observed from its complement")
        if "witnesses" in cert:
            claimed = _parts(g, cert["witnesses"], "witnesses")
            if len(claimed) != part.k:
                raise Discrepancy(f"{len(claimed)} witness sets for {part.k} parts")
            for i, (c, w) in enumerate(zip(claimed, res.witnesses)):
                if frozenset(c) != w:
                    raise Discrepancy(f"witness {i} differs from the fresh closure: claimed {sorted(c)}, got {sorted(w)}")
        lines.append(f"failed {mode} partition with {part.k} parts revalidated")
    if "u_sets" in cert:
        u_sets = _parts(g, cert["u_sets"], "u_sets")
        try:
            ok = check_obs5(g, part, u_sets)
        except PartitionError as exc:
            raise Discrepancy(str(exc)) from exc
        if not ok:
            raise Discrepancy("U-sets do not satisfy the neighbourhood condition")
        lines.append("U-set conditions revalidated")
    if "cut" in cert:
        cut = _vertices(g, cert["cut"], "cut")
        try:
            bounds.cut_components(g, cut)
        except bounds.CutSetError as exc:
            raise Discrepancy(str(exc)) from exc
        lines.append(f"cut-set of size {len(cut)} revalidated")
    return lines


def _report_matches(g: Graph, part, rep: dict, idx: int) -> None:
    try:
        w, x = _vertices(g, rep["leaves"], "leaves")
    except (KeyError, ValueError) as exc:
        raise InputError("report needs two leaves") from exc
    try:
        fresh = check_condition1(g, part, w, x, idx)
    except (ValueError, NotATreeError) as exc:
        raise Discrepancy(str(exc)) from exc
    if "path" in rep and _vertices(g, rep["path"], "path") != list(fresh.path):
        raise Discrepancy(f"report {idx}: path differs from the tree path")
    if "pd_status" in rep and list(rep["pd_status"]) != list(fresh.pd_status):
        raise Discrepancy(f"report {idx}: pd_status differs from the fresh closure")
    if "verdict" in rep and rep["verdict"] != fresh.verdict:
        raise Discrepancy(f"report {idx}: verdict differs")
    if not fresh.verdict:
        raise Discrepancy(f"report {idx}: the leaf path condition fails")


def verify_condition1(g: Graph, cert: dict) -> list[str]:
    if not is_tree(g):
        raise Discrepancy("graph is not a tree")
    if "reports" in cert:
        parts = _parts(g, cert["parts"])
        part = _partition(g, parts)
        reports = cert["reports"]
        if len(reports) != part.k:
            raise Discrepancy(f"{len(reports)} reports for {part.k} parts")
        for idx, (p, rep) in enumerate(zip(part.parts, reports)):
            _report_matches(g, p, rep, idx)
        if not verify_condition1_partition(g, part, [dict(leaves=r["leaves"]) for r in reports]):
            raise Discrepancy("a part is not connected")
        sp = spider_cover_number(g).value
        if part.k != sp:
            raise Discrepancy(f"{part.k} parts but sp(T) = {sp}")
        return [f"leaf path partition with {part.k} parts revalidated"]
    part = _vertices(g, cert.get("part_vertices", []), "part_vertices")
    if not part:
        raise InputError("a single report needs part_vertices")
    _report_matches(g, part, cert, cert.get("part", 0))
    return ["leaf path report revalidated"]


def verify_certificate(g: Graph, cert, mode: str | None = None) -> list[str]:
    """Recheck any certificate the CLI emits; raises Discrepancy or InputError."""
    if not isinstance(cert, dict):
        raise InputError("certificate must be a JSON object")
    if "certificate" in cert and isinstance(cert["certificate"], dict):
        lines = verify_witness(g, cert) if "invariant" in cert else []
        return lines + verify_certificate(g, cert["certificate"], mode)
    if "graph" in cert and isinstance(cert["graph"], dict):
        bundled = graph_from_json_obj(cert["graph"])
        if bundled.adj != g.adj:
            raise Discrepancy("certificate was issued for a different graph")
    mode = mode or cert.get("mode", PD)
    if mode not in (PD, ZF):
        raise InputError(f"unknown mode {mode!r}")
    if "invariant" in cert:
        return verify_witness(g, cert)
    if "leaves" in cert or "reports" in cert:
        return verify_condition1(g, cert)
    if "parts" in cert:
        return verify_partition(g, cert, mode)
    if "cut" in cert:
        return _verify_cut_only(g, cert)
    raise InputError("unrecognised certificate schema")


def _verify_cut_only(g: Graph, cert: dict) -> list[str]:
    cut = _vertices(g, cert["cut"], "cut")
    try:
        bounds.cut_components(g, cut)
    except bounds.CutSetError as exc:
        raise Discrepancy(str(exc)) from exc
    return [f"cut-set of size {len(cut)} revalidated"]


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.format)
    try:
        cert = json.loads(Path(args.certificate).read_text())
    except OSError as exc:
        raise InputError(f"{args.certificate}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.certificate}: invalid JSON at line {exc.lineno}") from exc
    try:
        lines = verify_certificate(g, cert, args.mode)
    except Discrepancy as exc:
        emit(args, {"valid": False, "discrepancy": str(exc)}, [f"INVALID: {exc}"])
        return EXIT_FAILED
    except (KeyError, TypeError) as exc:
        raise InputError(f"certificate schema mismatch: {exc}") from exc
    emit(args, {"valid": True, "checks": lines}, ["valid"] + [f"  {x}" for x in lines])
    return EXIT_OK


# -- sweep-trees --------------------------------------------------------------------

SWEEP_CHECKS = ("ellT_eq_sp", "vizing", "condition1_exists", "thm1")


def sweep_one(check: str, trees: tuple[Graph, ...], budget: SearchBudget) -> dict:
    rec = {"check": check, "trees": [write_graph6(t) for t in trees]}
    if check == "ellT_eq_sp":
        (t,) = trees
        ell = compute_ell(t, PD, budget=budget)
        sp = spider_cover_number(t, budget)
        gp = power_domination_number(t, budget)
        rec.update(ell=ell.value, sp=sp.value, gamma_P=gp.value)
        if None in (ell.value, sp.value, gp.value):
            rec["ok"] = None
        else:
            rec["ok"] = ell.value == sp.value == gp.value
    elif check == "condition1_exists":
        (t,) = trees
        try:
            part, reps = tree_condition1_partition(t)
            rec["parts"] = [sorted(p) for p in part.parts]
            rec["ok"] = verify_condition1_partition(t, part, reps)
        except PowerDomError as exc:
            rec.update(ok=False, error=str(exc))
    elif check == "thm1":
        (t,) = trees
        rep = bounds.check_theorem1(t, budget)
        rec.update(bound=rep.value("ceil(Z/Delta)"), gamma_P=(rep.exact or {}).get("gamma_P"))
        rec["ok"] = rep.ok if rep.holds else None
    elif check == "vizing":
        t1, t2 = trees
        bound, refuted = bounds.vizing_tree_check(t1, t2, budget)
        rec.update(bound=bound, ok=refuted)
    return rec


def cmd_sweep_trees(args) -> int:
    checks = args.check or ["ellT_eq_sp"]
    if args.max_n > MAX_ENUM_ORDER:
        raise CapExceeded(f"tree enumeration is capped at n={MAX_ENUM_ORDER}", required=args.max_n)
    if "vizing" in checks and args.max_n > PAIR_SWEEP_MAX_N:
        raise CapExceeded(f"pair sweeps are capped at n={PAIR_SWEEP_MAX_N}", required=args.max_n)
    if args.max_n > SINGLE_SWEEP_MAX_N:
        raise CapExceeded(f"single-tree sweeps are capped at n={SINGLE_SWEEP_MAX_N}", required=args.max_n)
    budget = budget_from(args)
    trees = [t for n in range(max(args.min_n, 2), args.max_n + 1) for t in enumerate_trees(n)]

    done: dict[tuple, dict] = {}
    if args.results and os.path.exists(args.results):
        with open(args.results) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = json.loads(line)
                    done[(rec["check"], tuple(rec["trees"]))] = rec
    sink = open(args.results, "a") if args.results else None
    summary, failures, unknown = {}, [], []
    try:
        for check in checks:
            items = [(a, b) for a in trees for b in trees] if check == "vizing" else [(t,) for t in trees]
            count = 0
            for item in items:
                key = (check, tuple(write_graph6(t) for t in item))
                rec = done.get(key)
                if rec is None:
                    rec = sweep_one(check, item, budget)
                    if sink:
                        sink.write(json.dumps(rec) + "\n")
                        sink.flush()
                count += 1
                if rec["ok"] is False:
                    failures.append(rec)
                elif rec["ok"] is None:
                    unknown.append(rec)
            summary[check] = {
                "instances": count,
                "counterexamples": sum(1 for r in failures if r["check"] == check),
                "inconclusive": sum(1 for r in unknown if r["check"] == check),
            }
    finally:
        if sink:
            sink.close()
    if failures:
        Path(args.counterexamples).write_text("".join(json.dumps(r) + "\n" for r in failures))
    obj = {"max_n": args.max_n, "trees": len(trees), "summary": summary}
    human = [f"{len(trees)} trees with {max(args.min_n, 2)} <= n <= {args.max_n}"]
    for check, s in summary.items():
        human.append(f"  {check}: {s['instances']} instances, {s['counterexamples']} counterexamples, "
                     f"{s['inconclusive']} inconclusive")
    if failures:
        human.append(f"  counterexamples written to {args.counterexamples}")
    emit(args, obj, human)
    if failures:
        return EXIT_FAILED
    return EXIT_INCONCLUSIVE if unknown else EXIT_OK


# -- cutset --------------------------------------------------------------------------


def cmd_cutset(args) -> int:
    g = read_graph(args.graph, args.format)
    cut = vertex_list(g, args.cut)
    budget = budget_from(args)
    groups = None
    if args.group:
        groups = [int_list(x) for x in args.group]
    try:
        rep = bounds.cutset_bounds(g, cut, groups, budget)
        reports = [rep]
        if args.ci:
            reports.append(bounds.generalized_upper(g, cut, [vertex_list(g, c) for c in args.ci], budget))
    except bounds.CutSetError as exc:
        raise InputError(str(exc)) from exc
    human = []
    for r in reports:
        human += report_lines(r)
    lower, upper = rep.value("lower"), rep.value("upper")
    exact = (rep.exact or {}).get("gamma_P", "?")
    human.append(f"sandwich: {lower} <= gamma_P = {exact} <= {upper}")
    if len(reports) > 1:
        human.append(f"generalized upper: {reports[1].value('generalized_upper')}")
    emit(args, {"reports": [r.to_json_obj() for r in reports]}, human)
    if not all(r.ok for r in reports):
        return EXIT_FAILED
    return EXIT_OK if rep.exact is not None else EXIT_INCONCLUSIVE


# -- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("el", "g6", "json"), help="input format (default: from extension)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--timing", action="store_true", help="include elapsed times")
    common.add_argument("--max-subsets", type=int, help="subset budget for exhaustive searches")
    common.add_argument("--time-ms", type=float, help="wall clock budget (default: $POWERDOM_BUDGET_MS)")
    common.add_argument("--workers", type=int, default=1, help="worker processes for subset scans")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised corpora")

    p = argparse.ArgumentParser(prog="powerdom", description="Exact power domination toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("pd", "power domination number"), ("zf", "zero forcing number"),
                           ("dom", "domination number"), ("sp", "spider cover number of a tree"),
                           ("ell", "failed power dominating partition number"),
                           ("zell", "failed zero forcing partition number")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("graph")
        s.add_argument("-o", "--output", help="also write the JSON result here")
        if name == "sp":
            s.add_argument("--leaf-paths", action="store_true",
                           help="also build a connected sp(T)-part partition with leaf path reports")
        if name in ("pd", "dom"):
            s.add_argument("--prune", action="store_true", help="restrict to non-dominated vertices")
        s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("product", parents=[common], help="Cartesian product and its bounds")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("-o", "--output", help="write the product graph here")
    s.add_argument("--check", action="append", choices=PRODUCT_CHECKS)
    s.add_argument("--cap", type=int, default=4096, help="maximum product order")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("gen", parents=[common], help="generate a named graph or family member")
    s.add_argument("family", choices=families.FAMILY_TAGS)
    for flag in ("m", "s", "k", "n", "p", "q", "a", "b"):
        s.add_argument(f"--{flag}", type=int)
    s.add_argument("--h", help="base graph for familyF: p<n>, c<n>, k<n>, s<n> or a file")
    s.add_argument("--legs", help="comma separated leg lengths for spider")
    s.add_argument("--flags", help="per-vertex pendant-edge flags for familyF, e.g. 010")
    s.add_argument("-o", "--output", help="graph file; the bundle goes to <stem>.cert.json")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", parents=[common], help="revalidate a certificate")
    s.add_argument("graph")
    s.add_argument("certificate")
    s.add_argument("--mode", choices=(PD, ZF))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep-trees", parents=[common], help="check statements over all small trees")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-n", type=int, default=2)
    s.add_argument("--check", action="append", choices=SWEEP_CHECKS)
    s.add_argument("--results", help="JSON-lines file; existing records are reused")
    s.add_argument("--counterexamples", default="counterexamples.jsonl")
    s.set_defaults(func=cmd_sweep_trees)

    s = sub.add_parser("cutset", parents=[common], help="cut-set bounds")
    s.add_argument("graph")
    s.add_argument("--cut", required=True, help="comma separated vertices")
    s.add_argument("--ci", action="append", help="one C_i per component, comma separated ('-' for empty)")
    s.add_argument("--group", action="append", help="component indices merged into one block")
    s.set_defaults(func=cmd_cutset)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"powerdom: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, GraphFormatError, NotATreeError, PartitionError) as exc:
        print(f"powerdom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"powerdom: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
