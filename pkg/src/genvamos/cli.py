"""Command-line entry point: ``genvamos <command> [options]``.

Every run writes one JSON document (schema v1) embedding the resolved
configuration.  Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import jordan, matroid, stability, symfun, vamoslab
from .exactpoly import Poly, PolyError, real_roots_exact
from .rng import DEFAULT_SEED

SCHEMA = "v1"


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def resolve_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    data = resources.files("genvamos") / "data" / p.name
    if data.is_file():
        return Path(str(data))
    raise InputError(f"cannot read {name!r}")


def load_json(name: str):
    path = resolve_path(name)
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {name!r}: {exc}") from exc


def load_hypergraph(name: str) -> matroid.Hypergraph:
    return matroid.Hypergraph.from_json(load_json(name))


def load_poly(spec: str) -> Poly:
    """A polynomial JSON file, or one of: h22, kummer-q, e:K:N, p:K:N."""
    if spec == "h22":
        return vamoslab.reference_h22()
    if spec == "kummer-q":
        return vamoslab.kummer_q()
    if spec[:2] in ("e:", "p:"):
        try:
            _, k, n = spec.split(":")
            k, n = int(k), int(n)
        except ValueError as exc:
            raise InputError(f"bad polynomial spec {spec!r}") from exc
        return symfun.elementary(k, n) if spec[0] == "e" else symfun.power_sum(k, n)
    try:
        return Poly.from_json(load_json(spec))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polynomial JSON: {exc}") from exc


def parse_vector(text: str):
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad vector {text!r}") from exc


def parse_sets(text: str):
    """'1,5;4,8' -> [[1, 5], [4, 8]]."""
    try:
        return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";")]
    except ValueError as exc:
        raise InputError(f"bad set list {text!r}") from exc


def _set_json(family):
    return [list(s) for s in family]


# ---------------------------------------------------------------------------
# commands; each returns (result dict, passed)
# ---------------------------------------------------------------------------


def cmd_build_matroid(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    bases = matroid.enumerate_family(M, "bases")
    ax = matroid.verify_axioms(bases, M.labels, "basis_exchange")
    return {
        "hypergraph": M.hypergraph.to_json(),
        "ground_size": M.size,
        "rank": M.full_rank(),
        "num_bases": len(bases),
        "circuit_hyperplanes": _set_json(sorted(M.subset(c) for c in M.circuit_hyperplanes)),
        "bases": _set_json(bases),
        "basis_exchange": ax.ok,
    }, ax.ok


def cmd_rank(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    sets = parse_sets(a.sets)
    return {"ranks": [{"set": sorted(S), "rank": M.rank(S)} for S in sets]}, True


def cmd_enumerate(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    fam = matroid.enumerate_family(M, a.family)
    return {"family": a.family, "count": len(fam), "members": _set_json(fam)}, True


def cmd_verify_axioms(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    bases = matroid.enumerate_family(M, "bases")
    hyper = matroid.enumerate_family(M, "hyperplanes")
    ex = matroid.verify_axioms(bases, M.labels, "basis_exchange")
    dp = matroid.verify_axioms(hyper, M.labels, "d_partition", d=M.rank_value - 1)
    poly = matroid.verify_polymatroid(M)
    ok = ex.ok and dp.ok and not dp.trivial and poly is None
    return {
        "basis_exchange": ex.to_json(),
        "d_partition": dp.to_json(),
        "polymatroid_witness": list(poly) if poly else None,
    }, ok


def _expectation(found: bool, a) -> bool:
    return found if a.expect_violation else not found


def _inequality(a, which):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    if a.search:
        wits = matroid.violation_search(M, which, full=a.full)
        return {"which": which, "mode": "full" if a.full else "doubletons",
                "witnesses": wits, "count": len(wits)}, _expectation(bool(wits), a)
    if a.sets:
        sets = parse_sets(a.sets)
    else:
        k = matroid.INEQUALITY_ARITY[which]
        if a.vertices:
            verts = [int(v) for v in a.vertices.split(",")]
        else:
            verts = list(range(1, k + 1))
        if len(verts) != k:
            raise InputError(f"{which} needs {k} vertices")
        sets = matroid.doubleton_sets(M, [[v] for v in verts])
    res = matroid.linear_rank_ineq(which, M, sets)
    return {"sets": [sorted(s) for s in sets], **res.to_json()}, _expectation(res.violated, a)


def cmd_ingleton(a):
    return _inequality(a, "ingleton")


def cmd_dfz(a):
    return _inequality(a, "dfz")


def cmd_search_violations(a):
    a.search = True
    return _inequality(a, a.which)


def cmd_minors(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    out = {}
    if a.delete or a.contract:
        N = matroid.minor(M, delete=parse_vector_ints(a.delete), contract=parse_vector_ints(a.contract))
        out["minor"] = {"ground": list(N.labels), "rank": N.full_rank(),
                        "bases": _set_json(matroid.enumerate_family(N, "bases"))}
    T = matroid.build_vh(load_hypergraph(a.target))
    found, wit = matroid.has_minor(M, T, witness=True)
    out.update({"target": T.hypergraph.to_json(), "has_minor": found, "witness": wit})
    ok = True if a.expect is None else found == (a.expect == "present")
    return out, ok


def parse_vector_ints(text):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"bad element list {text!r}") from exc


def cmd_bases_poly(a):
    M = matroid.build_vh(load_hypergraph(a.hypergraph))
    h = vamoslab.bases_gen_poly(M)
    return {"poly": h.to_json(), "terms": len(h), "value_at_ones": str(h.evaluate([1] * M.size)),
            "closed_form_match": True}, True


def cmd_w_poly(a):
    f, W, same = vamoslab.w_poly(load_hypergraph(a.hypergraph))
    return {"f": f.to_json(), "W": W.to_json(), "support_equal": same,
            "W_at_ones": str(W.evaluate([1] * W.arity))}, same


def cmd_whpp_witness(a):
    b = vamoslab.whpp_witness(load_hypergraph(a.hypergraph), trials=a.trials, seed=a.seed, tol=a.tol)
    ok = b.support_match and b.diagonal_match and b.probe.clean
    return b.to_json(), ok


def cmd_hpp_falsify(a):
    f, disc, non_real = vamoslab.hpp_falsify_complete63()
    ctrl = vamoslab.hpp_restriction(matroid.diamond())
    return {"restriction": f.to_json(), "degree": f.degree(), "discriminant": str(disc),
            "non_real": non_real, "diamond_control": ctrl.to_json(),
            "diamond_control_real_rooted": real_roots_exact(ctrl)[1]}, non_real


def cmd_build_hnk(a):
    H, h = vamoslab.build_hnk(a.n, a.k, weighted=a.weighted)
    out = {"hypergraph": H.to_json(), "poly": h.to_json(), "degree": h.degree(),
           "value_at_ones": str(h.evaluate([1] * h.arity))}
    ok = True
    if (a.n, a.k) == (2, 2) and not a.weighted:
        out["matches_reference_h22"] = ok = vamoslab.h22_matches_reference()
        out["relabel"] = "(1 3)(2 4)"
    return out, ok


def cmd_kummer(a):
    r = vamoslab.kummer_check(trials=a.trials, seed=a.seed, samples=a.samples, tol=a.tol)
    return r.to_json(), r.ok


def cmd_counterex_ranks(a):
    Z = parse_vector_ints(a.Z)
    res = vamoslab.counterex_ranks(a.n, a.k, Z, a.x, a.y)
    ok = res["violated"] and [res["lhs"], res["rhs"]] == res["expected"]
    return res, ok


def cmd_check_identities(a):
    which = [a.which] if a.which else list(symfun.IDENTITIES)
    results = []
    for w in which:
        if w in ("tsos_constant", "doubled_elementary") and a.r < 2:
            results.append({"which": w, "skipped": "needs r >= 2"})
            continue
        results.append(symfun.verify_identity(w, a.r, a.n).to_json())
    ok = all(r.get("holds", True) for r in results)
    return {"r": a.r, "n": a.n, "identities": results}, ok


def cmd_inequality_sample(a):
    _, rep = symfun.inequality_gap(a.which, a.r, a.n, samples=a.samples, seed=a.seed, want_poly=False)
    return rep.to_json(), rep.nonnegative_on_samples


def cmd_probe(a):
    P = load_poly(a.poly)
    if a.direction:
        rep = stability.probe_hyperbolicity(P, parse_vector(a.direction), trials=a.trials, seed=a.seed, tol=a.tol)
    else:
        rep = stability.probe_stability(P, trials=a.trials, seed=a.seed, tol=a.tol)
    return rep.to_json(), _expectation(not rep.clean, a)


def cmd_eigenvalues(a):
    P = load_poly(a.poly)
    spec = stability.eigenvalues(P, parse_vector(a.e), parse_vector(a.x))
    return {"eigenvalues": spec.to_json(), "approx": spec.values(),
            "rank": stability.hyp_rank(P, parse_vector(a.e), parse_vector(a.x))}, True


def cmd_cone_member(a):
    P = load_poly(a.poly)
    m = stability.cone_member(P, parse_vector(a.e), parse_vector(a.x), a.tol)
    return {"membership": m.value}, True


def cmd_jordan_verify(a):
    pts = jordan.PointSet.from_json(load_json(a.points))
    target = jordan.target_matroid(load_json(a.matroid))
    if a.truncate is not None:
        pts = pts.truncate(jordan.ALGEBRAS[a.truncate])
    ok, mism = jordan.verify_representation(pts, target)
    out = {"algebra": jordan.ALGEBRA_NAMES[pts.level], "points": len(pts),
           "subsets_checked": 1 << target.size, "represents": ok,
           "mismatch_count": len(mism), "mismatches": mism[:50]}
    if a.ch_samples:
        out["cayley_hamilton_failures"] = {
            name: jordan.cayley_hamilton_suite(lvl, a.ch_samples, a.seed) for name, lvl in jordan.ALGEBRAS.items()}
        if any(out["cayley_hamilton_failures"].values()):
            return out, False
    return out, _expectation(not ok, a)


COMMANDS = {
    "build-matroid": cmd_build_matroid,
    "rank": cmd_rank,
    "enumerate": cmd_enumerate,
    "verify-axioms": cmd_verify_axioms,
    "ingleton": cmd_ingleton,
    "dfz": cmd_dfz,
    "search-violations": cmd_search_violations,
    "minors": cmd_minors,
    "bases-poly": cmd_bases_poly,
    "w-poly": cmd_w_poly,
    "whpp-witness": cmd_whpp_witness,
    "hpp-falsify": cmd_hpp_falsify,
    "build-hnk": cmd_build_hnk,
    "kummer": cmd_kummer,
    "counterex-ranks": cmd_counterex_ranks,
    "check-identities": cmd_check_identities,
    "inequality-sample": cmd_inequality_sample,
    "probe": cmd_probe,
    "eigenvalues": cmd_eigenvalues,
    "cone-member": cmd_cone_member,
    "jordan-verify": cmd_jordan_verify,
}


def _int0(text):
    return int(text, 0)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_int0, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=256)
    common.add_argument("--samples", type=int, default=10000)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--expect-violation", action="store_true")
    common.add_argument("--json-out", metavar="PATH")

    p = argparse.ArgumentParser(prog="genvamos", description="Hyperbolic matroids from hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    def hg(sp, default="diamond.json"):
        sp.add_argument("--hypergraph", default=default)

    hg(add("build-matroid", "build V_H and list its bases"))
    sp = add("rank", "rank of subsets of V_H")
    hg(sp)
    sp.add_argument("--sets", required=True, help="e.g. '1,5;2,6,3'")
    sp = add("enumerate", "bases, circuits or hyperplanes of V_H")
    hg(sp)
    sp.add_argument("--family", choices=["bases", "circuits", "hyperplanes"], default="bases")
    hg(add("verify-axioms", "basis exchange, d-partition and polymatroid checks"))
    for name in ("ingleton", "dfz"):
        sp = add(name, f"evaluate the {name} inequality on V_H")
        hg(sp)
        sp.add_argument("--sets", help="explicit sets, ';'-separated")
        sp.add_argument("--vertices", help="one vertex per set, each taken as {i, i'}")
        sp.add_argument("--search", action="store_true")
        sp.add_argument("--full", action="store_true", help="search unions of doubletons")
    sp = add("search-violations", "search for violated linear rank inequalities")
    hg(sp)
    sp.add_argument("--which", choices=["ingleton", "dfz"], default="ingleton")
    sp.add_argument("--full", action="store_true")
    sp = add("minors", "minor operations and the Vamos-minor search")
    hg(sp, "dfz.json")
    sp.add_argument("--target", default="diamond.json")
    sp.add_argument("--delete")
    sp.add_argument("--contract")
    sp.add_argument("--expect", choices=["present", "absent"])
    hg(add("bases-poly", "bases-generating polynomial of V_H"))
    hg(add("w-poly", "diagonalized bases polynomial and the stable polynomial W"))
    hg(add("whpp-witness", "polarized stable witness with support check and probes"))
    add("hpp-falsify", "restriction of the complete 3-uniform hypergraph on [6]")
    sp = add("build-hnk", "hypergraph H_{n,k} and its diagonalized polynomial")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--weighted", action="store_true")
    add("kummer", "hyperbolicity and cone inclusion checks for q and h_{2,2}")
    sp = add("counterex-ranks", "Ingleton arithmetic on the diagonal polymatroid of H_{n,k}")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--Z", default="")
    sp.add_argument("--x", type=int, default=1)
    sp.add_argument("--y", type=int, default=2)
    sp = add("check-identities", "exact symmetric-function identities")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--which", choices=list(symfun.IDENTITIES))
    sp = add("inequality-sample", "sample a symmetric-polynomial inequality gap")
    sp.add_argument("--which", choices=list(symfun.INEQUALITIES), default="turan_refined")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--n", type=int, default=6)
    sp = add("probe", "random stability or hyperbolicity probes")
    sp.add_argument("--poly", required=True, help="JSON file or h22, kummer-q, e:K:N, p:K:N")
    sp.add_argument("--direction", help="probe hyperbolicity along this vector")
    for name in ("eigenvalues", "cone-member"):
        sp = add(name, f"{name} of x for h at e")
        sp.add_argument("--poly", required=True)
        sp.add_argument("--e", required=True)
        sp.add_argument("--x", required=True)
    sp = add("jordan-verify", "check a rank-one point set against a rank-3 matroid")
    sp.add_argument("--points", default="nonpappus_points.json")
    sp.add_argument("--matroid", default="nonpappus_matroid.json")
    sp.add_argument("--truncate", choices=list(jordan.ALGEBRAS))
    sp.add_argument("--ch-samples", type=int, default=0, help="also run Cayley-Hamilton on random elements")
    return p


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k != "json_out"}
    cfg["output"] = args.json_out or "stdout"
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, passed = COMMANDS[args.command](args)
    except (InputError, matroid.MatroidError, PolyError, jordan.JordanError,
            stability.HyperbolicityError, ValueError, OSError) as exc:
        print(f"genvamos: error: {exc}", file=sys.stderr)
        return 2
    except vamoslab.ConsistencyError as exc:
        result, passed = {"error": str(exc)}, False
    doc = {"schema": SCHEMA, "command": args.command, "config": _config(args),
           "status": "pass" if passed else "fail", "result": result}
    text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if args.json_out:
        try:
            Path(args.json_out).write_text(text)
        except OSError as exc:
            print(f"genvamos: error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
