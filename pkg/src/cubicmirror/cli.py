"""Command-line front end: ``cubicmirror <group> <action> [flags]``.

Every command prints one JSON report {"command", "inputs", "results", "status"}
and exits 0 on pass/info, 1 on fail and 2 on usage errors.  Reports carry no
timing so that repeated runs are byte-identical; pass ``--timing`` to get the
elapsed time on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cyclotomic, hodge, lattice, nef, objects, ore, picard_fuchs as pf
from .config import DEFAULT, RunConfig


class UsageError(Exception):
    pass


# -- serialization ------------------------------------------------------------

def _plain(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, cyclotomic.CyclotomicNumber):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return str(x)


def render(report: dict, indent: int | None = 2) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=indent)


def _report(command: str, inputs: dict, results: dict, status: str) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "status": status}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- inputs ---------------------------------------------------------------------

POLYTOPES = {
    "delta": objects.delta, "delta1": objects.delta1, "delta2": objects.delta2,
    "nabla": objects.nabla, "nabla1": objects.nabla1, "nabla2": objects.nabla2,
    "P": objects.P,
}


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not text.strip():
        raise UsageError(f"{path} is empty")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _polytopes(args, need: int | None = None) -> list:
    out = []
    for name in args.builtin or []:
        if name not in POLYTOPES:
            raise UsageError(f"unknown polytope {name!r}; choose from {sorted(POLYTOPES)}")
        out.append(POLYTOPES[name]())
    for path in args.inp or []:
        try:
            obj = lattice.from_json(_load_json(path))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{path}: {exc}") from exc
        if not isinstance(obj, lattice.Polytope):
            raise UsageError(f"{path} does not describe a polytope")
        out.append(obj)
    if not out:
        raise UsageError("give a polytope with --builtin or --in")
    if need is not None and len(out) != need:
        raise UsageError(f"expected {need} polytope(s), got {len(out)}")
    return out


def _psi(text: str):
    try:
        return cyclotomic.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _operator(name: str):
    if name not in ore.BUILTINS:
        raise UsageError(f"unknown operator {name!r}; choose from {sorted(ore.BUILTINS)}")
    return ore.BUILTINS[name]()


def _point(text: str, op) -> str:
    var, _, val = text.partition("=")
    if val.strip() != "0" or var.strip() != op.var:
        raise UsageError(f"only the point {op.var}=0 is supported for this operator")
    return f"{op.var}=0"


# -- command groups ---------------------------------------------------------------

def cmd_polytope(args, cfg: RunConfig) -> dict:
    if args.action == "dual":
        (P,) = _polytopes(args, 1)
        try:
            D = lattice.dual_polytope(P)
        except lattice.OriginNotInterior as exc:
            return _report("polytope dual", {}, {"error": str(exc), "witness": exc.witness}, "fail")
        return _report("polytope dual", {"polytope": lattice.to_json(P)},
                       {"dual": lattice.to_json(D), "vertices": len(D.vertices),
                        "reflexive": lattice.is_reflexive(P)}, "info")
    if args.action == "points":
        (P,) = _polytopes(args, 1)
        pts = sorted(p.coords for p in lattice.lattice_points(P))
        return _report("polytope points", {"polytope": lattice.to_json(P)},
                       {"count": len(pts), "points": [list(p) for p in pts]}, "info")
    if args.action == "sum":
        Ps = _polytopes(args)
        if len(Ps) < 2:
            raise UsageError("sum needs at least two polytopes")
        S = Ps[0]
        for Q in Ps[1:]:
            S = lattice.minkowski_sum(S, Q)
        return _report("polytope sum", {"summands": len(Ps)},
                       {"sum": lattice.to_json(S), "vertices": len(S.vertices)}, "info")
    raise UsageError(f"unknown action {args.action!r}")


def _builtin_partition() -> nef.NefPartition:
    return nef.NefPartition(objects.delta(), (objects.delta1(), objects.delta2()))


def _partition(args) -> nef.NefPartition:
    if args.inp:
        data = _load_json(args.inp[0])
        try:
            total = lattice.from_json(data["total"])
            parts = tuple(lattice.from_json(p) for p in data["parts"])
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"bad nef-partition file: {exc}") from exc
        return nef.NefPartition(total, parts)
    if args.builtin and args.builtin != ["delta"]:
        raise UsageError("the only built-in nef-partition is 'delta'")
    return _builtin_partition()


def cmd_nef(args, cfg: RunConfig) -> dict:
    npart = _partition(args)
    if args.action == "check":
        chk = nef.is_nef_partition(npart)
        return _report("nef check", {"parts": len(npart.parts)},
                       {"ok": chk.ok, "reason": chk.reason, "witness": chk.witness}, _status(chk.ok))
    if args.action == "dual":
        d = nef.dual_nef_partition(npart)
        res = {"total": lattice.to_json(d.total), "vertices": len(d.total.vertices),
               "parts": [lattice.to_json(p) for p in d.parts]}
        ok = None
        if not args.inp:
            ok = (d.parts[0] == objects.nabla1() and d.parts[1] == objects.nabla2()
                  and d.total == objects.nabla())
            res["matches_builtin"] = ok
        return _report("nef dual", {"parts": len(npart.parts)}, res,
                       "info" if ok is None else _status(ok))
    raise UsageError(f"unknown action {args.action!r}")


def cmd_fan(args, cfg: RunConfig) -> dict:
    if args.action in ("normal", "face"):
        (P,) = _polytopes(args, 1)
        try:
            F = lattice.normal_fan(P) if args.action == "normal" else lattice.face_fan(P)
        except lattice.OriginNotInterior as exc:
            return _report(f"fan {args.action}", {}, {"error": str(exc)}, "fail")
        return _report(f"fan {args.action}", {"polytope": lattice.to_json(P)},
                       {"fan": lattice.to_json(F), "rays": len(F.rays),
                        "maximal_cones": len(F.maximal_cones)}, "info")
    if args.action == "compare":
        nf = lattice.normal_fan(objects.nabla())
        ff = lattice.face_fan(objects.P())
        printed = objects.sigma_nabla()
        delta_ok = set(lattice.normal_fan(objects.delta()).cone_set()) == \
            {frozenset(c.rays) for c in objects.sigma_delta_cones()}
        ok = nf == ff == printed and delta_ok
        return _report("fan compare", {"builtin": "nabla, P"},
                       {"normal_nabla_equals_face_P": nf == ff,
                        "matches_printed_cones": nf == printed,
                        "normal_delta_matches_sigma_i": delta_ok,
                        "maximal_cones": len(nf.maximal_cones)}, _status(ok))
    raise UsageError(f"unknown action {args.action!r}")


def _triangulation(args):
    from . import triangulation as tr
    if args.inp:
        try:
            return tr.Triangulation.from_json(_load_json(args.inp[0])), None
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"bad triangulation file: {exc}") from exc
    name = (args.builtin or ["tau_P"])[0]
    if name == "tau_P":
        return tr.build_tau_P(check=False), objects.P()
    if name in ("mother", "mother+", "mother-"):
        from .regularity import mother_triangulation
        return mother_triangulation(-1 if name == "mother-" else 1), None
    raise UsageError(f"unknown triangulation {name!r}; choose tau_P or mother")


def cmd_triangulate(args, cfg: RunConfig) -> dict:
    from . import triangulation as tr
    if args.action == "build":
        T = tr.build_tau_P(check=True)
        res = {"cells": len(T), "points": len(T.point_config)}
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(tr.dumps(T))
            res["written"] = args.out
        else:
            res["triangulation"] = T.to_json()
        return _report("triangulate build", {"builtin": "tau_P"}, res, "pass")
    if args.action == "verify":
        T, P = _triangulation(args)
        rep = tr.verify_triangulation(T, P, exhaustive=args.exhaustive)
        res = rep.to_json()
        res["cells"] = len(T)
        if P is not None:
            res["facet_gluing_errors"] = tr.check_gluing(tr.facet_triangulations())
            ok = rep.ok and not res["facet_gluing_errors"]
        else:
            ok = rep.ok
        return _report("triangulate verify", {"cells": len(T)}, res, _status(ok))
    raise UsageError(f"unknown action {args.action!r}")


def cmd_projectivity(args, cfg: RunConfig) -> dict:
    from . import regularity as rg
    if args.action != "check":
        raise UsageError(f"unknown action {args.action!r}")
    T, _ = _triangulation(args)
    res = rg.check_projective(T, pin=cfg.lp.pin, max_iter=cfg.lp.max_iter)
    if isinstance(res, rg.SecondaryCertificate):
        ok = rg.verify_certificate(T, res)
        out = {"regular": True, "slack": res.slack, "slack_positive": res.slack > 0,
               "reverified": ok}
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(rg.dumps(res))
            out["written"] = args.out
        return _report("projectivity check", {"cells": len(T)}, out, _status(ok))
    ok = rg.verify_witness(res, len(T.point_config))
    return _report("projectivity check", {"cells": len(T)},
                   {"regular": False, "witness": res.to_json(), "witness_verified": ok}, "fail")


def cmd_family(args, cfg: RunConfig) -> dict:
    from . import family as fm
    if args.action == "rays":
        labels = fm.ray_labels()
        return _report("family rays", {}, {"count": len(labels),
                                           "rays": {l.name: list(l.vector) for l in labels}},
                       _status(len(labels) == 110))
    if args.action == "cones":
        from .triangulation import unimodularity_report
        F = fm.pi_fan()
        ok, bad = unimodularity_report(F)
        return _report("family cones", {"builtin": "Pi"},
                       {"maximal_cones": len(F.maximal_cones), "rays": len(F.rays),
                        "unimodular": ok, "bad": bad}, _status(ok))
    if args.action == "pullback":
        F = objects.sigma_nabla()
        Pi = fm.pi_fan()
        D1 = nef.pullback_divisor(nef.divisor_from_polytope(objects.nabla1(), F), Pi)
        D2 = nef.pullback_divisor(nef.divisor_from_polytope(objects.nabla2(), F), Pi)
        s1 = sorted(fm.label_of(r).name for r, c in zip(Pi.rays, D1.coefficients) if c)
        s2 = sorted(fm.label_of(r).name for r, c in zip(Pi.rays, D2.coefficients) if c)
        ok = (set(D1.coefficients) <= {0, 1} and set(D2.coefficients) <= {0, 1}
              and all(n.startswith("u") for n in s1) and len(s1) == 55
              and all(n.startswith("v") for n in s2) and len(s2) == 55
              and (D1 + D2).coefficients == nef.anticanonical(Pi).coefficients)
        return _report("family pullback", {}, {"D1": s1, "D2": s2, "sum_is_anticanonical":
                       (D1 + D2).coefficients == nef.anticanonical(Pi).coefficients},
                       _status(ok))
    if args.action == "singular":
        psi = _psi("1" if args.psi is None else args.psi)
        pt = (psi,) * 6
        res = fm.fiber_residuals(psi, pt)
        out = {"point": "psi,...,psi", "residuals": [str(r) for r in res]}
        on = not any(res)
        if on:
            out["rank"] = fm.torus_jacobian_rank(psi, pt)
        sample = fm.fiber_points(psi, limit=cfg.fiber.limit)
        out["samples"] = [{"t": [str(x) for x in t], "rank": fm.torus_jacobian_rank(psi, t)}
                          for t in sample]
        singular = on and out["rank"] < 3
        out["singular_at_diagonal"] = singular
        if psi ** 6 != 1:
            return _report("family singular", {"psi": str(psi)}, out, "info")
        ok = singular and out["rank"] == 2 and all(x["rank"] == 3 for x in out["samples"])
        return _report("family singular", {"psi": str(psi)}, out, _status(ok))
    if args.action == "odp":
        certs = fm.odp_certificates()
        ok = all(c.is_ordinary_double_point for c in certs)
        printed = all(c.matches_printed for c in certs)
        return _report("family odp", {"psi": "mu6"},
                       {"certificates": [c.to_json() for c in certs], "all_odp": ok,
                        "all_match_printed_form": printed}, _status(ok and printed))
    if args.action == "patch":
        name = (args.cone or "U1").upper()
        cones = objects.sigma_nabla_cones()
        if name not in cones:
            raise UsageError(f"unknown cone {name!r}; choose from {sorted(cones)}")
        patch = fm.affine_patch(cones[name])
        return _report("family patch", {"cone": name},
                       {"patch": patch.to_json(), "relations": patch.relation_strings()}, "info")
    raise UsageError(f"unknown action {args.action!r}")


def cmd_pf(args, cfg: RunConfig) -> dict:
    s = cfg.series
    if args.action == "annihilate":
        N = args.order if args.order is not None else s.annihilation_order
        rep = pf.annihilation_check(ore.L_z(), pf.period_coefficient, N)
        return _report("pf annihilate", {"operator": "L", "order": N},
                       {**rep.to_json(), "first_coefficients":
                        [pf.period_coefficient(n) for n in range(4)]}, _status(rep.ok))
    if args.action == "frobenius":
        name = args.op or "R"
        op = _operator(name)
        N = args.order if args.order is not None else s.order
        sols = pf.frobenius_solutions(op, N)
        residual_ok = all(all(r.is_zero() for r in pf.apply_to_solution(op, x)) for x in sols)
        return _report("pf frobenius", {"operator": name, "order": N},
                       {"indicial": pf.indicial_polynomial(op).to_str("lambda"),
                        "solutions": [x.to_json() for x in sols],
                        "log_solutions": sum(1 for x in sols if x.log_degree > 0),
                        "residuals_vanish": residual_ok}, _status(residual_ok))
    if args.action == "classify":
        name = args.op or "L"
        op = _operator(name)
        point = _point(args.point or f"{op.var}=0", op)
        N = args.order if args.order is not None else s.classify_order
        c = pf.monodromy_classification(op, 0, N)
        out = c.to_json("L" if name in ("L", "L_z") else name, point)
        out["companion"] = c.model.to_json()
        out["log_solutions"] = c.log_solutions
        return _report("pf classify", {"operator": name, "point": point}, out, "info")
    if args.action == "yukawa":
        N = args.order if args.order is not None else s.yukawa_order
        const = Fraction(args.constant) if args.constant else Fraction(729)
        rep = pf.yukawa_check(N, const)
        return _report("pf yukawa", {"order": N, "constant": const}, rep.to_json(),
                       _status(rep.ok))
    if args.action == "diamond":
        cons = list(hodge.DEGENERATION_CONSTRAINTS)
        if args.rank is not None:
            cons.append(hodge.rank_N(args.rank))
        ds = hodge.lmhs_enumeration(4, cons)
        out = {"count": len(ds), "diamonds": [d.to_json() for d in ds]}
        if args.rank is None:
            ok = set(ds) == set(hodge.PRINTED_DIAMONDS)
        else:
            ok = len(ds) >= 1
        return _report("pf diamond", {"rank": args.rank}, out, _status(ok))
    raise UsageError(f"unknown action {args.action!r}")


GROUPS = {
    "polytope": (cmd_polytope, ["dual", "points", "sum"]),
    "nef": (cmd_nef, ["dual", "check"]),
    "fan": (cmd_fan, ["normal", "face", "compare"]),
    "triangulate": (cmd_triangulate, ["build", "verify"]),
    "projectivity": (cmd_projectivity, ["check"]),
    "family": (cmd_family, ["rays", "cones", "pullback", "singular", "odp", "patch"]),
    "pf": (cmd_pf, ["annihilate", "frobenius", "classify", "yukawa", "diamond"]),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicmirror",
                                description="Exact checks for the mirror of the (3,3) complete "
                                            "intersection in P^5.")
    sub = p.add_subparsers(dest="group", required=True)
    for group, (_, actions) in GROUPS.items():
        g = sub.add_parser(group)
        g.add_argument("action", choices=actions)
        g.add_argument("--in", dest="inp", action="append", help="input JSON file")
        g.add_argument("--out", help="write the main artifact here")
        g.add_argument("--json", action="store_true", help="compact JSON")
        g.add_argument("--builtin", action="append", help="built-in object by name")
        g.add_argument("--order", type=int, help="series truncation order")
        g.add_argument("--timing", action="store_true", help="elapsed time on stderr")
        if group == "family":
            g.add_argument("--psi", help="cyclotomic literal a/b+c/d*z6")
            g.add_argument("--cone", help="cone name for 'patch' (U1..U6, V1..V6, C14, ...)")
        if group == "triangulate":
            g.add_argument("--exhaustive", action="store_true")
        if group == "pf":
            g.add_argument("--op", help="operator name: L, L_psi, R, R_monic, R_unnormalized")
            g.add_argument("--point", help="singular point, e.g. z=0 or psi=0")
            g.add_argument("--constant", help="Yukawa pole constant (default 3^6)")
            g.add_argument("--rank", type=int, help="rank of N filter for 'diamond'")
    return p


def run(argv=None, cfg: RunConfig = DEFAULT, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.order is not None and args.order < 0:
        print("error: --order must be nonnegative", file=sys.stderr)
        return 2
    fn, _ = GROUPS[args.group]
    t0 = time.perf_counter()
    try:
        report = fn(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, None if args.json else cfg.indent)
    if args.out and args.group not in ("triangulate", "projectivity"):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text, file=stdout)
    if args.timing:
        print(f"elapsed {1000 * (time.perf_counter() - t0):.0f} ms", file=sys.stderr)
    return 1 if report["status"] == "fail" else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
