"""Command line entry point: ``quildeg <subcommand> ...``.

Exit codes: 0 success, 1 parse error, 2 capacity exceeded, 3 verification
failure, 4 missing model.  ``--format machine`` emits one JSON object per
line with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import _accel
from . import grpcat as gc
from .assemble import verify_main
from .cohmodel import Presented, SeriesOnly, invariant_truncation
from .corpus import (hilbert_corpus, load_catalog, series_corpus, tensor_corpus,
                     wmod_corpus)
from .errors import QuildegError, UnknownReference
from .monalg import (GradedModule, additivity_report, degree_of, hilbert_brute, hilbert_series,
                     krull_dim, local_length, min_vertex_cover, minimal_primes, module_length,
                     module_series)
from .qdx import load
from .series import (degree_at_one, expand, format_rational, format_series, normalize,
                     numeric_degree, pole_order)
from .wmod import check_free, invariants_dims, length_identity, tensor_length, tensor_module


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, rec: dict, human: str):
        if self.fmt == "machine":
            print(json.dumps(rec, sort_keys=True, default=str), file=self.stream)
        else:
            print(human, file=self.stream)


def _module_of(kind, value) -> GradedModule:
    if kind == "module":
        return value
    if kind == "ideal":
        return GradedModule.quotient(value.ring, value.ideal)
    if kind == "model" and isinstance(value, Presented):
        return GradedModule.quotient(value.ring, value.ideal)
    raise QuildegError(f"expected an ideal, module or presented model, got a {kind}")


def _modules(env, name):
    if name:
        if name not in env:
            raise QuildegError(f"no binding named {name!r}")
        return [(name, _module_of(*env[name]))]
    out = []
    for n, (k, v) in env.items():
        if k in ("ideal", "module") or (k == "model" and isinstance(v, Presented)):
            out.append((n, _module_of(k, v)))
    return out


def _fixtures(env, names):
    fx = [(n, v) for n, (k, v) in env.items() if k == "fixture"]
    if names:
        missing = [n for n in names if n not in env or env[n][0] != "fixture"]
        if missing:
            raise UnknownReference(f"no fixture named {missing[0]!r}")
        fx = [(n, env[n][1]) for n in names]
    return fx


def cmd_hilbert(args, out):
    env = load(args.file)
    for name, M in _modules(env, args.name):
        s = module_series(M)
        coeffs = expand(s, args.max_degree)
        out.record({"name": name, "series": format_series(s),
                    "normalized": format_series(normalize(s)), "coefficients": coeffs},
                   f"{name}: {format_series(s)}  =  {format_series(normalize(s))}\n"
                   f"  coefficients 0..{args.max_degree}: {coeffs}")
    return 0


def cmd_degree(args, out):
    env = load(args.file)
    mods = _modules(env, args.name)
    for name, M in mods:
        d = degree_of(M.ring, M)
        dim = krull_dim(M.ring, M)
        out.record({"name": name, "degree": format_rational(d), "dim": dim},
                   format_rational(d) if args.name else f"{name}: {format_rational(d)} (dim {dim})")
    return 0


def cmd_minprimes(args, out):
    env = load(args.file)
    for name, M in _modules(env, args.name):
        R = M.ring
        primes = minimal_primes(R, M)
        out.record({"name": name, "minimal_primes": [q.format(R) for q in primes],
                    "dims": [R.n - len(q) for q in primes]},
                   f"{name}: " + ", ".join(f"{q.format(R)} [dim {R.n - len(q)}]" for q in primes))
    return 0


def cmd_length(args, out):
    env = load(args.file)
    for name, M in _modules(env, args.name):
        R = M.ring
        if M.is_zero() or krull_dim(R, M) == 0:
            ln = module_length(R, M, args.bound_monomials)
            out.record({"name": name, "length": ln}, f"{name}: length {ln}")
            continue
        local = {q.format(R): local_length(R, M, q, args.bound_monomials)
                 for q in minimal_primes(R, M)}
        out.record({"name": name, "local_lengths": local},
                   f"{name}: " + ", ".join(f"length at {q} = {v}" for q, v in local.items()))
    return 0


def cmd_additivity(args, out):
    env = load(args.file)
    status = 0
    for name, M in _modules(env, args.name):
        rep = additivity_report(M.ring, M)
        rec = {"name": name, **rep.to_dict(M.ring)}
        terms = " + ".join(f"{ln}*{format_rational(pd)} at {q.format(M.ring)}"
                           for q, ln, pd in rep.terms)
        out.record(rec, f"{name}: deg = {format_rational(rep.lhs)}; sum = {terms} = "
                        f"{format_rational(rep.rhs)}; equal: {str(rep.equal).lower()}")
        if not rep.equal:
            status = 3
    return status


def _group_name(env, name):
    if name is None:
        name = next((n for n, (k, _) in env.items() if k in ("group", "fixture")), None)
        if name is None:
            raise UnknownReference("file declares no group or fixture")
    if name not in env:
        raise UnknownReference(f"no binding named {name!r}")
    return name


def _group(env, name, bound):
    kind, v = env[name]
    if kind == "group":
        return gc.PermGroup(v.degree, v.generators, bound)
    if kind == "fixture":
        return v.group
    raise QuildegError(f"{name!r} is a {kind}, not a group")


def cmd_group_info(args, out):
    env = load(args.file)
    args.name = _group_name(env, args.name)
    G = _group(env, args.name, args.bound)
    rec = {"name": args.name, "order": G.order, "degree": G.degree,
           "generators": [gc.format_cycles(g) for g in G.generators]}
    lines = [f"{args.name}: order {G.order}, degree {G.degree}"]
    if args.p:
        eas = gc.elementary_abelians(G, args.p)
        by_rank: dict[int, int] = {}
        for A in eas:
            r = gc.rank_of(A, args.p)
            by_rank[r] = by_rank.get(r, 0) + 1
        rec["p"] = args.p
        rec["elementary_abelians_by_rank"] = {str(r): c for r, c in sorted(by_rank.items())}
        lines.append(f"  elementary abelian {args.p}-subgroups by rank: "
                     + ", ".join(f"rank {r}: {c}" for r, c in sorted(by_rank.items())))
    out.record(rec, "\n".join(lines))
    return 0


def cmd_quillen(args, out):
    env = load(args.file)
    args.name = _group_name(env, args.name)
    kind, v = env[args.name]
    if kind == "fixture":
        G, p, X = v.group, v.p, v.X
    else:
        G = _group(env, args.name, args.bound)
        if not args.p:
            raise QuildegError("--p is required when NAME is a group")
        p = args.p
        X = env[args.gset][1] if args.gset else gc.point(G)
    classes = gc.pair_classes(G, p, X)
    pairs = gc.quillen_pairs(G, p, X)
    qmax = {cl.rep.key() for cl in gc.q_prime_max(G, p, X)}
    rows = []
    for cl in classes:
        maximal = gc.is_maximal_pair(G, p, X, cl.rep, pairs)
        rows.append({"class": cl.rep.describe(), "rank": cl.rank, "size": len(cl),
                     "maximal": maximal, "top": cl.rep.key() in qmax,
                     "normalizer": len(gc.pair_normalizer(G, X, cl.rep)),
                     "centralizer": len(gc.pair_centralizer(G, X, cl.rep)),
                     "weyl_order": gc.weyl_order(G, X, cl.rep)})
    rec = {"name": args.name, "p": p, "pairs": len(pairs), "classes": rows,
           "max_rank": gc.max_rank(G, p, X)}
    lines = [f"{args.name}: {len(pairs)} pairs in {len(classes)} classes, "
             f"max rank {rec['max_rank']}"]
    for r in rows:
        tag = "Q'max" if r["top"] else "Q'" if r["maximal"] else ""
        lines.append(f"  {r['class']:<32} rank {r['rank']}  size {r['size']}  "
                     f"|N|={r['normalizer']} |C|={r['centralizer']} |W|={r['weyl_order']}  {tag}")
    if args.graph:
        edges = gc.subconjugacy_edges(G, p, X)
        rec["edges"] = edges
        lines.append("  subconjugacy: " + ", ".join(f"{i}->{j}" for i, j in edges))
    out.record(rec, "\n".join(lines))
    return 0


def cmd_invariants(args, out):
    env = load(args.file)
    status = 0
    names = [args.name] if args.name else [n for n, (k, v) in env.items()
                                           if k == "model" and isinstance(v, SeriesOnly)
                                           and v.action is not None]
    for name in names:
        kind, m = env[name]
        if not isinstance(m, SeriesOnly) or m.action is None:
            raise QuildegError(f"{name!r} is not a series model with an action")
        got = invariant_truncation(m.action, args.max_degree)
        want = expand(m.series, args.max_degree)
        ok = got == want
        out.record({"name": name, "invariants": got, "series": want, "agree": ok},
                   f"{name}: invariants {got}\n  series     {want}\n  agree: {str(ok).lower()}")
        status = status or (0 if ok else 3)
    return status


def run_wmod(seed, count, tensor_count, out):
    failures = 0
    for k, (gname, P) in enumerate(wmod_corpus(seed, count)):
        D = len(P.base_dims) - 1
        free = check_free(P, D)
        inv = invariants_dims(P, D)
        inv_ok = inv == [P.t * P.base_dim(d) for d in range(D + 1)]
        li = length_identity(P)
        ok = free and inv_ok and li.ok
        failures += not ok
        out.record({"seed": seed, "instance": k, "W": gname, "t": P.t,
                    "base_dims": list(P.base_dims), "free": free, "invariants_ok": inv_ok,
                    "lP": li.lP, "lPW": li.lPW, "ok": ok},
                   f"[seed {seed}] #{k} W={gname} t={P.t} base={list(P.base_dims)} "
                   f"free={free} invariants={inv_ok} l(P)={li.lP} |W|*l(P^W)="
                   f"{P.W.order * li.lPW} {'ok' if ok else 'FAIL'}")
    for k, (R, M, V) in enumerate(tensor_corpus(seed, tensor_count)):
        lhs = tensor_length(module_length(R, M), V)
        rhs = module_length(R, tensor_module(R, M, V))
        failures += lhs != rhs
        out.record({"seed": seed, "tensor_instance": k, "V": V, "formula": lhs,
                    "composition_series": rhs, "ok": lhs == rhs},
                   f"[seed {seed}] tensor #{k} V={V} l(M)*dim V={lhs} "
                   f"composition={rhs} {'ok' if lhs == rhs else 'FAIL'}")
    return failures


def cmd_wmod_check(args, out):
    return 3 if run_wmod(args.seed, args.count, args.tensor_count, out) else 0


def cmd_verify_main(args, out):
    names = list(args.names)
    # a first argument that is not a file selects fixtures from the bundled catalog
    if args.file and not args.file.endswith(".qdx") and not os.path.exists(args.file):
        names.insert(0, args.file)
        args.file = None
    env = load(args.file) if args.file else load_catalog()
    status = 0
    for name, f in _fixtures(env, names):
        rep = verify_main(f)
        emit_main(rep, out)
        if not (rep.equal and rep.dim_check) or not rep.passed:
            status = 3
    return status


def emit_main(rep, out):
    d = rep.to_dict()
    lines = [f"{rep.fixture}: equal: {str(rep.equal).lower()}, lhs={d['lhs']}, rhs={d['rhs']}, "
             f"dim {rep.lhs_dim} vs max rank {rep.max_rank} "
             f"({'ok' if rep.dim_check else 'MISMATCH'})"]
    for t in d["terms"]:
        lines.append(f"  {t['class']:<32} |W|={t['weyl_order']}  deg={t['model_degree']}  "
                     f"-> {t['contribution']}")
    if rep.tautology_flags:
        lines.append(f"  tautological: {', '.join(rep.tautology_flags)}")
    for role, g in rep.gates.items():
        lines.append(f"  series {role}: {g}")
    if rep.term_matching is not None:
        tm = d["term_matching"]
        lines.append(f"  term matching: |D(M)|={tm['n_dmax']} |Q'max|={tm['n_qmax']} "
                     f"ok={str(tm['ok']).lower()}")
        for t in tm["terms"]:
            lines.append(f"    {t['class']} <-> {t['prime']}: {t['length']}*{t['prime_degree']}"
                         f" = {t['geometric']} ({'ok' if t['equal'] else 'MISMATCH'})")
    if rep.correspondence is not None:
        c = d["correspondence"]
        lines.append(f"  correspondence: {c['n_minimal_primes']} minimal primes, "
                     f"{c['n_qprime']} classes in Q', ok={str(c['ok']).lower()}")
    if rep.expected_ok is not None:
        lines.append(f"  expected values: {'ok' if rep.expected_ok else 'MISMATCH'}")
    out.record(d, "\n".join(lines))


def cmd_oracle(args, out):
    env = load(args.file)
    status = 0
    for name, M in _modules(env, args.name):
        R = M.ring
        s = module_series(M)
        brute = [0] * (args.max_degree + 1)
        for sh, I in M.nonzero_summands():
            h = hilbert_brute(R, I, args.max_degree, args.bound_monomials)
            for d in range(sh, args.max_degree + 1):
                brute[d] += h[d - sh]
        ok = brute == expand(s, args.max_degree)
        dim_ok = True
        if not M.is_zero():
            dim_ok = pole_order(s) == max(R.n - min_vertex_cover(I.supports(), R.n)
                                          for _, I in M.nonzero_summands())
        out.record({"name": name, "brute": brute, "series_ok": ok, "dim_ok": dim_ok,
                    "backend": _accel.BACKEND},
                   f"{name}: brute force {brute}\n  series agrees: {str(ok).lower()}, "
                   f"dimension agrees: {str(dim_ok).lower()}")
        if not (ok and dim_ok):
            status = 3
    return status


def selftest_entries(seed):
    """(name, provenance note) for every selftest corpus entry."""
    entries = []
    for name, (k, v) in load_catalog().items():
        if k == "fixture":
            entries.append((f"catalog:{name}", v.note))
    entries += [
        ("random:hilbert", f"200 seeded weighted monomial quotients (seed {seed}); "
                           "oracle: exhaustive standard-monomial enumeration"),
        ("random:additivity", f"same corpus; degree vs sum over top-dimensional minimal primes"),
        ("random:series", f"500 seeded nonnegative series (seed {seed}); oracle: exact "
                          "evaluation near t=1"),
        ("random:wmod", f"100 seeded free W-modules + 50 tensor instances (seed {seed}); "
                        "oracle: explicit bases and composition series"),
    ]
    return entries


def cmd_selftest(args, out):
    if args.list:
        for name, note in selftest_entries(args.seed):
            out.record({"entry": name, "note": note, "seed": args.seed}, f"{name}: {note}")
        return 0
    status = 0
    t0 = time.perf_counter()
    for name, (k, f) in load_catalog().items():
        if k != "fixture":
            continue
        rep = verify_main(f)
        emit_main(rep, out)
        if not rep.passed:
            status = 3
    bad_h = bad_a = 0
    for R, I in hilbert_corpus(args.seed, args.count):
        M = GradedModule.quotient(R, I)
        if hilbert_brute(R, I, args.max_degree) != expand(hilbert_series(R, I), args.max_degree):
            bad_h += 1
        if not M.is_zero() and not additivity_report(R, M).equal:
            bad_a += 1
    out.record({"entry": "random:hilbert", "seed": args.seed, "count": args.count,
                "failures": bad_h, "additivity_failures": bad_a},
               f"[seed {args.seed}] hilbert oracle: {args.count - bad_h}/{args.count} agree; "
               f"additivity: {bad_a} failures")
    bad_s = 0
    for s in series_corpus(args.seed, 500):
        if abs(numeric_degree(s) - degree_at_one(s)) > Fraction(1, 1000) or degree_at_one(s) <= 0:
            bad_s += 1
    out.record({"entry": "random:series", "seed": args.seed, "failures": bad_s},
               f"[seed {args.seed}] series cross-check: {bad_s} failures")
    quiet = Output(args.format, stream=_Null())
    bad_w = run_wmod(args.seed, 100, 50, quiet)
    out.record({"entry": "random:wmod", "seed": args.seed, "failures": bad_w},
               f"[seed {args.seed}] W-module suite: {bad_w} failures")
    if bad_h or bad_a or bad_s or bad_w:
        status = 3
    out.record({"entry": "summary", "seed": args.seed, "ok": status == 0,
                "backend": _accel.BACKEND},
               f"selftest {'passed' if status == 0 else 'FAILED'} "
               f"({_accel.BACKEND} kernels, {time.perf_counter() - t0:.1f}s)")
    return status


class _Null:
    def write(self, _):
        pass

    def flush(self):
        pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--bound", type=int, default=gc.GROUP_BOUND, help="group size cap")
    common.add_argument("--bound-monomials", type=int, default=10**7)

    ap = argparse.ArgumentParser(prog="quildeg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, file=True, name_arg=True):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if file:
            p.add_argument("file")
        if name_arg:
            p.add_argument("name", nargs="?")
        p.set_defaults(func=func)
        return p

    add("hilbert", cmd_hilbert, "Hilbert series of an ideal quotient or module")
    add("degree", cmd_degree, "degree at t=1")
    add("minprimes", cmd_minprimes, "minimal primes")
    add("length", cmd_length, "graded length (Artinian) or lengths at minimal primes")
    add("additivity", cmd_additivity, "degree versus its sum over minimal primes")
    p = add("group-info", cmd_group_info, "order and elementary abelian subgroups")
    p.add_argument("--p", type=int)
    p = add("quillen", cmd_quillen, "Quillen pair classes, maximality and Weyl groups")
    p.add_argument("--p", type=int)
    p.add_argument("--gset")
    p.add_argument("--graph", action="store_true", help="include subconjugacy edges")
    add("invariants", cmd_invariants, "invariant ring dimensions versus a stored series")
    p = add("wmod-check", cmd_wmod_check, "randomized free W-module suite", file=False,
            name_arg=False)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--tensor-count", type=int, default=50)
    p = sub.add_parser("verify-main", parents=[common], help="verify the degree formula")
    p.add_argument("file", nargs="?", help="fixture file (default: bundled catalog)")
    p.add_argument("names", nargs="*")
    p.set_defaults(func=cmd_verify_main)
    add("oracle", cmd_oracle, "recompute Hilbert functions by brute force")
    p = add("selftest", cmd_selftest, "run the bundled corpus", file=False, name_arg=False)
    p.add_argument("--list", action="store_true")
    p.add_argument("--count", type=int, default=200)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except QuildegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
