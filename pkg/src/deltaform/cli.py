"""Command-line interface: ``deltaform <command> ...``.

Exit codes: 0 success, 1 oracle mismatch, 2 infeasible, 3 unbounded,
64 usage error, 65 malformed data.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import __version__
from .errors import CapExceededError, ConfigError, DeltaformError, SchemaError
from .exactla import snf
from .fourier import abelian_dft, bool_conv, bool_conv_naive
from .groups import invariant_factors
from .io import (
    dump_json,
    group_map_to_dict,
    load_json,
    parse_group_map,
    parse_instance,
    parse_rat,
    result_to_dict,
)
from .solver import (
    CanonIlpInstance,
    DpConfig,
    GenIlpInstance,
    brute_force_ilp,
    solve,
    solve_canonical,
)
from .tiling import tg_basis, tg_enumerate, tg_new
from .tropconv import conv_group, conv_naive

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INFEASIBLE = 2
EXIT_UNBOUNDED = 3
EXIT_USAGE = 64
EXIT_DATA = 65

_STATUS_EXIT = {"optimal": EXIT_OK, "feasible": EXIT_OK, "infeasible": EXIT_INFEASIBLE, "unbounded": EXIT_UNBOUNDED}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _fraction(text):
    try:
        return parse_rat(text, "argument")
    except SchemaError:
        raise argparse.ArgumentTypeError(f"expected an integer or p/q, got {text!r}") from None


def _add_solver_flags(p):
    p.add_argument("--eta", type=_positive_int, help="discrepancy bound (default: exact herdisc of B^-1 A)")
    p.add_argument("--rho", type=_positive_int, help="number of DP levels (default: from the proximity bound)")
    p.add_argument("--prox-const", type=_fraction, default=Fraction(3), help="constant in the proximity radius")
    p.add_argument("--base", choices=("exact", "greedy"), default="exact")
    p.add_argument("--backend", choices=("naive", "blocked"), default="naive", help="(min,+) matrix product")
    p.add_argument("--engine", choices=("sparse", "group"), default="sparse", help="DP level engine")
    p.add_argument("--feasibility", choices=("dft", "naive"), default="dft", help="Boolean engine in feasibility mode")
    p.add_argument("--no-rho-check", action="store_true", help="skip the rho / rho+2 stability rerun")
    p.add_argument("--oracle-check", action="store_true", help="also run brute force and compare")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")


def _config(args):
    return DpConfig(
        eta=args.eta,
        rho=args.rho,
        prox_const=args.prox_const,
        base=args.base,
        backend=args.backend,
        engine=args.engine,
        feas_engine=args.feasibility,
        check_rho=not args.no_rho_check,
    )


def _emit(text, path=None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _instances(doc):
    """An instance file, or a corpus ``{"format_version", "instances": [...]}``."""
    if isinstance(doc, dict) and "instances" in doc:
        items = doc["instances"]
        if not isinstance(items, list):
            raise SchemaError("instances", "expected a list")
        out = []
        for i, d in enumerate(items):
            try:
                out.append(parse_instance(d))
            except SchemaError as exc:
                raise SchemaError(f"instances[{i}].{exc.field}", exc.message) from None
        return out, True
    return [parse_instance(doc)], False


def _oracle_box(inst):
    from .corpus import lp_box

    if isinstance(inst, CanonIlpInstance):
        return None
    box = lp_box(inst.A, inst.b)
    if box is None:
        return None
    return box if box != () else (0,) * inst.n


def _oracle(inst, feasibility):
    box = _oracle_box(inst)
    if box is None:
        return None
    ref = brute_force_ilp(inst, box)
    if feasibility:
        return ("feasible" if ref.status == "optimal" else "infeasible", None)
    return (ref.status, ref.value)


def _run_solve(args, feasibility):
    cfg = _config(args)
    insts, is_corpus = _instances(load_json(args.path))
    results, mismatches = [], 0
    for inst in insts:
        if isinstance(inst, CanonIlpInstance):
            if feasibility:
                raise ConfigError("feasibility mode needs a standard-form instance")
            res = solve_canonical(inst, cfg)
        else:
            res = solve(inst, cfg, feasibility=feasibility)
        d = result_to_dict(res)
        if args.oracle_check:
            ref = _oracle(inst, feasibility)
            if ref is None:
                d["oracle"] = {"checked": False, "reason": "no finite box"}
            else:
                ok = ref == (res.status, None if feasibility else res.value)
                mismatches += not ok
                d["oracle"] = {"checked": True, "match": ok, "status": ref[0], "value": ref[1]}
        results.append((res, d))
    if is_corpus:
        _emit(dump_json({"format_version": 1, "results": [d for _, d in results]}), args.output)
        return EXIT_MISMATCH if mismatches else EXIT_OK
    res, d = results[0]
    _emit(dump_json(d), args.output)
    if mismatches:
        return EXIT_MISMATCH
    return _STATUS_EXIT[res.status]


def cmd_solve(args):
    return _run_solve(args, feasibility=False)


def cmd_feasible(args):
    return _run_solve(args, feasibility=True)


def cmd_convolve(args):
    Ga, a = parse_group_map(load_json(args.a), args.semiring)
    Gb, b = parse_group_map(load_json(args.b), args.semiring)
    if Ga.orders != Gb.orders:
        raise SchemaError("orders", f"groups differ: {list(Ga.orders)} vs {list(Gb.orders)}")
    if args.semiring == "boolean":
        vals = bool_conv_naive(Ga, a, b) if args.naive else bool_conv(Ga, a, b)
    elif args.naive:
        vals = conv_naive(Ga, a, b).values
    else:
        vals = conv_group(Ga, a, b, args.backend).values
    _emit(dump_json(group_map_to_dict(Ga, vals)), args.output)
    return EXIT_OK


def cmd_dft(args):
    G, vals = parse_group_map(load_json(args.path))
    if any(not isinstance(v, (int, Fraction)) for v in vals):
        raise SchemaError("values", "the transform needs finite numbers")
    T = abelian_dft(G, vals, args.eps)
    out = {
        "format_version": 1,
        "orders": list(G.orders),
        "eps": str(args.eps),
        "bound": str(T.bound),
        "values": [[str(z.re), str(z.im)] for z in T.values],
    }
    _emit(dump_json(out), args.output)
    return EXIT_OK


def cmd_group_info(args):
    doc = load_json(args.path)
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if "tiling" in doc:
        t = doc["tiling"]
        if not isinstance(t, dict) or "A" not in t:
            raise SchemaError("tiling.A", "missing")
        from .io import _int_matrix

        A = _int_matrix(t["A"], "tiling.A")
        if len(A) != len(A[0]):
            raise SchemaError("tiling.A", "must be square")
        v = [parse_rat(x, f"tiling.v[{i}]") for i, x in enumerate(t.get("v", [0] * len(A)))]
        try:
            T = tg_new(A, v)
        except DeltaformError as exc:
            raise SchemaError("tiling.A", str(exc)) from None
        elems = tg_enumerate(T)
        out = {
            "format_version": 1,
            "kind": "tiling",
            "dim": T.dim,
            "det": T.delta,
            "size": len(elems),
            "expected_size": 2 ** T.dim * T.delta,
            "snf_diagonal": snf(A).diagonal,
            "basis": [{"element": list(e.z), "order": m} for e, m in tg_basis(T)],
            "zero": list(elems[0].z),
        }
    elif "orders" in doc:
        G, _ = parse_group_map({"format_version": 1, "orders": doc["orders"], "values": [0] * _size(doc["orders"])})
        out = {
            "format_version": 1,
            "kind": "group",
            "orders": list(G.orders),
            "size": G.size,
            "invariant_factors": list(invariant_factors(G)),
        }
    else:
        raise SchemaError("<root>", "expected 'orders' or 'tiling'")
    _emit(dump_json(out), args.output)
    return EXIT_OK


def _size(orders):
    from .io import _int_list

    s = 1
    for m in _int_list(orders, "orders"):
        if m < 1:
            raise SchemaError("orders", "orders must be positive")
        s *= m
    return s


def scaling_family(deltas):
    """``k = 1`` knapsacks ``[D, D-1, 1] x = 3D + 1`` with ``Delta = D``."""
    return [GenIlpInstance([[D, D - 1, 1]], [3 * D + 1], [1, 1, 1], sense="min") for D in deltas]


def fit_exponent(taus, times):
    """Least-squares slope of ``log time`` against ``log tau``."""
    xs = [math.log(t) for t in taus]
    ys = [math.log(max(s, 1e-9)) for s in times]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    den = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / den if den else 0.0


def bench_rows(insts, cfg, repeat=1):
    rows = []
    for i, inst in enumerate(insts):
        best = None
        for _ in range(repeat):
            res = solve(inst, cfg)
            t = res.diagnostics.get("timings_ns", {})
            if best is None or t.get("dp", 0) < best[1].get("dp", 0):
                best = (res, t)
        res, t = best
        dg = res.diagnostics
        rows.append({
            "instance": i,
            "n": inst.n,
            "k": inst.k,
            "Delta": dg.get("Delta"),
            "group": inst.group.size,
            "tau": dg.get("tau"),
            "status": res.status,
            "lp_ms": t.get("lp", 0) // 10**6,
            "base_ms": t.get("base", 0) // 10**6,
            "dp_ns": t.get("dp", 0),
            "total_ns": t.get("total", 0),
        })
    return rows


def cmd_bench(args):
    cfg = DpConfig(engine=args.engine, backend=args.backend, check_rho=False)
    if args.corpus:
        insts, _ = _instances(load_json(args.corpus))
        insts = [x for x in insts if isinstance(x, GenIlpInstance)]
    else:
        deltas = [int(x) for x in args.deltas.split(",")]
        insts = scaling_family(deltas)
    rows = bench_rows(insts, cfg, args.repeat)
    cols = ["instance", "n", "k", "Delta", "group", "tau", "status", "lp_ms", "base_ms", "dp_ns", "total_ns"]
    lines = ["\t".join(cols)] + ["\t".join(str(r[c]) for c in cols) for r in rows]
    good = [r for r in rows if r["tau"] and r["dp_ns"]]
    if len({r["tau"] for r in good}) >= 2:
        exp = fit_exponent([r["tau"] for r in good], [r["dp_ns"] / 1e9 for r in good])
        lines.append(f"# fitted exponent of dp time in tau: {exp:.3f}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args):
    from .corpus import corpus

    cfg = DpConfig(feas_engine=args.feasibility)
    insts = corpus(args.seed, args.count)
    bad = 0
    for i, (inst, box) in enumerate(insts):
        ref = brute_force_ilp(inst, box)
        if args.feasible_mode:
            got = solve(inst, cfg, feasibility=True).status
            want = "feasible" if ref.status == "optimal" else "infeasible"
            ok = got == want
            line = f"{i}\t{want}\t{got}"
        else:
            res = solve(inst, cfg)
            ok = (res.status, res.value) == (ref.status, ref.value)
            line = f"{i}\t{ref.status}:{ref.value}\t{res.status}:{res.value}"
        bad += not ok
        print(f"{line}\t{'ok' if ok else 'MISMATCH'}")
    print(f"# {args.count - bad}/{args.count} agree")
    return EXIT_MISMATCH if bad else EXIT_OK


def build_parser():
    p = _Parser(prog="deltaform", description="Exact ILP solver for bounded subdeterminants.")
    p.add_argument("--version", action="version", version=f"deltaform {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("solve", help="optimize an instance (or a corpus file)")
    s.add_argument("path")
    _add_solver_flags(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("feasible", help="decide feasibility and return a witness")
    s.add_argument("path")
    _add_solver_flags(s)
    s.set_defaults(func=cmd_feasible)

    s = sub.add_parser("convolve", help="convolve two maps on the same group")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--semiring", choices=("minplus", "boolean"), default="minplus")
    s.add_argument("--backend", choices=("naive", "blocked"), default="naive")
    s.add_argument("--naive", action="store_true", help="use the quadratic reference convolution")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_convolve)

    s = sub.add_parser("dft", help="certified Fourier transform of a group map")
    s.add_argument("path")
    s.add_argument("--eps", type=_fraction, default=Fraction(1, 10**6))
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dft)

    s = sub.add_parser("group-info", help="describe a finite group or a tiling group")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_group_info)

    s = sub.add_parser("bench", help="time the DP on a corpus or the k = 1 scaling family")
    s.add_argument("--corpus")
    s.add_argument("--deltas", default="2,4,8,16,32")
    s.add_argument("--repeat", type=_positive_int, default=1)
    s.add_argument("--engine", choices=("sparse", "group"), default="sparse")
    s.add_argument("--backend", choices=("naive", "blocked"), default="naive")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("verify", help="cross-check against brute force on a seeded random corpus")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=_positive_int, default=50)
    s.add_argument("--feasible-mode", action="store_true")
    s.add_argument("--feasibility", choices=("dft", "naive"), default="dft")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise _UsageError("a command is required")
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"deltaform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"deltaform: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"deltaform: invalid data at {exc.field}: {exc.message}", file=sys.stderr)
        return EXIT_DATA
    except CapExceededError as exc:
        print(f"deltaform: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DeltaformError as exc:
        print(f"deltaform: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
