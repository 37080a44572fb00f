"""JSON file formats for instances, group maps and results.

Numbers are JSON integers, decimal integer strings or fraction strings
``"p/q"``; binary floats are rejected everywhere.  Every file carries
``format_version``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SchemaError
from .groups import AbelianGroupSpec
from .solver import CanonIlpInstance, GenIlpInstance, SolveResult
from .tropconv import INF

__all__ = [
    "FORMAT_VERSION",
    "load_json",
    "parse_int",
    "parse_rat",
    "parse_instance",
    "instance_to_dict",
    "parse_group_map",
    "group_map_to_dict",
    "result_to_dict",
    "result_from_dict",
    "dump_json",
]

FORMAT_VERSION = 1
FORMS = ("standard", "gen-standard", "canonical")


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_rat(x, field):
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(field, f"expected an integer or 'p/q' string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            num, _, den = x.strip().partition("/")
            return Fraction(int(num), int(den)) if den else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(field, f"expected an integer or 'p/q' string, got {x!r}")


def parse_int(x, field):
    v = parse_rat(x, field)
    if v.denominator != 1:
        raise SchemaError(field, f"expected an integer, got {x!r}")
    return int(v)


def _int_list(x, field):
    if not isinstance(x, list):
        raise SchemaError(field, "expected a list")
    return [parse_int(v, f"{field}[{i}]") for i, v in enumerate(x)]


def _int_matrix(x, field):
    if not isinstance(x, list) or not x:
        raise SchemaError(field, "expected a non-empty list of rows")
    rows = [_int_list(r, f"{field}[{i}]") for i, r in enumerate(x)]
    if not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError(field, "rows must be non-empty and of equal length")
    return rows


def _check_version(d, field="format_version"):
    if not isinstance(d, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if "format_version" not in d:
        raise SchemaError(field, "missing")
    v = parse_int(d["format_version"], field)
    if v != FORMAT_VERSION:
        raise SchemaError(field, f"unsupported version {v}")


def _parse_group(d, n, field="group"):
    if not isinstance(d, dict):
        raise SchemaError(field, "expected an object")
    orders = _int_list(d.get("orders", []), f"{field}.orders")
    if any(m < 1 for m in orders):
        raise SchemaError(f"{field}.orders", "orders must be positive")
    G = AbelianGroupSpec(tuple(orders))
    cols_raw = d.get("g_cols", [[0] * len(orders) for _ in range(n)])
    if not isinstance(cols_raw, list) or len(cols_raw) != n:
        raise SchemaError(f"{field}.g_cols", f"expected {n} group elements")
    cols = []
    for j, g in enumerate(cols_raw):
        g = _int_list(g, f"{field}.g_cols[{j}]")
        if len(g) != len(orders):
            raise SchemaError(f"{field}.g_cols[{j}]", f"expected {len(orders)} coordinates")
        cols.append(tuple(g))
    target = _int_list(d.get("g_target", [0] * len(orders)), f"{field}.g_target")
    if len(target) != len(orders):
        raise SchemaError(f"{field}.g_target", f"expected {len(orders)} coordinates")
    return G, cols, tuple(target)


def parse_instance(d):
    """Build a :class:`GenIlpInstance` or :class:`CanonIlpInstance` from a dict."""
    _check_version(d)
    form = d.get("form", "standard")
    if form not in FORMS:
        raise SchemaError("form", f"must be one of {', '.join(FORMS)}")
    for key in ("A", "b", "c"):
        if key not in d:
            raise SchemaError(key, "missing")
    A = _int_matrix(d["A"], "A")
    b = _int_list(d["b"], "b")
    c = _int_list(d["c"], "c")
    if len(b) != len(A):
        raise SchemaError("b", f"expected {len(A)} entries, got {len(b)}")
    if len(c) != len(A[0]):
        raise SchemaError("c", f"expected {len(A[0])} entries, got {len(c)}")
    sense = d.get("sense", "max" if form == "canonical" else "min")
    if sense not in ("min", "max"):
        raise SchemaError("sense", "must be 'min' or 'max'")
    if form == "canonical":
        if "group" in d:
            raise SchemaError("group", "not allowed for canonical form")
        if len(A) < len(A[0]):
            raise SchemaError("A", "canonical form needs at least as many rows as columns")
        return CanonIlpInstance(A, b, c, sense)
    if "group" in d:
        G, cols, target = _parse_group(d["group"], len(A[0]))
    else:
        G, cols, target = AbelianGroupSpec(()), None, None
    if len(A) > len(A[0]):
        raise SchemaError("A", "standard form needs at most as many rows as columns")
    return GenIlpInstance(A, b, c, G, cols, target, sense)


def instance_to_dict(inst):
    if isinstance(inst, CanonIlpInstance):
        return {"format_version": FORMAT_VERSION, "form": "canonical", "A": [list(r) for r in inst.A],
                "b": list(inst.b), "c": list(inst.c), "sense": inst.sense}
    d = {"format_version": FORMAT_VERSION, "form": "gen-standard" if inst.group.rank else "standard",
         "A": [list(r) for r in inst.A], "b": list(inst.b), "c": list(inst.c), "sense": inst.sense}
    if inst.group.rank:
        d["group"] = {"orders": list(inst.group.orders), "g_cols": [list(g) for g in inst.g_cols],
                      "g_target": list(inst.g_target)}
    return d


def _value_out(v):
    if v is INF:
        return "inf"
    if isinstance(v, bool):
        return v
    v = Fraction(v)
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_group_map(d, semiring="minplus"):
    """``{"orders": [...], "values": [...]}`` with values listed in mixed-radix order.

    For ``minplus`` a value is a number or ``"inf"``; for ``boolean`` a JSON
    boolean or 0/1.
    """
    _check_version(d)
    orders = _int_list(d.get("orders", []), "orders")
    if any(m < 1 for m in orders):
        raise SchemaError("orders", "orders must be positive")
    G = AbelianGroupSpec(tuple(orders))
    vals = d.get("values")
    if not isinstance(vals, list) or len(vals) != G.size:
        raise SchemaError("values", f"expected a list of {G.size} values")
    out = []
    for i, v in enumerate(vals):
        f = f"values[{i}]"
        if semiring == "boolean":
            if isinstance(v, bool):
                out.append(v)
            elif parse_int(v, f) in (0, 1):
                out.append(bool(parse_int(v, f)))
            else:
                raise SchemaError(f, "expected a boolean")
        elif v == "inf":
            out.append(INF)
        else:
            x = parse_rat(v, f)
            out.append(int(x) if x.denominator == 1 else x)
    return G, out


def group_map_to_dict(G, values, **extra):
    d = {"format_version": FORMAT_VERSION, "orders": list(G.orders), "values": [_value_out(v) for v in values]}
    d.update(extra)
    return d


def _clean(obj):
    """Recursively turn fractions into strings and refuse floats."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Fraction):
        return _value_out(obj)
    if isinstance(obj, float):
        raise TypeError("binary floats are not allowed in result files")
    return obj


def result_to_dict(res):
    d = res.to_dict()
    d["format_version"] = FORMAT_VERSION
    return _clean(d)


def result_from_dict(d):
    _check_version(d)
    status = d.get("status")
    if status not in ("optimal", "feasible", "infeasible", "unbounded"):
        raise SchemaError("status", f"unknown status {status!r}")
    value = d.get("value")
    if value is not None:
        value = parse_rat(value, "value")
        value = int(value) if value.denominator == 1 else value
    x = d.get("x")
    if x is not None:
        x = tuple(_int_list(x, "x"))
    return SolveResult(status, value, x, d.get("diagnostics", {}))
