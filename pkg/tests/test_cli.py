import json
from pathlib import Path

import pytest

from deltaform.cli import fit_exponent, main, scaling_family
from deltaform.errors import SchemaError
from deltaform.fourier import RatComplex
from deltaform.io import (
    load_json,
    parse_group_map,
    parse_instance,
    parse_rat,
    instance_to_dict,
    result_from_dict,
    result_to_dict,
)
from deltaform.solver import solve

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_solve_knapsack(capsys):
    code, out = run(capsys, "solve", FIX / "knapsack.json")
    d = json.loads(out)
    assert code == 0 and d["status"] == "optimal" and d["value"] == 3 and d["x"] == [1, 2]
    assert d["diagnostics"]["config"]["base"] == "exact"


def test_solve_exit_codes(capsys):
    assert run(capsys, "solve", FIX / "parity.json")[0] == 2
    assert run(capsys, "solve", FIX / "unbounded.json")[0] == 3
    assert run(capsys, "solve", FIX / "missing.json")[0] == 65
    assert run(capsys, "solve")[0] == 64
    assert run(capsys, "solve", FIX / "knapsack.json", "--eta", "0")[0] == 64
    assert run(capsys, "solve", FIX / "knapsack.json", "--base", "nope")[0] == 64


def test_feasible(capsys):
    code, out = run(capsys, "feasible", FIX / "knapsack.json", "--feasibility", "naive")
    assert code == 0 and json.loads(out)["status"] == "feasible"


def test_oracle_check(capsys):
    assert run(capsys, "solve", FIX / "knapsack.json", "--oracle-check")[0] == 0


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(capsys, "solve", FIX / "knapsack.json", "-o", out)[0] == 0
    d = json.loads(out.read_text())
    assert d["value"] == 3


def test_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"format_version": 1,\n "A": [[1, 2]')
    assert run(capsys, "solve", p)[0] == 65
    with pytest.raises(SchemaError) as err:
        load_json(p)
    assert "line" in str(err.value)


def test_schema_errors_name_fields():
    base = {"format_version": 1, "form": "standard", "A": [[1, 2]], "b": [3], "c": [1, 1]}
    for key, val, field in [("b", [1, 2], "b"), ("c", [1.5, 1], "c"), ("form", "weird", "form"), ("sense", "up", "sense")]:
        d = dict(base, **{key: val})
        with pytest.raises(SchemaError) as err:
            parse_instance(d)
        assert field in str(err.value)
    with pytest.raises(SchemaError):
        parse_instance({k: v for k, v in base.items() if k != "format_version"})


def test_parse_rat():
    assert parse_rat("3/4", "x") == pytest.approx(0.75)
    assert parse_rat(5, "x") == 5
    for bad in (1.5, True, "abc"):
        with pytest.raises(SchemaError):
            parse_rat(bad, "x")


def test_instance_roundtrip():
    d = {
        "format_version": 1,
        "form": "gen-standard",
        "A": [[1, 2, 3]],
        "b": [4],
        "c": [1, 0, 1],
        "sense": "max",
        "group": {"orders": [2, 3], "g_cols": [[1, 0], [0, 1], [1, 2]], "g_target": [0, 2]},
    }
    inst = parse_instance(d)
    again = parse_instance(instance_to_dict(inst))
    assert again == inst


def test_result_roundtrip():
    inst = parse_instance(load_json(FIX / "knapsack.json"))
    res = solve(inst)
    d = result_to_dict(res)
    back = result_from_dict(json.loads(json.dumps(d)))
    assert back.status == res.status and back.value == res.value and tuple(back.x) == res.x
    assert result_to_dict(back) == d


def test_convolve(capsys):
    code, fast = run(capsys, "convolve", FIX / "ma.json", FIX / "mb.json")
    code2, slow = run(capsys, "convolve", FIX / "ma.json", FIX / "mb.json", "--naive")
    assert code == code2 == 0 and fast == slow
    assert json.loads(fast)["values"] == [3, 6, 2]
    code, fast = run(capsys, "convolve", FIX / "ba.json", FIX / "bb.json", "--semiring", "boolean")
    _, slow = run(capsys, "convolve", FIX / "ba.json", FIX / "bb.json", "--semiring", "boolean", "--naive")
    assert code == 0 and fast == slow


def test_convolve_identity(tmp_path, capsys):
    e = tmp_path / "e.json"
    e.write_text(json.dumps({"format_version": 1, "orders": [3], "values": [0, "inf", "inf"]}))
    _, out = run(capsys, "convolve", FIX / "ma.json", e)
    assert json.loads(out)["values"] == [0, 1, 4]


def test_convolve_group_mismatch(tmp_path, capsys):
    other = tmp_path / "o.json"
    other.write_text(json.dumps({"format_version": 1, "orders": [2], "values": [0, 0]}))
    assert run(capsys, "convolve", FIX / "ma.json", other)[0] == 65


def test_group_map_parse():
    G, vals = parse_group_map({"format_version": 1, "orders": [2], "values": [1, "inf"]})
    assert G.size == 2 and vals[0] == 1


def test_dft_delta(capsys):
    code, out = run(capsys, "dft", FIX / "delta.json", "--eps", "1/1000")
    d = json.loads(out)
    bound = parse_rat(d["bound"], "bound")
    for re, im in d["values"]:
        assert RatComplex(parse_rat(re, "re"), parse_rat(im, "im")).within(RatComplex(1), bound)


def test_group_info(capsys):
    code, out = run(capsys, "group-info", FIX / "tiling2.json")
    d = json.loads(out)
    assert code == 0 and d["size"] == 4 == d["expected_size"]


def test_group_info_orders(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"format_version": 1, "orders": [4, 6]}))
    code, out = run(capsys, "group-info", p)
    assert code == 0 and json.loads(out)["size"] == 24


def test_corpus_solve(tmp_path, capsys):
    inst = json.loads((FIX / "knapsack.json").read_text())
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"format_version": 1, "instances": [inst, inst]}))
    code, out = run(capsys, "solve", p, "--oracle-check")
    assert code == 0


def test_bench_rows(tmp_path, capsys):
    insts = [json.loads((FIX / "knapsack.json").read_text())] * 10
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"format_version": 1, "instances": insts}))
    code, out = run(capsys, "bench", "--corpus", p)
    rows = [line for line in out.splitlines() if line and not line.startswith(("#", "instance"))]
    assert code == 0 and len(rows) == 10


def test_verify(capsys):
    code, out = run(capsys, "verify", "--seed", "2", "--count", "5")
    assert code == 0 and "5/5 agree" in out


def test_fit_exponent():
    taus = [10, 20, 40, 80]
    assert fit_exponent(taus, [t**2 for t in taus]) == pytest.approx(2.0)
    assert len(scaling_family([2, 4])) == 2


def test_determinism(capsys):
    _, a = run(capsys, "solve", FIX / "knapsack.json")
    _, b = run(capsys, "solve", FIX / "knapsack.json")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "diagnostics"}
    assert strip(a) == strip(b)
