import json

import pytest

import modalk


def test_parse_print_roundtrip():
    f = modalk.parse("<> p & [] (p | q)")
    assert modalk.parse(modalk.print_formula(f)) == f
    assert str(modalk.parse("[] false")) == "[] false"


def test_parse_error():
    with pytest.raises(ValueError):
        modalk.parse("p &")


def test_measure():
    m = modalk.measure(modalk.parse("<> p & [] (p | q)"))
    assert m == {"v": 2, "md": 1, "dd": 1, "dbox": 1, "mw": 2, "widths": [2]}


def test_nnf_and_variables():
    f = modalk.parse("~ [] p")
    assert modalk.to_nnf(f) == modalk.parse("<> ~ p")
    assert modalk.variables(modalk.parse("p & (q | p)")) == {"p", "q"}


def test_solve_and_witness():
    res = modalk.solve(modalk.parse("<> p & <> ~ p"), algo="depth")
    assert res["verdict"] == "SAT"
    model = modalk.KripkeModel.from_json(res["witness"]["model"])
    assert modalk.model_check(model, res["witness"]["root"],
                              modalk.parse("<> p & <> ~ p"))

    assert modalk.solve(modalk.parse("<> p & [] ~ p"))["verdict"] == "UNSAT"
    assert modalk.solve(modalk.parse("[] false"), algo="brute")["verdict"] == "SAT"


def test_valid():
    assert modalk.valid(modalk.parse("p | ~ p")) == "VALID"
    assert modalk.valid(modalk.parse("[] p")) == "NOT_VALID"


def test_model_check():
    m = modalk.KripkeModel.from_json(json.dumps({
        "states": [{"id": 0, "valuation": {}},
                   {"id": 1, "valuation": {"p": True}}],
        "relation": [[0, 1]],
    }))
    assert modalk.model_check(m, 0, modalk.parse("<> p & [] p"))
    assert not modalk.model_check(m, 0, modalk.parse("p"))


def test_reduction():
    dimacs = "p cnf 1 1\n1 0\n"
    phi = modalk.encode_dimacs(dimacs)
    assert modalk.variables(phi) == {"y"}
    w = modalk.reduction_witness(dimacs)
    model = modalk.KripkeModel.from_json(w["model"])
    assert modalk.model_check(model, w["root"], phi)
    assert modalk.reduction_witness("p cnf 1 2\n1 0\n-1 0\n") is None


def test_numeral():
    v5 = modalk.numeral(5)
    assert modalk.measure(v5)["md"] == 4
    assert modalk.variables(v5) == set()


def test_random_formula_deterministic():
    a = modalk.random_formula(42, num_vars=2, max_depth=5)
    b = modalk.random_formula(42, num_vars=2, max_depth=5)
    assert a == b
