import json
import os
from pathlib import Path

import pytest

import colengine

FIXTURES = Path(os.environ.get("COL_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def fixture(name):
    return str(FIXTURES / f"{name}.json")


def test_parse_round_trip():
    assert colengine.parse("chall x.chex y.y=succ(x)") == "chall x . chex y . y = succ(x)"
    assert "⊔" in colengine.parse("~p | p", unicode=True)


def test_syntax_error_is_value_error():
    with pytest.raises(ValueError, match="1:3"):
        colengine.parse("((")
    with pytest.raises(colengine.ColError):
        colengine.parse("((")


def test_successor_game():
    verdict = colengine.solve("chall x . chex y . y = succ(x)", interp=fixture("succ"))
    assert verdict["winnable"] is True
    assert verdict["budget"] == 1
    answers = {e["state"]: e["action"] for e in verdict["strategy"]}
    assert answers["F:0"] == "1"
    assert answers["F:3"] == "0"


def test_tree_and_inline_interpretation():
    tree = json.loads(Path(fixture("fig1")).read_text())
    assert colengine.solve(tree=tree)["winnable"] is True
    interp = {"universe": 1, "predicates": {"p/0": [False]}}
    assert colengine.solve("~p \\/ p", interp=interp)["winnable"] is True
    lost = colengine.solve("p", interp=interp)
    assert lost["winnable"] is False
    assert lost["witness"] == []


def test_uniform_excluded_middle():
    family = [fixture(f"em_general_{i}") for i in (1, 2, 3)]
    assert colengine.uniform("~P \\/ P", family)["winnable"] is True
    assert colengine.uniform("~P | P", family)["winnable"] is False


def test_verify_named_strategies():
    assert colengine.verify("fig1", tree=fixture("fig1"))["holds"] is True
    failed = colengine.verify("wait", tree=fixture("fig1"))
    assert failed["holds"] is False
    assert failed["counterexample"] == []
    assert "copycat" in colengine.strategy_names()


def test_limits():
    with pytest.raises(colengine.LimitExceeded):
        colengine.solve("chall x . chall y . even(plus(x,y)) | odd(plus(x,y))", interp=fixture("parity"), max_states=10)


def test_intuitionistic_audit():
    assert colengine.int_prove("a -> a")
    assert not colengine.int_prove("((a -> b) -> a) -> a")
    assert colengine.translate("a \\/ ~a") == "A | o~A"
    rows = colengine.audit(["a -> a", "a \\/ ~a"])
    assert [r["classification"] for r in rows] == ["consistent", "consistent"]
    assert rows[0]["winnable"] is True and rows[1]["winnable"] is False
