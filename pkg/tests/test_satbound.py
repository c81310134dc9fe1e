import pytest

from bpictl.checker import eval_formula
from bpictl.frames import validate_model
from bpictl.satbound import closure_bound, sat_search
from bpictl.textio import parse_formula


@pytest.mark.parametrize("text, size", [
    ("p", 2),
    ("B{a} p", 4),
    ("EG p", 4),
    ("p & q", 6),
    ("!p", 3),
    ("true", 2),
    ("E[p U q]", 6),
    ("P{a}(p & q)", 8),
    ("B{a} B{a} p", 6),
    ("p | !p", 5),
])
def test_closure_bound_hand_values(text, size):
    closure, bound = closure_bound(parse_formula(text))
    assert len(closure) == size
    assert bound == 2 ** size


def test_true_is_sat_in_one_state():
    r = sat_search(parse_formula("true"), max_states=1)
    assert r.verdict == "sat"
    assert r.model.n == 1


def test_belief_vs_fact_needs_two_states():
    f = parse_formula("B{a} p & !p")
    assert sat_search(f, max_states=1).verdict == "unsat-up-to"
    r = sat_search(f, max_states=2)
    assert r.verdict == "sat"
    assert r.model.n == 2
    # the returned model really is frame-valid and really satisfies f
    assert validate_model(r.model).passed
    sat = eval_formula(r.model, f)
    assert r.model.index(r.witness) in sat


def test_contradiction_unsat():
    r = sat_search(parse_formula("p & !p"), max_states=3)
    assert r.verdict == "unsat-up-to"
    assert r.model is None
    assert r.explored > 0


def test_budget_aborts():
    r = sat_search(parse_formula("p & !p"), max_states=3, budget=10)
    assert r.verdict == "aborted"
    assert r.explored == 10


def test_preference_formula_sat():
    r = sat_search(parse_formula("P{a} p & !p"), max_states=2)
    assert r.verdict == "sat"
    assert validate_model(r.model).passed


def test_intention_formula_unsat_under_frame_conditions():
    # nonempty intention families cannot pass the frame validator, so any
    # positive intention claim is unsatisfiable over frame-valid models
    r = sat_search(parse_formula("I{a} true"), max_states=2)
    assert r.verdict == "unsat-up-to"


def test_negative_intention_valid():
    r = sat_search(parse_formula("!I{a} p"), max_states=1)
    assert r.verdict == "sat"
