import random

import pytest

from bpictl import formula as F
from bpictl.checker import (
    eval_formula,
    is_satisfiable_in,
    is_valid,
    pre_modal,
    tarjan_scc,
)
from bpictl.model import UndeclaredSymbolError, make_model
from bpictl.oracle import denote

from conftest import example_model, random_core_formula, random_model


@pytest.fixture
def m():
    return example_model()


def test_pre_modal_belief(m):
    assert pre_modal("B", m, "a", frozenset({0})) == frozenset()
    assert pre_modal("B", m, "a", m.universe) == m.universe


def test_pre_modal_neighbourhood(m):
    assert pre_modal("P", m, "a", m.universe) == m.universe
    assert pre_modal("P", m, "a", frozenset({0})) == frozenset()
    assert pre_modal("I", m, "a", m.universe) == frozenset()


def test_pre_modal_temporal(m):
    assert pre_modal("EX", m, None, frozenset({0})) == {0}
    assert pre_modal("AX", m, None, frozenset({0})) == {0}


def test_pre_modal_rejects_unknown_agent(m):
    with pytest.raises(UndeclaredSymbolError):
        pre_modal("B", m, "zzz", m.universe)


def test_tarjan_components():
    rel = frozenset({(0, 1), (1, 0), (2, 2), (3, 0)})
    part = tarjan_scc(frozenset({0, 1, 2, 3}), rel)
    comps = set(part.components)
    assert frozenset({0, 1}) in comps
    assert frozenset({2}) in comps
    assert frozenset({3}) in comps
    by_comp = dict(zip(part.components, part.nontrivial))
    assert by_comp[frozenset({0, 1})] is True
    assert by_comp[frozenset({2})] is True    # self-loop
    assert by_comp[frozenset({3})] is False   # no loop


def test_tarjan_respects_induced_subgraph():
    rel = frozenset({(0, 1), (1, 0)})
    part = tarjan_scc(frozenset({0}), rel)
    assert part.components == (frozenset({0}),)
    assert part.nontrivial == (False,)


def test_eg_needs_nontrivial_scc():
    # p holds on a path with no cycle inside [[p]], so EG p is empty
    m = make_model(
        states=("s0", "s1", "s2"), atoms=("p",), agents=("a",),
        labeling={"s0": ["p"], "s1": ["p"]},
        temporal=[("s0", "s1"), ("s1", "s2"), ("s2", "s0")],
    )
    assert eval_formula(m, F.EG(F.Atom("p"))) == frozenset()
    assert eval_formula(m, F.EG(F.TRUE)) == m.universe


def test_eu_respects_hold_set():
    m = make_model(
        states=("s0", "s1", "s2"), atoms=("p", "q"), agents=("a",),
        labeling={"s0": ["p"], "s2": ["q"]},
        temporal=[("s0", "s1"), ("s1", "s2")],
    )
    # s0 cannot reach q while staying in p (s1 breaks the chain)
    assert eval_formula(m, F.EU(F.Atom("p"), F.Atom("q"))) == {2}


def test_validity_and_satisfiability(m):
    assert is_valid(m, F.TRUE)
    assert not is_valid(m, F.Atom("p"))
    assert is_satisfiable_in(m, F.Atom("p"))
    assert not is_satisfiable_in(m, F.And(F.Atom("p"), F.Not(F.Atom("p"))))


def test_differential_against_oracle():
    rng = random.Random(5)
    for _ in range(300):
        m = random_model(rng)
        f = random_core_formula(rng, m.atoms, m.agents, depth=4)
        assert eval_formula(m, f) == denote(m, f)
