import random

import pytest

from bpictl import formula as F
from bpictl.textio import (
    ParseError,
    parse_formula,
    parse_model,
    render_formula,
    render_model,
)

from conftest import example_model, random_formula, random_model


def test_parse_atoms_and_constants():
    assert parse_formula("p") == F.Atom("p")
    assert parse_formula("true") == F.TRUE
    assert parse_formula("!p") == F.Not(F.Atom("p"))


def test_parse_modalities():
    assert parse_formula("B{a} p") == F.B("a", F.Atom("p"))
    assert parse_formula("D{bob} q") == F.D("bob", F.Atom("q"))
    assert parse_formula("EX EG p") == F.EX(F.EG(F.Atom("p")))
    assert parse_formula("E[p U q]") == F.EU(F.Atom("p"), F.Atom("q"))
    assert parse_formula("A[p U q]") == F.AU(F.Atom("p"), F.Atom("q"))


def test_bare_letters_are_atoms():
    # B, E, A without braces/brackets are ordinary atoms
    assert parse_formula("B") == F.Atom("B")
    assert parse_formula("E & A") == F.And(F.Atom("E"), F.Atom("A"))


def test_precedence():
    p, q, r = F.Atom("p"), F.Atom("q"), F.Atom("r")
    assert parse_formula("p & q | r") == F.Or(F.And(p, q), r)
    assert parse_formula("p | q -> r") == F.Imp(F.Or(p, q), r)
    assert parse_formula("p -> q -> r") == F.Imp(p, F.Imp(q, r))
    assert parse_formula("p <-> q <-> r") == F.Iff(F.Iff(p, q), r)
    assert parse_formula("!p & q") == F.And(F.Not(p), q)
    assert parse_formula("B{a} p & q") == F.And(F.B("a", p), q)


def test_comments_and_whitespace():
    assert parse_formula("p &  # comment\n q") == F.And(F.Atom("p"), F.Atom("q"))


@pytest.mark.parametrize("bad, line, col", [
    ("p &", 1, 4),
    ("(p", 1, 3),
    ("B{} p", 1, 3),
    ("E[p q]", 1, 5),
    ("p q", 1, 3),
    ("p @ q", 1, 3),
])
def test_parse_errors_carry_position(bad, line, col):
    with pytest.raises(ParseError) as exc:
        parse_formula(bad)
    assert exc.value.line == line
    assert exc.value.column == col


def test_reserved_words_not_atoms():
    # AX alone is an operator missing its argument, not an atom
    with pytest.raises(ParseError):
        parse_formula("AX")


def test_formula_roundtrip_random():
    rng = random.Random(3)
    for _ in range(400):
        f = random_formula(rng, ("p", "q", "r"), ("a", "b"), depth=4)
        assert parse_formula(render_formula(f)) == f


def test_render_is_stable():
    text = "B{a} p & !E[p U q] -> AG (p | true)"
    once = render_formula(parse_formula(text))
    assert render_formula(parse_formula(once)) == once


def test_model_roundtrip_simple(simple_model):
    text = render_model(simple_model)
    again = parse_model(text)
    assert render_model(again) == text
    assert again == simple_model


def test_model_roundtrip_random():
    rng = random.Random(9)
    for _ in range(100):
        m = random_model(rng)
        text = render_model(m)
        assert parse_model(text) == m
        assert render_model(parse_model(text)) == text


def test_model_sections_in_any_order():
    text = (
        "states s0 s1\natoms p\nagents a\n"
        "label s1 = []\nlabel s0 = [p]\n"
        "RB a s0 -> s1\nRX s0 -> s1\nRB a s1 -> s1\n"
        "RP a s0 = { s0 } { s1 }\nRX s1 -> s0\n"
        "RP a s0 = { s0 s1 }\n"  # merges with the earlier RP line
    )
    m = parse_model(text)
    assert m.temporal == frozenset({(0, 1), (1, 0)})
    assert len(m.pref["a"][0]) == 3


def test_model_duplicate_edges_collapse():
    text = (
        "states s0\natoms\nagents a\nlabel s0 = []\n"
        "RX s0 -> s0\nRX s0 -> s0\n"
    )
    assert parse_model(text).temporal == frozenset({(0, 0)})


@pytest.mark.parametrize("bad", [
    "atoms p\nstates s0\nagents a\nlabel s0 = []",   # wrong header order
    "states s0\natoms p\nagents a",                  # missing label
    "states s0\natoms p\nagents a\nlabel s0 = [q]",  # undeclared atom
    "states s0\natoms p\nagents a\nlabel s0 = []\nRX s0 -> s9",
    "states s0\natoms p\nagents a\nlabel s0 = []\nRB b s0 -> s0",
    "states s0\natoms p\nagents a\nlabel s0 = []\nRP a s0 = { s0",
    "states s0 s0\natoms p\nagents a\nlabel s0 = []",
])
def test_model_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_model(bad)


def test_model_render_canonical_ordering():
    text = render_model(example_model(states=("s0", "s1", "s2")))
    lines = text.splitlines()
    rx = [l for l in lines if l.startswith("RX")]
    assert rx == sorted(rx)
    assert text.endswith("\n")
