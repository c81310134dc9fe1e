import random

import pytest

from bpictl import formula as F
from bpictl.model import make_model


def example_model(states=("s0", "s1"), atoms=("p",), labeling=None, agents=("a",)):
    """The simple reference model: total belief, the preference family {S}
    at every state, no intentions, and a self-loop temporal relation."""
    states = tuple(states)
    if labeling is None:
        labeling = {states[0]: list(atoms)}
    return make_model(
        states=states,
        atoms=atoms,
        agents=agents,
        labeling=labeling,
        belief={a: [(x, y) for x in states for y in states] for a in agents},
        temporal=[(s, s) for s in states],
        pref={a: {s: [states] for s in states} for a in agents},
    )


@pytest.fixture
def simple_model():
    return example_model()


def random_model(rng, max_states=6, max_atoms=3, max_agents=2):
    """Arbitrary (not necessarily frame-valid) model for differential and
    invariant testing."""
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    atoms = tuple("pqr"[: rng.randint(1, max_atoms)])
    agents = tuple("ab"[: rng.randint(1, max_agents)])
    labeling = {s: [p for p in atoms if rng.random() < 0.5] for s in states}

    def rel():
        return [
            (x, y) for x in states for y in states if rng.random() < 0.4
        ]

    def family():
        out = []
        for _ in range(rng.randint(0, 3)):
            out.append(tuple(s for s in states if rng.random() < 0.5))
        return out

    return make_model(
        states=states, atoms=atoms, agents=agents, labeling=labeling,
        belief={a: rel() for a in agents},
        temporal=rel(),
        pref={a: {s: family() for s in states} for a in agents},
        intent={a: {s: family() for s in states} for a in agents},
    )


def random_core_formula(rng, atoms, agents, depth=4):
    """Random formula over the core fragment, bounded nesting depth."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.15:
            return F.TRUE
        return F.Atom(rng.choice(atoms))
    op = rng.choice(
        ["not", "and", "or", "B", "P", "I", "AX", "EX", "EF", "EG", "EU"]
    )
    sub = lambda: random_core_formula(rng, atoms, agents, depth - 1)
    if op == "not":
        return F.Not(sub())
    if op == "and":
        return F.And(sub(), sub())
    if op == "or":
        return F.Or(sub(), sub())
    if op in ("B", "P", "I"):
        ctor = {"B": F.B, "P": F.P, "I": F.I}[op]
        return ctor(rng.choice(agents), sub())
    if op == "AX":
        return F.AX(sub())
    if op == "EX":
        return F.EX(sub())
    if op == "EF":
        return F.EF(sub())
    if op == "EG":
        return F.EG(sub())
    return F.EU(sub(), sub())


def random_formula(rng, atoms, agents, depth=4):
    """Random formula that may also use the derived operators."""
    if rng.random() < 0.6:
        return random_core_formula(rng, atoms, agents, depth)
    op = rng.choice(["imp", "iff", "D", "AG", "AF", "AU"])
    sub = lambda: random_formula(rng, atoms, agents, depth - 1) \
        if depth > 0 else F.Atom(rng.choice(atoms))
    if op == "imp":
        return F.Imp(sub(), sub())
    if op == "iff":
        return F.Iff(sub(), sub())
    if op == "D":
        return F.D(rng.choice(agents), sub())
    if op == "AG":
        return F.AG(sub())
    if op == "AF":
        return F.AF(sub())
    return F.AU(sub(), sub())
