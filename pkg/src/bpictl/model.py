"""Finite BPICTL models and binary-relation utilities.

States are stored as name strings in declared order; all relations,
neighbourhood families and state sets use integer indices into that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

StateSet = frozenset  # frozenset[int]
Relation = frozenset  # frozenset[tuple[int, int]]


class UndeclaredSymbolError(ValueError):
    """A formula mentions an atom or agent the model does not declare."""

    def __init__(self, kind: str, symbol: str):
        super().__init__(f"undeclared {kind}: {symbol!r}")
        self.kind = kind
        self.symbol = symbol


class ModelError(ValueError):
    """Structurally invalid model (bad endpoints, missing labels, ...)."""


@dataclass
class Model:
    states: tuple[str, ...]
    atoms: tuple[str, ...]
    agents: tuple[str, ...]
    labeling: tuple[frozenset, ...]            # per state index: atom names
    belief: dict                               # agent -> frozenset[(int, int)]
    temporal: frozenset                        # frozenset[(int, int)]
    pref: dict                                 # agent -> tuple per state of frozenset[StateSet]
    intent: dict                               # agent -> tuple per state of frozenset[StateSet]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.states:
            raise ModelError("a model needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state identifiers")
        self._index = {s: i for i, s in enumerate(self.states)}
        n = len(self.states)
        for rel in [self.temporal, *self.belief.values()]:
            for (x, y) in rel:
                if not (0 <= x < n and 0 <= y < n):
                    raise ModelError(f"relation endpoint out of range: {(x, y)}")
        for fams in [self.pref, self.intent]:
            for agent, per_state in fams.items():
                if len(per_state) != n:
                    raise ModelError(f"family table for {agent!r} has wrong length")
                for family in per_state:
                    for member in family:
                        if any(not (0 <= s < n) for s in member):
                            raise ModelError("neighbourhood member out of range")

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def universe(self) -> StateSet:
        return frozenset(range(self.n))

    def index(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise UndeclaredSymbolError("state", state) from None

    def atom_extension(self, atom: str) -> StateSet:
        if atom not in self.atoms:
            raise UndeclaredSymbolError("atom", atom)
        return frozenset(i for i in range(self.n) if atom in self.labeling[i])

    def belief_successors(self, agent: str, s: int) -> StateSet:
        return frozenset(t for (x, t) in self.belief[agent] if x == s)

    def temporal_successors(self, s: int) -> StateSet:
        return frozenset(t for (x, t) in self.temporal if x == s)

    def state_names(self, ss: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.states[i] for i in sorted(ss))


def make_model(
    states: Iterable[str],
    atoms: Iterable[str] = (),
    agents: Iterable[str] = ("a",),
    labeling: Mapping[str, Iterable[str]] | None = None,
    belief: Mapping[str, Iterable[tuple[str, str]]] | None = None,
    temporal: Iterable[tuple[str, str]] = (),
    pref: Mapping[str, Mapping[str, Iterable[Iterable[str]]]] | None = None,
    intent: Mapping[str, Mapping[str, Iterable[Iterable[str]]]] | None = None,
) -> Model:
    """Build a Model from name-level data, validating declarations."""
    states = tuple(states)
    atoms = tuple(atoms)
    agents = tuple(agents)
    if not agents:
        raise ModelError("a model needs at least one agent")
    if len(set(agents)) != len(agents):
        raise ModelError("duplicate agent names")
    idx = {s: i for i, s in enumerate(states)}

    def sidx(s: str) -> int:
        if s not in idx:
            raise UndeclaredSymbolError("state", s)
        return idx[s]

    labeling = dict(labeling or {})
    label_rows = []
    for s in states:
        row = frozenset(labeling.pop(s, ()))
        for p in row:
            if p not in atoms:
                raise UndeclaredSymbolError("atom", p)
        label_rows.append(row)
    if labeling:
        raise UndeclaredSymbolError("state", next(iter(labeling)))

    belief = dict(belief or {})
    bel = {}
    for a in agents:
        bel[a] = frozenset((sidx(x), sidx(y)) for (x, y) in belief.pop(a, ()))
    if belief:
        raise UndeclaredSymbolError("agent", next(iter(belief)))

    def families(table: Mapping | None) -> dict:
        table = dict(table or {})
        out = {}
        for a in agents:
            per_state = [frozenset()] * len(states)
            for s, fam in dict(table.pop(a, {})).items():
                per_state[sidx(s)] = frozenset(
                    frozenset(sidx(t) for t in member) for member in fam
                )
            out[a] = tuple(per_state)
        if table:
            raise UndeclaredSymbolError("agent", next(iter(table)))
        return out

    return Model(
        states=states,
        atoms=atoms,
        agents=agents,
        labeling=tuple(label_rows),
        belief=bel,
        temporal=frozenset((sidx(x), sidx(y)) for (x, y) in temporal),
        pref=families(pref),
        intent=families(intent),
    )


def compose(r1: Relation, r2: Relation) -> Relation:
    """Relational composition: pairs (x, z) with an r1-step then an r2-step."""
    by_src = {}
    for (y, z) in r2:
        by_src.setdefault(y, []).append(z)
    return frozenset((x, z) for (x, y) in r1 for z in by_src.get(y, ()))


def reflexive_transitive_closure(rel: Relation, n: int) -> Relation:
    """Smallest reflexive transitive relation over n states containing rel."""
    succ = [set() for _ in range(n)]
    for (x, y) in rel:
        succ[x].add(y)
    out = set()
    for start in range(n):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.update((start, t) for t in seen)
    return frozenset(out)


def powerset(n: int):
    """All subsets of range(n) as frozensets, in bitmask order."""
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)
