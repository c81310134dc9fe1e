"""Labeling model checker.

Processes core subformulas innermost-first, growing a per-state label set:
boolean cases by set algebra, modalities through Pre primitives, EF/EU by
backward worklist propagation and EG by decomposition into nontrivial
strongly connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Formula, agents_of, atoms_of, rewrite_derived
from .model import Model, StateSet, UndeclaredSymbolError


@dataclass(frozen=True)
class SccPartition:
    components: tuple  # tuple[frozenset[int], ...], disjoint, covering the subgraph
    nontrivial: tuple  # tuple[bool, ...], aligned with components


def pre_modal(kind: str, m: Model, agent: str | None, rho: StateSet) -> StateSet:
    """Pre primitive for one modal operator applied to the state set rho."""
    n = m.n
    if kind in ("B", "P", "I"):
        if agent is None:
            raise ValueError(f"pre_modal({kind!r}) needs an agent")
        if agent not in m.agents:
            raise UndeclaredSymbolError("agent", agent)
    if kind == "B":
        rel = m.belief[agent]
        return frozenset(s for s in range(n) if all(t in rho for (x, t) in rel if x == s))
    if kind == "P":
        return frozenset(s for s in range(n) if rho in m.pref[agent][s])
    if kind == "I":
        return frozenset(s for s in range(n) if rho in m.intent[agent][s])
    if kind == "AX":
        return frozenset(
            s for s in range(n) if all(t in rho for (x, t) in m.temporal if x == s)
        )
    if kind == "EX":
        return frozenset(
            s for s in range(n) if any((s, t) in m.temporal for t in rho)
        )
    raise ValueError(f"unknown modal kind {kind!r}")


def tarjan_scc(sub: StateSet, rel) -> SccPartition:
    """Maximal SCCs of the subgraph induced by sub; nontrivial components
    have more than one node or a single node with a self-loop."""
    nodes = sorted(sub)
    succ = {s: sorted(t for (x, t) in rel if x == s and t in sub) for s in nodes}
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    components: list[frozenset] = []

    for root in nodes:
        if root in index:
            continue
        # Iterative Tarjan: (node, iterator position) work stack.
        work = [(root, 0)]
        while work:
            node, child_pos = work.pop()
            if child_pos == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for k in range(child_pos, len(succ[node])):
                child = succ[node][k]
                if child not in index:
                    work.append((node, k + 1))
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            if low[node] == index[node]:
                comp = set()
                while True:
                    top = stack.pop()
                    on_stack.discard(top)
                    comp.add(top)
                    if top == node:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    flags = tuple(
        len(c) > 1 or ((next(iter(c)), next(iter(c))) in rel) for c in components
    )
    return SccPartition(components=tuple(components), nontrivial=flags)


def eval_formula(m: Model, f: Formula) -> StateSet:
    """The set of states of m satisfying f, by the labeling algorithm."""
    for p in atoms_of(f):
        if p not in m.atoms:
            raise UndeclaredSymbolError("atom", p)
    for a in agents_of(f):
        if a not in m.agents:
            raise UndeclaredSymbolError("agent", a)

    core = rewrite_derived(f)
    preds = {s: [] for s in range(m.n)}
    for (x, t) in m.temporal:
        preds[t].append(x)

    labels: dict[Formula, frozenset] = {}
    for sub in _postorder(core):
        if sub in labels:
            continue
        labels[sub] = _eval_node(m, sub, labels, preds)
    return labels[core]


def _postorder(f: Formula):
    seen: set[Formula] = set()
    out: list[Formula] = []

    def walk(g: Formula):
        if g in seen:
            return
        seen.add(g)
        for c in g.children():
            walk(c)
        out.append(g)

    walk(f)
    return out


def _drain_backward(seed, preds, allowed=None) -> frozenset:
    """Backward propagation: labeled states grow from seed over predecessors,
    popped in declared order (lowest index first)."""
    labeled = set(seed)
    work = set(seed)
    while work:
        s = min(work)
        work.discard(s)
        for t in preds[s]:
            if t in labeled:
                continue
            if allowed is not None and t not in allowed:
                continue
            labeled.add(t)
            work.add(t)
    return frozenset(labeled)


def _eval_node(m: Model, f: Formula, labels, preds) -> frozenset:
    op = f.op
    if op == "atom":
        return m.atom_extension(f.name)
    if op == "true":
        return m.universe
    if op == "not":
        return m.universe - labels[f.left]
    if op == "and":
        return labels[f.left] & labels[f.right]
    if op == "or":
        return labels[f.left] | labels[f.right]
    if op in ("B", "P", "I", "AX", "EX"):
        return pre_modal(op, m, f.agent, labels[f.left])
    if op == "EF":
        return _drain_backward(labels[f.left], preds)
    if op == "EG":
        restricted = labels[f.left]
        part = tarjan_scc(restricted, m.temporal)
        seed = set()
        for comp, flag in zip(part.components, part.nontrivial):
            if flag:
                seed |= comp
        return _drain_backward(seed, preds, allowed=restricted)
    if op == "EU":
        return _drain_backward(labels[f.right], preds, allowed=labels[f.left] | labels[f.right])
    raise ValueError(f"non-core operator reached the checker: {op!r}")


def is_valid(m: Model, f: Formula) -> bool:
    return eval_formula(m, f) == m.universe


def is_satisfiable_in(m: Model, f: Formula) -> bool:
    return bool(eval_formula(m, f))
