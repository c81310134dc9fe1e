"""Formula AST for the BPICTL logic and structural utilities.

The core fragment is {atom, true, not, and, or, B, P, I, AX, EX, EF, EG, EU};
implication, biconditional, desire, AG, AU and AF are derived operators that
``rewrite_derived`` eliminates bottom-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Formula:
    """Immutable formula node. Compared and hashed structurally."""

    op: str
    name: str | None = None      # atom name (op == 'atom')
    agent: str | None = None     # agent of B/P/I/D modalities
    left: "Formula | None" = None
    right: "Formula | None" = None

    def children(self) -> Iterator["Formula"]:
        if self.left is not None:
            yield self.left
        if self.right is not None:
            yield self.right

    def __repr__(self) -> str:  # keep pytest diffs readable
        from .textio import render_formula

        return f"<{render_formula(self)}>"


# Constructor helpers.  Binary temporal operators take (left, right).

def Atom(name: str) -> Formula:
    return Formula("atom", name=name)


TRUE = Formula("true")


def Not(f: Formula) -> Formula:
    return Formula("not", left=f)


def And(f1: Formula, f2: Formula) -> Formula:
    return Formula("and", left=f1, right=f2)


def Or(f1: Formula, f2: Formula) -> Formula:
    return Formula("or", left=f1, right=f2)


def Imp(f1: Formula, f2: Formula) -> Formula:
    return Formula("imp", left=f1, right=f2)


def Iff(f1: Formula, f2: Formula) -> Formula:
    return Formula("iff", left=f1, right=f2)


def B(agent: str, f: Formula) -> Formula:
    return Formula("B", agent=agent, left=f)


def P(agent: str, f: Formula) -> Formula:
    return Formula("P", agent=agent, left=f)


def I(agent: str, f: Formula) -> Formula:
    return Formula("I", agent=agent, left=f)


def D(agent: str, f: Formula) -> Formula:
    return Formula("D", agent=agent, left=f)


def AX(f: Formula) -> Formula:
    return Formula("AX", left=f)


def EX(f: Formula) -> Formula:
    return Formula("EX", left=f)


def EF(f: Formula) -> Formula:
    return Formula("EF", left=f)


def EG(f: Formula) -> Formula:
    return Formula("EG", left=f)


def AG(f: Formula) -> Formula:
    return Formula("AG", left=f)


def AF(f: Formula) -> Formula:
    return Formula("AF", left=f)


def EU(f1: Formula, f2: Formula) -> Formula:
    return Formula("EU", left=f1, right=f2)


def AU(f1: Formula, f2: Formula) -> Formula:
    return Formula("AU", left=f1, right=f2)


CORE_OPS = frozenset(
    {"atom", "true", "not", "and", "or", "B", "P", "I", "AX", "EX", "EF", "EG", "EU"}
)

MODAL_OPS = frozenset({"B", "P", "I", "D"})


def is_core(f: Formula) -> bool:
    return f.op in CORE_OPS and all(is_core(c) for c in f.children())


def rewrite_derived(f: Formula) -> Formula:
    """Eliminate derived operators, bottom-up. Idempotent on core formulas."""
    kids = [rewrite_derived(c) for c in f.children()]
    op = f.op
    if op == "imp":
        return Or(Not(kids[0]), kids[1])
    if op == "iff":
        a, b = kids
        return And(Or(Not(a), b), Or(Not(b), a))
    if op == "D":
        return And(P(f.agent, kids[0]), B(f.agent, Not(kids[0])))
    if op == "AG":
        return Not(EF(Not(kids[0])))
    if op == "AU":
        a, b = kids
        return And(Not(EU(Not(b), And(Not(a), Not(b)))), Not(EG(Not(b))))
    if op == "AF":
        return rewrite_derived(AU(TRUE, kids[0]))
    if not kids:
        return f
    if op in MODAL_OPS or op in ("not", "AX", "EX", "EF", "EG"):
        return Formula(op, agent=f.agent, left=kids[0])
    return Formula(op, left=kids[0], right=kids[1])


def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of f, including f itself."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        stack.extend(g.children())
    return frozenset(out)


def subformula_closure(f: Formula) -> frozenset[Formula]:
    """Subformulas of f together with the negation of each."""
    subs = subformulas(f)
    return subs | {Not(g) for g in subs}


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if g.op == "atom")


def agents_of(f: Formula) -> frozenset[str]:
    return frozenset(g.agent for g in subformulas(f) if g.agent is not None)
