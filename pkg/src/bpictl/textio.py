"""Concrete syntax: parsing and canonical rendering of formulas and models.

Formula files use extension ``.bpi``, model files ``.bpm``. Both are UTF-8
text; ``#`` starts a line comment. Rendering is canonical: re-rendering a
rendered file is byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import formula as F
from .formula import Formula
from .model import Model, make_model


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, expected: str | None = None):
        loc = f"{line}:{column}: {message}"
        if expected:
            loc += f" (expected {expected})"
        super().__init__(loc)
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected


RESERVED = frozenset({"true", "AX", "EX", "EF", "EG", "AG", "AF"})
_AGENT_MODS = frozenset({"B", "P", "I", "D"})
_UNARY_MODS = {"AX": F.AX, "EX": F.EX, "EF": F.EF, "EG": F.EG, "AG": F.AG, "AF": F.AF}

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<sym><->|->|[!&|(){}\[\]=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str        # 'ident', 'sym', 'eof'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        group = m.lastgroup
        lexeme = m.group()
        if group == "ident":
            tokens.append(Token("ident", lexeme, line, col))
        elif group == "sym":
            tokens.append(Token("sym", lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _FormulaParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, expected: str | None = None):
        tok = self.peek()
        raise ParseError(tok.line, tok.column, message, expected)

    def expect_sym(self, sym: str) -> Token:
        tok = self.peek()
        if tok.kind != "sym" or tok.text != sym:
            self.error(f"found {tok.text!r}" if tok.kind != "eof" else "unexpected end of input",
                       expected=repr(sym))
        return self.next()

    def at_sym(self, sym: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.text == sym

    # formula := imp ("<->" imp)*    (left-assoc)
    def parse_formula(self) -> Formula:
        left = self.parse_imp()
        while self.at_sym("<->"):
            self.next()
            left = F.Iff(left, self.parse_imp())
        return left

    # imp := or ("->" imp)?          (right-assoc)
    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.at_sym("->"):
            self.next()
            return F.Imp(left, self.parse_imp())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.at_sym("|"):
            self.next()
            left = F.Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.at_sym("&"):
            self.next()
            left = F.And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if self.at_sym("!"):
            self.next()
            return F.Not(self.parse_unary())
        if self.at_sym("("):
            self.next()
            inner = self.parse_formula()
            self.expect_sym(")")
            return inner
        if tok.kind != "ident":
            self.error(f"found {tok.text!r}" if tok.kind != "eof" else "unexpected end of input",
                       expected="a formula")
        if tok.text == "true":
            self.next()
            return F.TRUE
        if tok.text in _UNARY_MODS:
            self.next()
            return _UNARY_MODS[tok.text](self.parse_unary())
        if tok.text in _AGENT_MODS and self._next_is_sym("{"):
            ctor = {"B": F.B, "P": F.P, "I": F.I, "D": F.D}[tok.text]
            self.next()
            self.next()  # '{'
            agent_tok = self.peek()
            if agent_tok.kind != "ident":
                self.error("empty or malformed agent braces", expected="an agent name")
            self.next()
            self.expect_sym("}")
            return ctor(agent_tok.text, self.parse_unary())
        if tok.text in ("E", "A") and self._next_is_sym("["):
            ctor = F.EU if tok.text == "E" else F.AU
            self.next()
            self.next()  # '['
            f1 = self.parse_formula()
            utok = self.peek()
            if utok.kind != "ident" or utok.text != "U":
                self.error(f"found {utok.text!r}", expected="'U'")
            self.next()
            f2 = self.parse_formula()
            self.expect_sym("]")
            return ctor(f1, f2)
        self.next()
        return F.Atom(tok.text)

    def _next_is_sym(self, sym: str) -> bool:
        nxt = self.tokens[self.pos + 1]
        return nxt.kind == "sym" and nxt.text == sym


def parse_formula(text: str) -> Formula:
    parser = _FormulaParser(_tokenize(text))
    f = parser.parse_formula()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.error(f"trailing input {tok.text!r}", expected="end of input")
    return f


# Rendering. Precedence levels: iff=1, imp=2, or=3, and=4, unary=5.
_BIN = {"iff": (1, "<->", 1, 2), "imp": (2, "->", 3, 2), "or": (3, "|", 3, 4), "and": (4, "&", 4, 5)}


def render_formula(f: Formula) -> str:
    return _render(f, 0)


def _render(f: Formula, min_prec: int) -> str:
    op = f.op
    if op == "atom":
        return f.name
    if op == "true":
        return "true"
    if op in _BIN:
        prec, sym, lp, rp = _BIN[op]
        text = f"{_render(f.left, lp)} {sym} {_render(f.right, rp)}"
        return f"({text})" if prec < min_prec else text
    if op == "not":
        return "!" + _render(f.left, 5)
    if op in ("AX", "EX", "EF", "EG", "AG", "AF"):
        return f"{op} {_render(f.left, 5)}"
    if op in ("B", "P", "I", "D"):
        return f"{op}{{{f.agent}}} {_render(f.left, 5)}"
    if op in ("EU", "AU"):
        head = "E" if op == "EU" else "A"
        return f"{head}[{_render(f.left, 0)} U {_render(f.right, 0)}]"
    raise ValueError(f"unknown operator {op!r}")


# Model files. Line-oriented; see parse_model for the layout.

def parse_model(text: str) -> Model:
    """Parse the .bpm model format.

    Layout (``#`` comments and blank lines ignored)::

        states s0 s1 ...
        atoms p q ...
        agents a b ...
        label <state> = [atoms...]        one line per state
        RX <state> -> <state>
        RB <agent> <state> -> <state>
        RP <agent> <state> = { s... } { s... } ...
        RI <agent> <state> = { s... } ...
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if stripped.strip():
            lines.append((lineno, stripped))

    def err(lineno, col, message, expected=None):
        raise ParseError(lineno, col, message, expected)

    def words(lineno, line):
        out = []
        for m in re.finditer(r"->|[={}\[\]]|[A-Za-z_][A-Za-z0-9_]*|\S", line):
            out.append((m.group(), m.start() + 1))
        return out

    cursor = 0

    def take_header(keyword, minimum):
        nonlocal cursor
        if cursor >= len(lines):
            err(len(text.splitlines()) + 1, 1, f"missing {keyword!r} line")
        lineno, line = lines[cursor]
        toks = words(lineno, line)
        if toks[0][0] != keyword:
            err(lineno, toks[0][1], f"found {toks[0][0]!r}", expected=f"{keyword!r} line")
        names = []
        for (w, col) in toks[1:]:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", w):
                err(lineno, col, f"bad identifier {w!r}")
            if w in names:
                err(lineno, col, f"duplicate identifier {w!r}")
            names.append(w)
        if len(names) < minimum:
            err(lineno, toks[0][1], f"{keyword!r} line needs at least {minimum} name(s)")
        cursor += 1
        return names

    states = take_header("states", 1)
    atoms = take_header("atoms", 0)
    agents = take_header("agents", 1)
    state_set = set(states)
    atom_set = set(atoms)
    agent_set = set(agents)

    labels: dict[str, list[str]] = {}
    rx: set[tuple[str, str]] = set()
    rb: dict[str, set] = {a: set() for a in agents}
    rp: dict[str, dict[str, set]] = {a: {} for a in agents}
    ri: dict[str, dict[str, set]] = {a: {} for a in agents}

    def check(kind, name, lineno, col):
        pool = {"state": state_set, "atom": atom_set, "agent": agent_set}[kind]
        if name not in pool:
            err(lineno, col, f"undeclared {kind} {name!r}")
        return name

    def parse_arrow(toks, lineno, start, kind_left="state"):
        if len(toks) != start + 3 or toks[start + 1][0] != "->":
            col = toks[min(start + 1, len(toks) - 1)][1]
            err(lineno, col, "malformed relation line", expected="'<state> -> <state>'")
        src = check("state", toks[start][0], lineno, toks[start][1])
        dst = check("state", toks[start + 2][0], lineno, toks[start + 2][1])
        return src, dst

    def parse_sets(toks, lineno, start):
        sets, i = [], start
        while i < len(toks):
            if toks[i][0] != "{":
                err(lineno, toks[i][1], "malformed set literal", expected="'{'")
            i += 1
            members = set()
            while i < len(toks) and toks[i][0] != "}":
                members.add(check("state", toks[i][0], lineno, toks[i][1]))
                i += 1
            if i >= len(toks):
                err(lineno, toks[-1][1], "unterminated set literal", expected="'}'")
            i += 1
            sets.append(frozenset(members))
        return sets

    while cursor < len(lines):
        lineno, line = lines[cursor]
        cursor += 1
        toks = words(lineno, line)
        head, headcol = toks[0]
        if head == "label":
            if len(toks) < 4 or toks[2][0] != "=" or toks[3][0] != "[" or toks[-1][0] != "]":
                err(lineno, headcol, "malformed label line", expected="'label <state> = [atoms...]'")
            state = check("state", toks[1][0], lineno, toks[1][1])
            if state in labels:
                err(lineno, toks[1][1], f"duplicate label line for {state!r}")
            labels[state] = [check("atom", w, lineno, c) for (w, c) in toks[4:-1]]
        elif head == "RX":
            rx.add(parse_arrow(toks, lineno, 1))
        elif head == "RB":
            agent = check("agent", toks[1][0], lineno, toks[1][1])
            rb[agent].add(parse_arrow(toks, lineno, 2))
        elif head in ("RP", "RI"):
            table = rp if head == "RP" else ri
            if len(toks) < 4 or toks[3][0] != "=":
                err(lineno, headcol, f"malformed {head} line",
                    expected=f"'{head} <agent> <state> = {{ ... }}'")
            agent = check("agent", toks[1][0], lineno, toks[1][1])
            state = check("state", toks[2][0], lineno, toks[2][1])
            table[agent].setdefault(state, set()).update(parse_sets(toks, lineno, 4))
        else:
            err(lineno, headcol, f"unknown line {head!r}",
                expected="label/RX/RB/RP/RI")

    missing = [s for s in states if s not in labels]
    if missing:
        err(len(text.splitlines()) + 1, 1, f"missing label line for state {missing[0]!r}")

    return make_model(
        states=states,
        atoms=atoms,
        agents=agents,
        labeling=labels,
        belief=rb,
        temporal=rx,
        pref=rp,
        intent=ri,
    )


def render_model(m: Model) -> str:
    out = [
        " ".join(["states", *m.states]).rstrip(),
        " ".join(["atoms", *m.atoms]).rstrip(),
        " ".join(["agents", *m.agents]).rstrip(),
    ]
    for i, s in enumerate(m.states):
        row = [p for p in m.atoms if p in m.labeling[i]]
        out.append(f"label {s} = [{' '.join(row)}]")
    for (x, y) in sorted(m.temporal):
        out.append(f"RX {m.states[x]} -> {m.states[y]}")
    for a in m.agents:
        for (x, y) in sorted(m.belief[a]):
            out.append(f"RB {a} {m.states[x]} -> {m.states[y]}")
    for table, head in ((m.pref, "RP"), (m.intent, "RI")):
        for a in m.agents:
            for i, s in enumerate(m.states):
                family = table[a][i]
                if not family:
                    continue
                rendered = []
                for member in sorted(family, key=lambda q: tuple(sorted(q))):
                    inner = " ".join(m.states[j] for j in sorted(member))
                    rendered.append("{ " + inner + " }" if inner else "{ }")
                out.append(f"{head} {a} {s} = " + " ".join(rendered))
    return "\n".join(out) + "\n"
