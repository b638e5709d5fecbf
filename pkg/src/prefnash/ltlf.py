"""LTLf formulas: parsing, direct finite-trace semantics, progression and DFA compilation.

Formulas are immutable trees. Compilation follows the progression route: every DFA
state is a residual formula kept in a canonical disjunctive form over its
temporal sub-obligations, and the resulting automaton is minimised by partition
refinement.

Concrete syntax, loosest to tightest binding::

    U R          (right associative)
    |
    &
    ! X WX F G   (prefix)
    atoms, true, false, ( ... )

``R`` (release) and ``WX`` (weak next) are the negation duals of ``U`` and ``X``;
they show up in negation normal form and are accepted by the parser so that
every printed formula parses back.

Empty trace convention: a residual accepts the empty remainder when no position
is left, i.e. literals, ``X``, ``U`` and ``F`` are false while ``WX``, ``R`` and
``G`` are true. A nonempty word ``w`` satisfies ``f`` exactly when the DFA
accepts ``w``. The initial state's own acceptance is this convention applied to
``f`` itself and is never exercised by a product game, which always consumes at
least the initial label.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CapacityError, LtlfSyntaxError


class Formula:
    """Base class of LTLf syntax tree nodes."""

    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def __str__(self):
        return f"X {self.arg}"


@dataclass(frozen=True)
class WeakNext(Formula):
    arg: Formula

    def __str__(self):
        return f"WX {self.arg}"


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} U {self.right})"


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} R {self.right})"


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula

    def __str__(self):
        return f"F {self.arg}"


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula

    def __str__(self):
        return f"G {self.arg}"


_UNARY = {"!": Not, "~": Not, "X": Next, "WX": WeakNext, "F": Eventually, "G": Always}
_BINARY_TEMPORAL = {"U": Until, "R": Release}
_KEYWORDS = {"X", "WX", "F", "G", "U", "R", "true", "false"}


def atoms(f: Formula) -> frozenset:
    """Names of all atomic propositions occurring in ``f``."""
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Const):
        return frozenset()
    if hasattr(f, "arg"):
        return atoms(f.arg)
    return atoms(f.left) | atoms(f.right)


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(!|~|&|\||\(|\)))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise LtlfSyntaxError(f"unknown token {text[bad]!r}", bad)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what):
        tok, pos = self.tokens[self.i]
        if tok is None:
            raise LtlfSyntaxError(f"{what}: unexpected end of input", pos)
        raise LtlfSyntaxError(f"{what}: unexpected token {tok!r}", pos)

    def parse(self):
        f = self.temporal()
        if self.peek() is not None:
            self.fail("expected end of formula")
        return f

    def temporal(self):
        left = self.disjunction()
        if self.peek() in _BINARY_TEMPORAL:
            op = _BINARY_TEMPORAL[self.take()[0]]
            return op(left, self.temporal())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok in _UNARY:
            self.take()
            return _UNARY[tok](self.unary())
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.temporal()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok is not None and tok not in _KEYWORDS and re.fullmatch(r"[A-Za-z_]\w*", tok):
            self.take()
            return Atom(tok)
        self.fail("expected an operand")


def parse_ltlf(text: str) -> Formula:
    """Parse LTLf concrete syntax into a formula tree.

    >>> parse_ltlf("(!d1 & !d3) U d2")
    Until(left=And(left=Not(arg=Atom(name='d1')), right=Not(arg=Atom(name='d3'))), right=Atom(name='d2'))
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Direct semantics (the reference the compiler is checked against)

def holds(f: Formula, word: Sequence, i: int = 0) -> bool:
    """Evaluate ``f`` at position ``i`` of a nonempty finite word.

    Letters are collections of atom names that are true at that position.
    """
    n = len(word)
    if isinstance(f, Atom):
        return f.name in word[i]
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not holds(f.arg, word, i)
    if isinstance(f, And):
        return holds(f.left, word, i) and holds(f.right, word, i)
    if isinstance(f, Or):
        return holds(f.left, word, i) or holds(f.right, word, i)
    if isinstance(f, Next):
        return i + 1 < n and holds(f.arg, word, i + 1)
    if isinstance(f, WeakNext):
        return i + 1 >= n or holds(f.arg, word, i + 1)
    if isinstance(f, Eventually):
        return any(holds(f.arg, word, j) for j in range(i, n))
    if isinstance(f, Always):
        return all(holds(f.arg, word, j) for j in range(i, n))
    if isinstance(f, Until):
        for j in range(i, n):
            if holds(f.right, word, j):
                return True
            if not holds(f.left, word, j):
                return False
        return False
    if isinstance(f, Release):
        for j in range(i, n):
            if not holds(f.right, word, j):
                return False
            if holds(f.left, word, j):
                return True
        return True
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Negation normal form and canonical residuals

_DUAL = {Next: WeakNext, WeakNext: Next, Until: Release, Release: Until,
         Eventually: Always, Always: Eventually}


def to_nnf(f: Formula, negate: bool = False) -> Formula:
    """Push negations down to atoms, using the temporal duals."""
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Const):
        return Const(f.value != negate)
    if isinstance(f, Not):
        return to_nnf(f.arg, not negate)
    if isinstance(f, (And, Or)):
        op = type(f)
        if negate:
            op = Or if op is And else And
        return op(to_nnf(f.left, negate), to_nnf(f.right, negate))
    op = _DUAL[type(f)] if negate else type(f)
    if hasattr(f, "arg"):
        return op(to_nnf(f.arg, negate))
    return op(to_nnf(f.left, negate), to_nnf(f.right, negate))


# A residual is a DNF: frozenset of clauses, each a frozenset of elementary
# NNF formulas (literals or formulas with a temporal top operator).
DNF_TRUE = frozenset([frozenset()])
DNF_FALSE = frozenset()


def _is_literal(e):
    return isinstance(e, Atom) or (isinstance(e, Not) and isinstance(e.arg, Atom))


def _complement(e):
    return e.arg if isinstance(e, Not) else Not(e)


def _normalize(clauses):
    kept = []
    for c in clauses:
        if any(_is_literal(e) and _complement(e) in c for e in c):
            continue
        kept.append(c)
    # absorption: drop clauses that strictly contain another clause
    kept = set(kept)
    out = [c for c in kept if not any(o < c for o in kept)]
    return frozenset(out)


def _dnf_or(a, b):
    return _normalize(a | b)


def _dnf_and(a, b):
    return _normalize(frozenset(x | y for x in a for y in b))


@lru_cache(maxsize=None)
def to_dnf(f: Formula) -> frozenset:
    """Canonical DNF of an NNF formula over its elementary sub-obligations."""
    if isinstance(f, Const):
        return DNF_TRUE if f.value else DNF_FALSE
    if isinstance(f, And):
        return _dnf_and(to_dnf(f.left), to_dnf(f.right))
    if isinstance(f, Or):
        return _dnf_or(to_dnf(f.left), to_dnf(f.right))
    return frozenset([frozenset([f])])


# Residual side conditions on the remaining suffix: "F true" holds iff a position
# remains, "G false" iff none does (given the empty-trace convention below).
_SOME_LEFT = frozenset([frozenset([Eventually(TRUE)])])
_NONE_LEFT = frozenset([frozenset([Always(FALSE)])])


@lru_cache(maxsize=None)
def _progress_elem(e, letter):
    if isinstance(e, Atom):
        return DNF_TRUE if e.name in letter else DNF_FALSE
    if isinstance(e, Not):
        return DNF_FALSE if e.arg.name in letter else DNF_TRUE
    if isinstance(e, Next):
        return _dnf_and(to_dnf(e.arg), _SOME_LEFT)
    if isinstance(e, WeakNext):
        return _dnf_or(to_dnf(e.arg), _NONE_LEFT)
    self_ = frozenset([frozenset([e])])
    if isinstance(e, Eventually):
        return _dnf_or(_progress_nnf(e.arg, letter), self_)
    if isinstance(e, Always):
        return _dnf_and(_progress_nnf(e.arg, letter), self_)
    if isinstance(e, Until):
        return _dnf_or(_progress_nnf(e.right, letter),
                       _dnf_and(_progress_nnf(e.left, letter), self_))
    if isinstance(e, Release):
        return _dnf_and(_progress_nnf(e.right, letter),
                        _dnf_or(_progress_nnf(e.left, letter), self_))
    raise TypeError(f"not an elementary NNF formula: {e!r}")


def _progress_nnf(f, letter):
    return progress_dnf(to_dnf(f), letter)


@lru_cache(maxsize=None)
def progress_dnf(d: frozenset, letter: frozenset) -> frozenset:
    out = DNF_FALSE
    for clause in d:
        acc = DNF_TRUE
        for e in clause:
            acc = _dnf_and(acc, _progress_elem(e, letter))
            if not acc:
                break
        out = _dnf_or(out, acc)
        if out == DNF_TRUE:
            break
    return out


def _accepts_empty_elem(e):
    return isinstance(e, (WeakNext, Release, Always))


def accepts_empty(d: frozenset) -> bool:
    """Whether a residual holds when no trace positions remain."""
    return any(all(_accepts_empty_elem(e) for e in c) for c in d)


def _chain(op, parts):
    f = parts[-1]
    for p in reversed(parts[:-1]):
        f = op(p, f)
    return f


def dnf_to_formula(d: frozenset) -> Formula:
    if not d:
        return FALSE
    clauses = []
    for c in d:
        if not c:
            return TRUE
        clauses.append(_chain(And, sorted(c, key=str)))
    return _chain(Or, sorted(clauses, key=str))


def _as_letter(letter):
    return letter if isinstance(letter, frozenset) else frozenset(letter)


def progress(f: Formula, letter: Iterable[str]) -> Formula:
    """Residual of ``f`` after reading one letter, in canonical simplified form.

    For a word ``s + rest`` with ``rest`` nonempty, ``s + rest`` satisfies ``f``
    iff ``rest`` satisfies ``progress(f, s)``.
    """
    return dnf_to_formula(progress_dnf(to_dnf(to_nnf(f)), _as_letter(letter)))


# ---------------------------------------------------------------------------
# DFAs

def letter_mask(ap: Sequence[str], letter) -> int:
    """Bitmask of a letter given as an int or as a collection of atom names."""
    if isinstance(letter, int):
        return letter
    index = {p: i for i, p in enumerate(ap)}
    mask = 0
    for p in letter:
        mask |= 1 << index[p]
    return mask


def mask_atoms(ap: Sequence[str], mask: int) -> frozenset:
    return frozenset(p for i, p in enumerate(ap) if mask >> i & 1)


@dataclass(frozen=True)
class Dfa:
    """Complete DFA over the alphabet ``2^ap``; letters are bitmasks over ``ap``."""

    ap: tuple
    n_states: int
    initial: int
    accepting: frozenset
    delta: tuple  # delta[state][letter] -> state

    @property
    def n_letters(self):
        return 1 << len(self.ap)

    def step(self, q, letter):
        return self.delta[q][letter_mask(self.ap, letter)]

    def run(self, word, q=None):
        q = self.initial if q is None else q
        for letter in word:
            q = self.step(q, letter)
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    def to_json(self) -> dict:
        delta = [[q, a, self.delta[q][a]] for q in range(self.n_states)
                 for a in range(self.n_letters)]
        return {"ap": list(self.ap), "states": self.n_states, "initial": self.initial,
                "accepting": sorted(self.accepting), "delta": delta}

    @classmethod
    def from_json(cls, doc: dict) -> "Dfa":
        n = doc["states"]
        ap = tuple(doc["ap"])
        table = [[None] * (1 << len(ap)) for _ in range(n)]
        for q, a, r in doc["delta"]:
            table[q][a] = r
        if any(r is None for row in table for r in row):
            raise ValueError("transition function is not total")
        return cls(ap, n, doc["initial"], frozenset(doc["accepting"]),
                   tuple(tuple(row) for row in table))

    def to_dot(self, name="dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __init [shape=point, label=""];']
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f'  {q} [shape={shape}, label="{q}"];')
        lines.append(f"  __init -> {self.initial};")
        lines.extend(_dot_edges(self.ap, self.delta))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _letter_str(ap, mask):
    return "{" + ",".join(p for i, p in enumerate(ap) if mask >> i & 1) + "}"


def _dot_edges(ap, delta):
    lines = []
    for q, row in enumerate(delta):
        grouped = {}
        for a, r in enumerate(row):
            grouped.setdefault(r, []).append(a)
        for r in sorted(grouped):
            label = ", ".join(_letter_str(ap, a) for a in grouped[r])
            lines.append(f'  {q} -> {r} [label="{label}"];')
    return lines


def dfa_accepts(d: Dfa, word) -> bool:
    """Run ``word`` from the initial state; the empty word stays at the initial state."""
    return d.accepts(word)


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement, then renumbering in breadth-first order."""
    block = [1 if q in d.accepting else 0 for q in range(d.n_states)]
    n_blocks = len(set(block))
    while True:
        sigs = {}
        new_block = []
        for q in range(d.n_states):
            sig = (block[q],) + tuple(block[r] for r in d.delta[q])
            new_block.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == n_blocks:
            break
        block, n_blocks = new_block, len(sigs)
    rep = {}
    for q in range(d.n_states):
        rep.setdefault(block[q], q)
    quotient = {b: tuple(block[r] for r in d.delta[q]) for b, q in rep.items()}
    return _renumber(d.ap, block[d.initial], quotient,
                     {block[q] for q in d.accepting})


def _renumber(ap, initial, table, accepting):
    order = {initial: 0}
    queue = [initial]
    for s in queue:
        for r in table[s]:
            if r not in order:
                order[r] = len(order)
                queue.append(r)
    delta = [None] * len(order)
    for s, i in order.items():
        delta[i] = tuple(order[r] for r in table[s])
    return Dfa(tuple(ap), len(order), 0,
               frozenset(order[s] for s in accepting if s in order), tuple(delta))


def ltlf_to_dfa(f: Formula, ap: Sequence[str], max_states: int = 10_000,
                minimal: bool = True) -> Dfa:
    """Compile ``f`` into a complete DFA over ``2^ap`` via formula progression."""
    ap = tuple(ap)
    missing = atoms(f) - set(ap)
    if missing:
        raise ValueError(f"atoms {sorted(missing)} are not in the declared AP {list(ap)}")
    letters = [mask_atoms(ap, m) for m in range(1 << len(ap))]
    start = to_dnf(to_nnf(f))
    index = {start: 0}
    residuals = [start]
    table = {}
    for i, d in enumerate(residuals):
        row = []
        for letter in letters:
            nxt = progress_dnf(d, letter)
            if nxt not in index:
                if len(index) >= max_states:
                    raise CapacityError(f"DFA for {f} exceeds {max_states} states")
                index[nxt] = len(residuals)
                residuals.append(nxt)
            row.append(index[nxt])
        table[i] = tuple(row)
    accepting = {i for i, d in enumerate(residuals) if accepts_empty(d)}
    raw = _renumber(ap, 0, table, accepting)
    return minimize(raw) if minimal else raw


def dfa_to_json_text(d: Dfa) -> str:
    return json.dumps(d.to_json(), sort_keys=True)
