"""PrefLTLf specifications and preference automata.

A specification lists LTLf alternatives and atomic comparisons between them. The
comparisons are closed into a preorder over the alternatives plus a synthetic
``BOTTOM`` element standing for "no alternative satisfied". The preference
automaton runs all alternatives' DFAs in lockstep; each state records which
alternatives are currently satisfied, and state ``q`` is weakly preferred to
``q'`` when every maximal alternative satisfied at ``q'`` is weakly beaten by
some maximal alternative satisfied at ``q``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import ltlf
from .errors import CapacityError, InconsistentPreferenceError, LtlfSyntaxError, PrefSpecError
from .preorder import Comparison, Preorder, maximal, rank_map, transitive_closure

BOTTOM = -1
EMPTY_POLICIES = ("bottom", "top", "incomparable")

OPERATORS = {">=": "weak", ">": "strict", "~": "indifferent", "<>": "incomparable"}


@dataclass(frozen=True)
class PrefSpec:
    alternatives: tuple
    constraints: tuple  # of (op, i, j) with op in OPERATORS

    def __post_init__(self):
        n = len(self.alternatives)
        for op, i, j in self.constraints:
            if op not in OPERATORS:
                raise PrefSpecError(f"unknown preference operator {op!r}")
            for k in (i, j):
                if not 0 <= k < n:
                    raise PrefSpecError(f"constraint {op} {i} {j}: index {k} out of range 0..{n - 1}")
            if op in (">", "<>") and i == j:
                raise PrefSpecError(f"constraint {op} {i} {j} relates an alternative to itself")

    def atoms(self) -> list:
        names = set()
        for f in self.alternatives:
            names |= ltlf.atoms(f)
        return sorted(names)

    def to_text(self) -> str:
        lines = [f"prefltlf {len(self.alternatives)}"]
        lines += [str(f) for f in self.alternatives]
        lines += [f"{op} {i} {j}" for op, i, j in self.constraints]
        return "\n".join(lines) + "\n"


def parse_prefspec(text: str) -> PrefSpec:
    """Parse the line-oriented PrefLTLf format.

    Line 1 is ``prefltlf <N>``, the next N lines are formulas (indexed from 0) and
    the rest are ``<op> <i> <j>`` constraints. ``#`` starts a comment; blank lines
    are skipped.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise PrefSpecError("empty specification")
    lineno, header = lines[0]
    m = re.fullmatch(r"prefltlf\s+(\d+)", header)
    if m is None:
        raise PrefSpecError(f"line {lineno}: expected 'prefltlf <N>' header")
    n = int(m.group(1))
    if len(lines) < n + 1:
        raise PrefSpecError(f"header announces {n} formulas but only {len(lines) - 1} lines follow")
    formulas = []
    for lineno, body in lines[1:n + 1]:
        try:
            formulas.append(ltlf.parse_ltlf(body))
        except LtlfSyntaxError as exc:
            raise PrefSpecError(f"line {lineno}: {exc}") from exc
    constraints = []
    for lineno, body in lines[n + 1:]:
        parts = body.split()
        if len(parts) != 3 or parts[0] not in OPERATORS:
            raise PrefSpecError(f"line {lineno}: expected '<op> <i> <j>' with op in {list(OPERATORS)}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise PrefSpecError(f"line {lineno}: indices must be integers") from None
        constraints.append((parts[0], i, j))
    return PrefSpec(tuple(formulas), tuple(constraints))


def close_constraints(spec: PrefSpec, empty_policy: str = "bottom") -> Preorder:
    """Close the atomic comparisons into a preorder over alternative indices and ``BOTTOM``.

    Raises :class:`InconsistentPreferenceError` when the closure forces a pair
    that a strict or incomparability constraint forbids.
    """
    if empty_policy not in EMPTY_POLICIES:
        raise ValueError(f"empty_policy must be one of {EMPTY_POLICIES}")
    n = len(spec.alternatives)
    elements = list(range(n)) + [BOTTOM]
    bot = n
    m = np.eye(n + 1, dtype=bool)
    forbidden = []  # (i, j, reason) meaning i >= j must NOT hold
    for op, i, j in spec.constraints:
        reason = f"{op} {i} {j}"
        if op in (">=", ">", "~"):
            m[i, j] = True
        if op == "~":
            m[j, i] = True
        if op == ">":
            forbidden.append((j, i, reason))
        if op == "<>":
            forbidden.append((i, j, reason))
            forbidden.append((j, i, reason))
    for i in range(n):
        if empty_policy == "bottom":
            m[i, bot] = True
            forbidden.append((bot, i, f"empty_policy=bottom ({i} > bottom)"))
        elif empty_policy == "top":
            m[bot, i] = True
            forbidden.append((i, bot, f"empty_policy=top (bottom > {i})"))
        else:
            forbidden.append((i, bot, "empty_policy=incomparable"))
            forbidden.append((bot, i, "empty_policy=incomparable"))
    m = transitive_closure(m)
    for i, j, reason in forbidden:
        if m[i, j]:
            a = "bottom" if i == bot else f"alternative {i}"
            b = "bottom" if j == bot else f"alternative {j}"
            raise InconsistentPreferenceError(
                f"inconsistent preference: closure forces {a} >= {b}, contradicting {reason}",
                constraint=reason)
    return Preorder(elements, m)


# ---------------------------------------------------------------------------
# Preference automata

@dataclass
class PreferenceAutomaton:
    """A deterministic semi-automaton over ``2^ap`` whose states carry a preorder."""

    ap: tuple
    initial: int
    delta: tuple  # delta[q][letter] -> q'
    preorder: Preorder  # over range(n_states)
    sat: tuple = ()  # sat[q]: frozenset of satisfied alternative indices
    alternatives: tuple = ()
    alternative_order: Optional[Preorder] = None
    empty_policy: Optional[str] = None

    @property
    def n_states(self):
        return len(self.delta)

    @classmethod
    def from_parts(cls, ap, initial, delta, preorder: Preorder, sat=()):
        delta = tuple(tuple(row) for row in delta)
        if preorder.elements != tuple(range(len(delta))):
            raise ValueError("preorder carrier must be range(n_states)")
        return cls(tuple(ap), initial, delta, preorder, tuple(sat))

    def semi_automaton(self):
        """The part shared by both players' automata: alphabet, initial state, transitions."""
        return self.ap, self.initial, self.delta

    def step(self, q, letter):
        return self.delta[q][ltlf.letter_mask(self.ap, letter)]

    def run(self, word, q=None):
        q = self.initial if q is None else q
        for letter in word:
            q = self.step(q, letter)
        return q

    def to_json(self) -> dict:
        delta = [[q, a, r] for q, row in enumerate(self.delta) for a, r in enumerate(row)]
        pairs = sorted([int(a), int(b)] for a, b in self.preorder.pairs())
        return {"ap": list(self.ap), "states": self.n_states, "initial": self.initial,
                "delta": delta, "sat": [sorted(s) for s in self.sat],
                "preorder": pairs}

    @classmethod
    def from_json(cls, doc):
        n = doc["states"]
        ap = tuple(doc["ap"])
        table = [[None] * (1 << len(ap)) for _ in range(n)]
        for q, a, r in doc["delta"]:
            table[q][a] = r
        pre = Preorder.from_pairs(range(n), [tuple(p) for p in doc["preorder"]], close=False)
        return cls.from_parts(ap, doc["initial"], table, pre,
                              [frozenset(s) for s in doc.get("sat", [])])


def _sat_product(dfas, max_states):
    n_letters = dfas[0].n_letters if dfas else 1
    start = tuple(d.initial for d in dfas)
    index = {start: 0}
    states = [start]
    table = []
    for comp in states:
        row = []
        for a in range(n_letters):
            nxt = tuple(d.delta[c][a] for d, c in zip(dfas, comp))
            if nxt not in index:
                if len(index) >= max_states:
                    raise CapacityError(f"preference automaton exceeds {max_states} states")
                index[nxt] = len(states)
                states.append(nxt)
            row.append(index[nxt])
        table.append(row)
    sat = [frozenset(i for i, (d, c) in enumerate(zip(dfas, comp)) if c in d.accepting)
           for comp in states]
    return table, sat


def _merge_equivalent(table, sat):
    """Quotient by states with identical satisfaction futures; renumber breadth-first."""
    labels = {}
    block = [labels.setdefault(s, len(labels)) for s in sat]
    n_blocks = len(labels)
    while True:
        sigs = {}
        new = [sigs.setdefault((block[q],) + tuple(block[r] for r in table[q]), len(sigs))
               for q in range(len(table))]
        if len(sigs) == n_blocks:
            break
        block, n_blocks = new, len(sigs)
    rep = {}
    for q in range(len(table)):
        rep.setdefault(block[q], q)
    order = {block[0]: 0}
    queue = [block[0]]
    for b in queue:
        for r in table[rep[b]]:
            if block[r] not in order:
                order[block[r]] = len(order)
                queue.append(block[r])
    delta = [None] * len(order)
    new_sat = [None] * len(order)
    for b, i in order.items():
        delta[i] = tuple(order[block[r]] for r in table[rep[b]])
        new_sat[i] = sat[rep[b]]
    return tuple(delta), tuple(new_sat)


def induced_state_preorder(sat: Sequence[frozenset], closed: Preorder) -> Preorder:
    """Compare states through the maximal alternatives they satisfy (``BOTTOM`` if none)."""
    tops = []
    for s in sat:
        tops.append(maximal(s, closed) if s else [BOTTOM])
    n = len(sat)
    m = np.zeros((n, n), dtype=bool)
    for q in range(n):
        for r in range(n):
            m[q, r] = all(any(closed.geq(i, j) for i in tops[q]) for j in tops[r])
    return Preorder(range(n), m)


def build_preference_automaton(spec: PrefSpec, ap: Optional[Sequence[str]] = None,
                               empty_policy: str = "bottom",
                               max_states: int = 10_000) -> PreferenceAutomaton:
    """Compile a specification into a preference automaton over ``2^ap``.

    The semi-automaton depends only on the alternatives and ``ap``, so two
    specifications over the same alternatives share it exactly.
    """
    closed = close_constraints(spec, empty_policy)
    ap = tuple(spec.atoms() if ap is None else ap)
    dfas = [ltlf.ltlf_to_dfa(f, ap, max_states=max_states) for f in spec.alternatives]
    if not dfas:
        dfas = [ltlf.ltlf_to_dfa(ltlf.TRUE, ap)]
        table, _ = _sat_product(dfas, max_states)
        sat = [frozenset()] * len(table)
    else:
        table, sat = _sat_product(dfas, max_states)
    delta, sat = _merge_equivalent(table, sat)
    pre = induced_state_preorder(sat, closed)
    return PreferenceAutomaton(ap, 0, delta, pre, sat, tuple(spec.alternatives), closed,
                               empty_policy)


def compare_words(p: PreferenceAutomaton, w, w2) -> Comparison:
    """Compare two finite words by the automaton states they reach."""
    return p.preorder.compare(p.run(w), p.run(w2))


# ---------------------------------------------------------------------------
# Preference graph

@dataclass
class PreferenceGraph:
    nodes: list  # node id -> sorted list of automaton states (one indifference class)
    edges: list  # (x, y): every state of node y is strictly preferred to node x
    node_of: dict = field(default_factory=dict)

    def to_dot(self, name="preference_graph") -> str:
        lines = [f"digraph {name} {{"]
        for i, members in enumerate(self.nodes):
            lines.append(f'  n{i} [shape=box, label="{i}: {{{", ".join(map(str, members))}}}"];')
        for x, y in self.edges:
            lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def preference_graph(p: PreferenceAutomaton, transitive_reduction: bool = True) -> PreferenceGraph:
    """Condense the state preorder into indifference classes.

    Nodes are numbered by rank (rank 0 first), ties broken by smallest member.
    An edge ``x -> y`` means the states of ``y`` are strictly preferred.
    """
    pre = p.preorder
    classes = pre.classes()
    ranks = rank_map(pre).ranks
    classes.sort(key=lambda c: (ranks[c[0]], min(c)))
    node_of = {q: i for i, c in enumerate(classes) for q in c}
    reps = [c[0] for c in classes]
    k = len(reps)
    strict = np.array([[pre.strictly(reps[y], reps[x]) for y in range(k)] for x in range(k)],
                      dtype=bool).reshape(k, k)
    keep = strict.copy()
    if transitive_reduction:
        for x in range(k):
            for y in range(k):
                if strict[x, y] and any(strict[x, z] and strict[z, y] for z in range(k)):
                    keep[x, y] = False
    edges = [(x, y) for x in range(k) for y in range(k) if keep[x, y]]
    return PreferenceGraph([sorted(c) for c in classes], edges, node_of)


def automaton_to_dot(p: PreferenceAutomaton) -> str:
    """Semi-automaton and preference graph as two digraphs in one DOT document."""
    lines = ["digraph semi_automaton {", "  rankdir=LR;", '  __init [shape=point, label=""];']
    for q in range(p.n_states):
        sat = ",".join(map(str, sorted(p.sat[q]))) if p.sat else ""
        lines.append(f'  {q} [shape=circle, label="{q}", tooltip="sat={{{sat}}}"];')
    lines.append(f"  __init -> {p.initial};")
    lines.extend(ltlf._dot_edges(p.ap, p.delta))
    lines.append("}")
    return "\n".join(lines) + "\n" + preference_graph(p).to_dot()


def automaton_to_json_text(p: PreferenceAutomaton) -> str:
    return json.dumps(p.to_json(), sort_keys=True)
