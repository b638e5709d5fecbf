"""Seeded random small instances for property and oracle tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .game import GameGraph
from .preference import PreferenceAutomaton
from .preorder import Preorder, transitive_closure
from .product import ProductGame, build_product
from .solve import Alignment, classify_alignment

ALIGNMENT_MODES = ("aligned", "opposite", "partial")


def random_preorder(rng: np.random.Generator, n: int, density=None) -> Preorder:
    """Close a random relation; ``density`` is the chance each ordered pair is drawn."""
    density = rng.uniform(0.05, 0.5) if density is None else density
    m = rng.random((n, n)) < density
    np.fill_diagonal(m, True)
    return Preorder(range(n), transitive_closure(m))


def random_dag_game(rng: np.random.Generator, n_states: int, ap=("a", "b"),
                    max_actions: int = 3, p_sink: float = 0.25) -> GameGraph:
    """Random game graph whose transitions only go to higher-numbered states."""
    owner = [int(rng.integers(1, 3)) for _ in range(n_states)]
    labels = [int(rng.integers(0, 1 << len(ap))) for _ in range(n_states)]
    names = [f"s{i}" for i in range(n_states)]
    action_names = [f"a{k}" for k in range(max_actions)] + [f"b{k}" for k in range(max_actions)]
    action_owner = [1] * max_actions + [2] * max_actions
    succ = []
    for s in range(n_states):
        later = n_states - 1 - s
        if later == 0 or (s > 0 and rng.random() < p_sink):
            succ.append([])
            continue
        k = int(rng.integers(1, min(max_actions, later) + 1))
        targets = rng.choice(np.arange(s + 1, n_states), size=k, replace=True)
        base = 0 if owner[s] == 1 else max_actions
        succ.append([(base + i, int(t)) for i, t in enumerate(targets)])
    return GameGraph(tuple(ap), names, owner, labels, action_names, action_owner,
                     [1] * len(action_names), succ, 0)


def random_semi_automaton(rng: np.random.Generator, n_q: int, n_letters: int) -> tuple:
    return tuple(tuple(int(x) for x in rng.integers(0, n_q, size=n_letters)) for _ in range(n_q))


@dataclass
class Instance:
    game: GameGraph
    p1: PreferenceAutomaton
    p2: PreferenceAutomaton
    product: ProductGame
    mode: str
    alignment: Alignment
    seed: int


def random_instance(seed: int, mode=None, max_product_states: int = 12, max_q: int = 6,
                    max_actions: int = 3, max_profiles: int = 50_000, min_sinks: int = 2,
                    tries: int = 200) -> Instance:
    """A random sink-terminating product within the given bounds.

    ``mode`` picks how the second preorder relates to the first: equal
    ("aligned"), inverse ("opposite") or independent ("partial"). The reported
    ``alignment`` is the class found on the materialised product.
    """
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        m = mode or ALIGNMENT_MODES[int(rng.integers(0, 3))]
        n_ap = int(rng.integers(1, 3))
        ap = ("a", "b")[:n_ap]
        g = random_dag_game(rng, int(rng.integers(4, 11)), ap, max_actions, p_sink=0.15)
        n_q = int(rng.integers(1, max_q + 1))
        delta = random_semi_automaton(rng, n_q, 1 << n_ap)
        e1 = random_preorder(rng, n_q)
        if m == "aligned":
            e2 = e1
        elif m == "opposite":
            e2 = e1.inverse()
        else:
            e2 = random_preorder(rng, n_q)
        p1 = PreferenceAutomaton.from_parts(ap, 0, delta, e1)
        p2 = PreferenceAutomaton.from_parts(ap, 0, delta, e2)
        try:
            h = build_product(g, p1, p2, max_states=max_product_states)
        except CapacityError:
            continue
        n_profiles = 1
        for v in range(h.n_states):
            n_profiles *= max(1, len(h.succ[v]))
        if n_profiles > max_profiles or len(h.sinks) < min_sinks:
            continue
        return Instance(g, p1, p2, h, m, classify_alignment(h), seed)
    raise RuntimeError(f"no instance within bounds after {tries} tries (seed {seed})")


def instance_suite(seed: int, per_class: int = 70, max_draws: int = 20_000) -> list:
    """At least ``per_class`` instances of every alignment class found on the product.

    Draws cycle through the generation modes; instances of a class that is
    already full are skipped. Reproducible from ``seed``.
    """
    counts = {a: 0 for a in Alignment}
    out = []
    for k in range(max_draws):
        inst = random_instance(seed * 1_000_003 + k, ALIGNMENT_MODES[k % len(ALIGNMENT_MODES)])
        if counts[inst.alignment] >= per_class:
            continue
        counts[inst.alignment] += 1
        out.append(inst)
        if min(counts.values()) >= per_class:
            return out
    raise RuntimeError(f"class quota not met after {max_draws} draws: {counts}")


def random_formula(rng: np.random.Generator, depth: int, ap=("a", "b", "c")):
    """Random LTLf formula of nesting depth at most ``depth`` over the given atoms."""
    from . import ltlf

    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return ltlf.TRUE if rng.random() < 0.5 else ltlf.FALSE
        return ltlf.Atom(str(ap[int(rng.integers(0, len(ap)))]))
    unary = (ltlf.Not, ltlf.Next, ltlf.WeakNext, ltlf.Eventually, ltlf.Always)
    binary = (ltlf.And, ltlf.Or, ltlf.Until, ltlf.Release)
    if rng.random() < 0.45:
        op = unary[int(rng.integers(0, len(unary)))]
        return op(random_formula(rng, depth - 1, ap))
    op = binary[int(rng.integers(0, len(binary)))]
    return op(random_formula(rng, depth - 1, ap), random_formula(rng, depth - 1, ap))
