"""Nash equilibria of turn-based games on graphs with incomplete preferences over LTLf goals.

The solver itself lives in :mod:`prefnash.solve` (``from prefnash.solve import solve``).
"""
from .game import load_game, make_game, unroll_horizon
from .ltlf import ltlf_to_dfa, parse_ltlf
from .preference import build_preference_automaton, parse_prefspec
from .product import build_product

__all__ = ["load_game", "make_game", "unroll_horizon", "ltlf_to_dfa", "parse_ltlf",
           "build_preference_automaton", "parse_prefspec", "build_product"]
