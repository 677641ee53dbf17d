"""Exact solvers and verification harness for the competition-enclaveless game."""

from .game import GameKind, GameOutcome, GameSolver, Position, Side, apply_move, legal_moves, solve
from .graph import CapExceeded, Graph, GraphError, build_graph
from .invariants import InvariantReport, compute_invariants

__all__ = [
    "CapExceeded",
    "GameKind",
    "GameOutcome",
    "GameSolver",
    "Graph",
    "GraphError",
    "InvariantReport",
    "Position",
    "Side",
    "apply_move",
    "build_graph",
    "compute_invariants",
    "legal_moves",
    "solve",
]
