"""Scripted strategies and one-sided minimax against them.

A scripted side follows a fixed move selector while the other side plays
perfectly against it, so the simulated length bounds the true game value:
from below when the script plays the maximizing side, from above otherwise.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable

from .families import parse_corona_label
from .game import GameKind, Position, Side, apply_move, initial_position, legal_moves, parse_kind, parse_side
from .graph import CapExceeded, Graph, bits

log = logging.getLogger(__name__)


class StrategyError(ValueError):
    """The strategy cannot run on this graph (missing or malformed labels)."""


class StrategyFault(RuntimeError):
    """The strategy picked a vertex that is not a legal move."""

    def __init__(self, position: Position, vertex: int):
        super().__init__(f"strategy chose illegal vertex {vertex} after moves {list(position.history)}")
        self.position = position
        self.vertex = vertex


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Strategy:
    name = "strategy"

    def __init__(self, g: Graph):
        self.graph = g
        self.fallbacks: list[tuple[int, ...]] = []

    def select(self, p: Position) -> int:
        raise NotImplementedError

    def memory(self, p: Position) -> Hashable:
        """Everything beyond the played set that ``select`` depends on."""
        return None

    def _fallback(self, p: Position, legal: int) -> int:
        v = _lowest(legal)
        self.fallbacks.append(p.history)
        log.info("%s fallback after %s -> %d", self.name, list(p.history), v)
        return v


class GreedyStrategy(Strategy):
    """Always play the lowest-id legal vertex."""

    name = "greedy"

    def select(self, p: Position) -> int:
        return _lowest(legal_moves(p))


_RING_LABEL = re.compile(r"^(?:([xy])(\d+)|h(\d+)\.(\d+))$")


class ConnectorStrategy(Strategy):
    """Maximizer's connector play on the connector ring.

    Answer a move in block ``j`` with a playable connector of ``j``, else a
    playable hidden vertex of ``j``, else a playable connector anywhere, else
    the lowest playable vertex.
    """

    name = "connector"

    def __init__(self, g: Graph):
        super().__init__(g)
        self.block_of: dict[int, int] = {}
        connectors: dict[int, int] = {}
        hidden: dict[int, int] = {}
        for v in range(g.n):
            m = _RING_LABEL.match(g.labels.get(v, ""))
            if not m:
                raise StrategyError(f"vertex {v} lacks a connector-ring label")
            if m.group(1):
                i = int(m.group(2))
                connectors[i] = connectors.get(i, 0) | 1 << v
            else:
                i = int(m.group(3))
                hidden[i] = hidden.get(i, 0) | 1 << v
            self.block_of[v] = i
        if any(c.bit_count() != 2 for c in connectors.values()) or set(connectors) != set(hidden):
            raise StrategyError("every block needs two connectors and some hidden vertices")
        self.connectors = connectors
        self.hidden = hidden
        self.all_connectors = sum(connectors.values())

    def memory(self, p: Position) -> Hashable:
        return self.block_of[p.history[-1]] if p.history else None

    def select(self, p: Position) -> int:
        legal = legal_moves(p)
        if p.history:
            j = self.block_of[p.history[-1]]
            for pool in (self.connectors[j], self.hidden[j]):
                if legal & pool:
                    return _lowest(legal & pool)
        if legal & self.all_connectors:
            return _lowest(legal & self.all_connectors)
        return _lowest(legal)


@dataclass
class _Block:
    opener: int | None = None
    opened_by_dominator: bool = False
    reply_leaf: int | None = None
    dominator_moves: int = 0

    def key(self) -> tuple:
        return (self.opened_by_dominator, self.reply_leaf, min(self.dominator_moves, 3))


class StallerBlockStrategy(Strategy):
    """Staller's block play on the corona of P_{10q} in the Dominator-start game.

    When Dominator opens block ``B_k`` at index ``10k+1..10k+5`` Staller answers
    ``y_{10k+8}``; at ``10k+6..10k+10`` the answer is ``y_{10k+3}``. On
    Dominator's second move inside a block Staller takes the support vertex of
    the leaf used to answer the opening. Anything else is a logged fallback to the
    lowest-id legal vertex.
    """

    name = "staller-block"

    def __init__(self, g: Graph):
        super().__init__(g)
        self.x: dict[int, int] = {}
        self.y: dict[int, int] = {}
        self.index: dict[int, int] = {}
        self.block_of: dict[int, int] = {}
        for v in range(g.n):
            try:
                side, i, block = parse_corona_label(g.labels.get(v, ""))
            except ValueError:
                raise StrategyError(f"vertex {v} lacks a corona-path label") from None
            if block is None:
                raise StrategyError("corona path needs 10 | n for the block strategy")
            (self.x if side == "x" else self.y)[i] = v
            self.index[v] = i
            self.block_of[v] = block
        if len(self.x) != len(self.y) or len(self.x) % 10:
            raise StrategyError("labels do not describe the corona of P_{10q}")
        self.leaves = frozenset(self.y.values())

    def _blocks(self, p: Position) -> dict[int, _Block]:
        blocks: dict[int, _Block] = {}
        side = p.starter
        prev: tuple[int, int] | None = None  # (block, ply) of the latest opening move
        for ply, v in enumerate(p.history):
            k = self.block_of[v]
            b = blocks.setdefault(k, _Block())
            if b.opener is None:
                b.opener = v
                b.opened_by_dominator = side is Side.MIN
                prev = (k, ply)
            elif prev == (k, ply - 1) and side is Side.MAX and v in self.leaves:
                b.reply_leaf = self.index[v]
            if side is Side.MIN:
                b.dominator_moves += 1
            side = side.other
        return blocks

    def memory(self, p: Position) -> Hashable:
        blocks = self._blocks(p)
        last = p.history[-1] if p.history and p.mover is Side.MAX else None
        return last, tuple(sorted((k, b.key()) for k, b in blocks.items()))

    def select(self, p: Position) -> int:
        legal = legal_moves(p)
        if p.kind is not GameKind.DOMINATION or not p.history:
            return self._fallback(p, legal)
        d = p.history[-1]
        k = self.block_of[d]
        earlier = p.history[:-1]
        if all(self.block_of[v] != k for v in earlier):
            local = self.index[d] - 10 * k
            target = self.y[10 * k + (8 if local <= 5 else 3)]
        else:
            b = self._blocks(p)[k]
            if b.dominator_moves != 2 or not b.opened_by_dominator or b.reply_leaf is None:
                return self._fallback(p, legal)
            target = self.x[b.reply_leaf]
        if legal >> target & 1:
            return target
        return self._fallback(p, legal)


STRATEGIES: dict[str, Callable[[Graph], Strategy]] = {
    GreedyStrategy.name: GreedyStrategy,
    ConnectorStrategy.name: ConnectorStrategy,
    StallerBlockStrategy.name: StallerBlockStrategy,
}


def builtin_strategies() -> dict[str, Callable[[Graph], Strategy]]:
    return dict(STRATEGIES)


@dataclass
class SimulationResult:
    total_moves: int
    line: tuple[int, ...]
    fallbacks: list[tuple[int, ...]] = field(default_factory=list)


def simulate(
    g: Graph,
    kind: GameKind | str,
    starter: Side | str,
    fixed_side: Side | str,
    strategy: Strategy,
    cap: int = 24,
) -> SimulationResult:
    """Game length when ``fixed_side`` follows ``strategy`` and the other side is perfect."""
    if g.n > cap:
        raise CapExceeded(f"order {g.n} exceeds simulation cap {cap}")
    kind, starter, fixed_side = parse_kind(kind), parse_side(starter), parse_side(fixed_side)
    strategy.fallbacks = []
    memo: dict = {}

    def value(p: Position) -> tuple[int, tuple[int, ...]]:
        moves = legal_moves(p)
        if not moves:
            return 0, ()
        key = (p.played, strategy.memory(p))
        hit = memo.get(key)
        if hit is not None:
            return hit
        if p.mover is fixed_side:
            v = strategy.select(p)
            if not (0 <= v < g.n and moves >> v & 1):
                raise StrategyFault(p, v)
            rest, line = value(apply_move(p, v))
            result = (1 + rest, (v,) + line)
        else:
            pick = max if p.mover is Side.MAX else min
            best = None
            for v in bits(moves):
                rest, line = value(apply_move(p, v))
                cand = (1 + rest, (v,) + line)
                if best is None or pick(cand[0], best[0]) != best[0]:
                    best = cand
            result = best
        memo[key] = result
        return result

    total, line = value(initial_position(g, kind, starter))
    return SimulationResult(total, line, list(strategy.fallbacks))
