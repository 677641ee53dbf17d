"""Exact minimax for the competition-enclaveless game and the domination game.

Both games are scored by the number of vertices played. The maximizing side
is Maximizer (enclaveless game) or Staller (domination game); the minimizing
side is Minimizer or Dominator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .graph import CapExceeded, Graph, bits
from .invariants import is_enclaveless, playable_mask

ENCLAVELESS_CAP = 24
DOMINATION_CAP = 22


class GameKind(enum.Enum):
    ENCLAVELESS = "enclaveless"
    DOMINATION = "domination"


class Side(enum.Enum):
    MAX = "max"
    MIN = "min"

    @property
    def other(self) -> "Side":
        return Side.MIN if self is Side.MAX else Side.MAX

    def title(self, kind: GameKind) -> str:
        if kind is GameKind.DOMINATION:
            return "Staller" if self is Side.MAX else "Dominator"
        return "Maximizer" if self is Side.MAX else "Minimizer"


_SIDE_ALIASES = {
    "max": Side.MAX,
    "maximizer": Side.MAX,
    "staller": Side.MAX,
    "s": Side.MAX,
    "min": Side.MIN,
    "minimizer": Side.MIN,
    "dominator": Side.MIN,
    "d": Side.MIN,
}


def parse_side(text: str | Side) -> Side:
    if isinstance(text, Side):
        return text
    try:
        return _SIDE_ALIASES[text.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown player {text!r}") from None


def parse_kind(text: str | GameKind) -> GameKind:
    if isinstance(text, GameKind):
        return text
    return GameKind(text.strip().lower())


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Position:
    graph: Graph
    kind: GameKind
    played: int
    covered: int
    mover: Side
    starter: Side
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def finished(self) -> bool:
        return legal_moves(self) == 0


def initial_position(g: Graph, kind: GameKind | str, starter: Side | str) -> Position:
    starter = parse_side(starter)
    return Position(g, parse_kind(kind), 0, 0, starter, starter)


def position_from(g: Graph, kind: GameKind | str, starter: Side | str, moves) -> Position:
    p = initial_position(g, kind, starter)
    for v in moves:
        p = apply_move(p, v)
    return p


def legal_moves(p: Position) -> int:
    g = p.graph
    if p.kind is GameKind.ENCLAVELESS:
        return playable_mask(g, p.played)
    return sum(1 << v for v in range(g.n) if g.closed(v) & ~p.covered)


def apply_move(p: Position, v: int) -> Position:
    if not 0 <= v < p.graph.n or not legal_moves(p) >> v & 1:
        raise IllegalMove(f"vertex {v} is not a legal move")
    return replace(
        p,
        played=p.played | 1 << v,
        covered=p.covered | p.graph.closed(v),
        mover=p.mover.other,
        history=p.history + (v,),
    )


@dataclass(frozen=True)
class GameOutcome:
    total_moves: int
    optimal_first_moves: int
    principal_variation: tuple[int, ...]


def _cap_for(kind: GameKind) -> int:
    return ENCLAVELESS_CAP if kind is GameKind.ENCLAVELESS else DOMINATION_CAP


class GameSolver:
    """Minimax over one graph and one game kind with a private memo table.

    ``memo_key="compact"`` keys enclaveless positions by the played set alone
    (the mover follows from its parity and the starter); ``"explicit"`` adds
    the mover to the key. Domination positions always use ``(covered, mover)``.
    ``memo=False`` runs plain minimax; ``prune=True`` adds alpha-beta cutoffs
    to the memo-free search.
    """

    def __init__(
        self,
        g: Graph,
        kind: GameKind | str,
        starter: Side | str,
        *,
        memo: bool = True,
        prune: bool = False,
        memo_key: str = "compact",
        cap: int | None = None,
    ):
        self.g = g
        self.kind = parse_kind(kind)
        self.starter = parse_side(starter)
        cap = _cap_for(self.kind) if cap is None else cap
        if g.n > cap:
            raise CapExceeded(f"order {g.n} exceeds solver cap {cap}")
        if memo_key not in ("compact", "explicit"):
            raise ValueError(f"unknown memo key mode {memo_key!r}")
        self.memo = memo
        self.prune = prune
        self.memo_key = memo_key
        self.table: dict = {}
        self._closed = [g.closed(v) for v in range(g.n)]
        self._full = g.all

    # Value of a position = number of moves still to be played.
    def remaining(self, p: Position) -> int:
        maxing = p.mover is Side.MAX
        if self.kind is GameKind.ENCLAVELESS:
            if self.memo:
                return self._enc(p.played, maxing)
            return self._enc_plain(p.played, maxing, -1, self.g.n + 1)
        if self.memo:
            return self._dom(p.covered, maxing)
        return self._dom_plain(p.covered, maxing, -1, self.g.n + 1)

    def _enc(self, S: int, maxing: bool) -> int:
        key = S if self.memo_key == "compact" else (S, maxing)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        moves = playable_mask(self.g, S)
        if not moves:
            value = 0
        elif maxing:
            value = 1 + max(self._enc(S | 1 << v, False) for v in bits(moves))
        else:
            value = 1 + min(self._enc(S | 1 << v, True) for v in bits(moves))
        self.table[key] = value
        return value

    def _enc_plain(self, S: int, maxing: bool, alpha: int, beta: int) -> int:
        moves = playable_mask(self.g, S)
        if not moves:
            return 0
        best = -1 if maxing else self.g.n + 1
        for v in bits(moves):
            # Child scores are shifted by the move just made.
            child = 1 + self._enc_plain(S | 1 << v, not maxing, alpha - 1, beta - 1)
            if maxing:
                best = max(best, child)
                if self.prune:
                    alpha = max(alpha, best)
                    if alpha >= beta:
                        break
            else:
                best = min(best, child)
                if self.prune:
                    beta = min(beta, best)
                    if alpha >= beta:
                        break
        return best

    def _dom_children(self, cov: int) -> list[int]:
        seen = []
        for v in range(self.g.n):
            nxt = cov | self._closed[v]
            if nxt != cov and nxt not in seen:
                seen.append(nxt)
        return seen

    def _dom(self, cov: int, maxing: bool) -> int:
        if cov == self._full:
            return 0
        key = (cov, maxing)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        children = self._dom_children(cov)
        if maxing:
            value = 1 + max(self._dom(c, False) for c in children)
        else:
            value = 1 + min(self._dom(c, True) for c in children)
        self.table[key] = value
        return value

    def _dom_plain(self, cov: int, maxing: bool, alpha: int, beta: int) -> int:
        if cov == self._full:
            return 0
        best = -1 if maxing else self.g.n + 1
        for v in range(self.g.n):
            nxt = cov | self._closed[v]
            if nxt == cov:
                continue
            child = 1 + self._dom_plain(nxt, not maxing, alpha - 1, beta - 1)
            if maxing:
                best = max(best, child)
                if self.prune:
                    alpha = max(alpha, best)
                    if alpha >= beta:
                        break
            else:
                best = min(best, child)
                if self.prune:
                    beta = min(beta, best)
                    if alpha >= beta:
                        break
        return best

    def move_values(self, p: Position) -> dict[int, int]:
        """Remaining-move value after each legal move, counting that move."""
        return {v: 1 + self.remaining(apply_move(p, v)) for v in bits(legal_moves(p))}

    def best_moves(self, p: Position) -> int:
        values = self.move_values(p)
        if not values:
            return 0
        pick = max if p.mover is Side.MAX else min
        target = pick(values.values())
        return sum(1 << v for v, val in values.items() if val == target)

    def outcome(self, p: Position) -> GameOutcome:
        if p.graph is not self.g or p.kind is not self.kind:
            raise ValueError("position belongs to a different game")
        total = p.played.bit_count() + self.remaining(p)
        first = self.best_moves(p)
        line = []
        q, best = p, first
        while best:
            v = (best & -best).bit_length() - 1
            line.append(v)
            q = apply_move(q, v)
            best = self.best_moves(q)
        return GameOutcome(total, first, tuple(line))


def solve(
    g: Graph,
    kind: GameKind | str = GameKind.ENCLAVELESS,
    starter: Side | str = Side.MAX,
    **options,
) -> GameOutcome:
    """Exact game value with optimal first moves and a principal variation.

    Ties in the principal variation go to the lowest vertex id.
    """
    solver = GameSolver(g, kind, starter, **options)
    return solver.outcome(initial_position(g, solver.kind, solver.starter))


def game_value(g: Graph, kind: GameKind | str = GameKind.ENCLAVELESS, starter: Side | str = Side.MAX, **options) -> int:
    solver = GameSolver(g, kind, starter, **options)
    return solver.remaining(initial_position(g, solver.kind, solver.starter))


def replay(g: Graph, kind: GameKind | str, starter: Side | str, moves) -> Position:
    """Replay ``moves`` from the empty position; raises on any illegal move."""
    return position_from(g, kind, starter, moves)


def check_terminal(p: Position) -> bool:
    if legal_moves(p):
        return False
    if p.kind is GameKind.ENCLAVELESS:
        return is_enclaveless(p.graph, p.played)
    return p.covered == p.graph.all
