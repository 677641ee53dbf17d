import random

import pytest

from conftest import random_graph
from enclaveless import families
from enclaveless.game import (
    GameKind,
    GameSolver,
    IllegalMove,
    Side,
    apply_move,
    check_terminal,
    game_value,
    initial_position,
    legal_moves,
    parse_side,
    position_from,
    replay,
    solve,
)
from enclaveless.graph import CapExceeded, bits, build_graph
from enclaveless.invariants import compute_invariants, is_enclaveless


def naive_value(g, kind, starter):
    """Plain recursive minimax straight from the rules, no shortcuts."""

    def rec(played, covered, maxing):
        if kind == "enclaveless":
            moves = [v for v in range(g.n) if not played >> v & 1 and is_enclaveless(g, played | 1 << v)]
        else:
            moves = [v for v in range(g.n) if g.closed(v) & ~covered]
        if not moves:
            return 0
        vals = [1 + rec(played | 1 << v, covered | g.closed(v), not maxing) for v in moves]
        return max(vals) if maxing else min(vals)

    return rec(0, 0, starter == "max")


def test_legal_move_examples():
    p3 = families.path(3)
    assert legal_moves(initial_position(p3, "enclaveless", "max")) == 0b111
    assert legal_moves(position_from(p3, "enclaveless", "max", [1])) == 0
    assert legal_moves(initial_position(families.path(2), "domination", "dominator")) == 0b11


def test_apply_move_examples():
    p = apply_move(initial_position(families.path(3), "enclaveless", "max"), 1)
    assert p.played == 0b010 and p.mover is Side.MIN
    q = apply_move(initial_position(families.cycle(4), "domination", "dominator"), 0)
    assert q.covered == 0b1011
    with pytest.raises(IllegalMove):
        apply_move(position_from(families.path(2), "enclaveless", "max", [0]), 1)
    with pytest.raises(IllegalMove):
        apply_move(initial_position(families.path(2), "enclaveless", "max"), 5)


def test_side_names():
    assert parse_side("dominator") is Side.MIN and parse_side("staller") is Side.MAX
    assert Side.MIN.title(GameKind.DOMINATION) == "Dominator"
    with pytest.raises(ValueError):
        parse_side("nobody")


@pytest.mark.parametrize(
    "g, kind, starter, value",
    [
        (families.path(5), "enclaveless", "max", 3),
        (families.star(4), "enclaveless", "min", 1),
        (families.double_star(3), "enclaveless", "max", 4),
        (families.double_star(3), "enclaveless", "min", 4),
        (families.path(7), "domination", "dominator", 3),
        (build_graph(1, []), "enclaveless", "max", 0),
        (build_graph(1, []), "domination", "dominator", 1),
    ],
)
def test_solve_examples(g, kind, starter, value):
    out = solve(g, kind, starter)
    assert out.total_moves == value
    assert len(out.principal_variation) == value


def test_principal_variation_prefers_lowest_id():
    out = solve(families.path(5), "enclaveless", "max")
    assert out.principal_variation[0] == min(bits(out.optimal_first_moves))


def test_solver_cap():
    with pytest.raises(CapExceeded):
        solve(families.path(25), "enclaveless", "max")
    with pytest.raises(CapExceeded):
        GameSolver(families.path(6), "domination", "min", cap=5)


def test_outcome_rejects_foreign_position():
    solver = GameSolver(families.path(3), "enclaveless", "max")
    with pytest.raises(ValueError):
        solver.outcome(initial_position(families.path(4), "enclaveless", "max"))


@pytest.mark.parametrize("seed", range(40))
def test_engine_matches_naive_minimax(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 7), rng.random())
    for kind in ("enclaveless", "domination"):
        for starter in ("max", "min"):
            want = naive_value(g, kind, starter)
            assert game_value(g, kind, starter) == want
            assert game_value(g, kind, starter, memo=False) == want
            assert game_value(g, kind, starter, memo=False, prune=True) == want
            if kind == "enclaveless":
                assert game_value(g, kind, starter, memo_key="explicit") == want


@pytest.mark.parametrize("seed", range(30))
def test_principal_variation_replays(seed):
    rng = random.Random(100 + seed)
    g = random_graph(rng, rng.randint(2, 10))
    for kind in GameKind:
        for starter in Side:
            out = solve(g, kind, starter)
            end = replay(g, kind, starter, out.principal_variation)
            assert check_terminal(end)
            assert end.played.bit_count() == out.total_moves


@pytest.mark.parametrize("seed", range(30))
def test_values_sit_between_psi_and_Psi(seed):
    rng = random.Random(200 + seed)
    g = random_graph(rng, rng.randint(1, 10))
    r = compute_invariants(g)
    for starter in Side:
        assert r.psi <= game_value(g, "enclaveless", starter) <= r.Psi


def test_well_dominated_graphs_end_at_n_minus_gamma():
    for g in (families.cycle(7), families.complete(5), families.corona_path(4)):
        r = compute_invariants(g)
        assert r.well_dominated
        for starter in Side:
            assert game_value(g, "enclaveless", starter) == g.n - r.gamma


def test_move_values_and_best_moves():
    g = families.star(3)
    solver = GameSolver(g, "enclaveless", "min")
    p = initial_position(g, "enclaveless", "min")
    values = solver.move_values(p)
    assert values[0] == 1 and all(values[v] == 3 for v in (1, 2, 3))
    assert solver.best_moves(p) == 0b0001


def test_p10_is_not_well_dominated_but_values_still_n_minus_gamma():
    from enclaveless.invariants import is_minimal_dominating

    g = families.path(10)
    r = compute_invariants(g)
    assert not r.well_dominated
    assert is_minimal_dominating(g, 0b1001100110) and r.gamma == 4
    assert game_value(g, "enclaveless", "max") == game_value(g, "enclaveless", "min") == 6
