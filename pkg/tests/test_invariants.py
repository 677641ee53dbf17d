import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_graph
from enclaveless import families
from enclaveless.graph import CapExceeded, bits, build_graph, is_isolate_free, mask_of
from enclaveless.invariants import (
    compute_invariants,
    enumerate_max_irredundant,
    enumerate_maximal_enclaveless,
    enumerate_minimal_dominating,
    epn,
    is_2_packing,
    is_dominating,
    is_enclave,
    is_enclaveless,
    is_independent,
    is_irredundant,
    is_maximal_enclaveless,
    is_minimal_dominating,
    is_playable,
    playable_mask,
    pn,
)

P3, K2, K13 = families.path(3), families.path(2), families.star(3)
C4 = families.cycle(4)


def brute(g):
    """Every invariant from a plain scan over all 2^n subsets."""
    subsets = range(1 << g.n)
    encl = [S for S in subsets if is_enclaveless(g, S)]
    maximal = [S for S in encl if all(not is_enclaveless(g, S | 1 << v) for v in range(g.n) if not S >> v & 1)]
    dom = [S for S in subsets if is_dominating(g, S)]
    minimal = [S for S in dom if all(not is_dominating(g, S & ~(1 << v)) for v in bits(S))]
    irr = [S for S in subsets if is_irredundant(g, S)]
    ind = [S for S in subsets if is_independent(g, S)]
    size = int.bit_count
    return {
        "gamma": min(map(size, dom)),
        "Gamma": max(map(size, minimal)),
        "psi": min(map(size, maximal)),
        "Psi": max(map(size, encl)),
        "alpha": max(map(size, ind)),
        "IR": max(map(size, irr)),
        "well_dominated": len({size(S) for S in minimal}) == 1,
        "maximal": sorted(maximal),
        "minimal": sorted(minimal),
        "irr_max": sorted(S for S in irr if size(S) == max(map(size, irr))),
    }


def test_enclave_examples():
    assert is_enclave(P3, 0b011, 0)
    assert not is_enclave(P3, 0b011, 1)
    assert is_enclave(K2, 0b11, 0)
    with pytest.raises(ValueError):
        is_enclave(P3, 0b010, 0)


def test_enclaveless_examples():
    assert is_enclaveless(C4, 0)
    assert is_enclaveless(P3, 0b010)
    assert not is_enclaveless(K2, 0b11)


def test_playable_examples():
    assert is_playable(P3, 0, 1)
    assert not is_playable(P3, 0b010, 0)
    assert is_playable(families.path(5), 0b00010, 3)
    with pytest.raises(ValueError):
        is_playable(K2, 0b11, 0)


def test_maximal_examples():
    assert is_maximal_enclaveless(K2, 0b01)
    assert is_maximal_enclaveless(P3, 0b010)
    assert not is_maximal_enclaveless(P3, 0)


def test_domination_examples():
    assert is_minimal_dominating(P3, 0b010)
    assert is_minimal_dominating(families.path(4), 0b1001)
    assert is_dominating(K2, 0b11) and not is_minimal_dominating(K2, 0b11)


def test_private_neighbor_examples():
    assert epn(P3, 1, 0b010) == 0b101
    assert epn(C4, 0, 0b0101) == 0
    assert epn(families.path(4), 1, 0b1010) == 0b0001
    assert pn(P3, 1, 0b010) == 0b111
    assert pn(K2, 0, 0b11) == 0
    assert pn(K13, 1, 0b1110) == 0b0010


def test_set_property_examples():
    leaves = 0b1110
    assert is_irredundant(K13, leaves) and is_independent(K13, leaves)
    assert not is_irredundant(K2, 0b11)
    assert is_2_packing(families.path(7), mask_of([0, 3, 6]))
    assert not is_2_packing(families.path(7), mask_of([0, 2]))


@pytest.mark.parametrize(
    "g, expected",
    [
        (families.path(4), dict(gamma=2, Gamma=2, psi=2, Psi=2, alpha=2, IR=2, well_dominated=True)),
        (K13, dict(gamma=1, Gamma=3, psi=1, Psi=3, alpha=3, IR=3, well_dominated=False)),
    ],
)
def test_report_examples(g, expected):
    r = compute_invariants(g)
    assert {k: getattr(r, k) for k in expected} == expected


def test_c7_report():
    r = compute_invariants(families.cycle(7))
    assert (r.gamma, r.Psi, r.well_dominated) == (3, 4, True)


def test_enumeration_examples():
    assert sorted(enumerate_minimal_dominating(P3)) == [0b010, 0b101]
    assert enumerate_max_irredundant(P3) == [0b101]
    assert sorted(enumerate_maximal_enclaveless(K2)) == [0b01, 0b10]


def test_caps():
    big = families.path(21)
    with pytest.raises(CapExceeded):
        compute_invariants(big)
    with pytest.raises(CapExceeded):
        list(enumerate_minimal_dominating(big))
    r = compute_invariants(families.path(19))
    assert r.IR is None and r.gamma == 7


@pytest.mark.parametrize("seed", range(60))
def test_report_matches_subset_scan(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 9), rng.choice([0.2, 0.4, 0.6]))
    want = brute(g)
    r = compute_invariants(g)
    for key in ("gamma", "Gamma", "psi", "Psi", "alpha", "IR", "well_dominated"):
        assert getattr(r, key) == want[key], key
    assert sorted(enumerate_maximal_enclaveless(g)) == want["maximal"]
    assert sorted(enumerate_minimal_dominating(g)) == want["minimal"]
    assert enumerate_max_irredundant(g) == want["irr_max"]


@pytest.mark.parametrize("seed", range(30))
def test_playable_mask_matches_definition(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 10))
    for S in range(0, 1 << g.n, max(1, (1 << g.n) // 200)):
        if not is_enclaveless(g, S):
            continue
        slow = sum(1 << v for v in range(g.n) if not S >> v & 1 and is_enclaveless(g, S | 1 << v))
        assert playable_mask(g, S) == slow


graphs = st.integers(1, 9).flatmap(
    lambda n: st.sets(st.sampled_from(list(combinations(range(n), 2)) or [None])).map(
        lambda es: build_graph(n, [e for e in es if e is not None])
    )
)


@settings(max_examples=80, deadline=None)
@given(graphs)
def test_complement_bijection_and_chain(g):
    r = compute_invariants(g)
    # S is enclaveless exactly when its complement dominates.
    assert r.gamma + r.Psi == g.n == r.Gamma + r.psi
    for S in enumerate_maximal_enclaveless(g):
        assert is_minimal_dominating(g, g.all & ~S)
    assert r.alpha <= r.Gamma <= r.IR
    if is_isolate_free(g):
        d = max(g.degree(v) for v in range(g.n))
        assert g.n <= (d + 1) * r.psi and (d + 1) * r.Psi <= d * g.n
