"""Set predicates and exhaustive computation of the domination chain.

All searches are exact. Enclaveless, independent and irredundant sets are
hereditary families, so each is enumerated once by a depth-first walk that
only ever extends a member of the family by a larger vertex id. Domination
number is found by branching on the lowest undominated vertex.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Iterator

from .graph import CapExceeded, Graph, GraphError, bits, distance

DEFAULT_CAP = 20
DEFAULT_IR_CAP = 18


def _require_member(S: int, v: int) -> None:
    if not S >> v & 1:
        raise ValueError(f"vertex {v} is not in the set")


# -- enclaves ---------------------------------------------------------------

def is_enclave(g: Graph, S: int, v: int) -> bool:
    _require_member(S, v)
    return g.closed(v) & ~S == 0


def is_enclaveless(g: Graph, S: int) -> bool:
    return all(g.closed(v) & ~S for v in bits(S))


def playable_mask(g: Graph, S: int) -> int:
    """Vertices that can be added to the enclaveless set ``S``.

    ``w`` is blocked when it would close the last gap around some member of
    ``S`` or when its own open neighborhood already lies inside ``S``.
    """
    outside = g.all & ~S
    blocked = 0
    for u in bits(S):
        gap = g.closed(u) & ~S
        if gap & (gap - 1) == 0:
            blocked |= gap
    for w in bits(outside & ~blocked):
        if g.adj[w] & ~S == 0:
            blocked |= 1 << w
    return outside & ~blocked


def is_playable(g: Graph, S: int, v: int) -> bool:
    if not is_enclaveless(g, S):
        raise ValueError("position is not enclaveless")
    if S >> v & 1:
        return False
    return is_enclaveless(g, S | 1 << v)


def is_maximal_enclaveless(g: Graph, S: int) -> bool:
    return is_enclaveless(g, S) and playable_mask(g, S) == 0


# -- domination ---------------------------------------------------------------

def dominated_by(g: Graph, D: int) -> int:
    cov = 0
    for v in bits(D):
        cov |= g.closed(v)
    return cov


def is_dominating(g: Graph, D: int) -> bool:
    return dominated_by(g, D) == g.all


def is_minimal_dominating(g: Graph, D: int) -> bool:
    if not is_dominating(g, D):
        return False
    return all(not is_dominating(g, D & ~(1 << v)) for v in bits(D))


def epn(g: Graph, v: int, S: int) -> int:
    """External private neighbors of ``v`` with respect to ``S``."""
    _require_member(S, v)
    return sum(1 << w for w in bits(g.all & ~S) if g.adj[w] & S == 1 << v)


def pn(g: Graph, v: int, S: int) -> int:
    """Private neighbors of ``v`` with respect to ``S`` (closed version)."""
    _require_member(S, v)
    return sum(1 << w for w in range(g.n) if g.closed(w) & S == 1 << v)


def is_irredundant(g: Graph, S: int) -> bool:
    return all(pn(g, v, S) for v in bits(S))


def is_independent(g: Graph, S: int) -> bool:
    return all(g.adj[v] & S == 0 for v in bits(S))


def is_2_packing(g: Graph, S: int) -> bool:
    members = list(bits(S))
    return all(distance(g, u, v) >= 3 for i, u in enumerate(members) for v in members[i + 1:])


# -- exhaustive search ------------------------------------------------------

def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"order {g.n} exceeds brute-force cap {cap}")


def _hereditary(g: Graph, extendable: Callable[[int, int], bool]) -> Iterator[int]:
    """Every set in a hereditary family, each exactly once (empty set first)."""
    stack = [(0, -1)]
    while stack:
        S, last = stack.pop()
        yield S
        for v in range(g.n - 1, last, -1):
            if extendable(S, v):
                stack.append((S | 1 << v, v))


def enclaveless_sets(g: Graph) -> Iterator[int]:
    closed = [g.closed(v) for v in range(g.n)]

    def ok(S: int, v: int) -> bool:
        T = S | 1 << v
        return all(closed[u] & ~T for u in bits(closed[v] & T))

    return _hereditary(g, ok)


def independent_sets(g: Graph) -> Iterator[int]:
    adj = g.adj
    return _hereditary(g, lambda S, v: adj[v] & S == 0)


def irredundant_sets(g: Graph) -> Iterator[tuple[int, int]]:
    """Yield ``(S, dominated)`` for every irredundant set ``S``.

    Tracks the vertices dominated exactly once so that the private neighbors
    of ``u`` are simply ``N[u] & once``.
    """
    closed = [g.closed(v) for v in range(g.n)]
    stack = [(0, -1, 0, 0)]
    while stack:
        S, last, once, multi = stack.pop()
        yield S, once | multi
        for v in range(g.n - 1, last, -1):
            nv = closed[v]
            new_once = (once & ~nv) | (nv & ~(once | multi))
            if all(closed[u] & new_once for u in bits(S | 1 << v)):
                stack.append((S | 1 << v, v, new_once, multi | (once & nv)))


def domination_number(g: Graph) -> tuple[int, int]:
    """Minimum dominating set by branching on the lowest undominated vertex."""
    closed = [g.closed(v) for v in range(g.n)]
    full = g.all
    best = [g.n + 1, full]

    def search(D: int, cov: int, size: int) -> None:
        if size >= best[0]:
            return
        if cov == full:
            best[0], best[1] = size, D
            return
        rest = full & ~cov
        w = (rest & -rest).bit_length() - 1
        for v in bits(closed[w]):
            search(D | 1 << v, cov | closed[v], size + 1)

    search(0, 0, 0)
    return best[0], best[1]


def enumerate_minimal_dominating(g: Graph, cap: int = DEFAULT_CAP) -> Iterator[int]:
    """Minimal dominating sets are exactly the dominating irredundant sets."""
    _check_cap(g, cap)
    full = g.all
    return (S for S, cov in irredundant_sets(g) if cov == full)


def enumerate_maximal_enclaveless(g: Graph, cap: int = DEFAULT_CAP) -> Iterator[int]:
    _check_cap(g, cap)
    return (S for S in enclaveless_sets(g) if playable_mask(g, S) == 0)


def enumerate_max_irredundant(g: Graph, cap: int = DEFAULT_IR_CAP) -> list[int]:
    _check_cap(g, cap)
    sets = [S for S, _ in irredundant_sets(g)]
    top = max(S.bit_count() for S in sets)
    return sorted(S for S in sets if S.bit_count() == top)


def maximum_independent_sets(g: Graph, cap: int = DEFAULT_CAP) -> list[int]:
    _check_cap(g, cap)
    sets = list(independent_sets(g))
    top = max(S.bit_count() for S in sets)
    return sorted(S for S in sets if S.bit_count() == top)


def upper_domination_sets(g: Graph, cap: int = DEFAULT_CAP) -> list[int]:
    """All minimal dominating sets of maximum size."""
    sets = list(enumerate_minimal_dominating(g, cap))
    top = max(S.bit_count() for S in sets)
    return sorted(S for S in sets if S.bit_count() == top)


def lower_enclaveless_sets(g: Graph, cap: int = DEFAULT_CAP) -> list[int]:
    """All maximal enclaveless sets of minimum size."""
    sets = list(enumerate_maximal_enclaveless(g, cap))
    low = min(S.bit_count() for S in sets)
    return sorted(S for S in sets if S.bit_count() == low)


def perfect_domination_witness(g: Graph, cap: int = DEFAULT_CAP) -> int | None:
    """A minimum dominating set of max-degree vertices forming a 2-packing."""
    _check_cap(g, cap)
    top = max(g.degree(v) for v in range(g.n))
    hubs = sum(1 << v for v in range(g.n) if g.degree(v) == top)
    closed = [g.closed(v) for v in range(g.n)]

    def ok(S: int, v: int) -> bool:
        return hubs >> v & 1 and all(closed[v] & closed[u] == 0 for u in bits(S))

    for S in _hereditary(g, ok):
        if dominated_by(g, S) == g.all:
            return S
    return None


# -- report -----------------------------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    n: int
    gamma: int
    Gamma: int
    psi: int
    Psi: int
    alpha: int
    IR: int | None
    well_dominated: bool

    def as_dict(self) -> dict:
        return asdict(self)


def compute_invariants(g: Graph, cap: int = DEFAULT_CAP, ir_cap: int = DEFAULT_IR_CAP) -> InvariantReport:
    """Exact domination chain values for ``g``.

    ``IR`` is left as ``None`` when the order lies between ``ir_cap`` and
    ``cap``. Every number comes from its own search, so the identities that
    relate them remain meaningful checks.
    """
    _check_cap(g, cap)
    if g.n == 0:
        raise GraphError("empty graph")
    gamma, _ = domination_number(g)

    Psi, psi = 0, g.n
    for S in enclaveless_sets(g):
        k = S.bit_count()
        if k > Psi:
            Psi = k
        if k < psi and playable_mask(g, S) == 0:
            psi = k

    IR = 0
    Gamma, low_minimal = 0, g.n
    full = g.all
    for S, cov in irredundant_sets(g):
        k = S.bit_count()
        if k > IR:
            IR = k
        if cov == full:
            Gamma = max(Gamma, k)
            low_minimal = min(low_minimal, k)

    alpha = max(S.bit_count() for S in independent_sets(g))
    return InvariantReport(
        n=g.n,
        gamma=gamma,
        Gamma=Gamma,
        psi=psi,
        Psi=Psi,
        alpha=alpha,
        IR=IR if g.n <= ir_cap else None,
        well_dominated=low_minimal == Gamma,
    )
