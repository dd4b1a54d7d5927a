"""Independent brute-force ground truth.

Plain breadth-first enumeration over products of a given automorphism
generating set, deduplicated by canonical state keys.  No peak reduction,
no invariants: this module is deliberately dumb so it can cross-check the
clever ones.  The numerical self-intersection oracle lives in
:mod:`whp.hyperbolic` and is re-exported here.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Optional, Sequence

from .whitehead import (
    OrbitWitness,
    TupleInstance,
    WhiteheadAuto,
    _apply_automorphism,
    _compose_steps,
    _goal_check,
    _state_of,
    enumerate_whitehead_autos,
)
from .words import Automorphism, Word


class OracleMemoryError(RuntimeError):
    """The state cap was hit; the oracle refuses to answer rather than degrade."""


def bfs_reach(
    start,
    neighbors: Callable,
    key: Callable,
    goal: Callable,
    radius: int,
    max_states: int,
):
    """Generic BFS; returns (goal_node, path) or (None, None) within radius.

    ``neighbors(node)`` yields (edge, node); ``goal(node)`` returns a payload
    (truthy) or None.  Raises OracleMemoryError beyond ``max_states`` states.
    """
    start_key = key(start)
    payload = goal(start)
    if payload is not None:
        return start, []
    seen = {start_key}
    frontier = deque([(start, [])])
    depth = 0
    while frontier and depth < radius:
        depth += 1
        next_frontier: deque = deque()
        while frontier:
            node, path = frontier.popleft()
            for edge, nxt in neighbors(node):
                k = key(nxt)
                if k in seen:
                    continue
                seen.add(k)
                if len(seen) > max_states:
                    raise OracleMemoryError(
                        f"oracle state cap {max_states} exceeded at depth {depth}"
                    )
                new_path = path + [edge]
                if goal(nxt) is not None:
                    return nxt, new_path
                next_frontier.append((nxt, new_path))
        frontier = next_frontier
    return None, None


def orbit_bruteforce(
    generators: Sequence[Automorphism | WhiteheadAuto],
    u: TupleInstance,
    v: TupleInstance,
    radius: int,
    max_states: int = 2_000_000,
) -> Optional[OrbitWitness]:
    """Search products of <= radius generators carrying u to v.

    Generators may be Automorphisms or WhiteheadAutos; the caller supplies
    an inverse-closed set if symmetric behaviour is wanted.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if u.shape() != v.shape():
        return None
    alphabet = u.alphabet
    window = sum(len(c.word) for c in u.coords) + sum(len(c.word) for c in v.coords) + 4

    autos: list[tuple[object, Automorphism]] = []
    for g in generators:
        if isinstance(g, WhiteheadAuto):
            autos.append((g, g.to_automorphism(alphabet)))
        else:
            autos.append((g, g))

    def neighbors(node: TupleInstance):
        for edge, auto in autos:
            yield edge, _apply_automorphism(node, auto)

    def goal(node: TupleInstance):
        return _goal_check(node, v, window)

    found, path = bfs_reach(u, neighbors, _state_of, goal, radius, max_states)
    if found is None:
        return None
    composed = _compose_steps(alphabet, path)
    witness = OrbitWitness(tuple(path), composed, _goal_check(found, v, window))
    assert witness.verify(u, v), "internal: brute-force witness failed verification"
    return witness


def whitehead_generator_set(alphabet) -> list[WhiteheadAuto]:
    """The full (inverse-closed) Whitehead generator set for the rank."""
    return enumerate_whitehead_autos(alphabet)
