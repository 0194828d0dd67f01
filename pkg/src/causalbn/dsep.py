"""Structural independence queries: d-separation via reachability and
explicit active-path enumeration with collider annotations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import OverlappingSetsError
from .network import Network


@dataclass(frozen=True)
class ActivePath:
    """An undirected path active given Z, with the colliders whose presence
    in Z (directly or through a descendant) unblocks it."""

    nodes: tuple[str, ...]
    unblocking_colliders: frozenset[str]


def d_separated(
    network: Network, xs: set[str], ys: set[str], zs: set[str]
) -> bool:
    """True iff every path between xs and ys is blocked given zs.

    Standard rules: a chain or fork is blocked when its middle node is in
    zs; a collider is blocked unless it or one of its descendants is in zs.
    Implemented as reachability over (node, direction) states."""
    for v in xs | ys | zs:
        network.variable(v)
    if (xs & ys) or (xs & zs) or (ys & zs):
        raise OverlappingSetsError("X, Y, Z must be pairwise disjoint")

    # nodes whose collider state is opened by zs
    z_or_above: set[str] = set(zs)
    for z in zs:
        z_or_above |= network.ancestors(z)

    # (node, came_from_child) pairs; came_from_child=True means the ball
    # arrived against an edge (from a child), so it may pass through.
    queue: deque[tuple[str, bool]] = deque((x, True) for x in xs)
    visited: set[tuple[str, bool]] = set(queue)
    while queue:
        node, from_child = queue.popleft()
        if node in ys:
            return False
        moves: list[tuple[str, bool]] = []
        if from_child:
            if node not in zs:
                moves += [(p, True) for p in network.parents(node)]
                moves += [(c, False) for c in network.children(node)]
        else:
            if node not in zs:
                moves += [(c, False) for c in network.children(node)]
            if node in z_or_above:
                moves += [(p, True) for p in network.parents(node)]
        for m in moves:
            if m not in visited:
                visited.add(m)
                queue.append(m)
    return True


def _path_status(
    network: Network, path: list[str], zs: set[str]
) -> tuple[bool, frozenset[str]]:
    """Whether the path is active given zs, and its unblocking colliders."""
    colliders: set[str] = set()
    for i in range(1, len(path) - 1):
        prev, mid, nxt = path[i - 1], path[i], path[i + 1]
        into_left = prev in network.parents(mid)
        into_right = nxt in network.parents(mid)
        if into_left and into_right:
            opened = mid in zs or (network.descendants(mid) & zs)
            if not opened:
                return False, frozenset()
            colliders.add(mid)
        else:
            if mid in zs:
                return False, frozenset()
    return True, frozenset(colliders)


def active_paths(
    network: Network, x: str, y: str, zs: set[str]
) -> list[ActivePath]:
    """All simple undirected paths between x and y active given zs."""
    network.variable(x)
    network.variable(y)
    for v in zs:
        network.variable(v)
    if x == y:
        raise OverlappingSetsError("endpoints must differ")

    neighbors = {
        n: sorted(set(network.parents(n)) | set(network.children(n)),
                  key=network.variable_names.index)
        for n in network.variable_names
    }
    out: list[ActivePath] = []

    def walk(path: list[str]) -> None:
        node = path[-1]
        if node == y:
            active, colliders = _path_status(network, path, zs)
            if active:
                out.append(ActivePath(tuple(path), colliders))
            return
        for nxt in neighbors[node]:
            if nxt not in path:
                walk(path + [nxt])

    walk([x])
    return out
