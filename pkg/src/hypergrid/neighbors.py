"""Closed-form neighbor lists for a tile, indexed as in the dual graph.

For {p,3} a tile has p neighbors; {p-2,4} drops the two same-level
(horizontal) ones and p-2 remain.  Entry 1 is always the father (the
node-0 sentinel for the root).  The other entries are computed from the
node number nu, its preferred son s = sigma(nu) and the father number,
going counterclockwise: up-left diagonal, left, children ascending,
down-right diagonal, right, up-right.

Tiles on an extremal branch have one or two neighbors in the adjacent
sector; those entries carry a PREV/NEXT tag and the number the tile has
in an identical copy of the tree laid beside this one.

In the preferred tree the diagonal entries of a Wbeta or Wr node depend
on where the node sits in the *leftmost* tree (its block of low-numbered
brothers may hang under the next father), hence the leftmost-type
dispatch selecting between the two published column variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import machines
from .coordinates import Digits, decode, is_canonical, sigma
from .errors import NonCanonicalError
from .params import Grid, TilingParams, TreeKind
from .sequences import table_for
from .tree import NodeStatus, NodeType, classify, father


class Tag(Enum):
    SAME = "same"
    PREV = "prev"
    NEXT = "next"


@dataclass(frozen=True)
class NeighborRef:
    tag: Tag
    node: int

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "node": self.node}


def neighbors_to_json(entries: list[NeighborRef]) -> dict[str, dict]:
    return {str(i): ref.to_json() for i, ref in enumerate(entries, start=1)}


def _assemble(entries: list[tuple[NeighborRef, bool]], p3: bool) -> list[NeighborRef]:
    if p3:
        return [ref for ref, _ in entries]
    return [ref for ref, horizontal in entries if not horizontal]


def neighbors(params: TilingParams, kind: TreeKind, c: Digits) -> list[NeighborRef]:
    """Indexed neighbor list of the node; entry i of the result is the
    table's neighbor i (index 0, the node itself, is not stored)."""
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    if not c:
        raise ValueError("node 0 has no neighbor list")
    p = params.p
    p3 = params.grid is Grid.P3
    same = lambda x: NeighborRef(Tag.SAME, x)

    if c == (1,):
        children = [(same(x), False) for x in range(2, p - 2)]
        ring0 = [((NeighborRef(Tag.PREV, 1)), True)]
        return _assemble(
            [(same(0), False)] + ring0 + children
            + [(NeighborRef(Tag.NEXT, 2), False), (NeighborRef(Tag.NEXT, 1), True)],
            p3)

    tab = table_for(p)
    nu = decode(params, c)
    n = tab.level_of(nu)
    first = nu == tab.U[n - 1] + 1
    last = nu == tab.U[n]
    status, ntype = classify(params, kind, c)
    s = sigma(params, c)
    f = decode(params, father(params, c, kind))

    if kind is TreeKind.LEFTMOST:
        if status is NodeStatus.B:
            lo, hi = s - (p - 6), s
        elif ntype is NodeType.W1:
            lo, hi = s - (p - 5), s
        else:
            lo, hi = s - (p - 6), s + 1
    else:
        lo = s - (p - 7) if status is NodeStatus.B else s - (p - 6)
        hi = s + 1
    children = [(same(x), False) for x in range(lo, hi + 1)]
    dl = same(lo - 1)   # last son of nu-1 (one level below, to the left)
    dr = same(hi + 1)   # first son of nu+1 (one level below, to the right)

    # the four cross-sector references of extremal-branch tiles
    prev_diag = NeighborRef(Tag.PREV, tab.U[n - 1])      # prev tree, ring n-1
    prev_ring = NeighborRef(Tag.PREV, tab.U[n])          # prev tree, ring n
    next_diag = NeighborRef(Tag.NEXT, tab.U[n] + 1)      # next tree, ring n+1
    next_ring = NeighborRef(Tag.NEXT, tab.U[n - 1] + 1)  # next tree, ring n

    head = [(same(f), False)]
    if kind is TreeKind.LEFTMOST:
        if status is NodeStatus.B:
            up_left = (prev_diag, False) if first else (same(f - 1), False)
            left = (prev_ring, True) if first else (same(nu - 1), True)
            entries = head + [up_left, left] + children + [(dr, False), (same(nu + 1), True)]
        elif ntype is NodeType.W1:
            entries = head + [(same(nu - 1), True)] + children \
                + [(dr, False), (same(nu + 1), True)]
        else:  # W2
            down_right = (next_diag, False) if last else (dr, False)
            right = (next_ring, True) if last else (same(nu + 1), True)
            entries = head + [(same(nu - 1), True)] + children + [down_right, right]
        return _assemble(entries, p3)

    # preferred tree
    if status is NodeStatus.B:
        entries = head + [(same(nu - 1), True), (dl, False)] + children \
            + [(dr, False), (same(nu + 1), True)]
    elif ntype is NodeType.WELL:
        entries = head + [(same(nu - 1), True), (dl, False)] + children \
            + [(same(nu + 1), True)]
    elif ntype is NodeType.WBETA:
        if first:
            pair = [(prev_diag, False), (prev_ring, True)]
        elif machines.leftmost_state(p, c) == machines.LB:
            pair = [(same(f - 1), False), (same(nu - 1), True)]
        else:  # the node's leftmost block starts one brother later
            pair = [(same(nu - 1), True), (dl, False)]
        entries = head + pair + children + [(same(nu + 1), True)]
    else:  # Wr
        if last:
            pair = [(next_diag, False), (next_ring, True)]
        elif machines.leftmost_state(p, c) == machines.LB:
            pair = [(same(nu + 1), True), (same(f + 1), False)]
        else:
            pair = [(dr, False), (same(nu + 1), True)]
        entries = head + [(same(nu - 1), True)] + children + pair
    return _assemble(entries, p3)
