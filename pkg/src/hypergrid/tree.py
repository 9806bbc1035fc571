"""Materialized sector trees and the closed-form node operations.

Nodes are numbered breadth first from 1 (the root), level by level, left to
right; level n holds u_n nodes.  Both display rules produce the same node
numbering and coordinates but different branches:

  leftmost:   W -> B W^{p-5}        B -> B W^{p-6}     (B-son first)
  preferred:  W -> W^{p-6} B W      B -> W^{p-7} B W   (B-son penultimate)

Children of consecutive nodes occupy consecutive blocks, so the tree is
stored as flat parent / first-child arrays plus per-level offsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import machines
from .coordinates import (
    Digits,
    decode,
    decrement,
    encode,
    increment,
    is_canonical,
    sigma,
    signature,
)
from .errors import BudgetExceededError, NonCanonicalError
from .params import TilingParams, TreeKind
from .sequences import table_for


class NodeStatus(Enum):
    W = "W"
    B = "B"


class NodeType(Enum):
    BNODE = "B"
    W1 = "W1"          # leftmost: preferred son rightmost
    W2 = "W2"          # leftmost: preferred son penultimate (the root's type)
    WBETA = "Wbeta"    # preferred: leftmost son of its father
    WELL = "Wl"        # preferred: inner W-son
    WR = "Wr"          # preferred: rightmost son of its father

# compact codes used in the materialized arrays
_T_B, _T_W1, _T_W2, _T_WBETA, _T_WELL, _T_WR = 0, 1, 2, 3, 4, 5

_TYPE_OF_CODE = {
    _T_B: NodeType.BNODE,
    _T_W1: NodeType.W1,
    _T_W2: NodeType.W2,
    _T_WBETA: NodeType.WBETA,
    _T_WELL: NodeType.WELL,
    _T_WR: NodeType.WR,
}

DEFAULT_NODE_BUDGET = 10**7


def _child_patterns(p: int, kind: TreeKind) -> dict[int, list[int]]:
    if kind is TreeKind.LEFTMOST:
        return {
            _T_W2: [_T_B] + [_T_W1] * (p - 7) + [_T_W2, _T_W2],
            _T_W1: [_T_B] + [_T_W1] * (p - 6) + [_T_W2],
            _T_B: [_T_B] + [_T_W1] * (p - 7) + [_T_W2],
        }
    w_pattern = [_T_WBETA] + [_T_WELL] * (p - 7) + [_T_B, _T_WR]
    b_pattern = ([_T_WBETA] + [_T_WELL] * (p - 8) if p >= 8 else []) + [_T_B, _T_WR]
    return {_T_WBETA: w_pattern, _T_WELL: w_pattern, _T_WR: w_pattern, _T_B: b_pattern}


@dataclass
class GeneratedTree:
    """Explicit level-by-level tree; immutable after construction."""

    params: TilingParams
    kind: TreeKind
    depth: int
    parent: np.ndarray        # parent[v], parent[1] = 0
    first_child: np.ndarray   # defined for levels < depth
    type_code: np.ndarray
    offsets: list[int]        # offsets[n] = first node number of level n

    @property
    def num_nodes(self) -> int:
        return self.offsets[-1] - 1

    def level(self, v: int) -> int:
        if not 1 <= v <= self.num_nodes:
            raise ValueError(f"node {v} outside 1..{self.num_nodes}")
        lo, hi = 0, self.depth
        while lo < hi:
            mid = (lo + hi) // 2
            if self.offsets[mid + 1] > v:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def level_nodes(self, n: int) -> range:
        return range(self.offsets[n], self.offsets[n + 1])

    def status(self, v: int) -> NodeStatus:
        return NodeStatus.B if self.type_code[v] == _T_B else NodeStatus.W

    def node_type(self, v: int) -> NodeType:
        return _TYPE_OF_CODE[int(self.type_code[v])]

    def child_count(self, v: int) -> int:
        return self.params.p - 5 if self.type_code[v] == _T_B else self.params.p - 4

    def children(self, v: int) -> range:
        if self.level(v) >= self.depth:
            return range(0)
        fc = int(self.first_child[v])
        return range(fc, fc + self.child_count(v))

    def node_record(self, v: int) -> dict:
        from .coordinates import format_coordinate

        c = encode(self.params, v)
        return {
            "num": v,
            "coord": format_coordinate(self.params, c),
            "level": self.level(v),
            "status": self.status(v).value,
            "type": self.node_type(v).value,
            "parent": int(self.parent[v]),
            "children": list(self.children(v)),
        }


def generate(
    params: TilingParams,
    kind: TreeKind,
    depth: int,
    max_nodes: int = DEFAULT_NODE_BUDGET,
) -> GeneratedTree:
    """Materialize the sector tree down to the given level (included)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    p = params.p
    tab = table_for(p)
    tab.extend_to_index(depth + 1)
    offsets = [1]
    for n in range(depth + 1):
        offsets.append(offsets[-1] + tab.u[n])
    total = offsets[-1] - 1
    if total > max_nodes:
        raise BudgetExceededError(
            f"tree with {total} nodes exceeds the budget of {max_nodes}")

    parent = np.zeros(total + 1, dtype=np.int64)
    first_child = np.zeros(total + 1, dtype=np.int64)
    type_code = np.zeros(total + 1, dtype=np.uint8)
    type_code[1] = _T_W2 if kind is TreeKind.LEFTMOST else _T_WR

    patterns = _child_patterns(p, kind)
    for n in range(depth):
        lo, hi = offsets[n], offsets[n + 1]
        types_here = type_code[lo:hi]
        counts = np.where(types_here == _T_B, p - 5, p - 4).astype(np.int64)
        fc = offsets[n + 1] + np.concatenate(([0], np.cumsum(counts)[:-1]))
        first_child[lo:hi] = fc
        parent[offsets[n + 1]:offsets[n + 2]] = np.repeat(np.arange(lo, hi), counts)
        for cat, pattern in patterns.items():
            idx = np.nonzero(types_here == cat)[0]
            if idx.size == 0:
                continue
            base = fc[idx]
            for j, ty in enumerate(pattern):
                type_code[base + j] = ty
    return GeneratedTree(params, kind, depth, parent, first_child, type_code, offsets)


# --- closed-form node operations -------------------------------------------


def node_level(params: TilingParams, n: int) -> int:
    """Level of node n >= 1: the unique L with U_{L-1} < n <= U_L."""
    return table_for(params.p).level_of(n)


def father(params: TilingParams, c: Digits, kind: TreeKind = TreeKind.PREFERRED) -> Digits:
    """Coordinate of the father; father of the root "1" is the empty string.

    With signature 0 or (usually) 1 the father is the prefix, otherwise the
    prefix incremented.  The classical prefix rule describes the preferred
    tree; in the leftmost tree a node of signature 1 hanging under a
    non-type-2 prefix is the B-son of prefix+1 instead.
    """
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    if not c:
        raise ValueError("node 0 has no father")
    if c == (1,):
        return ()
    a0, prefix = c[-1], c[:-1]
    if a0 == 0:
        return prefix
    if a0 == 1:
        if (kind is TreeKind.LEFTMOST
                and machines.leftmost_state(params.p, prefix) != machines.LW2):
            return increment(params, prefix)
        return prefix
    return increment(params, prefix)


def preferred_son(params: TilingParams, c: Digits) -> Digits:
    """The unique son whose coordinate is c with a 0 appended."""
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    if not c:
        raise ValueError("node 0 has no preferred son")
    return c + (0,)


def classify(params: TilingParams, kind: TreeKind, c: Digits) -> tuple[NodeStatus, NodeType]:
    """Status and type of the node, computed from the coordinate alone.

    Preferred tree: read off the signature (0 -> B, 1 -> rightmost son,
    2 -> leftmost son, else inner W-son).  Leftmost tree: walk the digits
    with the type-transition machine; cost linear in the length of c.
    """
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    if not c:
        raise ValueError("node 0 has no status")
    if kind is TreeKind.PREFERRED:
        if c == (1,):
            return NodeStatus.W, NodeType.WR
        sig = signature(c)
        if sig == 0:
            return NodeStatus.B, NodeType.BNODE
        if sig == 1:
            return NodeStatus.W, NodeType.WR
        if sig == 2:
            return NodeStatus.W, NodeType.WBETA
        return NodeStatus.W, NodeType.WELL
    state = machines.leftmost_state(params.p, c)
    if state == machines.LB:
        return NodeStatus.B, NodeType.BNODE
    if state == machines.LW1:
        return NodeStatus.W, NodeType.W1
    return NodeStatus.W, NodeType.W2


def sons_preferred(params: TilingParams, c: Digits) -> list[Digits]:
    """Son coordinates in preferred-tree order (B-son penultimate).

    With m the coordinate of the predecessor node, the sons of a W-node are
    m.2 .. m.b1, c.0, c.1 and those of a B-node m.2 .. m.b2, c.0, c.1; this
    single rule covers the published two-row table and stays correct when
    forming m borrows across a digit run.
    """
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    if not c:
        raise ValueError("node 0 has no sons")
    top = params.b2 if signature(c) == 0 else params.b1
    m = decrement(params, c)
    sons = [m + (d,) for d in range(2, top + 1)]
    sons += [c + (0,), c + (1,)]
    return sons


def sons_leftmost(params: TilingParams, c: Digits) -> list[Digits]:
    """Son coordinates in leftmost-tree order (B-son first).

    The children are the consecutive numbers around the preferred son s:
    B-node s-(p-6)..s, type-1 W s-(p-5)..s, type-2 W s-(p-6)..s+1.
    """
    status, ntype = classify(params, kind=TreeKind.LEFTMOST, c=c)
    s = sigma(params, c)
    if status is NodeStatus.B:
        lo, hi = s - (params.p - 6), s
    elif ntype is NodeType.W1:
        lo, hi = s - (params.p - 5), s
    else:
        lo, hi = s - (params.p - 6), s + 1
    return [encode(params, v) for v in range(lo, hi + 1)]


def sons(params: TilingParams, kind: TreeKind, c: Digits) -> list[Digits]:
    if kind is TreeKind.PREFERRED:
        return sons_preferred(params, c)
    return sons_leftmost(params, c)


# --- dumps ------------------------------------------------------------------


def to_dot(tree: GeneratedTree, dual_edges=None) -> str:
    """DOT text of the tree; optional extra dual-graph edges drawn dashed."""
    from .coordinates import format_coordinate

    lines = [f'digraph sector_tree {{']
    lines.append('  node [shape=circle];')
    for v in range(1, tree.num_nodes + 1):
        c = format_coordinate(tree.params, encode(tree.params, v))
        shape = "doublecircle" if tree.status(v) is NodeStatus.B else "circle"
        lines.append(f'  n{v} [label="{v}\\n{c}" shape={shape}];')
    for v in range(1, tree.num_nodes + 1):
        for w in tree.children(v):
            lines.append(f"  n{v} -> n{w};")
    for a, b in dual_edges or []:
        lines.append(f"  n{a} -> n{b} [style=dashed dir=none];")
    lines.append("}")
    return "\n".join(lines)
