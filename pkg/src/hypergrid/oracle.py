"""Ground truth: structural dual-graph restoration and equivalence sweeps.

The dual graph of a sector is rebuilt from the materialized leftmost tree
with the structural rules only (no coordinate arithmetic): tree edges,
same-level ring edges, and one extra edge from each tile to the first son
of its ring successor.  Three copies of the tree are laid side by side
(prev - middle - next) so that the extremal-branch tiles of the middle
copy find their cross-sector neighbors.

The slot order around a tile is the geometric cycle starting at the
father; for the preferred kind the same cycle is rotated to start at the
preferred-tree father.  The check_* sweeps compare every closed-form
operation of the package against this reconstruction and against each
other, reporting mismatches as data rather than raising.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import machines
from .automaton import build_automaton, count_accepted
from .coordinates import decode, encode, increment, decrement, is_canonical
from .neighbors import NeighborRef, Tag, neighbors
from .params import Grid, TilingParams, TreeKind
from .paths import (
    encode_bulk,
    follow_bulk,
    leftmost_types_bulk,
    path_for,
    paths_bulk,
)
from .sequences import table_for
from .tree import (
    GeneratedTree,
    NodeStatus,
    generate,
    sons_leftmost,
    sons_preferred,
    classify,
    father,
)

MAX_STORED_MISMATCHES = 32


@dataclass
class VerificationReport:
    suite: str
    label: str
    checked: int = 0
    total_mismatches: int = 0
    mismatches: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.total_mismatches == 0

    def add(self, node, expected, actual) -> None:
        self.total_mismatches += 1
        if len(self.mismatches) < MAX_STORED_MISMATCHES:
            self.mismatches.append((node, expected, actual))

    def tally(self, count: int) -> None:
        self.checked += count

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({self.total_mismatches} mismatches)"
        return f"{self.suite} [{self.label}]: {self.checked} checked, {state}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "label": self.label,
            "checked": self.checked,
            "mismatches": self.total_mismatches,
            "examples": [
                {"node": str(n), "expected": str(e), "actual": str(a)}
                for n, e, a in self.mismatches
            ],
            "passed": self.passed,
        }


# --- dual graph restoration ---------------------------------------------------


@dataclass
class DualGraph:
    params: TilingParams
    kind: TreeKind
    depth: int
    adjacency: dict[int, list[NeighborRef]]

    def degree(self) -> int:
        return self.params.degree


def _ring_pred(tree: GeneratedTree, v: int) -> NeighborRef:
    n = tree.level(v)
    if v == tree.offsets[n]:
        return NeighborRef(Tag.PREV, tree.offsets[n + 1] - 1)
    return NeighborRef(Tag.SAME, v - 1)


def _ring_succ(tree: GeneratedTree, v: int) -> NeighborRef:
    n = tree.level(v)
    if v == tree.offsets[n + 1] - 1:
        return NeighborRef(Tag.NEXT, tree.offsets[n])
    return NeighborRef(Tag.SAME, v + 1)


def build_dual_graph(params: TilingParams, kind: TreeKind, depth: int,
                     max_nodes: int = 10**7) -> DualGraph:
    """Adjacency of every middle-copy tile at levels <= depth-1.

    Built from the leftmost tree only: father, ring neighbors, children,
    and the first son of the ring successor; a first son also receives the
    edge from its father's ring predecessor.  For the preferred kind the
    cycle is rotated to start at the preferred-tree father.
    """
    if depth < 2:
        raise ValueError("depth must be >= 2")
    left = generate(params, TreeKind.LEFTMOST, depth, max_nodes)
    pref = left if kind is TreeKind.LEFTMOST else generate(params, TreeKind.PREFERRED,
                                                           depth, max_nodes)
    p3 = params.grid is Grid.P3
    adjacency: dict[int, list[NeighborRef]] = {}

    root_cycle = [NeighborRef(Tag.SAME, 0)]
    if p3:
        root_cycle.append(NeighborRef(Tag.PREV, 1))
    root_cycle += [NeighborRef(Tag.SAME, x) for x in left.children(1)]
    root_cycle.append(NeighborRef(Tag.NEXT, 2))
    if p3:
        root_cycle.append(NeighborRef(Tag.NEXT, 1))
    adjacency[1] = root_cycle

    for v in range(2, left.offsets[depth]):
        fa = int(left.parent[v])
        pred = _ring_pred(left, v)
        succ = _ring_succ(left, v)
        succ_first = NeighborRef(succ.tag, int(left.first_child[succ.node]))
        cycle: list[NeighborRef] = [NeighborRef(Tag.SAME, fa)]
        if v == int(left.first_child[fa]):
            cycle.append(_ring_pred(left, fa))
        if p3:
            cycle.append(pred)
        cycle += [NeighborRef(Tag.SAME, x) for x in left.children(v)]
        cycle.append(succ_first)
        if p3:
            cycle.append(succ)
        if kind is TreeKind.PREFERRED:
            start = NeighborRef(Tag.SAME, int(pref.parent[v]))
            i = cycle.index(start)
            cycle = cycle[i:] + cycle[:i]
        adjacency[v] = cycle
    return DualGraph(params, kind, depth, adjacency)


# --- verification sweeps ------------------------------------------------------


def _label(params: TilingParams, kind: TreeKind | None = None, depth: int | None = None) -> str:
    grid = f"{{{params.p},3}}" if params.grid is Grid.P3 else f"{{{params.p - 2},4}}"
    bits = [f"p={params.p}", grid]
    if kind is not None:
        bits.append(kind.value)
    if depth is not None:
        bits.append(f"depth={depth}")
    return " ".join(bits)


def check_codec(params: TilingParams, n_max: int, encode_fn=None) -> VerificationReport:
    """Round-trip, successor laws, language agreement and counting laws."""
    enc = encode_fn or encode
    report = VerificationReport("codec", f"{_label(params)} N={n_max}")
    tab = table_for(params.p)
    tab.extend_to_value(n_max + 1)
    tab.extend_to_index(8)

    prev = enc(params, 0)
    if prev != ():
        report.add(0, (), prev)
    for n in range(1, n_max + 1):
        c = enc(params, n)
        if decode(params, c) != n:
            report.add(n, n, decode(params, c))
        if not is_canonical(params, c):
            report.add(n, "canonical", c)
        if increment(params, prev) != c:
            report.add(n - 1, c, increment(params, prev))
        if decrement(params, c) != prev:
            report.add(n, prev, decrement(params, c))
        k = len(c) - 1
        if not (tab.u[k] <= n < tab.u[k + 1]):
            report.add(n, f"u_{k} <= n < u_{k + 1}", len(c))
        prev = c
    report.tally(n_max)

    automaton = build_automaton(params)
    for length in range(1, 5):
        for s in itertools.product(range(params.b1 + 1), repeat=length):
            acc = automaton.accepts(s)
            can = is_canonical(params, s)
            greedy = s[0] != 0 and enc(params, decode(params, s)) == s
            if not acc == can == greedy:
                report.add(s, (can, greedy), acc)
            report.tally(1)

    counts = count_accepted(automaton, 6)
    for m in range(1, 7):
        expected = tab.u[m] - 1
        got = sum(counts[: m + 1])
        if got != expected:
            report.add(f"count<={m}", expected, got)
        report.tally(1)

    for n in range(1, 7):  # extremal coordinates per level
        if enc(params, tab.U[n]) != (1,) * (n + 1):
            report.add(tab.U[n], (1,) * (n + 1), enc(params, tab.U[n]))
        if enc(params, tab.U[n - 1] + 1) != (1,) * (n - 1) + (2,):
            report.add(tab.U[n - 1] + 1, (1,) * (n - 1) + (2,),
                       enc(params, tab.U[n - 1] + 1))
        report.tally(2)
    return report


def _expected_sig_rows(p: int, kind: TreeKind):
    """Per node category, the allowed son-signature rows."""
    b1, b2 = p - 5, p - 6
    if kind is TreeKind.PREFERRED:
        w_row = tuple(range(2, b1 + 1)) + (0, 1)
        b_row = tuple(range(2, b2 + 1)) + (0, 1)
        return {"W": [w_row], "B": [b_row]}
    return {
        "B": [tuple(range(2, b1 + 1)) + (0,)],
        "W1": [tuple(range(1, b1 + 1)) + (0,)],
        "W2": [tuple(range(2, b1 + 1)) + (0, 1), tuple(range(1, b2 + 1)) + (0, 1)],
    }


def check_tree(params: TilingParams, kind: TreeKind, depth: int,
               max_nodes: int = 10**7) -> VerificationReport:
    """Level counts, statuses, types, fathers, son rows and son coordinates."""
    p = params.p
    report = VerificationReport("tree", _label(params, kind, depth))
    tree = generate(params, kind, depth, max_nodes)
    tab = table_for(p)
    tab.extend_to_index(depth + 1)
    total = tree.num_nodes

    for n in range(depth + 1):  # level sizes and offsets
        if len(tree.level_nodes(n)) != tab.u[n]:
            report.add(f"level {n}", tab.u[n], len(tree.level_nodes(n)))
        if tree.offsets[n + 1] - 1 != tab.U[n]:
            report.add(f"offset {n}", tab.U[n], tree.offsets[n + 1] - 1)
        report.tally(2)

    is_b = tree.type_code[1:] == 0
    for n in range(depth + 1):  # B-count per level is u_{n-1}
        lo, hi = tree.offsets[n], tree.offsets[n + 1]
        expected = 0 if n == 0 else tab.u[n - 1]
        got = int(np.count_nonzero(is_b[lo - 1:hi - 1]))
        if got != expected:
            report.add(f"B-count level {n}", expected, got)
        report.tally(1)

    digits = encode_bulk(p, total)
    sig = digits[:, -1].astype(np.int64)  # lowest digit of every node

    # classify() against the materialized status/type, in bulk
    codes = tree.type_code[1:].astype(np.int64)
    if kind is TreeKind.PREFERRED:
        expected_codes = np.select(
            [sig == 0, sig == 1, sig == 2], [0, 5, 3], default=4)
        expected_codes[0] = 5  # root convention
    else:
        states = leftmost_types_bulk(params, digits)
        expected_codes = np.select(
            [states == machines.LB, states == machines.LW1], [0, 1], default=2)
    bad = np.nonzero(codes != expected_codes)[0]
    for i in bad[:8]:
        v = int(i) + 1
        report.add(v, int(codes[i]), int(expected_codes[i]))
    report.total_mismatches += max(0, len(bad) - 8)
    report.tally(total)

    # father() against the parent array, in bulk: the prefix value plus the
    # digit-dependent shift.  The prefix drops the last digit, so its weights
    # are the u-table shifted one place down.
    masked = np.where(digits < 0, 0, digits).astype(np.int64)
    prefix_weights = np.array([tab.u[digits.shape[1] - 2 - j]
                               for j in range(digits.shape[1] - 1)], dtype=np.int64)
    prefix_vals = masked[:, :-1] @ prefix_weights
    fathers = prefix_vals.copy()
    bump = sig >= 2
    if kind is TreeKind.LEFTMOST:
        types = expected_codes  # validated above
        prefix_type = np.zeros(total, dtype=np.int64)
        has_prefix = prefix_vals >= 1
        prefix_type[has_prefix] = types[prefix_vals[has_prefix] - 1]
        bump = bump | ((sig == 1) & has_prefix & (prefix_type != 2))
    fathers[bump] += 1
    fathers[0] = 0  # the root
    bad = np.nonzero(fathers != tree.parent[1:])[0]
    for i in bad[:8]:
        report.add(int(i) + 1, int(tree.parent[i + 1]), int(fathers[i]))
    report.total_mismatches += max(0, len(bad) - 8)
    report.tally(total)

    # son-signature rows, grouped by category
    rows = _expected_sig_rows(p, kind)
    inner = tree.offsets[depth] - 1  # nodes with materialized children
    fc = tree.first_child[1:inner + 1].astype(np.int64)
    for cat, patterns in rows.items():
        if kind is TreeKind.PREFERRED:
            mask = ~is_b[:inner] if cat == "W" else is_b[:inner]
        else:
            code = {"B": 0, "W1": 1, "W2": 2}[cat]
            mask = codes[:inner] == code
        idx = np.nonzero(mask)[0]
        if idx.size == 0:
            continue
        width = len(patterns[0])
        block = sig[(fc[idx][:, None] + np.arange(width)[None, :]) - 1]
        ok = np.zeros(len(idx), dtype=bool)
        for pattern in patterns:
            ok |= np.all(block == np.array(pattern), axis=1)
        bad = np.nonzero(~ok)[0]
        for i in bad[:8]:
            report.add(int(idx[i]) + 1, patterns, block[i].tolist())
        report.total_mismatches += max(0, len(bad) - 8)
        report.tally(len(idx))

    # main B-line (preferred display): u_1, u_2, ... are successive B-sons
    if kind is TreeKind.PREFERRED:
        for n in range(1, depth):
            v, w = tab.u[n], tab.u[n + 1]
            if tree.status(v) is not NodeStatus.B:
                report.add(v, "B", tree.status(v).value)
            if int(tree.parent[w]) != v or tree.status(w) is not NodeStatus.B:
                report.add(w, f"B-son of {v}", int(tree.parent[w]))
            report.tally(2)

    # son coordinates against the actual children blocks
    sons_fn = sons_preferred if kind is TreeKind.PREFERRED else sons_leftmost
    for v in range(1, inner + 1):
        c = encode(params, v)
        got = [decode(params, s) for s in sons_fn(params, c)]
        expected = list(tree.children(v))
        if got != expected:
            report.add(v, expected, got)
        report.tally(1)
    return report


def check_paths(params: TilingParams, kind: TreeKind, depth: int,
                max_nodes: int = 10**7, scalar_samples: int = 2000) -> VerificationReport:
    """follow(path(encode(n))) = n for every materialized node (bulk), with
    scalar/bulk agreement on a sample and the leftmost-minimality law."""
    report = VerificationReport("paths", _label(params, kind, depth))
    tree = generate(params, kind, depth, max_nodes)
    total = tree.num_nodes
    digits = encode_bulk(params.p, total)
    steps = paths_bulk(params, kind, digits)
    reached = follow_bulk(tree, steps)
    bad = np.nonzero(reached != np.arange(1, total + 1))[0]
    for i in bad[:8]:
        report.add(int(i) + 1, int(i) + 1, int(reached[i]))
    report.total_mismatches += max(0, len(bad) - 8)
    report.tally(total)

    stride = max(1, total // scalar_samples)
    for v in range(1, total + 1, stride):
        scalar = path_for(params, kind, encode(params, v))
        bulk = tuple(int(s) for s in steps[v - 1] if s > 0)
        if scalar != bulk:
            report.add(v, bulk, scalar)
        report.tally(1)

    if kind is TreeKind.LEFTMOST:
        # preferred-path nodes never exceed leftmost-path nodes at equal level
        pref_tree = generate(params, TreeKind.PREFERRED, depth, max_nodes)
        pref_steps = paths_bulk(params, TreeKind.PREFERRED, digits)
        at_left = np.ones(total, dtype=np.int64)
        at_pref = np.ones(total, dtype=np.int64)
        for i in range(steps.shape[1]):
            ls = steps[:, i].astype(np.int64)
            ps = pref_steps[:, i].astype(np.int64)
            m = ls > 0
            if not np.array_equal(m, ps > 0):
                report.add(f"col {i}", "aligned step masks", "misaligned")
                break
            at_left[m] = tree.first_child[at_left[m]] + ls[m] - 1
            at_pref[m] = pref_tree.first_child[at_pref[m]] + ps[m] - 1
            offenders = np.nonzero(at_pref > at_left)[0]
            for j in offenders[:4]:
                report.add(int(j) + 1, f">= {int(at_pref[j])}", int(at_left[j]))
            report.total_mismatches += max(0, len(offenders) - 4)
        report.tally(total)
    return report


def check_neighbors(params: TilingParams, kind: TreeKind, depth: int,
                    max_nodes: int = 10**7) -> VerificationReport:
    """Closed-form neighbors() against the restored dual graph, slot by slot."""
    report = VerificationReport("neighbors", _label(params, kind, depth))
    dual = build_dual_graph(params, kind, depth, max_nodes)
    tab = table_for(params.p)
    last_checked = tab.U[depth - 2] if depth >= 2 else 0
    for v in range(1, last_checked + 1):
        closed = neighbors(params, kind, encode(params, v))
        structural = dual.adjacency[v]
        if closed != structural:
            report.add(v, structural, closed)
        if len(closed) != params.degree:
            report.add(v, f"degree {params.degree}", len(closed))
        report.tally(1)
    return report


def check_symmetry(params: TilingParams, kind: TreeKind, depth: int) -> VerificationReport:
    """In-tree dual edges are symmetric: b in N(a) iff a in N(b)."""
    report = VerificationReport("symmetry", _label(params, kind, depth))
    tab = table_for(params.p)
    last = tab.U[depth - 2]
    sets: dict[int, set[int]] = {}
    for v in range(1, last + 1):
        sets[v] = {r.node for r in neighbors(params, kind, encode(params, v))
                   if r.tag is Tag.SAME}
    for v in range(1, last + 1):
        for w in sets[v]:
            if 1 <= w <= last and v not in sets[w]:
                report.add((v, w), "symmetric", "one-sided")
        report.tally(1)
    return report


SUITE_FUNCTIONS = {
    "codec": lambda params, kind, depth, n: check_codec(params, n),
    "tree": lambda params, kind, depth, n: check_tree(params, kind, depth),
    "paths": lambda params, kind, depth, n: check_paths(params, kind, depth),
    "neighbors": lambda params, kind, depth, n: check_neighbors(params, kind, depth),
}
