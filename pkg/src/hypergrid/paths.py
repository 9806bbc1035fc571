"""Root-to-node paths computed from the coordinate, in linear time.

A path is the sequence of 1-based child indices taken from the root; the
empty path is the root itself.  The algorithms sweep the digits from the
most significant end keeping two milestone paths (to the prefix node and
to its successor); a shared-prefix pointer makes the total copying linear
in the coordinate length.

The bulk variants run the same machines column-wise with numpy over a
whole range of nodes at once; they exist for the exhaustive verification
sweeps and are cross-checked against the scalar functions in the tests.
"""

from __future__ import annotations

import numpy as np

from . import machines
from .coordinates import Digits, is_canonical
from .errors import (
    InvalidDigitError,
    NonCanonicalError,
    PathError,
    UnsupportedParameterError,
)
from .params import TilingParams, TreeKind
from .sequences import table_for
from .tree import GeneratedTree

Path = tuple[int, ...]


def _run(digits: Digits, step_fn) -> Path:
    size = len(digits)
    left = [0] * size
    right = [0] * size
    shared = 0  # left[:shared] == right[:shared]
    state = None
    for i, d in enumerate(digits):
        copy, l_step, r_step, *state = step_fn(state, d, i == 0)
        if copy == machines.COPY_L_FROM_R:
            left[shared:i] = right[shared:i]
            shared = i
        elif copy == machines.COPY_R_FROM_L:
            right[shared:i] = left[shared:i]
            shared = i
        left[i] = l_step
        right[i] = r_step
    return tuple(s for s in left if s > 0)


def path_preferred(params: TilingParams, c: Digits) -> Path:
    """Branch from the root in the preferred-son tree (general algorithm, p >= 8)."""
    if params.p == 7:
        raise UnsupportedParameterError(
            "the general algorithm degenerates at p=7; use path_preferred_p7")
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    p = params.p

    def step(state, d, at_top):
        sl, sr = state if state else (machines.W, machines.W)
        return machines.pref_step(p, sl, sr, d, at_top)

    return _run(c, step)


def path_leftmost(params: TilingParams, c: Digits) -> Path:
    """Branch from the root in the leftmost-son tree (general algorithm, p >= 8)."""
    if params.p == 7:
        raise UnsupportedParameterError(
            "the general algorithm degenerates at p=7; use path_leftmost_p7")
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")
    p = params.p

    def step(state, d, at_top):
        sl, sr = state if state else (machines.LW2, machines.LW2)
        return machines.left_step(p, sl, sr, d, at_top)

    return _run(c, step)


def _check_p7_digits(c: Digits) -> None:
    if any(d > 2 for d in c):
        raise InvalidDigitError("p=7 coordinates use digits 0..2 only")


def path_preferred_p7(c: Digits) -> Path:
    """Branch from the root in the p=7 preferred-son tree."""
    params = TilingParams(7)
    _check_p7_digits(c)
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")

    def step(state, d, at_top):
        sl = state[0] if state else machines.W
        copy, ls, rs, new_sl = machines.pref7_step(sl, d, at_top)
        return copy, ls, rs, new_sl

    return _run(c, step)


def path_leftmost_p7(c: Digits) -> Path:
    """Branch from the root in the p=7 leftmost-son tree (the leftmost path)."""
    params = TilingParams(7)
    _check_p7_digits(c)
    if not is_canonical(params, c):
        raise NonCanonicalError(f"non-canonical coordinate {list(c)}")

    def step(state, d, at_top):
        sl = state[0] if state else machines.L7W1
        copy, ls, rs, new_sl = machines.left7_step(sl, d, at_top)
        return copy, ls, rs, new_sl

    return _run(c, step)


def path_for(params: TilingParams, kind: TreeKind, c: Digits) -> Path:
    """Kind dispatch, selecting the p=7 specialisations automatically."""
    if params.p == 7:
        return path_preferred_p7(c) if kind is TreeKind.PREFERRED else path_leftmost_p7(c)
    if kind is TreeKind.PREFERRED:
        return path_preferred(params, c)
    return path_leftmost(params, c)


def follow(tree: GeneratedTree, path) -> int:
    """Node reached from the root by taking the given child indices."""
    if len(path) > tree.depth:
        raise PathError(f"path of length {len(path)} exceeds tree depth {tree.depth}")
    v = 1
    for step in path:
        if not 1 <= step <= tree.child_count(v):
            raise PathError(f"child index {step} out of range at node {v}")
        v = int(tree.first_child[v]) + step - 1
    return v


# --- bulk (vectorized) drivers ----------------------------------------------


def encode_bulk(p: int, count: int) -> np.ndarray:
    """Digit matrix of nodes 1..count, one row each, most significant digit
    first; unused leading positions hold -1."""
    tab = table_for(p)
    tab.extend_to_value(count)
    width = 1
    while tab.u[width] <= count:
        width += 1
    if tab.u[width] > 2**62:
        raise OverflowError("values too large for the vectorized lane")
    digits = np.empty((count, width), dtype=np.int8)
    rem = np.arange(1, count + 1, dtype=np.int64)
    for col in range(width):
        base = tab.u[width - 1 - col]
        q = rem // base
        rem -= q * base
        digits[:, col] = q
    started = np.maximum.accumulate(digits > 0, axis=1)
    return np.where(started, digits, np.int8(-1))


def _bulk_frame(digit_matrix: np.ndarray):
    n, width = digit_matrix.shape
    left = np.zeros((n, width), dtype=np.int8)
    right = np.zeros((n, width), dtype=np.int8)
    started = np.zeros(n, dtype=bool)
    return left, right, started


def paths_bulk_preferred(p: int, digit_matrix: np.ndarray) -> np.ndarray:
    left, right, started = _bulk_frame(digit_matrix)
    b1, b2 = p - 5, p - 6
    sl = np.zeros(len(left), dtype=np.int8)
    sr = np.zeros(len(left), dtype=np.int8)
    for i in range(digit_matrix.shape[1]):
        d = digit_matrix[:, i]
        valid = d >= 0
        top = valid & ~started
        act = valid & started
        started |= top

        t1 = top & (d == 1)
        right[t1, i] = 1
        t2 = top & (d >= 2)
        left[t2, i] = d[t2] - 1
        right[t2, i] = d[t2]
        sl[top] = machines.W
        sr[top] = machines.W
        sr[t2 & (d == b1)] = machines.B

        sl0, sr0 = sl.copy(), sr.copy()
        m2 = act & (d >= 2)
        m0 = act & (d == 0)
        m1 = act & (d == 1)

        left[m2, :i] = right[m2, :i]
        left[m2, i] = d[m2] - 1
        right[m2, i] = d[m2]
        carry = m2 & (((sr0 == machines.B) & (d == b2)) | ((sr0 == machines.W) & (d == b1)))
        sl[m2] = machines.W
        sr[m2] = machines.W
        sr[carry] = machines.B

        right[m0, :i] = left[m0, :i]
        step0 = np.where(sl0 == machines.B, p - 6, p - 5).astype(np.int8)
        left[m0, i] = step0[m0]
        right[m0, i] = step0[m0] + 1
        sl[m0] = machines.B
        sr[m0] = machines.W

        left[m1, i] = np.where(sl0[m1] == machines.B, p - 5, p - 4)
        right[m1, i] = 1
        sl[m1] = machines.W
        sr[m1] = machines.W
    return left


def paths_bulk_leftmost(p: int, digit_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Step matrix plus the final node states (for bulk classification)."""
    left, right, started = _bulk_frame(digit_matrix)
    b1, b2 = p - 5, p - 6
    sl = np.full(len(left), machines.LW2, dtype=np.int8)
    sr = np.full(len(left), machines.LW2, dtype=np.int8)
    for i in range(digit_matrix.shape[1]):
        d = digit_matrix[:, i]
        valid = d >= 0
        top = valid & ~started
        act = valid & started
        started |= top

        t1 = top & (d == 1)
        right[t1, i] = 1
        sl[t1] = machines.LW2
        sr[t1] = machines.LB
        t2 = top & (d == 2)
        left[t2, i] = 1
        right[t2, i] = 2
        sl[t2] = machines.LB
        sr[t2] = machines.LW1
        t3 = top & (d >= 3)
        left[t3, i] = d[t3] - 1
        right[t3, i] = d[t3]
        sl[t3] = machines.LW1
        sr[t3] = machines.LW1
        sr[t3 & (d == b1)] = machines.LW2

        sl0, sr0 = sl.copy(), sr.copy()
        g1 = act & (sl0 != machines.LW2)
        g2 = act & (sl0 == machines.LW2)

        m = g1 & (d == 0)
        left[m, i] = np.where(sl0[m] == machines.LB, p - 5, p - 4)
        right[m, i] = 1
        sl[m] = machines.LW2
        sr[m] = machines.LB

        m = g1 & (d >= 1)
        left[m, :i] = right[m, :i]
        left[m, i] = d[m]
        right[m, i] = d[m] + 1
        sl[m] = np.where(d[m] == 1, machines.LB, machines.LW1)
        carry = m & ((d == b1) | ((d == b2) & (sr0 == machines.LW2)))
        sr[m] = machines.LW1
        sr[carry] = machines.LW2

        m = g2 & (d == 0)
        right[m, :i] = left[m, :i]
        left[m, i] = p - 5
        right[m, i] = p - 4
        sl[m] = machines.LW2
        sr[m] = machines.LW2

        m = g2 & (d == 1)
        left[m, i] = p - 4
        right[m, i] = 1
        sl[m] = machines.LW2
        sr[m] = machines.LB

        m = g2 & (d >= 2)
        left[m, :i] = right[m, :i]
        left[m, i] = d[m] - 1
        right[m, i] = d[m]
        sl[m] = np.where(d[m] == 2, machines.LB, machines.LW1)
        sr[m] = np.where(d[m] == b1, machines.LW2, machines.LW1)
    return left, sl


def paths_bulk_preferred_p7(digit_matrix: np.ndarray) -> np.ndarray:
    left, right, started = _bulk_frame(digit_matrix)
    sl = np.zeros(len(left), dtype=np.int8)
    for i in range(digit_matrix.shape[1]):
        d = digit_matrix[:, i]
        valid = d >= 0
        top = valid & ~started
        act = valid & started
        started |= top

        t1 = top & (d == 1)
        right[t1, i] = 1
        t2 = top & (d == 2)
        left[t2, i] = 1
        right[t2, i] = 2
        sl[top] = machines.W

        sl0 = sl.copy()
        m = act & (d == 0)
        right[m, :i] = left[m, :i]
        step0 = np.where(sl0 == machines.W, 2, 1).astype(np.int8)
        left[m, i] = step0[m]
        right[m, i] = step0[m] + 1
        sl[m] = machines.B

        m = act & (d == 1)
        left[m, i] = np.where(sl0[m] == machines.W, 3, 2)
        right[m, i] = 1
        sl[m] = machines.W

        m = act & (d == 2)
        left[m, :i] = right[m, :i]
        left[m, i] = 1
        right[m, i] = 2
        sl[m] = machines.W
    return left


def paths_bulk_leftmost_p7(digit_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    left, right, started = _bulk_frame(digit_matrix)
    sl = np.full(len(left), machines.L7W1, dtype=np.int8)
    for i in range(digit_matrix.shape[1]):
        d = digit_matrix[:, i]
        valid = d >= 0
        top = valid & ~started
        act = valid & started
        started |= top

        t1 = top & (d == 1)
        right[t1, i] = 1
        sl[t1] = machines.L7W1
        t2 = top & (d == 2)
        left[t2, i] = 1
        right[t2, i] = 2
        sl[t2] = machines.L7B

        sl0 = sl.copy()
        gb = act & (sl0 == machines.L7B)
        gw = act & (sl0 != machines.L7B)

        m = gb & (d == 0)
        left[m, i] = 2
        right[m, i] = 1
        sl[m] = machines.L7W0

        m = gb & (d == 1)
        left[m, :i] = right[m, :i]
        left[m, i] = 1
        right[m, i] = 2
        sl[m] = machines.L7B

        if np.any(gb & (d == 2)):
            raise NonCanonicalError("digit 2 after a 2 1* suffix")

        m = gw & (d == 0)
        right[m, :i] = left[m, :i]
        left[m, i] = 2
        right[m, i] = 3
        sl[m] = machines.L7W0

        m = gw & (d == 1)
        left[m, i] = 3
        right[m, i] = 1
        sl[m] = machines.L7W1

        m = gw & (d == 2)
        left[m, :i] = right[m, :i]
        left[m, i] = 1
        right[m, i] = 2
        sl[m] = machines.L7B
    return left, sl


def paths_bulk(params: TilingParams, kind: TreeKind, digit_matrix: np.ndarray) -> np.ndarray:
    if params.p == 7:
        if kind is TreeKind.PREFERRED:
            return paths_bulk_preferred_p7(digit_matrix)
        return paths_bulk_leftmost_p7(digit_matrix)[0]
    if kind is TreeKind.PREFERRED:
        return paths_bulk_preferred(params.p, digit_matrix)
    return paths_bulk_leftmost(params.p, digit_matrix)[0]


def leftmost_types_bulk(params: TilingParams, digit_matrix: np.ndarray) -> np.ndarray:
    """Final leftmost-machine states for a block of nodes (LB / LW1 / LW2)."""
    if params.p == 7:
        states = paths_bulk_leftmost_p7(digit_matrix)[1]
        return np.where(states == machines.L7B, machines.LB, machines.LW2).astype(np.int8)
    return paths_bulk_leftmost(params.p, digit_matrix)[1]


def follow_bulk(tree: GeneratedTree, step_matrix: np.ndarray) -> np.ndarray:
    """Vectorized follow over rows of a step matrix (0 entries are skipped)."""
    nodes = np.ones(len(step_matrix), dtype=np.int64)
    for i in range(step_matrix.shape[1]):
        step = step_matrix[:, i].astype(np.int64)
        m = step > 0
        nodes[m] = tree.first_child[nodes[m]] + step[m] - 1
    return nodes
