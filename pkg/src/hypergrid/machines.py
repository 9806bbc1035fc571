"""Digit-driven state machines over the coordinate string.

Scanning a canonical coordinate from the most significant digit, each step
tracks the tree positions of the prefix node and of its successor (the two
milestones of the path algorithms), plus both nodes' statuses or types.
The same transitions classify a node when only the final state is kept.

Each step function returns (copy, l_step, r_step, sl, sr):

  copy    - which milestone table restarts from the other one's prefix
  l_step  - child index appended to the left milestone (0 = the root marker,
            possible only at the top digit)
  r_step  - child index appended to the right milestone
  sl, sr  - new states of the prefix node and of prefix+1

The transitions below repair the misprints of the published pseudo-code
(wrong carry-status test, missing right-milestone initialisation, B-sons
misclassified at digits 1 and 2); each repair is pinned by the oracle
equality follow(path(encode(n))) = n exercised over whole trees.
"""

from __future__ import annotations

from .errors import NonCanonicalError

COPY_NONE = 0
COPY_L_FROM_R = 1   # left milestone jumps to the right one's subtree
COPY_R_FROM_L = 2   # right milestone restarts above the left one

# preferred-son machine states
W = 0
B = 1

# leftmost machine states (general p >= 8)
LB = 0
LW1 = 1
LW2 = 2

# p=7 leftmost machine states (signature naming: W0 = sig-0 W, W1 = sig-1 W)
L7B = 0
L7W0 = 1
L7W1 = 2


def pref_step(p: int, sl: int, sr: int, d: int, at_top: bool):
    """One digit of the preferred-son path machine (p >= 8)."""
    b1, b2 = p - 5, p - 6
    if at_top:
        if d == 1:
            return COPY_NONE, 0, 1, W, W
        return COPY_NONE, d - 1, d, W, (B if d == b1 else W)
    if d >= 2:
        # prefix node becomes a son of the old right milestone
        carry = (sr == B and d == b2) or (sr == W and d == b1)
        return COPY_L_FROM_R, d - 1, d, W, (B if carry else W)
    if d == 0:
        step = p - 6 if sl == B else p - 5
        return COPY_R_FROM_L, step, step + 1, B, W
    # d == 1: last son of the prefix; successor is the first son of prefix+1
    return COPY_NONE, (p - 5 if sl == B else p - 4), 1, W, W


def left_step(p: int, sl: int, sr: int, d: int, at_top: bool):
    """One digit of the leftmost-son path machine (p >= 8)."""
    b1, b2 = p - 5, p - 6
    if at_top:
        if d == 1:
            return COPY_NONE, 0, 1, LW2, LB
        if d == 2:
            return COPY_NONE, 1, 2, LB, LW1
        return COPY_NONE, d - 1, d, LW1, (LW2 if d == b1 else LW1)
    if sl != LW2:  # states (B, W1), (W1, W1), (W1, W2)
        if d == 0:
            return COPY_NONE, (p - 5 if sl == LB else p - 4), 1, LW2, LB
        # d in 1..b1, a son of prefix+1 at position d
        new_sl = LB if d == 1 else LW1
        carry = d == b1 or (d == b2 and sr == LW2)
        return COPY_L_FROM_R, d, d + 1, new_sl, (LW2 if carry else LW1)
    # states (W2, W2), (W2, B)
    if d == 0:
        return COPY_R_FROM_L, p - 5, p - 4, LW2, LW2
    if d == 1:
        return COPY_NONE, p - 4, 1, LW2, LB
    new_sl = LB if d == 2 else LW1
    return COPY_L_FROM_R, d - 1, d, new_sl, (LW2 if d == b1 else LW1)


def pref7_step(sl: int, d: int, at_top: bool):
    """One digit of the p=7 preferred-son machine (digits 0..2 only)."""
    if at_top:
        if d == 1:
            return COPY_NONE, 0, 1, W
        return COPY_NONE, 1, 2, W
    if d == 0:
        step = 2 if sl == W else 1
        return COPY_R_FROM_L, step, step + 1, B
    if d == 1:
        return COPY_NONE, (3 if sl == W else 2), 1, W
    return COPY_L_FROM_R, 1, 2, W


def left7_step(sl: int, d: int, at_top: bool):
    """One digit of the p=7 leftmost-son machine."""
    if at_top:
        if d == 1:
            return COPY_NONE, 0, 1, L7W1
        return COPY_NONE, 1, 2, L7B
    if sl == L7B:
        if d == 0:
            return COPY_NONE, 2, 1, L7W0
        if d == 1:
            return COPY_L_FROM_R, 1, 2, L7B
        raise NonCanonicalError("digit 2 after a 2 1* suffix")
    if d == 0:
        return COPY_R_FROM_L, 2, 3, L7W0
    if d == 1:
        return COPY_NONE, 3, 1, L7W1
    return COPY_L_FROM_R, 1, 2, L7B


def leftmost_state(p: int, digits: tuple[int, ...]) -> int:
    """Leftmost-tree state of the node itself: LB, LW1 or LW2.

    Walks the whole coordinate; the empty coordinate (the root's father)
    is not classifiable and the root "1" comes out as LW2.
    """
    if p == 7:
        sl = L7W1
        for idx, d in enumerate(digits):
            sl = left7_step(sl, d, idx == 0)[3]
        # p=7 W-nodes are all of general type 2
        return LB if sl == L7B else LW2
    sl = sr = LW2
    for idx, d in enumerate(digits):
        _, _, _, sl, sr = left_step(p, sl, sr, d, idx == 0)
    return sl
