"""Finite recognizer of the canonical coordinate language.

The language of canonical digit strings over {0..b1} is rational: a string
is accepted iff it has no leading zero and avoids the factor b1 b2^k b1.
Four states suffice: RUN remembers a pending suffix b1 b2^j that a further
b1 would complete into the forbidden factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .params import TilingParams


class State(Enum):
    START = "start"
    PLAIN = "plain"
    RUN = "run"
    DEAD = "dead"


@dataclass(frozen=True)
class CoordinateAutomaton:
    p: int
    accept_empty: bool = False  # admit "" as the node-0 sentinel
    table: dict[tuple[State, int], State] = field(repr=False, default_factory=dict)

    @property
    def accepting(self) -> frozenset[State]:
        base = {State.PLAIN, State.RUN}
        if self.accept_empty:
            base.add(State.START)
        return frozenset(base)

    def step(self, state: State, digit: int) -> State:
        return self.table.get((state, digit), State.DEAD)

    def accepts(self, digits: tuple[int, ...]) -> bool:
        state = State.START
        for d in digits:
            state = self.step(state, d)
            if state is State.DEAD:
                return False
        return state in self.accepting


def build_automaton(params: TilingParams, accept_empty: bool = False) -> CoordinateAutomaton:
    b1, b2 = params.b1, params.b2
    table: dict[tuple[State, int], State] = {}
    for d in range(b1 + 1):
        # START: leading zero dies, b1 opens a run, anything else is plain.
        if d == 0:
            table[State.START, d] = State.DEAD
        elif d == b1:
            table[State.START, d] = State.RUN
        else:
            table[State.START, d] = State.PLAIN
        # PLAIN: only b1 opens a run.
        table[State.PLAIN, d] = State.RUN if d == b1 else State.PLAIN
        # RUN: b2 extends it, b1 completes the forbidden factor, else back to plain.
        if d == b1:
            table[State.RUN, d] = State.DEAD
        elif d == b2:
            table[State.RUN, d] = State.RUN
        else:
            table[State.RUN, d] = State.PLAIN
        table[State.DEAD, d] = State.DEAD
    return CoordinateAutomaton(params.p, accept_empty, table)


def count_accepted(automaton: CoordinateAutomaton, max_len: int) -> list[int]:
    """Number of accepted strings of each length 0..max_len (by DP, not
    enumeration); the counting law says the totals up to length m sum to
    u_m - 1."""
    b1 = automaton.p - 5
    counts: list[int] = [1 if automaton.accept_empty else 0]
    dist = {State.START: 1}
    for _ in range(max_len):
        nxt: dict[State, int] = {}
        for state, mult in dist.items():
            for d in range(b1 + 1):
                t = automaton.step(state, d)
                if t is not State.DEAD:
                    nxt[t] = nxt.get(t, 0) + mult
        dist = nxt
        counts.append(sum(m for s, m in dist.items() if s in (State.PLAIN, State.RUN)))
    return counts
