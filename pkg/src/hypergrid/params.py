"""Tiling parameters for the tessellations {p,3} and {p-2,4} with p >= 7."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Grid(Enum):
    """Which tessellation the dual graph targets."""

    P3 = "p3"        # {p,3}: p-gons, three around each vertex
    PM24 = "pm24"    # {p-2,4}: (p-2)-gons, four around each vertex


class TreeKind(Enum):
    """Display rule for the spanning tree of a sector."""

    PREFERRED = "preferred"   # B-son penultimate among the sons
    LEFTMOST = "leftmost"     # B-son first among the sons


@dataclass(frozen=True)
class TilingParams:
    """The single integer parameter p plus the targeted grid.

    Derived constants: b = p-4 (recurrence coefficient), b1 = p-5 and
    b2 = p-6 (the two largest digits of the numeration system).
    """

    p: int
    grid: Grid = Grid.P3

    def __post_init__(self) -> None:
        if self.p < 7:
            raise ValueError(f"p must be >= 7, got {self.p}")

    @property
    def b(self) -> int:
        return self.p - 4

    @property
    def b1(self) -> int:
        return self.p - 5

    @property
    def b2(self) -> int:
        return self.p - 6

    @property
    def degree(self) -> int:
        """Number of neighbors of a tile in the chosen grid."""
        return self.p if self.grid is Grid.P3 else self.p - 2
