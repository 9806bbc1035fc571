"""The level-count sequences u_n, U_n (and the B-rooted variants y_n, Y_n).

u counts the nodes on level n of a sector tree, U the nodes down to level n:

    u_{-1} = 0,  u_0 = 1,  u_{n+2} = (p-4) u_{n+1} - u_n
    U_0 = u_0,   U_{n+1} = U_n + u_{n+1}

Plain Python integers are used throughout, so the values never overflow
however deep the table grows.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

from .params import TilingParams


@dataclass
class SequenceTable:
    """Growable table of u_n, U_n, y_n, Y_n for one value of p."""

    p: int
    u: list[int] = field(default_factory=list)
    U: list[int] = field(default_factory=list)
    y: list[int] = field(default_factory=list)
    Y: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.u:
            self.u = [1, self.p - 4]
            self.U = [1, self.p - 3]
            self.y = [1, self.p - 5]
            self.Y = [1, self.p - 4]

    def extend_to_index(self, nmax: int) -> None:
        b = self.p - 4
        while len(self.u) <= nmax:
            self.u.append(b * self.u[-1] - self.u[-2])
            self.U.append(self.U[-1] + self.u[-1])
            self.y.append(self.u[-1] - self.u[-2])
            self.Y.append(self.U[-1] - self.U[-2])

    def extend_to_value(self, n: int) -> None:
        """Grow until u[-1] > n (so every number up to n is encodable)."""
        while self.u[-1] <= n:
            self.extend_to_index(len(self.u))

    def v(self, n: int) -> int:
        """B-node count on level n (one B-son per node of the level above)."""
        if n == 0:
            return 0
        self.extend_to_index(n - 1)
        return self.u[n - 1]

    def w(self, n: int) -> int:
        """W-node count on level n."""
        self.extend_to_index(n)
        return self.u[n] - self.v(n)

    def level_of(self, n: int) -> int:
        """The level L with U_{L-1} < n <= U_L; n must be >= 1."""
        if n < 1:
            raise ValueError("node numbers start at 1; 0 is the father-of-root sentinel")
        self.extend_to_value(n)
        return bisect_left(self.U, n)


_TABLES: dict[int, SequenceTable] = {}


def table_for(p: int) -> SequenceTable:
    """Shared per-p table (append-only growth, safe to reuse)."""
    tab = _TABLES.get(p)
    if tab is None:
        tab = _TABLES[p] = SequenceTable(p)
    return tab


def build_sequences(params: TilingParams, nmax: int) -> SequenceTable:
    """Fresh table holding u_0..u_nmax and the companion sequences."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    tab = SequenceTable(params.p)
    tab.extend_to_index(max(nmax, 1))
    return tab


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    counterexample: str | None = None


def verify_identities(params: TilingParams, nmax: int, kmax: int) -> list[IdentityCheck]:
    """Evaluate the defining identities and bounds of the sequences.

    Every identity is checked for 0 <= n <= nmax (or 1 <= n where the
    statement requires positive n) and 1 <= k <= kmax; the first failing
    instance, if any, is reported as a counterexample.
    """
    if nmax < 1 or kmax < 1:
        raise ValueError("nmax and kmax must be >= 1")
    p = params.p
    tab = build_sequences(params, nmax + kmax + 2)
    u, U, y, Y = tab.u, tab.U, tab.y, tab.Y

    def ui(n: int) -> int:  # u with u_{-1} = 0
        return 0 if n < 0 else u[n]

    checks: list[IdentityCheck] = []

    def check(name: str, instances) -> None:
        for label, ok in instances:
            if not ok:
                checks.append(IdentityCheck(name, False, label))
                return
        checks.append(IdentityCheck(name, True))

    check("u-recurrence", (
        (f"n={n}", u[n + 2] == (p - 4) * u[n + 1] - u[n]) for n in range(nmax + 1)))
    check("U-cumulative", (
        (f"n={n}", U[n + 1] == U[n] + u[n + 1]) for n in range(nmax + 1)))
    check("u-strictly-increasing", (
        (f"n={n}", u[n + 1] > u[n]) for n in range(nmax + 1)))
    check("U-strictly-increasing", (
        (f"n={n}", U[n + 1] > U[n]) for n in range(nmax + 1)))

    # Two-kind level counts: v_{n+1} = v_n + w_n, w_{n+1} = (p-6)v_n + (p-5)w_n.
    def vw_ok(n: int) -> bool:
        v0, w0 = tab.v(n), tab.w(n)
        return tab.v(n + 1) == v0 + w0 and tab.w(n + 1) == (p - 6) * v0 + (p - 5) * w0

    check("vw-recurrence", ((f"n={n}", vw_ok(n)) for n in range(nmax + 1)))
    check("v-equals-previous-u", ((f"n={n}", tab.v(n + 1) == u[n]) for n in range(nmax + 1)))

    check("sum-collapse", (  # (p-5)u_{n+k} + (p-5)u_n + sum (p-6)u_{n+i} = u_{n+k+1} + u_{n-1}
        (f"n={n},k={k}",
         (p - 5) * u[n + k] + (p - 5) * u[n]
         + sum((p - 6) * u[n + i] for i in range(1, k)) == u[n + k + 1] + ui(n - 1))
        for n in range(nmax + 1) for k in range(1, kmax + 1)))

    check("predecessor-of-u", (  # (p-5)u_n + sum_{i<n} (p-6)u_i = u_{n+1} - 1
        (f"n={n}",
         (p - 5) * u[n] + sum((p - 6) * u[i] for i in range(n)) == u[n + 1] - 1)
        for n in range(nmax + 1)))

    check("u-as-digit-sum", (  # (p-5)u_n + sum_{1<=i<n} (p-6)u_i + (p-5)u_0 = u_{n+1}
        (f"n={n}",
         (p - 5) * u[n] + sum((p - 6) * u[i] for i in range(1, n)) + (p - 5) * u[0]
         == u[n + 1])
        for n in range(1, nmax + 1)))

    check("partial-sum-bound", (  # strict upper bound without the final (p-5)u_n term
        (f"n={n},k={k}",
         (p - 5) * u[n + k] + sum((p - 6) * u[n + i] for i in range(1, k)) < u[n + k + 1])
        for n in range(nmax + 1) for k in range(1, kmax + 1)))

    # Growth bounds; the right-hand one is an equality at n=0, strict afterwards.
    check("growth-lower", ((f"n={n}", (p - 5) * u[n] < u[n + 1]) for n in range(nmax + 1)))
    check("growth-upper", (
        (f"n={n}", u[n + 1] <= (p - 4) * u[n] if n == 0 else u[n + 1] < (p - 4) * u[n])
        for n in range(nmax + 1)))

    check("u-between-U-bounds", (  # U_n + (p-6)u_n < u_{n+1} < U_n + (p-5)u_n, n >= 1
        (f"n={n}", U[n] + (p - 6) * u[n] < u[n + 1] < U[n] + (p - 5) * u[n])
        for n in range(1, nmax + 1)))
    check("u-below-next-U-minus-u", (  # u_{n+1} < U_{n+1} - u_n, n >= 1
        (f"n={n}", u[n + 1] < U[n + 1] - u[n]) for n in range(1, nmax + 1)))

    check("B-rooted-level-counts", (  # u_{n+1} = (p-5)u_n + y_n
        (f"n={n}", u[n + 1] == (p - 5) * u[n] + y[n]) for n in range(nmax + 1)))
    check("y-difference", ((f"n={n}", y[n + 1] == u[n + 1] - u[n]) for n in range(nmax + 1)))
    check("Y-difference", ((f"n={n}", Y[n + 1] == U[n + 1] - U[n]) for n in range(nmax + 1)))
    check("Y-cumulative", ((f"n={n}", Y[n + 1] == Y[n] + y[n + 1]) for n in range(nmax + 1)))

    check("u-left-decomposition", (  # u_{n+1} = U_n + 1 + (p-6)u_n + sum (p-7)u_k
        (f"n={n}",
         u[n + 1] == U[n] + 1 + (p - 6) * u[n] + sum((p - 7) * u[k] for k in range(n)))
        for n in range(nmax + 1)))
    check("u-right-decomposition", (  # u_{n+1} = U_{n+1} - sum_{k<=n} u_k
        (f"n={n}", u[n + 1] == U[n + 1] - sum(u[k] for k in range(n + 1)))
        for n in range(nmax + 1)))

    if p == 7:
        check("p7-first-node-shift", (  # u_{n+1} = U_n + u_n + 1
            (f"n={n}", u[n + 1] == U[n] + u[n] + 1) for n in range(nmax + 1)))
        check("p7-predecessor-of-u", (  # 2u_n + sum_{i<n} u_i = u_{n+1} - 1
            (f"n={n}", 2 * u[n] + sum(u[i] for i in range(n)) == u[n + 1] - 1)
            for n in range(nmax + 1)))
        check("p7-characteristic-polynomial", (  # X^2 - 3X + 1 annihilates u
            (f"n={n}", u[n + 2] - 3 * u[n + 1] + u[n] == 0) for n in range(nmax + 1)))

    return checks
