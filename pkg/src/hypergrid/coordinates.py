"""Greedy positional numeration over the basis u_0, u_1, u_2, ...

A node number n >= 1 is written as a digit string a_k..a_1a_0 (most
significant first) with 0 <= a_i <= b1 = p-5 and n = sum a_i * u_i.  The
canonical form is the greedy one: it is the unique longest representation,
it never starts with 0, and it never contains the factor b1 b2^k b1 (in
particular b1 b1 is excluded).  The empty string is the conventional
coordinate of node 0, the father of the root.

Increment and decrement rewrite the digit string directly in time linear
in its length; both preserve canonicity.
"""

from __future__ import annotations

from .errors import InvalidDigitError, NonCanonicalError, UnderflowError
from .params import TilingParams
from .sequences import table_for

Digits = tuple[int, ...]

_B36 = "0123456789abcdefghijklmnopqrstuvwxyz"
_B36_VAL = {c: v for v, c in enumerate(_B36)}


def _check_digits(params: TilingParams, digits: Digits) -> None:
    b1 = params.b1
    for d in digits:
        if not 0 <= d <= b1:
            raise InvalidDigitError(f"digit {d} outside 0..{b1} for p={params.p}")


def is_canonical(params: TilingParams, digits: Digits) -> bool:
    """True iff the string is empty or greedy: in-range digits, no leading
    zero and no factor b1 b2^k b1 (k >= 0)."""
    if not digits:
        return True
    b1, b2 = params.b1, params.b2
    if digits[0] == 0:
        return False
    if any(not 0 <= d <= b1 for d in digits):
        return False
    run = False  # inside a suffix b1 b2^j of the scanned prefix
    for d in digits:
        if run and d == b1:
            return False
        if d == b1:
            run = True
        elif d != b2:
            run = False
    return True


def _require_canonical(params: TilingParams, digits: Digits) -> None:
    if not is_canonical(params, digits):
        raise NonCanonicalError(f"non-canonical coordinate {list(digits)} for p={params.p}")


def decode(params: TilingParams, digits: Digits) -> int:
    """Value sum a_i * u_i of any in-range digit string (canonical or not)."""
    _check_digits(params, digits)
    tab = table_for(params.p)
    tab.extend_to_index(max(len(digits), 1))
    n = 0
    for i, d in enumerate(reversed(digits)):
        n += d * tab.u[i]
    return n


def encode(params: TilingParams, n: int) -> Digits:
    """Greedy (longest) representation of n; encode(0) is the empty string."""
    if n < 0:
        raise ValueError("node numbers are non-negative")
    if n == 0:
        return ()
    tab = table_for(params.p)
    tab.extend_to_value(n)
    k = 0
    while tab.u[k] <= n:
        k += 1
    digits = []
    for j in range(k - 1, -1, -1):
        d, n = divmod(n, tab.u[j])
        digits.append(d)
    return tuple(digits)


def increment(params: TilingParams, digits: Digits) -> Digits:
    """Canonical digits of value+1, rewriting in place of a re-encode.

    Scanning from the low end, skip the run of b2 digits; if the first
    other digit is b1 the whole run carries (b1 b2^i + 1 = u_{i+1} shifted),
    otherwise only the lowest digit moves up by one.
    """
    _require_canonical(params, digits)
    b1, b2 = params.b1, params.b2
    if not digits:
        return (1,)
    a = list(reversed(digits))  # a[0] = lowest digit
    k = len(a) - 1
    i = 0
    while i <= k and a[i] == b2:
        i += 1
    if i > k or a[i] < b1:
        a[0] += 1
    else:  # a[i] == b1: clear a_0..a_i and carry into a_{i+1}
        for j in range(i + 1):
            a[j] = 0
        if i < k:
            a[i + 1] += 1
        else:
            a.append(1)
    return tuple(reversed(a))


def decrement(params: TilingParams, digits: Digits) -> Digits:
    """Canonical digits of value-1; decrement of "1" is the empty string."""
    _require_canonical(params, digits)
    if not digits:
        raise UnderflowError("cannot decrement node 0")
    b1, b2 = params.b1, params.b2
    a = list(reversed(digits))
    i = 0
    while a[i] == 0:
        a[i] = b2
        i += 1
    a[i] -= 1
    if i > 0:
        a[i - 1] = b1
    while len(a) > 1 and a[-1] == 0:  # carry may strip the leading digit
        a.pop()
    if a == [0]:
        return ()
    return tuple(reversed(a))


def sigma(params: TilingParams, digits: Digits) -> int:
    """Number of the preferred son: the value of the coordinate with 0 appended."""
    if not digits:
        raise ValueError("node 0 has no preferred son")
    return decode(params, digits + (0,))


def signature(digits: Digits) -> int:
    """Lowest-order digit of a non-empty coordinate."""
    if not digits:
        raise ValueError("the empty coordinate has no signature")
    return digits[-1]


# --- text / JSON forms ----------------------------------------------------
#
# Compact form: one base-36 character per digit (valid while b1 <= 35, i.e.
# p <= 41).  Dotted form: decimal digits joined by ".", required for larger
# p.  A string containing "." always parses as dotted.  The empty coordinate
# renders as "-".

EMPTY_TEXT = "-"


def format_coordinate(params: TilingParams, digits: Digits) -> str:
    if not digits:
        return EMPTY_TEXT
    if params.p <= 41:
        return "".join(_B36[d] for d in digits)
    return ".".join(str(d) for d in digits)


def parse_coordinate(params: TilingParams, text: str) -> Digits:
    text = text.strip()
    if text in ("", EMPTY_TEXT):
        return ()
    if "." in text:
        try:
            digits = tuple(int(part) for part in text.split("."))
        except ValueError as exc:
            raise InvalidDigitError(f"bad dotted coordinate {text!r}") from exc
    else:
        try:
            digits = tuple(_B36_VAL[c] for c in text.lower())
        except KeyError as exc:
            raise InvalidDigitError(f"bad coordinate character in {text!r}") from exc
    _check_digits(params, digits)
    return digits


def to_json(digits: Digits) -> list[int]:
    return list(digits)


def from_json(params: TilingParams, data: list[int]) -> Digits:
    digits = tuple(int(d) for d in data)
    _check_digits(params, digits)
    return digits
