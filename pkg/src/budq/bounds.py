"""Bridge-number lower bounds from coloring counts.

For a surface S and finite quandle Q the bound is 3 log_{#Q}(#Col) - chi(S).
Everything that can be decided with integers is: the bound is exact when
#Col^3 is a power of #Q, and the integer bound (the ceiling) is always found
by comparing integer powers.  Only the displayed real value of a non-exact
bound is a float.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import HypothesisViolationError, InvalidParameterError

FLOAT_MARGIN = 2.0**-40


@dataclass(frozen=True)
class BridgeBoundResult:
    coloring_count: int
    target_size: int
    euler_characteristic: int
    bound_exact: int | float
    bound_integer: int
    exact: bool

    def to_json(self) -> dict:
        return asdict(self)


def _check(count: int, q_size: int) -> None:
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise InvalidParameterError(f"coloring count must be a positive integer, got {count!r}")
    if isinstance(q_size, bool) or not isinstance(q_size, int) or q_size < 2:
        raise InvalidParameterError(f"quandle size must be an integer >= 2, got {q_size!r}")


def _exact_log(value: int, base: int) -> int | None:
    """k with base**k == value, else None."""
    k = round(math.log(value) / math.log(base))
    for cand in (k - 1, k, k + 1):
        if cand >= 0 and base**cand == value:
            return cand
    return None


def _ceil_log(value: int, base: int) -> int:
    """Least e >= 0 with base**e >= value."""
    e = max(0, math.floor(math.log(value) / math.log(base)) - 1)
    while base**e < value:
        e += 1
    while e > 0 and base ** (e - 1) >= value:
        e -= 1
    return e


def bridge_lower_bound(count: int, q_size: int, chi: int) -> BridgeBoundResult:
    _check(count, q_size)
    if isinstance(chi, bool) or not isinstance(chi, int):
        raise InvalidParameterError(f"euler characteristic must be an integer, got {chi!r}")
    cube = count**3
    j = _exact_log(cube, q_size)
    if j is not None:
        return BridgeBoundResult(count, q_size, chi, j - chi, j - chi, True)
    value = 3 * math.log(count) / math.log(q_size) - chi
    # the ceiling compares count^3 with q^(m + chi) in exact arithmetic
    ceiling = _ceil_log(cube, q_size) - chi
    assert ceiling - 1 - FLOAT_MARGIN <= value <= ceiling + FLOAT_MARGIN
    return BridgeBoundResult(count, q_size, chi, value, ceiling, False)


def classical_bridge_lower_bound(count: int, q_size: int) -> int | float:
    """log_{q_size}(count): an int when count is an exact power."""
    _check(count, q_size)
    k = _exact_log(count, q_size)
    if k is not None:
        return k
    return math.log(count) / math.log(q_size)


def connected_sum_bridge_formula(b_s: int, d: int, m: int) -> int:
    """Bridge number of S # Sigma_d, valid for even d only."""
    if d < 2 or d % 2:
        raise HypothesisViolationError(f"formula requires an even degree d >= 2, got {d}")
    if m < 0:
        raise InvalidParameterError(f"m must be >= 0, got {m}")
    return b_s + (m + 1) * (d - 1) * (d - 2)
