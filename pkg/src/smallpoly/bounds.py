"""Closed-form perimeters, widths, upper bounds and asymptotic gap constants.

Pure scalar functions of the vertex count.  These are the analytic
counterparts of the coordinate-level metrics in :mod:`smallpoly.geometry`;
tests require the two routes to agree to 1e-10 on every constructed family.

Family keys accepted by :func:`closed_form` and :func:`gap_constants` are the
strings used throughout the package: ``regular``, ``regular-plus``,
``reuleaux``, ``tamvakis``, ``b``, ``q``, plus the unit-perimeter variants
``regular-hat`` and ``b-hat``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PI = math.pi


class UnknownFamilyError(ValueError):
    """Family key not recognized by this module."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


# ---------------------------------------------------------------------------
# Upper bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundSet:
    """The three classical upper bounds at a given vertex count.

    ``ubL`` bounds the perimeter of any convex small n-gon, ``ubW`` its
    width, and ``ubw`` the width of any unit-perimeter n-gon.
    """

    n: int
    ubL: float  # 2n sin(pi/2n)
    ubW: float  # cos(pi/2n)
    ubw: float  # cot(pi/2n) / 2n


def upper_bounds(n: int) -> BoundSet:
    """Evaluate the perimeter/width/unit-perimeter-width upper bounds."""
    _require(n >= 3, f"need n >= 3, got {n}")
    half = PI / (2 * n)
    return BoundSet(n=n, ubL=2 * n * math.sin(half), ubW=math.cos(half),
                    ubw=1.0 / (2 * n * math.tan(half)))


# ---------------------------------------------------------------------------
# Angle-sequence skews of the two diameter-graph families
# ---------------------------------------------------------------------------


def b_alternation(n: int) -> float:
    """Alternating angle offset of the cycle-plus-pendants family.

    The family's angles are pi/n + (-1)^k * b_alternation(n); the offset is
    fixed by requiring the half cycle to close at abscissa -1/2, which gives
    pi/n - arcsin(sin(2 pi/n) / 2).  Evaluated in a rationalized form,
    arcsin(sin^3(pi/n) / (sqrt(1 - sin^2(2pi/n)/4) + cos^2(pi/n))), which is
    algebraically identical but free of the catastrophic cancellation the
    direct difference suffers for large n.
    """
    s, c = math.sin(PI / n), math.cos(PI / n)
    u = s * c  # = sin(2 pi / n) / 2
    return math.asin(s ** 3 / (math.sqrt(1.0 - u * u) + c * c))


def q_alternation(n: int) -> float:
    """Alternating angle offset of the odd-cycle-plus-one-pendant family.

    Equals pi/4 - arcsin(cos(pi/n) / sqrt(2)); evaluated as
    arcsin(sin^2(pi/n) / (sqrt(1 + sin^2(pi/n)) + cos(pi/n))) to avoid
    cancellation for large n.
    """
    s, c = math.sin(PI / n), math.cos(PI / n)
    return math.asin(s * s / (math.sqrt(1.0 + s * s) + c))


# ---------------------------------------------------------------------------
# Closed-form perimeters and widths
# ---------------------------------------------------------------------------


def _regular(n: int) -> tuple[float, float]:
    if n % 2 == 1:
        return 2 * n * math.sin(PI / (2 * n)), math.cos(PI / (2 * n))
    return n * math.sin(PI / n), math.cos(PI / n)


def _regular_plus(n: int) -> tuple[float, float]:
    _require(n % 2 == 0 and n >= 4, f"regular-plus needs even n >= 4, got {n}")
    half = PI / (2 * n - 2)
    L = (2 * n - 2) * math.sin(half) + 4 * math.sin(PI / (4 * n - 4)) - 2 * math.sin(half)
    return L, math.cos(half)


def _reuleaux(n: int, m: int | None) -> tuple[float, float]:
    if m is not None:
        _require(m >= 3 and m % 2 == 1, f"reuleaux needs odd m >= 3, got {m}")
        _require(n % m == 0, f"reuleaux needs m | n, got m={m}, n={n}")
    return 2 * n * math.sin(PI / (2 * n)), math.cos(PI / (2 * n))


def _tamvakis(n: int) -> tuple[float, float]:
    _require(_is_power_of_two(n) and n >= 4, f"tamvakis needs n = 2^s >= 4, got {n}")
    if n % 3 == 1:
        L = ((4 * n - 4) / 3) * math.sin(PI / (2 * n - 2)) \
            + ((2 * n + 4) / 3) * math.sin(PI / (2 * n + 4))
        W = math.cos(PI / (2 * n - 2))
    else:  # n = 3k + 2 (powers of two are never divisible by 3)
        L = ((4 * n + 4) / 3) * math.sin(PI / (2 * n + 2)) \
            + ((2 * n - 4) / 3) * math.sin(PI / (2 * n - 4))
        W = math.cos(PI / (2 * n - 4))
    return L, W


def _b_family(n: int) -> tuple[float, float]:
    _require(_is_power_of_two(n) and n >= 8, f"b needs n = 2^s >= 8, got {n}")
    beta = b_alternation(n)
    L = 2 * n * math.sin(PI / (2 * n)) * math.cos(beta / 2)
    W = math.cos(PI / (2 * n) + beta / 2)
    return L, W


def _q_family(n: int) -> tuple[float, float]:
    _require(_is_power_of_two(n) and n >= 4, f"q needs n = 2^s >= 4, got {n}")
    gamma = q_alternation(n)
    L = 2 * n * math.sin(PI / (2 * n)) * math.cos(gamma / 2)
    W = math.cos(PI / (2 * n) + gamma / 2)
    return L, W


def _regular_hat(n: int) -> tuple[float, float]:
    if n % 2 == 1:
        w = 1.0 / (2 * n * math.tan(PI / (2 * n)))
    else:
        w = 1.0 / (n * math.tan(PI / n))
    return 1.0, w


def _b_hat(n: int) -> tuple[float, float]:
    _require(_is_power_of_two(n) and n >= 8, f"b-hat needs n = 2^s >= 8, got {n}")
    beta = b_alternation(n)
    w = (1.0 / (2 * n)) * (1.0 / math.tan(PI / (2 * n)) - math.tan(beta / 2))
    return 1.0, w


_CLOSED_FORMS = {
    "regular": lambda n, m: _regular(n),
    "regular-plus": lambda n, m: _regular_plus(n),
    "reuleaux": _reuleaux,
    "tamvakis": lambda n, m: _tamvakis(n),
    "b": lambda n, m: _b_family(n),
    "q": lambda n, m: _q_family(n),
    "regular-hat": lambda n, m: _regular_hat(n),
    "b-hat": lambda n, m: _b_hat(n),
}


def closed_form(family: str, n: int, m: int | None = None) -> tuple[float, float]:
    """Analytic (perimeter, width) of a family member.

    The unit-perimeter variants return ``(1.0, w)``.  ``m`` is only consulted
    for the ``reuleaux`` family, whose perimeter and width depend on n alone.
    """
    key = str(family)
    if key not in _CLOSED_FORMS:
        raise UnknownFamilyError(f"no closed form for family {family!r}")
    _require(n >= 3, f"need n >= 3, got {n}")
    return _CLOSED_FORMS[key](n, m)


# ---------------------------------------------------------------------------
# Published reference values for the Mossinghoff family.  The construction is
# not implemented here; its perimeters are carried as constants (Mossinghoff,
# "Enumerating isodiametric and isoperimetric polygons", and follow-ups) for
# table columns, while its width has the closed form below.
# ---------------------------------------------------------------------------

MOSSINGHOFF_PERIMETERS = {
    8: 3.1209757852,
    16: 3.1365320240,
    32: 3.1403306141,
    64: 3.1412772335,
    128: 3.1415138006,
}


def mossinghoff_perimeter(n: int) -> float:
    try:
        return MOSSINGHOFF_PERIMETERS[n]
    except KeyError:
        raise ValueError(f"no stored Mossinghoff perimeter for n={n}") from None


def mossinghoff_width(n: int) -> float:
    _require(_is_power_of_two(n) and n >= 8, f"need n = 2^s >= 8, got {n}")
    return math.cos(PI / (2 * n) + PI ** 2 / (4 * n ** 2) - PI ** 2 / (2 * n ** 3))


# ---------------------------------------------------------------------------
# Scaled asymptotic gaps.
#
# Every law below states that n^p * (bound - value) tends to a constant.  The
# raw differences underflow binary64 long before the limits stabilize (for
# the cycle family's perimeter the gap is ~1e-20 at n = 2^12), so each gap is
# evaluated through an algebraically equivalent product form that never
# subtracts nearly equal quantities.
# ---------------------------------------------------------------------------

GAP_LAWS: dict[str, tuple[int, float]] = {
    # family-metric key: (power p, limit constant)
    "b-perimeter": (6, PI ** 7 / 32),
    "b-width": (4, PI ** 4 / 8),
    "q-perimeter": (4, PI ** 5 / 32),
    "q-width": (3, PI ** 3 / 8),
    "b-hat-width": (4, PI ** 3 / 8),
    "tamvakis-perimeter": (4, PI ** 3 / 4),
    "regular-perimeter": (2, PI ** 3 / 8),
    "regular-width": (2, 3 * PI ** 2 / 8),
    "regular-plus-perimeter": (3, 5 * PI ** 3 / 96),
    "regular-plus-width": (3, PI ** 2 / 4),
    "regular-hat-width": (2, PI / 4),
}


def _chord_deficit(h: float) -> float:
    """1 - 2 sin(h/2) / h, by its alternating series (exact for |h| <= pi/3)."""
    h2 = h * h
    term = h2 / 24.0
    total = 0.0
    m = 1
    while abs(term) > 1e-25 * max(total, 1e-300):
        total += term
        m += 1
        term *= -h2 / (4 * (2 * m) * (2 * m + 1))
    return total


def gap_constants(family: str, n: int) -> float:
    """Scaled gap n^p * (bound - value) for the family's asymptotic law.

    Compare the result against ``GAP_LAWS[family][1]``; at n = 2^12 the two
    agree within a fraction of a percent for every law.
    """
    _require(n >= 4, f"need n >= 4, got {n}")
    half = PI / (2 * n)
    if family == "b-perimeter":
        beta = b_alternation(n)
        return n ** 6 * (2 * n * math.sin(half) * 2 * math.sin(beta / 4) ** 2)
    if family == "b-width":
        beta = b_alternation(n)
        return n ** 4 * (2 * math.sin(half + beta / 4) * math.sin(beta / 4))
    if family == "q-perimeter":
        gamma = q_alternation(n)
        return n ** 4 * (2 * n * math.sin(half) * 2 * math.sin(gamma / 4) ** 2)
    if family == "q-width":
        gamma = q_alternation(n)
        return n ** 3 * (2 * math.sin(half + gamma / 4) * math.sin(gamma / 4))
    if family == "b-hat-width":
        beta = b_alternation(n)
        return n ** 4 * math.tan(beta / 2) / (2 * n)
    if family == "tamvakis-perimeter":
        _require(_is_power_of_two(n), f"tamvakis gap needs n = 2^s, got {n}")
        k = n // 3
        if n % 3 == 1:
            lone, paired = PI / (3 * k + 3), PI / (3 * k)
        else:
            lone, paired = PI / (3 * k), PI / (3 * k + 3)
        # chord-sum deficit of the three subdivided arcs minus the bound's
        deficit = (2 * PI / 3) * _chord_deficit(paired) \
            + (PI / 3) * _chord_deficit(lone) - PI * _chord_deficit(PI / n)
        return n ** 4 * deficit
    if family == "regular-perimeter":
        _require(n % 2 == 0, "regular perimeter gap law applies to even n")
        return n ** 2 * (2 * n * math.sin(half) * 2 * math.sin(half / 2) ** 2)
    if family == "regular-width":
        _require(n % 2 == 0, "regular width gap law applies to even n")
        return n ** 2 * (2 * math.sin(3 * half / 2) * math.sin(half / 2))
    if family == "regular-plus-perimeter":
        _require(n % 2 == 0, "regular-plus gap laws apply to even n")
        hs = PI / (n - 1)
        deficit = (PI - hs) * _chord_deficit(hs) + hs * _chord_deficit(hs / 2) \
            - PI * _chord_deficit(PI / n)
        return n ** 3 * deficit
    if family == "regular-plus-width":
        _require(n % 2 == 0, "regular-plus gap laws apply to even n")
        other = PI / (2 * n - 2)
        spread = PI / (2 * n * (n - 1))  # = other - half, exactly
        return n ** 3 * (2 * math.sin((half + other) / 2) * math.sin(spread / 2))
    if family == "regular-hat-width":
        _require(n % 2 == 0, "regular-hat gap law applies to even n")
        return n ** 2 * math.tan(half) / (2 * n)
    raise UnknownFamilyError(f"no gap law for family {family!r}")
