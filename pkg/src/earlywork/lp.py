"""Exact linear programming over rationals: dense two-phase simplex.

Small by design: the configuration programs it serves have a handful of
rows, so a dense tableau of :class:`fractions.Fraction` entries is both
simple and fast enough.  Pivoting uses the largest-coefficient rule and
falls back to Bland's rule after a stretch of degenerate pivots, which
guarantees termination; with exact arithmetic there are no tolerances
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LpResult", "solve_lp_max", "LpInfeasibleError", "LpUnboundedError"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LpInfeasibleError(Exception):
    """The constraint system has no feasible point."""


class LpUnboundedError(Exception):
    """The objective is unbounded over the feasible region."""


@dataclass(frozen=True)
class LpResult:
    objective: Fraction
    x: tuple[Fraction, ...]


def solve_lp_max(c, rows) -> LpResult:
    """Maximize ``c . x`` subject to ``rows`` and ``x >= 0``.

    ``rows`` is a list of ``(coeffs, sense, rhs)`` with sense one of
    ``"<="``, ``"=="``, ``">="``.  All numbers may be ints or Fractions;
    the result is exact.
    """
    n = len(c)
    norm_rows = []
    for coeffs, sense, rhs in rows:
        coeffs = [Fraction(v) for v in coeffs]
        rhs = Fraction(rhs)
        if len(coeffs) != n:
            raise ValueError("row length does not match objective length")
        if rhs < 0:  # keep rhs non-negative so slacks/artificials start basic
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        norm_rows.append((coeffs, sense, rhs))

    r = len(norm_rows)
    slack_count = sum(1 for _, s, _ in norm_rows if s in ("<=", ">="))
    total = n + slack_count + r  # worst case: an artificial for every row
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    artificials: list[int] = []

    slack_at = n
    art_at = n + slack_count
    for coeffs, sense, rhs in norm_rows:
        row = coeffs + [_ZERO] * (total - n) + [rhs]
        if sense == "<=":
            row[slack_at] = _ONE
            basis.append(slack_at)
            slack_at += 1
        elif sense == ">=":
            row[slack_at] = -_ONE
            slack_at += 1
            row[art_at] = _ONE
            basis.append(art_at)
            artificials.append(art_at)
            art_at += 1
        else:
            row[art_at] = _ONE
            basis.append(art_at)
            artificials.append(art_at)
            art_at += 1
        tableau.append(row)
    width = art_at  # columns actually in use (plus rhs at index `total`)

    if artificials:
        phase1 = [_ZERO] * (total + 1)
        for a in artificials:
            phase1[a] = Fraction(-1)
        _price_out(phase1, tableau, basis)
        _iterate(tableau, basis, phase1, width, total)
        if phase1[total] != 0:
            raise LpInfeasibleError()
        _evict_artificials(tableau, basis, artificials, n + slack_count, total)
        width = n + slack_count  # artificials are dead from here on

    obj = [Fraction(v) for v in c] + [_ZERO] * (total - n + 1)
    _price_out(obj, tableau, basis)
    _iterate(tableau, basis, obj, width, total)

    x = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tableau[i][total]
    # The objective cell accumulates the negated value as pivots price it out.
    return LpResult(objective=-obj[total], x=tuple(x))


def _price_out(obj, tableau, basis) -> None:
    """Make the objective row consistent with the current basis."""
    for i, b in enumerate(basis):
        coef = obj[b]
        if coef != 0:
            row = tableau[i]
            for j in range(len(obj)):
                if row[j]:
                    obj[j] -= coef * row[j]


def _iterate(tableau, basis, obj, width, rhs_col) -> None:
    """Run primal simplex pivots until no positive reduced cost remains."""
    degenerate_streak = 0
    bland = False
    while True:
        col = _entering(obj, width, bland)
        if col is None:
            return
        row = _leaving(tableau, basis, col, rhs_col)
        if row is None:
            raise LpUnboundedError()
        gain_was_zero = tableau[row][rhs_col] == 0
        _pivot(tableau, basis, obj, row, col, rhs_col)
        if gain_was_zero:
            degenerate_streak += 1
            if degenerate_streak > 2 * (len(tableau) + width):
                bland = True  # anti-cycling: Bland's rule terminates
        else:
            degenerate_streak = 0


def _entering(obj, width, bland) -> int | None:
    if bland:
        for j in range(width):
            if obj[j] > 0:
                return j
        return None
    best = None
    best_val = _ZERO
    for j in range(width):
        v = obj[j]
        if v > best_val:  # strict: ties keep the lowest index
            best = j
            best_val = v
    return best


def _leaving(tableau, basis, col, rhs_col) -> int | None:
    best_row = None
    best_ratio = None
    for i, row in enumerate(tableau):
        a = row[col]
        if a > 0:
            ratio = row[rhs_col] / a
            if best_ratio is None or ratio < best_ratio or (
                ratio == best_ratio and basis[i] < basis[best_row]
            ):
                best_row = i
                best_ratio = ratio
    return best_row


def _pivot(tableau, basis, obj, row, col, rhs_col) -> None:
    pr = tableau[row]
    inv = _ONE / pr[col]
    for j in range(rhs_col + 1):
        if pr[j]:
            pr[j] *= inv
    for i, other in enumerate(tableau):
        if i != row and other[col]:
            factor = other[col]
            for j in range(rhs_col + 1):
                if pr[j]:
                    other[j] -= factor * pr[j]
    factor = obj[col]
    if factor:
        for j in range(rhs_col + 1):
            if pr[j]:
                obj[j] -= factor * pr[j]
    basis[row] = col


def _evict_artificials(tableau, basis, artificials, real_width, rhs_col) -> None:
    """Pivot basic artificials (at level zero) onto real columns, or detect
    the row as redundant and leave it inert."""
    art_set = set(artificials)
    for i in range(len(basis)):
        if basis[i] in art_set:
            row = tableau[i]
            col = next((j for j in range(real_width) if row[j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, [_ZERO] * (rhs_col + 1), i, col, rhs_col)
            # else: all-zero row, harmless; the artificial stays basic at 0.
    # Zero out artificial columns so later pivots cannot bring them back.
    for row in tableau:
        for a in artificials:
            row[a] = _ZERO
