"""Exact rational simplex with a strong-duality certificate.

Two strategies share one public entry point:

* programs made of inequality rows with zero lower bounds and a nonnegative
  minimization objective (the gadget programs: few variables, many rows) are
  solved by running the primal simplex on the *dual*, whose slack basis is
  immediately feasible; the primal optimum is read off the final reduced
  costs;
* everything else (equality rows, shifted bounds, ...) goes through a
  classic two-phase dense tableau.

Either way the answer is accepted only after an exact feasibility /
dual-feasibility / objective-equality check, so callers never depend on which
path ran.  Pivoting is deterministic: largest-improvement entering column
(lowest index on ties), lowest-basic-index ratio ties, with a Bland fallback
after a run of degenerate pivots to rule out cycling.  Arithmetic uses
gmpy2's rationals when available and stdlib Fractions otherwise; results are
exact either way.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE, GE, EQ = "<=", ">=", "="

_DEGENERATE_RUN = 40  # consecutive zero-progress pivots before Bland kicks in


class SimplexError(RuntimeError):
    """Internal invariant failure (certificate mismatch, basis breakdown)."""


def solve_canonical(
    n_vars: int,
    objective: Sequence[tuple[int, Fraction]],
    constraints: Sequence[tuple[Sequence[tuple[int, Fraction]], str, Fraction]],
    lower_bounds: Sequence[Fraction],
):
    """Minimize objective subject to constraints and x >= lower_bounds.

    Returns (status, values, duals, objective_value); values/duals are None
    unless status is "optimal".  Duals are one per constraint, signed for the
    minimization convention: >= rows have y >= 0, <= rows y <= 0, = rows free.
    """
    c = [_Q(0)] * n_vars
    for j, cj in objective:
        c[j] += _Q(cj.numerator, cj.denominator)
    rows = []
    for pairs, sense, rhs in constraints:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"unknown sense {sense!r}")
        row = {}
        for j, a in pairs:
            if not 0 <= j < n_vars:
                raise ValueError("constraint index out of range")
            row[j] = row.get(j, _Q(0)) + _Q(a.numerator, a.denominator)
        rows.append((row, sense, _Q(rhs.numerator, rhs.denominator)))
    lbs = [_Q(v.numerator, v.denominator) for v in map(Fraction, lower_bounds)]

    if (all(sense != EQ for _, sense, _ in rows)
            and all(v == 0 for v in lbs) and all(cj >= 0 for cj in c)):
        status, x, y = _solve_via_dual(n_vars, c, rows)
    else:
        status, x, y = _solve_two_phase(n_vars, c, rows, lbs)

    if status != OPTIMAL:
        return status, None, None, None
    _check_certificate(n_vars, c, rows, lbs, x, y)
    obj = sum((cj * xj for cj, xj in zip(c, x)), _Q(0))
    to_frac = lambda v: Fraction(int(v.numerator), int(v.denominator))
    return OPTIMAL, [to_frac(v) for v in x], [to_frac(v) for v in y], to_frac(obj)


def _check_certificate(n_vars, c, rows, lbs, x, y):
    """Exact optimality proof: primal feasible, dual feasible, objectives equal."""
    for j in range(n_vars):
        if x[j] < lbs[j]:
            raise SimplexError("primal bound violated")
    reduced = list(c)
    rhs_part = _Q(0)
    for (row, sense, rhs), yi in zip(rows, y):
        lhs = sum((a * x[j] for j, a in row.items()), _Q(0))
        if sense == LE and not (lhs <= rhs and yi <= 0):
            raise SimplexError("<= row or its dual sign violated")
        if sense == GE and not (lhs >= rhs and yi >= 0):
            raise SimplexError(">= row or its dual sign violated")
        if sense == EQ and lhs != rhs:
            raise SimplexError("= row violated")
        for j, a in row.items():
            reduced[j] -= yi * a
        rhs_part += yi * rhs
    if any(r < 0 for r in reduced):
        raise SimplexError("dual infeasible")
    primal_obj = sum((cj * xj for cj, xj in zip(c, x)), _Q(0))
    dual_obj = rhs_part + sum((r * lb for r, lb in zip(reduced, lbs)), _Q(0))
    if primal_obj != dual_obj:
        raise SimplexError("strong duality does not hold")


def _pivot(rows_mat, z, basis, leave, enter):
    piv = rows_mat[leave][enter]
    inv = 1 / piv
    rows_mat[leave] = [v * inv for v in rows_mat[leave]]
    prow = rows_mat[leave]
    for r in range(len(rows_mat)):
        if r != leave:
            f = rows_mat[r][enter]
            if f:
                rows_mat[r] = [v - f * p for v, p in zip(rows_mat[r], prow)]
    f = z[enter]
    if f:
        z[:] = [v - f * p for v, p in zip(z, prow)]
    basis[leave] = enter


def _run_simplex(rows_mat, z, basis, n_cols):
    """Minimize with reduced-cost row z (rhs in the last column) in place.

    Returns "optimal" or "unbounded".
    """
    degenerate = 0
    while True:
        bland = degenerate >= _DEGENERATE_RUN
        enter, best = -1, _Q(0)
        for j in range(n_cols):
            v = z[j]
            if v < best:
                enter, best = j, v
                if bland:
                    break
        if enter < 0:
            return OPTIMAL
        leave, ratio = -1, None
        for r in range(len(rows_mat)):
            a = rows_mat[r][enter]
            if a > 0:
                t = rows_mat[r][-1] / a
                if ratio is None or t < ratio or (t == ratio and basis[r] < basis[leave]):
                    leave, ratio = r, t
        if leave < 0:
            return UNBOUNDED
        degenerate = degenerate + 1 if ratio == 0 else 0
        _pivot(rows_mat, z, basis, leave, enter)


def _solve_via_dual(n_vars, c, rows):
    """Fast path: run the (max-form) simplex on the dual program.

    The primal is min c.x, Ax >= b (after flipping <= rows), x >= 0 with
    c >= 0.  The dual max b.y, A^T y <= c, y >= 0 starts feasible at y = 0.
    On optimality the final cost row under the slack columns is the primal
    optimum; dual unboundedness means the primal is infeasible.
    """
    m = len(rows)
    flip = [sense == LE for _, sense, _ in rows]
    mat = [[_Q(0)] * (m + n_vars + 1) for _ in range(n_vars)]
    for i, (row, _, _) in enumerate(rows):
        neg = flip[i]
        for j, a in row.items():
            mat[j][i] = -a if neg else a
    for j in range(n_vars):
        mat[j][m + j] = _Q(1)
        mat[j][-1] = c[j]
    # maximization of b.y as minimization of -b.y
    z = [_Q(0)] * (m + n_vars + 1)
    for i, (_, _, rhs) in enumerate(rows):
        b = -rhs if flip[i] else rhs
        z[i] = -b
    basis = list(range(m, m + n_vars))
    status = _run_simplex(mat, z, basis, m + n_vars)
    if status == UNBOUNDED:
        return INFEASIBLE, None, None
    y = [_Q(0)] * m
    for r, bv in enumerate(basis):
        if bv < m:
            y[bv] = mat[r][-1]
    x = [z[m + j] for j in range(n_vars)]
    # y is for the all->= form; a flipped (<=) row's multiplier changes sign
    duals = [(-v if flip[i] else v) for i, v in enumerate(y)]
    return OPTIMAL, x, duals


def _solve_two_phase(n_vars, c, rows, lbs):
    """General dense two-phase tableau; handles =, <=, >= and lower bounds."""
    # shift x = x' + lb so that x' >= 0
    shifted_rhs = []
    for row, sense, rhs in rows:
        shift = sum((a * lbs[j] for j, a in row.items()), _Q(0))
        shifted_rhs.append(rhs - shift)

    m = len(rows)
    n_slack = sum(1 for _, sense, _ in rows if sense != EQ)
    slack_idx = {}
    pos = n_vars
    for i, (_, sense, _) in enumerate(rows):
        if sense != EQ:
            slack_idx[i] = pos
            pos += 1
    n_total = n_vars + n_slack
    art_of_row = {}

    mat = []
    negated = []
    basis = []
    for i, (row, sense, _) in enumerate(rows):
        rhs = shifted_rhs[i]
        neg = rhs < 0
        negated.append(neg)
        line = [_Q(0)] * n_total
        for j, a in row.items():
            line[j] = -a if neg else a
        if sense != EQ:
            s = _Q(1) if sense == LE else _Q(-1)
            if neg:
                s = -s
            line[slack_idx[i]] = s
        mat.append(line + [-rhs if neg else rhs])

    # natural basis where a +1 slack exists; artificials elsewhere
    art_cols = 0
    for i in range(m):
        s = slack_idx.get(i)
        if s is not None and mat[i][s] == 1:
            basis.append(s)
        else:
            art_of_row[i] = n_total + art_cols
            basis.append(n_total + art_cols)
            art_cols += 1
    if art_cols:
        for i in range(m):
            extra = [_Q(0)] * art_cols
            if i in art_of_row:
                extra[art_of_row[i] - n_total] = _Q(1)
            mat[i] = mat[i][:-1] + extra + [mat[i][-1]]
    width = n_total + art_cols

    if art_cols:
        # phase 1: minimize the sum of artificials.  The cost row carries the
        # negated objective in its last entry throughout.
        z = [_Q(0)] * (width + 1)
        for j in range(n_total, width):
            z[j] = _Q(1)
        for i, b in enumerate(basis):
            if b >= n_total:  # zero out reduced costs of the basic artificials
                z = [v - p for v, p in zip(z, mat[i])]
        status = _run_simplex(mat, z, basis, width)
        if status != OPTIMAL:
            raise SimplexError("phase 1 cannot be unbounded")
        if -z[-1] > 0:
            return INFEASIBLE, None, None
        # drive surviving artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if basis[i] < n_total:
                keep.append(i)
                continue
            enter = next((j for j in range(n_total) if mat[i][j] != 0), None)
            if enter is None:
                continue  # all-zero row: redundant constraint
            _pivot(mat, z, basis, i, enter)
            keep.append(i)
        if len(keep) != m:
            row_map = keep
            mat = [mat[i] for i in keep]
            basis = [basis[i] for i in keep]
        else:
            row_map = list(range(m))
    else:
        row_map = list(range(m))

    # phase 2 on the structural + slack columns only
    mat = [line[:n_total] + [line[-1]] for line in mat]
    z = [_Q(0)] * (n_total + 1)
    for j in range(n_vars):
        z[j] = c[j]
    for i, b in enumerate(basis):
        if b >= n_total:
            raise SimplexError("artificial variable stuck in basis")
        f = z[b]
        if f:
            z = [v - f * p for v, p in zip(z, mat[i])]
    status = _run_simplex(mat, z, basis, n_total)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None

    xprime = [_Q(0)] * n_total
    for i, b in enumerate(basis):
        xprime[b] = mat[i][-1]
    x = [xprime[j] + lbs[j] for j in range(n_vars)]

    y = _duals_from_basis(n_vars, c, rows, negated, slack_idx, basis, row_map)
    return OPTIMAL, x, y


def _duals_from_basis(n_vars, c, rows, negated, slack_idx, basis, row_map):
    """Solve B^T y = c_B exactly for the surviving rows; dropped rows get 0."""
    mm = len(basis)
    cols = []
    cb = []
    for b in basis:
        col = [_Q(0)] * mm
        if b < n_vars:
            for r, i in enumerate(row_map):
                a = rows[i][0].get(b)
                if a is not None:
                    col[r] = -a if negated[i] else a
            cb.append(c[b])
        else:
            for r, i in enumerate(row_map):
                if slack_idx.get(i) == b:
                    s = _Q(1) if rows[i][1] == LE else _Q(-1)
                    col[r] = -s if negated[i] else s
            cb.append(_Q(0))
        cols.append(col)
    # Gaussian elimination on B^T (rows indexed by basis entries)
    aug = [cols[r] + [cb[r]] for r in range(mm)]
    for col in range(mm):
        prow = next((r for r in range(col, mm) if aug[r][col] != 0), None)
        if prow is None:
            raise SimplexError("singular basis")
        aug[col], aug[prow] = aug[prow], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(mm):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * p for v, p in zip(aug[r], aug[col])]
    y_std = [aug[r][-1] for r in range(mm)]
    y = [_Q(0)] * len(rows)
    for r, i in enumerate(row_map):
        y[i] = -y_std[r] if negated[i] else y_std[r]
    return y
