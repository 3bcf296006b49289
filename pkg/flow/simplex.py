"""Dense two-phase simplex over exact rationals.

Small LPs only: the tableau is a list of Fraction rows and pivoting follows
Bland's rule, so it always terminates and never suffers rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from common.errors import InvalidArgument

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    x: tuple[Fraction, ...]


class _Tableau:
    def __init__(self, rows, basis, num_cols):
        self.rows = rows
        self.basis = basis
        self.num_cols = num_cols

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            self.rows[r] = row = [v / piv for v in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                factor = other[c]
                self.rows[i] = [a - factor * b for a, b in zip(other, row)]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize cost·x over the current basis; columns outside ``allowed`` never enter."""
        z = [-cost[j] for j in range(self.num_cols)] + [Fraction(0)]
        for i, b in enumerate(self.basis):
            if cost[b] != 0:
                z = [a + cost[b] * v for a, v in zip(z, self.rows[i])]
        while True:
            entering = next((j for j in allowed if z[j] < 0), None)
            if entering is None:
                return OPTIMAL, z[-1]
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return UNBOUNDED, None
            r = best[1]
            self.pivot(r, entering)
            row = self.rows[r]
            factor = z[entering]
            z = [a - factor * b for a, b in zip(z, row)]


class LinearProgram:
    """maximize c·x subject to rows (<=, >=, =) and x >= 0."""

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.constraints = []
        self.objective = [Fraction(0)] * num_vars

    def add_constraint(self, coeffs: dict, sense: str, rhs):
        if sense not in ('<=', '>=', '='):
            raise InvalidArgument(f"unknown constraint sense {sense!r}")
        row = [Fraction(0)] * self.num_vars
        for j, v in coeffs.items():
            row[j] += Fraction(v)
        self.constraints.append((row, sense, Fraction(rhs)))

    def set_objective(self, coeffs: dict):
        self.objective = [Fraction(0)] * self.num_vars
        for j, v in coeffs.items():
            self.objective[j] = Fraction(v)

    def _phase_one(self):
        n = self.num_vars
        normalized = []
        for row, sense, rhs in self.constraints:
            if rhs < 0:
                row, rhs = [-v for v in row], -rhs
                sense = {'<=': '>=', '>=': '<=', '=': '='}[sense]
            normalized.append((row, sense, rhs))
        num_slack = sum(1 for _, s, _ in normalized if s != '=')
        num_art = sum(1 for _, s, _ in normalized if s != '<=')
        num_cols = n + num_slack + num_art
        rows, basis = [], []
        slack_col, art_col = n, n + num_slack
        for row, sense, rhs in normalized:
            full = row + [Fraction(0)] * (num_slack + num_art) + [rhs]
            if sense == '<=':
                full[slack_col] = Fraction(1)
                basis.append(slack_col)
                slack_col += 1
            else:
                if sense == '>=':
                    full[slack_col] = Fraction(-1)
                    slack_col += 1
                full[art_col] = Fraction(1)
                basis.append(art_col)
                art_col += 1
            rows.append(full)
        tableau = _Tableau(rows, basis, num_cols)
        artificial = range(n + num_slack, num_cols)
        cost = [Fraction(0)] * num_cols
        for j in artificial:
            cost[j] = Fraction(-1)
        status, value = tableau.optimize(cost, range(num_cols))
        if status != OPTIMAL or value < 0:
            return None, artificial
        return tableau, artificial

    def is_feasible(self) -> bool:
        tableau, _ = self._phase_one()
        return tableau is not None

    def solve(self) -> LPResult:
        tableau, artificial = self._phase_one()
        if tableau is None:
            return LPResult(INFEASIBLE, None, ())
        first_art = artificial.start
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tableau.rows):
            if tableau.basis[i] >= first_art:
                col = next((j for j in range(first_art) if tableau.rows[i][j] != 0), None)
                if col is None:
                    del tableau.rows[i]
                    del tableau.basis[i]
                    continue
                tableau.pivot(i, col)
            i += 1
        cost = self.objective + [Fraction(0)] * (tableau.num_cols - self.num_vars)
        status, value = tableau.optimize(cost, range(first_art))
        if status != OPTIMAL:
            return LPResult(status, None, ())
        x = [Fraction(0)] * self.num_vars
        for i, b in enumerate(tableau.basis):
            if b < self.num_vars:
                x[b] = tableau.rows[i][-1]
        return LPResult(OPTIMAL, value, tuple(x))
