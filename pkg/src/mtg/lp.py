"""Exact rational feasibility for mixed strict / non-strict linear systems.

A system  a_j . x  (< or <=)  b_j  is homogenized with a scale variable z and
a margin variable t:

    a_j . x - b_j z + [strict_j] t <= 0,      -z + t <= 0,

which has a solution with t > 0 iff the original system is feasible.  By
Motzkin's transposition theorem that happens iff

    y >= 0,  sum_j y_j (a_j, -b_j) - y_z e_z = 0,  sum_{strict} y_j + y_z = 1

is infeasible.  We run phase-1 simplex on the latter.  If its optimum is
positive, the phase-1 dual vector is a Farkas certificate whose components are
exactly a primal point (x, z, t) with t > 0; dividing by z gives the witness.
Everything is Fraction arithmetic with Bland's rule, so it terminates and never
rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

LT = "<"
LE = "<="


class MalformedSystemError(ValueError):
    pass


@dataclass
class LinearSystem:
    variables: list
    constraints: list = field(default_factory=list)   # (coeffs, relation, rhs)

    def add(self, coeffs: Sequence, relation: str, rhs=0):
        if relation not in (LT, LE):
            raise MalformedSystemError(f"relation must be '<' or '<=', got {relation!r}")
        if len(coeffs) != len(self.variables):
            raise MalformedSystemError(
                f"row has {len(coeffs)} coefficients for {len(self.variables)} variables")
        self.constraints.append((tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs)))

    def add_sparse(self, terms: dict, relation: str, rhs=0):
        row = [0] * len(self.variables)
        for i, c in terms.items():
            row[i] += c
        self.add(row, relation, rhs)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        for coeffs, rel, rhs in self.constraints:
            lhs = sum(c * v for c, v in zip(coeffs, x) if c)
            if rel == LT and not lhs < rhs:
                return False
            if rel == LE and not lhs <= rhs:
                return False
        return True

    def copy(self) -> "LinearSystem":
        return LinearSystem(list(self.variables), list(self.constraints))


@dataclass
class Feasible:
    witness: list


@dataclass
class Infeasible:
    # nonnegative multipliers combining the constraints into 0 < 0 or 0 <= negative
    multipliers: list


def phase_one(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Phase-1 simplex for {M y = b, y >= 0}.

    Returns ("feasible", y) or ("infeasible", w) where w is a Farkas vector:
    w . M[:, j] <= 0 for every column j and w . b > 0.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    signs = []
    tab = []
    for i in range(m):
        s = -1 if rhs[i] < 0 else 1
        signs.append(s)
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append([s * v for v in rows[i]] + art + [s * rhs[i]])
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs for min sum(artificials)
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    red = [cost[j] - sum(tab[i][j] for i in range(m)) for j in range(width)]
    obj = sum(tab[i][-1] for i in range(m))

    while True:
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # cannot happen: phase-1 objective is bounded below by 0
            raise ArithmeticError("unbounded phase-1 problem")
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            tab[leave] = prow
        nz = [(j, v) for j, v in enumerate(prow) if v]
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][enter]
            if f:
                row = tab[i]
                for j, v in nz:
                    row[j] -= f * v
        f = red[enter]
        for j, v in nz:
            if j < width:
                red[j] -= f * v
        obj += f * prow[-1]
        basis[leave] = enter

    if obj == 0:
        y = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                y[b] = tab[i][-1]
        return "feasible", y
    w = [signs[i] * (1 - red[n + i]) for i in range(m)]
    return "infeasible", w


def feasible_linear_system(sys: LinearSystem):
    """Feasible(witness) with every constraint satisfied (strict ones strictly),
    or Infeasible(multipliers)."""
    nv = len(sys.variables)
    for coeffs, rel, _ in sys.constraints:
        if len(coeffs) != nv or rel not in (LT, LE):
            raise MalformedSystemError("malformed constraint row")
    if not sys.constraints:
        return Feasible([Fraction(0)] * nv)
    cons = sys.constraints
    ncol = len(cons) + 1          # last column is the z > 0 constraint
    rows = [[Fraction(0)] * ncol for _ in range(nv + 2)]
    for j, (coeffs, rel, rhs) in enumerate(cons):
        for i, c in enumerate(coeffs):
            if c:
                rows[i][j] = c
        rows[nv][j] = -rhs
        if rel == LT:
            rows[nv + 1][j] = Fraction(1)
    rows[nv][-1] = Fraction(-1)
    rows[nv + 1][-1] = Fraction(1)
    b = [Fraction(0)] * (nv + 1) + [Fraction(1)]

    status, vec = phase_one(rows, b)
    if status == "feasible":
        return Infeasible(vec[:-1])
    z = vec[nv]
    if z <= 0:
        raise ArithmeticError("Farkas vector has nonpositive scale")
    x = [v / z for v in vec[:nv]]
    if not sys.satisfied_by(x):
        raise ArithmeticError("witness failed substitution check")
    return Feasible(x)
