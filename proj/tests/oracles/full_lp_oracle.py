"""Independent oracle for the eavesdropper LP optimum.

Builds the 48-variable program from scratch with numpy and solves it with
scipy's HiGHS backend. The printed values are frozen into lp_solver_test.cpp.
"""
import itertools
import math

import numpy as np
from scipy.optimize import linprog

ALICE = [0.0, math.pi / 4, -math.pi / 4]
BOB = [0.0, math.pi / 2]
SETTINGS = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]


def table(p):
    t = {}
    for x, y in SETTINGS:
        c = math.cos(ALICE[x] - BOB[y])
        for a, b in itertools.product((0, 1), repeat=2):
            t[x, y, a, b] = 0.25 * (1 + (-1) ** (a ^ b) * p * c)
    return t


def var(x, y, a, b, e):
    return SETTINGS.index((x, y)) * 8 + 4 * a + 2 * b + e


def solve(p):
    t = table(p)
    rows, rhs = [], []

    def add(coeffs, r):
        row = np.zeros(48)
        for k, v in coeffs:
            row[k] += v
        rows.append(row)
        rhs.append(r)

    for x, y in SETTINGS:
        for a, b in itertools.product((0, 1), repeat=2):
            add([(var(x, y, a, b, e), 1) for e in (0, 1)], t[x, y, a, b])
    for x in range(3):
        for a, e in itertools.product((0, 1), repeat=2):
            add([(var(x, 0, a, b, e), 1) for b in (0, 1)]
                + [(var(x, 1, a, b, e), -1) for b in (0, 1)], 0)
    for y in range(2):
        for b, e in itertools.product((0, 1), repeat=2):
            for x in (1, 2):
                add([(var(0, y, a, b, e), 1) for a in (0, 1)]
                    + [(var(x, y, a, b, e), -1) for a in (0, 1)], 0)
    c = np.zeros(48)
    for a in (0, 1):
        c[var(0, 0, a, 0, 0)] = 1
        c[var(0, 0, a, 1, 1)] = 1
    res = linprog(-c, A_eq=np.array(rows), b_eq=np.array(rhs),
                  bounds=[(0, 1)] * 48, method="highs")
    return -res.fun


if __name__ == "__main__":
    for p in (0.0, 0.3, 0.7, 0.72, 0.8, 0.9, 0.95, 1.0):
        print(f"{p:.2f} {solve(p):.15f}")
