"""Independent oracles shared by several test files.

These deliberately avoid the code paths they check: the block count uses
floating-point eigenvalues of a random central element instead of exact
idempotent splitting.
"""

import random

import mpmath

from stringnet.scalars import nullspace


def algebra_center(struct, field):
    """Exact basis of {x : x b = b x for every basis element b}."""
    n = len(struct)
    rows = []
    for b in range(n):
        # coefficient of e_c in x*b - b*x, as a linear form in x
        for c in range(n):
            row = []
            for a in range(n):
                row.append(struct[a][b].get(c, 0) - struct[b][a].get(c, 0))
            rows.append(row)
    return nullspace(rows, n, field)


def left_matrix(struct, x, field, dps=40):
    """Numeric matrix of y -> x*y in the basis."""
    n = len(struct)
    M = mpmath.matrix(n, n)
    for a, xa in enumerate(x):
        if not xa:
            continue
        xv = field.embed(xa, dps)
        for b in range(n):
            for c, s in struct[a][b].items():
                M[c, b] += xv * field.embed(s, dps)
    return M


def block_count_by_eigenvalues(struct, field, seed=0, dps=40):
    """Number of simple blocks = distinct eigenvalues of a generic central element."""
    Z = algebra_center(struct, field)
    rng = random.Random(seed)
    x = [field.zero] * len(struct)
    for z in Z:
        r = rng.randint(1, 97)
        x = [xi + r * zi for xi, zi in zip(x, z)]
    with mpmath.workdps(dps):
        ev = mpmath.eig(left_matrix(struct, x, field, dps), left=False, right=False)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        distinct = []
        for v in ev:
            if all(abs(v - w) > tol for w in distinct):
                distinct.append(v)
    return len(distinct), len(Z)
