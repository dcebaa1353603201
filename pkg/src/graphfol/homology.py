"""Integer diagonalization for first-homology bookkeeping.

Relation matrices here are tiny (a handful of generators per piece), so a
plain exact Smith-style reduction over Python integers is both simpler and
faster to import than pulling in a CAS.  We only need a diagonal form with
the left transform: cokernel invariants and element orders follow from any
diagonalization, divisibility normalization is not required.
"""

from __future__ import annotations

from math import gcd, lcm

INFINITE = "INFINITE"


def diagonalize_with_left(B):
    """Diagonalize the integer matrix B (m x k) by unimodular row and column
    operations, returning (diag, U) where U records the row operations:
    U @ B @ V is diagonal for some untracked unimodular V.

    Row/column clearing uses floor-division remainders; every remainder swap
    strictly shrinks the pivot, so the reduction terminates.
    """
    m = len(B)
    k = len(B[0]) if m and B[0] else 0
    D = [list(r) for r in B]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def addmul_row(i, j, q):
        for M in (D, U):
            ri, rj = M[i], M[j]
            for c in range(len(ri)):
                ri[c] += q * rj[c]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]

    def addmul_col(i, j, q):
        for r in D:
            r[i] += q * r[j]

    t = 0
    while t < m and t < k:
        best = None
        pi = pj = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, k):
                v = abs(row[j])
                if v and (best is None or v < best):
                    best, pi, pj = v, i, j
        if pi is None:
            break
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    addmul_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        clean = False
            if not clean:
                continue
            for j in range(t + 1, k):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    addmul_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        clean = False
            if clean:
                break
        t += 1
    diag = [D[i][i] if i < k else 0 for i in range(m)]
    return diag, U


class Cokernel:
    """H = Z^m / (span of relation rows), with element-order queries."""

    def __init__(self, relation_rows, num_generators):
        self.m = num_generators
        k = len(relation_rows)
        # B[i][j] = coefficient of generator i in relation j
        B = [[relation_rows[j][i] for j in range(k)] for i in range(self.m)]
        self.diag, self.U = diagonalize_with_left(B)

    @property
    def free_rank(self):
        return sum(1 for d in self.diag if d == 0)

    def torsion_order(self):
        out = 1
        for d in self.diag:
            if d != 0:
                out *= abs(d)
        return out

    def order(self):
        """|H| as an int, or INFINITE."""
        if self.free_rank:
            return INFINITE
        return self.torsion_order()

    def element_order(self, vec):
        """Order of the class of vec in H; INFINITE when non-torsion."""
        w = [sum(self.U[i][j] * vec[j] for j in range(self.m)) for i in range(self.m)]
        out = 1
        for d, wi in zip(self.diag, w):
            if d == 0:
                if wi != 0:
                    return INFINITE
            else:
                out = lcm(out, abs(d) // gcd(abs(d), abs(wi)))
        return out
