"""Smith normal form over the integers, with unimodular transforms.

Used to compute abelianizations and to decide whether a map of finitely
generated abelian groups is an isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import GroupPresentation


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], n_cols: int = None):
    """Return ``(U, S, V)`` with ``U * A * V == S`` and ``S`` in Smith form.

    ``U`` and ``V`` are unimodular. ``n_cols`` fixes the width when ``A`` has
    no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (n_cols or 0)
    S = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in S:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: pivot must divide everything below-right
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % S[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, S, V


def invariant_factors(A: Sequence[Sequence[int]], n_cols: int = None) -> list:
    """Non-zero diagonal entries of the Smith form."""
    _, S, _ = smith_normal_form(A, n_cols)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def left_kernel(A: Sequence[Sequence[int]], n_cols: int) -> list:
    """A basis of ``{y : y A = 0}`` over the integers."""
    m = len(A)
    if m == 0:
        return []
    U, S, _ = smith_normal_form(A, n_cols)
    r = sum(1 for i in range(min(m, n_cols)) if S[i][i])
    return [U[i] for i in range(r, m)]


class Lattice:
    """Row lattice of an integer matrix, with a membership test."""

    def __init__(self, rows: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.rows = [list(r) for r in rows]
        _, S, V = smith_normal_form(self.rows, dim)
        self._V = V
        self._d = [S[i][i] for i in range(min(len(S), dim)) if S and S[i][i]]

    def __contains__(self, v: Sequence[int]) -> bool:
        if self.dim == 0:
            return True
        w = _matmul([list(v)], self._V)[0]
        for i, x in enumerate(w):
            if i < len(self._d):
                if x % self._d[i]:
                    return False
            elif x:
                return False
        return True


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple
    free_rank: int

    def describe(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def order(self):
        """Order of the abelianization, ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out


def exponent_vector(word, n: int) -> list:
    v = [0] * n
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def relator_matrix(P: GroupPresentation) -> list:
    return [exponent_vector(r, P.n_gens) for r in P.relators]


def abelianization(P: GroupPresentation) -> AbelianInvariants:
    d = invariant_factors(relator_matrix(P), P.n_gens)
    return AbelianInvariants(tuple(x for x in d if x != 1), P.n_gens - len(d))


def abelian_map_report(P: GroupPresentation, Q: GroupPresentation, images: Sequence) -> dict:
    """Decide whether the induced map ``P^ab -> Q^ab`` is an isomorphism.

    ``images[k]`` is the word in ``Q`` that generator ``k+1`` of ``P`` maps
    to. Returns a dict with ``surjective``, ``injective`` and, on failure,
    a ``kernel_witness`` exponent vector outside the relator lattice.
    """
    a, b = P.n_gens, Q.n_gens
    M = [exponent_vector(w, b) for w in images]
    RB = relator_matrix(Q)
    stacked = M + RB
    if b == 0:
        surjective = True
    else:
        d = invariant_factors(stacked, b) if stacked else []
        surjective = len(d) == b and all(x == 1 for x in d)
    RA = Lattice(relator_matrix(P), a)
    witness = None
    if a:
        for y in left_kernel(M + [[-x for x in r] for r in RB], b) if (M or RB) else []:
            x = y[:a]
            if x not in RA:
                witness = x
                break
    return {"surjective": surjective, "injective": witness is None, "kernel_witness": witness}
