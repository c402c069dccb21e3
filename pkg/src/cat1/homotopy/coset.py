"""Coset enumeration (HLT strategy with coincidence processing).

Columns of a coset table are laid out as ``2k`` for generator ``k+1`` and
``2k+1`` for its inverse. Cosets act on the right: ``act(c, w)`` is the
coset reached from ``c`` by reading ``w`` left to right.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..verdict import Verdict
from .words import GroupPresentation, SubgroupSpec, inverse_word, reduce_word


def col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def _inv_col(c: int) -> int:
    return c ^ 1


@dataclass(frozen=True)
class CosetTable:
    n_gens: int
    rows: tuple  # rows[c][col] -> coset

    @property
    def index(self) -> int:
        return len(self.rows)

    def act(self, c: int, word: Sequence[int]) -> int:
        for x in word:
            c = self.rows[c][col(x)]
        return c

    def contains(self, word: Sequence[int]) -> bool:
        """Is ``word`` in the subgroup (i.e. does it fix the base coset)?"""
        return self.act(0, word) == 0

    def permutation(self, gen: int) -> tuple:
        return tuple(row[col(gen)] for row in self.rows)

    @property
    def representatives(self) -> tuple:
        """Shortest BFS word from coset 0 to each coset."""
        reps = [None] * self.index
        reps[0] = ()
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for k in range(2 * self.n_gens):
                d = self.rows[c][k]
                if reps[d] is None:
                    x = k // 2 + 1
                    reps[d] = reps[c] + ((x if k % 2 == 0 else -x),)
                    queue.append(d)
        return tuple(reps)

    def is_closed(self) -> bool:
        """Every entry defined and each column a bijection inverse to its partner."""
        n = self.index
        for k in range(2 * self.n_gens):
            colv = [row[k] for row in self.rows]
            if sorted(colv) != list(range(n)):
                return False
            for c in range(n):
                if self.rows[colv[c]][_inv_col(k)] != c:
                    return False
        return True

    def standardized(self) -> "CosetTable":
        return _standardize(self.n_gens, [list(r) for r in self.rows])


def _standardize(n_gens, rows) -> CosetTable:
    order = [0]
    seen = {0: 0}
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for k in range(2 * n_gens):
            d = rows[c][k]
            if d not in seen:
                seen[d] = len(order)
                order.append(d)
    new = tuple(tuple(seen[rows[c][k]] for k in range(2 * n_gens)) for c in order)
    return CosetTable(n_gens, new)


class _Enumerator:
    def __init__(self, P: GroupPresentation, limit: int):
        self.n = P.n_gens
        self.ncols = 2 * self.n
        self.table = []
        self.parent = []
        self.defined = 0
        self.limit = limit
        self.overflow = False
        self._new()

    def _new(self):
        self.defined += 1
        if self.defined > self.limit:
            self.overflow = True
            raise _Overflow
        self.table.append([None] * self.ncols)
        self.parent.append(len(self.parent))
        return len(self.table) - 1

    def alive(self, c):
        return self.parent[c] == c

    def find(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c, k):
        d = self._new()
        self.table[c][k] = d
        self.table[d][_inv_col(k)] = c

    def merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a, b):
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for k in range(self.ncols):
                d = self.table[g][k]
                if d is None:
                    continue
                ik = _inv_col(k)
                if self.table[d][ik] == g:
                    self.table[d][ik] = None
                mu, nu = self.find(g), self.find(d)
                if self.table[mu][k] is not None:
                    self.merge(nu, self.table[mu][k], queue)
                elif self.table[nu][ik] is not None:
                    self.merge(mu, self.table[nu][ik], queue)
                else:
                    self.table[mu][k] = nu
                    self.table[nu][ik] = mu

    def scan_and_fill(self, alpha, cols):
        t = self.table
        f, b = alpha, alpha
        i, j = 0, len(cols) - 1
        while True:
            while i <= j and t[f][cols[i]] is not None:
                f = t[f][cols[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and t[b][_inv_col(cols[j])] is not None:
                b = t[b][_inv_col(cols[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][cols[i]] = b
                t[b][_inv_col(cols[i])] = f
                return
            self.define(f, cols[i])

    def run(self, relators, subgroup):
        rel_cols = [[col(x) for x in r] for r in relators if r]
        for w in subgroup:
            if w:
                self.scan_and_fill(0, [col(x) for x in w])
        alpha = 0
        while alpha < len(self.table):
            for r in rel_cols:
                if not self.alive(alpha):
                    break
                self.scan_and_fill(alpha, r)
            if self.alive(alpha):
                for k in range(self.ncols):
                    if self.table[alpha][k] is None:
                        self.define(alpha, k)
            alpha += 1
        live = [c for c in range(len(self.table)) if self.alive(c)]
        ix = {c: i for i, c in enumerate(live)}
        rows = [[ix[self.find(self.table[c][k])] for k in range(self.ncols)] for c in live]
        return _standardize(self.n, rows)


class _Overflow(Exception):
    pass


def todd_coxeter(P: GroupPresentation, H=(), coset_limit: int = 50_000) -> Verdict:
    """Enumerate the cosets of ``H`` in ``P``.

    Returns ``Verdict.true(CosetTable)`` when the enumeration closes within
    ``coset_limit`` defined cosets, otherwise ``Verdict.unknown`` with a
    resource report.
    """
    words = H.words if isinstance(H, SubgroupSpec) else tuple(P.check_word(w) for w in H)
    if P.n_gens == 0:
        return Verdict.true(CosetTable(0, ((),)))
    en = _Enumerator(P, coset_limit)
    try:
        table = en.run(P.relators, words)
    except _Overflow:
        return Verdict.unknown({"cosets_defined": en.defined - 1, "coset_limit": coset_limit},
                               note="coset limit reached")
    return Verdict.true(table)


@dataclass
class FiniteGroup:
    """A finite group realized as the regular action on its own cosets."""

    table: CosetTable
    _reps: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self._reps = self.table.representatives

    @property
    def order(self) -> int:
        return self.table.index

    @property
    def identity(self) -> int:
        return 0

    def element(self, word: Sequence[int]) -> int:
        return self.table.act(0, word)

    def word(self, a: int) -> tuple:
        return self._reps[a]

    def mul(self, a: int, b: int) -> int:
        return self.table.act(a, self._reps[b])

    def inverse(self, a: int) -> int:
        return self.table.act(0, inverse_word(self._reps[a]))

    def multiplication_table(self) -> list:
        return [[self.mul(a, b) for b in range(self.order)] for a in range(self.order)]


def finite_group(P: GroupPresentation, coset_limit: int = 50_000) -> Optional[FiniteGroup]:
    v = todd_coxeter(P, (), coset_limit)
    return FiniteGroup(v.payload) if v.is_true else None


def subgroup_table(H: SubgroupSpec, coset_limit: int = 50_000) -> Verdict:
    return todd_coxeter(H.ambient, H, coset_limit)


def same_subgroup(H: SubgroupSpec, K: SubgroupSpec, coset_limit: int = 50_000) -> Verdict:
    """Finite-index subgroup equality via standardized coset tables."""
    a = subgroup_table(H, coset_limit)
    b = subgroup_table(K, coset_limit)
    if not (a.is_true and b.is_true):
        return Verdict.unknown({"left": a.status, "right": b.status}, note="index not proven finite")
    if a.payload.rows == b.payload.rows:
        return Verdict.true({"index": a.payload.index})
    for w in K.words:
        if not a.payload.contains(w):
            return Verdict.false({"word": w, "missing_from": "left"})
    for w in H.words:
        if not b.payload.contains(w):
            return Verdict.false({"word": w, "missing_from": "right"})
    raise AssertionError("distinct standardized tables for mutually contained subgroups")


def is_subgroup_of(K_words, H: SubgroupSpec, coset_limit: int = 50_000) -> Verdict:
    """Is every word of ``K_words`` in ``H``? False carries the first violator."""
    v = subgroup_table(H, coset_limit)
    if not v.is_true:
        return v
    for w in K_words:
        w = reduce_word(w)
        if not v.payload.contains(w):
            return Verdict.false({"word": w})
    return Verdict.true({"index": v.payload.index})
