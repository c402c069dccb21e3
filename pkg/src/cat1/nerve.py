"""Nerves truncated at dimension 3, horn filling, and categorization.

A simplex of dimension ``n >= 1`` in the nerve is a chain ``(f1, ..., fn)``
of composable morphisms with ``f1`` first. Face ``d_0`` drops ``f1``, face
``d_n`` drops ``fn`` and inner faces compose neighbours; degeneracy ``s_j``
inserts an identity at vertex ``j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ValidationError
from .fincat import FinCat, Functor, make_functor
from .presented import Materialized, PresentedCategory
from .verdict import DEFAULT_LIMITS, Limits, Verdict

TOP = 3


@dataclass
class TruncatedSSet:
    """Simplices in dimensions ``0..top`` with face and degeneracy tables.

    ``faces[d][i][x]`` is ``d_i`` of simplex ``x`` in dimension ``d``;
    ``degens[d][j][x]`` is ``s_j`` of simplex ``x`` in dimension ``d``.
    """

    simplices: list  # per dimension, list of labels
    faces: list  # faces[d] for d >= 1: list of d+1 tuples
    degens: list  # degens[d] for d < top: list of d+1 tuples
    _face_index: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def top(self) -> int:
        return len(self.simplices) - 1

    def count(self, d: int) -> int:
        return len(self.simplices[d])

    def face(self, d: int, i: int, x: int) -> int:
        return self.faces[d][i][x]

    def degen(self, d: int, j: int, x: int) -> int:
        return self.degens[d][j][x]

    def boundary(self, d: int, x: int) -> tuple:
        return tuple(self.faces[d][i][x] for i in range(d + 1))

    def vertex(self, d: int, x: int, i: int) -> int:
        while d > 0:
            if i < d:
                x = self.faces[d][d][x]
            else:
                x = self.faces[d][0][x]
                i -= 1
            d -= 1
        return x

    def vertices(self, d: int, x: int) -> tuple:
        return tuple(self.vertex(d, x, i) for i in range(d + 1))

    def is_degenerate(self, d: int, x: int) -> bool:
        if d == 0:
            return False
        return any(self.degens[d - 1][j][self.faces[d][j][x]] == x for j in range(d))

    def nondegenerate(self, d: int) -> list:
        return [x for x in range(self.count(d)) if not self.is_degenerate(d, x)]

    def by_boundary(self, d: int) -> dict:
        """Boundary tuple -> simplices with that boundary."""
        if d not in self._face_index:
            idx = {}
            for x in range(self.count(d)):
                idx.setdefault(self.boundary(d, x), []).append(x)
            self._face_index[d] = idx
        return self._face_index[d]

    def check_identities(self) -> None:
        top = self.top
        for d in range(2, top + 1):
            for x in range(self.count(d)):
                for j in range(d + 1):
                    for i in range(j):
                        a = self.face(d - 1, i, self.face(d, j, x))
                        b = self.face(d - 1, j - 1, self.face(d, i, x))
                        if a != b:
                            raise ValidationError(f"d{i} d{j} != d{j - 1} d{i} on simplex {x} of dim {d}")
        for d in range(top):
            for x in range(self.count(d)):
                for j in range(d + 1):
                    y = self.degen(d, j, x)
                    for i in range(d + 2):
                        fy = self.face(d + 1, i, y)
                        if i < j:
                            want = self.degen(d - 1, j - 1, self.face(d, i, x)) if d > 0 else None
                        elif i in (j, j + 1):
                            want = x
                        else:
                            want = self.degen(d - 1, j, self.face(d, i - 1, x)) if d > 0 else None
                        if want is not None and fy != want:
                            raise ValidationError(f"d{i} s{j} identity fails on simplex {x} of dim {d}")
                    if d + 1 < top:
                        for i in range(j + 1):
                            if self.degen(d + 1, i, y) != self.degen(d + 1, j + 1, self.degen(d, i, x)):
                                raise ValidationError(f"s{i} s{j} identity fails on simplex {x} of dim {d}")


def _chains(C: FinCat, n: int) -> list:
    if n == 1:
        return [(m,) for m in C.morphisms]
    out = []
    for ch in _chains(C, n - 1):
        for m in C.out_mors[C.tgt[ch[-1]]]:
            out.append(ch + (m,))
    return out


def nerve_truncated(C: FinCat, top: int = TOP) -> TruncatedSSet:
    simplices = [list(C.objects)] + [_chains(C, n) for n in range(1, top + 1)]
    index = [{s: k for k, s in enumerate(level)} for level in simplices]

    def face(n, i, ch):
        if n == 1:
            return C.tgt[ch[0]] if i == 0 else C.src[ch[0]]
        if i == 0:
            return ch[1:]
        if i == n:
            return ch[:-1]
        return ch[:i - 1] + (C.comp[(ch[i], ch[i - 1])],) + ch[i + 1:]

    def degen(n, j, s):
        if n == 0:
            return (C.ident(s),)
        obj = C.src[s[0]] if j == 0 else C.tgt[s[j - 1]]
        return s[:j] + (C.ident(obj),) + s[j:]

    faces = [None] + [
        [tuple(index[n - 1][face(n, i, s)] for s in simplices[n]) for i in range(n + 1)]
        for n in range(1, top + 1)
    ]
    degens = [
        [tuple(index[n + 1][degen(n, j, s)] for s in simplices[n]) for j in range(n + 1)]
        for n in range(top)
    ]
    return TruncatedSSet(simplices, faces, degens)


def restrict(X: TruncatedSSet, keep: Callable[[int, int], bool]) -> TruncatedSSet:
    """Sub-object on the simplices satisfying ``keep``; must be closed under faces and degeneracies."""
    kept = [[x for x in range(X.count(d)) if keep(d, x)] for d in range(X.top + 1)]
    new = [{x: k for k, x in enumerate(level)} for level in kept]
    try:
        faces = [None] + [
            [tuple(new[d - 1][X.face(d, i, x)] for x in kept[d]) for i in range(d + 1)]
            for d in range(1, X.top + 1)
        ]
        degens = [
            [tuple(new[d + 1][X.degen(d, j, x)] for x in kept[d]) for j in range(d + 1)]
            for d in range(X.top)
        ]
    except KeyError:
        raise ValidationError("kept simplices are not closed under faces and degeneracies") from None
    return TruncatedSSet([[X.simplices[d][x] for x in kept[d]] for d in range(X.top + 1)], faces, degens)


def simplex_boundary(n: int) -> TruncatedSSet:
    """Boundary of the standard ``n``-simplex as a sub-object of the nerve of ``[n]``."""
    from .fincat import chain

    X = nerve_truncated(chain(n))
    full = set(range(n + 1))
    return restrict(X, lambda d, x: set(X.vertices(d, x)) != full)


def standard_horn(n: int, k: int) -> TruncatedSSet:
    """The horn missing face ``k`` as a sub-object of the nerve of ``[n]``."""
    from .fincat import chain

    X = nerve_truncated(chain(n))
    full = set(range(n + 1))
    missing = full - {k}

    def keep(d, x):
        vs = set(X.vertices(d, x))
        return vs != full and vs != missing

    return restrict(X, keep)


# ----------------------------------------------------------------------
# horns
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Horn:
    n: int
    k: int
    faces: tuple  # faces[i] is the (n-1)-simplex at position i; None at k

    def __post_init__(self):
        if not (1 <= self.n and 0 <= self.k <= self.n and len(self.faces) == self.n + 1):
            raise ValidationError("malformed horn")
        if self.faces[self.k] is not None:
            raise ValidationError("horn must omit its missing face")


def _compatible(X: TruncatedSSet, n: int, i: int, yi: int, j: int, yj: int) -> bool:
    """``d_i y_j = d_{j-1} y_i`` for ``i < j``."""
    if n == 1:
        return True
    return X.face(n - 1, i, yj) == X.face(n - 1, j - 1, yi)


def horn_is_compatible(X: TruncatedSSet, h: Horn) -> bool:
    idx = [i for i in range(h.n + 1) if i != h.k]
    return all(_compatible(X, h.n, i, h.faces[i], j, h.faces[j]) for i, j in itertools.combinations(idx, 2))


def iter_horns(X: TruncatedSSet, n: int, k: int):
    """All compatible horns ``Λ^n_k`` in ``X``, by backtracking over faces."""
    idx = [i for i in range(n + 1) if i != k]
    chosen = [None] * (n + 1)

    def go(pos):
        if pos == len(idx):
            yield Horn(n, k, tuple(chosen))
            return
        i = idx[pos]
        for y in range(X.count(n - 1)):
            if all(_compatible(X, n, j, chosen[j], i, y) for j in idx[:pos]):
                chosen[i] = y
                yield from go(pos + 1)
        chosen[i] = None

    yield from go(0)


def fillers(X: TruncatedSSet, h: Horn) -> list:
    out = []
    for s in range(X.count(h.n)):
        if all(X.face(h.n, i, s) == h.faces[i] for i in range(h.n + 1) if i != h.k):
            out.append(s)
    return out


def fill_horn(X: TruncatedSSet, h: Horn, unique: bool = False) -> Verdict:
    if h.n > X.top:
        raise ValidationError("horn dimension exceeds truncation")
    found = fillers(X, h)
    if (len(found) == 1) if unique else found:
        return Verdict.true({"filler": found[0]})
    return Verdict.false({"filler_count": len(found)})


def is_kan_truncated(X: TruncatedSSet, max_dim: Optional[int] = None) -> bool:
    top = min(X.top, max_dim or X.top)
    for n in range(1, top + 1):
        for k in range(n + 1):
            for h in iter_horns(X, n, k):
                if not fillers(X, h):
                    return False
    return True


def first_unfillable_horn(X: TruncatedSSet) -> Optional[Horn]:
    for n in range(1, X.top + 1):
        for k in range(n + 1):
            for h in iter_horns(X, n, k):
                if not fillers(X, h):
                    return h
    return None


# ----------------------------------------------------------------------
# nerves of functors
# ----------------------------------------------------------------------

@dataclass
class SimplicialMap:
    source: TruncatedSSet
    target: TruncatedSSet
    maps: list  # maps[d][x] -> simplex of target


def nerve_of_functor(p: Functor, NE: Optional[TruncatedSSet] = None,
                     NB: Optional[TruncatedSSet] = None) -> SimplicialMap:
    NE = NE or nerve_truncated(p.source)
    NB = NB or nerve_truncated(p.target)
    maps = [tuple(p.obj_map)]
    for d in range(1, NE.top + 1):
        index = {s: k for k, s in enumerate(NB.simplices[d])}
        maps.append(tuple(index[tuple(p.mor_map[m] for m in s)] for s in NE.simplices[d]))
    return SimplicialMap(NE, NB, maps)


def kan_fibration_truncated(p: Functor, max_dim: int = TOP) -> Verdict:
    """Every horn in the total over a simplex in the base has a filler over that simplex."""
    Np = nerve_of_functor(p)
    NE, NB = Np.source, Np.target
    for n in range(1, max_dim + 1):
        base_by_faces = {}
        for t in range(NB.count(n)):
            base_by_faces.setdefault(NB.boundary(n, t), []).append(t)
        for k in range(n + 1):
            for h in iter_horns(NE, n, k):
                image = [Np.maps[n - 1][y] if y is not None else None for y in h.faces]
                fills = fillers(NE, h)
                for bound, ts in base_by_faces.items():
                    if any(bound[i] != image[i] for i in range(n + 1) if i != k):
                        continue
                    for t in ts:
                        if not any(Np.maps[n][s] == t for s in fills):
                            return Verdict.false({"horn": h, "base_simplex": t, "dimension": n, "missing": k})
    return Verdict.true({"max_dim": max_dim})


def vertex_lifts_unique(p: Functor, max_dim: int = TOP) -> Verdict:
    """Unique lifts against every vertex inclusion of a simplex, up to ``max_dim``."""
    Np = nerve_of_functor(p)
    NE, NB = Np.source, Np.target
    for n in range(1, max_dim + 1):
        over = {}
        for s in range(NE.count(n)):
            over.setdefault(Np.maps[n][s], []).append(s)
        for t in range(NB.count(n)):
            lifts_t = over.get(t, [])
            for v in range(n + 1):
                bv = NB.vertex(n, t, v)
                for e in (e for e in range(NE.count(0)) if Np.maps[0][e] == bv):
                    count = sum(1 for s in lifts_t if NE.vertex(n, s, v) == e)
                    if count != 1:
                        return Verdict.false({"dimension": n, "base_simplex": t, "vertex": v,
                                              "object": e, "lift_count": count})
    return Verdict.true({"max_dim": max_dim})


# ----------------------------------------------------------------------
# categorization
# ----------------------------------------------------------------------

@dataclass
class Categorized:
    sset: TruncatedSSet
    presented: PresentedCategory
    edge_generator: dict  # nondegenerate edge -> generator id

    def edge_word(self, e: int) -> tuple:
        g = self.edge_generator.get(e)
        return () if g is None else (g,)

    def materialize(self, limits: Limits = DEFAULT_LIMITS) -> Materialized:
        return self.presented.materialize(limits)


def categorize(X: TruncatedSSet) -> Categorized:
    names = [str(v) for v in X.simplices[0]]
    edges = X.nondegenerate(1) if X.top >= 1 else []
    gens = []
    edge_gen = {}
    for e in edges:
        edge_gen[e] = len(gens)
        gens.append((f"e{e}", X.face(1, 1, e), X.face(1, 0, e)))
    P = PresentedCategory(names, gens)
    C = Categorized(X, P, edge_gen)
    if X.top >= 2:
        for s in range(X.count(2)):
            d0, d1, d2 = X.boundary(2, s)
            lhs = C.edge_word(d1)
            rhs = C.edge_word(d2) + C.edge_word(d0)
            P.add_relation(X.vertex(2, s, 0), X.vertex(2, s, 2), lhs, rhs)
    return C


def counit_isomorphism(C: FinCat, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Check that categorizing the nerve of ``C`` gives back ``C``.

    True carries the comparison functor ``C -> c(N(C))``, which is checked to
    be bijective on objects and morphisms.
    """
    cat = categorize(nerve_truncated(C, 2))
    M = cat.materialize(limits)
    D = M.category
    mor_map = [M.find(C.src[m], cat.edge_word(m)) for m in C.morphisms]
    F = make_functor(C, D, list(C.objects), mor_map)
    if D.n_obj != C.n_obj or D.n_mor != C.n_mor or len(set(mor_map)) != C.n_mor:
        return Verdict.false({"objects": D.n_obj, "morphisms": D.n_mor, "expected": C.n_mor})
    return Verdict.true({"functor": F})
