"""Finite categories, functors, and the combinatorial primitives built on them.

A :class:`FinCat` stores everything explicitly: endpoints of every morphism,
and a total composition table over composable pairs (identity pairs
included). Morphism ids are laid out canonically: morphism ``i`` is the
identity of object ``i`` for ``i < n_obj``, non-identities follow.
"""
from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .errors import (
    BadIdentity,
    BudgetExceeded,
    DanglingEndpoint,
    EndpointMismatch,
    InvalidFunctor,
    MissingComposite,
    NonAssociative,
    ValidationError,
)

DEFAULT_FUNCTOR_BUDGET = 1_000_000


@dataclass(frozen=True, eq=False)
class FinCat:
    n_obj: int
    src: tuple
    tgt: tuple
    comp: dict = field(repr=False)
    obj_names: tuple = field(default=(), repr=False)
    mor_names: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if not self.obj_names:
            object.__setattr__(self, "obj_names", tuple(str(i) for i in range(self.n_obj)))
        if not self.mor_names:
            names = [f"id_{self.obj_names[i]}" for i in range(self.n_obj)]
            names += [f"m{i}" for i in range(self.n_obj, len(self.src))]
            object.__setattr__(self, "mor_names", tuple(names))

    # -- basic accessors -------------------------------------------------
    @property
    def n_mor(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_obj)

    @property
    def morphisms(self) -> range:
        return range(len(self.src))

    @property
    def nonidentities(self) -> range:
        return range(self.n_obj, len(self.src))

    def ident(self, obj: int) -> int:
        return obj

    def is_identity(self, m: int) -> bool:
        return m < self.n_obj

    def compose(self, g: int, f: int) -> int:
        """``g`` after ``f``."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise EndpointMismatch(
                f"{self.mor_names[g]} and {self.mor_names[f]} are not composable"
            ) from None

    @cached_property
    def _homs(self) -> dict:
        homs = {}
        for m in self.morphisms:
            homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple:
        return self._homs.get((a, b), ())

    @cached_property
    def out_mors(self) -> tuple:
        out = [[] for _ in self.objects]
        for m in self.morphisms:
            out[self.src[m]].append(m)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_mors(self) -> tuple:
        inc = [[] for _ in self.objects]
        for m in self.morphisms:
            inc[self.tgt[m]].append(m)
        return tuple(tuple(x) for x in inc)

    def composable_pairs(self) -> Iterator[tuple]:
        """All ``(g, f)`` with ``src(g) == tgt(f)``."""
        for f in self.morphisms:
            for g in self.out_mors[self.tgt[f]]:
                yield g, f

    def obj_index(self, name: str) -> int:
        try:
            return self.obj_names.index(name)
        except ValueError:
            raise KeyError(f"no object named {name!r}") from None

    def mor_index(self, name: str) -> int:
        try:
            return self.mor_names.index(name)
        except ValueError:
            raise KeyError(f"no morphism named {name!r}") from None

    def structure(self) -> tuple:
        return (self.n_obj, self.src, self.tgt, tuple(sorted(self.comp.items())))

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.structure() == other.structure()
            and self.obj_names == other.obj_names
            and self.mor_names == other.mor_names
        )

    def same_structure(self, other: "FinCat") -> bool:
        return self.structure() == other.structure()

    __hash__ = object.__hash__

    def describe(self) -> str:
        return f"FinCat({self.n_obj} objects, {self.n_mor} morphisms)"


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def check_category(n_obj: int, src: Sequence[int], tgt: Sequence[int], comp: dict,
                   names: Optional[Sequence[str]] = None) -> None:
    """Exhaustively check the category axioms; raise on the first violation."""
    nm = (lambda m: names[m]) if names else (lambda m: f"#{m}")
    n_mor = len(src)
    if len(tgt) != n_mor or n_mor < n_obj:
        raise DanglingEndpoint("endpoint tables have inconsistent lengths")
    for m in range(n_mor):
        for end in (src[m], tgt[m]):
            if not 0 <= end < n_obj:
                raise DanglingEndpoint(f"morphism {nm(m)} has endpoint {end} outside 0..{n_obj - 1}")
    for o in range(n_obj):
        if src[o] != o or tgt[o] != o:
            raise BadIdentity(f"identity {nm(o)} is not an endomorphism of object {o}")
    out = [[] for _ in range(n_obj)]
    for m in range(n_mor):
        out[src[m]].append(m)
    for f in range(n_mor):
        for g in out[tgt[f]]:
            h = comp.get((g, f))
            if h is None:
                raise MissingComposite(f"composite {nm(g)} o {nm(f)} is missing")
            if not 0 <= h < n_mor or src[h] != src[f] or tgt[h] != tgt[g]:
                raise MissingComposite(
                    f"composite {nm(g)} o {nm(f)} = {h} has wrong endpoints"
                )
    expected = sum(len(out[tgt[f]]) for f in range(n_mor))
    if len(comp) != expected:
        extra = [k for k in comp if k[0] >= n_mor or k[1] >= n_mor or src[k[0]] != tgt[k[1]]]
        raise MissingComposite(f"composition table has entries for non-composable pairs: {extra[:3]}")
    for m in range(n_mor):
        if comp[(tgt[m], m)] != m or comp[(m, src[m])] != m:
            raise BadIdentity(f"identity law fails for {nm(m)}")
    for f in range(n_mor):
        for g in out[tgt[f]]:
            gf = comp[(g, f)]
            for h in out[tgt[g]]:
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    raise NonAssociative(
                        f"({nm(h)} o {nm(g)}) o {nm(f)} != {nm(h)} o ({nm(g)} o {nm(f)})"
                    )


@dataclass
class RawCategory:
    """Unvalidated category data, addressed by name."""

    objects: list
    morphisms: list  # (name, src, tgt) including identities
    identities: dict  # object name -> morphism name
    compose: list  # (g, f, h) meaning g o f = h


def validate_category(raw: RawCategory) -> FinCat:
    """Validate raw data and return a canonically laid out :class:`FinCat`.

    Identity morphisms are renumbered to come first; other morphisms keep
    their relative order.
    """
    obj_ix = {}
    for o in raw.objects:
        if o in obj_ix:
            raise ValidationError(f"duplicate object {o!r}")
        obj_ix[o] = len(obj_ix)
    ends = {}
    for name, s, t in raw.morphisms:
        if name in ends:
            raise ValidationError(f"duplicate morphism {name!r}")
        if s not in obj_ix or t not in obj_ix:
            raise DanglingEndpoint(f"morphism {name!r} has unknown endpoint {s if s not in obj_ix else t!r}")
        ends[name] = (obj_ix[s], obj_ix[t])
    for o in raw.objects:
        if o not in raw.identities:
            raise BadIdentity(f"object {o!r} has no identity")
        i = raw.identities[o]
        if i not in ends:
            raise BadIdentity(f"identity {i!r} of {o!r} is not a declared morphism")
        if ends[i] != (obj_ix[o], obj_ix[o]):
            raise BadIdentity(f"identity {i!r} is not an endomorphism of {o!r}")
    id_names = [raw.identities[o] for o in raw.objects]
    if len(set(id_names)) != len(id_names):
        raise BadIdentity("two objects share an identity morphism")
    idset = set(id_names)
    order = id_names + [name for name, _, _ in raw.morphisms if name not in idset]
    mor_ix = {name: i for i, name in enumerate(order)}
    src = tuple(ends[n][0] for n in order)
    tgt = tuple(ends[n][1] for n in order)
    comp = {}
    for g, f, h in raw.compose:
        for x in (g, f, h):
            if x not in mor_ix:
                raise DanglingEndpoint(f"composition entry mentions unknown morphism {x!r}")
        key = (mor_ix[g], mor_ix[f])
        if src[key[0]] != tgt[key[1]]:
            raise MissingComposite(f"entry {g} o {f} is not composable")
        if key in comp and comp[key] != mor_ix[h]:
            raise MissingComposite(f"conflicting entries for {g} o {f}")
        comp[key] = mor_ix[h]
    n_obj = len(raw.objects)
    # identity laws are definitional: fill them, but reject contradicting entries
    for m in range(len(order)):
        for key in ((tgt[m], m), (m, src[m])):
            if key in comp and comp[key] != m:
                raise BadIdentity(f"identity law contradicted by entry for {order[key[0]]} o {order[key[1]]}")
            comp[key] = m
    check_category(n_obj, src, tgt, comp, order)
    return FinCat(n_obj, src, tgt, comp, tuple(str(o) for o in raw.objects), tuple(order))


IdKey = namedtuple("IdKey", "obj")


def build_category(objects: Sequence[Hashable], morphisms: Iterable[tuple],
                   compose: Callable, *, identity_key: Callable = IdKey,
                   obj_name: Callable = str, mor_name: Callable = str,
                   check: bool = True) -> FinCat:
    """Assemble a FinCat from keyed data.

    ``morphisms`` yields ``(key, src_key, tgt_key)`` for non-identities only;
    ``compose(g_key, f_key)`` is called for composable non-identity pairs and
    returns a morphism key or ``identity_key(obj)``.
    """
    objects = list(objects)
    oix = {o: i for i, o in enumerate(objects)}
    keys = [identity_key(o) for o in objects]
    src = list(range(len(objects)))
    tgt = list(range(len(objects)))
    names = [f"id_{obj_name(o)}" for o in objects]
    for key, s, t in morphisms:
        keys.append(key)
        src.append(oix[s])
        tgt.append(oix[t])
        names.append(mor_name(key))
    mix = {k: i for i, k in enumerate(keys)}
    if len(mix) != len(keys):
        raise ValidationError("duplicate morphism keys")
    n_obj = len(objects)
    out = [[] for _ in objects]
    for m in range(len(keys)):
        out[src[m]].append(m)
    comp = {}
    for f in range(len(keys)):
        for g in out[tgt[f]]:
            if g < n_obj:
                comp[(g, f)] = f
            elif f < n_obj:
                comp[(g, f)] = g
            else:
                h = compose(keys[g], keys[f])
                try:
                    comp[(g, f)] = mix[h]
                except KeyError:
                    raise MissingComposite(f"composite {names[g]} o {names[f]} gave unknown key {h!r}") from None
    src, tgt = tuple(src), tuple(tgt)
    if check:
        check_category(n_obj, src, tgt, comp, names)
    return FinCat(n_obj, src, tgt, comp, tuple(obj_name(o) for o in objects), tuple(names))


# ----------------------------------------------------------------------
# named categories
# ----------------------------------------------------------------------

def preorder_category(n: int, leq: Callable[[int, int], bool], names=None) -> FinCat:
    """Category with at most one arrow ``a -> b``, present iff ``leq(a, b)``."""
    objs = list(range(n))
    mors = [((a, b), a, b) for a in objs for b in objs if a != b and leq(a, b)]
    onames = names or [str(i) for i in objs]

    def comp(g, f):
        a, c = f[0], g[1]
        return IdKey(a) if a == c else (a, c)

    return build_category(objs, mors, comp, obj_name=lambda o: onames[o],
                          mor_name=lambda k: f"{onames[k[0]]}{onames[k[1]]}" if n <= 10 else f"{onames[k[0]]}_{onames[k[1]]}")


def chain(n: int) -> FinCat:
    """The poset ``[n] = 0 < 1 < ... < n``."""
    return preorder_category(n + 1, lambda a, b: a <= b)


def interval(n: int) -> FinCat:
    """The zigzag category ``I_n``; even objects are sources."""
    def leq(a, b):
        return a == b or (a % 2 == 0 and abs(a - b) == 1)

    return preorder_category(n + 1, leq)


def codiscrete(n: int) -> FinCat:
    """Exactly one arrow between any two objects; S^inf for ``n == 2``."""
    return preorder_category(n, lambda a, b: True)


def discrete(n: int) -> FinCat:
    return build_category(range(n), [], lambda g, f: None)


def empty() -> FinCat:
    return discrete(0)


def point() -> FinCat:
    return build_category(["*"], [], lambda g, f: None)


def circle() -> FinCat:
    """S^1: two parallel arrows ``f, g : 0 -> 1``."""
    return build_category([0, 1], [("f", 0, 1), ("g", 0, 1)], lambda g, f: None)


def span_I2() -> FinCat:
    """``1 <- 0 -> 2``."""
    return build_category([0, 1, 2], [("a", 0, 1), ("b", 0, 2)], lambda g, f: None)


def cone_circle() -> FinCat:
    """CS^1: ``0 -> 1 => 2`` with 0 initial, so both composites agree."""
    def comp(g, f):
        if f == "g" and g in ("h", "k"):
            return "c"
        raise AssertionError((g, f))

    return build_category([0, 1, 2], [("g", 0, 1), ("h", 1, 2), ("k", 1, 2), ("c", 0, 2)], comp)


def group_category(table: Sequence[Sequence[int]], identity: int = 0,
                   labels: Optional[Sequence[str]] = None) -> FinCat:
    """One-object groupoid from a multiplication table, ``g o f = table[g][f]``."""
    n = len(table)
    labels = labels or [f"g{i}" for i in range(n)]
    elems = [e for e in range(n) if e != identity]

    def comp(g, f):
        h = table[g][f]
        return IdKey("*") if h == identity else h

    return build_category(["*"], [(e, "*", "*") for e in elems], comp,
                          mor_name=lambda e: labels[e])


def cyclic_table(n: int) -> list:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_table(k: int) -> list:
    perms = sorted(itertools.permutations(range(k)))
    ix = {p: i for i, p in enumerate(perms)}
    # (g o f)(x) = g(f(x))
    return [[ix[tuple(g[f[x]] for x in range(k))] for f in perms] for g in perms]


def cyclic_group(n: int) -> FinCat:
    return group_category(cyclic_table(n), labels=[f"t{i}" for i in range(n)])


def symmetric_group(k: int) -> FinCat:
    return group_category(symmetric_table(k))


STANDARD_TAGS = ("Empty", "Point", "Chain", "S0", "S1", "I2", "CS1", "SInf", "Interval")


def standard(tag: str, n: Optional[int] = None) -> FinCat:
    """The named small categories used throughout the lifting machinery."""
    if tag in ("Chain", "Interval") and n is None:
        raise ValueError(f"{tag} needs a length")
    if tag == "Empty":
        return empty()
    if tag == "Point":
        return point()
    if tag == "Chain":
        return chain(n)
    if tag == "S0":
        return discrete(2)
    if tag == "S1":
        return circle()
    if tag == "I2":
        return span_I2()
    if tag == "CS1":
        return cone_circle()
    if tag == "SInf":
        return codiscrete(2)
    if tag == "Interval":
        return interval(n)
    raise ValueError(f"unknown standard category {tag!r}")


# ----------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------

def opposite(C: FinCat) -> FinCat:
    comp = {(f, g): h for (g, f), h in C.comp.items()}
    return FinCat(C.n_obj, C.tgt, C.src, comp, C.obj_names, C.mor_names)


def product(C: FinCat, D: FinCat) -> FinCat:
    objs = [(a, b) for a in C.objects for b in D.objects]
    mors = [((f, g), (C.src[f], D.src[g]), (C.tgt[f], D.tgt[g]))
            for f in C.morphisms for g in D.morphisms
            if not (C.is_identity(f) and D.is_identity(g))]

    def comp(k2, k1):
        return (C.comp[(k2[0], k1[0])], D.comp[(k2[1], k1[1])])

    return build_category(
        objs, mors, comp,
        identity_key=lambda o: (C.ident(o[0]), D.ident(o[1])),
        obj_name=lambda o: f"({C.obj_names[o[0]]},{D.obj_names[o[1]]})",
        mor_name=lambda k: f"({C.mor_names[k[0]]},{D.mor_names[k[1]]})",
        check=False,
    )


def coproduct(C: FinCat, D: FinCat) -> FinCat:
    objs = [(0, a) for a in C.objects] + [(1, b) for b in D.objects]
    mors = [((0, f), (0, C.src[f]), (0, C.tgt[f])) for f in C.nonidentities]
    mors += [((1, g), (1, D.src[g]), (1, D.tgt[g])) for g in D.nonidentities]
    cats = (C, D)

    def comp(k2, k1):
        side = k1[0]
        h = cats[side].comp[(k2[1], k1[1])]
        return IdKey((side, cats[side].src[h])) if cats[side].is_identity(h) else (side, h)

    names = (C.obj_names, D.obj_names)
    mnames = (C.mor_names, D.mor_names)
    tag = ("", "") if _disjoint_names(C, D) else ("L", "R")
    return build_category(
        objs, mors, comp,
        obj_name=lambda o: f"{tag[o[0]]}{names[o[0]][o[1]]}",
        mor_name=lambda k: f"{tag[k[0]]}{mnames[k[0]][k[1]]}",
        check=False,
    )


def _disjoint_names(C: FinCat, D: FinCat) -> bool:
    return not (set(C.obj_names) & set(D.obj_names)) and not (set(C.mor_names) & set(D.mor_names))


# ----------------------------------------------------------------------
# functors
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: tuple
    mor_map: tuple

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def ob(self, o: int) -> int:
        return self.obj_map[o]

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.obj_map == other.obj_map and self.mor_map == other.mor_map
                and self.source.same_structure(other.source)
                and self.target.same_structure(other.target))

    __hash__ = object.__hash__

    def describe(self) -> str:
        S, T = self.source, self.target
        lines = [f"obj {S.obj_names[o]} => {T.obj_names[self.obj_map[o]]}" for o in S.objects]
        lines += [f"mor {S.mor_names[m]} => {T.mor_names[self.mor_map[m]]}" for m in S.nonidentities]
        return "\n".join(lines)


def check_functor(A: FinCat, B: FinCat, obj_map: Sequence[int], mor_map: Sequence[int]) -> None:
    if len(obj_map) != A.n_obj or len(mor_map) != A.n_mor:
        raise InvalidFunctor("map lengths do not match the source category")
    for o in A.objects:
        if not 0 <= obj_map[o] < B.n_obj:
            raise InvalidFunctor(f"object {A.obj_names[o]} maps outside the target")
        if mor_map[o] != B.ident(obj_map[o]):
            raise InvalidFunctor(f"identity of {A.obj_names[o]} is not sent to an identity")
    for m in A.morphisms:
        fm = mor_map[m]
        if not 0 <= fm < B.n_mor:
            raise InvalidFunctor(f"morphism {A.mor_names[m]} maps outside the target")
        if B.src[fm] != obj_map[A.src[m]] or B.tgt[fm] != obj_map[A.tgt[m]]:
            raise InvalidFunctor(f"morphism {A.mor_names[m]} is not sent between the image endpoints")
    for (g, f), h in A.comp.items():
        if B.comp[(mor_map[g], mor_map[f])] != mor_map[h]:
            raise InvalidFunctor(
                f"composition {A.mor_names[g]} o {A.mor_names[f]} is not preserved"
            )


def make_functor(A: FinCat, B: FinCat, obj_map: Sequence[int], mor_map: Sequence[int]) -> Functor:
    check_functor(A, B, obj_map, mor_map)
    return Functor(A, B, tuple(obj_map), tuple(mor_map))


def functor_from_names(A: FinCat, B: FinCat, objs: dict, mors: dict) -> Functor:
    """Build a functor from name maps; identity images are implicit."""
    obj_map = [B.obj_index(objs[A.obj_names[o]]) for o in A.objects]
    mor_map = [B.ident(obj_map[o]) for o in A.objects]
    for m in A.nonidentities:
        mor_map.append(B.mor_index(mors[A.mor_names[m]]))
    return make_functor(A, B, obj_map, mor_map)


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(C.morphisms))


def is_identity_functor(F: Functor) -> bool:
    return (F.source.same_structure(F.target)
            and F.obj_map == tuple(F.source.objects)
            and F.mor_map == tuple(F.source.morphisms))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G`` after ``F``."""
    if not F.target.same_structure(G.source):
        raise EndpointMismatch("target of the first functor is not the source of the second")
    return Functor(F.source, G.target,
                   tuple(G.obj_map[x] for x in F.obj_map),
                   tuple(G.mor_map[m] for m in F.mor_map))


def constant_functor(A: FinCat, B: FinCat, b: int) -> Functor:
    return Functor(A, B, (b,) * A.n_obj, (B.ident(b),) * A.n_mor)


def to_point(C: FinCat, P: Optional[FinCat] = None) -> Functor:
    return constant_functor(C, P or point(), 0)


def from_point(C: FinCat, obj: int, P: Optional[FinCat] = None) -> Functor:
    return Functor(P or point(), C, (obj,), (C.ident(obj),))


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite(F.source), opposite(F.target), F.obj_map, F.mor_map)


def _product_index(C: FinCat, D: FinCat, P: FinCat):
    """Maps (c, d) object and (f, g) morphism pairs to ids of ``product(C, D)``."""
    oix = {(a, b): i for i, (a, b) in enumerate((a, b) for a in C.objects for b in D.objects)}
    mix = {}
    for i in range(P.n_obj):
        a, b = divmod(i, D.n_obj)
        mix[(a, b)] = i  # identity pair (ident(a)=a, ident(b)=b)
    k = P.n_obj
    for f in C.morphisms:
        for g in D.morphisms:
            if C.is_identity(f) and D.is_identity(g):
                continue
            mix[(f, g)] = k
            k += 1
    return oix, mix


def product_functor(F: Functor, G: Functor) -> Functor:
    A = product(F.source, G.source)
    B = product(F.target, G.target)
    _, amix = _product_index(F.source, G.source, A)
    boix, bmix = _product_index(F.target, G.target, B)
    obj_map = [0] * A.n_obj
    for a in F.source.objects:
        for b in G.source.objects:
            obj_map[a * G.source.n_obj + b] = boix[(F.obj_map[a], G.obj_map[b])]
    mor_map = [0] * A.n_mor
    for (f, g), i in amix.items():
        mor_map[i] = bmix[(F.mor_map[f], G.mor_map[g])]
    return Functor(A, B, tuple(obj_map), tuple(mor_map))


def projection(C: FinCat, D: FinCat, side: int = 0) -> Functor:
    """Projection ``C x D -> C`` (side 0) or ``-> D`` (side 1)."""
    P = product(C, D)
    _, mix = _product_index(C, D, P)
    objs = [divmod(i, D.n_obj)[side] for i in range(P.n_obj)]
    mors = [0] * P.n_mor
    for pair, i in mix.items():
        mors[i] = pair[side]
    return Functor(P, (C, D)[side], tuple(objs), tuple(mors))


def coproduct_functor(F: Functor, G: Functor) -> Functor:
    A = coproduct(F.source, G.source)
    B = coproduct(F.target, G.target)

    def obj_in(C_left, side, o):
        return o if side == 0 else C_left.n_obj + o

    def mor_ix(L, R, side, m):
        # layout: identities of L, identities of R, non-ids of L, non-ids of R
        if side == 0:
            return m if L.is_identity(m) else L.n_obj + R.n_obj + (m - L.n_obj)
        if R.is_identity(m):
            return L.n_obj + m
        return L.n_obj + R.n_obj + (L.n_mor - L.n_obj) + (m - R.n_obj)

    FS, GS, FT, GT = F.source, G.source, F.target, G.target
    obj_map = [0] * A.n_obj
    mor_map = [0] * A.n_mor
    for side, H, S in ((0, F, FS), (1, G, GS)):
        for o in S.objects:
            obj_map[obj_in(FS, side, o)] = obj_in(FT, side, H.obj_map[o])
        for m in S.morphisms:
            mor_map[mor_ix(FS, GS, side, m)] = mor_ix(FT, GT, side, H.mor_map[m])
    return Functor(A, B, tuple(obj_map), tuple(mor_map))


def coproduct_inclusion(C: FinCat, D: FinCat, side: int = 0) -> Functor:
    S = coproduct(C, D)
    X = (C, D)[side]
    objs = [o if side == 0 else C.n_obj + o for o in X.objects]
    mors = []
    for m in X.morphisms:
        if side == 0:
            mors.append(m if C.is_identity(m) else C.n_obj + D.n_obj + (m - C.n_obj))
        else:
            mors.append(C.n_obj + m if D.is_identity(m) else C.n_mor + D.n_obj + (m - D.n_obj))
    return Functor(X, S, tuple(objs), tuple(mors))


# ----------------------------------------------------------------------
# functor enumeration
# ----------------------------------------------------------------------

def iter_functors(A: FinCat, B: FinCat, *, obj_domains: Optional[Sequence[Iterable[int]]] = None,
                  mor_domains: Optional[dict] = None,
                  budget: int = DEFAULT_FUNCTOR_BUDGET,
                  injective: bool = False) -> Iterator[Functor]:
    """Yield functors ``A -> B`` in lexicographic order of ``(obj_map, mor_map)``.

    ``obj_domains[o]`` restricts the image of object ``o``; ``mor_domains``
    maps non-identity morphism ids to allowed images. The number of search
    nodes visited is capped by ``budget``. With ``injective`` only functors
    injective on objects and on morphisms are produced.
    """
    nA = A.n_obj
    if obj_domains is None:
        obj_domains = [range(B.n_obj)] * nA
    obj_domains = [sorted(set(d)) for d in obj_domains]
    mor_domains = {m: set(v) for m, v in (mor_domains or {}).items()}
    nonids = list(A.nonidentities)
    pos = {m: i for i, m in enumerate(nonids)}

    def stage(m):
        return -1 if A.is_identity(m) else pos[m]

    checks = [[] for _ in nonids]
    for (g, f), h in A.comp.items():
        last = max(stage(g), stage(f), stage(h))
        if last >= 0:
            checks[last].append((g, f, h))
    # object-stage pruning: arrows between already placed objects need a hom
    obj_arrows = [[] for _ in range(nA)]
    for m in nonids:
        s, t = A.src[m], A.tgt[m]
        obj_arrows[max(s, t)].append(m)

    obj_map = [0] * nA
    mor_map = [0] * A.n_mor
    used_mors = set()
    nodes = 0

    def bump():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"functor search exceeded {budget} nodes", used=nodes, limit=budget)

    def candidates(m):
        cands = B.hom(obj_map[A.src[m]], obj_map[A.tgt[m]])
        dom = mor_domains.get(m)
        if dom is not None:
            cands = [c for c in cands if c in dom]
        return cands

    def place_mor(k):
        if k == len(nonids):
            yield Functor(A, B, tuple(obj_map), tuple(mor_map))
            return
        m = nonids[k]
        for c in candidates(m):
            if injective and c in used_mors:
                continue
            bump()
            mor_map[m] = c
            if all(B.comp[(mor_map[g], mor_map[f])] == mor_map[h] for g, f, h in checks[k]):
                if injective:
                    used_mors.add(c)
                yield from place_mor(k + 1)
                if injective:
                    used_mors.discard(c)

    def place_obj(o):
        if o == nA:
            for x in range(nA):
                mor_map[x] = B.ident(obj_map[x])
            used_mors.clear()
            used_mors.update(mor_map[:nA])
            yield from place_mor(0)
            return
        for b in obj_domains[o]:
            if injective and b in obj_map[:o]:
                continue
            bump()
            obj_map[o] = b
            if all(candidates(m) for m in obj_arrows[o]):
                yield from place_obj(o + 1)

    yield from place_obj(0)


def enumerate_functors(A: FinCat, B: FinCat, *, budget: int = DEFAULT_FUNCTOR_BUDGET, **kw) -> list:
    return list(iter_functors(A, B, budget=budget, **kw))


# ----------------------------------------------------------------------
# fibers and comma categories
# ----------------------------------------------------------------------

def subcategory(C: FinCat, objs: Sequence[int], mors: Sequence[int]) -> tuple:
    """Subcategory on the given objects and (closed) set of morphisms, plus its inclusion."""
    objs = list(objs)
    mset = set(mors)
    keep = [m for m in C.nonidentities if m in mset]

    def comp(g, f):
        h = C.comp[(g, f)]
        return IdKey(C.src[h]) if C.is_identity(h) else h

    S = build_category(objs, [(m, C.src[m], C.tgt[m]) for m in keep], comp,
                       obj_name=lambda o: C.obj_names[o], mor_name=lambda m: C.mor_names[m],
                       check=False)
    incl = Functor(S, C, tuple(objs), tuple(objs) + tuple(keep))
    return S, incl


def fiber_with_inclusion(p: Functor, b: int) -> tuple:
    E = p.source
    objs = [e for e in E.objects if p.obj_map[e] == b]
    ib = p.target.ident(b)
    mors = [m for m in E.nonidentities if p.mor_map[m] == ib]
    return subcategory(E, objs, mors)


def fiber_category(p: Functor, b: int) -> FinCat:
    """Objects over ``b`` and morphisms over ``id_b``."""
    return fiber_with_inclusion(p, b)[0]


@dataclass(frozen=True)
class CommaCategory:
    category: FinCat
    pairs: tuple  # object id -> (x, w)
    inclusion: Functor  # fiber -> comma, x |-> (x, id_y)
    forget: Functor  # comma -> source of p


def _comma(p: Functor, y: int, under: bool) -> CommaCategory:
    X, Y = p.source, p.target
    pairs = []
    for x in X.objects:
        ws = Y.hom(y, p.obj_map[x]) if under else Y.hom(p.obj_map[x], y)
        pairs.extend((x, w) for w in ws)
    pix = {pw: i for i, pw in enumerate(pairs)}
    mors = []
    for (x, w) in pairs:
        for (x2, w2) in pairs:
            for g in X.hom(x, x2):
                if X.is_identity(g) and (x, w) == (x2, w2):
                    continue
                fg = p.mor_map[g]
                ok = Y.comp[(fg, w)] == w2 if under else Y.comp[(w2, fg)] == w
                if ok:
                    mors.append(((g, (x, w), (x2, w2)), (x, w), (x2, w2)))

    def comp(k2, k1):
        h = X.comp[(k2[0], k1[0])]
        if X.is_identity(h):
            return IdKey(k1[1])
        return (h, k1[1], k2[2])

    cat = build_category(pairs, mors, comp,
                         obj_name=lambda o: f"({X.obj_names[o[0]]},{Y.mor_names[o[1]]})",
                         mor_name=lambda k: f"{X.mor_names[k[0]]}@{pix[k[1]]}>{pix[k[2]]}")
    # identities of the comma category may coincide with X-identities only
    mor_g = [X.ident(pairs[i][0]) for i in range(len(pairs))] + [k[0] for k, _, _ in mors]
    forget = Functor(cat, X, tuple(x for x, _ in pairs), tuple(mor_g))
    F, finc = fiber_with_inclusion(p, y)
    iy = Y.ident(y)
    fobj = tuple(pix[(finc.obj_map[o], iy)] for o in F.objects)
    key_ix = {k: cat.n_obj + i for i, (k, _, _) in enumerate(mors)}
    fmor = list(fobj)
    for m in F.nonidentities:
        g = finc.mor_map[m]
        x, x2 = X.src[g], X.tgt[g]
        fmor.append(key_ix[(g, (x, iy), (x2, iy))])
    incl = make_functor(F, cat, fobj, fmor)
    return CommaCategory(cat, tuple(pairs), incl, forget)


def comma_under(p: Functor, y: int) -> CommaCategory:
    """``y/p``: pairs ``(x, w: y -> p(x))``."""
    return _comma(p, y, True)


def comma_over(p: Functor, y: int) -> CommaCategory:
    """``p/y``: pairs ``(x, w: p(x) -> y)``."""
    return _comma(p, y, False)


# ----------------------------------------------------------------------
# isomorphism search
# ----------------------------------------------------------------------

def find_isomorphism(C: FinCat, D: FinCat, budget: int = DEFAULT_FUNCTOR_BUDGET) -> Optional[Functor]:
    """Search for an isomorphism of categories ``C -> D``; ``None`` if none exists."""
    if C.n_obj != D.n_obj or C.n_mor != D.n_mor:
        return None

    def sig(K, o):
        loops = len(K.hom(o, o))
        outs = sorted(len(K.hom(o, b)) for b in K.objects)
        ins = sorted(len(K.hom(a, o)) for a in K.objects)
        return (loops, tuple(outs), tuple(ins))

    csig = [sig(C, o) for o in C.objects]
    dsig = [sig(D, o) for o in D.objects]
    if sorted(csig) != sorted(dsig):
        return None
    domains = [[d for d in D.objects if dsig[d] == csig[o]] for o in C.objects]
    for F in iter_functors(C, D, obj_domains=domains, budget=budget, injective=True):
        return F
    return None
