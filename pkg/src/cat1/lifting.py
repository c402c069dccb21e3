"""Lifting properties against small generating functors, and the
classifiers of the 1-type model structure built on them.

Squares are enumerated literally: for a generator ``i: A -> B`` and a
functor ``p: E -> F`` every pair ``(top: A -> E, bottom: B -> F)`` with
``p o top == bottom o i`` is produced, and lifts ``B -> E`` are searched by
constrained functor enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, InternalDisagreement, ValidationError
from .fincat import (
    FinCat,
    Functor,
    chain,
    codiscrete,
    compose_functors,
    cone_circle,
    discrete,
    empty,
    functor_from_names,
    iter_functors,
    make_functor,
    opposite,
    opposite_functor,
    point,
    circle,
    span_I2,
)
from .homotopy import is_weak_1_equivalence
from .presented import PresentedCategory
from .verdict import DEFAULT_LIMITS, Limits, Verdict


# ----------------------------------------------------------------------
# generating sets
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratingSet:
    name: str
    members: tuple  # (label, Functor)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __add__(self, other: "GeneratingSet") -> "GeneratingSet":
        return GeneratingSet(f"{self.name}+{other.name}", self.members + other.members)


def _point_into(C: FinCat, obj: int) -> Functor:
    return make_functor(point(), C, [obj], [C.ident(obj)])


def _j1():
    c1 = chain(1)
    return [("*->[1]", _point_into(c1, 0)), ("*->[1]op", _point_into(opposite(c1), 0))]


def _j2():
    c2 = chain(2)
    f = functor_from_names(span_I2(), c2, {"0": "0", "1": "1", "2": "2"}, {"a": "01", "b": "02"})
    return [("I2->[2]", f), ("I2op->[2]op", opposite_functor(f))]


def _j3():
    c2 = chain(2)
    f = functor_from_names(cone_circle(), c2, {"0": "0", "1": "1", "2": "2"},
                           {"g": "01", "h": "12", "k": "12", "c": "02"})
    return [("CS1->[2]", f), ("CS1op->[2]op", opposite_functor(f))]


def generating_J1() -> GeneratingSet:
    return GeneratingSet("J1", tuple(_j1()))


def generating_J2() -> GeneratingSet:
    return GeneratingSet("J2", tuple(_j2()))


def generating_J3() -> GeneratingSet:
    return GeneratingSet("J3", tuple(_j3()))


def generating_J() -> GeneratingSet:
    return GeneratingSet("J", tuple(_j1() + _j2() + _j3()))


def generating_I() -> GeneratingSet:
    c1 = chain(1)
    s0 = make_functor(discrete(2), c1, [0, 1], [0, 1])
    s1 = functor_from_names(circle(), c1, {"0": "0", "1": "1"}, {"f": "01", "g": "01"})
    phi = make_functor(empty(), point(), [], [])
    return GeneratingSet("I", (("empty->*", phi), ("S0->[1]", s0), ("S1->[1]", s1)))


def generating_K() -> GeneratingSet:
    return GeneratingSet("K", (("*->Sinf", _point_into(codiscrete(2), 0)),))


def generating_covering() -> GeneratingSet:
    c1 = chain(1)
    return GeneratingSet("cover", (("0:*->[1]", _point_into(c1, 0)), ("1:*->[1]", _point_into(c1, 1))))


# ----------------------------------------------------------------------
# squares and lifts
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SquareProblem:
    i: Functor  # A -> B
    p: Functor  # E -> F
    top: Functor  # A -> E
    bottom: Functor  # B -> F

    def __post_init__(self):
        if compose_functors(self.p, self.top) != compose_functors(self.bottom, self.i):
            raise ValidationError("square does not commute")

    def describe(self) -> str:
        E, F = self.p.source, self.p.target
        A = self.i.source
        B = self.i.target
        top = ", ".join(f"{A.mor_names[m]}->{E.mor_names[self.top.mor_map[m]]}" for m in A.morphisms)
        bot = ", ".join(f"{B.mor_names[m]}->{F.mor_names[self.bottom.mor_map[m]]}" for m in B.morphisms)
        return f"top[{top}] bottom[{bot}]"


def _lift_domains(sq: SquareProblem):
    i, p, top, bottom = sq.i, sq.p, sq.top, sq.bottom
    B, E = i.target, p.source
    obj_dom = [set(e for e in E.objects if p.obj_map[e] == bottom.obj_map[b]) for b in B.objects]
    mor_dom = {m: set(e for e in E.morphisms if p.mor_map[e] == bottom.mor_map[m]) for m in B.nonidentities}
    for a in i.source.objects:
        obj_dom[i.obj_map[a]] &= {top.obj_map[a]}
    for a in i.source.morphisms:
        m = i.mor_map[a]
        if B.is_identity(m):
            if top.mor_map[a] != E.ident(top.obj_map[a]):
                obj_dom[m] = set()
        else:
            mor_dom[m] &= {top.mor_map[a]}
    return obj_dom, mor_dom


def lifts(sq: SquareProblem, budget: int = DEFAULT_LIMITS.functor_budget, stop_after: Optional[int] = None):
    obj_dom, mor_dom = _lift_domains(sq)
    out = []
    for h in iter_functors(sq.i.target, sq.p.source, obj_domains=obj_dom, mor_domains=mor_dom, budget=budget):
        out.append(h)
        if stop_after is not None and len(out) >= stop_after:
            break
    return out


def solve_lift(sq: SquareProblem, unique: bool = False, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Search diagonal fillers ``h: B -> E`` with ``h o i = top`` and ``p o h = bottom``."""
    try:
        found = lifts(sq, limits.functor_budget, stop_after=2 if unique else 1)
    except BudgetExceeded as exc:
        return Verdict.unknown({"used": exc.used, "limit": exc.limit}, note="functor budget exhausted")
    if unique:
        if len(found) == 1:
            return Verdict.true(found[0])
        return Verdict.false({"lift_count": len(found), "lifts": found})
    if found:
        return Verdict.true(found[0])
    return Verdict.false({"lift_count": 0})


def squares(i: Functor, p: Functor, budget: int = DEFAULT_LIMITS.functor_budget):
    """All commutative squares from ``i`` to ``p``."""
    A, B = i.source, i.target
    E, F = p.source, p.target
    for bottom in iter_functors(B, F, budget=budget):
        obj_dom = [[e for e in E.objects if p.obj_map[e] == bottom.obj_map[i.obj_map[a]]] for a in A.objects]
        mor_dom = {m: [e for e in E.morphisms if p.mor_map[e] == bottom.mor_map[i.mor_map[m]]]
                   for m in A.nonidentities}
        for top in iter_functors(A, E, obj_domains=obj_dom, mor_domains=mor_dom, budget=budget):
            yield SquareProblem(i, p, top, bottom)


def has_rlp(p: Functor, gens: GeneratingSet, unique: bool = False,
            limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Right (unique) lifting property of ``p`` against every member of ``gens``."""
    count = 0
    try:
        for label, i in gens:
            for sq in squares(i, p, limits.functor_budget):
                count += 1
                v = solve_lift(sq, unique, limits)
                if v.is_unknown:
                    return Verdict.unknown({"generator": label, **(v.payload or {})}, note=v.note)
                if v.is_false:
                    return Verdict.false({"generator": label, "square": sq,
                                          "lift_count": v.payload["lift_count"]})
    except BudgetExceeded as exc:
        return Verdict.unknown({"used": exc.used, "limit": exc.limit}, note="functor budget exhausted")
    return Verdict.true({"squares": count, "generators": gens.name})


# ----------------------------------------------------------------------
# classifiers
# ----------------------------------------------------------------------

def is_cofibration(f: Functor) -> bool:
    return len(set(f.obj_map)) == len(f.obj_map)


def is_fibration(p: Functor, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    return has_rlp(p, generating_J(), False, limits)


def is_trivial_fibration(p: Functor, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    return has_rlp(p, generating_I(), False, limits)


def is_isofibration(p: Functor, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    return has_rlp(p, generating_K(), False, limits)


def star_bijections(p: Functor) -> Optional[dict]:
    """``None`` when every star map is bijective, else a witness."""
    E, F = p.source, p.target
    for e in E.objects:
        b = p.obj_map[e]
        for kind, estar, fstar in (("outgoing", E.out_mors[e], F.out_mors[b]),
                                   ("incoming", E.in_mors[e], F.in_mors[b])):
            images = [p.mor_map[m] for m in estar]
            if len(set(images)) != len(images) or set(images) != set(fstar):
                return {"object": e, "star": kind, "sizes": (len(set(images)), len(fstar)),
                        "injective": len(set(images)) == len(images)}
    return None


def covering_by_lifting(p: Functor, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    return has_rlp(p, generating_covering(), True, limits)


def is_covering(p: Functor, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Unique lifting at both ends of ``[1]``, cross-checked against star bijections."""
    stars = star_bijections(p) is None
    v = covering_by_lifting(p, limits)
    if v.decisive and v.is_true != stars:
        raise InternalDisagreement(
            f"unique lifting says {v.status} but star maps say {stars}"
        )
    return stars


def fibers_discrete(p: Functor) -> bool:
    ids = set(p.target.objects)
    return all(p.mor_map[m] not in ids for m in p.source.nonidentities)


@dataclass
class Report:
    entries: dict = field(default_factory=dict)  # property -> Verdict

    def status(self, name: str) -> str:
        return self.entries[name].status

    def lines(self) -> list:
        return [f"{k}: {v.status}" for k, v in self.entries.items()]

    def __str__(self):
        return "\n".join(self.lines())


def _as_verdict(b: bool) -> Verdict:
    return Verdict.true() if b else Verdict.false()


def classify(f: Functor, limits: Limits = DEFAULT_LIMITS) -> Report:
    r = Report()
    r.entries["cofibration"] = _as_verdict(is_cofibration(f))
    r.entries["fibration"] = is_fibration(f, limits)
    r.entries["trivial_fibration"] = is_trivial_fibration(f, limits)
    r.entries["covering"] = _as_verdict(is_covering(f, limits))
    r.entries["weak_equivalence"] = is_weak_1_equivalence(f, limits)
    return r


# ----------------------------------------------------------------------
# pushouts along cofibrations
# ----------------------------------------------------------------------

@dataclass
class Pushout:
    presented: PresentedCategory
    target: FinCat  # C
    other: FinCat  # B
    obj_from_target: tuple  # objects of C -> pushout objects
    obj_from_other: tuple  # objects of B -> pushout objects
    gen_from_target: dict  # non-identity of C -> generator
    gen_from_other: dict  # non-identity of B -> generator

    def materialize(self, limits: Limits = DEFAULT_LIMITS) -> tuple:
        """``(P, C -> P, B -> P)``; raises when equality is not decidable in budget."""
        M = self.presented.materialize(limits)
        P = M.category

        def leg(X, objs, gens):
            mm = [P.ident(o) for o in objs]
            mm += [M.generator_morphism(gens[m]) for m in X.nonidentities]
            return make_functor(X, P, list(objs), mm)

        return (P, leg(self.target, self.obj_from_target, self.gen_from_target),
                leg(self.other, self.obj_from_other, self.gen_from_other))


def pushout_cofibration(i: Functor, g: Functor) -> Pushout:
    """Pushout of a cofibration ``i: A -> B`` along ``g: A -> C``."""
    if not i.source.same_structure(g.source):
        raise ValidationError("pushout legs must share a source")
    if not is_cofibration(i):
        raise ValidationError("pushout is only built along cofibrations")
    A, B, C = i.source, i.target, g.target
    names = list(C.obj_names)
    obj_c = tuple(C.objects)
    obj_b = []
    glued = {i.obj_map[a]: g.obj_map[a] for a in A.objects}
    for b in B.objects:
        if b in glued:
            obj_b.append(glued[b])
        else:
            obj_b.append(len(names))
            names.append(f"B:{B.obj_names[b]}")
    gens = []
    gen_c, gen_b = {}, {}
    for m in C.nonidentities:
        gen_c[m] = len(gens)
        gens.append((C.mor_names[m], C.src[m], C.tgt[m]))
    for m in B.nonidentities:
        gen_b[m] = len(gens)
        gens.append((f"B:{B.mor_names[m]}", obj_b[B.src[m]], obj_b[B.tgt[m]]))
    P = PresentedCategory(names, gens)

    def word(X, gmap, m):
        return () if X.is_identity(m) else (gmap[m],)

    for X, gmap, objs in ((C, gen_c, obj_c), (B, gen_b, obj_b)):
        for f in X.nonidentities:
            for h in X.out_mors[X.tgt[f]]:
                if X.is_identity(h):
                    continue
                k = X.comp[(h, f)]
                P.add_relation(objs[X.src[f]], objs[X.tgt[h]], (gmap[f], gmap[h]), word(X, gmap, k))
    for a in A.nonidentities:
        bm, cm = i.mor_map[a], g.mor_map[a]
        P.add_relation(obj_c[C.src[cm]], obj_c[C.tgt[cm]], word(B, gen_b, bm), word(C, gen_c, cm))
    return Pushout(P, C, B, obj_c, tuple(obj_b), gen_c, gen_b)


def pushout_leg_is_cofibration(po: Pushout) -> bool:
    """The leg ``C -> P`` is injective on objects (decided on object sets)."""
    return len(set(po.obj_from_target)) == len(po.obj_from_target)
