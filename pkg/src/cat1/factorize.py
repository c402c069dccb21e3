"""Factorization of a functor through its mapping category.

For ``f: X -> Y`` the mapping category has objects ``(x, z)`` where ``z`` is
a groupoid class of zigzags in ``Y`` starting at ``f(x)``. A morphism
``(x, z) -> (x', z')`` is a pair ``(c, g)`` of a class ``c: x -> x'`` in the
groupoidification of ``X`` and a morphism ``g`` of ``Y`` between the ends of
``z`` and ``z'`` with ``z' o f(c) = [g] o z``. Then ``f = p o j`` where ``j``
is a trivial cofibration and ``p`` is a fibration.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fincat import FinCat, Functor, build_category, compose_functors, make_functor
from .homotopy import Groupoidification, groupoidification_finite, is_weak_1_equivalence
from .homotopy.fundamental import _invert_steps
from .lifting import Report, is_cofibration, is_fibration
from .verdict import DEFAULT_LIMITS, Limits, Verdict


def class_representative(gp: Groupoidification, k: int) -> tuple:
    """A zigzag (as steps) representing groupoid morphism ``k``."""
    a, b, z = gp.keys[k]
    P = gp.pres_of(a)
    word = gp.group_of(a).word(z)
    return tuple(_invert_steps(P.tree_steps(a))) + P.loop_steps(word) + P.tree_steps(b)


def groupoidify_functor(F: Functor, gX: Groupoidification, gY: Groupoidification) -> Functor:
    """The functor ``pi(X) -> pi(Y)`` induced by ``F: X -> Y``."""
    GX, GY = gX.groupoid, gY.groupoid
    mor_map = []
    for k in GX.morphisms:
        steps = [(F.mor_map[m], fwd) for m, fwd in class_representative(gX, k)]
        mor_map.append(gY.class_of_steps(F.obj_map[GX.src[k]], steps))
    return make_functor(GX, GY, list(F.obj_map), mor_map)


@dataclass(frozen=True)
class FactorizationResult:
    category: FinCat
    j: Functor
    p: Functor
    f: Functor
    keys: tuple  # object of the mapping category -> (x, groupoid morphism of Y)


def mapping_category(f: Functor, limits: Limits = DEFAULT_LIMITS) -> FactorizationResult:
    X, Y = f.source, f.target
    gX = groupoidification_finite(X, limits)
    gY = groupoidification_finite(Y, limits)
    GX, GY = gX.groupoid, gY.groupoid
    pf = groupoidify_functor(f, gX, gY)
    unit = gY.unit.mor_map

    objs = [(x, z) for x in X.objects for z in GY.out_mors[f.obj_map[x]]]
    mors = []
    for s in objs:
        x, z = s
        for t in objs:
            x2, z2 = t
            for c in GX.hom(x, x2):
                lhs = GY.comp[(z2, pf.mor_map[c])]
                for g in Y.hom(GY.tgt[z], GY.tgt[z2]):
                    if lhs != GY.comp[(unit[g], z)]:
                        continue
                    if GX.is_identity(c) and Y.is_identity(g) and s == t:
                        continue
                    mors.append(((s, c, g), s, t))

    def comp(k2, k1):
        return (k1[0], GX.comp[(k2[1], k1[1])], Y.comp[(k2[2], k1[2])])

    def ident(o):
        return (o, GX.ident(o[0]), Y.ident(GY.tgt[o[1]]))

    oix = {o: i for i, o in enumerate(objs)}
    E = build_category(
        objs, mors, comp, identity_key=ident,
        obj_name=lambda o: f"({X.obj_names[o[0]]},{GY.mor_names[o[1]]})",
        mor_name=lambda k: f"({GX.mor_names[k[1]]},{Y.mor_names[k[2]]})@{oix[k[0]]}",
    )
    mkeys = [ident(o) for o in objs] + [k for k, _, _ in mors]
    mix = {k: i for i, k in enumerate(mkeys)}
    j_obj = [oix[(x, GY.ident(f.obj_map[x]))] for x in X.objects]
    j_mor = [mix[(objs[j_obj[X.src[m]]], gX.unit.mor_map[m], f.mor_map[m])] for m in X.morphisms]
    j = make_functor(X, E, j_obj, j_mor)
    p_obj = [GY.tgt[z] for _, z in objs]
    p_mor = [mkeys[i][2] for i in E.morphisms]
    p = make_functor(E, Y, p_obj, p_mor)
    return FactorizationResult(E, j, p, f, tuple(objs))


def expected_object_count(f: Functor, limits: Limits = DEFAULT_LIMITS) -> int:
    """Sum over ``x`` of (objects in the component of ``f(x)``) times ``|pi_1|``."""
    gY = groupoidification_finite(f.target, limits)
    total = 0
    for x in f.source.objects:
        y = f.obj_map[x]
        total += len(gY.partition.component_of(y)) * gY.group_of(y).order
    return total


def verify_factorization(r: FactorizationResult, limits: Limits = DEFAULT_LIMITS) -> Report:
    """Check ``p o j = f``, ``j`` a trivial cofibration and ``p`` a fibration."""
    rep = Report()
    composite = compose_functors(r.p, r.j)
    rep.entries["factors"] = Verdict.true() if composite == r.f else Verdict.false({"composite": composite})
    rep.entries["j_cofibration"] = Verdict.true() if is_cofibration(r.j) else Verdict.false()
    rep.entries["j_weak_equivalence"] = is_weak_1_equivalence(r.j, limits)
    rep.entries["p_fibration"] = is_fibration(r.p, limits)
    return rep
