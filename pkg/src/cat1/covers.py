"""Coverings of finite categories.

Covers of a path-connected base are built from coset tables: the fiber over
every object is the set of cosets of a finite-index subgroup of the
fundamental group, and a morphism moves cosets by its presentation word.
Lifts through coverings are built by transporting along a spanning tree
with the unique star lifts a covering provides.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    ActionNotFree,
    EndpointMismatch,
    IndexNotFinite,
    InternalDisagreement,
    NotPathConnected,
    SubgroupObstruction,
    UnknownResult,
    ValidationError,
)
from .fincat import (
    FinCat,
    Functor,
    IdKey,
    build_category,
    chain,
    compose_functors,
    fiber_with_inclusion,
    from_point,
    identity_functor,
    interval,
    make_functor,
    opposite,
    product,
)
from .homotopy import (
    SubgroupSpec,
    induced_pi1_map,
    is_path_connected,
    pi1_presentation,
    same_subgroup,
    spanning_tree,
    todd_coxeter,
)
from .homotopy.coset import subgroup_table
from .lifting import SquareProblem, generating_J1, generating_J2, solve_lift, star_bijections
from .verdict import DEFAULT_LIMITS, Limits, Verdict


# ----------------------------------------------------------------------
# set-valued functors and the Grothendieck construction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SetValuedFunctor:
    base: FinCat
    sizes: tuple  # object -> size of its set
    tables: tuple  # morphism -> tuple mapping elements of F(src) to F(tgt)

    def __post_init__(self):
        C = self.base
        if len(self.sizes) != C.n_obj or len(self.tables) != C.n_mor:
            raise ValidationError("set-valued functor has the wrong number of entries")
        for m in C.morphisms:
            t = self.tables[m]
            if len(t) != self.sizes[C.src[m]] or any(not 0 <= y < self.sizes[C.tgt[m]] for y in t):
                raise ValidationError(f"table of {C.mor_names[m]} has wrong shape")
        for o in C.objects:
            if tuple(self.tables[o]) != tuple(range(self.sizes[o])):
                raise ValidationError(f"identity of {C.obj_names[o]} is not the identity map")
        for (g, f), h in C.comp.items():
            tg, tf = self.tables[g], self.tables[f]
            if tuple(tg[x] for x in tf) != tuple(self.tables[h]):
                raise ValidationError(f"composition {C.mor_names[g]} o {C.mor_names[f]} not preserved")

    def apply(self, m: int, x: int) -> int:
        return self.tables[m][x]


@dataclass(frozen=True)
class Grothendieck:
    category: FinCat
    projection: Functor
    keys: tuple  # object id -> (base object, element)

    def object_of(self, c: int, x: int) -> int:
        return self.keys.index((c, x))


def grothendieck(F: SetValuedFunctor) -> Grothendieck:
    """Objects ``(c, x)``; one morphism ``(c, x) -> (d, F(f)(x))`` per ``f: c -> d``."""
    C = F.base
    objs = [(c, x) for c in C.objects for x in range(F.sizes[c])]
    mors = [((f, x), (C.src[f], x), (C.tgt[f], F.apply(f, x)))
            for f in C.nonidentities for x in range(F.sizes[C.src[f]])]

    def comp(k2, k1):
        h = C.comp[(k2[0], k1[0])]
        return IdKey((C.src[h], k1[1])) if C.is_identity(h) else (h, k1[1])

    E = build_category(objs, mors, comp,
                       obj_name=lambda o: f"{C.obj_names[o[0]]}.{o[1]}",
                       mor_name=lambda k: f"{C.mor_names[k[0]]}.{k[1]}", check=False)
    mor_map = [c for c, _ in objs] + [f for (f, _), _, _ in mors]
    p = Functor(E, C, tuple(c for c, _ in objs), tuple(mor_map))
    return Grothendieck(E, p, tuple(objs))


# ----------------------------------------------------------------------
# group actions and quotients
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a category by functors.

    ``mult[a][b]`` is the product ``a * b``; element 0 is the unit; the
    action is on the left: ``act(a * b) = act(a) o act(b)``.
    """

    category: FinCat
    mult: tuple
    obj_action: tuple  # element -> object permutation
    mor_action: tuple  # element -> morphism permutation

    def __post_init__(self):
        C = self.category
        n = len(self.mult)
        for a in range(n):
            make_functor(C, C, self.obj_action[a], self.mor_action[a])
        if tuple(self.mor_action[0]) != tuple(C.morphisms):
            raise ValidationError("unit does not act trivially")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                if tuple(self.mor_action[a][m] for m in self.mor_action[b]) != tuple(self.mor_action[ab]):
                    raise ValidationError("action is not compatible with multiplication")

    @property
    def order(self) -> int:
        return len(self.mult)

    def fixed_point(self):
        for a in range(1, self.order):
            for o in self.category.objects:
                if self.obj_action[a][o] == o:
                    return a, o
        return None


def trivial_action(C: FinCat) -> GroupAction:
    return GroupAction(C, ((0,),), (tuple(C.objects),), (tuple(C.morphisms),))


def quotient_by_free_action(C: FinCat, A: GroupAction) -> tuple:
    """``(C/G, projection)`` for an action that is free on objects."""
    fp = A.fixed_point()
    if fp is not None:
        raise ActionNotFree(f"element {fp[0]} fixes object {C.obj_names[fp[1]]}", element=fp[0], obj=fp[1])
    n = A.order
    obj_rep = [min(A.obj_action[a][o] for a in range(n)) for o in C.objects]
    mor_rep = [min(A.mor_action[a][m] for a in range(n)) for m in C.morphisms]
    obj_orbits = sorted(set(obj_rep))
    mor_orbits = sorted(set(mor_rep[m] for m in C.nonidentities))
    ids = set(C.objects)
    mor_orbits = [m for m in mor_orbits if m not in ids]

    def mover(x, y):
        """The unique element sending object ``x`` to ``y``."""
        for a in range(n):
            if A.obj_action[a][x] == y:
                return a
        raise AssertionError("objects in different orbits")

    def comp(k2, k1):
        phi, chi = k1, k2
        a = mover(C.src[chi], C.tgt[phi])
        h = C.comp[(A.mor_action[a][chi], phi)]
        r = mor_rep[h]
        return IdKey(obj_rep[C.src[h]]) if r in ids else r

    Q = build_category(obj_orbits, [(m, obj_rep[C.src[m]], obj_rep[C.tgt[m]]) for m in mor_orbits], comp,
                       obj_name=lambda o: C.obj_names[o], mor_name=lambda m: C.mor_names[m])
    oix = {o: i for i, o in enumerate(obj_orbits)}
    mix = {o: i for i, o in enumerate(obj_orbits)}
    mix.update({m: len(obj_orbits) + i for i, m in enumerate(mor_orbits)})
    proj = make_functor(C, Q, [oix[obj_rep[o]] for o in C.objects],
                        [mix[mor_rep[m]] if mor_rep[m] not in ids else oix[obj_rep[C.src[m]]] for m in C.morphisms])
    return Q, proj


# ----------------------------------------------------------------------
# covers from subgroups
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoverWithBasepoint:
    total: FinCat
    projection: Functor
    basepoint: int  # object of total
    base_basepoint: int
    cosets: Optional[object] = None  # CosetTable when built from a subgroup

    @property
    def base(self) -> FinCat:
        return self.projection.target

    def fiber_sizes(self) -> tuple:
        counts = [0] * self.base.n_obj
        for o in self.projection.obj_map:
            counts[o] += 1
        return tuple(counts)

    def report(self) -> dict:
        return {
            "objects": self.total.n_obj,
            "morphisms": self.total.n_mor,
            "fiber_sizes": list(self.fiber_sizes()),
            "connected": is_path_connected(self.total),
        }


def _require_connected(C: FinCat, what: str = "category"):
    if not is_path_connected(C):
        raise NotPathConnected(f"{what} is not path connected")


def _as_subgroup(P, H) -> SubgroupSpec:
    if isinstance(H, SubgroupSpec):
        return H
    return SubgroupSpec(P, tuple(tuple(w) for w in H))


def cover_from_subgroup(C: FinCat, basepoint: int, H, limits: Limits = DEFAULT_LIMITS) -> CoverWithBasepoint:
    """The cover whose fiber over each object is the coset set of ``H``."""
    _require_connected(C, "base")
    PC = pi1_presentation(C, basepoint)
    H = _as_subgroup(PC.presentation, H)
    v = todd_coxeter(PC.presentation, H, limits.coset_limit)
    if not v.is_true:
        raise IndexNotFinite(f"coset enumeration did not close: {v.payload}")
    T = v.payload
    n = T.index
    tables = []
    for m in C.morphisms:
        w = PC.mor_word(m)
        tables.append(tuple(T.act(t, w) for t in range(n)))
    F = SetValuedFunctor(C, (n,) * C.n_obj, tuple(tables))
    G = grothendieck(F)
    e0 = G.object_of(basepoint, 0)
    return CoverWithBasepoint(G.category, G.projection, e0, basepoint, T)


def universal_cover(C: FinCat, basepoint: int, limits: Limits = DEFAULT_LIMITS) -> CoverWithBasepoint:
    PC = pi1_presentation(C, basepoint)
    cov = cover_from_subgroup(C, basepoint, SubgroupSpec.trivial(PC.presentation), limits)
    E = cov.total
    if not is_path_connected(E):
        raise InternalDisagreement("universal cover is not connected")
    v = todd_coxeter(pi1_presentation(E, cov.basepoint).presentation, (), limits.coset_limit)
    if not (v.is_true and v.payload.index == 1):
        raise InternalDisagreement("universal cover total category is not simply connected")
    return cov


def image_subgroup(cov: CoverWithBasepoint, limits: Limits = DEFAULT_LIMITS) -> SubgroupSpec:
    """Generators of the total's fundamental group pushed into the base's."""
    PB = pi1_presentation(cov.base, cov.projection.obj_map[cov.basepoint])
    phi = induced_pi1_map(cov.projection, cov.basepoint, target_pres=PB)
    return SubgroupSpec(PB.presentation, phi.images)


def monodromy(p: Functor, basepoint: int) -> list:
    """Permutations of the fiber over ``basepoint``, one per generator loop."""
    B = p.target
    PB = pi1_presentation(B, basepoint)
    fiber = [e for e in p.source.objects if p.obj_map[e] == basepoint]
    lift = _StarLifts(p)
    perms = []
    for k in range(1, PB.presentation.n_gens + 1):
        steps = PB.loop_steps((k,))
        perm = []
        for e in fiber:
            for m, fwd in steps:
                e = lift.target(e, m) if fwd else lift.source(e, m)
            perm.append(fiber.index(e))
        perms.append(tuple(perm))
    return perms


def is_transitive(perms: Sequence[Sequence[int]], n: int) -> bool:
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def deck_action(cov: CoverWithBasepoint) -> GroupAction:
    """Deck transformations of a cover built from a normal subgroup."""
    T = cov.cosets
    if T is None:
        raise ValueError("deck action needs a cover built from a subgroup")
    n = T.index
    reps = T.representatives
    # normal iff left multiplication by coset representatives is well defined
    mult = tuple(tuple(T.act(a, reps[b]) for b in range(n)) for a in range(n))
    for a in range(n):
        for t in range(n):
            for x in range(1, T.n_gens + 1):
                if T.act(mult[a][t], (x,)) != mult[a][T.act(t, (x,))]:
                    raise ValueError("subgroup is not normal; deck group does not act on all sheets")
    E, C = cov.total, cov.base
    keys = [(c, t) for c in C.objects for t in range(n)]
    kix = {k: i for i, k in enumerate(keys)}
    obj_action, mor_action = [], []
    # morphism keys in the Grothendieck layout: identities, then (f, x) by f then x
    mix = {k: E.n_obj + i for i, k in enumerate((f, x) for f in C.nonidentities for x in range(n))}
    for a in range(n):
        obj_action.append(tuple(kix[(c, mult[a][t])] for c, t in keys))
        mm = [kix[(c, mult[a][t])] for c, t in keys]
        mm += [mix[(f, mult[a][x])] for f in C.nonidentities for x in range(n)]
        mor_action.append(tuple(mm))
    return GroupAction(E, mult, tuple(obj_action), tuple(mor_action))


# ----------------------------------------------------------------------
# lifting through coverings
# ----------------------------------------------------------------------

class _StarLifts:
    """Unique lifts of base morphisms at a given total object."""

    def __init__(self, p: Functor):
        E = p.source
        self.p = p
        self.out = {}
        self.inc = {}
        for m in E.morphisms:
            self.out.setdefault((E.src[m], p.mor_map[m]), []).append(m)
            self.inc.setdefault((E.tgt[m], p.mor_map[m]), []).append(m)

    def _one(self, table, key):
        found = table.get(key, [])
        if len(found) != 1:
            raise InternalDisagreement(f"expected a unique lift, found {len(found)}")
        return found[0]

    def starting_at(self, e: int, b: int) -> int:
        return self._one(self.out, (e, b))

    def ending_at(self, e: int, b: int) -> int:
        return self._one(self.inc, (e, b))

    def target(self, e: int, b: int) -> int:
        return self.p.source.tgt[self.starting_at(e, b)]

    def source(self, e: int, b: int) -> int:
        return self.p.source.src[self.ending_at(e, b)]


def _transport_lift(p: Functor, f: Functor, x0: int, e0: int):
    """Build the lift by tree transport; return ``(functor, None)`` or
    ``(None, bad_morphism)`` when a non-tree morphism does not close up."""
    X, E = f.source, p.source
    lift = _StarLifts(p)
    tree = spanning_tree(X, x0)
    g_obj = {x0: e0}
    for o in tree.objects[1:]:
        m, fwd = tree.parent[o]
        prev = tree.prev[o]
        g_obj[o] = lift.target(g_obj[prev], f.mor_map[m]) if fwd else lift.source(g_obj[prev], f.mor_map[m])
    mor_map = []
    for m in X.morphisms:
        gm = lift.starting_at(g_obj[X.src[m]], f.mor_map[m])
        if E.tgt[gm] != g_obj[X.tgt[m]]:
            return None, m
        mor_map.append(gm)
    obj_map = [g_obj[o] for o in X.objects]
    return make_functor(X, E, obj_map, mor_map), None


def lift_through_covering(cov: CoverWithBasepoint, f: Functor, x0: int, e0: Optional[int] = None,
                          limits: Limits = DEFAULT_LIMITS) -> Functor:
    """The unique ``g`` with ``p o g = f`` and ``g(x0) = e0``."""
    p = cov.projection
    e0 = cov.basepoint if e0 is None else e0
    X = f.source
    _require_connected(X, "source")
    if not f.target.same_structure(p.target):
        raise EndpointMismatch("functor does not land in the base of the cover")
    if p.obj_map[e0] != f.obj_map[x0]:
        raise EndpointMismatch("basepoints do not lie over each other")
    if star_bijections(p) is not None:
        raise ValidationError("projection is not a covering")
    b0 = f.obj_map[x0]
    PB = pi1_presentation(f.target, b0)
    phi_p = induced_pi1_map(p, e0, target_pres=PB)
    phi_f = induced_pi1_map(f, x0, target_pres=PB)
    H = SubgroupSpec(PB.presentation, phi_p.images)
    v = subgroup_table(H, limits.coset_limit)
    if not v.is_true:
        raise UnknownResult(f"image subgroup index not determined: {v.payload}")
    for k, w in enumerate(phi_f.images):
        if not v.payload.contains(w):
            raise SubgroupObstruction(
                f"loop through {X.mor_names[phi_f.source.generators[k]]} maps outside the cover's subgroup",
                word=w,
            )
    g, bad = _transport_lift(p, f, x0, e0)
    if g is None:
        raise InternalDisagreement(f"subgroup test passed but {X.mor_names[bad]} does not lift")
    return g


def lift_is_unique(cov: CoverWithBasepoint, f: Functor, x0: int, e0: int, g: Functor,
                   limits: Limits = DEFAULT_LIMITS) -> bool:
    """Re-check by exhaustive search that ``g`` is the only lift fixing ``x0``."""
    X = f.source
    sq = SquareProblem(from_point(X, x0), cov.projection, from_point(cov.total, e0), f)
    v = solve_lift(sq, unique=True, limits=limits)
    return v.is_true and v.payload == g


# ----------------------------------------------------------------------
# classification round trips
# ----------------------------------------------------------------------

def covers_isomorphic(a: CoverWithBasepoint, b: CoverWithBasepoint, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Basepoint-preserving isomorphism over the base, found by lifting both ways."""
    if not a.base.same_structure(b.base) or a.base_basepoint != b.base_basepoint:
        return Verdict.false({"reason": "different bases"})
    try:
        u = lift_through_covering(b, a.projection, a.basepoint, b.basepoint, limits)
        w = lift_through_covering(a, b.projection, b.basepoint, a.basepoint, limits)
    except SubgroupObstruction as exc:
        return Verdict.false({"reason": "no map over the base", "word": exc.word})
    if not (compose_functors(w, u) == identity_functor(a.total)
            and compose_functors(u, w) == identity_functor(b.total)):
        return Verdict.false({"reason": "lifts are not mutually inverse"})
    return Verdict.true({"forward": u, "backward": w})


def cover_roundtrip(cov: CoverWithBasepoint, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Rebuild a connected cover from its subgroup and compare."""
    _require_connected(cov.total, "cover")
    H = image_subgroup(cov, limits)
    rebuilt = cover_from_subgroup(cov.base, cov.base_basepoint, H, limits)
    v = covers_isomorphic(rebuilt, cov, limits)
    if v.is_true:
        return Verdict.true({"subgroup": H.words, **v.payload})
    return v


def classification_roundtrip(C: FinCat, basepoint: int, H, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Subgroup -> cover -> subgroup is the identity, and so is cover -> subgroup -> cover."""
    PC = pi1_presentation(C, basepoint)
    H = _as_subgroup(PC.presentation, H)
    cov = cover_from_subgroup(C, basepoint, H, limits)
    K = image_subgroup(cov, limits)
    same = same_subgroup(H, K, limits.coset_limit)
    if not same.is_true:
        return same if same.is_unknown else Verdict.false({"reason": "image subgroup differs", **same.payload})
    back = cover_roundtrip(cov, limits)
    if not back.is_true:
        return back
    return Verdict.true({"index": same.payload["index"], "objects": cov.total.n_obj, "image": K.words})


# ----------------------------------------------------------------------
# fiber transport
# ----------------------------------------------------------------------

def _arrow(B: FinCat, f: int, op: bool) -> Functor:
    """``[1] -> B`` (or ``[1]^op -> B``) picking ``f``."""
    c1 = chain(1)
    D = opposite(c1) if op else c1
    objs = [B.tgt[f], B.src[f]] if op else [B.src[f], B.tgt[f]]
    return make_functor(D, B, objs, [B.ident(objs[0]), B.ident(objs[1]), f])


def _triangle(B: FinCat, f: int, b_far: int, op: bool) -> Functor:
    """``[2] -> B`` sending 01 and 02 to ``f`` and 12 to an identity."""
    c2 = chain(2)
    D = opposite(c2) if op else c2
    x, y = (B.tgt[f], B.src[f]) if op else (B.src[f], B.tgt[f])
    objs = [x, y, y]
    ids = [B.ident(o) for o in objs]
    m = {D.mor_index("01"): f, D.mor_index("02"): f, D.mor_index("12"): B.ident(y)}
    return make_functor(D, B, objs, ids + [m[k] for k in D.nonidentities])


def _first_lift(sq: SquareProblem, limits: Limits) -> Functor:
    v = solve_lift(sq, False, limits)
    if v.is_unknown:
        raise UnknownResult(v.note)
    if v.is_false:
        raise InternalDisagreement("fibration failed to lift a transport square")
    return v.payload


def fiber_transport(p: Functor, f: int, limits: Limits = DEFAULT_LIMITS) -> tuple:
    """``(f_lower, f_upper)`` between the fibers over the ends of ``f``."""
    E, B = p.source, p.target
    b, b2 = B.src[f], B.tgt[f]
    Fb, inc_b = fiber_with_inclusion(p, b)
    Fb2, inc_b2 = fiber_with_inclusion(p, b2)
    j1 = dict(generating_J1().members)
    j2 = dict(generating_J2().members)
    c1 = chain(1)

    def point_at(e):
        return from_point(E, e)

    # lower: e over b goes along a chosen lift of f starting at e
    arrow = _arrow(B, f, False)
    chosen = {}
    for e in Fb.objects:
        h = _first_lift(SquareProblem(j1["*->[1]"], p, point_at(inc_b.obj_map[e]), arrow), limits)
        chosen[e] = h.mor_map[c1.mor_index("01")]
    tri = _triangle(B, f, b2, False)
    I2 = j2["I2->[2]"].source
    lower_obj = [inc_b2.obj_map.index(E.tgt[chosen[e]]) for e in Fb.objects]
    lower_mor = [Fb2.ident(o) for o in lower_obj]
    for u in Fb.nonidentities:
        s, t = Fb.src[u], Fb.tgt[u]
        ue = inc_b.mor_map[u]
        span = make_functor(I2, E, [inc_b.obj_map[s], E.tgt[chosen[s]], E.tgt[chosen[t]]],
                            [inc_b.obj_map[s], E.tgt[chosen[s]], E.tgt[chosen[t]],
                             chosen[s], E.comp[(chosen[t], ue)]])
        h = _first_lift(SquareProblem(j2["I2->[2]"], p, span, tri), limits)
        v = h.mor_map[chain(2).mor_index("12")]
        lower_mor.append(inc_b2.mor_map.index(v))
    f_lower = make_functor(Fb, Fb2, lower_obj, lower_mor)

    # upper: e' over b2 pulls back along a chosen lift of f ending at e'
    arrow_op = _arrow(B, f, True)
    c1op = opposite(c1)
    chosen_up = {}
    for e in Fb2.objects:
        h = _first_lift(SquareProblem(j1["*->[1]op"], p, point_at(inc_b2.obj_map[e]), arrow_op), limits)
        chosen_up[e] = h.mor_map[c1op.mor_index("01")]
    tri_op = _triangle(B, f, b, True)
    I2op = j2["I2op->[2]op"].source
    upper_obj = [inc_b.obj_map.index(E.src[chosen_up[e]]) for e in Fb2.objects]
    upper_mor = [Fb.ident(o) for o in upper_obj]
    for u in Fb2.nonidentities:
        s, t = Fb2.src[u], Fb2.tgt[u]
        ue = inc_b2.mor_map[u]
        w_s, w_t = chosen_up[s], chosen_up[t]
        cospan = make_functor(I2op, E, [inc_b2.obj_map[t], E.src[w_t], E.src[w_s]],
                              [inc_b2.obj_map[t], E.src[w_t], E.src[w_s], w_t, E.comp[(ue, w_s)]])
        h = _first_lift(SquareProblem(j2["I2op->[2]op"], p, cospan, tri_op), limits)
        v = h.mor_map[opposite(chain(2)).mor_index("12")]
        upper_mor.append(inc_b.mor_map.index(v))
    f_upper = make_functor(Fb2, Fb, upper_obj, upper_mor)
    return f_lower, f_upper


def natural_isomorphism(F: Functor, G: Functor) -> Optional[dict]:
    """A natural isomorphism ``F => G`` as ``{object: component}``, or ``None``."""
    X, Y = F.source, F.target
    from .homotopy import inverse_of

    cands = []
    for x in X.objects:
        cands.append([m for m in Y.hom(F.obj_map[x], G.obj_map[x]) if inverse_of(Y, m) is not None])
    alpha = [None] * X.n_obj

    def ok(upto):
        for m in X.nonidentities:
            s, t = X.src[m], X.tgt[m]
            if s <= upto and t <= upto:
                if Y.comp[(G.mor_map[m], alpha[s])] != Y.comp[(alpha[t], F.mor_map[m])]:
                    return False
        return True

    def search(x):
        if x == X.n_obj:
            return True
        for c in cands[x]:
            alpha[x] = c
            if ok(x) and search(x + 1):
                return True
        alpha[x] = None
        return False

    return {x: alpha[x] for x in X.objects} if search(0) else None


# ----------------------------------------------------------------------
# strong homotopy lifting
# ----------------------------------------------------------------------

def grid_index(n: int, m: int, r: int, s: int) -> int:
    return r * (m + 1) + s


def check_strong_homotopy_lifting(p: Functor, H: Functor, n: int, m: int, e0: int,
                                  limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Lift ``H: I_n x I_m -> B`` through the covering ``p`` with corner ``e0``.

    True carries the lift and whether endpoint constancy was preserved.
    """
    grid = product(interval(n), interval(m))
    if not grid.same_structure(H.source):
        raise EndpointMismatch("homotopy is not defined on the requested grid")
    corner = grid_index(n, m, 0, 0)
    if p.obj_map[e0] != H.obj_map[corner]:
        raise EndpointMismatch("corner does not lie over the homotopy's corner")
    L, bad = _transport_lift(p, H, corner, e0)
    if L is None:
        return Verdict.false({"reason": "grid lift does not close", "morphism": bad})
    if compose_functors(p, L) != H:
        return Verdict.false({"reason": "lift does not cover the homotopy"})
    sq = SquareProblem(from_point(grid, corner), p, from_point(p.source, e0), H)
    uniq = solve_lift(sq, unique=True, limits=limits)
    if not (uniq.is_true and uniq.payload == L):
        return Verdict.false({"reason": "lift is not unique", "search": uniq.status})

    def column_constant(F, r):
        col = [grid_index(n, m, r, s) for s in range(m + 1)]
        objs = {F.obj_map[o] for o in col}
        colset = set(col)
        mors = [k for k in grid.nonidentities if grid.src[k] in colset and grid.tgt[k] in colset]
        return len(objs) == 1 and all(F.target.is_identity(F.mor_map[k]) for k in mors)

    base_const = column_constant(H, 0) and column_constant(H, n)
    lift_const = column_constant(L, 0) and column_constant(L, n)
    return Verdict.true({"lift": L, "endpoint_constant": base_const,
                         "lift_endpoint_constant": lift_const if base_const else None})


def action_from_automorphisms(C: FinCat, autos: Sequence[Functor], max_order: int = 10_000) -> GroupAction:
    """The group generated by some automorphisms of ``C``, acting tautologically."""
    ident = (tuple(C.objects), tuple(C.morphisms))
    gens = []
    for F in autos:
        if not (F.source.same_structure(C) and F.target.same_structure(C)):
            raise ValidationError("automorphism does not act on the given category")
        if len(set(F.mor_map)) != C.n_mor:
            raise ValidationError("functor is not an automorphism")
        gens.append((tuple(F.obj_map), tuple(F.mor_map)))
    elems = [ident]
    index = {ident: 0}
    k = 0
    while k < len(elems):
        o, m = elems[k]
        for go, gm in gens:
            new = (tuple(go[x] for x in o), tuple(gm[x] for x in m))
            if new not in index:
                index[new] = len(elems)
                elems.append(new)
                if len(elems) > max_order:
                    raise ValidationError("generated group exceeds the order cap")
        k += 1
    mult = tuple(tuple(index[(tuple(a[0][x] for x in b[0]), tuple(a[1][x] for x in b[1]))] for b in elems)
                 for a in elems)
    return GroupAction(C, mult, tuple(e[0] for e in elems), tuple(e[1] for e in elems))
