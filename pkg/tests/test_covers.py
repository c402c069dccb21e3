import pytest

from cat1.covers import (
    CoverWithBasepoint,
    GroupAction,
    SetValuedFunctor,
    action_from_automorphisms,
    check_strong_homotopy_lifting,
    classification_roundtrip,
    cover_from_subgroup,
    cover_roundtrip,
    covers_isomorphic,
    deck_action,
    fiber_transport,
    grid_index,
    grothendieck,
    image_subgroup,
    is_transitive,
    lift_is_unique,
    lift_through_covering,
    monodromy,
    natural_isomorphism,
    quotient_by_free_action,
    trivial_action,
    universal_cover,
)
from cat1.errors import (
    ActionNotFree,
    EndpointMismatch,
    IndexNotFinite,
    NotPathConnected,
    SubgroupObstruction,
    ValidationError,
)
from cat1.factorize import mapping_category
from cat1.fincat import (
    chain,
    circle,
    codiscrete,
    compose_functors,
    cone_circle,
    cyclic_group,
    discrete,
    enumerate_functors,
    find_isomorphism,
    from_point,
    identity_functor,
    interval,
    is_identity_functor,
    point,
    product,
    projection,
    symmetric_group,
)
from cat1.homotopy import (
    SubgroupSpec,
    finite_group,
    is_path_connected,
    pi1_presentation,
    same_subgroup,
    todd_coxeter,
)
from cat1.lifting import is_covering, is_fibration


def double_cover_by_hand():
    """S1 with a two-element set: f acts trivially and g swaps."""
    S = circle()
    g = S.mor_index("g")
    tables = [(0, 1)] * S.n_mor
    tables[g] = (1, 0)
    G = grothendieck(SetValuedFunctor(S, (2, 2), tuple(tables)))
    return CoverWithBasepoint(G.category, G.projection, G.object_of(0, 0), 0)


# ---------------------------------------------------------------- Grothendieck construction

def test_grothendieck_constant_singleton():
    C = cone_circle()
    F = SetValuedFunctor(C, (1,) * C.n_obj, tuple((0,) for _ in C.morphisms))
    G = grothendieck(F)
    assert G.category.same_structure(C) or find_isomorphism(G.category, C) is not None
    assert is_identity_functor(G.projection) or G.projection.obj_map == tuple(C.objects)


def test_grothendieck_point_three_set():
    G = grothendieck(SetValuedFunctor(point(), (3,), ((0, 1, 2),)))
    assert find_isomorphism(G.category, discrete(3)) is not None


def test_grothendieck_circle_swap():
    cov = double_cover_by_hand()
    assert cov.total.n_obj == 4
    assert is_path_connected(cov.total)
    assert is_covering(cov.projection)


def test_set_valued_functor_validation():
    S = circle()
    with pytest.raises(ValidationError):
        SetValuedFunctor(S, (2, 2), ((0, 1),) * 3)
    bad = [(0, 1)] * S.n_mor
    bad[0] = (1, 0)
    with pytest.raises(ValidationError):
        SetValuedFunctor(S, (2, 2), tuple(bad))
    Z2 = cyclic_group(2)
    t = Z2.nonidentities[0]
    tables = [None] * Z2.n_mor
    tables[0] = (0, 1, 2)
    tables[t] = (1, 2, 0)  # t o t must be the identity
    with pytest.raises(ValidationError):
        SetValuedFunctor(Z2, (3,), tuple(tables))


# ---------------------------------------------------------------- covers from subgroups

def test_whole_group_cover_is_base():
    C = circle()
    cov = cover_from_subgroup(C, 0, [(1,)])
    assert cov.total.n_obj == C.n_obj
    assert find_isomorphism(cov.total, C) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_circle_power_subgroups(n):
    cov = cover_from_subgroup(circle(), 0, [(1,) * n])
    assert cov.total.n_obj == 2 * n
    assert is_path_connected(cov.total)
    assert is_covering(cov.projection)
    assert cov.fiber_sizes() == (n, n)
    expected = SubgroupSpec(pi1_presentation(circle(), 0).presentation, ((1,) * n,))
    assert same_subgroup(image_subgroup(cov), expected).is_true


def test_circle_trivial_subgroup_is_infinite_index():
    with pytest.raises(IndexNotFinite):
        cover_from_subgroup(circle(), 0, [])
    with pytest.raises(IndexNotFinite):
        universal_cover(circle(), 0)


def test_disconnected_base_rejected():
    with pytest.raises(NotPathConnected):
        cover_from_subgroup(discrete(2), 0, [])


SUBGROUP_CASES = [
    (circle(), [(1, 1, 1)]),
    (cyclic_group(4), [(1, 1)]),
    (symmetric_group(3), []),
    (cyclic_group(3), []),
    (product(circle(), cyclic_group(2)), [(4, 4)]),
    (cone_circle(), []),
]


@pytest.mark.parametrize("C,H", SUBGROUP_CASES)
def test_fiber_cardinality_is_index(C, H):
    cov = cover_from_subgroup(C, 0, H)
    P = pi1_presentation(C, 0).presentation
    index = todd_coxeter(P, H).payload.index
    assert set(cov.fiber_sizes()) == {index}
    assert is_covering(cov.projection)
    assert is_path_connected(cov.total)


def test_report_keys():
    r = cover_from_subgroup(circle(), 0, [(1, 1)]).report()
    assert r == {"objects": 4, "morphisms": 8, "fiber_sizes": [2, 2], "connected": True}


# ---------------------------------------------------------------- universal covers

def test_universal_cover_z3():
    cov = universal_cover(cyclic_group(3), 0)
    assert cov.total.n_obj == 3
    assert find_isomorphism(cov.total, codiscrete(3)) is not None


def test_universal_cover_chain_is_itself():
    cov = universal_cover(chain(2), 0)
    assert find_isomorphism(cov.total, chain(2)) is not None


def test_universal_cover_s3():
    cov = universal_cover(symmetric_group(3), 0)
    assert find_isomorphism(cov.total, codiscrete(6)) is not None


@pytest.mark.parametrize("C", [cyclic_group(2), cyclic_group(3), symmetric_group(3), chain(2),
                               product(chain(1), cyclic_group(2))])
def test_universal_cover_simply_connected(C):
    cov = universal_cover(C, 0)
    assert is_path_connected(cov.total)
    G = finite_group(pi1_presentation(cov.total, cov.basepoint).presentation)
    assert G.order == 1
    v = same_subgroup(image_subgroup(cov), SubgroupSpec.trivial(pi1_presentation(C, 0).presentation))
    assert v.is_true


# ---------------------------------------------------------------- quotients

def test_trivial_quotient():
    C = cone_circle()
    Q, p = quotient_by_free_action(C, trivial_action(C))
    assert find_isomorphism(Q, C) is not None


def test_sheet_swap_quotient_recovers_circle():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    A = deck_action(cov)
    assert A.order == 2
    Q, p = quotient_by_free_action(cov.total, A)
    assert find_isomorphism(Q, circle()) is not None
    assert is_covering(p)


@pytest.mark.parametrize("C,H", [(circle(), [(1, 1, 1)]), (cyclic_group(4), [(1, 1)]),
                                 (symmetric_group(3), []), (cyclic_group(3), [])])
def test_deck_quotient_recovers_base(C, H):
    cov = cover_from_subgroup(C, 0, H)
    Q, p = quotient_by_free_action(cov.total, deck_action(cov))
    assert find_isomorphism(Q, C) is not None
    assert is_covering(p)


def test_action_on_point_not_free():
    P = point()
    assert action_from_automorphisms(P, [identity_functor(P)]).order == 1
    Z2_on_point = GroupAction(P, ((0, 1), (1, 0)), ((0,), (0,)), ((0,), (0,)))
    with pytest.raises(ActionNotFree) as info:
        quotient_by_free_action(P, Z2_on_point)
    assert info.value.element == 1 and info.value.obj == 0


def test_automorphism_action_swap_of_two_points():
    D = discrete(2)
    swap = [F for F in enumerate_functors(D, D) if F.obj_map == (1, 0)][0]
    A = action_from_automorphisms(D, [swap])
    assert A.order == 2
    Q, p = quotient_by_free_action(D, A)
    assert find_isomorphism(Q, point()) is not None


def test_deck_action_needs_normal_subgroup():
    S3 = symmetric_group(3)
    P = pi1_presentation(S3, 0).presentation
    G = finite_group(P)
    # a word for an element of order 2 generates a non-normal subgroup
    for a in range(1, G.order):
        if G.mul(a, a) == 0:
            H = [G.word(a)]
            break
    cov = cover_from_subgroup(S3, 0, H)
    assert cov.total.n_obj == 3
    with pytest.raises(ValueError):
        deck_action(cov)


# ---------------------------------------------------------------- monodromy

def monodromy_cases():
    yield cover_from_subgroup(circle(), 0, [(1, 1)]).projection
    yield cover_from_subgroup(cyclic_group(4), 0, [(1, 1)]).projection
    yield projection(circle(), discrete(2), 0)
    yield projection(cyclic_group(3), discrete(3), 0)
    S = circle()
    G = grothendieck(SetValuedFunctor(S, (2, 2), tuple([(0, 1)] * S.n_mor)))
    yield G.projection
    yield double_cover_by_hand().projection
    yield universal_cover(symmetric_group(3), 0).projection


@pytest.mark.parametrize("p", list(monodromy_cases()))
def test_monodromy_transitive_iff_connected(p):
    perms = monodromy(p, 0)
    n = sum(1 for e in p.source.objects if p.obj_map[e] == 0)
    assert is_transitive(perms, n) == is_path_connected(p.source)


def test_monodromy_double_cover():
    assert monodromy(cover_from_subgroup(circle(), 0, [(1, 1)]).projection, 0) == [(1, 0)]


# ---------------------------------------------------------------- lifting through coverings

def test_lift_of_projection_is_identity():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    g = lift_through_covering(cov, cov.projection, cov.basepoint, cov.basepoint)
    assert is_identity_functor(g)


@pytest.mark.parametrize("C,H", SUBGROUP_CASES[:4])
def test_chain_always_lifts(C, H):
    cov = cover_from_subgroup(C, 0, H)
    for f in enumerate_functors(chain(1), C):
        for e0 in [e for e in cov.total.objects if cov.projection.obj_map[e] == f.obj_map[0]]:
            g = lift_through_covering(cov, f, 0, e0)
            assert compose_functors(cov.projection, g) == f
            assert g.obj_map[0] == e0
            assert lift_is_unique(cov, f, 0, e0, g)


def test_identity_of_circle_does_not_lift_to_double_cover():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    with pytest.raises(SubgroupObstruction) as info:
        lift_through_covering(cov, identity_functor(circle()), 0)
    assert info.value.word == (1,)


def test_lift_errors():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    with pytest.raises(NotPathConnected):
        lift_through_covering(cov, projection(circle(), discrete(2), 0), 0)
    with pytest.raises(EndpointMismatch):
        lift_through_covering(cov, from_point(circle(), 1), 0, cov.basepoint)


def test_maps_into_cover_lift():
    # 4Z sits inside 2Z but not the other way round
    S = circle()
    c2 = cover_from_subgroup(S, 0, [(1, 1)])
    c4 = cover_from_subgroup(S, 0, [(1,) * 4])
    with pytest.raises(SubgroupObstruction):
        lift_through_covering(c4, c2.projection, c2.basepoint)
    g = lift_through_covering(c2, c4.projection, c4.basepoint)
    assert compose_functors(c2.projection, g) == c4.projection
    assert lift_is_unique(c2, c4.projection, c4.basepoint, c2.basepoint, g)


# ---------------------------------------------------------------- classification

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_circle_roundtrip(n):
    v = classification_roundtrip(circle(), 0, [(1,) * n])
    assert v.is_true and v.payload["objects"] == 2 * n


def test_roundtrip_whole_group():
    v = classification_roundtrip(cyclic_group(3), 0, [(1,)])
    assert v.is_true and v.payload["index"] == 1


def test_hand_built_cover_roundtrip():
    cov = double_cover_by_hand()
    v = cover_roundtrip(cov)
    assert v.is_true
    f, b = v.payload["forward"], v.payload["backward"]
    assert is_identity_functor(compose_functors(b, f))


def test_non_isomorphic_covers():
    S = circle()
    v = covers_isomorphic(cover_from_subgroup(S, 0, [(1, 1)]), cover_from_subgroup(S, 0, [(1, 1, 1)]))
    assert v.is_false


# ---------------------------------------------------------------- fiber transport

def test_transport_along_identity():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    low, up = fiber_transport(cov.projection, 0)
    assert is_identity_functor(low) and is_identity_functor(up)


@pytest.mark.parametrize("C,H", [(circle(), [(1, 1)]), (circle(), [(1, 1, 1)]), (cyclic_group(4), [(1, 1)])])
def test_transport_in_covering_is_inverse_pair(C, H):
    cov = cover_from_subgroup(C, 0, H)
    for f in C.nonidentities:
        low, up = fiber_transport(cov.projection, f)
        assert is_identity_functor(compose_functors(up, low))
        assert is_identity_functor(compose_functors(low, up))


@pytest.mark.parametrize("X", [point(), discrete(2), chain(1), codiscrete(2)])
def test_transport_in_mapping_category_over_interval(X):
    Y = chain(1)
    for f in enumerate_functors(X, Y)[:4]:
        r = mapping_category(f)
        p = r.p
        assert is_fibration(p).is_true
        arrow = Y.mor_index("01")
        low, up = fiber_transport(p, arrow)
        comp = compose_functors(low, up)
        assert natural_isomorphism(comp, identity_functor(comp.source)) is not None


def test_natural_isomorphism_none():
    D = discrete(2)
    F = from_point(D, 0)
    G = from_point(D, 1)
    assert natural_isomorphism(F, G) is None
    assert natural_isomorphism(F, F) == {0: 0}


# ---------------------------------------------------------------- homotopy lifting

def squares_in(B, n=1, m=1):
    return enumerate_functors(product(interval(n), interval(m)), B)


def test_constant_homotopy_lifts_constantly():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    grid = product(interval(1), interval(1))
    H = [F for F in squares_in(circle()) if set(F.obj_map) == {0} and
         all(circle().is_identity(m) for m in F.mor_map)][0]
    v = check_strong_homotopy_lifting(cov.projection, H, 1, 1, cov.basepoint)
    L = v.payload["lift"]
    assert len(set(L.obj_map)) == 1
    assert v.payload["endpoint_constant"] and v.payload["lift_endpoint_constant"]
    assert grid.n_obj == 4


def test_all_unit_squares_lift_uniquely():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    p = cov.projection
    count = 0
    for H in squares_in(circle()):
        corner = H.obj_map[grid_index(1, 1, 0, 0)]
        for e0 in [e for e in cov.total.objects if p.obj_map[e] == corner]:
            v = check_strong_homotopy_lifting(p, H, 1, 1, e0)
            assert v.is_true
            if v.payload["endpoint_constant"]:
                assert v.payload["lift_endpoint_constant"]
            count += 1
    assert count > 0


def test_larger_grid():
    cov = cover_from_subgroup(circle(), 0, [(1, 1, 1)])
    p = cov.projection
    for H in squares_in(circle(), 2, 1)[:30]:
        corner = H.obj_map[grid_index(2, 1, 0, 0)]
        e0 = [e for e in cov.total.objects if p.obj_map[e] == corner][0]
        assert check_strong_homotopy_lifting(p, H, 2, 1, e0).is_true


def test_homotopy_lifting_errors():
    cov = cover_from_subgroup(circle(), 0, [(1, 1)])
    H = squares_in(circle())[0]
    with pytest.raises(EndpointMismatch):
        check_strong_homotopy_lifting(cov.projection, H, 2, 1, cov.basepoint)
    wrong = [e for e in cov.total.objects if cov.projection.obj_map[e] != H.obj_map[0]][0]
    with pytest.raises(EndpointMismatch):
        check_strong_homotopy_lifting(cov.projection, H, 1, 1, wrong)
