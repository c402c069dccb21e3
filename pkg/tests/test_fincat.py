import itertools

import pytest
from hypothesis import given

from cat1.errors import (
    BadIdentity,
    BudgetExceeded,
    DanglingEndpoint,
    EndpointMismatch,
    InvalidFunctor,
    MissingComposite,
    NonAssociative,
    ValidationError,
)
from cat1.fincat import (
    RawCategory,
    chain,
    check_category,
    check_functor,
    circle,
    codiscrete,
    comma_over,
    comma_under,
    compose_functors,
    cone_circle,
    coproduct,
    coproduct_inclusion,
    cyclic_group,
    discrete,
    empty,
    enumerate_functors,
    fiber_category,
    find_isomorphism,
    from_point,
    identity_functor,
    interval,
    is_identity_functor,
    iter_functors,
    make_functor,
    opposite,
    point,
    product,
    projection,
    standard,
    symmetric_group,
    to_point,
    validate_category,
)
from cat1.homotopy import is_groupoid, pi0

from .strategies import preorder, small_category, structured_category


def brute_force_functors(A, B):
    """Independent oracle: filter the full product of object and morphism maps."""
    out = []
    nonids = list(A.nonidentities)
    for objs in itertools.product(range(B.n_obj), repeat=A.n_obj):
        for mors in itertools.product(range(B.n_mor), repeat=len(nonids)):
            mor_map = list(objs) + list(mors)
            try:
                check_functor(A, B, objs, mor_map)
            except ValidationError:
                continue
            out.append((tuple(objs), tuple(mor_map)))
    return out


def raw_chain2(with_composite=True):
    comp = [("b", "a", "c")] if with_composite else []
    return RawCategory(
        objects=["0", "1", "2"],
        morphisms=[("i0", "0", "0"), ("i1", "1", "1"), ("i2", "2", "2"),
                   ("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")],
        identities={"0": "i0", "1": "i1", "2": "i2"},
        compose=comp,
    )


class TestValidation:
    def test_chain2_valid(self):
        C = validate_category(raw_chain2())
        assert C.n_obj == 3 and C.n_mor == 6

    def test_missing_composite(self):
        with pytest.raises(MissingComposite):
            validate_category(raw_chain2(with_composite=False))

    def test_cone_circle_valid_with_initial_zero(self):
        C = cone_circle()
        assert C.n_obj == 3
        assert all(len(C.hom(0, b)) == 1 for b in C.objects)
        g, h, k = (C.mor_index(n) for n in ("g", "h", "k"))
        assert C.compose(h, g) == C.compose(k, g)

    def test_dangling_endpoint(self):
        raw = RawCategory(["a"], [("i", "a", "a"), ("f", "a", "b")], {"a": "i"}, [])
        with pytest.raises(DanglingEndpoint):
            validate_category(raw)

    def test_bad_identity(self):
        raw = RawCategory(["a", "b"], [("i", "a", "a"), ("j", "a", "b")], {"a": "i", "b": "j"}, [])
        with pytest.raises(BadIdentity):
            validate_category(raw)

    def test_non_associative(self):
        # monoid {1, x, y} with x*x = y, x*y = x, y*x = y: (x x) x = y x = y but x (x x) = x y = x
        src = tgt = (0, 0, 0)
        comp = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2,
                (1, 1): 2, (1, 2): 1, (2, 1): 2, (2, 2): 2}
        with pytest.raises(NonAssociative):
            check_category(1, src, tgt, comp)

    def test_incomplete_table(self):
        with pytest.raises(MissingComposite):
            check_category(1, (0, 0), (0, 0), {(0, 0): 0, (0, 1): 1, (1, 0): 1})

    @given(small_category())
    def test_every_corpus_category_passes_axioms(self, C):
        check_category(C.n_obj, C.src, C.tgt, C.comp)

    @given(structured_category())
    def test_structured_categories_pass_axioms(self, C):
        check_category(C.n_obj, C.src, C.tgt, C.comp)


class TestStandard:
    def test_circle(self):
        C = standard("S1")
        assert C.n_obj == 2 and C.n_mor == 4
        assert len(C.hom(0, 1)) == 2

    def test_interval_zero_is_point(self):
        assert standard("Interval", 0).same_structure(point())

    def test_sinf(self):
        C = standard("SInf")
        assert C.n_obj == 2 and C.n_mor == 4 and is_groupoid(C)

    def test_interval_parity(self):
        I4 = interval(4)
        for m in I4.nonidentities:
            s = I4.src[m]
            assert s % 2 == 0 and abs(I4.tgt[m] - s) == 1

    def test_interval_three(self):
        I3 = interval(3)
        assert sorted((I3.src[m], I3.tgt[m]) for m in I3.nonidentities) == [(0, 1), (2, 1), (2, 3)]

    def test_chain_needs_length(self):
        with pytest.raises(ValueError):
            standard("Chain")

    @pytest.mark.parametrize("n", range(6))
    def test_chain_counts(self, n):
        C = chain(n)
        assert C.n_mor == (n + 1) * (n + 2) // 2


class TestConstructions:
    def test_opposite_point(self):
        assert opposite(point()).same_structure(point())

    @given(structured_category())
    def test_opposite_involution(self, C):
        assert opposite(opposite(C)) == C

    def test_opposite_cone_terminal(self):
        D = opposite(cone_circle())
        assert all(len(D.hom(b, 0)) == 1 for b in D.objects)

    def test_product_point_unit(self):
        D = cone_circle()
        assert find_isomorphism(product(point(), D), D) is not None

    def test_product_intervals(self):
        P = product(interval(1), interval(1))
        assert P.n_obj == 4 and P.n_mor == 9

    def test_product_spheres(self):
        P = product(discrete(2), discrete(2))
        assert P.n_obj == 4 and P.n_mor == 4

    def test_coproduct_points(self):
        assert find_isomorphism(coproduct(point(), point()), discrete(2)) is not None

    def test_coproduct_empty_unit(self):
        C = cone_circle()
        assert find_isomorphism(coproduct(empty(), C), C) is not None

    @given(small_category(), small_category())
    def test_coproduct_components_add(self, C, D):
        assert pi0(coproduct(C, D)).n_classes == pi0(C).n_classes + pi0(D).n_classes

    def test_product_universal_count(self):
        X, C, D = chain(1), circle(), cyclic_group(2)
        lhs = len(enumerate_functors(X, product(C, D)))
        assert lhs == len(enumerate_functors(X, C)) * len(enumerate_functors(X, D))

    @given(small_category(), small_category())
    def test_coproduct_inclusions_are_functors(self, C, D):
        for side in (0, 1):
            coproduct_inclusion(C, D, side)

    @given(small_category(), small_category())
    def test_projections_are_functors(self, C, D):
        for side in (0, 1):
            projection(C, D, side)


class TestFunctors:
    def test_from_point_count(self):
        C = cone_circle()
        assert len(enumerate_functors(point(), C)) == C.n_obj

    def test_interval_one_picks_morphisms(self):
        C = cone_circle()
        assert len(enumerate_functors(interval(1), C)) == C.n_mor

    def test_circle_endofunctors(self):
        assert len(enumerate_functors(circle(), circle())) == 6 == len(brute_force_functors(circle(), circle()))

    @pytest.mark.parametrize("A,B", [
        (chain(1), chain(2)), (circle(), cone_circle()), (cyclic_group(2), cyclic_group(4)),
        (chain(2), codiscrete(2)), (discrete(2), circle()), (cyclic_group(3), symmetric_group(3)),
        (opposite(chain(2)), chain(2)),
    ])
    def test_enumeration_matches_oracle(self, A, B):
        got = [(F.obj_map, F.mor_map) for F in enumerate_functors(A, B)]
        assert got == sorted(got)
        assert len(set(got)) == len(got)
        assert sorted(got) == sorted(brute_force_functors(A, B))

    @given(small_category(), small_category())
    def test_enumeration_matches_oracle_on_corpus(self, A, B):
        got = sorted((F.obj_map, F.mor_map) for F in enumerate_functors(A, B))
        assert got == sorted(brute_force_functors(A, B))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(iter_functors(codiscrete(3), codiscrete(3), budget=10))

    def test_invalid_functor(self):
        with pytest.raises(InvalidFunctor):
            make_functor(chain(1), chain(1), [1, 0], [1, 0, 2])

    def test_identity_composition(self):
        F = from_point(cone_circle(), 1)
        assert compose_functors(identity_functor(F.target), F) == F
        assert is_identity_functor(identity_functor(circle()))

    def test_compose_mismatch(self):
        with pytest.raises(EndpointMismatch):
            compose_functors(to_point(circle()), to_point(chain(1)))

    @given(small_category(), small_category(), small_category())
    def test_composition_associative(self, A, B, C):
        fs = enumerate_functors(A, B)[:3]
        gs = enumerate_functors(B, C)[:3]
        hs = enumerate_functors(C, A)[:3]
        for f, g, h in itertools.product(fs, gs, hs):
            assert compose_functors(h, compose_functors(g, f)) == compose_functors(compose_functors(h, g), f)

    def test_chain_embeddings_compose(self):
        c1, c2, c3 = chain(1), chain(2), chain(3)
        f = make_functor(c1, c2, [0, 2], [0, 2, c2.mor_index("02")])
        g = make_functor(c2, c3, [1, 2, 3], [1, 2, 3] + [c3.mor_index(n) for n in ("12", "13", "23")])
        gf = compose_functors(g, f)
        assert gf.obj_map == (1, 3) and c3.mor_names[gf.mor_map[2]] == "13"


class TestFibersAndCommas:
    def test_fiber_of_identity(self):
        C = cone_circle()
        for b in C.objects:
            assert fiber_category(identity_functor(C), b).same_structure(point())

    def test_fiber_of_sphere(self):
        assert fiber_category(to_point(discrete(2)), 0).same_structure(discrete(2))

    def test_comma_under_identity_point(self):
        assert comma_under(identity_functor(point()), 0).category.same_structure(point())

    def test_comma_over_chain(self):
        K = comma_over(to_point(chain(1)), 0).category
        assert find_isomorphism(K, chain(1)) is not None

    @given(small_category(), small_category())
    def test_comma_under_counts(self, X, Y):
        for p in enumerate_functors(X, Y)[:4]:
            for y in Y.objects:
                expected = sum(len(Y.hom(y, p.obj_map[x])) for x in X.objects)
                assert comma_under(p, y).category.n_obj == expected
                expected_over = sum(len(Y.hom(p.obj_map[x], y)) for x in X.objects)
                assert comma_over(p, y).category.n_obj == expected_over

    @given(preorder())
    def test_preorders_have_thin_homs(self, C):
        assert all(len(C.hom(a, b)) <= 1 for a in C.objects for b in C.objects)
