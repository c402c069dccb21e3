import itertools

from cat1.corpus import composable_pairs, random_categories, sample_functors, small_categories
from cat1.fincat import check_category, check_functor, compose_functors, find_isomorphism


def test_small_corpus_size_and_distinct():
    cats = small_categories()
    assert len(cats) == 55
    for C, D in itertools.combinations(cats, 2):
        if (C.n_obj, C.n_mor) == (D.n_obj, D.n_mor):
            assert find_isomorphism(C, D) is None


def test_small_corpus_bounds():
    for C in small_categories():
        assert C.n_obj <= 3 and C.n_mor - C.n_obj <= 2


def test_random_categories_are_valid_and_reproducible():
    a = random_categories(30, seed=5)
    b = random_categories(30, seed=5)
    for C, D in zip(a, b):
        check_category(C.n_obj, C.src, C.tgt, C.comp)
        assert C.same_structure(D)


def test_sampled_functors_are_valid():
    fs = sample_functors(50, seed=2)
    assert len(fs) == 50
    for F in fs:
        check_functor(F.source, F.target, F.obj_map, F.mor_map)


def test_composable_pairs_compose():
    for F, G in composable_pairs(20, seed=4):
        H = compose_functors(G, F)
        check_functor(F.source, G.target, H.obj_map, H.mor_map)
