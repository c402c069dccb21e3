"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from cat1.corpus import random_category, random_preorder, small_categories

SMALL = small_categories()


def small_category():
    return st.sampled_from(SMALL)


@st.composite
def structured_category(draw, max_obj=5):
    seed = draw(st.integers(0, 10_000))
    return random_category(random.Random(seed), max_obj)


@st.composite
def preorder(draw, max_obj=5):
    seed = draw(st.integers(0, 10_000))
    n = draw(st.integers(1, max_obj))
    return random_preorder(random.Random(seed), n)


@st.composite
def word(draw, n_gens, max_len=8):
    letters = st.integers(1, n_gens).flatmap(lambda g: st.sampled_from([g, -g]))
    return tuple(draw(st.lists(letters, max_size=max_len)))
