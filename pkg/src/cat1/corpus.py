"""Test corpora: exhaustive small categories, random samples and functors."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .errors import ValidationError
from .fincat import (
    FinCat,
    check_category,
    circle,
    codiscrete,
    cone_circle,
    coproduct,
    cyclic_group,
    discrete,
    find_isomorphism,
    iter_functors,
    opposite,
    point,
    preorder_category,
    product,
    projection,
    symmetric_group,
    chain,
)


def _signature(C: FinCat) -> tuple:
    per = sorted((len(C.hom(o, o)), tuple(sorted(len(C.hom(o, b)) for b in C.objects)),
                  tuple(sorted(len(C.hom(a, o)) for a in C.objects))) for o in C.objects)
    return (C.n_obj, C.n_mor, tuple(per))


def _dedupe(cats) -> list:
    buckets = {}
    out = []
    for C in cats:
        bucket = buckets.setdefault(_signature(C), [])
        if any(find_isomorphism(C, D) is not None for D in bucket):
            continue
        bucket.append(C)
        out.append(C)
    return out


def _categories_with(n_obj: int, n_non: int) -> Iterator[FinCat]:
    pairs = [(s, t) for s in range(n_obj) for t in range(n_obj)]
    for ends in itertools.combinations_with_replacement(pairs, n_non):
        src = list(range(n_obj)) + [s for s, _ in ends]
        tgt = list(range(n_obj)) + [t for _, t in ends]
        n_mor = n_obj + n_non
        hom = {}
        for m in range(n_mor):
            hom.setdefault((src[m], tgt[m]), []).append(m)
        base = {}
        for m in range(n_mor):
            base[(m, src[m])] = m
            base[(tgt[m], m)] = m
        slots = [(g, f) for f in range(n_obj, n_mor) for g in range(n_obj, n_mor) if tgt[f] == src[g]]
        choices = [hom.get((src[f], tgt[g]), []) for g, f in slots]
        for pick in itertools.product(*choices):
            comp = dict(base)
            comp.update(zip(slots, pick))
            try:
                check_category(n_obj, src, tgt, comp)
            except ValidationError:
                continue
            names = [str(o) for o in range(n_obj)]
            mnames = [f"id_{o}" for o in range(n_obj)] + [f"m{k}" for k in range(n_non)]
            yield FinCat(n_obj, tuple(src), tuple(tgt), comp, tuple(names), tuple(mnames))


def small_categories(max_obj: int = 3, max_non_identity: int = 2) -> list:
    """Every category with the given bounds, one per isomorphism class."""
    cats = []
    for n in range(max_obj + 1):
        for k in range(max_non_identity + 1):
            if n == 0 and k > 0:
                continue
            cats.extend(_categories_with(n, k))
    return _dedupe(cats)


def random_preorder(rng: random.Random, n: int, density: float = 0.35) -> FinCat:
    rel = [[a == b or rng.random() < density for b in range(n)] for a in range(n)]
    for k in range(n):
        for a in range(n):
            if rel[a][k]:
                for b in range(n):
                    if rel[k][b]:
                        rel[a][b] = True
    return preorder_category(n, lambda a, b: rel[a][b])


def random_category(rng: random.Random, max_obj: int = 5) -> FinCat:
    """A category drawn from a few structured families."""
    kind = rng.randrange(7)
    if kind == 0:
        return random_preorder(rng, rng.randint(3, max_obj))
    if kind == 1:
        return rng.choice([cyclic_group(rng.randint(2, 5)), symmetric_group(3)])
    if kind == 2:
        return codiscrete(rng.randint(2, 4))
    if kind == 3:
        a = rng.choice([chain(1), circle(), cyclic_group(2), discrete(2)])
        b = rng.choice([chain(1), cyclic_group(2), discrete(2), point()])
        return product(a, b)
    if kind == 4:
        a = rng.choice([chain(2), circle(), cyclic_group(3), cone_circle()])
        b = rng.choice([chain(1), codiscrete(2), cyclic_group(2), point()])
        return coproduct(a, b)
    if kind == 5:
        return opposite(random_preorder(rng, rng.randint(3, max_obj)))
    return rng.choice([circle(), cone_circle(), chain(rng.randint(2, 4))])


def random_categories(count: int, seed: int = 0, max_obj: int = 5) -> list:
    rng = random.Random(seed)
    return [random_category(rng, max_obj) for _ in range(count)]


def sample_functors(count: int, seed: int = 0, max_obj: int = 4, per_pair: int = 6,
                    categories: Optional[list] = None) -> list:
    """Functors between corpus categories with at most ``max_obj`` objects.

    Known coverings (projections off a discrete factor) are mixed in so both
    answers occur in the sample.
    """
    rng = random.Random(seed)
    pool = [C for C in (categories or small_categories()) if 0 < C.n_obj <= max_obj]
    pool += [C for C in (circle(), cyclic_group(2), cyclic_group(3), codiscrete(2), chain(2),
                         cone_circle()) if C.n_obj <= max_obj]
    out = []
    for C in (circle(), cyclic_group(2), chain(1), codiscrete(2)):
        for k in (1, 2):
            if C.n_obj * k <= max_obj:
                out.append(projection(C, discrete(k), 0))
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        A, B = rng.choice(pool), rng.choice(pool)
        found = []
        for F in iter_functors(A, B, budget=200_000):
            found.append(F)
            if len(found) >= 64:
                break
        if not found:
            continue
        for F in rng.sample(found, min(per_pair, len(found))):
            out.append(F)
            if len(out) >= count:
                break
    return out[:count]


def composable_pairs(count: int, seed: int = 0, max_obj: int = 3) -> list:
    """Random pairs ``(F, G)`` with ``G o F`` defined."""
    rng = random.Random(seed)
    pool = [C for C in small_categories() if 0 < C.n_obj <= max_obj]
    pool += [circle(), cyclic_group(2), codiscrete(2), chain(2)]
    out = []
    tries = 0
    while len(out) < count and tries < 100 * count:
        tries += 1
        A, B, C = (rng.choice(pool) for _ in range(3))
        fs = list(itertools.islice(iter_functors(A, B, budget=100_000), 32))
        gs = list(itertools.islice(iter_functors(B, C, budget=100_000), 32))
        if fs and gs:
            out.append((rng.choice(fs), rng.choice(gs)))
    return out
