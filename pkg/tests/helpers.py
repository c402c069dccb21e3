"""Constructions shared by several test modules."""
from cat1.fincat import compose_functors, identity_functor, make_functor, product, product_functor, projection


def retract_pair(f, K, k):
    """``f`` as a retract of ``f x 1_K`` using the object ``k`` of ``K``."""
    g = product_functor(f, identity_functor(K))
    A, B = f.source, f.target

    def section(X):
        P = product(X, K)
        return make_functor(X, P, [x * K.n_obj + k for x in X.objects],
                            [_pair_mor(X, K, P, m, K.ident(k)) for m in X.morphisms])

    sA, sB = section(A), section(B)
    rA, rB = projection(A, K, 0), projection(B, K, 0)
    assert compose_functors(g, sA) == compose_functors(sB, f)
    assert compose_functors(f, rA) == compose_functors(rB, g)
    assert compose_functors(rA, sA) == identity_functor(A)
    assert compose_functors(rB, sB) == identity_functor(B)
    return g


def _pair_mor(X, K, P, m, km):
    # product morphism ids follow the projections
    pX, pK = projection(X, K, 0), projection(X, K, 1)
    for q in P.morphisms:
        if pX.mor_map[q] == m and pK.mor_map[q] == km:
            return q
    raise AssertionError("pair not found")
