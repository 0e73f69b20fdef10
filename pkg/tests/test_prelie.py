import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from braceforge import corpus
from braceforge.abelian import AbelianPGroup
from braceforge.prelie import (
    LieRing,
    PreLieRing,
    associated_lie,
    associative_multiple,
    is_powerful_lie,
    is_powerful_prelie,
    prelie_nilpotency,
    scale_product,
    verify_lie_axioms,
    verify_prelie_axioms,
    witt,
    zero_prelie,
)

PRELIE = corpus.prelie_corpus()


def test_examples_pass_and_fail():
    assert verify_prelie_axioms(zero_prelie(AbelianPGroup(5, [2])))
    P = associative_multiple(5, 2)
    assert verify_prelie_axioms(P)
    A = AbelianPGroup(5, [2])
    rep = verify_prelie_axioms(PreLieRing(A, A.add_table))
    assert not rep and rep.witness is not None


def test_associative_multiple_matches_5Z125():
    # u <-> 5u identifies Z/25 with 5Z/125
    P = associative_multiple(5, 2)
    for u in range(25):
        for v in range(25):
            assert 5 * int(P.dot[u, v]) % 125 == (5 * u) * (5 * v) % 125


@given(st.sampled_from(sorted(PRELIE)), st.data())
def test_prelie_identity_pointwise(name, data):
    P = PRELIE[name]
    A, d = P.additive, P.dot
    x, y, z = (data.draw(st.integers(0, P.order - 1)) for _ in range(3))
    lhs = A.sub(int(d[d[x, y], z]), int(d[x, d[y, z]]))
    rhs = A.sub(int(d[d[y, x], z]), int(d[y, d[x, z]]))
    assert lhs == rhs
    assert d[x, A.add(y, z)] == A.add(int(d[x, y]), int(d[x, z]))


def test_witt_products():
    W = witt(5, 3)
    A = W.additive
    t2, t3 = A.rank((1, 0, 0)), A.rank((0, 1, 0))
    # t^2 . t^2 = 2 t^3, t^2 . t^3 = 3 t^4, t^3 . t^2 = 2 t^4
    assert A.coords(int(W.dot[t2, t2])) == (0, 2, 0)
    assert A.coords(int(W.dot[t2, t3])) == (0, 0, 3)
    assert A.coords(int(W.dot[t3, t2])) == (0, 0, 2)
    assert not W.is_associative()


def test_associated_lie_examples():
    P = associative_multiple(5, 3)
    assert associated_lie(P).is_abelian()
    assert associated_lie(zero_prelie(AbelianPGroup(5, [1, 1]))).is_abelian()
    L = associated_lie(corpus.triangular_prelie(5, 3))
    assert verify_lie_axioms(L)
    assert np.unique(L.bracket).size == 5


@given(st.sampled_from(sorted(PRELIE)))
def test_associated_lie_is_lie(name):
    assert verify_lie_axioms(associated_lie(PRELIE[name]))


def test_powerful_predicates():
    assert is_powerful_prelie(associative_multiple(5, 3))
    assert not is_powerful_prelie(witt(5, 3))
    assert not is_powerful_prelie(corpus.triangular_prelie(5, 3))
    assert is_powerful_lie(associated_lie(zero_prelie(AbelianPGroup(5, [2]))))


def test_powerful_prelie_from_transform():
    from braceforge.transform import bullet

    R = corpus.radical_cyclic(5, 3)
    assert is_powerful_prelie(bullet(R).ring)


def test_nilpotency_examples():
    assert prelie_nilpotency(zero_prelie(AbelianPGroup(5, [2]))).strong_index == 2
    rep = prelie_nilpotency(associative_multiple(5, 2))
    assert rep.strong_index == 3
    A = AbelianPGroup(5, [1])
    # a.b = ab on Z/5 has the idempotent 1
    idem = PreLieRing(A, np.array([[a * b % 5 for b in range(5)] for a in range(5)]))
    rep = prelie_nilpotency(idem)
    assert rep.left_index is None and rep.strong_index is None
    assert any("not left nilpotent" in n for n in rep.notes)


def test_scale_product_examples():
    P = associative_multiple(5, 3)
    assert np.array_equal(scale_product(P, 1).dot, P.dot)
    assert not scale_product(P, 0).dot.any()
    c = -(1 + 5 + 25 + 125)
    assert c % 125 == -31 % 125
    Q = scale_product(P, c)
    A = P.additive
    assert np.array_equal(Q.dot, A.smul_table(-31)[P.dot])


def test_lie_axiom_failures():
    A = AbelianPGroup(5, [1])
    sym = np.array([[a * b % 5 for b in range(5)] for a in range(5)])
    rep = verify_lie_axioms(LieRing(A, sym))
    assert not rep and rep.identity == "alternating"


def test_json_roundtrip():
    from braceforge.prelie import prelie_from_json

    W = witt(5, 2)
    assert np.array_equal(prelie_from_json(W.to_json()).dot, W.dot)
