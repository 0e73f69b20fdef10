import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braceforge import corpus, transform
from braceforge.errors import HypothesisError, StructuralError
from braceforge.numtheory import xi
from braceforge.prelie import verify_prelie_axioms

CORPUS = {k: B for k, B in corpus.standard_corpus().items() if B.satisfies_p_gt_n1()}
names = st.sampled_from(sorted(CORPUS))


def literal_average(B, a, b, top=None):
    """The xi-weighted sum evaluated term by term with Python integers."""
    p, A = B.p, B.additive
    m = p ** max(A.exponents)
    x = xi(p).value % m
    top = p - 2 if top is None else top
    total = 0
    for i in range(top + 1):
        term = B.op(A.scalar_mul(pow(x, i, m), a), b)
        total = A.add(total, A.scalar_mul(pow(x, p - 1 - i, m), term))
    return total


def test_dot_pA_examples(rc53):
    d = transform.dot_pA(corpus.trivial(5, [3]))
    assert not d.ring.dot.any()
    d = transform.dot_pA(rc53)
    assert d(5, 1) == 100
    assert d.table[5, 1] == literal_average(rc53, 5, 1)
    assert d(0, 17) == 0


def test_strong_dot_examples(rc53):
    sd = transform.strong_dot(rc53)
    # (p-1) * (1*1) = 4 * 5
    assert int(sd.ring.dot[1, 1]) == 20 == literal_average(rc53, 1, 1)
    assert not transform.strong_dot(corpus.trivial(5, [3])).ring.dot.any()
    assert not sd.ring.dot[:, 0].any()


@given(names, st.data())
def test_averaged_table_matches_literal_sum(name, data):
    B = CORPUS[name]
    a = data.draw(st.integers(0, B.order - 1))
    b = data.draw(st.integers(0, B.order - 1))
    T = transform.averaged_table(B)
    assert int(T[a, b]) == literal_average(B, a, b)
    U = transform.averaged_table(B, "upper-limit")
    assert int(U[a, b]) == literal_average(B, a, b, top=B.p - 1)


@pytest.mark.parametrize("name", ["radical-cyclic(5,3)", "radical-triangular(5,3)", "radical-cyclic(7,3)"])
def test_primary_average_of_bilinear_product(name):
    # for a bi-additive * every term equals xi^(p-1) (a*b) = a*b
    B = CORPUS[name]
    T = transform.averaged_table(B)
    assert np.array_equal(T, B.additive.smul_table(B.p - 1)[B.star])


def test_pullback_examples():
    R = corpus.radical_cyclic(5, 3)
    sec = transform.pullback(R)
    assert sec(0) == 0
    assert sec(25) == 5
    T = corpus.trivial(5, [2, 1])
    A = T.additive
    assert A.coords(transform.pullback(T)(A.rank((10, 0)))) == (2, 0)
    with pytest.raises(StructuralError):
        sec(1)


@given(names, st.booleans())
def test_pullback_is_a_section(name, alt):
    B = CORPUS[name]
    sec = transform.pullback(B, alternative=alt)
    view = transform.QuotientView(B)
    assert sec.check(view)


def test_odot_examples(rc53):
    T = corpus.trivial(5, [3])
    view = transform.QuotientView(T)
    assert not transform.odot_table(T, view, transform.pullback(T)).any()
    view = transform.QuotientView(rc53)
    # [1] (.) [1] = [pullback(25)] = [5] = [0]
    assert transform.odot(rc53, 1, 1) == view.coset(5) == view.coset(0)
    assert all(transform.odot(rc53, 0, b) == 0 for b in range(0, 125, 9))


@given(names)
def test_odot_representative_independence(name):
    B = CORPUS[name]
    view = transform.QuotientView(B)
    for alt in (False, True):
        assert transform.odot_representative_violation(B, view, transform.pullback(B, alt)) is None


def test_bullet_examples(rc53, tri53):
    assert not transform.bullet(corpus.trivial(5, [3])).ring.dot.any()
    res = transform.bullet(rc53)
    assert res.ring.order == 5 and not res.ring.dot.any()
    res = transform.bullet(tri53)
    assert verify_prelie_axioms(res.ring)


@given(names)
def test_bullet_prelie_and_cross_checks(name):
    B = CORPUS[name]
    res = transform.bullet(B)
    assert verify_prelie_axioms(res.ring)
    assert res.checks["via-dot_pA"] is None
    alt = transform.bullet(B, alternative_section=True)
    assert np.array_equal(alt.ring.dot, res.ring.dot)


@given(names)
def test_bullet_consistent_with_strong_dot(name):
    B = CORPUS[name]
    try:
        sd = transform.strong_dot(B)
    except HypothesisError:
        return
    assert transform.bullet_consistency_violation(transform.bullet(B), sd) is None


@given(names)
def test_dot_pA_verifies(name):
    assert transform.dot_pA(CORPUS[name]).verify()


def test_hypothesis_gates():
    B = corpus.trivial(3, [1, 1, 1])
    for fn in (transform.dot_pA, transform.bullet, transform.strong_dot):
        with pytest.raises(HypothesisError) as err:
            fn(B)
        assert err.value.hypothesis == "p > n+1"


def test_provenance_is_deterministic(rc53):
    a = transform.provenance(rc53, "bullet")
    b = transform.provenance(corpus.radical_cyclic(5, 3), "bullet")
    assert a == b
    assert a["xi"] == xi(5).value and a["gamma"] == 2
