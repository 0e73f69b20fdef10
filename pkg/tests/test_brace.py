import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braceforge import brace as bc
from braceforge import corpus
from braceforge.abelian import AbelianPGroup
from braceforge.brace import Brace, verify_brace_axioms
from braceforge.errors import AxiomError, HypothesisError, StructuralError

CORPUS = corpus.standard_corpus()
names = st.sampled_from(sorted(CORPUS))


def cyclic_star(p, n, fn):
    m = p**n
    return np.array([[fn(a, b) % m for b in range(m)] for a in range(m)])


def test_trivial_and_radical_pass():
    assert verify_brace_axioms(corpus.trivial(5, [3]))
    B = Brace(AbelianPGroup(5, [3]), cyclic_star(5, 3, lambda a, b: 5 * a * b))
    assert verify_brace_axioms(B)
    assert B == corpus.radical_cyclic(5, 3)


def test_broken_table_fails_with_witness():
    B = Brace(AbelianPGroup(5, [3]), cyclic_star(5, 3, lambda a, b: 5 * a + 5 * b))
    rep = verify_brace_axioms(B)
    assert not rep
    assert rep.identity == "zero-left-annihilates"
    # 0*b = 5b is nonzero at b = 1
    assert B.op(0, rep.witness[-1]) != 0
    with pytest.raises(AxiomError):
        bc.require_brace(B)


def test_corrupted_corpus_tables_fail():
    rng = np.random.default_rng(7)
    for name, B in CORPUS.items():
        star = B.star.copy()
        a, b = (int(v) for v in rng.integers(1, B.order, size=2))
        star[a, b] = (star[a, b] + 1) % B.order
        rep = verify_brace_axioms(Brace(B.additive, star))
        assert not rep, name
        assert rep.witness is not None and len(rep.witness) in (1, 2, 3)


def test_structural_errors():
    A = AbelianPGroup(5, [1])
    with pytest.raises(StructuralError):
        Brace(A, np.zeros((4, 4), dtype=int))
    with pytest.raises(StructuralError):
        Brace(A, np.full((5, 5), 7))


@given(names, st.data())
def test_brace_identity_pointwise(name, data):
    B = CORPUS[name]
    A = B.additive
    a, b, c = (data.draw(st.integers(0, B.order - 1)) for _ in range(3))
    lhs = A.add(B.circ(a, A.add(b, c)), a)
    rhs = A.add(B.circ(a, b), B.circ(a, c))
    assert lhs == rhs
    assert B.circ(B.circ(a, b), c) == B.circ(a, B.circ(b, c))
    assert B.circ(a, int(B.circ_inverse[a])) == 0
    assert B.lam(a, b) == A.add(B.op(a, b), b)


def test_circ_power_examples():
    T = corpus.trivial(5, [3])
    A = T.additive
    for a in (1, 7, 33):
        for k in (1, 2, 9):
            assert bc.circ_power(T, a, k) == A.scalar_mul(k, a)
    R = corpus.radical_cyclic(5, 3)
    assert bc.circ_power(R, 1, 5) == 55
    # oracle: iterate x -> x + 1 + 5x in Z/125
    x = 0
    for _ in range(5):
        x = (x + 1 + 5 * x) % 125
    assert x == 55
    assert bc.circ_power(R, 17, 1) == 17


@given(names, st.data())
def test_circ_power_binomial(name, data):
    B = CORPUS[name]
    a = data.draw(st.integers(0, B.order - 1))
    k = data.draw(st.integers(1, B.p**2))
    assert bc.circ_power(B, a, k) == bc.circ_power_binomial(B, a, k)


def test_ann_and_multiples():
    R = corpus.radical_cyclic(5, 3)
    assert list(bc.ann(R, 0).carrier) == [0]
    assert list(bc.ann(R, 2).carrier) == list(range(0, 125, 5))
    assert bc.ann(R, 3).carrier.is_whole()
    assert list(bc.pA_ideal(R, 1).carrier) == list(range(0, 125, 5))
    assert bc.pA_ideal(R, 3).carrier.is_trivial()
    T = corpus.trivial(5, [2, 1])
    pA = bc.pA_ideal(T).carrier
    assert pA.order == 5
    assert all(T.additive.coords(x)[1] == 0 for x in pA)


@given(names, st.integers(0, 3))
def test_ideals_are_ideals(name, i):
    B = CORPUS[name]
    if not B.satisfies_p_gt_n1():
        return
    for I in (bc.ann(B, i), bc.pA_ideal(B, max(i, 1))):
        elts = I.carrier.elements
        assert I.carrier.mask[B.star[np.ix_(elts, np.arange(B.order))]].all()
        assert I.carrier.mask[B.star[np.ix_(np.arange(B.order), elts)]].all()


def test_power_subgroups():
    T = corpus.trivial(5, [3])
    rep = bc.circ_power_subgroup(T, 1)
    assert rep.equal and rep.multiple == T.additive.multiple_subgroup(5)
    R = corpus.radical_cyclic(5, 3)
    assert bc.circ_power_subgroup(R, 1).equal
    rep = bc.circ_power_subgroup(R, 3)
    assert rep.equal and rep.generated.is_trivial()


def test_quotients():
    R = corpus.radical_cyclic(5, 3)
    assert bc.quotient_brace(R, R.additive.trivial_subgroup()) == R
    assert bc.quotient_brace(R, R.additive.whole()).order == 1
    Q = bc.quotient_brace(R, bc.ann(R, 1))
    assert Q.order == 25
    assert Q == Brace(AbelianPGroup(5, [2]), cyclic_star(5, 2, lambda a, b: 5 * a * b))


def test_nilpotency_examples():
    assert bc.brace_nilpotency(corpus.trivial(5, [3])).strong_index == 2
    rep = bc.brace_nilpotency(corpus.radical_cyclic(5, 3))
    assert rep.strong_index == 4
    assert [s.order for s in rep.strong_chain] == [125, 25, 5, 1]
    D = corpus.direct_sum(corpus.trivial(5, [1]), corpus.trivial(5, [2]))
    assert bc.brace_nilpotency(D).strong_index == 2


@given(names)
def test_chains_nonincreasing(name):
    rep = bc.brace_nilpotency(CORPUS[name])
    for chain in (rep.left_chain, rep.right_chain, rep.strong_chain):
        assert all(b <= a for a, b in itertools.pairwise(chain))


def test_engel_examples():
    R = corpus.radical_cyclic(5, 3)
    assert R.op(2, 1) == 10
    lhs, rhs = bc.engel_expansion_sides(R, 1, 1, 1, 4)
    assert lhs == rhs == 10
    T = corpus.trivial(5, [3])
    assert bc.engel_expansion_sides(T, 3, 4, 5, 2) == (0, 0)
    assert bc.verify_engel_expansion(R, 7, 9, 0)


@given(names, st.data())
def test_engel_expansion_property(name, data):
    B = CORPUS[name]
    a, b, c = (data.draw(st.integers(0, B.order - 1)) for _ in range(3))
    assert bc.verify_engel_expansion(B, a, b, c)


def test_sub_brace_pA():
    T = corpus.trivial(5, [3])
    S = bc.sub_brace_pA(T)
    assert S.order == 25 and not S.star.any()
    R = corpus.radical_cyclic(5, 3)
    S = bc.sub_brace_pA(R)
    assert S.order == 25
    assert bc.brace_nilpotency(S).strong_index <= 4
    assert bc.sub_brace_pA(corpus.trivial(5, [2])).order == 5


def test_adjoint_groups():
    G = bc.adjoint_group(corpus.trivial(5, [2, 1]))
    assert G.is_abelian()
    assert np.array_equal(G.table, corpus.trivial(5, [2, 1]).additive.add_table)
    H = bc.adjoint_group(corpus.radical_triangular(5, 3))
    assert H.order == 125 and not H.is_abelian() and H.exponent == 5
    C = bc.adjoint_group(corpus.radical_cyclic(5, 3))
    t = C.table
    assert all(t[t[a, b], c] == t[a, t[b, c]] for a in range(0, 125, 3) for b in range(125) for c in (1, 2, 64))


def test_hypothesis_gate():
    B = corpus.trivial(3, [1, 1, 1])
    with pytest.raises(HypothesisError) as err:
        bc.circ_power_subgroup(B, 1)
    assert err.value.hypothesis == "p > n+1"


def test_construct_dispatch():
    assert corpus.construct("trivial", p=5, exponents=[3]).order == 125
    with pytest.raises(StructuralError):
        corpus.construct("radical-cyclic", p=2, n=3)
    with pytest.raises(StructuralError):
        corpus.construct("nope", p=5)
    B = corpus.construct("from-json", doc=corpus.radical_cyclic(5, 2).to_json())
    assert B == corpus.radical_cyclic(5, 2)


def test_fix_subgroup():
    R = corpus.radical_cyclic(5, 3)
    assert list(bc.fix_subgroup(R, 1)) == list(range(0, 125, 25))
    T = corpus.trivial(5, [3])
    assert bc.fix_subgroup(T, 4).is_whole()
