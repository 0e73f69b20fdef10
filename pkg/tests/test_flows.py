import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braceforge import corpus, flows
from braceforge.abelian import AbelianPGroup
from braceforge.errors import HypothesisError
from braceforge.prelie import associative_multiple, scale_product, witt, zero_prelie
from braceforge.transform import strong_dot

CORPUS = {k: B for k, B in corpus.standard_corpus().items() if B.satisfies_p_gt_n1()}


def to125(u):
    return 5 * int(u) % 125


def from125(x):
    assert x % 5 == 0
    return x // 5


def test_w_and_omega_examples():
    ctx = flows.flows_context(associative_multiple(5, 2))
    # W(5) = 5 + 25/2 = 80 in 5Z/125
    assert to125(flows.w_map(ctx, from125(5))) == 80
    assert to125(flows.omega(ctx, from125(5))) == 55
    assert flows.w_map(ctx, 0) == 0 and flows.omega(ctx, 0) == 0
    z = flows.flows_context(zero_prelie(AbelianPGroup(5, [2])))
    assert all(flows.w_map(z, a) == a == flows.omega(z, a) for a in range(25))


def test_flows_circ_examples():
    ctx = flows.flows_context(associative_multiple(5, 2))
    assert to125(flows.flows_circ(ctx, 1, 1)) == 35
    for a in range(25):
        for b in range(25):
            x, y = to125(a), to125(b)
            assert to125(flows.flows_circ(ctx, a, b)) == (x + y + x * y) % 125
    assert flows.flows_circ(ctx, 7, 0) == 7


def test_group_of_flows_examples():
    T = flows.group_of_flows(zero_prelie(AbelianPGroup(5, [2, 1])))
    assert T == corpus.trivial(5, [2, 1])
    # 5Z/125 with its ring product gives the radical-ring brace, i.e. u*v = 5uv on Z/25
    B = flows.group_of_flows(associative_multiple(5, 2))
    assert B == corpus.radical_cyclic(5, 2)


def exp_series_oracle(P, a):
    """W(a) as a truncated exp(L_a)-series written out with Python ints."""
    A, d = P.additive, P.dot
    p, m = A.p, A.p ** max(A.exponents)
    total, term, fact = 0, int(a), 1
    for i in range(p - 1):
        fact *= i + 1
        total = A.add(total, A.scalar_mul(pow(fact, -1, m), term))
        term = int(d[a, term])
    return total


@pytest.mark.parametrize("P", [witt(5, 3), witt(7, 3), associative_multiple(5, 3)], ids=str)
def test_w_matches_oracle_and_omega_inverts(P):
    ctx = flows.flows_context(P)
    w = flows.w_table(ctx)
    assert all(int(w[a]) == exp_series_oracle(P, a) for a in range(P.order))
    om = flows.omega_table(ctx)
    assert np.array_equal(w[om], np.arange(P.order))


def test_flows_context_rejects_long_index():
    # strong index 4 exceeds p-1 = 2 for p = 3
    with pytest.raises(HypothesisError):
        flows.flows_context(witt(3, 3))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_roundtrip_primary(name):
    rep = flows.roundtrip_check(CORPUS[name])
    assert rep.quotient_pass
    assert rep.strong_pass in (True, None)
    assert rep.passed


def test_roundtrip_examples(rc53, tri53):
    for B in (corpus.trivial(5, [3]), rc53, tri53):
        rep = flows.roundtrip_check(B)
        assert rep.quotient_pass and rep.strong_pass


def test_roundtrip_by_hand(rc53):
    c = -(1 + 5 + 25 + 125)
    assert flows.roundtrip_scalar(rc53) % 125 == c % 125
    back = flows.group_of_flows(scale_product(strong_dot(rc53).ring, c))
    assert back == rc53


def test_roundtrip_variants_are_reported(rc53):
    up = flows.roundtrip_check(rc53, "upper-limit")
    pf = flows.roundtrip_check(rc53, "p-factor")
    # only the primary sum reproduces the brace on a nontrivial instance
    assert up.strong_pass is False and pf.strong_pass is False
    T = corpus.trivial(5, [3])
    assert flows.roundtrip_check(T, "upper-limit").passed


@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_flows_circ_pointwise(name, data):
    B = CORPUS[name]
    try:
        sd = strong_dot(B)
    except HypothesisError:
        return
    P = scale_product(sd.ring, flows.roundtrip_scalar(B))
    ctx = flows.flows_context(P)
    a = data.draw(st.integers(0, B.order - 1))
    b = data.draw(st.integers(0, B.order - 1))
    assert flows.flows_circ(ctx, a, b) == B.circ(a, b)
