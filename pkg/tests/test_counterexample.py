"""A powerful group whose graded Lie ring is not powerful.

G is the adjoint group of (Z/27)^2 with a*b = 3(a1 b1, a1 b2), which is the
group of affine matrices [[1+3x, 3y], [0, 1]] over Z/81.  G is powerful and
uniform of order 3^6 and class 3, but the translation t = (0, 1) lies in
G_1 \\ G_2 while t^3 lies in G_2 \\ G_3.  Its image in L_2 = G_2/G_3 = Z/3 is
nonzero, whereas 3 L_2 = 0, so L(G, G^3) is not inside 3 L(G).
"""
import itertools

import pytest

from braceforge import brace as bc
from braceforge import corpus
from braceforge import grouplie as gl
from braceforge.prelie import is_powerful_lie, lie_power_chain, verify_lie_axioms

M = 81


def mat(x, y):
    return ((1 + 3 * x) % M, 3 * y % M)


def mul(g, h):
    # [[a, b], [0, 1]] [[c, d], [0, 1]] = [[ac, ad + b], [0, 1]]
    return (g[0] * h[0] % M, (g[0] * h[1] + g[1]) % M)


def inv(g):
    a = pow(g[0], -1, M)
    return (a, -a * g[1] % M)


def comm(g, h):
    return mul(mul(inv(g), inv(h)), mul(g, h))


def power(g, k):
    out = (1, 0)
    for _ in range(k):
        out = mul(out, g)
    return out


def generated(gens):
    seen = {(1, 0)}
    frontier = list(seen)
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in seen:
                    seen.add(h)
                    new.append(h)
        frontier = new
    return seen


@pytest.fixture(scope="module")
def oracle():
    G = [mat(x, y) for x in range(27) for y in range(27)]
    G2 = generated({comm(g, h) for g in G for h in G})
    G3 = generated({comm(g, h) for g in G2 for h in G})
    G4 = generated({comm(g, h) for g in G3 for h in G})
    Gp = generated({power(g, 3) for g in G})
    return G, G2, G3, G4, Gp


@pytest.fixture(scope="module")
def library():
    B = corpus.radical_affine(3, 3)
    return B, bc.adjoint_group(B)


def test_oracle_structure(oracle):
    G, G2, G3, G4, Gp = oracle
    assert len(set(G)) == 729
    assert [len(G2), len(G3), len(G4)] == [9, 3, 1]
    # powerful: G' inside G^3
    assert G2 <= Gp


def test_adjoint_group_is_the_matrix_group(library):
    B, _ = library
    A = B.additive
    for a, b in itertools.product(range(0, A.order, 5), range(A.order)):
        x = A.coords(a)
        y = A.coords(b)
        z = A.coords(B.circ(a, b))
        assert mat(*z) == mul(mat(*x), mat(*y))


def test_witness_in_oracle(oracle):
    _, G2, G3, _, _ = oracle
    t = mat(0, 1)
    t3 = power(t, 3)
    assert t not in G2
    assert t3 in G2 and t3 not in G3
    # L_2 = G_2/G_3 has order 3, so 3 L_2 = 0 while [t^3] != 0
    assert len(G2) // len(G3) == 3


def test_library_agrees(library):
    B, G = library
    A = B.additive
    assert [H.order for H in gl.lower_central_series(G)] == [729, 9, 3, 1]
    assert gl.is_powerful_group(G) and gl.is_uniform(G)
    L = gl.graded_lie_ring(G)
    assert verify_lie_axioms(L.lie_ring)
    assert not is_powerful_lie(L.lie_ring)
    assert not gl.power_subring_in_pL(L)
    t = A.rank((0, 1))
    t3 = int(G.power_map(3)[t])
    series = gl.lower_central_series(G)
    assert t not in series[1] and t3 in series[1] and t3 not in series[2]
    assert not all(ok for _, ok in lie_power_chain(L.lie_ring))


def test_other_consequences_still_hold(library):
    _, G = library
    rep = gl.powerful_commutator_checks(G)
    assert rep.pw_holds and not rep.gamma_failures
    assert gl.coclass_check(G).holds
    M1 = gl.lazard_lie(G, 1)
    assert is_powerful_lie(M1.ring)
