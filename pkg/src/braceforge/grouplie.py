"""Finite p-groups as Cayley tables and the Lie rings attached to them.

Commutators are ``(x, y) = x^-1 y^-1 x y``.  Subgroups are :class:`Subgroup`
bitmaps over the element indices of one table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .abelian import AbelianPGroup, DirectSum, Section, decompose_section
from .chains import product_span
from .errors import HypothesisError, InternalCheckError, StructuralError
from .numtheory import ilog, prime_power_decompose
from .prelie import LieRing, verify_lie_axioms
from .subgroups import Subgroup, closure


class FiniteGroupTable:
    def __init__(self, table, identity: int = 0, *, verify: bool = True, p: int | None = None):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise StructuralError("group table must be square")
        m = t.shape[0]
        if t.size and (t.min() < 0 or t.max() >= m):
            raise StructuralError("group table entries out of range")
        self.table = np.ascontiguousarray(t, dtype=np.int32)
        self.table.setflags(write=False)
        self.identity = int(identity)
        self.order = m
        if m == 1:
            self.p = p
        else:
            try:
                q, _ = prime_power_decompose(m)
            except ValueError as exc:
                raise StructuralError(f"group order {m} is not a prime power") from exc
            if p is not None and p != q:
                raise StructuralError(f"order {m} is not a power of {p}")
            self.p = q
        if verify:
            self._verify()

    def _verify(self):
        t, e = self.table, self.identity
        idx = np.arange(self.order)
        if not 0 <= e < self.order or (t[e] != idx).any() or (t[:, e] != idx).any():
            raise StructuralError("identity element does not act trivially")
        if ((t == e).sum(axis=1) != 1).any():
            raise StructuralError("some element lacks a unique inverse")
        w = _kernels.first_assoc_violation(t)
        if w is not None:
            raise StructuralError(f"table is not associative at {w}")
        srt = np.sort(t, axis=1)
        if (srt != idx[None, :]).any():
            raise StructuralError("rows of the group table are not permutations")

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order})"

    @property
    def n(self) -> int:
        return 0 if self.order == 1 else ilog(self.p, self.order)

    @cached_property
    def inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    @cached_property
    def commutator_table(self) -> np.ndarray:
        t, inv = self.table, self.inverse
        return t[t[inv[:, None], inv[None, :]], t]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def commutator(self, x: int, y: int) -> int:
        return int(self.commutator_table[x, y])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def whole(self) -> Subgroup:
        return Subgroup(np.ones(self.order, dtype=bool))

    def trivial(self) -> Subgroup:
        return Subgroup.from_elements(self.order, [self.identity])

    def subgroup(self, gens) -> Subgroup:
        return closure(self.table, gens, self.identity)

    def is_subgroup(self, H: Subgroup) -> bool:
        if not H.mask[self.identity]:
            return False
        prods = self.table[np.ix_(H.elements, H.elements)]
        return bool(H.mask[prods].all())

    def power_map(self, k: int) -> np.ndarray:
        res = np.full(self.order, self.identity, dtype=np.int64)
        base = np.arange(self.order, dtype=np.int64)
        while k:
            if k & 1:
                res = self.table[res, base]
            base = self.table[base, base]
            k >>= 1
        return res

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        step = self.power_map(self.p) if self.p else cur
        while (cur != self.identity).any():
            nz = cur != self.identity
            out[nz] *= self.p
            cur = step[cur]
        return out

    @property
    def exponent(self) -> int:
        return int(self.element_orders.max())

    def commutator_subgroup(self, H: Subgroup, K: Subgroup) -> Subgroup:
        """``(H, K)``: generated by ``(h, k)`` for ``h`` in ``H``, ``k`` in ``K``."""
        img = _kernels.product_image_mask(self.commutator_table, H.elements, K.elements)
        return closure(self.table, np.flatnonzero(img), self.identity)

    def power_subgroup(self, k: int, H: Subgroup | None = None) -> Subgroup:
        """``H^k = <h^k : h in H>`` (``H = G`` by default)."""
        elts = np.arange(self.order) if H is None else H.elements
        return closure(self.table, np.unique(self.power_map(k)[elts]), self.identity)

    def product_subgroup(self, H: Subgroup, K: Subgroup) -> Subgroup:
        return closure(self.table, K.elements, self.identity, start=H)

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist(), "identity": self.identity}


def group_from_json(doc: dict) -> FiniteGroupTable:
    try:
        order = int(doc["order"])
        table = np.array(doc["table"], dtype=np.int64)
        identity = int(doc.get("identity", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed group JSON: {exc}") from exc
    if table.shape != (order, order):
        raise StructuralError(f"group table must be {order}x{order}")
    return FiniteGroupTable(table, identity)


# ---------------------------------------------------------------------------
# classic groups


def abelian_group(A: AbelianPGroup) -> FiniteGroupTable:
    return FiniteGroupTable(A.add_table, 0, verify=False, p=A.p)


def cyclic(p: int, e: int) -> FiniteGroupTable:
    return abelian_group(AbelianPGroup(p, [e]))


def elementary_abelian(p: int, d: int) -> FiniteGroupTable:
    return abelian_group(AbelianPGroup(p, [1] * d))


def heisenberg(p: int, e: int = 1) -> FiniteGroupTable:
    """Unitriangular 3x3 matrices over ``Z/p^e``, element ``(a, b, c)`` <-> rank ``a p^2e + b p^e + c``.

    ``(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')``.
    """
    m = p**e
    r = np.arange(m**3)
    a, b, c = r // (m * m), (r // m) % m, r % m
    A = (a[:, None] + a[None, :]) % m
    Bc = (b[:, None] + b[None, :]) % m
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % m
    return FiniteGroupTable(A * m * m + Bc * m + C, 0, verify=False, p=p)


# ---------------------------------------------------------------------------
# series and predicates


def lower_central_series(G: FiniteGroupTable) -> list[Subgroup]:
    """``[G_1, ..., G_{c+1}]`` with ``G_{c+1} = 1``."""
    out = [G.whole()]
    whole = G.whole()
    while not out[-1].is_trivial():
        nxt = G.commutator_subgroup(out[-1], whole)
        if nxt == out[-1]:
            raise StructuralError("group is not nilpotent")
        out.append(nxt)
    return out


def nilpotency_class(G: FiniteGroupTable) -> int:
    return len(lower_central_series(G)) - 1


def derived_series(G: FiniteGroupTable) -> list[Subgroup]:
    out = [G.whole()]
    while not out[-1].is_trivial():
        nxt = G.commutator_subgroup(out[-1], out[-1])
        if nxt == out[-1]:
            raise StructuralError("group is not solvable")
        out.append(nxt)
    return out


def derived_length(G: FiniteGroupTable) -> int:
    return len(derived_series(G)) - 1


def _power_target(G: FiniteGroupTable) -> Subgroup:
    return G.power_subgroup(4 if G.p == 2 else G.p)


def is_powerful_group(G: FiniteGroupTable) -> bool:
    """``G' <= G^p`` (``G^4`` when ``p = 2``)."""
    if G.order == 1:
        return True
    derived = G.commutator_subgroup(G.whole(), G.whole())
    return derived <= _power_target(G)


def frattini(G: FiniteGroupTable) -> Subgroup:
    """``G^p G'``."""
    derived = G.commutator_subgroup(G.whole(), G.whole())
    return G.product_subgroup(G.power_subgroup(G.p), derived)


def generator_rank(G: FiniteGroupTable) -> int:
    """``d(G) = log_p |G : G^p G'|``."""
    if G.order == 1:
        return 0
    return ilog(G.p, G.order // frattini(G).order)


def power_chain(G: FiniteGroupTable) -> list[Subgroup]:
    """``G, G^p, G^(p^2), ...`` down to the trivial subgroup."""
    out = [G.whole()]
    k = G.p
    while not out[-1].is_trivial():
        out.append(G.power_subgroup(k))
        k *= G.p
    return out


def is_uniform(G: FiniteGroupTable) -> bool:
    if not is_powerful_group(G):
        return False
    chain = power_chain(G)
    sizes = {chain[i].order // chain[i + 1].order for i in range(len(chain) - 1)}
    return len(sizes) <= 1


# ---------------------------------------------------------------------------
# the graded Lie ring L(G)


@dataclass
class GradedLieRing:
    """``L(G) = + G_i / G_{i+1}`` with bracket ``[x G_{i+1}, y G_{j+1}] = (x, y) G_{i+j+1}``.

    ``components[i-1]`` presents ``G_i / G_{i+1}``; ``brackets[(i, j)]`` maps
    component ranks to ranks in component ``i + j``.
    """

    group: FiniteGroupTable
    series: list[Subgroup]
    components: list[Section]
    brackets: dict

    @property
    def p(self) -> int:
        return self.group.p

    @property
    def c(self) -> int:
        return len(self.components)

    @property
    def order(self) -> int:
        return math.prod(s.group.order for s in self.components)

    @cached_property
    def direct_sum(self) -> DirectSum:
        return DirectSum([s.group for s in self.components])

    @cached_property
    def lie_ring(self) -> LieRing:
        """The direct sum as one table-based Lie ring."""
        S = self.direct_sum
        A = S.group
        split = S.split_table
        total = np.zeros((A.order, A.order), dtype=np.int64)
        emb = [S.embedding(i) for i in range(self.c)]
        for (i, j), br in self.brackets.items():
            vals = br[split[:, i - 1][:, None], split[:, j - 1][None, :]]
            total = A.add_table[total, emb[i + j - 1][vals]]
        return LieRing(A, total)

    def component_of(self, i: int, H: Subgroup) -> np.ndarray:
        """Ranks in ``L_i`` of ``(H cap G_i) G_{i+1} / G_{i+1}``."""
        lab = self.components[i - 1].label
        inside = H.elements[self.series[i - 1].mask[H.elements]]
        return np.unique(lab[inside])

    def embed_component(self, i: int, ranks) -> np.ndarray:
        return self.direct_sum.embedding(i - 1)[np.asarray(ranks, dtype=np.int64)]


def graded_lie_ring(G: FiniteGroupTable, *, check: bool = True) -> GradedLieRing:
    if G.order == 1:
        raise StructuralError("L(G) of the trivial group has no components")
    series = lower_central_series(G)
    c = len(series) - 1
    comps = [decompose_section(G.table, G.p, series[i], series[i + 1], G.identity) for i in range(c)]
    comm = G.commutator_table
    brackets = {}
    for i in range(1, c + 1):
        for j in range(1, c + 1):
            if i + j > c:
                continue
            ri, rj = comps[i - 1].rep, comps[j - 1].rep
            brackets[(i, j)] = comps[i + j - 1].label[comm[ri[:, None], rj[None, :]]]
    L = GradedLieRing(G, series, comps, brackets)
    if check:
        w = bracket_representative_violation(L)
        if w is not None:
            raise InternalCheckError(f"L(G) bracket depends on representatives at {w}")
        if L.order != G.order:
            raise InternalCheckError(f"|L(G)| = {L.order} differs from |G| = {G.order}")
    return L


def bracket_representative_violation(L: GradedLieRing):
    """First ``(x, y)`` whose commutator class differs from the tabulated bracket."""
    _G, comm = L.group, L.group.commutator_table
    for (i, j), br in L.brackets.items():
        xs, ys = L.series[i - 1].elements, L.series[j - 1].elements
        li, lj, lk = (L.components[k - 1].label for k in (i, j, i + j))
        got = lk[comm[np.ix_(xs, ys)]]
        want = br[li[xs][:, None], lj[ys][None, :]]
        bad = got != want
        if bad.any():
            a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return int(xs[a]), int(ys[b])
    return None


def l1_generates(L: GradedLieRing) -> bool:
    """``L`` is generated by ``L_1`` as a Lie ring."""
    R = L.lie_ring
    A = R.additive
    gens = L.embed_component(1, np.arange(L.components[0].group.order))
    span = closure(A.add_table, gens, 0)
    while True:
        img = product_span(A, R.bracket, span, span)
        nxt = closure(A.add_table, img.elements, 0, start=span)
        if nxt == span:
            return span.is_whole()
        span = nxt


@dataclass
class SubringReport:
    components: list[np.ndarray]
    subgroup: Subgroup
    closed: bool


def lie_subring_of_subgroup(L: GradedLieRing, H: Subgroup) -> SubringReport:
    """``L(G, H) = + (H cap G_i) G_{i+1} / G_{i+1}`` inside ``L(G)``."""
    G = L.group
    if not G.is_subgroup(H):
        raise StructuralError("H is not a subgroup of G")
    comps = [L.component_of(i, H) for i in range(1, L.c + 1)]
    S = L.direct_sum
    ranks = np.zeros((1, L.c), dtype=np.int64)
    for i, cmp in enumerate(comps):
        rep = np.repeat(ranks, cmp.size, axis=0)
        rep[:, i] = np.tile(cmp, ranks.shape[0])
        ranks = rep
    sub = Subgroup.from_elements(S.group.order, S.combine(ranks))
    closed = True
    for (i, j), br in L.brackets.items():
        vals = br[np.ix_(comps[i - 1], comps[j - 1])]
        if not np.isin(vals, comps[i + j - 1]).all():
            closed = False
    return SubringReport(comps, sub, closed)


def lie_subring_monotone(L: GradedLieRing, H: Subgroup, K: Subgroup) -> bool:
    """``L(G, H) <= L(G, K)`` (meaningful when ``H <= K``)."""
    return lie_subring_of_subgroup(L, H).subgroup <= lie_subring_of_subgroup(L, K).subgroup


def power_subring_in_pL(L: GradedLieRing) -> bool:
    """``L(G, G^p) <= p L(G)``."""
    G = L.group
    sub = lie_subring_of_subgroup(L, G.power_subgroup(G.p)).subgroup
    return sub <= L.direct_sum.group.multiple_subgroup(G.p)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CoclassReport:
    n: int
    c: int
    b: int
    powerful: bool
    holds: bool | None

    def to_json(self) -> dict:
        return {"n": self.n, "c": self.c, "b": self.b, "powerful": self.powerful, "bound_holds": self.holds}


def coclass_check(G: FiniteGroupTable) -> CoclassReport:
    n, c = G.n, nilpotency_class(G)
    b = n - c
    pw = is_powerful_group(G)
    holds = (n <= 2 * b + 1) if pw else None
    return CoclassReport(n, c, b, pw, holds)


@dataclass
class CommutatorReport:
    pw_witness: tuple | None
    gamma_failures: list = field(default_factory=list)
    gamma_checked: int = 0

    @property
    def pw_holds(self) -> bool:
        return self.pw_witness is None

    def to_json(self) -> dict:
        return {
            "pw_holds": self.pw_holds,
            "pw_witness": self.pw_witness,
            "gamma_checked": self.gamma_checked,
            "gamma_failures": self.gamma_failures,
        }


def powerful_commutator_checks(G: FiniteGroupTable) -> CommutatorReport:
    """``(x, y) in G^(p^2)`` for ``x`` in ``G^p``; and the lower-central power identity.

    The identity ``(gamma_k^(p^i), gamma_l^(p^j)) = gamma_{k+l}^(p^(i+j))`` is
    tested for every ``k, l`` up to the class and every ``i, j`` up to the
    exponent; failures are listed rather than raised.
    """
    if not is_powerful_group(G):
        raise HypothesisError("G powerful", "the commutator lemmas need a powerful group")
    p = G.p
    Gp = G.power_subgroup(p)
    Gp2 = G.power_subgroup(p * p)
    vals = G.commutator_table[np.ix_(Gp.elements, np.arange(G.order))]
    bad = ~Gp2.mask[vals]
    w = None
    if bad.any():
        a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
        w = (int(Gp.elements[a]), int(b))
    rep = CommutatorReport(w)
    gamma = lower_central_series(G)
    c = len(gamma) - 1
    e = ilog(p, G.exponent) if G.order > 1 else 0
    powers: dict = {}

    def gp(k, i):
        if k > c:
            return G.trivial()
        key = (k, i)
        if key not in powers:
            powers[key] = G.power_subgroup(p**i, gamma[k - 1])
        return powers[key]

    for k in range(1, c + 1):
        for l in range(1, c + 1):
            for i in range(e + 1):
                for j in range(e + 1):
                    lhs = G.commutator_subgroup(gp(k, i), gp(l, j))
                    rhs = gp(k + l, i + j)
                    rep.gamma_checked += 1
                    if lhs != rhs:
                        rep.gamma_failures.append(
                            {"k": k, "l": l, "i": i, "j": j, "lhs_order": lhs.order, "rhs_order": rhs.order}
                        )
    return rep


@dataclass
class LazardLie:
    ring: LieRing
    q: np.ndarray
    source: Section
    target: Section


def lazard_lie(G: FiniteGroupTable, i: int) -> LazardLie:
    """``M_i(G)`` on ``G^(p^i) / G^(p^2i)``, bracket ``q^-1((x, y) G^(p^3i))``."""
    if not is_uniform(G):
        raise HypothesisError("G uniform", "M_i(G) is defined for uniform groups")
    p = G.p
    e = ilog(p, G.exponent) if G.order > 1 else 0
    if not 0 <= 3 * i <= e:
        raise HypothesisError("0 <= i <= e/3", f"i={i}, e={e}")
    H1, H2, H3 = (G.power_subgroup(p ** (k * i)) for k in (1, 2, 3))
    src = decompose_section(G.table, p, H1, H2, G.identity)
    dst = decompose_section(G.table, p, H2, H3, G.identity)
    pw = G.power_map(p**i)
    q = dst.label[pw[src.rep]]
    # well defined on cosets
    if (dst.label[pw[H1.elements]] != q[src.label[H1.elements]]).any():
        raise InternalCheckError("q depends on coset representatives")
    Q, R = src.group, dst.group
    if sorted(q.tolist()) != list(range(R.order)) or Q.order != R.order:
        raise InternalCheckError("q is not a bijection")
    if (q[Q.add_table] != R.add_table[q[:, None], q[None, :]]).any():
        raise InternalCheckError("q is not a homomorphism")
    qinv = np.empty_like(q)
    qinv[q] = np.arange(q.size)
    comm = G.commutator_table
    br = qinv[dst.label[comm[src.rep[:, None], src.rep[None, :]]]]
    full = qinv[dst.label[comm[np.ix_(H1.elements, H1.elements)]]]
    lab = src.label[H1.elements]
    if (full != br[lab[:, None], lab[None, :]]).any():
        raise InternalCheckError("M_i bracket depends on representatives")
    ring = LieRing(Q, br)
    rep = verify_lie_axioms(ring)
    if not rep:
        raise InternalCheckError(f"M_i(G) fails the Lie axioms: {rep}")
    return LazardLie(ring, q, src, dst)


# ---------------------------------------------------------------------------
# fixed points and bounds


def is_automorphism(table: np.ndarray, phi: np.ndarray) -> bool:
    phi = np.asarray(phi, dtype=np.int64)
    n = table.shape[0]
    if phi.shape != (n,) or sorted(phi.tolist()) != list(range(n)):
        return False
    return bool((phi[table] == table[phi[:, None], phi[None, :]]).all())


def fixed_points(table: np.ndarray, phi) -> Subgroup:
    phi = np.asarray(phi, dtype=np.int64)
    if not is_automorphism(table, phi):
        raise StructuralError("map is not an automorphism of the given group")
    return Subgroup(phi == np.arange(phi.size))


def centralizer(G: FiniteGroupTable, x: int) -> Subgroup:
    return Subgroup(G.table[:, x] == G.table[x, :])


def permutation_order(phi: np.ndarray) -> int:
    phi = np.asarray(phi, dtype=np.int64)
    cur, k = phi.copy(), 1
    ident = np.arange(phi.size)
    while not np.array_equal(cur, ident):
        cur = phi[cur]
        k += 1
    return k


def _log2(n: int) -> Decimal:
    if n & (n - 1) == 0:
        return Decimal(n.bit_length() - 1)
    return Decimal(n).ln() / Decimal(2).ln()


@dataclass
class Bounds:
    p: int
    k: int
    m: int
    f: float
    f_ceil: int
    h_upper: Fraction
    d_bound: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "m": self.m,
            "f": round(self.f, 9),
            "f_ceil": self.f_ceil,
            "h_upper": [self.h_upper.numerator, self.h_upper.denominator],
            "d_bound": self.d_bound,
        }


def f_bound(p: int, k: int, m: int) -> tuple[Decimal, int]:
    """``2 m p^k max{2^(p^k-1) + log2(k+1), log2(m+1)} + m p^k + log2(m p^k)``, and its ceiling."""
    big = 2 ** (p**k - 1)
    with localcontext() as ctx:
        ctx.prec = 60 + len(str(big)) + len(str(m * p**k))
        inner = max(Decimal(big) + _log2(k + 1), _log2(m + 1))
        val = 2 * m * p**k * inner + m * p**k + _log2(m * p**k)
        ceil = int(val.to_integral_value(rounding="ROUND_CEILING"))
    return val, ceil


def h_upper(p: int) -> Fraction:
    """``(p-1)^(2^(p-1)-1) / (p-2)`` exactly."""
    if p <= 2:
        raise ValueError("the bound is stated for p > 2")
    return Fraction((p - 1) ** (2 ** (p - 1) - 1), p - 2)


def bound_formulas(p: int, k: int, m: int) -> Bounds:
    val, ceil = f_bound(p, k, m)
    return Bounds(p, k, m, float(val), ceil, h_upper(p) if p > 2 else None, m * p**k)


@dataclass
class InstanceBounds:
    a: int
    data: dict
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"a": self.a, "ok": self.ok, "failures": self.failures, **self.data}


def verify_bounds_on_instance(B, a: int, *, prop16: bool | None = None, cache: dict | None = None) -> InstanceBounds:
    """Fixed-point bounds for one element ``a != 0`` of a brace.

    * derived length of ``(A, o)`` at most ``ceil f(p^k, p^m)``, ``p^k`` the
      o-order of ``a`` and ``p^m = |C(a)|``;
    * ``d(G) <= m' p^k'`` for ``G = (A, o)`` with conjugation by ``a`` and for
      ``(A, +)`` with ``lambda_a`` (``p^k'`` the automorphism order, ``p^m'``
      its fixed points);
    * for F_p-braces with ``a^(o p) = 0``: ``|Fix(a)| >= p^ceil(n/p)``.
    """
    from .brace import adjoint_group, circ_order, fix_subgroup

    p, n = B.p, B.n
    a = int(a)
    if a == 0:
        raise HypothesisError("a != 0", "the bounds need a nontrivial element")
    # per-brace data shared across elements
    cache = {} if cache is None else cache
    if "G" not in cache:
        cache["G"] = adjoint_group(B)
        cache["derived_length"] = derived_length(cache["G"])
        cache["d_adjoint"] = generator_rank(cache["G"])
    G = cache["G"]
    res = InstanceBounds(a, {})
    k = ilog(p, circ_order(B, a))
    C = centralizer(G, a)
    m = ilog(p, C.order)
    dl = cache["derived_length"]
    fval, fceil = f_bound(p, k, m)
    res.data.update(k=k, m=m, derived_length=dl, f=float(fval), f_ceil=fceil)
    if dl > fceil:
        res.failures.append("derived length exceeds f")

    inv = G.inverse
    conj = G.table[G.table[inv[a], np.arange(G.order)], a]
    kc = ilog(p, permutation_order(conj))
    mc = ilog(p, fixed_points(G.table, conj).order)
    dG = cache["d_adjoint"]
    res.data.update(conj_k=kc, conj_m=mc, d_adjoint=dG)
    if dG > mc * p**kc:
        res.failures.append("d((A,o)) exceeds m p^k for conjugation")

    lam = B.lambda_table[a].astype(np.int64)
    kl = ilog(p, permutation_order(lam))
    fix = fixed_points(B.additive.add_table, lam)
    if fix != fix_subgroup(B, a):
        raise InternalCheckError("fixed points of lambda_a differ from {b : a*b = 0}")
    ml = ilog(p, fix.order)
    dA = B.additive.rank_count
    res.data.update(lambda_k=kl, fix_m=ml, fix_order=fix.order, d_additive=dA)
    if dA > ml * p**kl:
        res.failures.append("d((A,+)) exceeds m p^k for lambda_a")

    elementary = all(e == 1 for e in B.additive.exponents)
    applies = elementary and k <= 1
    if prop16 and not applies:
        raise HypothesisError("F_p-brace and a^(o p) = 0", f"exponents {list(B.additive.exponents)}, o-order p^{k}")
    if applies:
        need = p ** -(-n // p)
        res.data.update(prop16_needed=need)
        if fix.order < need:
            res.failures.append("|Fix(a)| below p^ceil(n/p)")
    return res
