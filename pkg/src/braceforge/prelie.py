"""Finite pre-Lie and Lie rings given by product tables."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import _kernels
from .abelian import AbelianPGroup
from .brace import AxiomReport, check_table
from .chains import NilpotencyReport, nilpotency_chains
from .errors import AxiomError, InternalCheckError


class PreLieRing:
    def __init__(self, additive: AbelianPGroup, dot, *, name: str = ""):
        self.additive = additive
        self.dot = check_table(additive, dot, "dot")
        self.name = name

    @property
    def p(self) -> int:
        return self.additive.p

    @property
    def n(self) -> int:
        return self.additive.n

    @property
    def order(self) -> int:
        return self.additive.order

    def mul(self, a: int, b: int) -> int:
        return int(self.dot[a, b])

    def __eq__(self, other):
        if not isinstance(other, PreLieRing):
            return NotImplemented
        return self.additive == other.additive and bool(np.array_equal(self.dot, other.dot))

    __hash__ = None

    def __repr__(self):
        return f"PreLieRing(p={self.p}, exponents={list(self.additive.exponents)})"

    def to_json(self) -> dict:
        return {**self.additive.to_json(), "dot": self.dot.tolist()}

    @cached_property
    def bracket_table(self) -> np.ndarray:
        A = self.additive
        return A.add_table[self.dot, A.neg_table[self.dot.T]]

    def is_associative(self) -> bool:
        return _kernels.first_assoc_violation(self.dot) is None


class LieRing:
    def __init__(self, additive: AbelianPGroup, bracket, *, name: str = ""):
        self.additive = additive
        self.bracket = check_table(additive, bracket, "bracket")
        self.name = name

    @property
    def p(self) -> int:
        return self.additive.p

    @property
    def order(self) -> int:
        return self.additive.order

    def br(self, a: int, b: int) -> int:
        return int(self.bracket[a, b])

    def is_abelian(self) -> bool:
        return not self.bracket.any()

    def to_json(self) -> dict:
        return {**self.additive.to_json(), "bracket": self.bracket.tolist()}


def _biadditive(A: AbelianPGroup, table, checked: list[str]):
    checked.append("left-distributivity")
    w = _kernels.first_left_distrib_violation(table, A.add_table)
    if w is not None:
        return "left-distributivity", w
    checked.append("right-distributivity")
    w = _kernels.first_right_distrib_violation(table, A.add_table)
    if w is not None:
        return "right-distributivity", w
    return None


def verify_prelie_axioms(P: PreLieRing) -> AxiomReport:
    checked: list[str] = []
    bad = _biadditive(P.additive, P.dot, checked)
    if bad:
        return AxiomReport(False, bad[0], bad[1], checked)
    checked.append("pre-lie")
    w = _kernels.first_prelie_violation(P.dot, P.additive.add_table, P.additive.neg_table)
    if w is not None:
        return AxiomReport(False, "pre-lie", w, checked)
    return AxiomReport(True, checked=checked)


def verify_lie_axioms(L: LieRing) -> AxiomReport:
    checked: list[str] = []
    bad = _biadditive(L.additive, L.bracket, checked)
    if bad:
        return AxiomReport(False, bad[0], bad[1], checked)
    checked.append("alternating")
    diag = np.flatnonzero(np.diagonal(L.bracket))
    if diag.size:
        return AxiomReport(False, "alternating", (int(diag[0]),), checked)
    checked.append("jacobi")
    w = _kernels.first_jacobi_violation(L.bracket, L.additive.add_table)
    if w is not None:
        return AxiomReport(False, "jacobi", w, checked)
    return AxiomReport(True, checked=checked)


def require_prelie(P: PreLieRing) -> PreLieRing:
    rep = verify_prelie_axioms(P)
    if not rep:
        raise AxiomError(rep)
    return P


def associated_lie(P: PreLieRing) -> LieRing:
    """``[a, b] = a.b - b.a``; the Lie axioms are re-verified."""
    L = LieRing(P.additive, P.bracket_table, name=P.name)
    rep = verify_lie_axioms(L)
    if not rep:
        raise InternalCheckError(f"commutator of a pre-Lie product is not Lie: {rep}")
    return L


def _bracket_in_multiple(A: AbelianPGroup, table: np.ndarray) -> bool:
    k = A.p if A.p != 2 else 4
    target = A.multiple_subgroup(k)
    return bool(target.mask[table].all())


def is_powerful_lie(L: LieRing) -> bool:
    """``L^2 <= pL`` (``4L`` when ``p = 2``)."""
    return _bracket_in_multiple(L.additive, L.bracket)


def is_powerful_prelie(P: PreLieRing) -> bool:
    return _bracket_in_multiple(P.additive, P.bracket_table)


def lie_power_chain(L: LieRing) -> list[tuple[int, bool]]:
    """``(i, L^{i+1} <= p^i L)`` for ``i = 1, 2, ...`` until ``L^{i+1}`` is 0.

    ``L^1 = L`` and ``L^{i+1}`` is spanned by ``[L, L^i]``.  When ``L`` is not
    nilpotent the chain is followed until it stabilises.
    """
    from .chains import product_span

    A = L.additive
    whole = A.whole()
    cur = whole
    out = []
    i = 1
    while True:
        nxt = product_span(A, L.bracket, whole, cur)
        out.append((i, bool(nxt <= A.multiple_subgroup(L.p**i))))
        if nxt.is_trivial() or nxt == cur:
            return out
        cur = nxt
        i += 1


def prelie_nilpotency(P: PreLieRing) -> NilpotencyReport:
    return nilpotency_chains(P.additive, P.dot)


def scale_product(P: PreLieRing, c: int) -> PreLieRing:
    """The ring with product ``c (a.b)``; the pre-Lie identity is re-checked."""
    A = P.additive
    dot = A.smul_table(int(c))[P.dot]
    Q = PreLieRing(A, dot, name=P.name)
    rep = verify_prelie_axioms(Q)
    if not rep:
        raise InternalCheckError(f"scaling broke the pre-Lie identity: {rep}")
    return Q


# ---------------------------------------------------------------------------
# constructors


def bilinear_table(A: AbelianPGroup, fn) -> np.ndarray:
    """Rank table of ``fn(ca, cb)`` on coordinate arrays, built row block by row block.

    ``fn`` receives arrays of shape ``(r, 1, d)`` and ``(1, N, d)`` and returns
    ``(r, N, d)`` integer coordinates (reduced by the caller).
    """
    c = A.coord_table
    out = np.empty((A.order, A.order), dtype=np.int32)
    step = max(1, 2_000_000 // max(1, A.order * max(1, A.rank_count)))
    for lo in range(0, A.order, step):
        ca = c[lo : lo + step, None, :]
        cb = c[None, :, :]
        out[lo : lo + step] = A.rank_of_coords(fn(ca, cb))
    return out


def zero_prelie(A: AbelianPGroup) -> PreLieRing:
    return PreLieRing(A, np.zeros((A.order, A.order), dtype=np.int32), name="zero")


def witt(p: int, d: int, e: int = 1) -> PreLieRing:
    """Truncated ``t^2, ..., t^(d+1)`` over ``Z/p^e`` with ``t^a . t^b = b t^(a+b-1)``.

    This is ``u . v = u v'`` on polynomials modulo degree ``d+2``: pre-Lie,
    not associative for ``d >= 2``, strongly nilpotent of index ``d+1``.
    """
    A = AbelianPGroup(p, [e] * d)
    # coordinate j <-> t^(j+2), weight j+1
    def fn(ca, cb):
        out = np.zeros(np.broadcast_shapes(ca.shape, cb.shape), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                k = i + j + 1  # t^(i+2) t^(j+2) -> (j+2) t^(i+j+3)
                if k < d:
                    out[..., k] += (j + 2) * ca[..., i] * cb[..., j]
        return out

    return PreLieRing(A, bilinear_table(A, fn), name=f"witt({p},{d},{e})")


def associative_multiple(p: int, n: int) -> PreLieRing:
    """``pZ/p^(n+1)`` presented as ``Z/p^n`` (``u <-> pu``) with the ring product.

    ``(pu)(pv) = p (p u v)``, so ``u . v = p u v`` modulo ``p^n``.
    """
    A = AbelianPGroup(p, [n])
    return PreLieRing(A, bilinear_table(A, lambda ca, cb: p * ca * cb), name=f"p*Z/{p}^{n + 1}")


def prelie_from_json(doc: dict) -> PreLieRing:
    from .serialize import group_from_json, table_from_json

    A = group_from_json(doc)
    P = PreLieRing(A, table_from_json(doc, "dot", A))
    require_prelie(P)
    return P
