"""Group of flows of a strongly nilpotent pre-Lie ring, and the round trip.

For a pre-Lie ring with ``L_a(b) = a.b`` whose products of ``k`` elements
vanish (``k <= p-1``)::

    W(a)    = sum_{i>=0} L_a^i(a) / (i+1)!
    Omega   = W^{-1}
    a o b   = a + sum_{i>=0} L_{Omega(a)}^i(b) / i!

All denominators are below ``p`` and are inverted modulo ``p^e1``.  When the
product is associative this is ``a o b = a + b + a.b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .brace import Brace, quotient_brace, verify_brace_axioms
from .errors import HypothesisError, InternalCheckError
from .numtheory import geometric_unit, inverse_factorials
from .prelie import PreLieRing, prelie_nilpotency, scale_product


@dataclass
class FlowsContext:
    P: PreLieRing
    k: int
    inv_fact: list[int]

    @property
    def additive(self):
        return self.P.additive


def flows_context(P: PreLieRing) -> FlowsContext:
    idx = prelie_nilpotency(P).strong_index
    if idx is None or idx > P.p - 1:
        raise HypothesisError(
            "strongly nilpotent of index <= p-1",
            f"pre-Lie ring has strong index {idx} with p={P.p}",
        )
    m = P.p ** (P.additive.exponent or 1)
    return FlowsContext(P, idx, inverse_factorials(idx + 1, m))


def _scaled(ctx: FlowsContext, coef: int, x: np.ndarray) -> np.ndarray:
    return ctx.additive.smul_table(coef)[x]


def w_table(ctx: FlowsContext) -> np.ndarray:
    """``W(a)`` for every ``a``."""
    A, dot = ctx.additive, ctx.P.dot
    a = np.arange(A.order)
    term = a.copy()
    total = np.zeros(A.order, dtype=np.int64)
    # L_a^i(a) is a product of i+1 elements, zero once i+1 >= k
    for i in range(ctx.k - 1):
        total = A.add_table[total, _scaled(ctx, ctx.inv_fact[i + 1], term)]
        term = dot[a, term]
    if term.any() and ctx.k > 1:
        raise InternalCheckError("L_a^(k-1)(a) != 0 although products of k elements vanish")
    return total


def w_map(ctx: FlowsContext, a: int) -> int:
    return int(w_table(ctx)[int(a)])


def omega_table(ctx: FlowsContext, w: np.ndarray | None = None) -> np.ndarray:
    """``Omega = W^{-1}`` by the iteration ``x <- a - (W(x) - x)``.

    ``W(x) - x`` only involves products of at least two elements, so each
    step fixes one more degree and ``k`` steps suffice.
    """
    A = ctx.additive
    if w is None:
        w = w_table(ctx)
    a = np.arange(A.order)
    x = a.copy()
    for _ in range(ctx.k + 1):
        nxt = A.add_table[a, A.neg_table[A.add_table[w[x], A.neg_table[x]]]]
        if np.array_equal(nxt, x):
            break
        x = nxt
    if not np.array_equal(w[x], a):
        raise InternalCheckError("fixed-point iteration for Omega did not converge within k steps")
    return x


def omega(ctx: FlowsContext, a: int) -> int:
    return int(omega_table(ctx)[int(a)])


def flows_circ_table(ctx: FlowsContext) -> np.ndarray:
    A, dot = ctx.additive, ctx.P.dot
    om = omega_table(ctx)
    N = A.order
    term = np.broadcast_to(np.arange(N)[None, :], (N, N)).copy()
    total = np.broadcast_to(np.arange(N)[:, None], (N, N)).copy()
    rows = om[:, None]
    for i in range(ctx.k):
        total = A.add_table[total, _scaled(ctx, ctx.inv_fact[i], term)]
        term = dot[rows, term]
    return total


def flows_circ(ctx: FlowsContext, a: int, b: int) -> int:
    A, dot = ctx.additive, ctx.P.dot
    x = int(omega_table(ctx)[int(a)])
    term, total = int(b), int(a)
    for i in range(ctx.k):
        total = A.add(total, A.scalar_mul(ctx.inv_fact[i], term))
        term = int(dot[x, term])
    return total


def group_of_flows(P: PreLieRing) -> Brace:
    ctx = flows_context(P)
    circ = flows_circ_table(ctx)
    B = Brace.from_circ(P.additive, circ, name=f"flows({P.name})" if P.name else "flows")
    rep = verify_brace_axioms(B)
    if not rep:
        raise InternalCheckError(f"group of flows is not a brace: {rep}")
    return B


# ---------------------------------------------------------------------------
# round trip


@dataclass
class RoundTripReport:
    variant: str
    quotient_pass: bool | None = None
    quotient_mismatch: tuple | None = None
    strong_pass: bool | None = None
    strong_mismatch: tuple | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in (self.quotient_pass, self.strong_pass))

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "pass": self.passed,
            "quotient": {"pass": self.quotient_pass, "first_mismatch": self.quotient_mismatch},
            "strong": {"pass": self.strong_pass, "first_mismatch": self.strong_mismatch},
            "notes": list(self.notes),
        }


def _first_mismatch(X: np.ndarray, Y: np.ndarray):
    bad = X != Y
    if not bad.any():
        return None
    a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return int(a), int(b)


def roundtrip_scalar(B: Brace, variant: str = "primary") -> int:
    """``-(1 + p + ... + p^n)``; the upper-limit variant runs the sum to ``p^p``."""
    top = B.p if variant == "upper-limit" else B.n
    return geometric_unit(B.p, top)


def _compare(ring: PreLieRing, c: int, target: Brace):
    try:
        got = group_of_flows(scale_product(ring, c))
    except (HypothesisError, InternalCheckError) as exc:
        return False, None, str(exc)
    w = _first_mismatch(got.star, target.star)
    return w is None, w, None


def roundtrip_check(B: Brace, variant: str = "primary", *, strong: bool | None = None) -> RoundTripReport:
    """Flows of the scaled pre-Lie rings against the brace they came from.

    Quotient case: flows of ``c . bullet(B)`` against ``B/ann(p^2)``.
    Strong case (index below ``p``): flows of ``c . strong_dot(B)`` against ``B``.
    ``c`` is :func:`roundtrip_scalar`.  ``strong=None`` runs the strong case
    whenever its hypothesis holds.
    """
    from .transform import averaged_table, bullet, strong_index_below_p

    B.require_p_gt_n1("round trip")
    rep = RoundTripReport(variant)
    c = roundtrip_scalar(B, variant)

    res = bullet(B, cross_check=False)
    ring = res.ring
    if variant != "primary":
        ring = _bullet_variant(B, res, variant)
    target = quotient_brace(B, res.view.ideal)
    ok, w, note = _compare(ring, c, target)
    rep.quotient_pass, rep.quotient_mismatch = ok, w
    if note:
        rep.notes.append(f"quotient: {note}")

    if strong is not False:
        try:
            strong_index_below_p(B)
        except HypothesisError as exc:
            if strong:
                raise
            rep.notes.append(f"strong case skipped: {exc}")
        else:
            P = PreLieRing(B.additive, averaged_table(B, variant))
            ok, w, note = _compare(P, c, B)
            rep.strong_pass, rep.strong_mismatch = ok, w
            if note:
                rep.notes.append(f"strong: {note}")
    return rep


def _bullet_variant(B, res, variant):
    """The quotient ring built from a non-primary averaged product."""
    from .transform import averaged_table

    view, sec = res.view, res.section
    T = averaged_table(B, variant)
    px = B.additive.smul_table(B.p)[view.rep]
    table = view.label[sec.map[T[px[:, None], view.rep[None, :]]]]
    return PreLieRing(view.quotient, table)
