"""From a brace to pre-Lie rings.

``dot_pA``      the xi-averaged product on ``pA``;
``bullet``      the induced pre-Lie ring on ``A/ann(p^2)``;
``strong_dot``  the averaged product on all of ``A`` for strongly nilpotent braces
                of index below ``p``.

Every table here is built from the brace's ``*`` table and the constant
``xi`` reduced modulo ``p^e1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .abelian import AbelianPGroup, Section, quotient_section
from .brace import AxiomReport, Brace, ann, brace_nilpotency, pA_embedding
from .errors import HypothesisError, InternalCheckError, StructuralError
from .numtheory import xi as xi_constant
from .prelie import PreLieRing, verify_prelie_axioms

# Variants of the averaged product:
#   "primary"     sum over i = 0..p-2
#   "upper-limit" sum over i = 0..p-1
#   "p-factor"    primary sum applied to (p a, b)
VARIANTS = ("primary", "upper-limit", "p-factor")


def _xi_powers(B: Brace) -> list[int]:
    e1 = B.additive.exponent or 1
    return xi_constant(B.p).powers(min(e1, B.p), count=B.p)


def averaged_table(B: Brace, variant: str = "primary") -> np.ndarray:
    """``T[a, b] = sum_i xi^(p-1-i) ((xi^i a) * b)`` over every ``a, b``."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    A = B.additive
    p = B.p
    xs = _xi_powers(B)
    top = p - 1 if variant == "upper-limit" else p - 2
    cols = np.arange(A.order)
    total = np.zeros((A.order, A.order), dtype=np.int64)
    for i in range(top + 1):
        rows = A.smul_table(xs[i])
        prod = B.star[rows[:, None], cols[None, :]]
        total = A.add_table[total, A.smul_table(xs[p - 1 - i])[prod]]
    if variant == "p-factor":
        total = total[A.smul_table(p)]
    return total


def _require(B: Brace, what: str):
    B.require_p_gt_n1(what)


@dataclass
class DotPA:
    """The averaged product evaluated on ``A x A`` together with its ring on ``pA``.

    ``ring`` lives on ``+ Z/p^(ei-1)``; ``embed[u]`` is the element of ``pA``
    with ring rank ``u``.
    """

    brace: Brace
    table: np.ndarray
    ring: PreLieRing
    embed: np.ndarray
    back: np.ndarray

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @property
    def pA(self) -> np.ndarray:
        return np.sort(self.embed)

    def verify(self) -> AxiomReport:
        """Distributivity and the pre-Lie identity on the domains where they hold.

        ``(a+b).c`` for ``a, b`` in ``pA``, ``c`` in ``A``; ``a.(b+c)`` for ``a``
        in ``pA``, ``b, c`` in ``A``; the pre-Lie identity for ``x, y`` in
        ``pA``, ``z`` in ``A``.
        """
        A = self.brace.additive
        pa, every = self.pA, np.arange(A.order)
        checked = ["left-additivity(pA,pA,A)"]
        w = _kernels.first_right_distrib_violation(self.table, A.add_table, pa, pa, every)
        if w is not None:
            return AxiomReport(False, checked[-1], w, checked)
        checked.append("right-additivity(pA,A,A)")
        w = _kernels.first_left_distrib_violation(self.table, A.add_table, pa, every, every)
        if w is not None:
            return AxiomReport(False, checked[-1], w, checked)
        checked.append("pre-lie(pA,pA,A)")
        w = _kernels.first_prelie_violation(self.table, A.add_table, A.neg_table, pa, pa, every)
        if w is not None:
            return AxiomReport(False, checked[-1], w, checked)
        return AxiomReport(True, checked=checked)


def dot_pA(B: Brace, variant: str = "primary") -> DotPA:
    _require(B, "the averaged product on pA")
    T = averaged_table(B, variant)
    Q, emb, back = pA_embedding(B.additive)
    sub = T[np.ix_(emb, emb)]
    if (back[sub] < 0).any():
        raise InternalCheckError("averaged product of pA elements left pA")
    ring = PreLieRing(Q, back[sub], name=f"dot_pA({B.name})" if B.name else "dot_pA")
    return DotPA(B, T, ring, emb, back)


# ---------------------------------------------------------------------------
# pullback and the quotient by ann(p^2)


class PullbackSection:
    """A section ``pA -> A`` of multiplication by ``p``.

    The canonical section divides each coordinate by ``p``.  With
    ``alternative=True`` a multiple of a fixed element of order ``p`` is added,
    which gives a different section with the same image modulo ``ann(p)``.
    """

    def __init__(self, B: Brace, alternative: bool = False):
        A = B.additive
        self.brace = B
        self.alternative = alternative
        c = A.coord_table
        inside = (c % B.p == 0).all(axis=1)
        pull = np.full(A.order, -1, dtype=np.int64)
        pull[inside] = A.rank_of_coords(c[inside] // B.p)
        if alternative and A.rank_count:
            unit = [0] * A.rank_count
            unit[0] = B.p ** (A.exponents[0] - 1)
            u = A.rank(unit)
            shift = np.flatnonzero(inside) % B.p
            offs = np.array([A.scalar_mul(int(k), u) for k in range(B.p)], dtype=np.int64)
            pull[inside] = A.add_table[pull[inside], offs[shift]]
        self.map = pull

    def __call__(self, a: int) -> int:
        x = int(self.map[int(a)])
        if x < 0:
            raise StructuralError(f"{a} is not in pA")
        return x

    def check(self, qv: QuotientView) -> AxiomReport:
        """``p x = a`` on ``pA`` plus additivity and homogeneity modulo ``ann(p^2)``."""
        A = self.brace.additive
        pa = np.flatnonzero(self.map >= 0)
        checked = ["section"]
        back = A.smul_table(self.brace.p)[self.map[pa]]
        if (back != pa).any():
            a = int(pa[np.argmax(back != pa)])
            return AxiomReport(False, "section", (a,), checked)
        checked.append("additive-mod-ann(p^2)")
        lab = qv.label
        lhs = qv.quotient.add_table[lab[self.map[pa]][:, None], lab[self.map[pa]][None, :]]
        rhs = lab[self.map[A.add_table[np.ix_(pa, pa)]]]
        if (lhs != rhs).any():
            i, j = np.unravel_index(int(np.argmax(lhs != rhs)), lhs.shape)
            return AxiomReport(False, checked[-1], (int(pa[i]), int(pa[j])), checked)
        checked.append("homogeneous-mod-ann(p^2)")
        for m in range(self.brace.p**2):
            left = qv.quotient.smul_table(m)[lab[self.map[pa]]]
            right = lab[self.map[A.smul_table(m)[pa]]]
            if (left != right).any():
                return AxiomReport(False, checked[-1], (m, int(pa[np.argmax(left != right)])), checked)
        return AxiomReport(True, checked=checked)


def pullback(B: Brace, alternative: bool = False) -> PullbackSection:
    return PullbackSection(B, alternative)


class QuotientView:
    """``A/ann(p^2)`` with coset labels and minimal-rank representatives."""

    def __init__(self, B: Brace):
        self.brace = B
        self.ideal = ann(B, 2)
        self.section: Section = quotient_section(B.additive, self.ideal.carrier)

    @property
    def quotient(self) -> AbelianPGroup:
        return self.section.group

    @property
    def label(self) -> np.ndarray:
        return self.section.label

    @property
    def rep(self) -> np.ndarray:
        return self.section.rep

    def coset(self, a: int) -> int:
        return int(self.label[int(a)])

    def same(self, a: int, b: int) -> bool:
        return self.coset(a) == self.coset(b)


@dataclass
class BulletResult:
    """The pre-Lie ring on ``A/ann(p^2)`` and the tables used to build it."""

    brace: Brace
    view: QuotientView
    section: PullbackSection
    odot: np.ndarray
    ring: PreLieRing
    checks: dict = field(default_factory=dict)


def odot_table(B: Brace, view: QuotientView, section: PullbackSection) -> np.ndarray:
    """``[a] (.) [b] = [pullback((p a) * b)]`` on minimal representatives."""
    A = B.additive
    pa = A.smul_table(B.p)[view.rep]
    prod = B.star[pa[:, None], view.rep[None, :]]
    return view.label[section.map[prod]]


def odot_representative_violation(B: Brace, view: QuotientView, section: PullbackSection, table=None):
    """First ``(a, b)`` whose ``(.)`` value differs from that of its coset representatives."""
    if table is None:
        table = odot_table(B, view, section)
    A = B.additive
    pa = A.smul_table(B.p)
    lab = view.label
    full = lab[section.map[B.star[pa[:, None], np.arange(A.order)[None, :]]]]
    expect = table[lab[:, None], lab[None, :]]
    bad = full != expect
    if bad.any():
        a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(a), int(b)
    return None


def odot(B: Brace, a: int, b: int) -> int:
    """Coset label of ``[a] (.) [b]``."""
    _require(B, "the (.) product on A/ann(p^2)")
    view = QuotientView(B)
    sec = pullback(B)
    return int(view.label[sec(B.star[B.additive.scalar_mul(B.p, a), b])])


def bullet_from_odot(B: Brace, Q: AbelianPGroup, od: np.ndarray) -> np.ndarray:
    p = B.p
    xs = _xi_powers(B)
    u = np.arange(Q.order)
    total = np.zeros((Q.order, Q.order), dtype=np.int64)
    for i in range(p - 1):
        rows = Q.smul_table(xs[i])
        val = od[rows[:, None], u[None, :]]
        total = Q.add_table[total, Q.smul_table(xs[p - 1 - i])[val]]
    return total


def bullet(B: Brace, *, alternative_section: bool = False, cross_check: bool = True) -> BulletResult:
    _require(B, "the pre-Lie ring on A/ann(p^2)")
    view = QuotientView(B)
    sec = pullback(B, alternative_section)
    od = odot_table(B, view, sec)
    Q = view.quotient
    table = bullet_from_odot(B, Q, od)
    ring = PreLieRing(Q, table, name=f"bullet({B.name})" if B.name else "bullet")
    res = BulletResult(B, view, sec, od, ring)
    if cross_check:
        res.checks["via-dot_pA"] = bullet_dot_violation(res)
    return res


def bullet_dot_violation(res: BulletResult):
    """First coset pair where ``[x].[y]`` differs from ``[pullback((p x) . y)]``."""
    B, view = res.brace, res.view
    T = averaged_table(B)
    px = B.additive.smul_table(B.p)[view.rep]
    alt = view.label[res.section.map[T[px[:, None], view.rep[None, :]]]]
    bad = alt != res.ring.dot
    if bad.any():
        u, v = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(u), int(v)
    return None


@dataclass
class StrongDot:
    brace: Brace
    ring: PreLieRing
    variant: str
    index: int


def strong_index_below_p(B: Brace) -> int:
    idx = brace_nilpotency(B).strong_index
    if idx is None or idx >= B.p:
        raise HypothesisError(
            "strongly nilpotent of index < p", f"strong nilpotency index {idx} with p={B.p}"
        )
    return idx


def strong_dot(B: Brace, variant: str = "primary") -> StrongDot:
    """The averaged product on the whole of ``A``."""
    _require(B, "the averaged product on A")
    idx = strong_index_below_p(B)
    T = averaged_table(B, variant)
    ring = PreLieRing(B.additive, T, name=f"strong_dot({B.name})" if B.name else "strong_dot")
    return StrongDot(B, ring, variant, idx)


def bullet_consistency_violation(res: BulletResult, sd: StrongDot):
    """First ``(a, b)`` with ``[a].[b] != [a . b]``."""
    lab = res.view.label
    lhs = res.ring.dot[lab[:, None], lab[None, :]]
    rhs = lab[sd.ring.dot]
    bad = lhs != rhs
    if bad.any():
        a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(a), int(b)
    return None


def provenance(B: Brace, construction: str, variant: str = "primary") -> dict:
    from .serialize import digest

    x = xi_constant(B.p)
    return {
        "source_brace": digest(B.to_json()),
        "construction": construction,
        "variant": variant,
        "xi": x.value,
        "gamma": x.gamma,
    }


def verify_ring(P: PreLieRing) -> AxiomReport:
    return verify_prelie_axioms(P)
