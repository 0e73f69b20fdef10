"""Finite left braces stored by their ``*`` table.

``a o b = a + b + a*b`` and ``lambda_a(b) = a*b + b`` are derived on demand.
All elements are canonical ranks of the additive group.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .abelian import AbelianPGroup, Section, quotient_section
from .chains import NilpotencyReport, nilpotency_chains
from .errors import AxiomError, HypothesisError, InternalCheckError, StructuralError
from .numtheory import binomial
from .subgroups import Subgroup, closure

P_GT_N1 = "p > n+1"


@dataclass
class AxiomReport:
    """Outcome of an exhaustive axiom sweep.

    ``identity`` names the first identity that failed and ``witness`` holds
    the lexicographically first violating tuple of ranks.
    """

    ok: bool
    identity: str | None = None
    witness: tuple | None = None
    checked: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"pass ({', '.join(self.checked)})"
        return f"fail: {self.identity} at {self.witness}"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "identity": self.identity,
            "witness": list(self.witness) if self.witness is not None else None,
            "checked": list(self.checked),
        }


def check_table(A: AbelianPGroup, table, name: str) -> np.ndarray:
    t = np.asarray(table)
    if t.shape != (A.order, A.order):
        raise StructuralError(f"{name} table must be {A.order}x{A.order}, got {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        raise StructuralError(f"{name} table must hold integer ranks")
    if t.size and (t.min() < 0 or t.max() >= A.order):
        raise StructuralError(f"{name} table holds ranks outside [0, {A.order})")
    out = np.ascontiguousarray(t, dtype=np.int32)
    out.setflags(write=False)
    return out


class Brace:
    def __init__(self, additive: AbelianPGroup, star, *, name: str = ""):
        self.additive = additive
        self.star = check_table(additive, star, "star")
        self.name = name

    @classmethod
    def from_circ(cls, additive: AbelianPGroup, circ, *, name: str = "") -> Brace:
        circ = check_table(additive, circ, "circ")
        add, neg = additive.add_table, additive.neg_table
        star = add[circ, neg[add]]
        return cls(additive, star, name=name)

    # -- shape -------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.additive.p

    @property
    def n(self) -> int:
        return self.additive.n

    @property
    def order(self) -> int:
        return self.additive.order

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Brace{label}(p={self.p}, exponents={list(self.additive.exponents)})"

    def __eq__(self, other):
        if not isinstance(other, Brace):
            return NotImplemented
        return self.additive == other.additive and bool(np.array_equal(self.star, other.star))

    __hash__ = None

    # -- derived operations --------------------------------------------------

    @cached_property
    def circ_table(self) -> np.ndarray:
        A = self.additive
        out = A.add_table[A.add_table, self.star].astype(np.int32)
        out.setflags(write=False)
        return out

    @cached_property
    def lambda_table(self) -> np.ndarray:
        """Row ``a`` is the map ``lambda_a``."""
        b = np.arange(self.order)
        out = self.additive.add_table[self.star, b[None, :]].astype(np.int32)
        out.setflags(write=False)
        return out

    @cached_property
    def circ_inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.circ_table == 0)
        inv = np.full(self.order, -1, dtype=np.int64)
        inv[rows] = cols
        if (inv < 0).any():
            raise StructuralError("(A, o) has elements without an inverse")
        return inv

    def op(self, a: int, b: int) -> int:
        return int(self.star[a, b])

    def circ(self, a: int, b: int) -> int:
        return int(self.circ_table[a, b])

    def lam(self, a: int, b: int) -> int:
        return int(self.lambda_table[a, b])

    def satisfies_p_gt_n1(self) -> bool:
        return self.p > self.n + 1

    def require_p_gt_n1(self, what: str):
        if not self.satisfies_p_gt_n1():
            raise HypothesisError(P_GT_N1, f"{what} needs p={self.p} > n+1={self.n + 1}")

    def to_json(self) -> dict:
        return {**self.additive.to_json(), "star": self.star.tolist()}


# ---------------------------------------------------------------------------
# axioms


def verify_brace_axioms(B: Brace) -> AxiomReport:
    """Exhaustive check of the left-brace axioms on the ``*`` table.

    Identities, in order: ``0*a = 0``, ``a*(b+c) = a*b + a*c``, each
    ``lambda_a`` bijective, and associativity of ``o``.  Together with
    ``a o 0 = a`` (implied by distributivity) these make ``(A, o)`` a group and
    ``a o (b+c) + a = a o b + a o c``.
    """
    A = B.additive
    checked = []
    bad = np.flatnonzero(B.star[0] != 0)
    checked.append("zero-left-annihilates")
    if bad.size:
        return AxiomReport(False, "zero-left-annihilates", (0, int(bad[0])), checked)
    checked.append("left-distributivity")
    w = _kernels.first_left_distrib_violation(B.star, A.add_table)
    if w is not None:
        return AxiomReport(False, "left-distributivity", w, checked)
    checked.append("lambda-bijective")
    lam = B.lambda_table
    srt = np.sort(lam, axis=1)
    bad_rows = np.flatnonzero((srt != np.arange(B.order)[None, :]).any(axis=1))
    if bad_rows.size:
        a = int(bad_rows[0])
        return AxiomReport(False, "lambda-bijective", (a,), checked)
    checked.append("circ-associativity")
    w = _kernels.first_assoc_violation(B.circ_table)
    if w is not None:
        return AxiomReport(False, "circ-associativity", w, checked)
    return AxiomReport(True, checked=checked)


def require_brace(B: Brace) -> Brace:
    rep = verify_brace_axioms(B)
    if not rep:
        raise AxiomError(rep)
    return B


# ---------------------------------------------------------------------------
# powers


def circ_power(B: Brace, a: int, k: int, *, check: bool = False) -> int:
    """``a o a o ... o a`` (``k`` copies) by iteration.

    With ``check=True`` the value is compared with the binomial expansion
    ``sum_i C(k, i) a_i`` where ``a_1 = a`` and ``a_{i+1} = a * a_i``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    x = int(a)
    for _ in range(k - 1):
        x = B.circ(x, a)
    if check:
        y = circ_power_binomial(B, a, k)
        if y != x:
            raise InternalCheckError(f"circ power {x} != binomial form {y} for a={a}, k={k}")
    return x


def circ_power_binomial(B: Brace, a: int, k: int) -> int:
    A = B.additive
    total, ai = 0, int(a)
    for i in range(1, k + 1):
        total = A.add(total, A.scalar_mul(binomial(k, i), ai))
        ai = B.op(a, ai)
    return total


def circ_power_table(B: Brace, k: int) -> np.ndarray:
    """``a -> a^{o k}`` for every ``a`` (square-and-multiply on the circ table)."""
    circ = B.circ_table
    res = np.zeros(B.order, dtype=np.int64)
    base = np.arange(B.order, dtype=np.int64)
    while k:
        if k & 1:
            res = circ[res, base]
        base = circ[base, base]
        k >>= 1
    return res


def circ_power_binomial_table(B: Brace, k: int) -> np.ndarray:
    """Binomial-sum form of ``a^{o k}`` for every ``a``."""
    A = B.additive
    add = A.add_table
    a = np.arange(B.order)
    ai = a.copy()
    total = np.zeros(B.order, dtype=np.int64)
    for i in range(1, k + 1):
        total = add[total, A.smul_table(binomial(k, i))[ai]]
        ai = B.star[a, ai]
    return total


def circ_order(B: Brace, a: int) -> int:
    x, k = int(a), 1
    while x != 0:
        x = B.circ(x, a)
        k += 1
    return k


# ---------------------------------------------------------------------------
# ideals and quotients


@dataclass
class BraceIdeal:
    parent: Brace
    carrier: Subgroup
    hypothesis_ok: bool = True

    @property
    def order(self) -> int:
        return self.carrier.order


def ideal_violation(B: Brace, sub: Subgroup):
    """First ``(i, a)`` with ``i*a`` or ``a*i`` outside ``sub``, or ``None``."""
    rows = B.star[sub.elements]
    bad = ~sub.mask[rows]
    if bad.any():
        i, a = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return ("i*a", int(sub.elements[i]), int(a))
    cols = B.star[:, sub.elements]
    bad = ~sub.mask[cols]
    if bad.any():
        a, i = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return ("a*i", int(sub.elements[i]), int(a))
    return None


def is_ideal(B: Brace, sub: Subgroup) -> bool:
    return ideal_violation(B, sub) is None


def make_ideal(B: Brace, sub: Subgroup) -> BraceIdeal:
    w = ideal_violation(B, sub)
    if w is not None:
        raise StructuralError(f"subgroup is not an ideal: {w}")
    return BraceIdeal(B, sub)


def ann(B: Brace, i: int) -> BraceIdeal:
    """``ann(p^i)``, elements of additive order dividing ``p^i``.

    Below ``p > n+1`` the set is returned with ``hypothesis_ok=False`` and is
    not required to be an ideal.
    """
    sub = B.additive.annihilator(i)
    ok = B.satisfies_p_gt_n1()
    if ok and not is_ideal(B, sub):
        raise InternalCheckError(f"ann(p^{i}) is not an ideal although p > n+1")
    return BraceIdeal(B, sub, hypothesis_ok=ok)


def pA_ideal(B: Brace, i: int = 1) -> BraceIdeal:
    """``p^i A`` as an ideal (requires ``p > n+1``)."""
    B.require_p_gt_n1("p^i A is an ideal")
    sub = B.additive.multiple_subgroup(B.p**i)
    if not is_ideal(B, sub):
        raise InternalCheckError(f"p^{i}A is not an ideal although p > n+1")
    return BraceIdeal(B, sub)


@dataclass
class PowerSubgroupReport:
    """``A^{o p^i}`` against ``p^i A`` and the raw power image."""

    i: int
    generated: Subgroup
    raw_image: Subgroup
    multiple: Subgroup

    @property
    def equal(self) -> bool:
        return self.generated == self.multiple and self.raw_image == self.multiple


def circ_power_subgroup(B: Brace, i: int) -> PowerSubgroupReport:
    B.require_p_gt_n1("A^{o p^i} = p^i A")
    powers = circ_power_table(B, B.p**i)
    raw = np.unique(powers)
    gen = closure(B.circ_table, raw, identity=0)
    return PowerSubgroupReport(
        i=i,
        generated=gen,
        raw_image=Subgroup.from_elements(B.order, raw),
        multiple=B.additive.multiple_subgroup(B.p**i),
    )


def quotient_brace_section(B: Brace, I: BraceIdeal | Subgroup) -> tuple[Brace, Section]:
    sub = I.carrier if isinstance(I, BraceIdeal) else I
    w = ideal_violation(B, sub)
    if w is not None:
        raise StructuralError(f"cannot form quotient: not an ideal, witness {w}")
    sec = quotient_section(B.additive, sub)
    star = sec.label[B.star[np.ix_(sec.rep, sec.rep)]]
    Q = Brace(sec.group, star, name=f"{B.name}/I" if B.name else "")
    return Q, sec


def quotient_brace(B: Brace, I: BraceIdeal | Subgroup) -> Brace:
    Q, _ = quotient_brace_section(B, I)
    rep = verify_brace_axioms(Q)
    if not rep:
        raise InternalCheckError(f"quotient brace fails axioms: {rep}")
    return Q


# ---------------------------------------------------------------------------
# nilpotency and identities


def brace_nilpotency(B: Brace) -> NilpotencyReport:
    return nilpotency_chains(B.additive, B.star)


def engel_expansion_sides(B: Brace, a: int, b: int, c: int, s: int) -> tuple[int, int]:
    """Both sides of the alternating expansion of ``(a+b)*c`` for ``A^s = 0``."""
    A = B.additive
    lhs = B.op(A.add(a, b), c)
    rhs = A.add(B.op(a, c), B.op(b, c))
    d, dp = int(a), int(b)
    for i in range(2 * s + 1):
        term = A.sub(B.op(B.op(d, dp), c), B.op(d, B.op(dp, c)))
        if i % 2 == 0:
            term = A.neg(term)
        rhs = A.add(rhs, term)
        d, dp = A.add(d, dp), B.op(d, dp)
    return lhs, rhs


def _left_index(B: Brace, s: int | None) -> int:
    if s is not None:
        return s
    rep = brace_nilpotency(B)
    if rep.left_index is None:
        raise HypothesisError("left nilpotent", "the expansion needs A^s = 0")
    return rep.left_index


def verify_engel_expansion(B: Brace, a: int, b: int, c: int, s: int | None = None) -> bool:
    lhs, rhs = engel_expansion_sides(B, a, b, c, _left_index(B, s))
    return lhs == rhs


def sweep_engel_expansion(B: Brace, *, exhaustive_limit: int = 343, samples: int = 100_000, seed: int = 0):
    """First violating triple of the expansion, or ``None``.

    Exhaustive up to ``exhaustive_limit`` elements; above that ``samples``
    triples drawn with a fixed seed (``a`` ranges over sampled rows, ``b, c``
    over sampled columns, so the sweep stays vectorised).
    """
    s = _left_index(B, None)
    A = B.additive
    if B.order <= exhaustive_limit:
        return _kernels.first_engel_violation(B.star, A.add_table, A.neg_table, 2 * s)
    rng = np.random.default_rng(seed)
    k = max(1, round(samples ** (1 / 3)) + 1)
    xs = np.sort(rng.choice(B.order, size=min(k, B.order), replace=False))
    ys = np.sort(rng.choice(B.order, size=min(k, B.order), replace=False))
    zs = np.sort(rng.choice(B.order, size=min(k, B.order), replace=False))
    return _kernels.first_engel_violation(B.star, A.add_table, A.neg_table, 2 * s, xs, ys, zs)


def pA_embedding(A: AbelianPGroup):
    """``pA`` presented as ``+ Z/p^(ei-1)``.

    Returns ``(Q, emb, back)``: ``emb[u]`` is ``p`` times the lift of ``u``
    placed in ``A``; ``back[a]`` is the rank in ``Q`` of ``a`` in ``pA``
    (``-1`` outside ``pA``).
    """
    keep = [j for j, e in enumerate(A.exponents) if e > 1]
    Q = AbelianPGroup(A.p, [A.exponents[j] - 1 for j in keep], check_cap=False)
    full = np.zeros((Q.order, A.rank_count), dtype=np.int64)
    for k, j in enumerate(keep):
        full[:, j] = Q.coord_table[:, k] * A.p
    emb = A.rank_of_coords(full)
    back = np.full(A.order, -1, dtype=np.int64)
    back[emb] = np.arange(Q.order)
    return Q, emb, back


def sub_brace_pA(B: Brace) -> Brace:
    """The brace ``pA`` (relabelled on ``+ Z/p^(ei-1)``).

    Checks that its strong nilpotency index is at most ``p-1`` and that
    ``p^(p-1) A = 0``.
    """
    B.require_p_gt_n1("pA is a strongly nilpotent brace")
    Q, emb, back = pA_embedding(B.additive)
    prods = B.star[np.ix_(emb, emb)]
    if (back[prods] < 0).any():
        raise InternalCheckError("pA is not closed under *")
    sub = Brace(Q, back[prods], name=f"p({B.name})" if B.name else "")
    idx = brace_nilpotency(sub).strong_index
    if idx is None or idx > B.p - 1:
        raise InternalCheckError(f"pA has strong nilpotency index {idx} > p-1")
    if (B.additive.smul_table(B.p ** (B.p - 1)) != 0).any():
        raise InternalCheckError("p^(p-1) A != 0")
    return sub


def is_powerful_brace(B: Brace) -> bool:
    """``a o b - b o a`` lies in ``pA`` for all ``a, b``."""
    A = B.additive
    diff = A.add_table[B.circ_table, A.neg_table[B.circ_table.T]]
    pA = A.multiple_subgroup(B.p)
    return bool(pA.mask[diff].all())


def fix_subgroup(B: Brace, a: int) -> Subgroup:
    """``Fix(a) = {b : a*b = 0}``, the fixed points of ``lambda_a``."""
    return Subgroup(B.star[int(a)] == 0)


def adjoint_group(B: Brace):
    """Cayley table of ``(A, o)``; identity is rank 0."""
    from .grouplie import FiniteGroupTable

    return FiniteGroupTable(B.circ_table, identity=0, verify=False, p=B.p)
