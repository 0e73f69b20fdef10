"""Finite abelian p-groups Z/p^e1 + ... + Z/p^ed with canonical mixed-radix ranks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _config
from .errors import StructuralError
from .numtheory import is_prime
from .subgroups import Subgroup, closure


class AbelianPGroup:
    """``Z/p^e1 + ... + Z/p^ed`` with ``e1 >= ... >= ed >= 1``.

    Elements are identified with their rank: the mixed-radix integer whose
    most significant digit is the first coordinate.  An empty exponent list is
    the trivial group.
    """

    def __init__(self, p: int, exponents, *, check_cap: bool = True):
        exponents = tuple(int(e) for e in exponents)
        if not is_prime(p):
            raise StructuralError(f"{p} is not prime")
        if any(e < 1 for e in exponents):
            raise StructuralError("exponents must be positive")
        if list(exponents) != sorted(exponents, reverse=True):
            raise StructuralError("exponents must be nonincreasing (canonical form)")
        self.p = p
        self.exponents = exponents
        self.n = sum(exponents)
        self.order = p**self.n
        if check_cap and self.order > _config.table_cap():
            raise StructuralError(
                f"group of order {self.order} exceeds the table cap {_config.table_cap()}"
            )
        self.moduli = tuple(p**e for e in exponents)
        w, weights = 1, []
        for m in reversed(self.moduli):
            weights.append(w)
            w *= m
        self.weights = tuple(reversed(weights))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, AbelianPGroup) and (self.p, self.exponents) == (other.p, other.exponents)

    def __hash__(self):
        return hash((self.p, self.exponents))

    def __repr__(self):
        return f"AbelianPGroup(p={self.p}, exponents={list(self.exponents)})"

    def __len__(self):
        return self.order

    @property
    def rank_count(self) -> int:
        return len(self.exponents)

    @property
    def exponent(self) -> int:
        """``log_p`` of the group exponent."""
        return self.exponents[0] if self.exponents else 0

    def to_json(self) -> dict:
        return {"prime": self.p, "exponents": list(self.exponents)}

    # -- coordinates ---------------------------------------------------------

    def coords(self, rank: int) -> tuple[int, ...]:
        rank = int(rank)
        if not 0 <= rank < self.order:
            raise StructuralError(f"rank {rank} outside group of order {self.order}")
        return tuple((rank // w) % m for w, m in zip(self.weights, self.moduli))

    def rank(self, coords) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.moduli):
            raise StructuralError(f"expected {len(self.moduli)} coordinates, got {len(coords)}")
        return sum((c % m) * w for c, m, w in zip(coords, self.moduli, self.weights))

    @cached_property
    def coord_table(self) -> np.ndarray:
        """``(order, d)`` array of coordinates for every rank."""
        r = np.arange(self.order, dtype=np.int64)
        if not self.moduli:
            return np.zeros((self.order, 0), dtype=np.int64)
        cols = [(r // w) % m for w, m in zip(self.weights, self.moduli)]
        out = np.stack(cols, axis=1)
        out.setflags(write=False)
        return out

    def rank_of_coords(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised inverse of ``coord_table``; reduces each column first."""
        coords = np.asarray(coords, dtype=np.int64)
        if not self.moduli:
            return np.zeros(coords.shape[:-1], dtype=np.int64)
        m = np.array(self.moduli, dtype=np.int64)
        w = np.array(self.weights, dtype=np.int64)
        return ((coords % m) * w).sum(axis=-1)

    # -- arithmetic ----------------------------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coord_table
        s = c[:, None, :] + c[None, :, :]
        out = self.rank_of_coords(s).astype(np.int32)
        out.setflags(write=False)
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        out = self.rank_of_coords(-self.coord_table).astype(np.int32)
        out.setflags(write=False)
        return out

    def smul_table(self, k: int) -> np.ndarray:
        """Array mapping every rank ``a`` to ``k*a``."""
        return self.rank_of_coords(int(k) * self.coord_table)

    def add(self, a: int, b: int) -> int:
        return self.rank(tuple(x + y for x, y in zip(self.coords(a), self.coords(b))))

    def neg(self, a: int) -> int:
        return self.rank(tuple(-x for x in self.coords(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar_mul(self, k: int, a: int) -> int:
        return self.rank(tuple(int(k) * x for x in self.coords(a)))

    def additive_order(self, a: int) -> int:
        c = self.coords(a)
        o = 1
        while any(o * x % m for x, m in zip(c, self.moduli)):
            o *= self.p
        return o

    @cached_property
    def order_table(self) -> np.ndarray:
        """Additive order of every element."""
        out = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        mul_p = self.smul_table(self.p)
        nz = cur != 0
        while nz.any():
            out[nz] *= self.p
            cur = mul_p[cur]
            nz = cur != 0
        return out

    def element(self, x) -> Element:
        if isinstance(x, Element):
            if x.group != self:
                raise StructuralError("element belongs to a different group")
            return x
        if isinstance(x, (tuple, list)):
            return Element(self, self.rank(x))
        return Element(self, self._checked_rank(x))

    def _checked_rank(self, x) -> int:
        x = int(x)
        if not 0 <= x < self.order:
            raise StructuralError(f"rank {x} outside group of order {self.order}")
        return x

    # -- subgroups -----------------------------------------------------------

    def subgroup_closure(self, gens) -> Subgroup:
        return closure(self.add_table, [self._checked_rank(g) for g in gens], identity=0)

    def multiple_subgroup(self, k: int) -> Subgroup:
        """``kA = {k*a}``."""
        return Subgroup.from_elements(self.order, np.unique(self.smul_table(k)))

    def annihilator(self, i: int) -> Subgroup:
        """``{a : p^i a = 0}``."""
        return Subgroup(self.smul_table(self.p**i) == 0)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup.from_elements(self.order, [0], generators=())

    def whole(self) -> Subgroup:
        return Subgroup(np.ones(self.order, dtype=bool))

    def aligned_offsets(self, sub: Subgroup) -> tuple[int, ...] | None:
        """If ``sub`` is ``p^f1 Z/p^e1 + ...`` coordinatewise, return ``(f1, ...)``."""
        c = self.coord_table[sub.elements]
        fs = []
        for j, (e, m) in enumerate(zip(self.exponents, self.moduli)):
            col = c[:, j]
            nz = col[col != 0]
            f = e
            if nz.size:
                v = np.gcd.reduce(nz)
                f = 0
                while v % self.p == 0:
                    v //= self.p
                    f += 1
            fs.append(min(f, e))
        size = self.p ** sum(e - f for e, f in zip(self.exponents, fs))
        if size != sub.order:
            return None
        return tuple(fs)


@dataclass(frozen=True)
class Element:
    """Rank-backed element with operator sugar; arithmetic checks group membership."""

    group: AbelianPGroup
    rank: int

    @property
    def coords(self):
        return self.group.coords(self.rank)

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.group != self.group:
                raise StructuralError("cannot combine elements of different groups")
            return other.rank
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __add__(self, other):
        return Element(self.group, self.group.add(self.rank, self._other(other)))

    def __sub__(self, other):
        return Element(self.group, self.group.sub(self.rank, self._other(other)))

    def __neg__(self):
        return Element(self.group, self.group.neg(self.rank))

    def __rmul__(self, k):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        return Element(self.group, self.group.scalar_mul(int(k), self.rank))

    def __int__(self):
        return self.rank

    def __index__(self):
        return self.rank

    @property
    def additive_order(self) -> int:
        return self.group.additive_order(self.rank)


# ---------------------------------------------------------------------------
# quotients and direct sums


@dataclass
class Section:
    """A quotient ``big/small`` of a finite group, presented as an abelian p-group.

    ``label[g]`` is the quotient rank of ``g`` (``-1`` when ``g`` is outside
    ``big``); ``rep[u]`` is the minimal ambient element of the coset with
    quotient rank ``u``; ``basis`` are ambient lifts of the cyclic generators.
    """

    group: AbelianPGroup
    label: np.ndarray
    rep: np.ndarray
    basis: tuple[int, ...]


def aligned_section(A: AbelianPGroup, offsets) -> Section:
    """Quotient of ``A`` by ``p^f1 Z/p^e1 + ...`` using reduced coordinates."""
    # Z/p^e modulo p^f Z/p^e is Z/p^f
    keep = [(j, f) for j, f in enumerate(offsets) if f > 0]
    order = sorted(keep, key=lambda t: -t[1])
    Q = AbelianPGroup(A.p, [e for _, e in order], check_cap=False)
    cols = [j for j, _ in order]
    c = A.coord_table
    qc = np.stack([c[:, j] % (A.p**e) for j, e in order], axis=1) if order else np.zeros((A.order, 0), np.int64)
    label = Q.rank_of_coords(qc) if order else np.zeros(A.order, dtype=np.int64)
    # minimal representative: reduced coordinates in place, zero elsewhere
    full = np.zeros((Q.order, A.rank_count), dtype=np.int64)
    for k, j in enumerate(cols):
        full[:, j] = Q.coord_table[:, k]
    rep = A.rank_of_coords(full)
    basis = []
    for k, j in enumerate(cols):
        unit = [0] * A.rank_count
        unit[j] = 1
        basis.append(A.rank(unit))
    return Section(Q, label.astype(np.int64), rep.astype(np.int64), tuple(basis))


def decompose_section(table: np.ndarray, p: int, big: Subgroup, small: Subgroup, identity: int = 0) -> Section:
    """Present the abelian section ``big/small`` of a finite p-group as ``+ Z/p^ki``.

    Greedy basis: repeatedly take the smallest element of maximal order modulo
    the span found so far, then lift it (by a span element) to one whose order
    modulo ``small`` equals that maximal order.  The resulting exponents are
    nonincreasing.  Requires ``small`` normal in ``big`` and ``big/small`` abelian.
    """
    table = np.asarray(table)
    size = table.shape[0]

    def power_map(k: int) -> np.ndarray:
        # x -> x^k by repeated squaring over the whole table
        res = np.full(size, identity, dtype=np.int64)
        base = np.arange(size, dtype=np.int64)
        while k:
            if k & 1:
                res = table[res, base]
            base = table[base, base]
            k >>= 1
        return res

    pow_p = power_map(p)
    span = small
    basis: list[int] = []
    exps: list[int] = []
    members = big.elements
    while span.order < big.order:
        # order modulo span of every element of big
        cur = members.copy()
        ordexp = np.zeros(members.size, dtype=np.int64)
        outside = ~span.mask[cur]
        while outside.any():
            ordexp[outside] += 1
            cur = np.where(outside, pow_p[cur], cur)
            outside = ~span.mask[cur]
        k = int(ordexp.max())
        x = int(members[int(np.argmax(ordexp == k))])
        # lift: x*s with (x*s)^(p^k) in small
        cands = np.sort(table[x, span.elements].astype(np.int64))
        y = cands
        for _ in range(k):
            y = pow_p[y]
        good = cands[small.mask[y]]
        if good.size == 0:
            raise AssertionError("basis lift failed; section is not abelian")
        g = int(good[0])
        basis.append(g)
        exps.append(k)
        span = closure(table, [g], identity, start=span)
    Q = AbelianPGroup(p, exps, check_cap=False)
    label = np.full(size, -1, dtype=np.int64)
    rep = np.empty(Q.order, dtype=np.int64)
    gp = [power_map_single(table, g, identity, p**e) for g, e in zip(basis, exps)]
    # enumerate every coordinate vector and mark its coset
    qc = Q.coord_table
    elts = np.full(Q.order, identity, dtype=np.int64)
    for j, powers in enumerate(gp):
        elts = table[elts, powers[qc[:, j]]]
    cosets = table[np.ix_(elts, small.elements)]
    label[cosets] = np.arange(Q.order)[:, None]
    rep[:] = cosets.min(axis=1)
    if (label[big.elements] < 0).any():
        raise AssertionError("section enumeration did not cover big")
    return Section(Q, label, rep, tuple(basis))


def power_map_single(table, g: int, identity: int, count: int) -> np.ndarray:
    """``[g^0, g^1, ..., g^(count-1)]``."""
    out = np.empty(count, dtype=np.int64)
    cur = identity
    for i in range(count):
        out[i] = cur
        cur = int(table[cur, g])
    return out


def quotient_section(A: AbelianPGroup, sub: Subgroup) -> Section:
    """``A/sub``; coordinate-aligned subgroups keep the natural coordinates."""
    offsets = A.aligned_offsets(sub)
    if offsets is not None:
        return aligned_section(A, offsets)
    return decompose_section(A.add_table, A.p, A.whole(), sub)


def subgroup_section(A: AbelianPGroup, sub: Subgroup) -> Section:
    """``sub`` itself presented as an abelian p-group (``sub/0``)."""
    return decompose_section(A.add_table, A.p, sub, A.trivial_subgroup())


class DirectSum:
    """``G1 + ... + Gk`` with coordinates re-sorted into canonical order."""

    def __init__(self, parts):
        self.parts = tuple(parts)
        ps = {g.p for g in self.parts}
        if len(ps) > 1:
            raise StructuralError("direct summands must share the prime")
        p = ps.pop() if ps else None
        flat = [(i, j, e) for i, g in enumerate(self.parts) for j, e in enumerate(g.exponents)]
        order = sorted(range(len(flat)), key=lambda t: -flat[t][2])
        self.slots = [flat[t] for t in order]
        if p is None:
            raise StructuralError("direct sum needs at least one summand")
        self.group = AbelianPGroup(p, [e for _, _, e in self.slots])

    @cached_property
    def split_table(self) -> np.ndarray:
        """``(order, k)``: component ranks of every element of the sum."""
        c = self.group.coord_table
        out = np.zeros((self.group.order, len(self.parts)), dtype=np.int64)
        for i, g in enumerate(self.parts):
            gc = np.zeros((self.group.order, g.rank_count), dtype=np.int64)
            for pos, (pi, j, _) in enumerate(self.slots):
                if pi == i:
                    gc[:, j] = c[:, pos]
            out[:, i] = g.rank_of_coords(gc)
        return out

    def combine(self, ranks) -> np.ndarray:
        """Sum rank(s) of component ranks; ``ranks[..., i]`` indexes part ``i``."""
        ranks = np.asarray(ranks, dtype=np.int64)
        coords = np.zeros(ranks.shape[:-1] + (self.group.rank_count,), dtype=np.int64)
        for pos, (pi, j, _) in enumerate(self.slots):
            coords[..., pos] = self.parts[pi].coord_table[ranks[..., pi], j]
        return self.group.rank_of_coords(coords)

    def embedding(self, i: int) -> np.ndarray:
        """Ranks of the ``i``-th summand's elements inside the sum."""
        r = np.zeros((self.parts[i].order, len(self.parts)), dtype=np.int64)
        r[:, i] = np.arange(self.parts[i].order)
        return self.combine(r)
