"""Left, right and strong product chains of a finite table algebra.

Used for both braces (product ``*``) and pre-Lie rings (product ``.``): in each
case a chain term is the additive subgroup spanned by products of elements of
earlier terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .abelian import AbelianPGroup
from .errors import InternalCheckError
from .subgroups import Subgroup, closure

# strong chains of nilpotent algebras reach 0; this only guards against bugs
_STRONG_STEP_LIMIT = 256


def product_span(A: AbelianPGroup, table: np.ndarray, X: Subgroup, Y: Subgroup) -> Subgroup:
    """Additive span of ``{table[x, y] : x in X, y in Y}``."""
    img = _kernels.product_image_mask(table, X.elements, Y.elements)
    return closure(A.add_table, np.flatnonzero(img), identity=0)


@dataclass
class NilpotencyReport:
    left_chain: list[Subgroup]
    right_chain: list[Subgroup]
    strong_chain: list[Subgroup]
    left_index: int | None
    right_index: int | None
    strong_index: int | None
    notes: list[str] = field(default_factory=list)

    @property
    def left_nilpotent(self) -> bool:
        return self.left_index is not None

    @property
    def right_nilpotent(self) -> bool:
        return self.right_index is not None

    @property
    def strongly_nilpotent(self) -> bool:
        return self.strong_index is not None

    def orders(self) -> dict:
        return {
            "left": [s.order for s in self.left_chain],
            "right": [s.order for s in self.right_chain],
            "strong": [s.order for s in self.strong_chain],
        }

    def to_json(self) -> dict:
        return {
            "left_index": self.left_index,
            "right_index": self.right_index,
            "strong_index": self.strong_index,
            "chain_orders": self.orders(),
        }


def _one_sided(A, table, left: bool):
    whole = A.whole()
    chain = [whole]
    while True:
        cur = chain[-1]
        if cur.order == 1:
            return chain, len(chain)
        nxt = product_span(A, table, whole, cur) if left else product_span(A, table, cur, whole)
        if nxt == cur:
            return chain, None
        chain.append(nxt)


def _strong(A, table, finite_expected: bool):
    chain = [A.whole()]
    while True:
        i = len(chain) + 1
        if chain[-1].order == 1:
            return chain, len(chain)
        term = None
        for j in range(1, i):
            part = product_span(A, table, chain[j - 1], chain[i - j - 1])
            term = part if term is None else closure(A.add_table, part.elements, start=term)
        if not finite_expected and term == chain[-1]:
            return chain + [term], None
        chain.append(term)
        if len(chain) > _STRONG_STEP_LIMIT:
            raise InternalCheckError("strong chain failed to terminate on a left and right nilpotent table")


def nilpotency_chains(A: AbelianPGroup, table: np.ndarray) -> NilpotencyReport:
    """All three chains until they reach 0 or stabilise.

    Strong nilpotency is equivalent to left plus right nilpotency for braces
    and for pre-Lie rings, so the strong chain is only run to 0 when both
    one-sided chains vanish; otherwise it is followed until it repeats.
    """
    left, li = _one_sided(A, table, left=True)
    right, ri = _one_sided(A, table, left=False)
    strong, si = _strong(A, table, finite_expected=li is not None and ri is not None)
    notes = []
    if li is None:
        notes.append("not left nilpotent")
    if ri is None:
        notes.append("not right nilpotent")
    return NilpotencyReport(left, right, strong, li, ri, si, notes)
