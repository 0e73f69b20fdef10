"""Subgroups of finite groups given by Cayley tables, as membership bitmaps."""
from __future__ import annotations

import numpy as np

from . import _kernels


class Subgroup:
    """A subset of ``range(order)`` closed under a group law.

    Holds the sorted rank array and a boolean membership mask.  Comparison
    operators are set comparisons; the handle does not remember which table
    produced it.
    """

    __slots__ = ("elements", "generators", "mask")

    def __init__(self, mask: np.ndarray, generators=()):
        self.mask = np.asarray(mask, dtype=bool)
        self.mask.setflags(write=False)
        self.elements = np.flatnonzero(self.mask)
        self.elements.setflags(write=False)
        self.generators = tuple(int(g) for g in generators)

    @classmethod
    def from_elements(cls, size: int, elements, generators=()) -> Subgroup:
        mask = np.zeros(size, dtype=bool)
        mask[np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements, dtype=np.int64)] = True
        return cls(mask, generators)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    @property
    def ambient_order(self) -> int:
        return int(self.mask.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __iter__(self):
        return iter(self.elements.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.mask.size == other.mask.size and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash(self.mask.tobytes())

    def __le__(self, other: Subgroup) -> bool:
        return bool(np.all(other.mask[self.elements]))

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.order < other.order

    def __ge__(self, other: Subgroup) -> bool:
        return other <= self

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.mask.size

    def __repr__(self):
        return f"Subgroup(order={self.order}, of={self.mask.size})"


def closure(table: np.ndarray, gens, identity: int = 0, start: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` (together with ``start``, if given).

    Generators already inside the running subgroup are dropped, so the
    recorded generating set stays short (at most ``log_p`` of the order).
    """
    table = np.asarray(table)
    size = table.shape[0]
    if start is None:
        mask = np.zeros(size, dtype=bool)
        mask[identity] = True
        kept: list[int] = []
    else:
        if not start.generators and start.order > 1:
            # right-multiplication closure needs a generating set of ``start``
            start = closure(table, start.elements, identity)
        mask = start.mask.copy()
        kept = list(start.generators)
    for g in np.asarray(list(gens) if not isinstance(gens, np.ndarray) else gens, dtype=np.int64).ravel():
        g = int(g)
        if mask[g]:
            continue
        kept.append(g)
        mask = _kernels.closure_mask(table, mask, np.array(kept, dtype=np.int64))
    return Subgroup(mask, kept)


def trivial(size: int, identity: int = 0) -> Subgroup:
    return Subgroup.from_elements(size, [identity])


def whole(size: int) -> Subgroup:
    return Subgroup(np.ones(size, dtype=bool))
