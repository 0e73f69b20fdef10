"""Constructors for the test corpus of braces and pre-Lie rings."""
from __future__ import annotations

import numpy as np

from .abelian import AbelianPGroup, DirectSum
from .brace import Brace, require_brace
from .errors import StructuralError
from .prelie import (
    PreLieRing,
    associative_multiple,
    bilinear_table,
    scale_product,
    witt,
    zero_prelie,
)


def trivial(p: int, exponents) -> Brace:
    A = AbelianPGroup(p, exponents)
    return require_brace(Brace(A, np.zeros((A.order, A.order), dtype=np.int32), name="trivial"))


def radical_cyclic(p: int, n: int) -> Brace:
    """``Z/p^n`` with ``a*b = p a b``, the radical ring ``pZ/p^(n+1)`` relabelled."""
    A = AbelianPGroup(p, [n])
    star = bilinear_table(A, lambda ca, cb: p * ca * cb)
    return require_brace(Brace(A, star, name=f"radical-cyclic({p},{n})"))


def _triangular_positions(d: int):
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def triangular_product(p: int, d: int):
    """Matrix product on strictly upper triangular ``d x d`` matrices over ``Z/p``.

    Coordinates are the entries above the diagonal in row-major order.
    """
    pos = _triangular_positions(d)
    index = {ij: k for k, ij in enumerate(pos)}
    A = AbelianPGroup(p, [1] * len(pos))

    def fn(ca, cb):
        out = np.zeros(np.broadcast_shapes(ca.shape, cb.shape), dtype=np.int64)
        for (i, k), s in index.items():
            for (k2, j), t in index.items():
                if k == k2:
                    out[..., index[(i, j)]] += ca[..., s] * cb[..., t]
        return out

    return A, bilinear_table(A, fn)


def radical_triangular(p: int, d: int) -> Brace:
    A, star = triangular_product(p, d)
    return require_brace(Brace(A, star, name=f"radical-triangular({p},{d})"))


def triangular_prelie(p: int, d: int) -> PreLieRing:
    A, dot = triangular_product(p, d)
    return PreLieRing(A, dot, name=f"triangular({p},{d})")


def radical_affine(p: int, e: int) -> Brace:
    """``(Z/p^e)^2`` with ``a*b = p (a1 b1, a1 b2)``.

    An associative radical ring whose adjoint group is not abelian.
    """
    A = AbelianPGroup(p, [e, e])

    def fn(ca, cb):
        return np.stack(
            np.broadcast_arrays(p * ca[..., 0] * cb[..., 0], p * ca[..., 0] * cb[..., 1]), axis=-1
        )

    return require_brace(Brace(A, bilinear_table(A, fn), name=f"radical-affine({p},{e})"))


def direct_sum(*braces: Brace) -> Brace:
    """Componentwise ``*`` on the direct sum of the additive groups."""
    if not braces:
        raise StructuralError("direct sum needs at least one brace")
    S = DirectSum([B.additive for B in braces])
    split = S.split_table
    N = S.group.order
    comps = np.empty((N, N, len(braces)), dtype=np.int64)
    for i, B in enumerate(braces):
        comps[:, :, i] = B.star[split[:, i][:, None], split[:, i][None, :]]
    star = S.combine(comps)
    name = " + ".join(B.name or "?" for B in braces)
    return require_brace(Brace(S.group, star, name=name))


def flows_witt(p: int, d: int, e: int = 1) -> Brace:
    """Group-of-flows brace of :func:`witt`; its ``*`` is not bi-additive."""
    from .flows import group_of_flows

    B = group_of_flows(witt(p, d, e))
    B.name = f"flows-witt({p},{d},{e})"
    return B


def from_json(doc: dict) -> Brace:
    from .serialize import group_from_json, table_from_json

    A = group_from_json(doc)
    return require_brace(Brace(A, table_from_json(doc, "star", A)))


KINDS = {
    "trivial": trivial,
    "radical-cyclic": radical_cyclic,
    "radical-triangular": radical_triangular,
    "radical-affine": radical_affine,
    "flows-witt": flows_witt,
}


def construct(kind: str, **params) -> Brace:
    """Build a corpus brace by name.

    ``trivial(p, exponents)``, ``radical-cyclic(p, n)``,
    ``radical-triangular(p, d)``, ``radical-affine(p, e)``,
    ``flows-witt(p, d, e=1)``, ``direct-sum(parts=[Brace, ...])`` and
    ``from-json(doc=...)``.
    """
    if kind == "direct-sum":
        return direct_sum(*params["parts"])
    if kind == "from-json":
        return from_json(params["doc"])
    try:
        fn = KINDS[kind]
    except KeyError:
        raise StructuralError(f"unknown brace kind {kind!r}") from None
    if params.get("p") == 2:
        raise StructuralError("corpus constructors need an odd prime (p > 2)")
    return fn(**params)


def standard_corpus(include_large: bool = False) -> dict[str, Brace]:
    """Named braces used by the tests and the acceptance suite."""
    out = {
        "trivial(5,[3])": trivial(5, [3]),
        "trivial(5,[2,1])": trivial(5, [2, 1]),
        "trivial(7,[3])": trivial(7, [3]),
        "trivial(5,[1,1,1])": trivial(5, [1, 1, 1]),
        "radical-cyclic(5,3)": radical_cyclic(5, 3),
        "radical-cyclic(7,3)": radical_cyclic(7, 3),
        "radical-triangular(5,3)": radical_triangular(5, 3),
        "radical-cyclic(5,2)+trivial(5,[1])": direct_sum(radical_cyclic(5, 2), trivial(5, [1])),
        "flows-witt(5,3,1)": flows_witt(5, 3, 1),
        "flows-witt(7,3,1)": flows_witt(7, 3, 1),
    }
    if include_large:
        out["radical-affine(3,3)"] = radical_affine(3, 3)
        out["radical-cyclic(29,2)"] = radical_cyclic(29, 2)
        out["flows-witt(29,2,1)"] = flows_witt(29, 2, 1)
    return out


def prelie_corpus() -> dict[str, PreLieRing]:
    """Named pre-Lie rings: Witt-type, associative, zero, and transforms of braces."""
    from .transform import bullet, strong_dot

    w = witt(3, 3, 2)
    out = {
        "zero(5,[2,1])": zero_prelie(AbelianPGroup(5, [2, 1])),
        "witt(5,3,1)": witt(5, 3, 1),
        "witt(7,3,1)": witt(7, 3, 1),
        "witt(3,3,2)": w,
        "3*witt(3,3,2)": scale_product(w, 3),
        "p*Z/5^4": associative_multiple(5, 3),
        "triangular(5,3)": triangular_prelie(5, 3),
    }
    for name in ("radical-cyclic(5,3)", "flows-witt(5,3,1)"):
        kind, args = name.split("(")
        p, a, *rest = (int(v) for v in args.rstrip(")").split(","))
        B = construct(kind, p=p, **({"n": a} if kind == "radical-cyclic" else {"d": a, "e": rest[0]}))
        out[f"strong_dot({name})"] = strong_dot(B).ring
        out[f"bullet({name})"] = bullet(B, cross_check=False).ring
    return out
