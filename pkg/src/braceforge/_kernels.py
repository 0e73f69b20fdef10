"""Hot loops: exhaustive identity sweeps over index triples and subgroup closure.

Every kernel exists twice, once as a numba ``@njit`` function and once as a
pure-numpy routine with the same contract.  ``BRACEFORGE_BACKEND=numpy`` (or a
missing numba) selects the numpy path.  Sweeps return the lexicographically
first violating triple of *domain positions* or ``None``; both backends must
agree bit for bit, which ``tests/test_kernels.py`` checks.

Tables are ``int32`` square arrays indexed by canonical rank.  Domains are
``int64`` arrays of ranks.
"""
from __future__ import annotations

import numpy as np

from . import _config

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def backend() -> str:
    if _config.requested_backend() == "numba" and HAVE_NUMBA:
        return "numba"
    return "numpy"


def _as_domain(d, size):
    if d is None:
        return np.arange(size, dtype=np.int64)
    return np.ascontiguousarray(d, dtype=np.int64)


def _as_table(t):
    return np.ascontiguousarray(t, dtype=np.int32)


# ---------------------------------------------------------------------------
# numba kernels

if HAVE_NUMBA:

    @njit(cache=True)
    def _first_row(rows_j, rows_k):
        for i in range(rows_j.shape[0]):
            if rows_j[i] >= 0:
                return i, rows_j[i], rows_k[i]
        return -1, -1, -1

    @njit(parallel=True, cache=True)
    def _nb_left_distrib(mul, add, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        for i in prange(nx):
            x = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                y = ys[j]
                xy = mul[x, y]
                for k in range(zs.shape[0]):
                    z = zs[k]
                    if mul[x, add[y, z]] != add[xy, mul[x, z]]:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(parallel=True, cache=True)
    def _nb_right_distrib(mul, add, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        for i in prange(nx):
            x = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                y = ys[j]
                s = add[x, y]
                for k in range(zs.shape[0]):
                    z = zs[k]
                    if mul[s, z] != add[mul[x, z], mul[y, z]]:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(parallel=True, cache=True)
    def _nb_assoc(op, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        for i in prange(nx):
            x = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                y = ys[j]
                xy = op[x, y]
                for k in range(zs.shape[0]):
                    z = zs[k]
                    if op[xy, z] != op[x, op[y, z]]:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(parallel=True, cache=True)
    def _nb_prelie(mul, add, neg, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        for i in prange(nx):
            x = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                y = ys[j]
                xy = mul[x, y]
                yx = mul[y, x]
                for k in range(zs.shape[0]):
                    z = zs[k]
                    lhs = add[mul[xy, z], neg[mul[x, mul[y, z]]]]
                    rhs = add[mul[yx, z], neg[mul[y, mul[x, z]]]]
                    if lhs != rhs:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(parallel=True, cache=True)
    def _nb_jacobi(br, add, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        for i in prange(nx):
            x = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                y = ys[j]
                xy = br[x, y]
                for k in range(zs.shape[0]):
                    z = zs[k]
                    s = add[add[br[x, br[y, z]], br[y, br[z, x]]], br[z, xy]]
                    if s != 0:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(parallel=True, cache=True)
    def _nb_engel(star, add, neg, steps, xs, ys, zs):
        nx = xs.shape[0]
        fj = np.full(nx, -1, np.int64)
        fk = np.full(nx, -1, np.int64)
        d = np.empty((nx, steps + 1), np.int64)
        dp = np.empty((nx, steps + 1), np.int64)
        for i in prange(nx):
            a = xs[i]
            done = False
            for j in range(ys.shape[0]):
                if done:
                    break
                b = ys[j]
                d[i, 0] = a
                dp[i, 0] = b
                for t in range(steps):
                    d[i, t + 1] = add[d[i, t], dp[i, t]]
                    dp[i, t + 1] = star[d[i, t], dp[i, t]]
                ab = add[a, b]
                for k in range(zs.shape[0]):
                    c = zs[k]
                    rhs = add[star[a, c], star[b, c]]
                    for t in range(steps + 1):
                        term = add[star[star[d[i, t], dp[i, t]], c], neg[star[d[i, t], star[dp[i, t], c]]]]
                        if t % 2 == 0:
                            term = neg[term]
                        rhs = add[rhs, term]
                    if star[ab, c] != rhs:
                        fj[i] = j
                        fk[i] = k
                        done = True
                        break
        return _first_row(fj, fk)

    @njit(cache=True)
    def _nb_closure(table, mask, gens):
        out = mask.copy()
        queue = np.empty(table.shape[0], np.int64)
        head = 0
        tail = 0
        for x in range(table.shape[0]):
            if out[x]:
                queue[tail] = x
                tail += 1
        while head < tail:
            x = queue[head]
            head += 1
            for g in gens:
                y = table[x, g]
                if not out[y]:
                    out[y] = True
                    queue[tail] = y
                    tail += 1
        return out

    @njit(cache=True)
    def _nb_span_mask(table, xs, ys, mask):
        out = mask.copy()
        for x in xs:
            for y in ys:
                out[table[x, y]] = True
        return out


# ---------------------------------------------------------------------------
# numpy fallbacks

def _np_first(viol_rows):
    """Scan rows in order; ``viol_rows`` yields (i, 2d bool array) lazily."""
    for i, v in viol_rows:
        if v.any():
            j, k = np.unravel_index(int(np.argmax(v)), v.shape)
            return int(i), int(j), int(k)
    return -1, -1, -1


def _np_left_distrib(mul, add, xs, ys, zs):
    yz = add[np.ix_(ys, zs)]

    def rows():
        for i, x in enumerate(xs):
            row = mul[x]
            yield i, row[yz] != add[row[ys][:, None], row[zs][None, :]]

    return _np_first(rows())


def _np_right_distrib(mul, add, xs, ys, zs):
    def rows():
        for i, x in enumerate(xs):
            s = add[x, ys]
            lhs = mul[np.ix_(s, zs)]
            rhs = add[mul[x, zs][None, :], mul[np.ix_(ys, zs)]]
            yield i, lhs != rhs

    return _np_first(rows())


def _np_assoc(op, xs, ys, zs):
    yz = op[np.ix_(ys, zs)]

    def rows():
        for i, x in enumerate(xs):
            xy = op[x, ys]
            yield i, op[np.ix_(xy, zs)] != op[x][yz]

    return _np_first(rows())


def _np_prelie(mul, add, neg, xs, ys, zs):
    yz = mul[np.ix_(ys, zs)]

    def rows():
        for i, x in enumerate(xs):
            xy = mul[x, ys]
            yx = mul[ys, x]
            xz = mul[x, zs]
            lhs = add[mul[np.ix_(xy, zs)], neg[mul[x][yz]]]
            rhs = add[mul[np.ix_(yx, zs)], neg[mul[ys[:, None], xz[None, :]]]]
            yield i, lhs != rhs

    return _np_first(rows())


def _np_jacobi(br, add, xs, ys, zs):
    yz = br[np.ix_(ys, zs)]

    def rows():
        for i, x in enumerate(xs):
            t1 = br[x][yz]
            zx = br[zs, x]
            t2 = br[ys[:, None], zx[None, :]]
            xy = br[x, ys]
            t3 = br[zs[None, :], xy[:, None]]
            yield i, add[add[t1, t2], t3] != 0

    return _np_first(rows())


def _np_engel(star, add, neg, steps, xs, ys, zs):
    def rows():
        for i, a in enumerate(xs):
            d = [np.full(len(ys), a, dtype=np.int64)]
            dp = [ys.astype(np.int64)]
            for _ in range(steps):
                d.append(add[d[-1], dp[-1]])
                dp.append(star[d[-2], dp[-1]])
            lhs = star[np.ix_(add[a, ys], zs)]
            rhs = add[star[a, zs][None, :], star[np.ix_(ys, zs)]]
            for t in range(steps + 1):
                left = star[np.ix_(star[d[t], dp[t]], zs)]
                right = star[d[t][:, None], star[np.ix_(dp[t], zs)]]
                term = add[left, neg[right]]
                if t % 2 == 0:
                    term = neg[term]
                rhs = add[rhs, term]
            yield i, lhs != rhs

    return _np_first(rows())


def _np_closure(table, mask, gens):
    out = mask.copy()
    frontier = np.flatnonzero(out)
    while frontier.size:
        cand = np.unique(table[np.ix_(frontier, gens)])
        new = cand[~out[cand]]
        out[new] = True
        frontier = new
    return out


def _np_span_mask(table, xs, ys, mask):
    out = mask.copy()
    out[np.unique(table[np.ix_(xs, ys)])] = True
    return out


# ---------------------------------------------------------------------------
# public dispatch

def _dispatch(nb_name, np_fn, *args):
    if backend() == "numba":
        numba.set_num_threads(min(_config.workers(), numba.config.NUMBA_NUM_THREADS))
        return globals()[nb_name](*args)
    return np_fn(*args)


def _result(found, xs, ys, zs):
    i, j, k = (int(v) for v in found)
    if i < 0:
        return None
    return int(xs[i]), int(ys[j]), int(zs[k])


def first_left_distrib_violation(mul, add, xs=None, ys=None, zs=None):
    """First ``(x, y, z)`` with ``x(y+z) != xy + xz``."""
    n = mul.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    mul, add = _as_table(mul), _as_table(add)
    return _result(_dispatch("_nb_left_distrib", _np_left_distrib, mul, add, xs, ys, zs), xs, ys, zs)


def first_right_distrib_violation(mul, add, xs=None, ys=None, zs=None):
    """First ``(x, y, z)`` with ``(x+y)z != xz + yz``."""
    n = mul.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    mul, add = _as_table(mul), _as_table(add)
    return _result(_dispatch("_nb_right_distrib", _np_right_distrib, mul, add, xs, ys, zs), xs, ys, zs)


def first_assoc_violation(op, xs=None, ys=None, zs=None):
    n = op.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    op = _as_table(op)
    return _result(_dispatch("_nb_assoc", _np_assoc, op, xs, ys, zs), xs, ys, zs)


def first_prelie_violation(mul, add, neg, xs=None, ys=None, zs=None):
    """First ``(x, y, z)`` where the associator is not symmetric in ``x, y``."""
    n = mul.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    mul, add = _as_table(mul), _as_table(add)
    neg = np.ascontiguousarray(neg, dtype=np.int32)
    return _result(_dispatch("_nb_prelie", _np_prelie, mul, add, neg, xs, ys, zs), xs, ys, zs)


def first_jacobi_violation(br, add, xs=None, ys=None, zs=None):
    n = br.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    br, add = _as_table(br), _as_table(add)
    return _result(_dispatch("_nb_jacobi", _np_jacobi, br, add, xs, ys, zs), xs, ys, zs)


def first_engel_violation(star, add, neg, steps, xs=None, ys=None, zs=None):
    """First ``(a, b, c)`` breaking the alternating-sum expansion of ``(a+b)*c``.

    ``steps`` is the upper summation index (``2s`` for ``A^s = 0``).
    """
    n = star.shape[0]
    xs, ys, zs = (_as_domain(d, n) for d in (xs, ys, zs))
    star, add = _as_table(star), _as_table(add)
    neg = np.ascontiguousarray(neg, dtype=np.int32)
    return _result(
        _dispatch("_nb_engel", _np_engel, star, add, neg, int(steps), xs, ys, zs), xs, ys, zs
    )


def closure_mask(table, mask, gens) -> np.ndarray:
    """Close ``mask`` under right multiplication by ``gens`` in a finite group table."""
    table = _as_table(table)
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    if gens.size == 0:
        return mask.copy()
    if backend() == "numba":
        return _nb_closure(table, mask, gens)
    return _np_closure(table, mask, gens)


def product_image_mask(table, xs, ys, mask=None) -> np.ndarray:
    """``mask`` OR the set ``{table[x, y] : x in xs, y in ys}``."""
    table = _as_table(table)
    if mask is None:
        mask = np.zeros(table.shape[0], dtype=np.bool_)
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    if xs.size == 0 or ys.size == 0:
        return mask.copy()
    if backend() == "numba":
        return _nb_span_mask(table, xs, ys, mask)
    return _np_span_mask(table, xs, ys, mask)
