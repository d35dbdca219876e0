"""Hot loops for the two exhaustive counts.

* ``scan``: evaluate a compiled polynomial system at every point of
  (F^x)^a x F^b and keep the zeros.
* ``propagate``: run a compiled slot program (cusps, crossings, handleslides)
  on a dense triangular matrix for every point of the same kind of box and
  keep the points where every coefficient condition holds.

Both come in a numba flavour (default) and a batched numpy flavour, chosen by
the ``LCH_BACKEND`` environment variable (``numba`` or ``numpy``).  Work is
split in index chunks handed to a thread pool whose size is capped by
``LCH_THREADS``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import ScaleError

try:  # numba is a declared dependency, but keep the numpy path usable without it
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

DEFAULT_CAP = 10**8
CHUNK = 1 << 16

OP_LEFT, OP_SLIDE, OP_CROSS, OP_RIGHT = 0, 1, 2, 3


def backend():
    name = os.environ.get("LCH_BACKEND", "numba").lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"LCH_BACKEND must be numba or numpy, got {name!r}")
    if name == "numba" and njit is None:
        return "numpy"
    return name


def n_threads():
    cap = os.environ.get("LCH_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = max(1, min(n, int(cap)))
    return n


def box_size(n_units, n_free, q):
    return (q - 1) ** n_units * q**n_free


def _radices(n_units, n_free, q):
    rad = np.array([q - 1] * n_units + [q] * n_free, dtype=np.int64)
    base = np.array([1] * n_units + [0] * n_free, dtype=np.int64)
    return rad, base


def decode_point(index, n_units, n_free, q):
    """Coordinates of a box index; the first coordinate varies slowest."""
    rad, base = _radices(n_units, n_free, q)
    out = [0] * len(rad)
    for i in range(len(rad) - 1, -1, -1):
        out[i] = int(index % rad[i] + base[i])
        index //= int(rad[i])
    return tuple(out)


# ---------------------------------------------------------------------------
# compiled forms


class PolySystem:
    """Equations sum_t c_t * prod(factors) = 0 over field codes.

    A factor is a variable index, optionally inverted.
    """

    def __init__(self, equations, n_units, n_free):
        eq_start, term_start, coeff, fvar, finv = [0], [0], [], [], []
        for terms in equations:
            for c, factors in terms:
                coeff.append(c)
                for v, inv in factors:
                    fvar.append(v)
                    finv.append(1 if inv else 0)
                term_start.append(len(fvar))
            eq_start.append(len(coeff))
        self.eq_start = np.array(eq_start, dtype=np.int64)
        self.term_start = np.array(term_start, dtype=np.int64)
        self.coeff = np.array(coeff, dtype=np.int64)
        self.fvar = np.array(fvar, dtype=np.int64)
        self.finv = np.array(finv, dtype=np.int64)
        self.n_units = n_units
        self.n_free = n_free


class SlotProgram:
    """Rows (op, a, b, c) run on a matrix of size at most ``width``.

    OP_LEFT a: insert a canceling pair at 0-based position a.
    OP_SLIDE a b c: handleslide from a to b (a < b) with coefficient variable c.
    OP_CROSS a: require entry (a, a+1) = 0, then swap a and a+1.
    OP_RIGHT a c: require entry (a, a+1) = -1 (c < 0) or -var[c], then quotient.
    """

    def __init__(self, rows, width, n_units, n_free):
        self.ops = np.array(rows, dtype=np.int64).reshape(-1, 4)
        self.width = max(int(width), 2)
        self.n_units = n_units
        self.n_free = n_free


# ---------------------------------------------------------------------------
# numba kernels

if njit is not None:

    @njit(nogil=True, cache=True)
    def _decode(idx, rad, base, vals):
        for i in range(rad.shape[0] - 1, -1, -1):
            vals[i] = idx % rad[i] + base[i]
            idx //= rad[i]

    @njit(nogil=True, cache=True)
    def _nb_scan(lo, hi, rad, base, add, mul, inv, eq_start, term_start, coeff, fvar, finv, hits):
        nv = rad.shape[0]
        vals = np.zeros(nv, dtype=np.int64)
        count = 0
        n_eq = eq_start.shape[0] - 1
        for idx in range(lo, hi):
            _decode(idx, rad, base, vals)
            ok = True
            for e in range(n_eq):
                acc = 0
                for t in range(eq_start[e], eq_start[e + 1]):
                    prod = coeff[t]
                    for f in range(term_start[t], term_start[t + 1]):
                        v = vals[fvar[f]]
                        if finv[f]:
                            v = inv[v]
                        prod = mul[prod, v]
                        if prod == 0:
                            break
                    acc = add[acc, prod]
                if acc != 0:
                    ok = False
                    break
            if ok:
                if hits.shape[0] > 0:
                    hits[count] = idx
                count += 1
        return count

    @njit(nogil=True, cache=True)
    def _nb_propagate(lo, hi, rad, base, add, mul, neg, inv, ops, width, hits):
        nv = rad.shape[0]
        vals = np.zeros(nv, dtype=np.int64)
        D = np.zeros((width, width), dtype=np.int64)
        tmp = np.zeros((width, width), dtype=np.int64)
        count = 0
        n_ops = ops.shape[0]
        for idx in range(lo, hi):
            _decode(idx, rad, base, vals)
            size = 0
            ok = True
            for o in range(n_ops):
                op = ops[o, 0]
                a = ops[o, 1]
                if op == 0:
                    # insert two rows/columns at a, a+1
                    for i in range(size + 2):
                        for j in range(size + 2):
                            tmp[i, j] = 0
                    for i in range(size):
                        ii = i + 2 if i >= a else i
                        for j in range(size):
                            jj = j + 2 if j >= a else j
                            tmp[ii, jj] = D[i, j]
                    size += 2
                    for i in range(size):
                        for j in range(size):
                            D[i, j] = tmp[i, j]
                    D[a, a + 1] = 1
                elif op == 1:
                    b = ops[o, 2]
                    r = vals[ops[o, 3]]
                    if r == 0:
                        continue
                    # row a += r * row b
                    for w in range(size):
                        D[a, w] = add[D[a, w], mul[r, D[b, w]]]
                    # column b -= r * column a
                    nr = neg[r]
                    for u in range(size):
                        D[u, b] = add[D[u, b], mul[nr, D[u, a]]]
                elif op == 2:
                    if D[a, a + 1] != 0:
                        ok = False
                        break
                    for w in range(size):
                        x = D[a, w]
                        D[a, w] = D[a + 1, w]
                        D[a + 1, w] = x
                    for u in range(size):
                        x = D[u, a]
                        D[u, a] = D[u, a + 1]
                        D[u, a + 1] = x
                else:
                    c = ops[o, 3]
                    want = neg[1] if c < 0 else neg[vals[c]]
                    pivot = D[a, a + 1]
                    if pivot != want:
                        ok = False
                        break
                    # e_{a+1} = -(1/pivot) * sum_{j > a+1} D[a, j] e_j in the quotient
                    f = neg[inv[pivot]]
                    for i in range(size):
                        col = D[i, a + 1]
                        if col != 0 and i != a:
                            g = mul[col, f]
                            for j in range(a + 2, size):
                                D[i, j] = add[D[i, j], mul[g, D[a, j]]]
                    m = 0
                    for i in range(size):
                        if i == a or i == a + 1:
                            continue
                        n = 0
                        for j in range(size):
                            if j == a or j == a + 1:
                                continue
                            tmp[m, n] = D[i, j]
                            n += 1
                        m += 1
                    size -= 2
                    for i in range(size):
                        for j in range(size):
                            D[i, j] = tmp[i, j]
            if ok:
                if hits.shape[0] > 0:
                    hits[count] = idx
                count += 1
        return count


# ---------------------------------------------------------------------------
# numpy kernels (batched over a chunk of indices)


def _np_decode(lo, hi, rad, base):
    idx = np.arange(lo, hi, dtype=np.int64)
    vals = np.empty((hi - lo, rad.shape[0]), dtype=np.int64)
    for i in range(rad.shape[0] - 1, -1, -1):
        vals[:, i] = idx % rad[i] + base[i]
        idx //= rad[i]
    return vals


def _np_scan(lo, hi, rad, base, add, mul, inv, system):
    vals = _np_decode(lo, hi, rad, base)
    ok = np.ones(hi - lo, dtype=bool)
    es, ts = system.eq_start, system.term_start
    for e in range(es.shape[0] - 1):
        acc = np.zeros(hi - lo, dtype=np.int64)
        for t in range(es[e], es[e + 1]):
            prod = np.full(hi - lo, system.coeff[t], dtype=np.int64)
            for f in range(ts[t], ts[t + 1]):
                v = vals[:, system.fvar[f]]
                if system.finv[f]:
                    v = inv[v]
                prod = mul[prod, v]
            acc = add[acc, prod]
        ok &= acc == 0
    return np.nonzero(ok)[0] + lo


def _np_propagate(lo, hi, rad, base, add, mul, neg, inv, program):
    vals = _np_decode(lo, hi, rad, base)
    B = hi - lo
    W = program.width
    D = np.zeros((B, W, W), dtype=np.int64)
    alive = np.ones(B, dtype=bool)
    size = 0
    for op, a, b, c in program.ops:
        if op == OP_LEFT:
            keep = [i for i in range(size + 2) if i not in (a, a + 1)]
            new = np.zeros_like(D)
            new[np.ix_(np.arange(B), keep, keep)] = D[:, :size, :size]
            D = new
            size += 2
            D[:, a, a + 1] = 1
        elif op == OP_SLIDE:
            r = vals[:, c]
            D[:, a, :size] = add[D[:, a, :size], mul[r[:, None], D[:, b, :size]]]
            D[:, :size, b] = add[D[:, :size, b], mul[neg[r][:, None], D[:, :size, a]]]
        elif op == OP_CROSS:
            alive &= D[:, a, a + 1] == 0
            D[:, [a, a + 1], :] = D[:, [a + 1, a], :]
            D[:, :, [a, a + 1]] = D[:, :, [a + 1, a]]
        else:
            want = np.full(B, neg[1]) if c < 0 else neg[vals[:, c]]
            pivot = D[:, a, a + 1]
            good = pivot == want
            alive &= good
            safe = np.where(good, pivot, 1)
            f = neg[inv[safe]]
            g = mul[D[:, :size, a + 1], f[:, None]]  # (B, size)
            g[:, a] = 0
            upd = mul[g[:, :, None], D[:, a, None, :size]]  # (B, size, size)
            upd[:, :, : a + 2] = 0
            D[:, :size, :size] = add[D[:, :size, :size], upd]
            keep = [i for i in range(size) if i not in (a, a + 1)]
            new = np.zeros_like(D)
            new[:, : size - 2, : size - 2] = D[np.ix_(np.arange(B), keep, keep)]
            D = new
            size -= 2
    return np.nonzero(alive)[0] + lo


# ---------------------------------------------------------------------------
# drivers


def _chunks(total):
    return [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]


def _run(total, job, collect):
    chunks = _chunks(total)
    workers = min(n_threads(), max(1, len(chunks)))
    if workers == 1:
        parts = [job(lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ch: job(*ch), chunks))
    if collect:
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return int(sum(parts))


def _check_cap(total, cap):
    cap = DEFAULT_CAP if cap is None else cap
    if total > cap:
        raise ScaleError(f"search space of {total} points exceeds the cap {cap}")


def scan_system(field, system, collect=False, cap=None, which=None):
    """Count (or list, as box indices) the common zeros of a PolySystem."""
    total = box_size(system.n_units, system.n_free, field.q)
    _check_cap(total, cap)
    add, mul, _, inv = (np.asarray(t, dtype=np.int64) for t in field.tables)
    rad, base = _radices(system.n_units, system.n_free, field.q)
    which = which or backend()
    if which == "numba":

        def job(lo, hi):
            hits = np.zeros(hi - lo if collect else 0, dtype=np.int64)
            n = _nb_scan(lo, hi, rad, base, add, mul, inv, system.eq_start, system.term_start,
                         system.coeff, system.fvar, system.finv, hits)
            return hits[:n] if collect else n

    else:

        def job(lo, hi):
            hits = _np_scan(lo, hi, rad, base, add, mul, inv, system)
            return hits if collect else len(hits)

    return _run(total, job, collect)


def run_program(field, program, collect=False, cap=None, which=None):
    """Count (or list) the points for which a SlotProgram meets every condition."""
    total = box_size(program.n_units, program.n_free, field.q)
    _check_cap(total, cap)
    add, mul, neg, inv = (np.asarray(t, dtype=np.int64) for t in field.tables)
    rad, base = _radices(program.n_units, program.n_free, field.q)
    which = which or backend()
    if which == "numba":

        def job(lo, hi):
            hits = np.zeros(hi - lo if collect else 0, dtype=np.int64)
            n = _nb_propagate(lo, hi, rad, base, add, mul, neg, inv, program.ops, program.width, hits)
            return hits[:n] if collect else n

    else:

        def job(lo, hi):
            hits = _np_propagate(lo, hi, rad, base, add, mul, neg, inv, program)
            return hits if collect else len(hits)

    return _run(total, job, collect)
