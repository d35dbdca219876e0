"""Local moves on handleslide marks.

Types 0-4 act on an ordered mark list (marks sorted by gap, left to right
inside a gap) and return a new tuple.  Types 5 and 6 act on a collection V
of (top, bottom, coeff) triples sitting in one gap, kept in proper order
(larger top first, then smaller bottom) or its transpose.  Every move keeps
the complexes outside the tangle it touches.
"""

from __future__ import annotations

from ..errors import ShapeError
from ..front_model import EventKind
from .complexes import HandleslideMark
from .phipsi import matrix_of_marks, proper_factor, transposed_factor, unipotent_inverse

__all__ = [
    "type0_insert",
    "type0_remove",
    "type1_slide",
    "type2_interchange",
    "type3_merge",
    "type3_split",
    "type4_introduce",
    "type4_cancel",
    "type5_incorporate",
    "type6_remove",
    "is_properly_ordered",
]


def _same_gap(marks, i, j):
    if not (0 <= i < len(marks) and 0 <= j < len(marks)):
        raise ShapeError(f"mark indices {i}, {j} out of range")
    if marks[i].gap != marks[j].gap:
        raise ShapeError(f"marks {i} and {j} sit in different gaps")


def _check_slot(marks, index, gap):
    left = marks[index - 1].gap if index > 0 else -1
    right = marks[index].gap if index < len(marks) else float("inf")
    if not left <= gap <= right:
        raise ShapeError(f"a mark in gap {gap} cannot sit at list position {index}")


def type0_insert(marks, index, gap, top, bottom):
    """Introduce a trivial (coefficient 0) mark."""
    marks = tuple(marks)
    _check_slot(marks, index, gap)
    return marks[:index] + (HandleslideMark(gap, top, bottom, 0),) + marks[index:]


def type0_remove(marks, index):
    marks = tuple(marks)
    if marks[index].coeff:
        raise ShapeError("only a trivial mark can be removed")
    return marks[:index] + marks[index + 1:]


def type1_slide(d, marks, index, direction="right"):
    """Slide a mark past the neighbouring crossing, keeping it on the same
    two strands of the front."""
    marks = tuple(marks)
    h = marks[index]
    if direction == "right":
        if index + 1 < len(marks) and marks[index + 1].gap == h.gap:
            raise ShapeError("the mark is not the last one before the event")
        ev, new_gap = h.gap, h.gap + 1
    elif direction == "left":
        if index > 0 and marks[index - 1].gap == h.gap:
            raise ShapeError("the mark is not the first one after the event")
        ev, new_gap = h.gap - 1, h.gap - 1
    else:
        raise ValueError(direction)
    if not 0 <= ev < len(d.events) or d.events[ev].kind is not EventKind.CROSSING:
        raise ShapeError(f"event {ev} is not a crossing")
    k = d.events[ev].position
    if (h.top, h.bottom) == (k, k + 1):
        raise ShapeError("a mark on the crossing strands cannot pass the crossing")
    sw = {k: k + 1, k + 1: k}
    top, bottom = sw.get(h.top, h.top), sw.get(h.bottom, h.bottom)
    return marks[:index] + (HandleslideMark(new_gap, top, bottom, h.coeff),) + marks[index + 1:]


def type2_interchange(fq, marks, index):
    """Swap marks index and index+1; returns (marks, created mark or None).

    When the bottom of the left mark is the top of the right one (or the
    reverse) a third mark appears just right of the pair.
    """
    marks = tuple(marks)
    _same_gap(marks, index, index + 1)
    h1, h2 = marks[index], marks[index + 1]
    created = None
    if h1.bottom == h2.top:
        created = HandleslideMark(h1.gap, h1.top, h2.bottom, fq.neg(fq.mul(h1.coeff, h2.coeff)))
    elif h1.top == h2.bottom:
        created = HandleslideMark(h1.gap, h2.top, h1.bottom, fq.mul(h1.coeff, h2.coeff))
    mid = (h2, h1) + ((created,) if created is not None else ())
    return marks[:index] + mid + marks[index + 2:], created


def type3_merge(fq, marks, index):
    marks = tuple(marks)
    _same_gap(marks, index, index + 1)
    h1, h2 = marks[index], marks[index + 1]
    if (h1.top, h1.bottom) != (h2.top, h2.bottom):
        raise ShapeError("merged marks must share both endpoints")
    merged = HandleslideMark(h1.gap, h1.top, h1.bottom, fq.add(h1.coeff, h2.coeff))
    return marks[:index] + (merged,) + marks[index + 2:]


def type3_split(fq, marks, index, first):
    """Inverse of a merge: split a mark into coefficients first, rest."""
    marks = tuple(marks)
    h = marks[index]
    a = HandleslideMark(h.gap, h.top, h.bottom, first)
    b = HandleslideMark(h.gap, h.top, h.bottom, fq.sub(h.coeff, first))
    return marks[:index] + (a, b) + marks[index + 1:]


def type4_introduce(fq, marks, index, gap, top, bottom, r):
    """Introduce a cancelling pair r, -r."""
    marks = tuple(marks)
    _check_slot(marks, index, gap)
    pair = (HandleslideMark(gap, top, bottom, r), HandleslideMark(gap, top, bottom, fq.neg(r)))
    return marks[:index] + pair + marks[index:]


def type4_cancel(fq, marks, index):
    marks = tuple(marks)
    _same_gap(marks, index, index + 1)
    h1, h2 = marks[index], marks[index + 1]
    if (h1.top, h1.bottom) != (h2.top, h2.bottom) or fq.add(h1.coeff, h2.coeff):
        raise ShapeError("marks do not cancel")
    return marks[:index] + marks[index + 2:]


# ---------------------------------------------------------------------------
# collections


def is_properly_ordered(V, transposed=False):
    keys = [(-a, b) for a, b, _ in V]
    if transposed:
        keys = [(a, -b) for a, b, _ in V]
    return keys == sorted(keys) and len(set(keys)) == len(keys)


def _factor(order):
    if order == "proper":
        return proper_factor
    if order == "transposed":
        return transposed_factor
    raise ValueError(order)


def type5_incorporate(fq, n, V, h, order="proper"):
    """Move the mark h (top, bottom, coeff) from just right of V into V.

    Type 2 and 3 moves keep the product of V; the ordering makes the result
    unique, so it is the factorization of M F(h) in the same order.
    """
    top, bottom, r = h
    M = _times(fq, matrix_of_marks(fq, n, V), top, bottom, r)
    return _factor(order)(fq, M)


def _times(fq, M, top, bottom, r):
    out = [row[:] for row in M]
    a, b = top - 1, bottom - 1
    for row in out:
        if row[a]:
            row[b] = fq.sub(row[b], fq.mul(r, row[a]))
    return out


def type6_remove(fq, n, V, index, side="left", order="proper"):
    """Pull V[index] out of V to the given side; returns (h, rest) with the
    coefficient of h unchanged and rest in the same order as V."""
    top, bottom, r = V[index]
    M = matrix_of_marks(fq, n, V)
    if side == "left":
        # V = h . rest, so rest = F(h)^{-1} V
        inv = unipotent_inverse(fq, matrix_of_marks(fq, n, [(top, bottom, r)]))
        rest = _matmul(fq, inv, M)
    elif side == "right":
        rest = _times(fq, M, top, bottom, fq.neg(r))
    else:
        raise ValueError(side)
    return (top, bottom, r), _factor(order)(fq, rest)


def _matmul(fq, A, B):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if A[i][k]:
                a = A[i][k]
                for j in range(n):
                    if B[k][j]:
                        out[i][j] = fq.add(out[i][j], fq.mul(a, B[k][j]))
    return out
