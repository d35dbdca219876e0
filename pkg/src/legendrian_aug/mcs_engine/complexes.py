"""Handleslide marks and the triangular complexes they determine.

A complex on ``s`` strands is an ``s x s`` matrix of field codes with
``D[i][j] = <d e_i, e_j>`` (0-based, nonzero only for ``i < j``).  Strand
heights in marks are 1-based, as everywhere else in the package.

A mark sits in a gap of the front (the strip left of event ``gap``); marks
sharing a gap are ordered left to right by their position in the mark list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import GradingError, ObstructionAt, ShapeError
from ..front_model import EventKind

__all__ = [
    "HandleslideMark",
    "TriComplex",
    "Mcs",
    "Propagator",
    "build_complexes",
    "slot_sequence",
    "sort_marks",
]


@dataclass(frozen=True, order=True)
class HandleslideMark:
    gap: int
    top: int
    bottom: int
    coeff: int  # field code

    def to_json(self, fq=None, slot=None):
        out = {"gap": self.gap, "top": self.top, "bottom": self.bottom,
               "coeff": fq.format(self.coeff) if fq is not None else self.coeff}
        if slot is not None:
            out = {"slot": slot, **out}
        return out


@dataclass(frozen=True)
class TriComplex:
    entries: tuple  # tuple of row tuples

    @property
    def size(self):
        return len(self.entries)

    def coeff(self, i, j):
        """<d e_i, e_j> with 1-based strand heights."""
        return self.entries[i - 1][j - 1]

    def nonzero_pairs(self):
        return [(i + 1, j + 1) for i, row in enumerate(self.entries) for j, v in enumerate(row) if v]

    def is_triangular(self):
        return all(not v for i, row in enumerate(self.entries) for j, v in enumerate(row) if j <= i)

    def d_squared_zero(self, fq):
        n = self.size
        E = self.entries
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(i + 1, j):
                    if E[i][k] and E[k][j]:
                        acc = fq.add(acc, fq.mul(E[i][k], E[k][j]))
                if acc:
                    return False
        return True

    def standard_for(self, involution):
        """True when D[i][j] != 0 exactly for the pairs of the involution."""
        n = self.size
        if len(involution) != n:
            return False
        for i in range(n):
            for j in range(i + 1, n):
                if bool(self.entries[i][j]) != (involution[i] == j + 1):
                    return False
        return True

    def to_json(self, fq=None):
        fmt = (lambda c: fq.format(c)) if fq is not None else (lambda c: c)
        return [[fmt(v) for v in row] for row in self.entries]


def sort_marks(marks):
    """Stable sort by gap: keeps the left-to-right order inside each gap."""
    return tuple(sorted(marks, key=lambda h: h.gap))


def slot_sequence(d, marks):
    """Interleave events and marks: a list of ("mark", HandleslideMark) and
    ("event", index) items in left-to-right order."""
    by_gap = {}
    for h in marks:
        by_gap.setdefault(h.gap, []).append(h)
    seq = []
    for ev in range(len(d.events)):
        for h in by_gap.pop(ev, ()):
            seq.append(("mark", h))
        seq.append(("event", ev))
    for g in sorted(by_gap):
        for h in by_gap[g]:
            seq.append(("mark", h))
    return seq


class Propagator:
    """Left-to-right construction of the complexes (simple left cusps).

    ``marked`` maps a component to a required marked value; components not
    listed accept any unit and the value found is recorded in ``values``.
    """

    def __init__(self, d, fq, marked=None):
        self.d = d
        self.fq = fq
        self.D = []
        self.required = dict(marked or {})
        self.values = {}

    def snapshot(self):
        return TriComplex(tuple(tuple(r) for r in self.D))

    def slide(self, top, bottom, r):
        """Handleslide e_top -> e_top - r e_bottom (heights 1-based)."""
        if not r:
            return
        fq = self.fq
        D = self.D
        a, b = top - 1, bottom - 1
        n = len(D)
        ra, rb = D[a], D[b]
        for w in range(n):
            if rb[w]:
                ra[w] = fq.add(ra[w], fq.mul(r, rb[w]))
        nr = fq.neg(r)
        for u in range(n):
            if D[u][a]:
                D[u][b] = fq.add(D[u][b], fq.mul(nr, D[u][a]))

    def left_cusp(self, k):
        D = self.D
        a = k - 1
        n = len(D)
        new = [[0] * (n + 2) for _ in range(n + 2)]
        idx = [i + 2 if i >= a else i for i in range(n)]
        for i in range(n):
            row = D[i]
            ni = new[idx[i]]
            for j in range(n):
                if row[j]:
                    ni[idx[j]] = row[j]
        new[a][a + 1] = 1
        self.D = new

    def crossing(self, k):
        """Swap strands k, k+1; returns False when <d e_k, e_k+1> != 0."""
        D = self.D
        a = k - 1
        if D[a][a + 1]:
            return False
        D[a], D[a + 1] = D[a + 1], D[a]
        for row in D:
            row[a], row[a + 1] = row[a + 1], row[a]
        return True

    def right_cusp(self, k, want):
        """Quotient by span{e_k, d e_k}; ``want`` is the required pivot, or
        None for "any unit".  Returns the pivot, or None on failure."""
        fq = self.fq
        D = self.D
        a = k - 1
        n = len(D)
        pivot = D[a][a + 1]
        if not pivot or (want is not None and pivot != want):
            return None
        f = fq.neg(fq.inv(pivot))
        rowk = D[a]
        for i in range(n):
            col = D[i][a + 1]
            if col and i != a:
                g = fq.mul(col, f)
                ri = D[i]
                for j in range(a + 2, n):
                    if rowk[j]:
                        ri[j] = fq.add(ri[j], fq.mul(g, rowk[j]))
        keep = [i for i in range(n) if i not in (a, a + 1)]
        self.D = [[D[i][j] for j in keep] for i in keep]
        return pivot

    def event(self, ev):
        """Pass event ``ev``; returns an error message or None."""
        e = self.d.events[ev]
        k = e.position
        if e.kind is EventKind.LEFT_CUSP:
            self.left_cusp(k)
            return None
        if e.kind is EventKind.CROSSING:
            if not self.crossing(k):
                return f"<d e_{k}, e_{k + 1}> = {self.fq.format(self.D[k - 1][k])} before crossing at event {ev}"
            return None
        comp = self.d.marked_component(ev)
        fq = self.fq
        if comp is None:
            want = fq.neg(1)
        elif comp in self.required:
            want = fq.neg(self.required[comp])
        else:
            want = None
        got = self.D[k - 1][k]
        pivot = self.right_cusp(k, want)
        if pivot is None:
            need = "a unit" if want is None else fq.format(want)
            return f"<d e_{k}, e_{k + 1}> = {fq.format(got)} before right cusp at event {ev}, need {need}"
        if comp is not None:
            self.values[comp] = fq.neg(pivot)
        return None


@dataclass(frozen=True, eq=False)
class Mcs:
    """An MCS with simple left cusps: its marks fix everything else."""

    diagram: object
    m: int
    fq: object
    marks: tuple
    complexes: tuple  # complexes[i] sits right after slot i - 1; complexes[0] is empty
    marked_values: tuple  # per component
    form: str = "Generic"
    ruling: object = None
    sequence: tuple = field(default=(), repr=False)

    def complex_before_event(self, ev):
        for i, (kind, x) in enumerate(self.sequence):
            if kind == "event" and x == ev:
                return self.complexes[i]
        raise IndexError(ev)

    def complex_after_event(self, ev):
        for i, (kind, x) in enumerate(self.sequence):
            if kind == "event" and x == ev:
                return self.complexes[i + 1]
        raise IndexError(ev)

    def nonzero_marks(self):
        return tuple(h for h in self.marks if h.coeff)

    def same_marks(self, other):
        return self.nonzero_marks() == other.nonzero_marks() and self.marked_values == other.marked_values

    def to_json(self):
        fq = self.fq
        slots = {}
        for i, (kind, x) in enumerate(self.sequence):
            if kind == "mark":
                slots.setdefault(id(x), i)
        out = {
            "form": self.form,
            "marks": [h.to_json(fq, slots.get(id(h))) for h in self.marks],
            "marked_values": [fq.format(v) for v in self.marked_values],
        }
        if self.ruling is not None:
            out["ruling"] = list(self.ruling.switches)
        return out


def _check_mark(d, mu, m, h):
    if h.gap < 0 or h.gap > len(d.events):
        raise ShapeError(f"mark gap {h.gap} outside the front")
    s = len(d.gaps[h.gap])
    if not (1 <= h.top < h.bottom <= s):
        raise ShapeError(f"mark {h} needs 1 <= top < bottom <= {s}")
    if mu is not None:
        a, b = mu.at(h.gap, h.top), mu.at(h.gap, h.bottom)
        same = a == b if m == 0 else (a - b) % m == 0
        if not same:
            raise GradingError(f"mark {h} joins strands of potential {a} and {b}, not equal mod {m}")


def build_complexes(d, fq, marks, mu=None, m=0, marked_values=None, form="Generic", ruling=None):
    """Propagate the complexes of the MCS with simple left cusps and these marks.

    ``marked_values`` is a sequence of units per component, or None to accept
    whatever unit the propagation finds at each marked cusp.  Raises
    ObstructionAt(slot) at the first slot whose coefficient condition fails.
    """
    marks = sort_marks(marks)
    for h in marks:
        _check_mark(d, mu, m, h)
    required = None
    if marked_values is not None:
        if len(marked_values) != d.n_components:
            raise ShapeError(f"expected {d.n_components} marked values")
        if any(not v for v in marked_values):
            raise ObstructionAt(0, "marked values must be units")
        required = dict(enumerate(marked_values))
    seq = slot_sequence(d, marks)
    prop = Propagator(d, fq, required)
    complexes = [prop.snapshot()]
    for slot, (kind, x) in enumerate(seq):
        if kind == "mark":
            prop.slide(x.top, x.bottom, x.coeff)
        else:
            err = prop.event(x)
            if err is not None:
                raise ObstructionAt(slot, err)
        complexes.append(prop.snapshot())
    values = tuple(prop.values.get(c, 1) for c in range(d.n_components))
    return Mcs(d, m, fq, marks, tuple(complexes), values, form, ruling, tuple(seq))
