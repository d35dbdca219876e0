"""Sweeping a collection of marks across the front: SR form <-> A form.

A collection V of marks stacked left to right in one gap acts on the
complex as conjugation by the unipotent matrix M = F_1 F_2 ... F_n, where
F = I - r E_{top,bottom}.  Both sweeps carry V from the left end to the
right cusps, leaving marks of the target form behind at every m-graded
crossing and absorbing (or emitting) the marks of the source form.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotAForm, NotSRForm, ObstructionAt, ShapeError
from ..front_model import EventKind, crossing_degrees, is_graded
from ..rulings import enumerate_rulings
from .aform import aform_coefficients
from .complexes import HandleslideMark, Propagator, build_complexes
from .srform import companion_coefficients, sr_clusters

__all__ = [
    "phi",
    "psi",
    "SweepStep",
    "proper_factor",
    "transposed_factor",
    "unipotent_inverse",
    "matrix_of_marks",
]


@dataclass(frozen=True)
class SweepStep:
    event: int
    kind: str  # crossing classification, "L", "R" or "X" (ungraded)
    moves: tuple  # move types applied, in order
    emitted: tuple  # marks left behind at this event
    collection: tuple  # V after the event as (top, bottom, coeff), left to right

    def to_json(self, fq):
        return {
            "event": self.event,
            "kind": self.kind,
            "moves": list(self.moves),
            "emitted": [h.to_json(fq) for h in self.emitted],
            "collection": [[a, b, fq.format(c)] for a, b, c in self.collection],
        }


# ---------------------------------------------------------------------------
# unipotent matrices, 1-based heights in the public helpers


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _insert_pair(M, k):
    n = len(M)
    out = _eye(n + 2)
    idx = [i + 2 if i >= k - 1 else i for i in range(n)]
    for i in range(n):
        for j in range(n):
            out[idx[i]][idx[j]] = M[i][j]
    return out


def _right_slide(fq, M, top, bottom, r):
    """M <- M F(top, bottom, r): column bottom -= r column top."""
    if not r:
        return
    a, b = top - 1, bottom - 1
    for row in M:
        if row[a]:
            row[b] = fq.sub(row[b], fq.mul(r, row[a]))


def _left_slide(fq, M, top, bottom, r):
    """M <- F(top, bottom, r) M: row top -= r row bottom."""
    if not r:
        return
    a, b = top - 1, bottom - 1
    ra, rb = M[a], M[b]
    for j, v in enumerate(rb):
        if v:
            ra[j] = fq.sub(ra[j], fq.mul(r, v))


def _swap(M, k):
    a = k - 1
    M[a], M[a + 1] = M[a + 1], M[a]
    for row in M:
        row[a], row[a + 1] = row[a + 1], row[a]


def matrix_of_marks(fq, n, marks):
    """M = F_1 ... F_n for marks given as (top, bottom, coeff) left to right."""
    M = _eye(n)
    for top, bottom, r in marks:
        _right_slide(fq, M, top, bottom, r)
    return M


def proper_factor(fq, M):
    """Marks (top, bottom, coeff), larger top first then smaller bottom,
    whose product is the unipotent upper triangular M."""
    n = len(M)
    N = [row[:] for row in M]
    rows = []
    for t in range(n):
        row = [(t + 1, b + 1, fq.neg(N[t][b])) for b in range(t + 1, n) if N[t][b]]
        rows.append(row)
        # N <- N G_t^{-1}; G_t^{-1} = I + R_t since R_t^2 = 0
        for _, b, r in row:
            for i in range(n):
                if N[i][t]:
                    N[i][b - 1] = fq.add(N[i][b - 1], fq.mul(N[i][t], r))
    out = []
    for row in reversed(rows):
        out.extend(row)
    return tuple(out)


def unipotent_inverse(fq, M):
    n = len(M)
    inv = _eye(n)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = 0
            for t in range(i + 1, j + 1):
                if M[i][t] and inv[t][j]:
                    acc = fq.add(acc, fq.mul(M[i][t], inv[t][j]))
            inv[i][j] = fq.neg(acc)
    return inv


def transposed_factor(fq, M):
    """Marks, smaller top first then larger bottom, whose product is M.

    If M = G_1 ... G_s then M^{-1} = G_s^{-1} ... G_1^{-1} is a proper-order
    product, and each G_t^{-1} negates the coefficients of G_t.
    """
    return tuple((a, b, fq.neg(c)) for a, b, c in reversed(proper_factor(fq, unipotent_inverse(fq, M))))


def _conjugate(inv, k):
    """Involution after strands k, k+1 swap places."""
    sw = {k: k + 1, k + 1: k}
    out = list(inv)
    out[k - 1], out[k] = out[k], out[k - 1]
    return [sw.get(v, v) for v in out]


def _insert_inv(inv, k):
    out = [v + 2 if v >= k else v for v in inv]
    return out[: k - 1] + [k + 1, k] + out[k - 1:]


def _graded_flags(d, mu, m):
    deg = crossing_degrees(d, mu).crossing
    return {ev: is_graded(deg[i], m) for i, ev in enumerate(d.crossings)}


def _cusp_pairs(d):
    """Right cusp event -> upper height of its two strands in the gap left of
    the first right cusp, or None when those strands are not adjacent."""
    G = d.right_cusps[0]
    strands = list(d.gaps[G])
    out = {}
    for ev in d.right_cusps:
        hs = sorted(strands.index(a) + 1 for a in d.cusp_arcs(ev))
        out[ev] = hs[0] if hs[1] == hs[0] + 1 else None
    return out


def _cusp_shift(fq, M, d, ev, pairs):
    h = pairs[ev]
    if h is None:
        return 0
    return fq.neg(M[h - 1][h])


# move-type sequences of one sweep step
_GRADED = ("type5", "type6", "type1", "type2")
_UNGRADED = ("type1", "type2")
_END = {False: ("erase",), True: ("erase", "type1", "type3")}


def _record(trace, fq, ev, kind, moves, emitted, M, factor):
    if trace is not None:
        trace.append(SweepStep(ev, kind, tuple(moves), tuple(emitted), factor(fq, M)))


def phi(mcs, mu, rho=None, trace=None):
    """The A-form MCS obtained from an SR-form MCS by sweeping."""
    d, fq, m = mcs.diagram, mcs.fq, mcs.m
    rho = rho if rho is not None else mcs.ruling
    if rho is None:
        raise NotSRForm("an SR-form MCS needs its ruling")
    clusters = sr_clusters(mcs, rho)
    graded = _graded_flags(d, mu, m)
    M = []
    out = []
    for ev, e in enumerate(d.events):
        k = e.position
        if e.kind is EventKind.LEFT_CUSP:
            M = _insert_pair(M, k)
            _record(trace, fq, ev, "L", (), (), M, transposed_factor)
        elif e.kind is EventKind.CROSSING:
            c = d.crossings.index(ev) + 1
            if not graded[ev]:
                if M[k - 1][k]:
                    raise ObstructionAt(ev, "collection joins the strands of an ungraded crossing")
                _swap(M, k)
                _record(trace, fq, ev, "X", _UNGRADED, (), M, transposed_factor)
                continue
            lead, trail = clusters.get(ev, (None, ()))
            _right_slide(fq, M, k, k + 1, lead.coeff if lead is not None else 0)
            r = fq.neg(M[k - 1][k])
            emitted = [HandleslideMark(ev, k, k + 1, r)] if r else []
            _left_slide(fq, M, k, k + 1, fq.neg(r))
            _swap(M, k)
            for h in trail:
                _right_slide(fq, M, h.top, h.bottom, h.coeff)
            out += emitted
            moves = _GRADED + ("type5",) * len(trail)
            _record(trace, fq, ev, rho.classification(c), moves, emitted, M, transposed_factor)
        else:
            emitted = []
            if m == 1:
                pairs = _cusp_pairs(d)
                for b in d.right_cusps:
                    lead = clusters.get(b, (None, ()))[0]
                    z = lead.coeff if lead is not None else 0
                    lam = fq.add(z, _cusp_shift(fq, M, d, b, pairs))
                    if lam:
                        emitted.append(HandleslideMark(b, d.events[b].position, d.events[b].position + 1, lam))
            out += emitted
            _record(trace, fq, ev, "R", _END[m == 1], emitted, _eye(len(M)), transposed_factor)
            break
    return build_complexes(d, fq, out, mu, m, mcs.marked_values, form="AForm")


def psi(mcs, mu, trace=None):
    """(SR-form MCS, its ruling) obtained from an A-form MCS; the ruling is
    built crossing by crossing on the way."""
    d, fq, m = mcs.diagram, mcs.fq, mcs.m
    coeffs, sites = aform_coefficients(mcs, mu)
    at = {s.event: c for s, c in zip(sites, coeffs)}
    graded = _graded_flags(d, mu, m)
    M = []
    inv = []
    prop = Propagator(d, fq)
    out = []
    switches = []
    for ev, e in enumerate(d.events):
        k = e.position
        if e.kind is EventKind.LEFT_CUSP:
            M = _insert_pair(M, k)
            inv = _insert_inv(inv, k)
            prop.left_cusp(k)
            _record(trace, fq, ev, "L", (), (), M, proper_factor)
            continue
        if e.kind is EventKind.RIGHT_CUSP:
            emitted = []
            if m == 1:
                pairs = _cusp_pairs(d)
                for b in d.right_cusps:
                    z = fq.add(at.get(b, 0), _cusp_shift(fq, M, d, b, pairs))
                    if z:
                        emitted.append(HandleslideMark(b, d.events[b].position, d.events[b].position + 1, z))
            out += emitted
            _record(trace, fq, ev, "R", _END[m == 1], emitted, _eye(len(M)), proper_factor)
            break
        if not graded[ev]:
            if M[k - 1][k]:
                raise ObstructionAt(ev, "collection joins the strands of an ungraded crossing")
            _swap(M, k)
            inv = _conjugate(inv, k)
            prop.crossing(k)
            _record(trace, fq, ev, "X", _UNGRADED, (), M, proper_factor)
            continue
        _right_slide(fq, M, k, k + 1, at.get(ev, 0))
        r = fq.neg(M[k - 1][k])
        _left_slide(fq, M, k, k + 1, fq.neg(r))
        _swap(M, k)
        p, q = inv[k - 1], inv[k]
        left, right = [], []
        c1, c2 = sorted((p, q))
        if p == k + 1:
            raise NotAForm(f"strands {k}, {k + 1} are paired at crossing event {ev}")
        switch_shape = (p < k < k + 1 < q) or (q < p < k) or (k + 1 < q < p)
        if switch_shape:
            if r:
                kind = "S1" if p < k < k + 1 < q else ("S2" if q < p else "S3")
                rinv = fq.inv(r)
                left.append(HandleslideMark(ev, k, k + 1, r))
                right.append(HandleslideMark(ev + 1, k, k + 1, fq.neg(rinv)))
                if kind != "S1":
                    a, b = companion_coefficients(prop.D, inv, k)
                    coef = fq.mul(fq.mul(a, rinv), fq.inv(b))
                    right.append(HandleslideMark(ev + 1, c1, c2, coef))
                    _left_slide(fq, M, c1, c2, fq.neg(coef))
                _left_slide(fq, M, k, k + 1, rinv)
                switches.append(d.crossings.index(ev) + 1)
            else:
                kind = "D"
                inv = _conjugate(inv, k)
        else:
            if q < k and p > k + 1:
                kind = "R1"
            elif p < q < k:
                kind = "R2"
            else:
                kind = "R3"
            if r:
                left.append(HandleslideMark(ev, k, k + 1, r))
                if kind != "R1":
                    a, b = companion_coefficients(prop.D, inv, k)
                    if kind == "R2":
                        coef = fq.mul(fq.mul(a, r), fq.inv(b))
                    else:
                        coef = fq.mul(fq.mul(fq.inv(a), r), b)
                    right.append(HandleslideMark(ev + 1, c1, c2, coef))
                    _left_slide(fq, M, c1, c2, fq.neg(coef))
            inv = _conjugate(inv, k)
        for h in left:
            prop.slide(h.top, h.bottom, h.coeff)
        if not prop.crossing(k):
            raise ObstructionAt(ev, "SR side is not standard at a crossing")
        for h in right:
            prop.slide(h.top, h.bottom, h.coeff)
        out += left + right
        moves = _GRADED + ("type4", "type5") * len(right)
        _record(trace, fq, ev, kind, moves, tuple(left + right), M, proper_factor)
    rho = _ruling_with(d, mu, m, tuple(switches))
    return build_complexes(d, fq, out, mu, m, mcs.marked_values, form="SRForm", ruling=rho), rho


def _ruling_with(d, mu, m, switches):
    for rho in enumerate_rulings(d, mu, m):
        if tuple(rho.switches) == switches:
            return rho
    raise ShapeError(f"switches {switches} do not form an {m}-graded normal ruling")
