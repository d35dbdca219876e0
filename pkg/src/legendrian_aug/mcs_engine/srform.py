"""SR-form MCSs: the marks a normal ruling dictates, parametrized by the
solutions of its disk equations.

A point is ``(t, x, z)``: marked values, one unit per switch (in crossing
order) and one field element per m-graded return (in crossing order)
followed, when m = 1, by one per right cusp.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import NotASolution, NotSRForm, ObstructionAt, ShapeError
from ..front_model import EventKind
from ..rulings import RETURN_TYPES, SWITCH_TYPES
from .complexes import HandleslideMark, Propagator, build_complexes
from .graphs import ruling_graph, solutions

__all__ = [
    "SrPoint",
    "z_rho_points",
    "lambda_mcs",
    "sr_parameters",
    "standard_slots",
    "companion_coefficients",
    "sr_clusters",
]


@dataclass(frozen=True)
class SrPoint:
    t: tuple
    x: tuple
    z: tuple

    def flat(self):
        return self.t + self.x + self.z


def _return_sites(d, rho, m):
    """Crossing ordinals of graded returns, then right-cusp events if m = 1."""
    out = [("crossing", c) for c in range(1, len(d.crossings) + 1) if rho.is_graded_return(c)]
    if m == 1:
        out += [("right_cusp", ev) for ev in d.right_cusps]
    return out


def z_rho_points(d, rho, m, fq, cap=None):
    """All points of Z_rho: disk-equation solutions times F^r."""
    g = ruling_graph(d, rho)
    n_z = len(_return_sites(d, rho, m))
    out = []
    for t, x in solutions(g, fq, cap=cap):
        for z in itertools.product(fq.elements(), repeat=n_z):
            out.append(SrPoint(tuple(t), tuple(x), tuple(z)))
    return out


def companion_coefficients(D, inv, k):
    """(a, b) for the two disks through strands k, k+1 of a standard complex:
    a belongs to the disk with the highest strand, b to the other one."""
    A = {k, k + 1, inv[k - 1], inv[k]}
    alpha = min(A)
    beta = min(A - {alpha, inv[alpha - 1]})
    a = D[alpha - 1][inv[alpha - 1] - 1]
    b = D[beta - 1][inv[beta - 1] - 1]
    return a, b


def _cluster_marks(fq, kind, k, inv, D, r, gap):
    """Marks of a switch or graded-return cluster: (left, right) lists."""
    c1, c2 = sorted((inv[k - 1], inv[k]))
    left = [HandleslideMark(gap, k, k + 1, r)] if r else []
    right = []
    if kind in SWITCH_TYPES:
        rinv = fq.inv(r)
        right.append(HandleslideMark(gap + 1, k, k + 1, fq.neg(rinv)))
        if kind in ("S2", "S3"):
            a, b = companion_coefficients(D, inv, k)
            right.append(HandleslideMark(gap + 1, c1, c2, fq.mul(fq.mul(a, rinv), fq.inv(b))))
    elif kind in ("R2", "R3") and r:
        a, b = companion_coefficients(D, inv, k)
        if kind == "R2":
            c = fq.mul(fq.mul(a, r), fq.inv(b))
        else:
            c = fq.mul(fq.mul(fq.inv(a), r), b)
        right.append(HandleslideMark(gap + 1, c1, c2, c))
    return left, right


def lambda_mcs(point, d, mu, rho, m, fq):
    """The SR-form MCS compatible with rho whose parameters are ``point``."""
    t, x, z = point.t, point.x, point.z
    if len(t) != d.n_components or len(x) != len(rho.switches):
        raise ShapeError("point does not match the ruling")
    sites = _return_sites(d, rho, m)
    if len(z) != len(sites):
        raise ShapeError(f"expected {len(sites)} return/cusp parameters, got {len(z)}")
    if any(not v for v in t + x):
        raise NotASolution("t and x coordinates must be units")
    x_of = dict(zip(rho.switches, x))
    z_of = dict(zip(sites, z))
    prop = Propagator(d, fq)
    marks = []
    for ev, e in enumerate(d.events):
        k = e.position
        if e.kind is EventKind.CROSSING:
            c = d.crossings.index(ev) + 1
            kind = rho.classification(c)
            r = None
            if kind in SWITCH_TYPES:
                r = x_of[c] if kind != "S3" else fq.neg(x_of[c])
            elif kind in RETURN_TYPES and rho.graded[c - 1]:
                r = z_of[("crossing", c)]
            if r is not None:
                left, right = _cluster_marks(fq, kind, k, rho.involutions[ev], prop.D, r, ev)
                for h in left:
                    prop.slide(h.top, h.bottom, h.coeff)
                prop.crossing(k)
                for h in right:
                    prop.slide(h.top, h.bottom, h.coeff)
                marks += left + right
                continue
        elif e.kind is EventKind.RIGHT_CUSP and m == 1:
            r = z_of[("right_cusp", ev)]
            if r:
                marks.append(HandleslideMark(ev, k, k + 1, r))
                prop.slide(k, k + 1, r)
        err = prop.event(ev)
        if err is not None:
            raise NotASolution(f"not a solution of the disk equations: {err}")
    try:
        return build_complexes(d, fq, marks, mu, m, tuple(t), form="SRForm", ruling=rho)
    except ObstructionAt as exc:
        raise NotASolution(f"not a solution of the disk equations: {exc}") from exc


def _parse(mcs, rho):
    """Split the marks of an SR-form MCS into clusters.

    Returns (point, boundaries, clusters): boundaries lists, per gap, the
    index of the complex after the trailing marks of the previous cluster;
    clusters maps an event to (leading mark or None, trailing marks).
    Raises NotSRForm when the marks do not have the SR shape.
    """
    d, fq, m = mcs.diagram, mcs.fq, mcs.m
    seq = mcs.sequence
    by_gap = {}
    for h in mcs.marks:
        by_gap.setdefault(h.gap, []).append(h)
    x, zc, zb = [], {}, {}
    boundaries = []
    clusters = {}
    trailing = 0  # right marks owed by the previous cluster
    pos = 0
    for gap in range(len(d.events) + 1):
        marks = list(by_gap.get(gap, ()))
        n_here = len(marks)
        if trailing > len(marks):
            raise NotSRForm(f"gap {gap} lacks the trailing marks of the previous cluster")
        boundaries.append((pos + trailing, gap))
        if gap > 0 and gap - 1 in clusters:
            clusters[gap - 1] = (clusters[gap - 1][0], tuple(marks[:trailing]))
        marks = marks[trailing:]
        trailing = 0
        pos += n_here + 1
        if gap == len(d.events):
            if marks:
                raise NotSRForm(f"unexpected marks after the last event: {marks}")
            break
        e = d.events[gap]
        k = e.position
        lead = marks[0] if marks and (marks[0].top, marks[0].bottom) == (k, k + 1) else None
        if e.kind is EventKind.CROSSING:
            c = d.crossings.index(gap) + 1
            kind = rho.classification(c)
            if kind in SWITCH_TYPES:
                if lead is None or not lead.coeff:
                    raise NotSRForm(f"switch {c} has no leading mark")
                x.append(lead.coeff if kind != "S3" else fq.neg(lead.coeff))
                trailing = 2 if kind in ("S2", "S3") else 1
                clusters[gap] = (lead, ())
                marks = marks[1:]
            elif kind in RETURN_TYPES and rho.graded[c - 1]:
                r = lead.coeff if lead is not None else 0
                zc[c] = r
                clusters[gap] = (lead, ())
                if lead is not None:
                    marks = marks[1:]
                    trailing = 1 if kind in ("R2", "R3") and r else 0
        elif e.kind is EventKind.RIGHT_CUSP and m == 1:
            zb[gap] = lead.coeff if lead is not None else 0
            clusters[gap] = (lead, ())
            if lead is not None:
                marks = marks[1:]
        if any(h.coeff for h in marks):
            raise NotSRForm(f"marks {marks} in gap {gap} belong to no cluster")
    z = []
    for kind, where in _return_sites(d, rho, m):
        z.append(zc[where] if kind == "crossing" else zb[where])
    return SrPoint(tuple(mcs.marked_values), tuple(x), tuple(z)), boundaries, clusters


def sr_parameters(mcs, rho):
    """Read (t, x, z) back from the marks of an SR-form MCS."""
    return _parse(mcs, rho)[0]


def standard_slots(mcs, rho):
    """(complex index, gap) for every point between mark clusters."""
    return _parse(mcs, rho)[1]


def sr_clusters(mcs, rho):
    """Event -> (leading mark or None, trailing marks) for every cluster."""
    return _parse(mcs, rho)[2]
