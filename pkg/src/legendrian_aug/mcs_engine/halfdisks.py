"""Half-disks left of a vertical line and the differentials they predict.

For an A-form MCS, the coefficient <d e_i, e_j> just right of a crossing or
left cusp is a signed sum over immersed half-disks bounded on the right by
the segment between strands i and j.  Each negative corner at a crossing b
contributes beta * lambda_b: lambda_b is the mark coefficient just left of b
and beta is +1 when the disk fills the lower quadrant of b, -1 for the upper.

The walk here is written from scratch so that it checks the propagation in
``complexes`` rather than sharing code with the DGA disk search.
"""

from __future__ import annotations

from ..front_model import EventKind
from .aform import aform_coefficients

__all__ = ["half_disks", "half_disk_sum", "check_half_disks"]


def half_disks(d, gap, i, j):
    """Half-disks ending at heights i < j in ``gap``: a list of corner lists
    [(crossing event, beta)], one per disk."""
    out = []

    def walk(ev, u, l, corners):
        if ev < 0:
            return
        e = d.events[ev]
        K = e.position
        if e.kind is EventKind.LEFT_CUSP:
            if (u, l) == (K, K + 1):
                out.append(tuple(corners))
                return
            if u in (K, K + 1) or l in (K, K + 1):
                return
            walk(ev - 1, u - 2 if u > K + 1 else u, l - 2 if l > K + 1 else l, corners)
            return
        if e.kind is EventKind.RIGHT_CUSP:
            raise ValueError("half-disks are only traced left of the right cusps")
        # the upper path may turn at the crossing when it arrives on the
        # lower strand; the lower path when it arrives on the upper strand
        ups = []
        if u == K:
            ups = [(K + 1, None)]
        elif u == K + 1:
            ups = [(K, None), (K + 1, 1)]
        else:
            ups = [(u, None)]
        lows = []
        if l == K:
            lows = [(K + 1, None), (K, -1)]
        elif l == K + 1:
            lows = [(K, None)]
        else:
            lows = [(l, None)]
        for nu, bu in ups:
            for nl, bl in lows:
                if nu >= nl:
                    continue
                extra = [(ev, b) for b in (bu, bl) if b is not None]
                walk(ev - 1, nu, nl, corners + extra)

    walk(gap - 1, i, j, [])
    return out


def half_disk_sum(d, fq, gap, i, j, lam):
    """Sum over half-disks of prod(beta * lambda); ``lam`` maps a crossing
    event to its mark coefficient."""
    total = 0
    for corners in half_disks(d, gap, i, j):
        v = 1
        for ev, beta in corners:
            c = lam.get(ev, 0)
            v = fq.mul(v, c if beta > 0 else fq.neg(c))
            if not v:
                break
        total = fq.add(total, v)
    return total


def check_half_disks(mcs, mu):
    """Compare every complex right of a crossing or left cusp with the
    half-disk sums.  Returns a list of mismatches (gap, i, j, got, want)."""
    d, fq = mcs.diagram, mcs.fq
    coeffs, sites = aform_coefficients(mcs, mu)
    lam = {s.event: c for s, c in zip(sites, coeffs) if s.kind == "crossing"}
    bad = []
    first_right = d.right_cusps[0] if d.right_cusps else len(d.events)
    for ev in range(first_right):
        C = mcs.complex_after_event(ev)
        n = C.size
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                want = half_disk_sum(d, fq, ev + 1, i, j, lam)
                got = C.coeff(i, j)
                if got != want:
                    bad.append((ev + 1, i, j, got, want))
    return bad
