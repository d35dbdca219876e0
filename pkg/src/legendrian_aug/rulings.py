"""Normal rulings: enumeration, crossing classification, ruling polynomial.

A ruling is stored as one involution per gap, each a tuple whose entry
``h - 1`` is the height paired with height ``h``.  Disks are followed through
the sweep with integer ids: at a switch the ids stay with heights, at any
other crossing they travel with the strands.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LaurentPoly
from .front_model import EventKind, check_grading, crossing_degrees, is_graded

__all__ = [
    "NormalRuling",
    "RulingStats",
    "enumerate_rulings",
    "ruling_polynomial",
    "ruling_stats",
    "switch_case",
    "return_case",
    "disk_profile",
    "a_profile",
]

SWITCH_TYPES = ("S1", "S2", "S3")
RETURN_TYPES = ("R1", "R2", "R3")
DEPARTURE = "D"


def switch_case(inv, k):
    """Normality case of a switch at heights k, k+1 (None when not normal)."""
    a, b = inv[k - 1], inv[k]
    if a < k and b > k + 1:
        return "S1"
    if b < a < k:
        return "S2"
    if k + 1 < b < a:
        return "S3"
    return None


def return_case(inv, k):
    """Return type of a non-switch crossing, judged on the involution to its left.

    None means the two disks are not interlaced there, i.e. the crossing is a
    departure.
    """
    a, b = inv[k - 1], inv[k]
    if b < k and a > k + 1:
        return "R1"
    if a < b < k:
        return "R2"
    if k + 1 < a < b:
        return "R3"
    return None


@dataclass(frozen=True, eq=False)
class NormalRuling:
    diagram: object
    m: int
    switches: tuple  # 1-based crossing ordinals
    involutions: tuple  # per gap
    disks: tuple  # per gap: disk id at each height
    crossing_types: tuple  # per crossing: S1..S3, R1..R3 or D
    graded: tuple  # per crossing
    n_disks: int

    @property
    def bitmask(self):
        return sum(1 << (i - 1) for i in self.switches)

    @property
    def key(self):
        return frozenset(self.switches)

    def involution_at(self, gap):
        return self.involutions[gap]

    def partner(self, gap, height):
        return self.involutions[gap][height - 1]

    def disk_at(self, gap, height):
        return self.disks[gap][height - 1]

    def classification(self, crossing):
        return self.crossing_types[crossing - 1]

    def is_switch(self, crossing):
        return self.crossing_types[crossing - 1] in SWITCH_TYPES

    def is_graded_return(self, crossing):
        return self.crossing_types[crossing - 1] in RETURN_TYPES and self.graded[crossing - 1]

    def disk_strands(self, gap, disk):
        """(upper, lower) heights of a disk in a gap, or None if absent."""
        hs = [h + 1 for h, x in enumerate(self.disks[gap]) if x == disk]
        return tuple(hs) if hs else None

    def to_json(self):
        return {
            "switches": list(self.switches),
            "classification": [
                {"crossing": i + 1, "type": t, "graded": g}
                for i, (t, g) in enumerate(zip(self.crossing_types, self.graded))
            ],
        }

    def __eq__(self, other):
        return isinstance(other, NormalRuling) and self.diagram == other.diagram and self.switches == other.switches

    def __hash__(self):
        return hash(self.switches)

    def __repr__(self):
        return f"NormalRuling(switches={set(self.switches) or '{}'})"


@dataclass(frozen=True)
class RulingStats:
    j: int
    returns_graded: int
    departures_graded: int
    r: int
    switch_list: tuple  # (crossing, type)
    return_list: tuple  # (crossing, type, graded)

    def to_json(self):
        return {
            "j": self.j,
            "r": self.r,
            "returns_graded": self.returns_graded,
            "departures_graded": self.departures_graded,
            "switches": [list(s) for s in self.switch_list],
            "returns": [list(s) for s in self.return_list],
        }


def enumerate_rulings(d, mu, m):
    """All m-graded normal rulings, ordered by switch bitmask."""
    check_grading(d, m)
    degrees = crossing_degrees(d, mu).crossing
    crossing_index = {ev: i for i, ev in enumerate(d.crossings)}
    n_events = len(d.events)
    out = []

    inv0 = ()
    disks0 = ()

    def step(ev, inv, disks, next_disk, invs, dks, types, grads, switches):
        if ev == n_events:
            out.append(
                NormalRuling(
                    diagram=d,
                    m=m,
                    switches=tuple(switches),
                    involutions=tuple(invs),
                    disks=tuple(dks),
                    crossing_types=tuple(types),
                    graded=tuple(grads),
                    n_disks=next_disk,
                )
            )
            return
        e = d.events[ev]
        k = e.position
        if e.kind is EventKind.LEFT_CUSP:
            # heights >= k move down by two
            shifted = [h + 2 if h >= k else h for h in inv]
            new = shifted[: k - 1] + [k + 1, k] + shifted[k - 1:]
            nd = list(disks[: k - 1]) + [next_disk, next_disk] + list(disks[k - 1:])
            new, nd = tuple(new), tuple(nd)
            step(ev + 1, new, nd, next_disk + 1, invs + [new], dks + [nd], types, grads, switches)
            return
        if e.kind is EventKind.RIGHT_CUSP:
            if inv[k - 1] != k + 1:
                return
            rest = inv[: k - 1] + inv[k + 1:]
            new = tuple(h - 2 if h > k + 1 else h for h in rest)
            nd = disks[: k - 1] + disks[k + 1:]
            step(ev + 1, new, nd, next_disk, invs + [new], dks + [nd], types, grads, switches)
            return
        # crossing
        ci = crossing_index[ev]
        graded = is_graded(degrees[ci], m)
        if inv[k - 1] == k + 1:
            return
        # not a switch: conjugate by the transposition (k k+1)
        swap = {k: k + 1, k + 1: k}
        new = list(inv)
        new[k - 1], new[k] = inv[k], inv[k - 1]
        new = tuple(swap.get(h, h) for h in new)
        nd = list(disks)
        nd[k - 1], nd[k] = nd[k], nd[k - 1]
        nd = tuple(nd)
        tag = return_case(inv, k) or DEPARTURE
        step(ev + 1, new, nd, next_disk, invs + [new], dks + [nd], types + [tag], grads + [graded], switches)
        # switch
        if graded:
            case = switch_case(inv, k)
            if case is not None:
                step(
                    ev + 1, inv, disks, next_disk, invs + [inv], dks + [disks],
                    types + [case], grads + [graded], switches + [ci + 1],
                )

    step(0, inv0, disks0, 0, [inv0], [disks0], [], [], [])
    out.sort(key=lambda r: r.bitmask)
    return out


def ruling_stats(rho, m=None):
    m = rho.m if m is None else m
    d = rho.diagram
    n_right = len(d.right_cusps)
    switch_list = tuple((i + 1, t) for i, t in enumerate(rho.crossing_types) if t in SWITCH_TYPES)
    return_list = tuple(
        (i + 1, t, g) for i, (t, g) in enumerate(zip(rho.crossing_types, rho.graded)) if t in RETURN_TYPES
    )
    returns_graded = sum(1 for _, _, g in return_list if g)
    departures_graded = sum(
        1 for t, g in zip(rho.crossing_types, rho.graded) if t == DEPARTURE and g
    )
    r = returns_graded + (n_right if m == 1 else 0)
    return RulingStats(
        j=len(switch_list) - n_right,
        returns_graded=returns_graded,
        departures_graded=departures_graded,
        r=r,
        switch_list=switch_list,
        return_list=return_list,
    )


def ruling_polynomial(d, mu, m):
    total = {}
    for rho in enumerate_rulings(d, mu, m):
        j = len(rho.switches) - len(d.right_cusps)
        total[j] = total.get(j, 0) + 1
    return LaurentPoly(total)


# ---------------------------------------------------------------------------
# disk-pair profile between the last left cusp and the first right cusp


def disk_profile(rho, gap):
    """Disks of a gap as (upper, lower) height pairs, sorted by upper height."""
    inv = rho.involutions[gap]
    return sorted((h, p) for h, p in enumerate(inv, 1) if h < p)


def a_profile(rho, mu, gap):
    """Count disk pairs that are disjoint with the upper one one Maslov step
    higher, or nested with equal upper-strand potential (potentials mod m)."""
    m = rho.m
    d = rho.diagram

    def pot(h):
        v = mu.values[d.arc_at(gap, h)]
        return v % m if m else v

    def same(a, b):
        return a == b if not m else (a - b) % m == 0

    pairs = disk_profile(rho, gap)
    total = 0
    for i, (a, b) in enumerate(pairs):
        for c, e in pairs[i + 1:]:
            # a < c by sorting
            if b < c:
                total += same(pot(a), pot(c) + 1)
            elif e < b:
                total += same(pot(a), pot(c))
    return total
