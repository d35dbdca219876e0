"""A-form MCSs and their correspondence with augmentations.

An A-form MCS has one mark on the two crossing strands just left of every
m-graded crossing and, for m = 1, one on the cusp strands just left of every
right cusp.  Its coefficients are the augmentation values up to orientation
signs; its marked values are the values of the t-variables raised to the
orientation sign of the marked cusp.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..aug_count import Augmentation
from ..errors import NotAForm, NotAugmentation, ObstructionAt, ScaleError
from ..front_model import EventKind, check_grading, crossing_degrees, is_graded
from ..kernels import (
    DEFAULT_CAP,
    OP_CROSS,
    OP_LEFT,
    OP_RIGHT,
    OP_SLIDE,
    SlotProgram,
    box_size,
    decode_point,
    run_program,
)
from .complexes import HandleslideMark, Propagator, build_complexes

__all__ = [
    "Site",
    "aform_sites",
    "aform_marks",
    "aform_program",
    "enumerate_aform",
    "enumerate_aform_count",
    "theta",
    "theta_inv",
    "site_sign",
    "CUSP_RULE",
]

# Orientation factor for the cusp marks when m = 1: "fixed" uses +1,
# "oriented" the cusp's orientation sign.  Both give a bijection because the
# augmentation set is symmetric under negating those cusp values.
CUSP_RULE = "fixed"


@dataclass(frozen=True)
class Site:
    """Where an A-form mark may sit."""

    kind: str  # "crossing" or "right_cusp"
    event: int
    position: int  # the upper of the two strands
    generator: int  # id of the matching DGA generator

    @property
    def gap(self):
        return self.event


def aform_sites(d, mu, m):
    check_grading(d, m)
    degrees = crossing_degrees(d, mu).crossing
    n_cross = len(d.crossings)
    out = []
    for i, ev in enumerate(d.crossings):
        if is_graded(degrees[i], m):
            out.append(Site("crossing", ev, d.events[ev].position, i))
    if m == 1:
        for j, ev in enumerate(d.right_cusps):
            out.append(Site("right_cusp", ev, d.events[ev].position, n_cross + j))
    out.sort(key=lambda s: s.event)
    return out


def site_sign(d, site, rule=None):
    """+1 or -1 relating a mark coefficient to the augmentation value."""
    rule = rule or CUSP_RULE
    if site.kind == "crossing":
        return 1 if d.understrand_leftward(site.event) else -1
    return 1 if rule == "fixed" else d.cusp_sign(site.event)


def aform_marks(sites, coeffs):
    return tuple(
        HandleslideMark(s.gap, s.position, s.position + 1, c) for s, c in zip(sites, coeffs)
    )


def aform_program(d, mu, m):
    """Slot program over (marked values) x (site coefficients)."""
    sites = aform_sites(d, mu, m)
    n_units = d.n_components
    site_at = {s.event: i for i, s in enumerate(sites)}
    rows = []
    width = 0
    size = 0
    for ev, e in enumerate(d.events):
        a = e.position - 1
        if ev in site_at:
            rows.append((OP_SLIDE, a, a + 1, n_units + site_at[ev]))
        if e.kind is EventKind.LEFT_CUSP:
            rows.append((OP_LEFT, a, 0, 0))
            size += 2
        elif e.kind is EventKind.CROSSING:
            rows.append((OP_CROSS, a, 0, 0))
        else:
            comp = d.marked_component(ev)
            rows.append((OP_RIGHT, a, 0, -1 if comp is None else comp))
            size -= 2
        width = max(width, size)
    return SlotProgram(rows, width, n_units, len(sites)), sites


def _dfs_valid(d, fq, sites):
    """Yield (coefficients, marked values) for every valid A-form MCS.

    Depth-first over the sites with the propagated matrix shared by all
    assignments with a common prefix.
    """
    site_at = {s.event: i for i, s in enumerate(sites)}
    events = d.events

    def clone(p):
        c = Propagator(d, fq)
        c.D = [row[:] for row in p.D]
        c.values = dict(p.values)
        return c

    def run(ev, p, coeffs):
        while ev < len(events):
            if ev in site_at:
                s = sites[site_at[ev]]
                for r in fq.elements():
                    c = clone(p)
                    c.slide(s.position, s.position + 1, r)
                    if c.event(ev) is None:
                        yield from run(ev + 1, c, coeffs + (r,))
                return
            if p.event(ev) is not None:
                return
            ev += 1
        yield coeffs, tuple(p.values.get(c, 1) for c in range(d.n_components))

    yield from run(0, Propagator(d, fq), ())


def enumerate_aform(d, mu, m, fq, cap=None):
    """Every m-graded A-form MCS, as (coefficients, marked values) pairs in
    lexicographic order of the coefficients."""
    sites = aform_sites(d, mu, m)
    _cap(d, sites, fq, cap)
    return list(_dfs_valid(d, fq, sites)), sites


def _cap(d, sites, fq, cap):
    total = box_size(d.n_components, len(sites), fq.q)
    cap = DEFAULT_CAP if cap is None else cap
    if total > cap:
        raise ScaleError(f"search space {total} exceeds the cap {cap}")


def enumerate_aform_count(d, mu, m, fq, cap=None, route="kernel"):
    """Number of m-graded A-form MCSs over fq.

    ``kernel`` runs the compiled slot program over every (marked values,
    coefficients) point; ``python`` walks the coefficient tree depth first.
    """
    if route == "python":
        sites = aform_sites(d, mu, m)
        _cap(d, sites, fq, cap)
        return sum(1 for _ in _dfs_valid(d, fq, sites))
    if route != "kernel":
        raise ValueError(f"unknown route {route!r}")
    program, _ = aform_program(d, mu, m)
    return run_program(fq, program, cap=cap)


def aform_points(d, mu, m, fq, cap=None):
    """Valid (marked values, coefficients) points from the kernel route."""
    program, sites = aform_program(d, mu, m)
    hits = run_program(fq, program, collect=True, cap=cap)
    out = []
    for idx in hits:
        pt = decode_point(int(idx), program.n_units, program.n_free, fq.q)
        out.append((pt[program.n_units:], pt[: program.n_units]))
    return out, sites


# ---------------------------------------------------------------------------
# the correspondence with augmentations


def _signed(fq, sign, x):
    return x if sign > 0 else fq.neg(x)


def theta_inv(aug, d, mu, m, fq, rule=None):
    """The A-form MCS of an augmentation (raises NotAugmentation if there is none)."""
    sites = aform_sites(d, mu, m)
    coeffs = [_signed(fq, site_sign(d, s, rule), aug.gen_values[s.generator]) for s in sites]
    values = []
    for comp, ev in enumerate(d.marks):
        t = aug.t_values[comp]
        if not t:
            raise NotAugmentation(f"t{comp + 1} must be a unit")
        values.append(t if d.cusp_sign(ev) > 0 else fq.inv(t))
    try:
        return build_complexes(d, fq, aform_marks(sites, coeffs), mu, m, tuple(values), form="AForm")
    except ObstructionAt as exc:
        raise NotAugmentation(f"not an augmentation: {exc}") from exc


def aform_coefficients(mcs, mu):
    """Coefficient at each A-form site; raises NotAForm on a misplaced mark."""
    d = mcs.diagram
    sites = aform_sites(d, mu, mcs.m)
    by_gap = {s.gap: s for s in sites}
    coeffs = {s.gap: 0 for s in sites}
    seen = set()
    for h in mcs.marks:
        s = by_gap.get(h.gap)
        if s is None or (h.top, h.bottom) != (s.position, s.position + 1) or h.gap in seen:
            if not h.coeff:
                continue
            raise NotAForm(f"mark {h} is not an A-form mark")
        seen.add(h.gap)
        coeffs[h.gap] = h.coeff
    return [coeffs[s.gap] for s in sites], sites


def theta(mcs, mu, rule=None):
    """The augmentation of an A-form MCS."""
    d, fq = mcs.diagram, mcs.fq
    coeffs, sites = aform_coefficients(mcs, mu)
    n_gen = len(d.crossings) + len(d.right_cusps)
    gen = [0] * n_gen
    for s, c in zip(sites, coeffs):
        gen[s.generator] = _signed(fq, site_sign(d, s, rule), c)
    t = []
    for comp, ev in enumerate(d.marks):
        v = mcs.marked_values[comp]
        t.append(v if d.cusp_sign(ev) > 0 else fq.inv(v))
    return Augmentation(tuple(t), tuple(gen))


def all_aform_mcs(d, mu, m, fq, cap=None):
    """Every A-form MCS as a built Mcs."""
    found, sites = enumerate_aform(d, mu, m, fq, cap)
    return [
        build_complexes(d, fq, aform_marks(sites, c), mu, m, v, form="AForm") for c, v in found
    ]

