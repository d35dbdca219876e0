"""Nearly plat front diagrams.

A front is read left to right as a word of events.  ``L k`` opens a left
cusp whose two new strands sit at heights k and k+1 (height 1 is the top),
``X k`` crosses the strands at heights k and k+1, and ``R k`` joins them at
a right cusp.  All left cusps come first, then the crossings, then the right
cusps.

Between two consecutive cusps a strand is an *arc*; arcs are the natural
carriers of the Maslov potential and of the orientation, since crossings do
not change either.  Gaps are numbered so that gap ``g`` is the vertical strip
immediately to the left of event ``g``; the last gap lies right of every event.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import FrontSyntaxError, GradingError, InconsistentPotential, MarkError, ShapeError

__all__ = [
    "EventKind",
    "FrontEvent",
    "Arc",
    "FrontDiagram",
    "MaslovPotential",
    "CrossingDegree",
    "parse_front",
    "serialize_front",
    "maslov_potential",
    "crossing_degrees",
    "reduce_degree",
    "check_grading",
    "is_graded",
]


class EventKind(Enum):
    LEFT_CUSP = "L"
    CROSSING = "X"
    RIGHT_CUSP = "R"


_PHASE = {EventKind.LEFT_CUSP: 0, EventKind.CROSSING: 1, EventKind.RIGHT_CUSP: 2}


@dataclass(frozen=True)
class FrontEvent:
    kind: EventKind
    position: int

    def __str__(self):
        return f"{self.kind.value} {self.position}"


@dataclass(frozen=True)
class Arc:
    """A strand running from a left cusp to a right cusp."""

    index: int
    left_event: int
    right_event: int
    upper_at_left: bool
    upper_at_right: bool


@dataclass(frozen=True, eq=False)
class FrontDiagram:
    events: tuple
    gaps: tuple
    arcs: tuple
    arc_component: tuple
    arc_direction: tuple  # +1 when the arc is traversed left to right
    n_components: int
    rotation: tuple
    marks: tuple  # per component: event index of its marked right cusp
    declared_offsets: tuple | None = None
    declared_marks: tuple = ()
    _arc_at: dict = field(default=None, repr=False)

    # -- basic queries -------------------------------------------------

    @property
    def gcd_rotation(self):
        g = 0
        for r in self.rotation:
            g = math.gcd(g, abs(r))
        return g

    @property
    def grading_modulus(self):
        """2 r(L); zero means the grading is by the integers."""
        return 2 * self.gcd_rotation

    @property
    def crossings(self):
        return tuple(i for i, e in enumerate(self.events) if e.kind is EventKind.CROSSING)

    @property
    def right_cusps(self):
        return tuple(i for i, e in enumerate(self.events) if e.kind is EventKind.RIGHT_CUSP)

    @property
    def left_cusps(self):
        return tuple(i for i, e in enumerate(self.events) if e.kind is EventKind.LEFT_CUSP)

    def strands(self, gap):
        """Arc ids at heights 1..s in the given gap (index 0 is height 1)."""
        return self.gaps[gap]

    def arc_at(self, gap, height):
        return self.gaps[gap][height - 1]

    def crossing_arcs(self, event):
        """(overstrand, understrand) of a crossing.

        The overstrand descends from left to right, so it is the strand at
        height k just left of the crossing.
        """
        e = self.events[event]
        left = self.gaps[event]
        return left[e.position - 1], left[e.position]

    def cusp_arcs(self, event):
        """(upper, lower) arcs meeting at a cusp."""
        e = self.events[event]
        side = self.gaps[event + 1] if e.kind is EventKind.LEFT_CUSP else self.gaps[event]
        return side[e.position - 1], side[e.position]

    def component_of_event(self, event):
        return self.arc_component[self.cusp_arcs(event)[0]]

    def is_down_cusp(self, event):
        """True when the orientation runs from the upper to the lower strand."""
        upper, _ = self.cusp_arcs(event)
        kind = self.events[event].kind
        # at a left cusp the upper arc runs toward the cusp (leftward);
        # at a right cusp it runs away from it (also leftward)
        leftward = self.arc_direction[upper] < 0
        return leftward if kind is EventKind.LEFT_CUSP else not leftward

    def cusp_sign(self, event):
        return 1 if self.is_down_cusp(event) else -1

    def understrand_leftward(self, event):
        return self.arc_direction[self.crossing_arcs(event)[1]] < 0

    def marked_component(self, event):
        """Component index whose mark sits on this right cusp, or None."""
        for comp, ev in enumerate(self.marks):
            if ev == event:
                return comp
        return None

    def right_cusp_ordinal(self, event):
        return self.right_cusps.index(event) + 1

    def component_right_cusps(self, comp):
        return tuple(ev for ev in self.right_cusps if self.component_of_event(ev) == comp)

    # -- derived diagrams ----------------------------------------------

    def with_marks(self, marks):
        """Copy with marks given as {component (1-based): right-cusp ordinal}."""
        return build_front(self.events, self.declared_offsets, tuple(sorted(marks.items())))

    def with_offsets(self, offsets):
        return build_front(self.events, tuple(offsets), self.declared_marks)

    def serialize(self):
        return serialize_front(self)

    def __eq__(self, other):
        if not isinstance(other, FrontDiagram):
            return NotImplemented
        return (
            self.events == other.events
            and self.declared_offsets == other.declared_offsets
            and self.marks == other.marks
        )

    def __hash__(self):
        return hash((self.events, self.declared_offsets, self.marks))


# ---------------------------------------------------------------------------
# parsing and serialization

_EVENT_RE = re.compile(r"^([LXR])\s*(-?\d+)$")
_MARK_RE = re.compile(r"^mark\s+(-?\d+)\s+(-?\d+)$")


def parse_front(text):
    """Parse the text format into a validated :class:`FrontDiagram`.

    Events may be separated by newlines or by ``/``.  ``#`` starts a comment.
    """
    events = []
    offsets = None
    marks = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("offsets:"):
            body = line[len("offsets:"):].split()
            try:
                offsets = tuple(int(tok) for tok in body)
            except ValueError:
                raise FrontSyntaxError(f"line {lineno}: bad offsets {line!r}") from None
            continue
        if line.startswith("mark"):
            mo = _MARK_RE.match(line)
            if not mo:
                raise FrontSyntaxError(f"line {lineno}: bad mark directive {line!r}")
            comp, ordinal = int(mo.group(1)), int(mo.group(2))
            if comp in marks:
                raise MarkError(f"component {comp} marked twice")
            marks[comp] = ordinal
            continue
        for tok in line.split("/"):
            tok = tok.strip()
            if not tok:
                continue
            mo = _EVENT_RE.match(tok)
            if not mo:
                raise FrontSyntaxError(f"line {lineno}: bad token {tok!r}")
            events.append(FrontEvent(EventKind(mo.group(1)), int(mo.group(2))))
    return build_front(tuple(events), offsets, tuple(sorted(marks.items())))


def serialize_front(d):
    lines = [str(e) for e in d.events]
    if d.declared_offsets is not None:
        lines.append("offsets: " + " ".join(str(o) for o in d.declared_offsets))
    for comp, ordinal in d.declared_marks:
        lines.append(f"mark {comp} {ordinal}")
    return "\n".join(lines) + "\n"


def build_front(events, offsets=None, declared_marks=()):
    """Validate an event word and trace arcs, components and orientations."""
    events = tuple(events)
    if not events:
        raise ShapeError("empty diagram")
    phase = 0
    for i, e in enumerate(events):
        if _PHASE[e.kind] < phase:
            raise ShapeError(f"event {i + 1} ({e}) breaks the L*X*R* order")
        phase = _PHASE[e.kind]

    # sweep the strand stacks
    gaps = [()]
    arcs_left = []  # (left event, upper?) per arc id
    arc_right = {}
    stack = []
    for i, e in enumerate(events):
        k = e.position
        s = len(stack)
        if k < 1:
            raise ShapeError(f"event {i + 1} ({e}): position must be positive")
        if e.kind is EventKind.LEFT_CUSP:
            if k > s + 1:
                raise ShapeError(f"event {i + 1} ({e}): only {s} strands present")
            up, lo = len(arcs_left), len(arcs_left) + 1
            arcs_left += [(i, True), (i, False)]
            stack = stack[: k - 1] + [up, lo] + stack[k - 1:]
        else:
            if k + 1 > s:
                raise ShapeError(f"event {i + 1} ({e}): only {s} strands present")
            if e.kind is EventKind.CROSSING:
                stack[k - 1], stack[k] = stack[k], stack[k - 1]
            else:
                arc_right[stack[k - 1]] = (i, True)
                arc_right[stack[k]] = (i, False)
                del stack[k - 1: k + 1]
        gaps.append(tuple(stack))
    if stack:
        raise ShapeError(f"{len(stack)} strands left open at the right end")

    arcs = tuple(
        Arc(a, arcs_left[a][0], arc_right[a][0], arcs_left[a][1], arc_right[a][1])
        for a in range(len(arcs_left))
    )
    left_partner = {}
    right_partner = {}
    for a in arcs:
        left_partner.setdefault(a.left_event, []).append(a.index)
        right_partner.setdefault(a.right_event, []).append(a.index)

    def other(table, ev, a):
        x, y = table[ev]
        return y if a == x else x

    # trace components: leftmost cusp traversed from its upper to its lower strand
    n_arcs = len(arcs)
    component = [-1] * n_arcs
    direction = [0] * n_arcs
    rotation = []
    for ev in (i for i, e in enumerate(events) if e.kind is EventKind.LEFT_CUSP):
        upper, lower = sorted(left_partner[ev], key=lambda a: not arcs[a].upper_at_left)
        if component[upper] >= 0:
            continue
        comp = len(rotation)
        down = up = 0
        component[upper], direction[upper] = comp, -1
        down += 1  # the starting left cusp, upper -> lower
        a = lower
        while component[a] < 0:
            component[a], direction[a] = comp, +1
            # a runs rightward into its right cusp
            if arcs[a].upper_at_right:
                down += 1
            else:
                up += 1
            b = other(right_partner, arcs[a].right_event, a)
            if component[b] >= 0:
                break
            component[b], direction[b] = comp, -1
            # b runs leftward into its left cusp
            if arcs[b].upper_at_left:
                down += 1
            else:
                up += 1
            a = other(left_partner, arcs[b].left_event, b)
        if (down - up) % 2:
            raise ShapeError("odd cusp imbalance on a component")
        rotation.append((down - up) // 2)
    n_comp = len(rotation)

    if offsets is not None and len(offsets) != n_comp:
        raise ShapeError(f"offsets lists {len(offsets)} values for {n_comp} components")

    # marks: default to the leftmost right cusp of each component
    marks = [None] * n_comp
    for ev, e in enumerate(events):
        if e.kind is EventKind.RIGHT_CUSP:
            comp = component[gaps[ev][e.position - 1]]
            if marks[comp] is None:
                marks[comp] = ev
    right_events = [i for i, e in enumerate(events) if e.kind is EventKind.RIGHT_CUSP]
    for comp1, ordinal in declared_marks:
        if not 1 <= comp1 <= n_comp:
            raise MarkError(f"no component {comp1}")
        if not 1 <= ordinal <= len(right_events):
            raise MarkError(f"no right cusp with ordinal {ordinal}")
        ev = right_events[ordinal - 1]
        if component[gaps[ev][events[ev].position - 1]] != comp1 - 1:
            raise MarkError(f"right cusp {ordinal} is not on component {comp1}")
        marks[comp1 - 1] = ev

    return FrontDiagram(
        events=events,
        gaps=tuple(gaps),
        arcs=arcs,
        arc_component=tuple(component),
        arc_direction=tuple(direction),
        n_components=n_comp,
        rotation=tuple(rotation),
        marks=tuple(marks),
        declared_offsets=None if offsets is None else tuple(offsets),
        declared_marks=tuple(declared_marks),
    )


# ---------------------------------------------------------------------------
# Maslov potential and degrees


def reduce_degree(value, modulus):
    return value % modulus if modulus else value


@dataclass(frozen=True)
class MaslovPotential:
    diagram: FrontDiagram
    values: tuple  # per arc
    modulus: int
    offsets: tuple

    def of_arc(self, arc):
        return self.values[arc]

    def at(self, gap, height):
        return self.values[self.diagram.arc_at(gap, height)]


def maslov_potential(d, offsets=None):
    """Solve mu(upper) = mu(lower) + 1 at every cusp.

    Each component is anchored so that the lower arc of its leftmost cusp
    carries the component's offset.
    """
    if offsets is None:
        offsets = d.declared_offsets if d.declared_offsets is not None else (0,) * d.n_components
    offsets = tuple(int(o) for o in offsets)
    if len(offsets) != d.n_components:
        raise ShapeError(f"expected {d.n_components} offsets, got {len(offsets)}")
    mod = d.grading_modulus
    # arc -> list of (neighbor, value(neighbor) - value(arc))
    adj = [[] for _ in d.arcs]
    for ev, e in enumerate(d.events):
        if e.kind is EventKind.CROSSING:
            continue
        up, lo = d.cusp_arcs(ev)
        adj[lo].append((up, 1))
        adj[up].append((lo, -1))
    values = [None] * len(d.arcs)
    for ev in d.left_cusps:
        up, lo = d.cusp_arcs(ev)
        if values[lo] is not None:
            continue
        values[lo] = reduce_degree(offsets[d.arc_component[lo]], mod)
        todo = [lo]
        while todo:
            a = todo.pop()
            for b, delta in adj[a]:
                v = reduce_degree(values[a] + delta, mod)
                if values[b] is None:
                    values[b] = v
                    todo.append(b)
                elif values[b] != v:
                    raise InconsistentPotential(f"arc {b}: {values[b]} != {v}")
    return MaslovPotential(d, tuple(values), mod, offsets)


@dataclass(frozen=True)
class CrossingDegree:
    crossing: tuple  # per crossing, in left-to-right order
    right_cusp: tuple  # always 1
    modulus: int

    def of_event(self, d, event):
        if event in d.right_cusps:
            return reduce_degree(1, self.modulus)
        return self.crossing[d.crossings.index(event)]


def crossing_degrees(d, mu):
    out = []
    for ev in d.crossings:
        over, under = d.crossing_arcs(ev)
        out.append(reduce_degree(mu.values[over] - mu.values[under], mu.modulus))
    return CrossingDegree(tuple(out), (reduce_degree(1, mu.modulus),) * len(d.right_cusps), mu.modulus)


def check_grading(d, m):
    """Raise GradingError unless m = 0 with r(L) = 0, or m divides 2 r(L)."""
    if m < 0:
        raise GradingError(f"m must be non-negative, got {m}")
    mod = d.grading_modulus
    if m == 0:
        if mod != 0:
            raise GradingError(f"m = 0 needs r(L) = 0, but 2r(L) = {mod}")
    elif mod % m:
        raise GradingError(f"m = {m} does not divide 2r(L) = {mod}")


def is_graded(degree, m):
    """Degree is zero mod m (exactly zero when m = 0)."""
    return degree == 0 if m == 0 else degree % m == 0
