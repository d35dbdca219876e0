import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian_aug.corpus import corpus_front
from legendrian_aug.errors import ShapeError
from legendrian_aug.mcs_engine import HandleslideMark, all_aform_mcs, build_complexes
from legendrian_aug.mcs_engine.moves import (
    is_properly_ordered,
    type0_insert,
    type0_remove,
    type1_slide,
    type2_interchange,
    type3_merge,
    type3_split,
    type4_cancel,
    type4_introduce,
    type5_incorporate,
    type6_remove,
)
from legendrian_aug.mcs_engine.phipsi import matrix_of_marks, proper_factor, transposed_factor

from conftest import gf


def _boundary(mc):
    """Complexes next to every event, which a local move must not change."""
    d = mc.diagram
    return [(mc.complex_before_event(ev), mc.complex_after_event(ev)) for ev in range(len(d.events))]


def _rebuilt(mc, marks, mu):
    return build_complexes(mc.diagram, mc.fq, marks, mu, mc.m, mc.marked_values)


def _cases():
    out = []
    for name in ("trefoil", "hopf"):
        d, mu = corpus_front(name)
        for q in (2, 3):
            out += [(mu, mc) for mc in all_aform_mcs(d, mu, 0, gf(q))]
    return out


CASES = _cases()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(CASES) - 1), st.integers(0, 10**6))
def test_trivial_and_cancelling_marks(i, seed):
    mu, mc = CASES[i]
    rng = random.Random(seed)
    f, marks = mc.fq, mc.marks
    d = mc.diagram
    idx = rng.randint(0, len(marks))
    lo = marks[idx - 1].gap if idx else 0
    hi = marks[idx].gap if idx < len(marks) else len(d.events)
    slots = [(g, a, b) for g in range(lo, hi + 1) for a in range(1, len(d.gaps[g]) + 1)
             for b in range(a + 1, len(d.gaps[g]) + 1) if mu.at(g, a) == mu.at(g, b)]
    if not slots:
        return
    gap, top, bottom = rng.choice(slots)
    with0 = type0_insert(marks, idx, gap, top, bottom)
    assert type0_remove(with0, idx) == marks
    r = rng.randrange(f.q)
    pair = type4_introduce(f, marks, idx, gap, top, bottom, r)
    assert type4_cancel(f, pair, idx) == marks
    new = _rebuilt(mc, pair, mu)
    assert _boundary(new) == _boundary(mc)
    merged = type3_merge(f, pair, idx)
    assert merged[idx].coeff == 0
    assert type3_split(f, merged, idx, r) == pair


def test_interchange_creates_the_composite_mark():
    f = gf(5)
    h1 = HandleslideMark(2, 1, 2, 3)
    h2 = HandleslideMark(2, 2, 3, 4)
    out, created = type2_interchange(f, (h1, h2), 0)
    assert out[:2] == (h2, h1)
    assert created == HandleslideMark(2, 1, 3, f.neg(f.mul(3, 4)))
    n = 3
    before = matrix_of_marks(f, n, [(1, 2, 3), (2, 3, 4)])
    after = matrix_of_marks(f, n, [(h.top, h.bottom, h.coeff) for h in out])
    assert before == after
    out2, created2 = type2_interchange(f, (h2, h1), 0)
    assert created2 == HandleslideMark(2, 1, 3, f.mul(3, 4))
    assert matrix_of_marks(f, n, [(h.top, h.bottom, h.coeff) for h in out2]) == \
        matrix_of_marks(f, n, [(2, 3, 4), (1, 2, 3)])
    disjoint, none = type2_interchange(f, (HandleslideMark(1, 1, 2, 1), HandleslideMark(1, 3, 4, 2)), 0)
    assert none is None and len(disjoint) == 2


def test_slide_past_crossing_keeps_boundary_complexes():
    d, mu = corpus_front("trefoil")
    f = gf(3)
    ev = d.crossings[1]
    # with m = 1 every pair of strands may carry a mark
    pairs = [(a, b) for a in range(1, 5) for b in range(a + 1, 5) if (a, b) != (2, 3)]
    for mc in all_aform_mcs(d, mu, 1, f):
        idx = sum(1 for h in mc.marks if h.gap <= ev)
        for top, bottom in pairs:
            marks = type4_introduce(f, mc.marks, idx, ev, top, bottom, 1)
            slid = type1_slide(d, marks, idx + 1, "right")
            assert type1_slide(d, slid, idx + 1, "left") == marks
            new = _rebuilt(mc, slid, mu)
            old, now = _boundary(mc), _boundary(new)
            assert [x for e, x in enumerate(old) if e != ev] == [x for e, x in enumerate(now) if e != ev]
    with pytest.raises(ShapeError):
        type1_slide(d, (HandleslideMark(ev, 2, 3, 1),), 0, "right")


def _random_collection(rng, f, n, order):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = rng.randrange(f.q)
    return (proper_factor if order == "proper" else transposed_factor)(f, M)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(("proper", "transposed")), st.sampled_from((2, 3, 5)))
def test_incorporate_and_remove(seed, order, q):
    rng = random.Random(seed)
    f = gf(q)
    n = rng.randint(2, 5)
    V = _random_collection(rng, f, n, order)
    assert is_properly_ordered(V, order == "transposed")
    top = rng.randint(1, n - 1)
    h = (top, rng.randint(top + 1, n), rng.randrange(1, q))
    W = type5_incorporate(f, n, V, h, order)
    assert is_properly_ordered(W, order == "transposed")
    assert matrix_of_marks(f, n, W) == matrix_of_marks(f, n, list(V) + [h])
    if W:
        i = rng.randrange(len(W))
        for side in ("left", "right"):
            g, rest = type6_remove(f, n, W, i, side, order)
            assert g == W[i]
            assert is_properly_ordered(rest, order == "transposed")
            parts = [g] + list(rest) if side == "left" else list(rest) + [g]
            assert matrix_of_marks(f, n, parts) == matrix_of_marks(f, n, W)


def test_move_errors():
    f = gf(3)
    a, b = HandleslideMark(1, 1, 2, 1), HandleslideMark(2, 1, 2, 2)
    with pytest.raises(ShapeError):
        type3_merge(f, (a, b), 0)
    with pytest.raises(ShapeError):
        type0_remove((a,), 0)
    with pytest.raises(ShapeError):
        type4_cancel(f, (a, HandleslideMark(1, 1, 2, 1)), 0)
    with pytest.raises(ShapeError):
        type0_insert((b,), 1, 0, 1, 2)
