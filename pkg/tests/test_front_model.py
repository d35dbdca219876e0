import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian_aug.corpus import CORPUS, corpus_front
from legendrian_aug.errors import FrontSyntaxError, GradingError, LegendrianError, MarkError, ShapeError
from legendrian_aug.front_model import (
    check_grading,
    crossing_degrees,
    is_graded,
    maslov_potential,
    parse_front,
    serialize_front,
)

from conftest import rand_front_text


def test_unknot_potential():
    d, mu = corpus_front("unknot")
    assert [mu.at(1, 1), mu.at(1, 2)] == [1, 0]
    assert crossing_degrees(d, mu).crossing == ()
    assert crossing_degrees(d, mu).right_cusp == (1,)


def test_trefoil_degrees_are_zero():
    d, mu = corpus_front("trefoil")
    assert crossing_degrees(d, mu).crossing == (0, 0, 0)
    assert d.n_components == 1 and d.grading_modulus == 0


def test_hopf_offsets_make_crossings_degree_zero():
    d, mu = corpus_front("hopf")
    assert d.n_components == 2
    assert crossing_degrees(d, mu).crossing == (0, 0)
    plain = maslov_potential(d, (0, 0))
    assert crossing_degrees(d, plain).crossing != (0, 0)


def test_stabilized_unknot_grading():
    d, mu = corpus_front("stabunknot")
    assert d.grading_modulus == 2
    with pytest.raises(GradingError):
        check_grading(d, 0)
    check_grading(d, 1)
    check_grading(d, 2)
    with pytest.raises(GradingError):
        check_grading(d, 4)


def test_is_graded():
    assert is_graded(0, 0) and not is_graded(2, 0)
    assert is_graded(2, 2) and is_graded(3, 1) and not is_graded(1, 2)


@pytest.mark.parametrize(
    "text, err",
    [
        ("L1 / Q2 / R1", FrontSyntaxError),
        ("L1 / X2 / R1", ShapeError),
        ("L1 / L3", ShapeError),
        ("L1 / R1 / L1 / R1", ShapeError),
        ("L1 / L2 / X5 / R1 / R1", ShapeError),
        ("L1 / R1\nmark 1 2", MarkError),
        ("L1 / R1\noffsets: a", FrontSyntaxError),
    ],
)
def test_malformed_fronts(text, err):
    with pytest.raises(err):
        parse_front(text)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_round_trip(name):
    d = parse_front(CORPUS[name])
    again = parse_front(serialize_front(d))
    assert again.events == d.events
    assert again.declared_offsets == d.declared_offsets


def test_comments_and_separators():
    d = parse_front("# eye\nL1  # open\n/ R1\n")
    assert len(d.events) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_potential_satisfies_cusp_rule(seed):
    rng = random.Random(seed)
    try:
        d = parse_front(rand_front_text(rng))
        mu = maslov_potential(d)
    except LegendrianError:
        return
    mod = mu.modulus
    for ev in d.left_cusps + d.right_cusps:
        up, low = d.cusp_arcs(ev)
        diff = mu.values[up] - mu.values[low] - 1
        assert (diff % mod == 0) if mod else diff == 0
    # rotation numbers: half the signed cusp count per component
    for comp in range(d.n_components):
        signed = sum(d.cusp_sign(ev) for ev in d.left_cusps + d.right_cusps if d.component_of_event(ev) == comp)
        assert abs(signed) % 2 == 0 and abs(d.rotation[comp]) == abs(signed) // 2


def test_marks_select_right_cusps():
    d, _ = corpus_front("trefoil")
    assert d.right_cusp_ordinal(d.marks[0]) == 1
    d2 = d.with_marks({1: 2})
    assert d2.right_cusp_ordinal(d2.marks[0]) == 2
