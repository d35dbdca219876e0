from fractions import Fraction

import pytest

from legendrian_aug import kernels
from legendrian_aug.aug_count import (
    aug_number,
    count_augmentations,
    enumerate_augmentations,
    ruling_count,
    variety_dim,
    verify_main_theorem,
)
from legendrian_aug.ce_dga import build_dga
from legendrian_aug.corpus import corpus_front
from legendrian_aug.errors import GradingError, MethodUnavailable, ScaleError
from legendrian_aug.mcs_engine import enumerate_aform_count

from conftest import gf, random_cases


def test_unknot_augmentation():
    d, mu = corpus_front("unknot")
    (a,) = enumerate_augmentations(build_dga(d, mu), 0, gf(2))
    assert a.t_values == (1,) and a.gen_values == (0,)
    (a,) = enumerate_augmentations(build_dga(d, mu), 0, gf(3))
    assert a.t_values == (2,)


@pytest.mark.parametrize("name, m, want", [("trefoil", 0, 2), ("hopf", 0, 2), ("unknot", 1, 1)])
def test_variety_dim(name, m, want):
    assert variety_dim(*corpus_front(name), m) == want


def test_empty_variety_dim():
    assert variety_dim(*corpus_front("stabunknot"), 2) is None


@pytest.mark.parametrize(
    "name, m, q, count, dim, aug",
    [
        ("trefoil", 0, 2, 5, 2, Fraction(5, 4)),
        ("trefoil", 1, 2, 20, 4, Fraction(5, 4)),
        ("hopf", 0, 3, 7, 2, Fraction(7, 9)),
        ("stabunknot", 2, 3, 0, None, Fraction(0)),
    ],
)
def test_aug_number_examples(name, m, q, count, dim, aug):
    rep = aug_number(*corpus_front(name), m, q)
    assert rep.count == count and rep.dim == dim and rep.aug_number == aug
    assert set(rep.counts) == {"brute", "mcs", "ruling"}


def test_unknot_m1_aform_count():
    d, mu = corpus_front("unknot")
    assert enumerate_aform_count(d, mu, 1, gf(5)) == 5


def test_verify_rows():
    out = verify_main_theorem(*corpus_front("trefoil"), 0, [2, 3, 4, 5])
    assert out["all_equal"]
    assert [r["rhs"] for r in out["rows"]] == ["5/4", "10/9", "17/16", "26/25"]


def test_bad_requests():
    d, mu = corpus_front("stabunknot")
    with pytest.raises(GradingError):
        aug_number(d, mu, 0, 2)
    with pytest.raises(MethodUnavailable):
        aug_number(*corpus_front("unknot"), 0, 2, method="guess")
    with pytest.raises(ScaleError):
        count_augmentations(build_dga(*corpus_front("trefoil")), 0, gf(5), cap=10)


def test_three_routes_agree_on_random_fronts():
    n = 0
    for d, mu, m in random_cases(31, 120, n_cross=(1, 6)):
        g = build_dga(d, mu)
        for q in (2, 3):
            f = gf(q)
            brute = count_augmentations(g, m, f)
            assert brute == enumerate_aform_count(d, mu, m, f) == ruling_count(d, mu, m, q), d.serialize()
            n += 1
    assert n == 240


def test_mcs_routes_agree():
    for d, mu, m in random_cases(32, 40):
        f = gf(3)
        assert enumerate_aform_count(d, mu, m, f) == enumerate_aform_count(d, mu, m, f, route="python")


@pytest.mark.parametrize("name, m, q", [("trefoil", 0, 5), ("trefoil", 1, 4), ("hopf", 0, 9)])
def test_backends_agree(name, m, q, monkeypatch):
    d, mu = corpus_front(name)
    g = build_dga(d, mu)
    f = gf(q)
    counts = []
    for which in ("numba", "numpy"):
        monkeypatch.setenv("LCH_BACKEND", which)
        counts.append((count_augmentations(g, m, f), enumerate_aform_count(d, mu, m, f),
                       tuple(enumerate_augmentations(g, m, f))))
    assert counts[0] == counts[1]


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("LCH_THREADS", "1")
    assert kernels.n_threads() == 1
    d, mu = corpus_front("trefoil")
    assert count_augmentations(build_dga(d, mu), 0, gf(4)) == 17
    monkeypatch.setenv("LCH_BACKEND", "fortran")
    with pytest.raises(ValueError):
        kernels.backend()
