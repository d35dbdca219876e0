import pytest

from legendrian_aug.aug_count import enumerate_augmentations
from legendrian_aug.ce_dga import build_dga
from legendrian_aug.corpus import corpus_front
from legendrian_aug.errors import NotSRForm, ObstructionAt
from legendrian_aug.mcs_engine import (
    all_aform_mcs,
    aform_marks,
    aform_sites,
    build_complexes,
    lambda_mcs,
    phi,
    psi,
    ruling_graph,
    sr_parameters,
    standard_slots,
    theta,
    theta_inv,
    validate_form,
    z_rho_points,
)
from legendrian_aug.mcs_engine.graphs import count_solutions
from legendrian_aug.mcs_engine.phipsi import matrix_of_marks, proper_factor, transposed_factor
from legendrian_aug.mcs_engine.structure import rebuild
from legendrian_aug.rulings import enumerate_rulings, ruling_stats

from conftest import corpus_cases, gf, key, random_cases


def _ruling(name, switches, m=0):
    d, mu = corpus_front(name)
    return d, mu, [r for r in enumerate_rulings(d, mu, m) if r.switches == switches][0]


# -- A-form and Theta ------------------------------------------------------


@pytest.mark.parametrize("name, d, mu, m", list(corpus_cases()), ids=lambda x: str(x) if isinstance(x, (str, int)) else "")
def test_theta_round_trip_gf4(name, d, mu, m):
    f = gf(4)
    augs = enumerate_augmentations(build_dga(d, mu), m, f)
    for a in augs:
        mc = theta_inv(a, d, mu, m, f)
        assert validate_form(mc, "AForm", mu)
        assert theta(mc, mu) == a
    assert sorted(key(theta_inv(a, d, mu, m, f)) for a in augs) == sorted(key(x) for x in all_aform_mcs(d, mu, m, f))


def test_unknot_aform():
    d, mu = corpus_front("unknot")
    f = gf(3)
    (a,) = enumerate_augmentations(build_dga(d, mu), 0, f)
    mc = theta_inv(a, d, mu, 0, f)
    assert mc.nonzero_marks() == () and mc.marked_values == (f.neg(1),)


def test_trefoil_zero_marks_obstructed_at_first_right_cusp():
    d, mu = corpus_front("trefoil")
    sites = aform_sites(d, mu, 0)
    with pytest.raises(ObstructionAt, match=f"event {d.right_cusps[0]}"):
        build_complexes(d, gf(2), aform_marks(sites, [0] * len(sites)), mu, 0, (1,), form="AForm")


def test_complexes_are_triangular_differentials():
    for name, d, mu, m in corpus_cases():
        f = gf(3)
        for mc in all_aform_mcs(d, mu, m, f):
            assert all(C.is_triangular() and C.d_squared_zero(f) for C in mc.complexes[1:])
            again = rebuild(mc, mu)
            assert again.complexes == mc.complexes


# -- SR-form ---------------------------------------------------------------


def test_trefoil_point_counts():
    d, mu, rho = _ruling("trefoil", (1, 2, 3))
    assert len(z_rho_points(d, rho, 0, gf(2))) == 1
    d, mu, rho = _ruling("trefoil", (1,))
    assert len(z_rho_points(d, rho, 0, gf(3))) == 3


def test_trefoil_three_switch_sr_mcs_over_gf3():
    d, mu, rho = _ruling("trefoil", (1, 2, 3))
    f = gf(3)
    pts = [p for p in z_rho_points(d, rho, 0, f) if p.x[:2] == (1, 1)]
    assert pts
    for p in pts:
        mc = lambda_mcs(p, d, mu, rho, 0, f)
        for pos, gap in standard_slots(mc, rho):
            assert mc.complexes[pos].standard_for(rho.involutions[gap])


def _check_sr(d, mu, m, q):
    f = gf(q)
    c = d.n_components
    for rho in enumerate_rulings(d, mu, m):
        st = ruling_stats(rho, m)
        pts = z_rho_points(d, rho, m, f)
        assert len(pts) == (q - 1) ** (st.j + c) * q**st.r
        assert len(pts) == count_solutions(ruling_graph(d, rho), f) * q**st.r
        for p in pts:
            mc = lambda_mcs(p, d, mu, rho, m, f)
            assert validate_form(mc, "SRForm", mu)
            assert sr_parameters(mc, rho) == p
            for pos, gap in standard_slots(mc, rho):
                assert mc.complexes[pos].standard_for(rho.involutions[gap])


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_sr_points_on_corpus(q):
    for _, d, mu, m in corpus_cases():
        _check_sr(d, mu, m, q)


def test_sr_points_on_random_fronts():
    for d, mu, m in random_cases(41, 60, n_cross=(2, 6)):
        _check_sr(d, mu, m, 2)


def test_sr_mcs_is_not_aform():
    d, mu, rho = _ruling("trefoil", (1, 2, 3))
    (p,) = z_rho_points(d, rho, 0, gf(2))
    mc = lambda_mcs(p, d, mu, rho, 0, gf(2))
    assert not validate_form(mc, "AForm", mu)
    assert validate_form(mc, "SRForm", mu)
    assert not validate_form(mc, "Bogus", mu)


def test_aform_is_not_sr_for_wrong_ruling():
    d, mu, rho = _ruling("trefoil", (1,))
    f = gf(3)
    (p, *_) = [p for p in z_rho_points(d, rho, 0, f) if p.z[0]]
    mc = lambda_mcs(p, d, mu, rho, 0, f)
    _, _, other = _ruling("trefoil", (3,))
    assert not validate_form(mc, "SRForm", mu, other)


# -- the sweep between the two forms ------------------------------------------


def _check_sweep(d, mu, m, q):
    f = gf(q)
    A = all_aform_mcs(d, mu, m, f)
    images = set()
    for rho in enumerate_rulings(d, mu, m):
        for p in z_rho_points(d, rho, m, f):
            sr = lambda_mcs(p, d, mu, rho, m, f)
            a = phi(sr, mu)
            assert validate_form(a, "AForm", mu)
            b, rho_b = psi(a, mu)
            assert key(b) == key(sr) and rho_b.switches == rho.switches
            assert key(a) not in images
            images.add(key(a))
    assert images == {key(a) for a in A}
    for a in A:
        assert key(phi(psi(a, mu)[0], mu)) == key(a)


@pytest.mark.parametrize("q", (4, 5))
def test_sweep_is_bijective_on_corpus(q):
    for _, d, mu, m in corpus_cases():
        _check_sweep(d, mu, m, q)


def test_sweep_is_bijective_on_random_fronts():
    for d, mu, m in random_cases(51, 25, n_cross=(2, 6)):
        for q in (2, 3):
            _check_sweep(d, mu, m, q)


def test_sweep_with_nested_right_cusps():
    from legendrian_aug.mcs_engine.phipsi import _cusp_pairs

    for d, mu, m in random_cases(7, 40, n_cross=(1, 6), keep=lambda d: None in _cusp_pairs(d).values()):
        _check_sweep(d, mu, m, 3)


def test_collections_are_inverse_transposes():
    for _, d, mu, m in corpus_cases():
        f = gf(3)
        for rho in enumerate_rulings(d, mu, m):
            for p in z_rho_points(d, rho, m, f):
                t1, t2 = [], []
                a = phi(lambda_mcs(p, d, mu, rho, m, f), mu, trace=t1)
                psi(a, mu, trace=t2)
                assert [s.event for s in t1] == [s.event for s in t2]
                for s1, s2 in zip(t1, t2):
                    assert s1.collection == tuple((x, y, f.neg(c)) for x, y, c in reversed(s2.collection))


def test_return_then_switch_sweep_example():
    """SR marks (s, r, -1/r) at the return and switch become A-form marks (s, r)."""
    d, mu, rho = _ruling("trefoil", (3,))
    assert rho.crossing_types[:3] == ("D", "R1", "S1")
    for q in (3, 5):
        f = gf(q)
        for p in z_rho_points(d, rho, 0, f):
            (s,), (r,) = p.z, p.x
            sr = lambda_mcs(p, d, mu, rho, 0, f)
            want_sr = [(3, 2, 3, s), (4, 2, 3, r), (5, 2, 3, f.neg(f.inv(r)))]
            assert [(h.gap, h.top, h.bottom, h.coeff) for h in sr.nonzero_marks()] == [w for w in want_sr if w[3]]
            a = phi(sr, mu)
            assert [(h.gap, h.top, h.bottom, h.coeff) for h in a.nonzero_marks()] == [
                w for w in want_sr[:2] if w[3]]


def test_phi_needs_a_ruling():
    d, mu, rho = _ruling("trefoil", (1, 2, 3))
    (p,) = z_rho_points(d, rho, 0, gf(2))
    mc = lambda_mcs(p, d, mu, rho, 0, gf(2))
    bare = build_complexes(d, mc.fq, mc.marks, mu, 0, mc.marked_values)
    with pytest.raises(NotSRForm):
        phi(bare, mu)


def test_factorizations_reproduce_the_product():
    f = gf(5)
    import random

    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 5)
        marks = [(a, b, rng.randrange(5)) for a, b in
                 ((rng.randint(1, n - 1), 0) for _ in range(rng.randint(0, 6)))]
        marks = [(a, rng.randint(a + 1, n), c) for a, _, c in marks]
        M = matrix_of_marks(f, n, marks)
        for order in (proper_factor, transposed_factor):
            assert matrix_of_marks(f, n, order(f, M)) == M
