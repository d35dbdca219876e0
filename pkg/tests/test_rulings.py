import itertools

import pytest

from legendrian_aug.corpus import corpus_front
from legendrian_aug.front_model import EventKind, crossing_degrees, is_graded
from legendrian_aug.rulings import a_profile, enumerate_rulings, ruling_polynomial, ruling_stats

from conftest import corpus_cases, random_cases


def oracle_switch_sets(d, mu, m):
    """Try every switch subset and walk the involution left to right."""
    deg = crossing_degrees(d, mu).crossing
    out = []
    n = len(d.crossings)
    for bits in itertools.product((False, True), repeat=n):
        inv = {}
        ok = True
        ci = 0
        for e in d.events:
            k = e.position
            if e.kind is EventKind.LEFT_CUSP:
                inv = {(h + 2 if h >= k else h): (p + 2 if p >= k else p) for h, p in inv.items()}
                inv[k], inv[k + 1] = k + 1, k
            elif e.kind is EventKind.CROSSING:
                sw = bits[ci]
                ci += 1
                p, q = inv[k], inv[k + 1]
                if p == k + 1:
                    ok = False
                    break
                if sw:
                    if not is_graded(deg[ci - 1], m):
                        ok = False
                        break
                    if not ((p < k and q > k + 1) or q < p < k or k + 1 < q < p):
                        ok = False
                        break
                else:
                    t = {k: k + 1, k + 1: k}
                    inv = {t.get(h, h): t.get(x, x) for h, x in inv.items()}
            else:
                if inv.get(k) != k + 1:
                    ok = False
                    break
                inv = {(h - 2 if h > k + 1 else h): (p - 2 if p > k + 1 else p)
                       for h, p in inv.items() if h not in (k, k + 1)}
        if ok:
            out.append(tuple(i + 1 for i, b in enumerate(bits) if b))
    return sorted(out)


def test_unknot_single_ruling():
    d, mu = corpus_front("unknot")
    (rho,) = enumerate_rulings(d, mu, 0)
    st = ruling_stats(rho, 0)
    assert (st.j, st.r) == (-1, 0)


def test_trefoil_rulings():
    d, mu = corpus_front("trefoil")
    rulings = enumerate_rulings(d, mu, 0)
    assert sorted(r.switches for r in rulings) == [(1,), (1, 2, 3), (3,)]
    stats = {r.switches: ruling_stats(r, 0) for r in rulings}
    assert (stats[(1, 2, 3)].j, stats[(1, 2, 3)].r) == (1, 0)
    assert (stats[(1,)].j, stats[(1,)].r) == (-1, 1)
    assert (3, "R1", True) in stats[(1,)].return_list
    full = [r for r in enumerate_rulings(d, mu, 1) if r.switches == (1, 2, 3)][0]
    st1 = ruling_stats(full, 1)
    assert (st1.j, st1.r) == (1, 2)


def test_ruling_polynomials():
    d, mu = corpus_front("trefoil")
    assert ruling_polynomial(d, mu, 0).to_json() == {"terms": [[-1, 2], [1, 1]]}
    d, mu = corpus_front("hopf")
    assert ruling_polynomial(d, mu, 0).to_json() == {"terms": [[-2, 1], [0, 1]]}
    assert sorted(r.switches for r in enumerate_rulings(d, mu, 0)) == [(), (1, 2)]
    d, mu = corpus_front("stabunknot")
    assert ruling_polynomial(d, mu, 1).is_zero()
    assert enumerate_rulings(d, mu, 2) == []


@pytest.mark.parametrize("name, d, mu, m", list(corpus_cases()), ids=lambda x: str(x) if isinstance(x, (str, int)) else "")
def test_enumeration_matches_oracle_on_corpus(name, d, mu, m):
    assert sorted(r.switches for r in enumerate_rulings(d, mu, m)) == oracle_switch_sets(d, mu, m)


def test_enumeration_matches_oracle_on_random_fronts():
    for d, mu, m in random_cases(11, 150, n_cross=(0, 7)):
        assert sorted(r.switches for r in enumerate_rulings(d, mu, m)) == oracle_switch_sets(d, mu, m), d.serialize()


def _laws(d, mu, m):
    rulings = enumerate_rulings(d, mu, m)
    first = len(d.left_cusps)
    last = first + len(d.crossings)
    vals = set()
    diffs = set()
    for rho in rulings:
        st = ruling_stats(rho, m)
        vals.add(st.j + 2 * st.r)
        rd = st.returns_graded - st.departures_graded
        diffs.add(rd)
        assert rd == a_profile(rho, mu, last) - a_profile(rho, mu, first)
    assert len(vals) <= 1 and len(diffs) <= 1


@pytest.mark.parametrize("seed", range(4))
def test_ruling_laws_on_random_fronts(seed):
    for d, mu, m in random_cases(seed, 60, n_cross=(0, 7)):
        _laws(d, mu, m)


def test_crossing_classification_partitions_crossings():
    for d, mu, m in random_cases(3, 60):
        for rho in enumerate_rulings(d, mu, m):
            assert len(rho.crossing_types) == len(d.crossings)
            assert all(t in {"S1", "S2", "S3", "R1", "R2", "R3", "D"} for t in rho.crossing_types)
            assert all(rho.crossing_types[c - 1].startswith("S") for c in rho.switches)
