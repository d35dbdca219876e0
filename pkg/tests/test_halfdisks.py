from legendrian_aug.corpus import corpus_front
from legendrian_aug.mcs_engine import all_aform_mcs, check_half_disks, half_disks

from conftest import corpus_cases, gf, random_cases


def test_eye_has_one_cornerless_half_disk():
    d, _ = corpus_front("unknot")
    assert half_disks(d, 1, 1, 2) == [()]


def test_trefoil_half_disks():
    d, _ = corpus_front("trefoil")
    # just right of the first crossing: one corner there, on the lower path
    # for the top pair and on the upper path for the bottom pair
    assert half_disks(d, 3, 1, 2) == [((2, -1),)]
    assert half_disks(d, 3, 3, 4) == [((2, 1),)]
    assert half_disks(d, 3, 1, 3) == [()]
    assert len(half_disks(d, 5, 1, 2)) == 3
    assert half_disks(d, 2, 1, 2) == [()] and half_disks(d, 2, 3, 4) == [()]
    assert half_disks(d, 2, 2, 3) == []


def test_corpus_aforms_match_half_disk_sums():
    n = 0
    for _, d, mu, m in corpus_cases():
        for q in (2, 3):
            for a in all_aform_mcs(d, mu, m, gf(q)):
                assert check_half_disks(a, mu) == []
                n += 1
    assert n > 100


def test_random_aforms_match_half_disk_sums():
    for d, mu, m in random_cases(61, 80, n_cross=(2, 6)):
        for a in all_aform_mcs(d, mu, m, gf(3)):
            assert check_half_disks(a, mu) == [], d.serialize()
