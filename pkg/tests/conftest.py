import random
import sys

import pytest

from legendrian_aug.algebra import field_make, prime_power
from legendrian_aug.corpus import corpus_front, corpus_names, valid_ms
from legendrian_aug.errors import LegendrianError
from legendrian_aug.front_model import maslov_potential, parse_front
from legendrian_aug.rulings import enumerate_rulings


def gf(q):
    return field_make(*prime_power(q))


def rand_front_text(rng, n_left=None, n_cross=None):
    """A random nearly plat event word (not always a valid front)."""
    nl = n_left or rng.randint(1, 3)
    ev, s = [], 0
    for _ in range(nl):
        ev.append(f"L{rng.randint(1, s + 1)}")
        s += 2
    for _ in range(n_cross if n_cross is not None else rng.randint(0, 6)):
        ev.append(f"X{rng.randint(1, s - 1)}")
    while s:
        ev.append(f"R{rng.randint(1, s - 1)}")
        s -= 2
    return "\n".join(ev)


def random_cases(seed, count, n_left=(2, 3), n_cross=(2, 6), ms=(0, 1, 2), keep=None):
    """Yield (d, mu, m) for random fronts admitting an m-graded theory."""
    rng = random.Random(seed)
    n = 0
    while n < count:
        try:
            d = parse_front(rand_front_text(rng, rng.randint(*n_left), rng.randint(*n_cross)))
            mu = maslov_potential(d)
        except LegendrianError:
            continue
        if keep is not None and not keep(d):
            continue
        for m in ms:
            try:
                enumerate_rulings(d, mu, m)
            except LegendrianError:
                continue
            yield d, mu, m
            n += 1
            if n == count:
                return


def corpus_cases(names=None):
    for name in names or corpus_names():
        d, mu = corpus_front(name)
        for m in valid_ms(d):
            yield name, d, mu, m


def key(mcs):
    return (mcs.nonzero_marks(), mcs.marked_values)


@pytest.fixture(scope="session")
def trefoil():
    return corpus_front("trefoil")


@pytest.fixture(scope="session")
def hopf():
    return corpus_front("hopf")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
