"""The small diagrams used throughout the tests and the acceptance suite."""

from __future__ import annotations

from .front_model import maslov_potential, parse_front

__all__ = ["CORPUS", "corpus_front", "corpus_names", "valid_ms"]

CORPUS = {
    "unknot": "L1 / R1",
    "trefoil": "L1 / L3 / X2 / X2 / X2 / R1 / R1",
    "hopf": "offsets: 0 -1\nL1 / L3 / X2 / X2 / R1 / R1",
    "stabunknot": "L1 / L3 / R2 / R1",
    "trefoil_stab": "L1 / L3 / L5 / X2 / X2 / X2 / R1 / R2 / R1",
    "unknot_tb_m1": "L1 / L3 / X2 / R1 / R1",
}


def corpus_names():
    return list(CORPUS)


def corpus_front(name):
    """(diagram, Maslov potential) of a corpus entry."""
    d = parse_front(CORPUS[name])
    return d, maslov_potential(d)


def valid_ms(d, candidates=(0, 1, 2)):
    """The m among the candidates for which an m-graded theory exists."""
    mod = d.grading_modulus
    return [m for m in candidates if (m == 0 and mod == 0) or (m > 0 and mod % m == 0)]
