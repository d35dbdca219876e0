"""The decomposition of the augmentation set by normal rulings, and form
validation."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import LegendrianError
from ..rulings import enumerate_rulings, ruling_stats
from .aform import aform_coefficients, theta
from .complexes import build_complexes
from .phipsi import phi
from .srform import lambda_mcs, sr_parameters, z_rho_points

__all__ = ["phi_rho", "partition", "PartitionReport", "validate_form", "FormCheck"]


def phi_rho(point, d, mu, rho, m, fq, rule=None):
    """The augmentation Theta(Phi(Lambda(point)))."""
    return theta(phi(lambda_mcs(point, d, mu, rho, m, fq), mu, rho), mu, rule)


@dataclass(frozen=True)
class PartitionReport:
    blocks: tuple  # (ruling, augmentations) per ruling
    expected: tuple  # (q-1)^(j+c) q^r per ruling
    disjoint: bool
    union_size: int

    @property
    def sizes(self):
        return tuple(len(a) for _, a in self.blocks)

    def covers(self, augmentations):
        union = set()
        for _, augs in self.blocks:
            union.update(augs)
        return union == set(augmentations)

    def to_json(self, fq):
        return {
            "rulings": [
                {"switches": list(rho.switches), "size": len(augs), "expected": e}
                for (rho, augs), e in zip(self.blocks, self.expected)
            ],
            "disjoint": self.disjoint,
            "union": self.union_size,
        }


def partition(d, mu, m, fq, cap=None):
    """Images of phi_rho for every m-graded ruling."""
    blocks = []
    expected = []
    seen = set()
    disjoint = True
    c = d.n_components
    for rho in enumerate_rulings(d, mu, m):
        st = ruling_stats(rho, m)
        augs = [phi_rho(p, d, mu, rho, m, fq) for p in z_rho_points(d, rho, m, fq, cap=cap)]
        here = set(augs)
        if len(here) != len(augs) or here & seen:
            disjoint = False
        seen |= here
        blocks.append((rho, tuple(augs)))
        expected.append((fq.q - 1) ** (st.j + c) * fq.q**st.r)
    return PartitionReport(tuple(blocks), tuple(expected), disjoint, len(seen))


@dataclass(frozen=True)
class FormCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_form(mcs, form, mu, rho=None):
    """Whether mcs has the mark pattern of the given form ("AForm" or
    "SRForm").  For SRForm the ruling defaults to mcs.ruling; when neither is
    given every ruling is tried."""
    d, fq, m = mcs.diagram, mcs.fq, mcs.m
    if form == "AForm":
        try:
            aform_coefficients(mcs, mu)
        except LegendrianError as exc:
            return FormCheck(False, f"{type(exc).__name__}: {exc}")
        return FormCheck(True)
    if form != "SRForm":
        return FormCheck(False, f"unknown form {form!r}")
    candidates = [rho or mcs.ruling] if (rho or mcs.ruling) is not None else enumerate_rulings(d, mu, m)
    reason = "no m-graded ruling"
    for r in candidates:
        try:
            point = sr_parameters(mcs, r)
            rebuilt = lambda_mcs(point, d, mu, r, m, fq)
        except LegendrianError as exc:
            reason = f"{type(exc).__name__}: {exc}"
            continue
        if rebuilt.same_marks(mcs):
            return FormCheck(True)
        reason = f"marks differ from the SR pattern of ruling {list(r.switches)}"
    return FormCheck(False, reason)


def rebuild(mcs, mu):
    """Re-propagate an MCS from its marks."""
    return build_complexes(mcs.diagram, mcs.fq, mcs.marks, mu, mcs.m, mcs.marked_values,
                           mcs.form, mcs.ruling)
