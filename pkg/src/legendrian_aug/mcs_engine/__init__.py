"""Morse complex sequences over finite fields.

Marks and complexes live in ``complexes``; the two canonical shapes and the
maps between them are split by form: ``aform`` (augmentations), ``srform``
and ``graphs`` (normal rulings), ``phipsi`` (the sweep between the two).
"""

from .aform import (
    CUSP_RULE,
    aform_coefficients,
    aform_marks,
    aform_sites,
    all_aform_mcs,
    enumerate_aform,
    enumerate_aform_count,
    theta,
    theta_inv,
)
from .complexes import HandleslideMark, Mcs, TriComplex, build_complexes
from .graphs import (
    RulingGraph,
    brute_count,
    contract,
    count_solutions,
    disk_equations,
    random_ruling_graph,
    ruling_graph,
)
from .halfdisks import check_half_disks, half_disk_sum, half_disks
from .phipsi import SweepStep, phi, proper_factor, psi, transposed_factor
from .srform import SrPoint, lambda_mcs, sr_parameters, standard_slots, z_rho_points
from .structure import FormCheck, PartitionReport, partition, phi_rho, validate_form

__all__ = [
    "CUSP_RULE",
    "FormCheck",
    "HandleslideMark",
    "Mcs",
    "PartitionReport",
    "RulingGraph",
    "SrPoint",
    "SweepStep",
    "TriComplex",
    "aform_coefficients",
    "aform_marks",
    "aform_sites",
    "all_aform_mcs",
    "brute_count",
    "build_complexes",
    "check_half_disks",
    "contract",
    "count_solutions",
    "disk_equations",
    "enumerate_aform",
    "enumerate_aform_count",
    "half_disk_sum",
    "half_disks",
    "lambda_mcs",
    "partition",
    "phi",
    "phi_rho",
    "proper_factor",
    "psi",
    "random_ruling_graph",
    "ruling_graph",
    "sr_parameters",
    "standard_slots",
    "theta",
    "theta_inv",
    "transposed_factor",
    "validate_form",
    "z_rho_points",
]
