"""Electromagnetic connection toolkit.

Thin package over the compiled ``_core`` module.
"""

from ._core import (
    SPEED_OF_LIGHT,
    Error,
    FieldModel,
    IntegrationError,
    ParticleParams,
    SingularityError,
    boost_table,
    connection_table,
    continuity,
    decay,
    exactness,
    force_probe,
    geodesic_rhs,
    integrate,
    make_preset,
    preset_names,
    symmetry_report,
    torsion_epsilon_sum,
    torsion_table,
    trace_form,
    trace_form_closed,
)

__all__ = [
    "SPEED_OF_LIGHT",
    "Error",
    "FieldModel",
    "IntegrationError",
    "ParticleParams",
    "SingularityError",
    "boost_table",
    "connection_table",
    "continuity",
    "decay",
    "exactness",
    "force_probe",
    "geodesic_rhs",
    "integrate",
    "make_preset",
    "preset_names",
    "symmetry_report",
    "torsion_epsilon_sum",
    "torsion_table",
    "trace_form",
    "trace_form_closed",
]
