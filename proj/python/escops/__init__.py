"""Exact-rational engine for two-colored disk-configuration cohomology.

Thin re-export of the compiled module: elements travel as strings in the
generator grammar (``w[i,j]`` factors, ``p[...]`` constrained labels), and
the verification entry points return the same JSON reports the CLI emits.
"""

from escops._core import (
    arnold_hilbert,
    arnold_multiply,
    arnold_normal_form,
    em_collapse,
    esc_basis,
    esc_hilbert,
    oracle_dims,
    torsor_check,
    torsor_synth,
    verify_arnold,
    verify_bar,
    verify_colored,
    verify_torsor,
)

__all__ = [
    "arnold_hilbert",
    "arnold_multiply",
    "arnold_normal_form",
    "em_collapse",
    "esc_basis",
    "esc_hilbert",
    "oracle_dims",
    "torsor_check",
    "torsor_synth",
    "verify_arnold",
    "verify_bar",
    "verify_colored",
    "verify_torsor",
]

__version__ = "0.1.0"
