"""Coset complexes, Cohen-Macaulay certificates and higher generation."""

from ._core import (
    CosetcxError,
    Example,
    InvariantViolation,
    SimplicialComplex,
    build,
    check_names,
    cm_over,
    connectivity,
    coset_complex,
    enumerate_subspaces,
    example_names,
    fundamental_group,
    homotopy_cm,
    parse_facet_list,
    reduced_homology,
    shelling_search,
    simplex_boundary,
    smith_normal_form,
)

__all__ = [
    "CosetcxError",
    "Example",
    "InvariantViolation",
    "SimplicialComplex",
    "build",
    "check_names",
    "cm_over",
    "connectivity",
    "coset_complex",
    "enumerate_subspaces",
    "example_names",
    "fundamental_group",
    "homotopy_cm",
    "parse_facet_list",
    "reduced_homology",
    "shelling_search",
    "simplex_boundary",
    "smith_normal_form",
]
