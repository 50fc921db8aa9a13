"""Kernels package - the 18 PSD kernel families, their specs and matrix assembly."""

from .families import FAMILY_INFO, FamilyInfo, KernelFamily, family_info

from .spec import FactorSpec, MatrixSpec

from .evaluate import build_matrix, factor_matrix, kernel_value

from .validate import ValidationReport, Violation, validate_spec

from .sampling import random_spec

from .spec_io import load_spec, read_document, save_spec, spec_from_dict, spec_to_dict

__all__ = [
    # Catalogue
    "FAMILY_INFO",
    "FamilyInfo",
    "KernelFamily",
    "family_info",

    # Specs
    "FactorSpec",
    "MatrixSpec",
    "random_spec",

    # Assembly
    "build_matrix",
    "factor_matrix",
    "kernel_value",

    # Validation
    "ValidationReport",
    "Violation",
    "validate_spec",

    # Serialization
    "load_spec",
    "read_document",
    "save_spec",
    "spec_from_dict",
    "spec_to_dict",
]
