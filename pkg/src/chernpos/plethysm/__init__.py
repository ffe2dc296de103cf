"""Signed-tableau construction of the determinant-twisted map into Sym^r(Sym^{2a} V)."""

from .construction import (
    EquivarianceReport,
    InjectivityReport,
    TableauSum,
    apply_gl,
    apply_gl_reference,
    check_equivariance,
    clear_cache,
    compose_phi_then_multiply,
    content,
    determinant,
    distinguished_key,
    from_dense,
    matmul,
    phi_dense,
    phi_image,
    phi_multilinear,
    phi_reference,
    random_unimodular,
    report_injectivity,
    sym_multiplication,
    sym_power_matrix,
)
from .tableaux import DEFAULT_CAP, Tableau, enumerate_tableaux, sym_basis, tableau_count

__all__ = [
    "DEFAULT_CAP",
    "EquivarianceReport",
    "InjectivityReport",
    "Tableau",
    "TableauSum",
    "apply_gl",
    "apply_gl_reference",
    "check_equivariance",
    "clear_cache",
    "compose_phi_then_multiply",
    "content",
    "determinant",
    "distinguished_key",
    "enumerate_tableaux",
    "from_dense",
    "matmul",
    "phi_dense",
    "phi_image",
    "phi_multilinear",
    "phi_reference",
    "random_unimodular",
    "report_injectivity",
    "sym_basis",
    "sym_multiplication",
    "sym_power_matrix",
    "tableau_count",
]
