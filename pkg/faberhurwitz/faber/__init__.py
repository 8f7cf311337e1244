"""
Faber symbols, their recovery from Faber–Hurwitz numbers, and the Ψ/Φ checks.

This package contains:
- SymbolTable with string/dilaton completion and the conjectured values
- The exact linear solve for the irreducible symbols and its triangular block
- The generating series Φ_m and Ψ_m with their closed forms
- The verification suites behind `faberhurwitz verify`
"""

from faberhurwitz.faber.symbols import (
    Provenance,
    SymbolEntry,
    SymbolTable,
    conjecture_table,
    conjecture_value,
    faber_polynomial,
    generator_ratio,
    hyperelliptic_coefficient,
    lambda_relation_residual,
    reduce_to_unknowns,
)
from faberhurwitz.faber.solve import (
    SymbolSystem,
    TopBlock,
    assemble_system,
    conjecture_comparison,
    nonsing_block,
    solve_symbols,
    solve_system,
    solve_tables,
)
from faberhurwitz.faber.generating import build_phi, build_psi, faber_top, xi_top_closed
from faberhurwitz.faber.suites import SUITES, SuiteReport, SuiteResult, check_suites

__all__ = [
    "Provenance",
    "SymbolEntry",
    "SymbolTable",
    "conjecture_table",
    "conjecture_value",
    "faber_polynomial",
    "generator_ratio",
    "hyperelliptic_coefficient",
    "lambda_relation_residual",
    "reduce_to_unknowns",
    "SymbolSystem",
    "TopBlock",
    "assemble_system",
    "conjecture_comparison",
    "nonsing_block",
    "solve_symbols",
    "solve_system",
    "solve_tables",
    "build_phi",
    "build_psi",
    "faber_top",
    "xi_top_closed",
    "SUITES",
    "SuiteReport",
    "SuiteResult",
    "check_suites",
]
