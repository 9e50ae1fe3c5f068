"""Witness operators certifying genuine multipartite entanglement.

Builders return canonical Pauli sums. The "modified" variants absorb a
sequential observer's unsharp x measurement by scaling the lone x-type
stabilizer with the sharpness; the difference between modified and scaled
original witnesses is the operator whose positivity makes the modified
operator a witness again.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import OperatorExpr, PauliString, expand_projector_product
from .states import stabilizer_generators

_FAMILIES = ("ghz", "cluster")


def _check_sharpness(sharpness: float) -> float:
    lam = float(sharpness)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"sharpness {sharpness} outside [0, 1]")
    return lam


def _scaled_projector(generator: PauliString, sharpness: float) -> OperatorExpr:
    """(I + sharpness * S) / 2 as an expression."""
    n = generator.n_qubits
    return OperatorExpr.from_terms(
        n,
        [PauliString("I" * n, 0.5), generator.with_coeff(0.5 * sharpness)],
    )


def build_ghz_witness(n: int) -> OperatorExpr:
    """3I - 2[(I+S_1)/2 + prod_{m>=2} (I+S_m)/2] for the GHZ stabilizers."""
    return build_modified_ghz_witness(n, 1.0)


def build_modified_ghz_witness(n: int, sharpness: float) -> OperatorExpr:
    lam = _check_sharpness(sharpness)
    gens = stabilizer_generators("ghz", n)
    x_part = _scaled_projector(gens[0], lam)
    z_part = expand_projector_product(gens[1:], n_qubits=n)
    return OperatorExpr.identity(n, 3.0) - 2.0 * (x_part + z_part)


def build_cluster_witness(n: int) -> OperatorExpr:
    """3I - 2[prod_{even m} (I+S_m)/2 + prod_{odd m} (I+S_m)/2] for the chain."""
    return build_modified_cluster_witness(n, 1.0)


def build_modified_cluster_witness(n: int, sharpness: float) -> OperatorExpr:
    lam = _check_sharpness(sharpness)
    gens = stabilizer_generators("cluster", n)
    # The last generator is the x-type one on the measured qubit; its projector
    # carries the sharpness inside whichever parity class index n falls in.
    host = expand_projector_product(
        gens, n_qubits=n, select=lambda m: m % 2 == n % 2 and m != n
    )
    other = expand_projector_product(gens, n_qubits=n, select=lambda m: m % 2 != n % 2)
    scaled = host * _scaled_projector(gens[-1], lam)
    return OperatorExpr.identity(n, 3.0) - 2.0 * (scaled + other)


def difference_operator(family: str, n: int, sharpness: float) -> OperatorExpr:
    """Modified witness minus sharpness times the original; PSD for any valid input."""
    lam = _check_sharpness(sharpness)
    if family == "ghz":
        return build_modified_ghz_witness(n, lam) - lam * build_ghz_witness(n)
    if family == "cluster":
        return build_modified_cluster_witness(n, lam) - lam * build_cluster_witness(n)
    raise ValueError(f"unknown witness family {family!r}")


@dataclass(frozen=True)
class WitnessSpec:
    """Which witness a given sequential observer evaluates."""

    family: str
    n_qubits: int
    observer_index: int = 1
    sharpness: float = 1.0

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown witness family {self.family!r}")
        if self.observer_index < 1:
            raise ValueError(f"observer index {self.observer_index} must be >= 1")
        _check_sharpness(self.sharpness)

    def build(self) -> OperatorExpr:
        if self.family == "ghz":
            return build_modified_ghz_witness(self.n_qubits, self.sharpness)
        return build_modified_cluster_witness(self.n_qubits, self.sharpness)


def format_witness(expr: OperatorExpr, per_line: int = 4) -> str:
    """Human-readable Pauli sum, a few terms per line."""
    if not expr.terms:
        return "0"
    parts = [str(t) for t in expr.terms]
    lines = [
        "  ".join(parts[i : i + per_line]) for i in range(0, len(parts), per_line)
    ]
    return "\n".join(lines)
