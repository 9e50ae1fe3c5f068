"""Initial states: GHZ-type and linear cluster families plus their stabilizers.

Dense constructors return density matrices; statevector helpers back them and
the construction-time stabilizer checks. `stabilizer_expectation` evaluates
Pauli sums on stabilizer states without any dense matrix, which is the
"symbolic" route the dense simulator is cross-checked against.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .pauli import DENSE_QUBIT_LIMIT, OperatorExpr, PauliString, commutes, pauli_multiply

WEIGHT_SUM_TOL = 1e-9
STABILIZER_TOL = 1e-12


def _check_size(n: int) -> None:
    if n < 3:
        raise CapacityError(f"need at least 3 parties, got {n}")
    if n > DENSE_QUBIT_LIMIT:
        raise CapacityError(f"{n} qubits exceeds dense limit {DENSE_QUBIT_LIMIT}")


def ghz_statevector(n: int) -> np.ndarray:
    _check_size(n)
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = psi[-1] = 1.0 / math.sqrt(2.0)
    return psi


def generalized_ghz_statevector(n: int, alpha: float) -> np.ndarray:
    _check_size(n)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha {alpha} outside (0, 1)")
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = math.sqrt(alpha)
    psi[-1] = math.sqrt(1.0 - alpha)
    return psi


def cluster_statevector(n: int) -> np.ndarray:
    """Linear cluster state: nearest-neighbour phase gates on |+>^n.

    Each basis amplitude is 2^(-n/2) times (-1) raised to the number of
    adjacent 11 pairs, which is exactly what the Ising-chain phase gates
    produce on the uniform superposition.
    """
    _check_size(n)
    idx = np.arange(1 << n)
    bits = (idx[:, None] >> np.arange(n - 1, -1, -1)) & 1
    pairs = np.sum(bits[:, :-1] & bits[:, 1:], axis=1)
    signs = 1.0 - 2.0 * (pairs & 1)
    return signs.astype(complex) / math.sqrt(1 << n)


def make_ghz(n: int) -> np.ndarray:
    psi = ghz_statevector(n)
    return np.outer(psi, psi.conj())


def make_generalized_ghz(n: int, alpha: float) -> np.ndarray:
    psi = generalized_ghz_statevector(n, alpha)
    return np.outer(psi, psi.conj())


def make_mixed_ghz(n: int, p1: float, p2: float, p3: float, alpha: float) -> np.ndarray:
    """Mixture of a generalized GHZ state with the two classical extremes."""
    if p1 <= 0.0 or p2 < 0.0 or p3 < 0.0:
        raise ValueError(f"invalid mixture weights ({p1}, {p2}, {p3})")
    total = p1 + p2 + p3
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"mixture weights sum to {total}, not 1")
    psi = generalized_ghz_statevector(n, alpha)
    rho = p1 * np.outer(psi, psi.conj())
    rho[0, 0] += p2
    rho[-1, -1] += p3
    return rho / total


def make_cluster(n: int) -> np.ndarray:
    psi = cluster_statevector(n)
    return np.outer(psi, psi.conj())


def stabilizer_generators(family: str, n: int) -> list[PauliString]:
    """Stabilizer generators of the family's n-qubit state, verified on it.

    Every returned generator is checked to fix the dense state (S|psi> = |psi>)
    before being handed out; a mismatch raises rather than returning a wrong
    generator set. For the cluster chain the interior generators are
    Z(m-1) X(m) Z(m+1), the form this check singles out.
    """
    _check_size(n)
    if family == "ghz":
        gens = [PauliString("X" * n)]
        gens += [PauliString.from_ops(n, {m - 2: "Z", m - 1: "Z"}) for m in range(2, n + 1)]
        psi = ghz_statevector(n)
    elif family == "cluster":
        gens = [PauliString.from_ops(n, {0: "X", 1: "Z"})]
        gens += [
            PauliString.from_ops(n, {m - 2: "Z", m - 1: "X", m: "Z"})
            for m in range(2, n)
        ]
        gens.append(PauliString.from_ops(n, {n - 2: "Z", n - 1: "X"}))
        psi = cluster_statevector(n)
    else:
        raise ValueError(f"unknown stabilizer family {family!r}")
    for g in gens:
        deviation = np.max(np.abs(g.statevector_action(psi) - psi))
        if deviation > STABILIZER_TOL:
            raise ValidationError(f"generator {g} fails to stabilize {family}_{n}")
    return gens


def _solve_gf2(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """One solution of matrix @ x = rhs over GF(2), or None if inconsistent."""
    a = matrix.copy()
    b = rhs.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        hit = np.nonzero(a[r:, c])[0]
        if hit.size == 0:
            continue
        p = r + int(hit[0])
        a[[r, p]] = a[[p, r]]
        b[[r, p]] = b[[p, r]]
        others = np.nonzero(a[:, c])[0]
        for rr in others:
            if rr != r:
                a[rr] ^= a[r]
                b[rr] ^= b[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    x = np.zeros(cols, dtype=np.uint8)
    for row_idx, c in enumerate(pivots):
        x[c] = b[row_idx]
    if np.any((matrix @ x) % 2 != rhs):
        return None
    return x


def _symplectic(p: PauliString) -> np.ndarray:
    x_bits = [1 if c in "XY" else 0 for c in p.letters]
    z_bits = [1 if c in "ZY" else 0 for c in p.letters]
    return np.array(x_bits + z_bits, dtype=np.uint8)


def stabilizer_expectation(expr: OperatorExpr | PauliString, generators: list[PauliString]) -> float:
    """<expr> on the stabilizer state fixed by the given generators.

    A Pauli term has expectation +-1 when (+-)term is in the generated group
    and 0 otherwise; membership is decided by a GF(2) solve, the sign by the
    exact phase of the corresponding generator product.
    """
    if isinstance(expr, PauliString):
        expr = OperatorExpr.from_terms(expr.n_qubits, [expr])
    n = expr.n_qubits
    if any(g.n_qubits != n for g in generators):
        raise ValidationError("generators and expression act on different qubit counts")
    basis = np.column_stack([_symplectic(g) for g in generators])
    identity = PauliString("I" * n)
    real_parts: list[float] = []
    imag_parts: list[float] = []
    for term in expr.terms:
        subset = _solve_gf2(basis, _symplectic(term))
        if subset is None:
            continue
        product = functools.reduce(
            pauli_multiply, (g for g, used in zip(generators, subset) if used), identity
        )
        if product.letters != term.letters:
            raise ValidationError("GF(2) solution does not reproduce the term")
        sign = product.coeff.real
        value = term.coeff * sign
        real_parts.append(value.real)
        imag_parts.append(value.imag)
    total_imag = math.fsum(imag_parts)
    if abs(total_imag) >= 1e-10:
        raise ValidationError(f"expectation has imaginary residue {total_imag}")
    return math.fsum(real_parts)


_FAMILY_KINDS = ("ghz", "gghz", "mixed", "cluster")


@dataclass(frozen=True)
class StateFamily:
    """A named initial-state family at a fixed party count."""

    kind: str
    n_qubits: int
    alpha: float = 0.5
    p1: float = 1.0
    p2: float = 0.0
    p3: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _FAMILY_KINDS:
            raise ValueError(f"unknown state family {self.kind!r}")
        if self.n_qubits < 3:
            raise ValueError(f"need at least 3 parties, got {self.n_qubits}")
        if self.kind in ("gghz", "mixed") and not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha {self.alpha} outside (0, 1)")
        if self.kind == "mixed":
            if self.p1 <= 0.0 or self.p2 < 0.0 or self.p3 < 0.0:
                raise ValueError(f"invalid weights ({self.p1}, {self.p2}, {self.p3})")
            if abs(self.p1 + self.p2 + self.p3 - 1.0) > WEIGHT_SUM_TOL:
                raise ValueError("mixture weights must sum to 1")

    @classmethod
    def parse(cls, text: str, n_qubits: int) -> "StateFamily":
        """Parse CLI-style labels: ghz, cluster, gghz:alpha=0.3,
        mixed:p1=0.8,p2=0.1,p3=0.1,alpha=0.4."""
        kind, _, arg_text = text.strip().partition(":")
        kind = kind.lower()
        args: dict[str, float] = {}
        if arg_text:
            for item in arg_text.split(","):
                key, _, value = item.partition("=")
                if not value:
                    raise ValueError(f"malformed state parameter {item!r}")
                args[key.strip()] = float(value)
        if kind in ("ghz", "cluster"):
            if args:
                raise ValueError(f"{kind} takes no parameters")
            return cls(kind, n_qubits)
        if kind == "gghz":
            extra = set(args) - {"alpha"}
            if extra or "alpha" not in args:
                raise ValueError("gghz needs exactly alpha=<value>")
            return cls(kind, n_qubits, alpha=args["alpha"])
        if kind == "mixed":
            needed = {"p1", "p2", "p3", "alpha"}
            if set(args) != needed:
                raise ValueError(f"mixed needs exactly {sorted(needed)}")
            return cls(
                kind, n_qubits, alpha=args["alpha"], p1=args["p1"], p2=args["p2"], p3=args["p3"]
            )
        raise ValueError(f"unknown state family {kind!r}")

    def label(self) -> str:
        if self.kind == "gghz":
            return f"gghz:alpha={self.alpha:g}"
        if self.kind == "mixed":
            return f"mixed:p1={self.p1:g},p2={self.p2:g},p3={self.p3:g},alpha={self.alpha:g}"
        return self.kind

    @property
    def witness_family(self) -> str:
        """Which witness family certifies this state (cluster or GHZ-type)."""
        return "cluster" if self.kind == "cluster" else "ghz"

    @property
    def x_string_expectation(self) -> float:
        """Initial expectation of the all-x stabilizer on this family."""
        if self.kind in ("ghz", "cluster"):
            return 1.0
        return 2.0 * self.p1 * math.sqrt(self.alpha * (1.0 - self.alpha))

    def density_matrix(self) -> np.ndarray:
        if self.kind == "ghz":
            return make_ghz(self.n_qubits)
        if self.kind == "gghz":
            return make_generalized_ghz(self.n_qubits, self.alpha)
        if self.kind == "mixed":
            return make_mixed_ghz(self.n_qubits, self.p1, self.p2, self.p3, self.alpha)
        return make_cluster(self.n_qubits)


def generators_commute(generators: list[PauliString]) -> bool:
    return all(
        commutes(a, b)
        for i, a in enumerate(generators)
        for b in generators[i + 1 :]
    )
