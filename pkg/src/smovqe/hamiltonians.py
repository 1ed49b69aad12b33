"""Open-boundary spin-chain Hamiltonians as weighted Pauli strings.

Qubit i occupies kron slot i, so bit i of a basis index has significance
2**(n_qubits-1-i).  Every operator is held as a list of Pauli strings; dense
matrices are built lazily and only for ground-truth diagonalization, while
expectation values use the permutation/phase action of each string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

from .errors import DimensionError, InvalidSpecError, ResourceCapError

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

PAULI_MATRICES = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

# Largest qubit count accepted for dense diagonalization.
DENSE_DIAG_CAP = 14

# Required coupling names per model family.
MODEL_COUPLINGS = {
    "tfim": ("j", "h"),
    "xx": ("j",),
    "xxz": ("j", "delta"),
    "xxx": ("j", "h"),
}


@dataclass
class PauliTerm:
    """One weighted Pauli string, e.g. 0.5 * XXI."""

    coefficient: float
    axes: str

    def __post_init__(self):
        if not np.isfinite(self.coefficient):
            raise InvalidSpecError(f"non-finite coefficient {self.coefficient!r}")
        bad = set(self.axes) - set("IXYZ")
        if bad:
            raise InvalidSpecError(f"unknown Pauli axes {sorted(bad)} in {self.axes!r}")

    @property
    def is_identity(self) -> bool:
        return set(self.axes) <= {"I"}


@dataclass
class Hamiltonian:
    """Sum of Pauli terms on a fixed register.

    Zero-coefficient terms are dropped at construction.
    """

    n_qubits: int
    terms: list[PauliTerm]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidSpecError(f"need at least one qubit, got {self.n_qubits}")
        for term in self.terms:
            if len(term.axes) != self.n_qubits:
                raise DimensionError(
                    f"term {term.axes!r} has {len(term.axes)} axes on a "
                    f"{self.n_qubits}-qubit register"
                )
        self.terms = [t for t in self.terms if t.coefficient != 0.0]

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def dense_matrix(self) -> np.ndarray:
        """Dense matrix of the full operator (cached)."""
        return self._dense

    @cached_property
    def _dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for term in self.terms:
            mats = [PAULI_MATRICES[a] for a in term.axes]
            out += term.coefficient * reduce(np.kron, mats)
        return out

    @cached_property
    def _string_action(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Permutation/phase form of every non-identity term.

        For a Pauli string P, P|x> = phase(x) |x ^ flip>, so
        <psi|P|psi> = sum_y conj(psi[y]) * phase(y ^ flip) * psi[y ^ flip].
        Returns (coefficients, index table, phase table) with one row per term.
        """
        dim = self.dim
        basis = np.arange(dim, dtype=np.int64)
        coefs, idx_rows, ph_rows = [], [], []
        for term in self.terms:
            if term.is_identity:
                continue
            flip = 0
            parity_mask = 0
            n_y = 0
            for i, axis in enumerate(term.axes):
                bit = 1 << (self.n_qubits - 1 - i)
                if axis in "XY":
                    flip |= bit
                if axis in "YZ":
                    parity_mask |= bit
                if axis == "Y":
                    n_y += 1
            parity = np.bitwise_count(basis & parity_mask) & 1
            phase_at = (1j**n_y) * (1.0 - 2.0 * parity)
            idx = basis ^ flip
            coefs.append(term.coefficient)
            idx_rows.append(idx)
            ph_rows.append(phase_at[idx])
        if not coefs:
            return (np.zeros(0), np.zeros((0, dim), dtype=np.int64),
                    np.zeros((0, dim), dtype=np.complex128))
        return (np.array(coefs), np.stack(idx_rows), np.stack(ph_rows))

    @cached_property
    def identity_offset(self) -> float:
        """Summed coefficient of all-identity terms (measured noiselessly)."""
        return float(sum(t.coefficient for t in self.terms if t.is_identity))

    def term_expectations(self, state: np.ndarray) -> np.ndarray:
        """<psi|P_k|psi> for every non-identity term, in term order."""
        if state.shape != (self.dim,):
            raise DimensionError(
                f"state has shape {state.shape}, expected ({self.dim},)"
            )
        _, idx, ph = self._string_action
        if idx.shape[0] == 0:
            return np.zeros(0)
        vals = np.einsum("x,kx,kx->k", state.conj(), ph, state[idx])
        if np.max(np.abs(vals.imag), initial=0.0) > 1e-10:
            raise DimensionError("Pauli expectation has a non-negligible imaginary part")
        return vals.real


def _bond_axes(n_qubits: int, site: int, pair: str) -> str:
    return "I" * site + pair + "I" * (n_qubits - site - 2)


def _site_axes(n_qubits: int, site: int, axis: str) -> str:
    return "I" * site + axis + "I" * (n_qubits - site - 1)


def build_hamiltonian(model: str, n_qubits: int, **couplings: float) -> Hamiltonian:
    """Build an open-boundary chain Hamiltonian.

    Models and their couplings:
      tfim: j * sum XX + h * sum Z            (j, h)
      xx:   j * (sum XX + sum YY)             (j)
      xxz:  j * (sum XX + sum YY) + delta * sum ZZ   (j, delta)
      xxx:  j * sum (XX+YY+ZZ) + h * sum (X+Y+Z)     (j, h)
    """
    if model not in MODEL_COUPLINGS:
        raise InvalidSpecError(
            f"unknown model {model!r}; expected one of {sorted(MODEL_COUPLINGS)}"
        )
    if n_qubits < 1:
        raise InvalidSpecError(f"need at least one qubit, got {n_qubits}")
    required = MODEL_COUPLINGS[model]
    missing = [k for k in required if k not in couplings]
    extra = [k for k in couplings if k not in required]
    if missing or extra:
        raise InvalidSpecError(
            f"model {model!r} takes couplings {required}; "
            f"missing {missing}, unexpected {extra}"
        )

    terms: list[PauliTerm] = []
    bonds = range(n_qubits - 1)
    sites = range(n_qubits)
    if model == "tfim":
        j, h = couplings["j"], couplings["h"]
        terms += [PauliTerm(j, _bond_axes(n_qubits, i, "XX")) for i in bonds]
        terms += [PauliTerm(h, _site_axes(n_qubits, i, "Z")) for i in sites]
    elif model == "xx":
        j = couplings["j"]
        terms += [PauliTerm(j, _bond_axes(n_qubits, i, "XX")) for i in bonds]
        terms += [PauliTerm(j, _bond_axes(n_qubits, i, "YY")) for i in bonds]
    elif model == "xxz":
        j, delta = couplings["j"], couplings["delta"]
        terms += [PauliTerm(j, _bond_axes(n_qubits, i, "XX")) for i in bonds]
        terms += [PauliTerm(j, _bond_axes(n_qubits, i, "YY")) for i in bonds]
        terms += [PauliTerm(delta, _bond_axes(n_qubits, i, "ZZ")) for i in bonds]
    else:  # xxx
        j, h = couplings["j"], couplings["h"]
        for pair in ("XX", "YY", "ZZ"):
            terms += [PauliTerm(j, _bond_axes(n_qubits, i, pair)) for i in bonds]
        for axis in ("X", "Y", "Z"):
            terms += [PauliTerm(h, _site_axes(n_qubits, i, axis)) for i in sites]
    return Hamiltonian(n_qubits, terms)


def exact_expectation(hamiltonian: Hamiltonian, state: np.ndarray) -> float:
    """Infinite-shot energy <psi|H|psi>."""
    if state.shape != (hamiltonian.dim,):
        raise DimensionError(
            f"state has shape {state.shape}, expected ({hamiltonian.dim},)"
        )
    coefs, _, _ = hamiltonian._string_action
    value = hamiltonian.identity_offset
    if coefs.size:
        value += float(coefs @ hamiltonian.term_expectations(state))
    return value


@dataclass
class GroundTruth:
    """Exact ground-state data from dense diagonalization."""

    energy: float
    degeneracy: int
    projector: np.ndarray
    tolerance: float
    subspace_basis: np.ndarray = field(repr=False, default=None)


def ground_truth(hamiltonian: Hamiltonian, tolerance: float = 1e-5) -> GroundTruth:
    """Diagonalize densely and collect the (possibly degenerate) ground subspace.

    Eigenvalues within `tolerance` of the minimum count as degenerate.
    """
    if hamiltonian.n_qubits > DENSE_DIAG_CAP:
        raise ResourceCapError(
            f"dense diagonalization capped at {DENSE_DIAG_CAP} qubits, "
            f"got {hamiltonian.n_qubits}"
        )
    if tolerance < 0:
        raise InvalidSpecError(f"tolerance must be non-negative, got {tolerance}")
    vals, vecs = np.linalg.eigh(hamiltonian.dense_matrix())
    g = int(np.count_nonzero(vals <= vals[0] + tolerance))
    basis = vecs[:, :g]
    projector = basis @ basis.conj().T
    return GroundTruth(
        energy=float(vals[0]),
        degeneracy=g,
        projector=projector,
        tolerance=tolerance,
        subspace_basis=basis,
    )


def fidelity_to_gs(state: np.ndarray, truth: GroundTruth) -> float:
    """Overlap <psi|P_gs|psi> with the ground subspace, clipped to [0, 1]."""
    expected = truth.subspace_basis.shape[0]
    if state.shape != (expected,):
        raise DimensionError(f"state has shape {state.shape}, expected ({expected},)")
    amplitudes = truth.subspace_basis.conj().T @ state
    overlap = float(np.real(amplitudes.conj() @ amplitudes))
    return min(1.0, max(0.0, overlap))
