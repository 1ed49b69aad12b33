"""Hardware-efficient layered ansatz and a small statevector engine.

The circuit is an initial RY+RZ rotation layer on every qubit followed by
n_layers repetitions of [linear CX chain (control i -> target i+1), RY+RZ
rotation layer].  Parameters are flattened layer-major: within a layer all RY
angles come first (qubit order), then all RZ angles, so

    index = layer * 2 * n_qubits + (0 if RY else n_qubits) + qubit.

Each angle feeds exactly one rotation whose generator squares to identity,
which is what makes every single-parameter energy slice a pure sinusoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, InvalidSpecError

TWO_PI = 2.0 * np.pi


@dataclass
class AnsatzSpec:
    """Shape of the layered ansatz on a register."""

    n_qubits: int
    n_layers: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidSpecError(f"need at least one qubit, got {self.n_qubits}")
        if self.n_layers < 0:
            raise InvalidSpecError(f"negative layer count {self.n_layers}")

    @property
    def n_params(self) -> int:
        return 2 * self.n_qubits * (self.n_layers + 1)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @cached_property
    def engine(self) -> "StatevectorEngine":
        return StatevectorEngine(self)


def reduce_angles(theta: np.ndarray) -> np.ndarray:
    """Map every angle into [0, 2pi)."""
    return np.mod(np.asarray(theta, dtype=float), TWO_PI)


def random_parameters(spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform initial parameters in [0, 2pi)."""
    return rng.uniform(0.0, TWO_PI, size=spec.n_params)


class StatevectorEngine:
    """Prepares ansatz states; precomputes the CX-chain basis permutation."""

    def __init__(self, spec: AnsatzSpec):
        self.spec = spec
        n = spec.n_qubits
        perm = np.arange(spec.dim, dtype=np.int64)
        for i in range(n - 1):
            control = 1 << (n - 1 - i)
            target = 1 << (n - 2 - i)
            perm = np.where(perm & control, perm ^ target, perm)
        # perm[x] is where basis state x ends up; gather with the inverse.
        self._gather = np.argsort(perm)

    @staticmethod
    def _rotation_matrices(ry: np.ndarray, rz: np.ndarray) -> np.ndarray:
        """Fused RZ(b) @ RY(a) per qubit and batch entry, shape (..., 2, 2)."""
        half_y, half_z = ry / 2.0, rz / 2.0
        c, s = np.cos(half_y), np.sin(half_y)
        phase = np.exp(-1j * half_z)
        u = np.empty(ry.shape + (2, 2), dtype=np.complex128)
        u[..., 0, 0] = phase * c
        u[..., 0, 1] = -phase * s
        u[..., 1, 0] = phase.conj() * s
        u[..., 1, 1] = phase.conj() * c
        return u

    def prepare_batch(self, thetas: np.ndarray) -> np.ndarray:
        """Statevectors for a (batch, n_params) block of parameter vectors."""
        thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
        if thetas.shape[1] != self.spec.n_params:
            raise DimensionError(
                f"got {thetas.shape[1]} parameters, ansatz takes {self.spec.n_params}"
            )
        n, batch = self.spec.n_qubits, thetas.shape[0]
        psi = np.zeros((batch, self.spec.dim), dtype=np.complex128)
        psi[:, 0] = 1.0
        for layer in range(self.spec.n_layers + 1):
            if layer > 0:
                psi = psi[:, self._gather]
            base = layer * 2 * n
            gates = self._rotation_matrices(
                thetas[:, base:base + n], thetas[:, base + n:base + 2 * n]
            )  # (batch, n_qubits, 2, 2)
            for q in range(n):
                left = 1 << q
                right = 1 << (n - 1 - q)
                block = psi.reshape(batch, left, 2, right)
                psi = np.einsum(
                    "kab,kibj->kiaj", gates[:, q], block
                ).reshape(batch, -1)
        return psi

    def prepare(self, theta: np.ndarray) -> np.ndarray:
        return self.prepare_batch(theta[None, :])[0]


def apply_ansatz(spec: AnsatzSpec, theta: np.ndarray) -> np.ndarray:
    """Statevector of the ansatz at parameters theta (norm checked)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (spec.n_params,):
        raise DimensionError(
            f"got parameter shape {theta.shape}, ansatz takes ({spec.n_params},)"
        )
    psi = spec.engine.prepare(theta)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise DimensionError(f"state norm drifted to {norm!r}")
    return psi
