"""
Spin-chain Hamiltonians and exact ground truth
==============================================

Builds each open-chain family at a few sizes, diagonalizes it exactly, and
prints the ground energy, the ground-space degeneracy, and the term count
that sets the shot cost of one energy evaluation.
"""

import numpy as np

from smovqe.hamiltonians import build_hamiltonian, ground_truth

# The four families and their default couplings.  Negative j makes the
# two-body terms ferromagnetic; tfim/xxx also carry a field term.
FAMILIES = {
    "tfim": {"j": -1.0, "h": -1.0},
    "xx": {"j": -1.0},
    "xxz": {"j": -1.0, "delta": -0.5},
    "xxx": {"j": -1.0, "h": -1.0},
}

print(f"{'model':>6} {'qubits':>6} {'terms':>6} {'E_gs':>22} {'degeneracy':>10}")
for model, couplings in FAMILIES.items():
    for n_qubits in (2, 4, 6, 8):
        hamiltonian = build_hamiltonian(model, n_qubits, **couplings)
        truth = ground_truth(hamiltonian)
        print(
            f"{model:>6} {n_qubits:>6} {len(hamiltonian.terms):>6} "
            f"{truth.energy:>22.12f} {truth.degeneracy:>10}"
        )

# The two-site transverse-field chain is small enough to check by hand:
# H = -XX - Z1 - Z2 has ground energy -sqrt(5).
pair = ground_truth(build_hamiltonian("tfim", 2, j=-1.0, h=-1.0))
print(f"\ntwo-site tfim: {pair.energy:.12f}  vs  -sqrt(5) = {-np.sqrt(5):.12f}")

# The ground "state" can be a subspace.  A pure -ZZ pair is a textbook
# case: |00> and |11> tie, so the projector has rank 2 and fidelity is
# measured against the whole subspace.
from smovqe.hamiltonians import Hamiltonian, PauliTerm, fidelity_to_gs

ising_pair = Hamiltonian(2, [PauliTerm(-1.0, "ZZ")])
degenerate = ground_truth(ising_pair)
print(f"\n-ZZ pair degeneracy: {degenerate.degeneracy}")

ghz = np.zeros(4, dtype=complex)
ghz[0] = ghz[3] = 1.0 / np.sqrt(2.0)
print(f"GHZ overlap with the ground space: {fidelity_to_gs(ghz, degenerate):.6f}")
