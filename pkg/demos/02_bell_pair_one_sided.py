"""One-sided observables on a Bell pair reproduce the textbook answer.

The observables of one qubit inside a two-qubit system form a
four-dimensional subalgebra. Restricting the singlet state to it and
running the quotient construction gives entropy log 2, exactly what the
reduced density matrix from a partial trace says.
"""

import numpy as np

from gnsentropy import (
    example_generators,
    gram_matrix,
    partial_trace,
    restriction_entropy,
    von_neumann_entropy,
)
from gnsentropy.fock import PAULI

span, family = example_generators("ex2_bell")
state = family.state()

# the singlet makes the one-sided Pauli words orthonormal
paulis = np.array([np.kron(s, np.eye(2)) for s in PAULI])
G = gram_matrix(paulis, state)
print("Gram matrix over the one-sided Pauli words:")
print(np.round(G.real, 12))

report = restriction_entropy(span, state)
print(f"\nrestriction entropy: {report.entropy_nats:.12f} nats "
      f"= {report.entropy_bits:.12f} bits")
print(f"spectrum: {np.round(report.spectrum, 12)}")
print(f"quotient dimension {report.gns_dim}, both routes agree: "
      f"{report.methods_agree}")

rho = partial_trace(state.vector, (2, 2), keep="A")
print(f"\npartial-trace check: reduced state eigenvalues "
      f"{np.round(np.linalg.eigvalsh(rho), 12)}, entropy "
      f"{von_neumann_entropy(np.linalg.eigvalsh(rho)):.12f} nats")
