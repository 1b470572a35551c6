# Copyright 2026 The circsym Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent numpy density-matrix model of the consecutive X-rotation table.

Qubit 0 is the data qubit, higher qubits are controls. Noise model: bit flip
eps1 after every one-qubit gate (control Hadamards included), bit flip
eps2/2 on each qubit after every two-qubit gate. Prints the golden CSV.
"""

import numpy as np

I = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def rx(theta):
    return np.cos(theta / 2) * I - 1j * np.sin(theta / 2) * X


def embed(op, qubit, n):
    """Single-qubit op on `qubit` of an n-qubit register (qubit 0 = LSB)."""
    out = np.array([[1.0 + 0j]])
    for q in reversed(range(n)):
        out = np.kron(out, op if q == qubit else I)
    return out


def controlled(u, target, control, n, on=1):
    fire, idle = (P1, P0) if on == 1 else (P0, P1)
    return embed(fire, control, n) @ embed(u, target, n) + embed(idle, control, n)


def bit_flip(rho, p, qubit, n):
    x = embed(X, qubit, n)
    return (1 - p) * rho + p * x @ rho @ x


def simulate(n, ops, e1, e2):
    rho = np.zeros((2**n, 2**n), dtype=complex)
    rho[0, 0] = 1
    for u, qubits in ops:
        rho = u @ rho @ u.conj().T
        rate = e1 if len(qubits) == 1 else e2 / 2
        for q in qubits:
            rho = bit_flip(rho, rate, q, n)
    # Post-select every control on |0> and keep the data qubit.
    keep = [i for i in range(2**n) if i >> 1 == 0]
    data = rho[np.ix_(keep, keep)]
    data /= np.trace(data).real
    return np.trace(data @ data).real


def unprotected(gates, theta):
    return 1, [(rx(theta), [0])] * gates


def qs_original(theta):
    n = 2
    a = rx(theta)
    return n, [(embed(H, 1, n), [1]), (controlled(a, 0, 1, n, 1), [0, 1]), (embed(a, 0, n), [0]),
               (controlled(a, 0, 1, n, 0), [0, 1]), (embed(H, 1, n), [1])]


def qs_type1(gates, theta):
    n = gates
    g = rx(theta)
    ops = [(embed(H, c, n), [c]) for c in range(1, n)]
    ops += [(controlled(g, 0, c, n, 1), [0, c]) for c in range(1, n)]
    ops.append((embed(g, 0, n), [0]))
    ops += [(controlled(g, 0, c, n, 0), [0, c]) for c in reversed(range(1, n))]
    ops += [(embed(H, c, n), [c]) for c in range(1, n)]
    return n, ops


def qs_type2(gates, theta):
    n = 2
    g = rx(theta)
    return n, ([(embed(H, 1, n), [1]), (controlled(g, 0, 1, n, 1), [0, 1])] + [(embed(g, 0, n), [0])] *
               (gates - 1) + [(controlled(g, 0, 1, n, 0), [0, 1]), (embed(H, 1, n), [1])])


def sts(gates, theta):
    n = 2
    return n, ([(embed(H, 1, n), [1]), (controlled(X, 0, 1, n), [0, 1])] + [(embed(rx(theta), 0, n), [0])] * gates +
               [(controlled(X, 0, 1, n), [0, 1]), (embed(H, 1, n), [1])])


def main():
    theta, e1 = 0.3, 0.001
    print("method,gates,ratio,purity")
    for gates in (2, 10):
        for ratio in (2, 10):
            e2 = ratio * e1
            rows = [("unprotected", unprotected(gates, theta))]
            if gates == 2:
                rows.append(("qs_original", qs_original(theta)))
            else:
                rows.append(("qs_type1", qs_type1(gates, theta)))
                rows.append(("qs_type2", qs_type2(gates, theta)))
            rows.append(("sts", sts(gates, theta)))
            for name, (n, ops) in rows:
                print(f"{name},{gates},{ratio},{simulate(n, ops, e1, e2):.10f}")


if __name__ == "__main__":
    main()
