"""Independent reference values for the unit tests.

Rebuilds the operators and states with numpy/scipy/mpmath from their
defining formulas and prints a C++ header of constants. Regenerate with

    python3 tests/oracles/generate.py > tests/unit/oracle_values.hpp
"""

import math

import mpmath as mp
import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.linalg import expm

mp.mp.dps = 40


def sigma_n(phi, psi):
    return np.array(
        [
            [math.cos(phi), np.exp(1j * psi) * math.sin(phi)],
            [np.exp(-1j * psi) * math.sin(phi), -math.cos(phi)],
        ]
    )


def quat(r, eta, phi, psi):
    return r * (np.eye(2) * math.cos(eta) + 1j * sigma_n(phi, psi) * math.sin(eta))


def ladder(n_max, omega=1.0):
    a = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(1, n_max + 1):
        a[n - 1, n] = math.sqrt(n * omega)
    return a


def chi(s):
    return np.array([1.0, 0.0]) if s == 0 else np.array([0.0, 1.0])


def energy_state(q, r, s, omega, n_max):
    v = np.zeros(2 * (n_max + 1), dtype=complex)
    qn = np.eye(2, dtype=complex)
    for n in range(n_max + 1):
        v[2 * n : 2 * n + 2] = qn @ chi(s) / math.sqrt(math.factorial(n) * omega**n)
        qn = q @ qn
    return v / math.sqrt(2.0 * math.exp(r * r / omega))


def q_state(Q, rt, s, wp, wm, n_max):
    v = np.zeros(2 * (n_max + 1), dtype=complex)
    qn = np.eye(2, dtype=complex)
    for n in range(n_max + 1):
        rinv = np.diag(
            [
                1.0 / math.sqrt(math.factorial(n) * wp**n),
                1.0 / math.sqrt(math.factorial(n) * wm**n),
            ]
        )
        v[2 * n : 2 * n + 2] = rinv @ qn @ chi(s)
        qn = Q @ qn
    return v / math.sqrt(math.exp(rt * rt / wp) + math.exp(rt * rt / wm))


def emit(name, value):
    if isinstance(value, complex):
        print(f"inline const cplx {name}{{{value.real!r}, {value.imag!r}}};")
    else:
        print(f"inline constexpr double {name} = {float(value)!r};")


print("#pragma once")
print()
print("// Generated by tests/oracles/generate.py; do not edit.")
print()
print('#include "qvcs/linalg.hpp"')
print()
print("namespace qvcs::oracle {")
print()

# Quaternion power, r = 1.2, eta = 0.7, phi = 1.1, psi = 0.4, n = 5.
q = quat(1.2, 0.7, 1.1, 0.4)
q5 = np.linalg.matrix_power(q, 5)
for i in range(2):
    for j in range(2):
        emit(f"kQ5_{i}{j}", complex(q5[i, j]))

# Rashba Hamiltonian: omega_c = 1, xi = 0.25, gamma = 0.6, lambda = -i, n_max = 20.
n_max = 20
wc, xi, gam = 1.0, 0.25, 0.6
b = ladder(n_max)
bd = b.conj().T
num = bd @ b
sz = np.diag([1.0, -1.0])
sm = np.array([[0.0, 0.0], [1.0, 0.0]])
sp = sm.T
I2 = np.eye(2)
Id = np.eye(n_max + 1)
h0 = wc * np.kron(num + 0.5 * Id, I2) - wc * xi * np.kron(Id, sz)
lam = -1j
b_plus = bd @ (lam * Id)
b_minus = -np.conj(lam) * Id @ b
v_so = np.kron(b_plus, sm) + np.kron(b_minus, sp)
h = h0 + 1j * wc * gam * v_so
ev = np.linalg.eigvalsh(h)
for k in range(6):
    emit(f"kRashbaEig{k}", ev[k])
emit("kRashbaEPlus1", wc * 1 - math.sqrt((wc * (1 + 2 * xi) / 2) ** 2 + 1 * (gam * wc) ** 2))
emit("kRashbaTheta1", 0.5 * math.atan(2 * gam * wc / (wc * (1 + 2 * xi))))

# Dresselhaus: beta = 0.3, xi = -0.3, eps = +1: B+ = b lambda, B- = conj(lambda) b^dag.
beta, xi_d = 0.3, -0.3
h0d = wc * np.kron(num + 0.5 * Id, I2) - wc * xi_d * np.kron(Id, sz)
vd = np.kron(b @ (lam * Id), sm) + np.kron(np.conj(lam) * Id @ bd, sp)
hd = h0d + wc * beta * vd
evd = np.linalg.eigvalsh(hd)
for k in range(4):
    emit(f"kDresselhausEig{k}", evd[k])

# Gauss-Laguerre, 20 nodes, polished in 50-digit arithmetic.
with mp.workdps(50):
    x, w = [], []
    for x0 in laggauss(20)[0]:
        xr = mp.findroot(lambda t: mp.laguerre(20, 0, t), x0)
        x.append(float(xr))
        w.append(float(xr / (21 ** 2 * mp.laguerre(21, 0, xr) ** 2)))
emit("kLaguerre20Node0", x[0])
emit("kLaguerre20Node19", x[19])
emit("kLaguerre20Weight0", w[0])
emit("kLaguerre20Weight19", w[19])

# Poisson tail P(X > 10), mean 2, and the regularized gamma form.
tail = mp.gammainc(11, 0, 2, regularized=True)
emit("kPoissonTail10Mean2", tail)

# Energy family component, q = (1.2, 0.7, 1.1, 0.4), omega = 0.8, spin +, n = 3.
ve = energy_state(q, 1.2, 0, 0.8, 60)
emit("kEnergyComp3Plus", complex(ve[6]))
emit("kEnergyComp3Minus", complex(ve[7]))

# Displacement form at n_max = 40, omega = 0.8: exp(G) chi^+ Phi_0 / sqrt 2.
nm = 40
a = ladder(nm, 0.8)
G = (np.kron(a.conj().T, q) - np.kron(a, q.conj().T)) / 0.8
vd0 = expm(G)[:, 0] / math.sqrt(2.0)
emit("kDisplacementComp2", complex(vd0[4]))
emit("kDisplacementComp2Minus", complex(vd0[5]))

# Q family, (r~, theta, varphi, varrho) = (1.2, 0.9, 0.7, 2.1), omega = (0.94, 1.06), spin +.
Q = quat(1.2, 0.9, 0.7, 2.1)
vq = q_state(Q, 1.2, 0, 0.94, 1.06, 60)
Aop = np.kron(ladder(60, 0.94), np.diag([1.0, 0.0])) + np.kron(ladder(60, 1.06), np.diag([0.0, 1.0]))
emit("kQFamilyExpectA", complex(np.vdot(vq, Aop @ vq)))
emit("kQFamilyNorm2", float(np.vdot(vq, vq).real))
# Closed-form table entry for comparison: r~ F_+ (cos theta + i sin theta cos varphi).
fp = math.exp(1.44 / 0.94) / (math.exp(1.44 / 0.94) + math.exp(1.44 / 1.06))
emit("kQFamilyClosedA", complex(1.2 * fp * complex(math.cos(0.9), math.sin(0.9) * math.cos(0.7))))

# Energy family expectation of A, same state as above.
Ae = np.kron(ladder(60, 0.8), I2)
emit("kEnergyExpectA", complex(np.vdot(ve, Ae @ ve)))

# Uncertainty product at x_n = n, q = (1.0, 0.7, 1.1, 0.4), spin +.
q1 = quat(1.0, 0.7, 1.1, 0.4)
vu = energy_state(q1, 1.0, 0, 1.0, 60)
a1 = np.kron(ladder(60), I2)
Qo = (a1 + a1.conj().T) / math.sqrt(2)
Po = (a1 - a1.conj().T) / (1j * math.sqrt(2))


def disp(X, v):
    m = np.vdot(v, X @ v).real
    return np.vdot(X @ v, X @ v).real - m * m


emit("kUncertaintyLhs", disp(Qo, vu) * disp(Po, vu))

# Scalar moment with an adaptive integral: int r^{2n+1} rho dr / (n! omega^n), n = 7, omega = 1.3.
om = mp.mpf("1.3")
val = mp.quad(lambda r: r ** 15 * (2 / om) * mp.e ** (-(r**2) / om), [0, mp.inf]) / (
    mp.factorial(7) * om**7
)
emit("kMoment7", val)

print()
print("}  // namespace qvcs::oracle")
