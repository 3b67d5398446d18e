"""Independent numpy evaluation of the closed-form values frozen into the C++ tests.

Run with `python3 tests/oracles/compute_oracles.py`; it shares no code with the library.
"""
import numpy as np


def H(x):
    return 0.0 if x in (0.0, 1.0) else float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def entropy(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    return float(-(w * np.log2(w)).sum())


def ptA(rho, da, db):
    r = rho.reshape(da, db, da, db)
    return r.transpose(2, 1, 0, 3).reshape(da * db, da * db)


def negativity(rho, da, db):
    return float(np.abs(np.linalg.eigvalsh(ptA(rho, da, db))).sum() - 1)


def cl1(rho):
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


def mc(c, a, b, da, db):
    rho = np.zeros((da * db, da * db), complex)
    for r in range(len(a)):
        for s in range(len(a)):
            rho[a[r] * db + b[r], a[s] * db + b[s]] = c[r][s]
    return rho


print("eig [[.5,.3],[.3,.5]]", np.linalg.eigvalsh(np.array([[.5, .3], [.3, .5]])))
print("S(0.8,0.2)", H(0.8))
print("H(0.9)", H(0.9))
print("schmidt (0.5,0.3,0.2)", (np.sqrt([.5, .3, .2]).sum()) ** 2 - 1)

mcex = mc([[.5, .3], [.3, .5]], [0, 1], [0, 1], 2, 2)
print("MC example PT eig", np.linalg.eigvalsh(ptA(mcex, 2, 2)))
print("MC example N, Cl1", negativity(mcex, 2, 2), cl1(mcex))
ed = entropy(np.diag(np.diag(mcex)).real) - entropy(mcex)
print("MC example E_D", ed)
print("MC example E_C", H((1 + np.sqrt(1 - 0.6 ** 2)) / 2))
print("MC example E_PPT", np.log2(1.6))

bell = mc([[.5, .5], [.5, .5]], [0, 1], [0, 1], 2, 2)
iso = 0.5 * bell + 0.5 * np.eye(4) / 4
print("iso p=.5 PT eig", np.linalg.eigvalsh(ptA(iso, 2, 2)), "N", negativity(iso, 2, 2), "Cl1", cl1(iso))
for p in (0.1, 0.3, 0.5, 0.7, 0.9):
    r = p * bell + (1 - p) * np.eye(4) / 4
    print("  iso p", p, "gap Cl1-N", cl1(r) - negativity(r, 2, 2))

a = 1 / np.sqrt(2)
rho = np.array([[1, a, 0, -a], [a, 1, a, 0], [0, a, 1, a], [-a, 0, a, 1]]) / 4
tau = np.abs(rho)
print("tau-remark rho eig", np.linalg.eigvalsh(rho), "tau eig", np.linalg.eigvalsh(tau))
print("(1+-sqrt2)/4", (1 + np.sqrt(2)) / 4, (1 - np.sqrt(2)) / 4)

# appendix F
def ket(labels, d):
    v = np.zeros(d * d)
    for (j, k), amp in labels:
        v[j * d + k] += amp
    return v
psi = ket([((0, 0), a), ((1, 1), a)], 3)
phi = ket([((1, 1), a), ((2, 2), a)], 3)
e02 = ket([((0, 2), 1)], 3)
e20 = ket([((2, 0), 1)], 3)
rf = (np.outer(e02, e02) + np.outer(e20, e20) + np.outer(psi, psi) + np.outer(phi, phi)) / 4
print("appendix-f N, Cl1", negativity(rf, 3, 3), cl1(rf))

# qubit-qudit mixed case: p0 = .2 diag on column 4, 0.8 * MC example block on columns {0,1}
db = 5
r = np.zeros((10, 10), complex)
blk = 0.8 * np.array([[.5, .3], [.3, .5]])
idx = [0 * db + 0, 1 * db + 1]
for x in range(2):
    for y in range(2):
        r[idx[x], idx[y]] = blk[x, y]
r[0 * db + 4, 0 * db + 4] = 0.1
r[1 * db + 4, 1 * db + 4] = 0.1
print("qubit-qudit mixed N", negativity(r, 2, db), "Cl1", cl1(r))

# two Bell blocks in 4x4 on A-pairs {0,1},{2,3}
r = 0.5 * mc([[.5, .5], [.5, .5]], [0, 1], [0, 1], 4, 4) + 0.5 * mc([[.5, .5], [.5, .5]], [2, 3], [2, 3], 4, 4)
print("two bell blocks N_L", np.log2(1 + negativity(r, 4, 4)))

# 4x4 pure state with Schmidt rank 3 -> N0
lam = np.array([.5, .3, .2])
v = np.zeros(16)
for i, l in enumerate(lam):
    v[i * 4 + i] = np.sqrt(l)
pt = ptA(np.outer(v, v), 4, 4)
print("rank-3 pure PT negative eig count", (np.linalg.eigvalsh(pt) < -1e-10).sum())

# Haar moment: mean purity of reduced state, dA=dB=2
rng = np.random.default_rng(1)
pur = []
for _ in range(20000):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    z /= np.linalg.norm(z)
    m = z.reshape(2, 2)
    ra = m @ m.conj().T
    pur.append(np.trace(ra @ ra).real)
print("Haar purity mean (expect 0.8)", np.mean(pur))

# Appendix A, d=2, K=4, rho=|+><+|
K, d = 4, 2
trM = (1 / K + (K ** (d - 2) - 1) / ((K - 1) * K ** (d - 1)) + 1 / K ** (d - 1)) * 1.0
print("appendix-A trace(M)", trM, "rho2 dim", K ** d * d)
