#!/usr/bin/env python3
"""Independent high-precision oracle for the frozen values used in the C++ tests.

Uses mpmath only: symmetric eigenproblems for mode frequencies, exact
oscillator mode sums, and direct Matsubara summation via mpmath.nsum.
Nothing here shares code with the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 40


def coupling_matrix(kind, a1, a2, med, present=(True, True)):
    """Quadratic-form matrix whose det(K + zeta^2) is the partition determinant."""
    te = kind in ("te3", "te_bath")
    prim = [a for a, p in zip((a1, a2), present) if p]
    n = len(prim) + len(med)
    K = mp.zeros(n, n)
    for j, a in enumerate(prim):
        K[j, j] = a
    mu = sum((mp.mpf(1) / a for a in prim), mp.mpf(0)) if te else mp.mpf(0)
    off = len(prim)
    for i, (ai, ci) in enumerate(med):
        K[off + i, off + i] = ai
        for j in range(len(prim)):
            K[j, off + i] = ci
            K[off + i, j] = ci
        for l, (al, cl) in enumerate(med):
            K[off + i, off + l] += ci * cl * mu
    return K


def omegas(K):
    ev = mp.eigsy(K)[0]
    return sorted(mp.sqrt(ev[i]) for i in range(K.rows))


def mode_free_energy(ws, T):
    if T == 0:
        return sum(w / 2 for w in ws)
    return sum(T * mp.log(2 * mp.sinh(w / (2 * T))) for w in ws)


def interaction_oracle(kind, a1, a2, med, T):
    full = omegas(coupling_matrix(kind, a1, a2, med))
    d1 = omegas(coupling_matrix(kind, a1, a2, med, (True, False)))
    d2 = omegas(coupling_matrix(kind, a1, a2, med, (False, True)))
    bath = [mp.sqrt(a) for a, _ in med]
    return (mode_free_energy(full, T) - mode_free_energy(d1, T)
            - mode_free_energy(d2, T) + mode_free_energy(bath, T))


def coupling_oracle(kind, a1, a2, med, T):
    full = omegas(coupling_matrix(kind, a1, a2, med))
    ref = [mp.sqrt(a) for a in [a1, a2] + [a for a, _ in med]]
    return mode_free_energy(full, T) - mode_free_energy(ref, T)


def d_values(kind, a1, a2, med, z):
    s = sum(c * c / (a + z * z) for a, c in med)
    A1, A2 = a1 + z * z, a2 + z * z
    if kind.startswith("tm"):
        return s / A1, s / A2
    return -z * z * s / (a1 * A1), -z * z * s / (a2 * A2)


def matsubara_interaction(kind, a1, a2, med, T):
    def term(n):
        z = 2 * mp.pi * n * T
        d1, d2 = d_values(kind, a1, a2, med, z)
        return mp.log(1 - d1 * d2 / ((1 - d1) * (1 - d2)))
    return T * (term(0) / 2 + mp.nsum(term, [1, mp.inf]))


def main():
    one = mp.mpf(1)
    c3 = mp.mpf("0.3")
    med = [(one, c3)]
    print("tm3 c=0.3 omega^2:", [w ** 2 for w in omegas(coupling_matrix("tm3", one, one, med))])
    print("te3 c=0.3 omega^2:", [w ** 2 for w in omegas(coupling_matrix("te3", one, one, med))])
    print("tm3 c=0.3 coupling F(T=0):", coupling_oracle("tm3", one, one, med, 0))
    print("tm3 c=0.3 interaction F(T=0):", interaction_oracle("tm3", one, one, med, 0))
    for kind in ("tm3", "te3"):
        for T in (mp.mpf("0.5"), mp.mpf(1)):
            o = interaction_oracle(kind, one, one, med, T)
            m = matsubara_interaction(kind, one, one, med, T)
            print(f"{kind} c=0.3 interaction F(T={T}): oracle={mp.nstr(o, 20)} matsubara={mp.nstr(m, 20)}")
        print(f"{kind} c=0.3 coupling F(T=0.5):", mp.nstr(coupling_oracle(kind, one, one, med, mp.mpf('0.5')), 20))
    print("2 ln(2 sinh 0.5):", 2 * mp.log(2 * mp.sinh(mp.mpf("0.5"))))
    d = mp.mpf("0.09")
    print("IF tm3 zeta=0:", 1 - d * d / (1 - d) ** 2, " half-log:", mp.log(1 - d * d / (1 - d) ** 2) / 2)
    d = mp.mpf("-0.0225")
    print("IF te3 zeta=1:", 1 - d * d / (1 - d) ** 2)
    e = mp.e ** -1
    print("psi_DK(1,1):", -e * mp.mpf(7) / 3, "psi_dK(1,1):", -mp.mpf(2) / 3 * e)
    print("dressed t tm3 zeta=1:", mp.mpf("0.0225") / mp.mpf("0.9775"), " te3:", mp.mpf("-0.0225") / mp.mpf("1.0225"))
    # bath generator M=2, k_max=3, lambda=0.3 (k_i = i*dk, c_i^2 = lambda^2 dk)
    for kind in ("tm_bath", "te_bath"):
        N, kmax, lam = 2, mp.mpf(3), mp.mpf("0.3")
        dk = kmax / N
        bath = [((i * dk) ** 2, lam * mp.sqrt(dk)) for i in range(1, N + 1)]
        print(f"{kind} M=2 interaction F(T=0.5):", mp.nstr(interaction_oracle(kind, one, one, bath, mp.mpf('0.5')), 20))


if __name__ == "__main__":
    main()
