"""Reference values for the kernels and the two-particle wave function (mpmath).

Every quantity is built from ln S2 of s2_oracle.py and the defining formulas:
  K(x)     = 1 / (S2(ix + g*/2) S2(-ix + g*/2))
  mu(x)    = S2(ix) / S2(ix + g)
  Khat(l)  = K with periods (1/w2, 1/w1) and coupling g*/(w1 w2), i.e.
             1 / (S2(il + ghat/2) S2(-il + ghat/2)) over the dual periods
  d_1      = 1 / (sqrt(w1 w2) S2(g))
  Psi(x1, x2) = d_1 e^{2 pi i l2 (x1 + x2)} int K(x1 - y) K(x2 - y) e^{2 pi i (l1 - l2) y} dy
Output lines: kind set arg_re arg_im [arg2...] value_re value_im
"""
import sys

import mpmath as mp

from s2_oracle import log_s2

mp.mp.dps = 20

SETS = {
    "REAL-SYMM": (mp.mpc(1), mp.mpc(1), mp.mpc(0.5)),
    "REAL-ASYMM": (mp.mpc(0.3), mp.mpc(1), mp.mpc(0.4)),
    "COMPLEX": (mp.mpc(1, 0.2), mp.mpc(1), mp.mpc(0.5, 0.1)),
}


def s2(z, w1, w2):
    return mp.exp(log_s2(z, w1, w2))


def kernel(x, w1, w2, g):
    gs = w1 + w2 - g
    return 1 / (s2(1j * x + gs / 2, w1, w2) * s2(-1j * x + gs / 2, w1, w2))


def measure(x, w1, w2, g):
    return s2(1j * x, w1, w2) / s2(1j * x + g, w1, w2)


def kernel_hat(lam, w1, w2, g):
    ghat = g / (w1 * w2)
    return 1 / (s2(1j * lam + ghat / 2, 1 / w2, 1 / w1) * s2(-1j * lam + ghat / 2, 1 / w2, 1 / w1))


def d1(w1, w2, g):
    return 1 / (mp.sqrt(w1 * w2) * s2(g, w1, w2))


def psi2(l1, l2, x1, x2, w1, w2, g):
    f = lambda y: kernel(x1 - y, w1, w2, g) * kernel(x2 - y, w1, w2, g) * mp.exp(2j * mp.pi * (l1 - l2) * y)
    # |K|^2 is below 1e-20 beyond |y - c| = 16 on the real sets
    c = (x1 + x2) / 2
    integral = mp.quad(f, mp.linspace(c - 16, c + 16, 17), method="gauss-legendre")
    return d1(w1, w2, g) * mp.exp(2j * mp.pi * l2 * (x1 + x2)) * integral


def emit(kind, name, args, v):
    parts = [kind, name] + [mp.nstr(mp.mpf(a), 17) for a in args] + [mp.nstr(v.real, 17), mp.nstr(v.imag, 17)]
    print(" ".join(parts), flush=True)


def main_psi2():
    for name in ("REAL-SYMM", "REAL-ASYMM"):
        w1, w2, g = SETS[name]
        emit("psi2", name, (0.2, -0.1, 0.4, 0.0), psi2(mp.mpf(0.2), mp.mpf(-0.1), mp.mpf(0.4), mp.mpf(0), w1, w2, g))


if __name__ == "__main__" and sys.argv[1:] == ["psi2"]:
    main_psi2()
elif __name__ == "__main__":
    print("# kind set args... value_re value_im  (mpmath, tests/oracles/kernel_oracle.py)")
    for name, (w1, w2, g) in SETS.items():
        for x in (0, 0.37, 1.23, -2.1):
            emit("K", name, (x,), kernel(mp.mpf(x), w1, w2, g))
        for x in (0.37, 1.23, -2.1):
            emit("mu", name, (x,), measure(mp.mpf(x), w1, w2, g))
        for lam in (0, 0.3, -0.8):
            emit("Khat", name, (lam,), kernel_hat(mp.mpf(lam), w1, w2, g))
        emit("d1", name, (), d1(w1, w2, g))
    main_psi2()
