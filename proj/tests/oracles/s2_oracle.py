"""Independent reference values for ln S2 from the integral representation (mpmath)."""
import mpmath as mp

mp.mp.dps = 30


def log_s2_strip(z, w1, w2):
    z, w1, w2 = mp.mpc(z), mp.mpc(w1), mp.mpc(w2)
    a = 2 * z - w1 - w2

    def f(t):
        if t < mp.mpf("1e-6"):
            # series of the regular integrand near 0
            return a * (a * a - w1 * w1 - w2 * w2) / (12 * w1 * w2)
        return (mp.sinh(a * t) / (mp.sinh(w1 * t) * mp.sinh(w2 * t)) - a / (w1 * w2 * t)) / (2 * t)

    return mp.quad(f, [0, 0.25, 1, 4, 16, 64, mp.inf], maxdegree=10)


def log_s2(z, w1, w2):
    """Reduce into the strip with the functional equations, then integrate."""
    z, w1, w2 = mp.mpc(z), mp.mpc(w1), mp.mpc(w2)
    acc = mp.mpc(0)
    lo, hi = 0, (w1 + w2).real
    while z.real <= lo + 0.1 * hi:
        # S2(z) = 2 sin(pi z / w2) S2(z + w1)
        acc += mp.log(2 * mp.sin(mp.pi * z / w2))
        z += w1
    while z.real >= 0.9 * hi:
        # S2(z) = S2(z - w1) / (2 sin(pi (z - w1) / w2))
        acc -= mp.log(2 * mp.sin(mp.pi * (z - w1) / w2))
        z -= w1
    return acc + log_s2_strip(z, w1, w2)


if __name__ == "__main__":
    import sys
    for line in sys.stdin:
        if not line.strip():
            continue
        zr, zi, w1r, w1i, w2r, w2i = map(float, line.split())
        v = log_s2(mp.mpc(zr, zi), mp.mpc(w1r, w1i), mp.mpc(w2r, w2i))
        print(mp.nstr(mp.exp(v).real, 20), mp.nstr(mp.exp(v).imag, 20))
