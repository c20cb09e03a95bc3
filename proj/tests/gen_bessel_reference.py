"""Regenerates bessel_reference.inc from mpmath at 30 digits."""
import mpmath as mp

mp.mp.dps = 30
points = [mp.mpc(0.5, 0), mp.mpc(3.7, 0.2), mp.mpc(12.0, -0.5), mp.mpc(0.05, 0.01), mp.mpc(-2.0, 1.5), mp.mpc(40.0, 3.0)]
orders = [0, 1, 2, 5, 10, 20]


def sj(n, z):
    return mp.sqrt(mp.pi / (2 * z)) * mp.besselj(n + mp.mpf(1) / 2, z)


def sy(n, z):
    return mp.sqrt(mp.pi / (2 * z)) * mp.bessely(n + mp.mpf(1) / 2, z)


with open("bessel_reference.inc", "w") as out:
    for z in points:
        for n in orders:
            j = sj(n, z)
            h = j + 1j * sy(n, z)
            out.write("{%d, {%s, %s}, {%s, %s}, {%s, %s}},\n" % (
                n, mp.nstr(z.real, 17), mp.nstr(z.imag, 17),
                mp.nstr(j.real, 20), mp.nstr(j.imag, 20), mp.nstr(h.real, 20), mp.nstr(h.imag, 20)))
