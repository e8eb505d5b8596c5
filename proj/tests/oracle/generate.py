"""High-precision reference values frozen into the C++ unit tests.

Run with mpmath installed; prints C++-ready literals.
"""
from mpmath import mp, mpf, mpc, quad, exp, log, gamma, loggamma, digamma, rgamma, inf, euler, sqrt, pi, expm1

mp.dps = 40


def near_zero_series(y, start):
    """-sum_{n>=start} y^n / n!, i.e. the tail of -(e^y) past degree start-1."""
    term = y ** start / mp.factorial(start)
    total = term
    n = start
    while abs(term) > mpf(10) ** (-mp.dps - 5) * max(1, abs(total)):
        n += 1
        term *= y / n
        total += term
    return -total


def one_minus_x_minus_exp(x):
    # 1 - x - e^{-x}
    return near_zero_series(-x, 2) if x < mpf("0.01") else 1 - x - exp(-x)


def one_minus_exp_plus(y):
    # 1 - e^{iy} + iy
    return near_zero_series(1j * y, 2) if abs(y) < mpf("0.01") else 1 - exp(1j * y) + 1j * y


def dens(a, f, r):
    return exp(f * r) / expm1(r) ** (a + 1)


def tail(a, f, x):
    return quad(lambda r: dens(a, f, r), [x, x + 1, x + 10, inf])


def singular_quad(g, q, b):
    """int_0^b x^q h(x) dx given g = x^q h, via x = u^m with m = 1/(q+1)."""
    m = 1 / (mpf(q) + 1)
    return quad(lambda u: g(u ** m) * m * u ** (m - 1) if u > 0 else 0, [0, b ** (1 / m) / 2, b ** (1 / m)])


def moment(a, f, p, lo, hi):
    if lo == 0:
        head = singular_quad(lambda r: r ** p * dens(a, f, r), p - a - 1, 1)
        return head if hi == 1 else head + moment(a, f, p, 1, hi)
    pts = [lo, 1, 10, inf] if hi == inf else [lo, hi]
    pts = sorted(set(pts))
    return quad(lambda r: r ** p * dens(a, f, r), pts)


def a_tilde(a, b):
    f1 = lambda x: x * exp(-x) * (-expm1(-(a - b) * x)) / (-expm1(-x)) ** (a + 1)
    f2 = lambda x: exp(-x) * one_minus_x_minus_exp(x) / (-expm1(-x)) ** (a + 1)
    f3 = lambda x: exp(-x) / (1 - exp(-x)) ** a
    return singular_quad(lambda x: f1(x) + f2(x), 1 - a, 1) + quad(f3, [1, inf])


def psi_oracle(a, dirs, theta, drift, lam):
    """Levy-Khintchine integral; dirs = [(sign, sigma, f)]."""
    lam = mpf(lam)
    if a < 1:
        d = drift
        if d is None:
            d = -theta - sum(s * c * moment(a, f, 1, 0, 1) for s, c, f in dirs)
        v = -1j * lam * d
        for s, c, f in dirs:
            v += c * (singular_quad(lambda r: -expm1(1j * lam * s * r) * dens(a, f, r), -a, 1)
                      + quad(lambda r: -expm1(1j * lam * s * r) * dens(a, f, r), [1, 10, inf]))
        return v
    v = 1j * lam * theta
    for s, c, f in dirs:
        v += c * (singular_quad(lambda r: one_minus_exp_plus(lam * s * r) * dens(a, f, r), 1 - a, 1)
                  + quad(lambda r: (1 - exp(1j * lam * s * r)) * dens(a, f, r), [1, 10, inf]))
    return v


def cpp(x):
    x = mpc(x)
    if x.imag == 0:
        return mp.nstr(x.real, 20)
    return "{%s, %s}" % (mp.nstr(x.real, 20), mp.nstr(x.imag, 20))


if __name__ == "__main__":
    print("// specfun")
    for z in [mpc(3, 4), mpc(0.7, -12), mpc(25, 60), mpc(1.5, 0)]:
        print("loggamma", z, cpp(loggamma(z)))
    for z in [mpc(3, 4), mpc(-2.5, 0.5), mpc(0.1, 0), mpc(40, -70)]:
        print("digamma", z, cpp(digamma(z)))
    print("// measure")
    print("density a=.5 f=1 r=5", cpp(dens(0.5, 1, 5)))
    for a, f, x in [(0.5, 1, 0.1), (0.5, 1, 1), (0.5, 1, 5), (0.5, 0.5, 1), (1.5, 0, 0.01), (1.2, 2.1, 3)]:
        print("tail", a, f, x, cpp(tail(a, f, x)))
    print("outer p=1 a=.5 f=1", cpp(moment(0.5, 1, 1, 1, inf)))
    print("inner p=2 a=1.5 f=1", cpp(moment(1.5, 1, 2, 0, 1)))
    print("inner p=1 a=.5 f=1 (eta short)", cpp(moment(0.5, 1, 1, 0, 1)))
    print("cov a=.5 f=1", cpp(moment(0.5, 1, 2, 0, inf)))
    for a, b in [(1.5, 1), (0.5, 1), (1, 0.5), (1.5, 1.5), (1.9, -1)]:
        print("a_tilde", a, b, cpp(a_tilde(a, b)))
    print("theta_tilde a=1.5 b=1 c+=1", cpp(-(a_tilde(1.5, 1) + 1 / mpf(0.5))))
    print("// exponents")
    sets = [
        (0.5, [(1, 1, 1), (-1, 1, 0.5)], 0, 0),
        (1, [(1, 1, 0.5), (-1, 1, 0.5)], 0, None),
        (1.5, [(1, 1, 1), (-1, 1, 1)], 0, None),
        (0.5, [(1, 1, 0.5)], 0.3, None),
        (1.5, [(-1, 2, 1.2)], -0.4, None),
        (1, [(1, 0.7, 1.6)], 0.2, None),
    ]
    for a, dirs, th, dr in sets:
        for lam in [1, -2, 5]:
            print("psi", a, dirs, th, dr, lam, cpp(psi_oracle(a, dirs, th, dr, lam)))
    print("// golden: Gamma(2)/Gamma(1.5) - 1/Gamma(.5)", cpp(gamma(2) / gamma(1.5) - rgamma(0.5)))
