#!/usr/bin/env python3
"""Regenerates the golden fixture files in this directory.

All values are computed with mpmath at >= 40 significant digits and written
with 25 digits, far below the tolerances asserted in the test suite.

  gamma_values.txt   x gamma(x)
  ml_values.txt      alpha beta z E_{alpha,beta}(z)
  wright_values.txt  alpha theta phi_alpha(theta)
  constants.txt      name value   (assorted scalar reference values)

E_{alpha,beta}(-x) for large x cannot be summed termwise in fixed precision;
here it is evaluated through the branch-cut integral representation
(Gorenflo-Loutchko-Luchko), cross-checked against exp(x^2)*erfc(x) at
alpha = 1/2 and against the adaptive-precision series for small |z|.
"""
import mpmath as mp

mp.mp.dps = 40
FMT = lambda v: mp.nstr(v, 25, strip_zeros=False)


def wright_phi(a, th, target_dps=40):
    a = mp.mpf(a)
    if th == 0:
        return mp.rgamma(1 - a)
    dps0 = mp.mp.dps
    dps = target_dps + 20
    while True:
        mp.mp.dps = dps
        s = mp.mpf(0)
        t = mp.mpf(th)
        maxterm = mp.mpf(0)
        tiny = 0
        for k in range(0, 200000):
            term = (-t) ** k / mp.factorial(k) * mp.rgamma(-a * k + 1 - a)
            s += term
            maxterm = max(maxterm, abs(term))
            if k > 10 and abs(term) < mp.mpf(10) ** (-dps) * maxterm:
                tiny += 1
                if tiny >= 3:
                    break
            else:
                tiny = 0
        if maxterm == 0 or s == 0:
            mp.mp.dps = dps0
            return mp.mpf(0)
        lost = mp.log10(maxterm / abs(s))
        if dps - lost >= target_dps:
            mp.mp.dps = dps0
            return +s
        dps = int(lost) + target_dps + 20


def ml_series(a, b, z):
    a = mp.mpf(a)
    b = mp.mpf(b)
    dps0 = mp.mp.dps
    dps = 60
    while True:
        mp.mp.dps = dps
        s = mp.mpf(0)
        zz = mp.mpf(z)
        maxterm = mp.mpf(0)
        for k in range(0, 500000):
            term = zz ** k * mp.rgamma(a * k + b)
            s += term
            maxterm = max(maxterm, abs(term))
            if k > 10 and abs(term) < mp.mpf(10) ** (-dps) * max(1, maxterm):
                break
        lost = mp.log10(max(1, maxterm / abs(s))) if s != 0 else mp.inf
        if s != 0 and dps - lost >= 40:
            mp.mp.dps = dps0
            return +s
        dps = int(lost) + 60


def ml_neg_integral(a, b, x):
    """E_{a,b}(-x), x > 0, 0 < a < 1, b < 1 + a."""
    a = mp.mpf(a)
    b = mp.mpf(b)
    x = mp.mpf(x)
    def K(r):
        num = r * mp.sin(mp.pi * (1 - b)) + x * mp.sin(mp.pi * (1 - b + a))
        den = r * r + 2 * r * x * mp.cos(mp.pi * a) + x * x
        return r ** ((1 - b) / a) * mp.e ** (-r ** (1 / a)) * num / den / (mp.pi * a)
    peak = x * abs(mp.cos(mp.pi * a))
    pts = sorted(set(p for p in [mp.mpf(0), min(mp.mpf(1), x / 2), peak, 2 * x] if p >= 0))
    return mp.quad(K, pts + [mp.inf])


def ml(a, b, z):
    a = mp.mpf(a)
    b = mp.mpf(b)
    z = mp.mpf(z)
    if a == 1 and b == 1:
        return mp.e ** z
    if z >= -2:
        return ml_series(a, b, z)
    x = -z
    # reduce beta into the integral representation's validity range
    if b < 1 + a - mp.mpf('0.05'):
        return ml_neg_integral(a, b, x)
    v = ml(a, b - a, z)
    return (v - mp.rgamma(b - a)) / z


def write_gamma():
    xs = ['-19.5', '-10.25', '-5.5', '-2.5', '-0.5', '0.5', '1.0', '1.5',
          '2.0', '3.7', '7.25', '12.0', '20.5', '35.0', '50.0']
    with open('gamma_values.txt', 'w') as f:
        for x in xs:
            f.write(f"{x} {FMT(mp.gamma(mp.mpf(x)))}\n")


def write_ml():
    alphas = ['0.3', '0.4', '0.5', '0.6', '0.7', '0.8', '0.9']
    zs = ['-10000', '-1000', '-100', '-50', '-30', '-20', '-10', '-5', '-3',
          '-2', '-1', '-0.5', '-0.1', '0', '0.5', '1', '2', '5']
    with open('ml_values.txt', 'w') as f:
        for a in alphas:
            for b in [a, '1']:
                for z in zs:
                    v = ml(a, b, z)
                    f.write(f"{a} {b} {z} {FMT(v)}\n")
        for z in ['-20', '-5', '-1', '0', '1', '5', '20']:
            f.write(f"1 1 {z} {FMT(mp.e ** mp.mpf(z))}\n")
        # beta above 1+alpha exercises the reduction identity
        for b in ['1.75', '2.5']:
            for z in ['-5', '-50', '-1000']:
                f.write(f"0.5 {b} {z} {FMT(ml('0.5', b, z))}\n")


def write_wright():
    alphas = ['0.3', '0.5', '0.7', '0.9']
    thetas = ['0', '0.1', '0.25', '0.5', '0.75', '1', '1.5', '2', '3', '4',
              '5', '6', '8', '10', '12']
    with open('wright_values.txt', 'w') as f:
        for a in alphas:
            aa = mp.mpf(a)
            c = (1 - aa) * aa ** (aa / (1 - aa))
            for th in thetas:
                # skip values below ~1e-30; phi ~ exp(-c theta^{1/(1-a)})
                if c * mp.mpf(th) ** (1 / (1 - aa)) > 70:
                    continue
                v = wright_phi(a, mp.mpf(th))
                if v > mp.mpf('1e-30'):
                    f.write(f"{a} {th} {FMT(v)}\n")


def write_constants():
    c = {}
    c['E_0.5_1_-1'] = ml('0.5', '1', '-1')
    c['E_0.4_1_-1'] = ml('0.4', '1', '-1')
    c['gamma_3.7'] = mp.gamma(mp.mpf('3.7'))
    c['gamma3_over_gamma2.5'] = mp.gamma(3) / mp.gamma(mp.mpf('2.5'))
    # right-Caputo of (1-t/T)^l at l=3, T=2, alpha=0.3, t=1
    c['rcap_l3_T2_a0.3_t1'] = (mp.gamma(4) / mp.gamma(mp.mpf('3.7'))
                               * mp.mpf(2) ** mp.mpf('-0.3')
                               * mp.mpf('0.5') ** mp.mpf('2.7'))
    c['wright_m1_moment_0.5'] = mp.gamma(2) / mp.gamma(mp.mpf('1.5'))
    # chi normalisation \int exp(-sqrt(N^2+|x|^2)) dx; N=1 is 2 K_1(1),
    # N=2 is 6 pi exp(-2)
    c['chi_norm_1d'] = 2 * mp.besselk(1, 1)
    c['chi_norm_2d'] = 6 * mp.pi * mp.e ** -2
    # Theorem 3.4 bound at p=2, gamma=0.5, Z0=8
    tss = mp.log(1 - 4 * mp.mpf(8) ** -1) / (2 * (1 - 2))
    c['ode_tstar_p2_z8'] = tss
    c['blowup_bound_p2_g0.5_z8'] = (tss * mp.gamma(mp.mpf('1.5'))) ** 2
    c['wright_0.5_1'] = wright_phi('0.5', 1)
    c['wright_0.3_5'] = wright_phi('0.3', 5)
    with open('constants.txt', 'w') as f:
        for k, v in c.items():
            f.write(f"{k} {FMT(v)}\n")


if __name__ == '__main__':
    write_gamma()
    write_ml()
    write_wright()
    write_constants()
    print("fixtures written")
