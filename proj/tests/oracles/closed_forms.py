"""Arbitrary-precision reference values frozen into the C++ unit tests.

Run with `python3 tests/oracles/closed_forms.py`; the printed values are the
expected constants used by tests/test_analytic.cpp and tests/test_stochastic.cpp.
"""
from mpmath import mp, mpf, exp, log

mp.dps = 40

HOURS_PER_YEAR = mpf(8760)


def beta_k(a, tk):
    a, tk = mpf(a), mpf(tk)
    return tk if a == 0 else (1 - exp(-a * tk)) / a


def ou_mean(r0, a, r_eq, t):
    return mpf(r_eq) + (mpf(r0) - mpf(r_eq)) * exp(-mpf(a) * mpf(t))


r_eq = mpf("0.5") / HOURS_PER_YEAR
print("annual_rate_to_hourly(0.5) =", mp.nstr(r_eq, 20))
print("annual_rate_to_hourly(0.1) =", mp.nstr(mpf("0.1") / HOURS_PER_YEAR, 20))
print("beta_k(5.8e-5, 2160)       =", mp.nstr(beta_k("5.8e-5", 2160), 20))
print("beta_k(1, ln 2)            =", mp.nstr(beta_k(1, log(2)), 20))
print("ou_mean(1, 5.8e-5, r_eq, 2160) =",
      mp.nstr(ou_mean(1, "5.8e-5", "5.7078e-5", 2160), 20))
print("dM(1e7, 1, -4.76e-5, 1)    =", mp.nstr(mpf(10**7) * (1 - mpf("4.76e-5")), 20))
annuity = mpf("2.5e8") / 2160
print("hourly_annuity(2.5e8,2160) =", mp.nstr(annuity, 20))
bk = beta_k("5.8e-5", 2160)
k_next = annuity * (1 + 1 + bk * mpf("0.2"))
print("step_K example K_next      =", mp.nstr(k_next, 20))
print("dK(1) annuity init         =", mp.nstr(annuity * (1 + bk * mpf("0.2")), 20))
print("dK(1) total-value init     =", mp.nstr(mpf("2.5e8") * (1 + bk * mpf("0.2")), 20))
print("K0*V*beta_k*S              =", mp.nstr(annuity * bk, 20))
# Triangle recovery A(t) = min(1, g t), g = 1.2 per hour: area of 1 - A.
g = mpf("1.2")
area = mp.quad(lambda t: 1 - min(1, g * t), [0, 1 / g, 2160])
print("triangle area (h)          =", mp.nstr(area, 20))
print("degraded value (EUR)       =", mp.nstr(mpf(10**9) / HOURS_PER_YEAR * area, 20))
print("t_half(g=1.2)              =", mp.nstr(mpf("0.5") / g, 20))
