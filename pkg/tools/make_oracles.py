"""Compute reference values that the test suite freezes as constants.

Every oracle here is produced by a route independent of the code under
test: mpmath at elevated precision, scipy's QUADPACK (QAWF for Fourier
tails), or grid refinement at 4x the production node count.  Run from
the repository root:

    python3 tools/make_oracles.py

and paste the printed block into tests/ where marked.  Production
values are printed alongside as "check:" lines so drift is visible at
generation time; they are not part of the frozen output.
"""

import numpy as np
import mpmath as mp
import scipy.integrate as si
import scipy.special as ss

import deltagas as dg


def header(title: str) -> None:
    print()
    print("# --- %s ---" % title)


def show(name: str, value) -> None:
    if isinstance(value, complex) or (hasattr(value, "imag") and value.imag != 0):
        z = complex(value)
        print("%s = complex(%.17g, %.17g)" % (name, z.real, z.imag))
    else:
        print("%s = %.17g" % (name, float(value)))


# ----------------------------------------------------------------- specials

def specials() -> None:
    header("special-function pins (mpmath, 50 digits)")
    mp.mp.dps = 50
    show("LOG_GAMMA_HALF_P3I", complex(mp.loggamma(mp.mpc(0.5, 0.3))))
    show("DIGAMMA_HALF", complex(mp.digamma(mp.mpf(0.5))).real)
    show("DIGAMMA_HALF_P3I", complex(mp.digamma(mp.mpc(0.5, 0.3))))
    show("RECIP_GAMMA_2P5", float(1 / mp.gamma(mp.mpf("2.5"))))

    show("check_log_gamma", complex(dg.log_gamma(0.5 + 0.3j)))
    show("check_digamma", complex(dg.digamma(0.5 + 0.3j)))
    show("check_recip_gamma", complex(dg.recip_gamma(2.5)).real)


# ------------------------------------------------------------------ pv tan

def pv_tan() -> None:
    header("PV int_0^{2pi} tan(y/2) e^{-y} dy")
    mp.mp.dps = 40
    # substitute y = pi + u: tan((pi+u)/2) = -cot(u/2), and the
    # symmetric PV over u in (-pi, pi) collapses to a regular integral
    exact = 2 * mp.exp(-mp.pi) * mp.quad(
        lambda u: mp.sinh(u) / mp.tan(u / 2), [0, mp.pi]
    )
    show("PV_TAN_EXP", float(exact))

    # validation only: symmetric excision at eps leaves O(eps) from the
    # regular part, about 2*eps*2e^{-pi}
    eps = mp.mpf("1e-6")
    offset = mp.quad(lambda y: mp.tan(y / 2) * mp.exp(-y), [0, mp.pi - eps]) + mp.quad(
        lambda y: mp.tan(y / 2) * mp.exp(-y), [mp.pi + eps, 2 * mp.pi]
    )
    print("# offset check (expect ~1e-6 gap): %.3e" % float(abs(offset - exact)))


# ------------------------------------------------- factor via Cauchy integral

def factor_projection() -> None:
    header("sigma_plus(0.7+0.4i) via the Cauchy projection of log(2 sigma)")
    mp.mp.dps = 30
    xi0 = mp.mpc("0.7", "0.4")

    # 2 sigma = 1 + e^{-|eta|} -> 1 at infinity, so its log projects
    # cleanly; the constant 1/2 splits evenly between the factors
    def f(eta):
        return mp.log(1 + mp.exp(-abs(eta))) / (eta - xi0)

    proj = mp.quad(f, [-60, -1, 0, 1, 60]) / (2 * mp.pi * mp.mpc(0, 1))
    val = mp.exp(proj) / mp.sqrt(2)
    show("SIGMA_PLUS_07_04I", complex(val))
    show("check_sigma_plus", complex(dg.sigma_plus(0.7 + 0.4j)))


# ---------------------------------------------- expansion coefficients a_{n,m}

def expansion_exact(n_top: int = 4):
    """a_{n,m} from the Taylor series of B(w) = e^w Gamma(1/2+w)/sqrt(pi).

    With w = -i xi / 2pi one has 1/sigma_plus = B(w) w^{-w}, and
    expanding w^{-w} = sum_q (-w log w)^q / q! with
    log w = log(-i xi) - log 2pi gives

        a_{n,m} = c^n sum_{q>=m} beta_{n-q} (-1)^q/q! C(q,m) (-log 2pi)^{q-m}

    where c = -i/2pi and beta are the Taylor coefficients of B.
    """
    mp.mp.dps = 40
    # log B = w + loggamma(1/2+w) - loggamma(1/2), term by term
    ell = [mp.mpf(0), 1 + mp.digamma(mp.mpf("0.5"))]
    for k in range(2, n_top + 2):
        ell.append(mp.psi(k - 1, mp.mpf("0.5")) / mp.factorial(k))
    beta = [mp.mpf(1)]
    for p in range(1, n_top + 1):
        beta.append(sum(j * ell[j] * beta[p - j] for j in range(1, p + 1)) / p)

    c = mp.mpc(0, -1) / (2 * mp.pi)
    l2p = mp.log(2 * mp.pi)
    a = {}
    for n in range(n_top + 1):
        for m in range(n + 1):
            total = mp.mpf(0)
            for q in range(m, n + 1):
                total += (
                    beta[n - q]
                    * (-1) ** q
                    / mp.factorial(q)
                    * mp.binomial(q, m)
                    * (-l2p) ** (q - m)
                )
            a[(n, m)] = c**n * total
    return a


def expansion() -> None:
    header("expansion coefficients of 1/sigma_plus (analytic generator)")
    a = expansion_exact(4)
    # residual of the truncated sum against the direct formula at a
    # small point on the ray xi = -it; should be O(t^5 log^5 t)
    mp.mp.dps = 40
    t = mp.mpf("1e-3")
    xi = mp.mpc(0, -1) * t
    w = mp.mpc(0, -1) * xi / (2 * mp.pi)
    direct = mp.exp(
        -(0.5 * mp.log(mp.pi) + w * (mp.log(-mp.mpc(0, 1) * xi) - mp.log(2 * mp.pi) - 1)
          - mp.loggamma(0.5 + w))
    )
    lt = mp.log(-mp.mpc(0, 1) * xi)
    series = sum(
        a[(n, m)] * xi**n * lt**m for n in range(5) for m in range(n + 1)
    )
    print("# self-check |direct - sum_{n<=4}| at t=1e-3: %.3e" % float(abs(direct - series)))
    for n in range(4):
        for m in range(n + 1):
            show("A_%d_%d" % (n, m), complex(a[(n, m)]))
    fit = dg.expansion_coeffs(2)
    for key in sorted(fit.a):
        show("check_fit_a_%d_%d" % key, complex(fit.a[key]))


# ------------------------------------------------------- fredholm refinement

def fredholm_pins() -> None:
    header("moment pins by grid refinement (n=3200, checked at n=4800)")
    for stat, kappa, tag in (
        (dg.Statistics.FERMI, 0.1, "FERMI_K01"),
        (dg.Statistics.BOSE, 1.0, "BOSE_K1"),
    ):
        hi = dg.solve_love(stat, kappa, 3200, check=False)
        hi2 = dg.solve_love(stat, kappa, 4800, check=False)
        print("# %s refinement drift m0: %.3e" % (tag, abs(hi.m0 - hi2.m0)))
        show("M0_%s" % tag, hi2.m0)
        show("M2_%s" % tag, hi2.m2)
    sol = dg.solve_for_gamma(dg.Statistics.FERMI, 0.05, 1600)
    show("KAPPA_FERMI_G005", sol.params.kappa)
    resc = dg.solve_rescaled(20.0, 1600)
    show("M0_RESCALED_R20", resc.m0)


# ------------------------------------------------- kernels via Fourier weights

def _sp_sigma_plus(eta: np.ndarray) -> np.ndarray:
    w = -1j * eta / (2 * np.pi)
    return np.exp(
        0.5 * np.log(np.pi)
        + w * (np.log(-1j * eta) - np.log(2 * np.pi) - 1.0)
        - ss.loggamma(0.5 + w)
    )


def _sp_sigma_minus(eta: np.ndarray) -> np.ndarray:
    w = -1j * eta / (2 * np.pi)
    return np.exp(
        0.5 * np.log(np.pi)
        - w * (np.log(1j * eta) - np.log(2 * np.pi) - 1.0)
        - ss.loggamma(0.5 - w)
    )


def _fourier_half_line(density, x: float) -> float:
    """(1/pi) int_0^inf [cos(x eta) Re g + sin(x eta) Im g] d eta by QAWF."""
    re, re_err = si.quad(
        lambda e: density(e).real, 0, np.inf, weight="cos", wvar=x,
        epsabs=1e-13, limlst=400, limit=400,
    )
    im, im_err = si.quad(
        lambda e: density(e).imag, 0, np.inf, weight="sin", wvar=x,
        epsabs=1e-13, limlst=400, limit=400,
    )
    print("# qawf error estimates: %.2e %.2e" % (re_err, im_err))
    return (re + im) / np.pi


def kernels() -> None:
    header("kernel pins k(2), s1(1) from the real-line transforms")

    def rho(e):
        if e == 0.0:
            return 0.0j
        return _sp_sigma_minus(e) / _sp_sigma_plus(e) - 1.0

    def u(e):
        if e == 0.0:
            return complex(1.0 - np.sqrt(2.0))
        return 1.0 / _sp_sigma_plus(e) - np.sqrt(2.0)

    k2 = _fourier_half_line(rho, 2.0)
    s11 = _fourier_half_line(u, 1.0)
    show("KERNEL_K_AT_2", k2)
    show("S1_AT_1", s11)
    show("check_hankel_kernel_k", dg.hankel_kernel_k(2.0))
    show("check_s1_kernel", dg.s1_kernel(1.0))


# ------------------------------------------------------------ G+(0) at r=20

def gplus_zero() -> None:
    header("G+(0) at r=20 by the symmetrized projection integral")
    mp.mp.dps = 25
    r = mp.mpf(20)

    def u(eta):
        w = mp.mpc(0, -1) * eta / (2 * mp.pi)
        sp = mp.exp(
            0.5 * mp.log(mp.pi)
            + w * (mp.log(mp.mpc(0, -1) * eta) - mp.log(2 * mp.pi) - 1)
            - mp.loggamma(0.5 + w)
        )
        return 1 / sp - mp.sqrt(2)

    # G+(0) = r(sqrt2 - 1)/2 + (1/pi) int_0^inf Re[(1 - e^{-i r eta}) u] / eta^2;
    # the 1/sigma_plus tail ~ sqrt2 + O(1/eta) makes both pieces absolutely
    # convergent, and the integrand has only a log singularity at 0
    def head(eta):
        return mp.re((1 - mp.e ** (mp.mpc(0, -1) * r * eta)) * u(eta)) / eta**2

    part_head = mp.quad(head, [0, mp.mpf("0.5"), 2])
    part_smooth = mp.quad(lambda e: mp.re(u(e)) / e**2, [2, 10, 100, mp.inf])
    part_osc = mp.quadosc(
        lambda e: -mp.re(mp.e ** (mp.mpc(0, -1) * r * e) * u(e)) / e**2,
        [2, mp.inf],
        period=2 * mp.pi / r,
    )
    val = r * (mp.sqrt(2) - 1) / 2 + (part_head + part_smooth + part_osc) / mp.pi
    show("GPLUS0_R20", float(val))

    res = dg.neumann_solve(20.0, 3)
    show("check_per_order0", res.per_order[0])
    show("check_g_plus_at_zero", dg.g_plus_at_zero(20.0))
    grid = dg.half_line_grid(20.0)
    show("check_ghat_integral", dg.g_hat_plus(20.0, grid).integral())


def main() -> None:
    specials()
    pv_tan()
    factor_projection()
    expansion()
    fredholm_pins()
    kernels()
    gplus_zero()


if __name__ == "__main__":
    main()
