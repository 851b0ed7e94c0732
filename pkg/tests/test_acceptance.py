"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line (shown in the pytest terminal summary,
or printed directly when this file is run as a script).
"""

from __future__ import annotations

import math
import time

import numpy as np

from laststop.appendix import appendix_asymptotics, c6, near_boundary_solve
from laststop.incomplete import CrossingCase, analytic_success
from laststop.model import new_model
from laststop.montecarlo import monte_carlo
from laststop.numerics import binom_pmf
from laststop.regions import gamma_endpoints, p_bullet
from laststop.success import w_closed, w_diag, w_recurrence, w_upper
from laststop.thresholds import continuous_optimum, discrete_optimum, equal_case_optima, tie_point
from laststop.xstrategy import (
    p_star,
    p_tilde,
    success_prob_x,
    success_prob_x_unequal,
    x_star,
    x_star_unequal,
    xstrategy_asymptotic,
)
from oracles import enumerate_success, exhaustive_discrete, unequal_s1_s2

RESULTS: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.parts: list[tuple[str, bool]] = []

    def close(self, name: str, got: float, want: float, tol: float, *, rel: bool = False) -> None:
        err = abs(got - want) / abs(want) if rel else abs(got - want)
        self.parts.append((f"{name}={got:.12g} (want {want:.12g}, {'rel ' if rel else ''}err {err:.2g} <= {tol:g})", err <= tol))

    def holds(self, name: str, ok: bool) -> None:
        self.parts.append((name, bool(ok)))

    def finish(self) -> None:
        ok = all(flag for _, flag in self.parts)
        failed = [text for text, flag in self.parts if not flag]
        detail = "; ".join(failed) if failed else "; ".join(text for text, _ in self.parts)
        line = f"{'PASS' if ok else 'FAIL'} criterion {self.number:>2} {self.title}: {detail}"
        RESULTS.append(line)
        assert ok, line


def test_criterion_01_thresholds():
    cr = Criterion(1, "continuous thresholds")
    m = new_model(0.09, 0.05)
    c, d, _ = continuous_optimum(m)
    cr.close("c_star", c, 6.785137352, 1e-6)
    cr.close("d_star", d, 11.88032106, 1e-6)
    cr.close("w", w_closed(m, c, d), 0.529979034749, 1e-9)
    cr.finish()


def test_criterion_02_discrete_optimum():
    cr = Criterion(2, "discrete optimum")
    m = new_model(0.09, 0.05)
    got = discrete_optimum(m)
    cr.holds(f"(C,D)={got.c_d, got.d_d} == (7, 12)", (got.c_d, got.d_d) == (7, 12))
    cr.close("w", got.w, 0.529870739109, 1e-9)
    scan = exhaustive_discrete(lambda a, b: w_closed(m, a, b), 40)
    cr.holds(f"exhaustive scan {scan[:2]}", scan[:2] == (7, 12))
    cr.finish()


def test_criterion_03_tie_locus():
    cr = Criterion(3, "tie locus")
    cr.close("p", tie_point(0.05, (6, 12), (7, 12), (0.09, 0.095)), 0.09396249862111, 1e-9)
    cr.finish()


def test_criterion_04_equal_case():
    cr = Criterion(4, "equal case")
    eq = equal_case_optima(0.09)
    cr.close("C_eq", eq.c_eq_star, 6.15156149309, 1e-8)
    cr.close("D_eq", eq.d_eq_star, 6.13502664794, 1e-8)
    cr.close("C_diag", eq.c_diag_star, 6.14370678209, 1e-8)
    m = new_model(0.09, 0.09)
    values = [
        w_closed(m, eq.c_eq_star, eq.d_eq_star, mirror=False),
        w_diag(0.09, 0.09, eq.c_diag_star),
        w_closed(m, eq.c_eq_star, eq.c_eq_star),
        w_closed(m, 6, 6),
    ]
    expected = [0.535056305018, 0.535055963810, 0.535055655126, 0.534951097574]
    for name, got, want in zip(["w(Ceq,Deq)", "w(Cdiag,Cdiag)", "w(Ceq,Ceq)", "w(6,6)"], values, expected):
        cr.close(name, got, want, 1e-9)
    cr.holds("ordering", values == sorted(values, reverse=True))
    cr.finish()


def test_criterion_05_region_geometry():
    cr = Criterion(5, "region geometry")
    targets = {
        "gamma1": (None, 0.4170224307, 0.63212005588),
        "gamma2": (None, 0.3934693403, 1.0),
        "gammaC": (-0.3, 0.4751561101, 0.7603489635),
    }
    for kind, (cfix, diag, zero) in targets.items():
        (a, _), (b, _) = gamma_endpoints(kind, cfix)
        cr.close(f"{kind} diag", a, diag, 1e-6)
        cr.close(f"{kind} zero", b, zero, 1e-6)
    p, pp = p_bullet()
    cr.close("p_bullet", p, 0.461926509410, 1e-6)
    cr.close("p'_bullet", pp, 0.350346565861, 1e-6)
    cr.finish()


def test_criterion_06_x_strategy():
    cr = Criterion(6, "x-strategy")
    cr.close("P500", p_star(500), 0.500480981417, 1e-9)
    ps = np.linspace(p_tilde(500) * 1.001, 0.49, 50)
    vals = [success_prob_x(500, p, x_star(500, p)) for p in ps]
    spread = max(vals) - min(vals)
    cr.holds(f"p-spread={spread:.2g} <= 1e-12", spread <= 1e-12)

    def err(n):
        return abs(xstrategy_asymptotic(n, 0.03).x_approx - x_star(n, 0.03))

    ratio = err(500) / err(1000)
    cr.holds(f"error ratio={ratio:.4g} in [6, 10]", 6 <= ratio <= 10)
    cr.finish()


def test_criterion_07_unequal_x_strategy():
    cr = Criterion(7, "unequal x-strategy")
    m = new_model(0.09, 0.05)
    r = x_star_unequal(m, 40)
    cr.close("x*", r.x_star, 0.667967251301, 1e-6)
    cr.close("P(x*)", r.p_at_x_star, 0.523618813813, 1e-8)
    cr.close("P(x*) direct", success_prob_x_unequal(m, 40, 7, r.x_star), 0.523618813813, 1e-8)
    direct = math.fsum(binom_pmf(ell, 40, 0.4) * w_upper(0.09, 0.05, 7, ell - 1) for ell in range(41))
    cr.close("S1+S2", direct, unequal_s1_s2(0.09, 0.05, 40, 7, 0.6), 1e-10)
    cr.finish()


def test_criterion_08_incomplete_information():
    cr = Criterion(8, "incomplete information")
    for case, want in [("pknown", 0.5234), ("nknown", 0.4927), ("none", 0.5156)]:
        cr.close(case, analytic_success(case, 500, 0.03), want, 5e-4)
    base = analytic_success("pknown", 500, 0.03)
    worst = max(abs(analytic_success("pknown", 500, 0.03, mu_min=mu) - base) for mu in range(125, 251))
    cr.holds(f"cutoff dependence={worst:.2g} <= 1e-6", worst <= 1e-6)
    cr.finish()


def test_criterion_09_monte_carlo():
    cr = Criterion(9, "Monte Carlo")
    m = new_model(0.03, 0.03)
    band = 3 * math.sqrt(0.25 / 500)
    for case in CrossingCase:
        r = monte_carlo(case, m, 500, 500, 1)
        cr.close(f"{case.value} 500 paths", r.success_rate, r.analytic_reference, band)
    slowest = 0.0
    for case in CrossingCase:
        t0 = time.perf_counter()
        r = monte_carlo(case, m, 500, 100_000, 2)
        slowest = max(slowest, time.perf_counter() - t0)
        cr.close(f"{case.value} 1e5 paths", r.success_rate, r.analytic_reference, 0.05)
    cr.holds(f"slowest 1e5-path run {slowest:.1f}s <= 30s", slowest <= 30)
    x = x_star(500, 0.03)
    r = monte_carlo(x, m, 500, 100_000, 3)
    exact = success_prob_x(500, 0.03, x)
    cr.close("fixed-x 1e5 paths", r.success_rate, exact, 3 * math.sqrt(exact * (1 - exact) / 100_000))
    cr.finish()


def test_criterion_10_oracle_suite():
    cr = Criterion(10, "oracle suite")
    t0 = time.perf_counter()
    worst_closed = worst_enum = 0.0
    for p, pp in [(0.3, 0.2), (0.09, 0.05), (0.4, 0.4), (0.6, 0.1)]:
        m = new_model(p, pp)
        for n in range(1, 31):
            for j in range(1, n + 1):
                for k in range(1, j + 1):
                    rec = w_recurrence(m, n, j, k)
                    worst_closed = max(worst_closed, abs(rec - w_closed(m, n - j, n - k)))
                    if n <= 8:
                        ref = enumerate_success(p, pp, n, j, k)
                        worst_enum = max(worst_enum, abs(rec - ref), abs(w_closed(m, n - j, n - k) - ref))
    elapsed = time.perf_counter() - t0
    cr.holds(f"recurrence vs closed form {worst_closed:.2g} <= 1e-12", worst_closed <= 1e-12)
    cr.holds(f"both vs enumeration {worst_enum:.2g} <= 1e-12", worst_enum <= 1e-12)
    cr.holds(f"runtime {elapsed:.1f}s < 60s", elapsed < 60)
    cr.finish()


def test_criterion_11_appendix():
    cr = Criterion(11, "boundary asymptotics")
    cr.close("xi_hat", near_boundary_solve("p1", eta=0.09), 0.00001494533852483, 1e-15)
    cr.close("xi(0.09)", appendix_asymptotics("p1", "inverse", 0.09).output, 0.00001494533852478, 1e-15)
    cr.close("eta_hat", near_boundary_solve("diag", eps=1e-20), 0.1005777569, 1e-7)
    cr.close("C6(0.75)", c6(0.75), -35.12208439, 1e-6)
    delta = near_boundary_solve("antidiag", eta=0.035, p=0.75)
    cr.close("delta_hat", delta, 1.61018555971e-61, 1e-6, rel=True)
    fwd = appendix_asymptotics("antidiag", "forward", delta, p=0.75)
    cr.close("ln(B)/B", fwd.ln_b_over_b, 0.03530119866, 1e-9)
    cr.finish()


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failures += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failures else 0)
