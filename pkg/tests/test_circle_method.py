import cmath
import math
from fractions import Fraction
from math import gcd

import pytest

from chen3.arith_core import mult_functions, primes_up_to
from chen3.circle_method import (
    ArcDissection,
    SieveContext,
    bv_delta,
    exp_sum,
    geometric_phase_sum,
    get_evaluator,
    major_arc_model,
    spm_comparison,
    tau_star,
)
from chen3.errors import DomainError

CTX = SieveContext(n=3000, W=2, b=1, k0=4)  # z0 = 3000^{1/4} ~ 7.4


def brute_moebius_sum(ctx: SieveContext, alpha: float) -> complex:
    total = 0j
    small = [p for p in range(2, math.ceil(ctx.z0)) if all(p % q for q in range(2, p)) and p < ctx.z0]
    for p in primes_up_to(ctx.n):
        p = int(p)
        if p % ctx.W != ctx.b % ctx.W:
            continue
        if any((p + 2) % sp == 0 for sp in small):
            continue
        x = (p - ctx.b) // ctx.W
        total += math.log(p) * cmath.exp(2j * cmath.pi * alpha * x)
    return total


class TestExpSum:
    def test_context_validation(self):
        with pytest.raises(DomainError):
            SieveContext(n=100, W=3, b=1)
        with pytest.raises(DomainError):
            SieveContext(n=100, W=6, b=3)  # gcd(3*5, 6) = 3

    def test_against_brute_force(self):
        for alpha in (0.0, 0.1, 0.37, 2 / 7):
            got = exp_sum(CTX, alpha, "moebius").value
            want = brute_moebius_sum(CTX, alpha)
            assert got == pytest.approx(want, abs=1e-8 * (abs(want) + 1))

    def test_periodicity(self):
        a = exp_sum(CTX, Fraction(2, 7), "moebius").value
        b = exp_sum(CTX, Fraction(9, 7), "moebius").value
        assert a == pytest.approx(b, abs=1e-12 * abs(a))

    def test_conjugate_symmetry(self):
        for alpha in (Fraction(1, 5), Fraction(3, 11)):
            s = exp_sum(CTX, alpha, "moebius").value
            sc = exp_sum(CTX, 1 - alpha, "moebius").value
            assert sc == pytest.approx(s.conjugate(), abs=1e-10 * (abs(s) + 1))

    def test_sandwich_at_zero(self):
        ev = get_evaluator(CTX)
        sm, s0, sp = (ev.at_zero(m) for m in ("rosser_minus", "moebius", "rosser_plus"))
        assert sm <= s0 + 1e-9 <= sp + 2e-9

    def test_rational_matches_float(self):
        a = exp_sum(CTX, Fraction(3, 11), "rosser_plus").value
        b = exp_sum(CTX, 3 / 11, "rosser_plus").value
        assert a == pytest.approx(b, abs=1e-6 * (abs(a) + 1))

    def test_spm_bounds(self):
        rep = spm_comparison(CTX, [0.13, 0.29, Fraction(1, 3), 0.481])
        assert rep.ok
        assert rep.bound_plus > 0 and rep.bound_minus > 0


class TestTauStar:
    def _oracle(self, a: int, q: int, ctx: SieveContext) -> complex:
        total = 0j
        for d in range(1, q + 1):
            if q % d:
                continue
            e = q // d
            r = None
            for cand in range(1, q + 1):
                if (ctx.W * cand + ctx.b) % d == 0 and (ctx.W * cand + ctx.b + 2) % e == 0:
                    r = cand
                    break
            total += cmath.exp(2j * cmath.pi * a * r / q)
        return total

    def test_against_oracle(self):
        ctx = SieveContext(n=1000, W=6, b=5)
        for q in (1, 5, 7, 35, 143):
            for a in range(1, q + 1):
                if gcd(a, q) == 1:
                    got = tau_star(a, q, ctx)
                    assert got == pytest.approx(self._oracle(a, q, ctx), abs=1e-9)

    def test_magnitude_bound(self):
        ctx = SieveContext(n=1000, W=6, b=5)
        for q in (5, 7, 35, 77, 385):
            ndiv = mult_functions(q).tau
            assert abs(tau_star(1, q, ctx)) <= ndiv + 1e-9

    def test_zero_when_W_shares_factor(self):
        ctx = SieveContext(n=1000, W=6, b=5)
        assert tau_star(1, 2, ctx) == 0j
        assert tau_star(1, 15, ctx) == 0j

    def test_domain_errors(self):
        ctx = SieveContext(n=1000, W=6, b=5)
        with pytest.raises(DomainError):
            tau_star(2, 4, ctx)  # gcd != 1
        with pytest.raises(DomainError):
            tau_star(1, 25, ctx)  # not squarefree


class TestMajorArc:
    def test_model_zero_when_W_not_coprime(self):
        ctx = SieveContext(n=3000, W=6, b=5)
        cmp = major_arc_model(ctx, 1, 3, 1 / 3)
        assert cmp.model == 0j

    def test_geometric_sum(self):
        for theta, m in ((0.0, 7), (0.3, 5), (0.123, 11)):
            want = sum(cmath.exp(2j * cmath.pi * theta * y) for y in range(1, m + 1))
            assert geometric_phase_sum(theta, m) == pytest.approx(want, abs=1e-10)

    def test_model_tracks_actual_at_q1(self):
        ctx = SieveContext(n=100_000, W=6, b=5)
        cmp = major_arc_model(ctx, 1, 1, 0.0)
        assert cmp.rel_err < 0.25


class TestArcs:
    def test_classify_centers(self):
        dis = ArcDissection(10**4, 2.0)
        assert dis.classify(0.5) == ("major", 1, 2)
        assert dis.classify(1 / 3) == ("major", 1, 3)
        kind, a, q = dis.classify(0.0)
        assert (kind, a, q) == ("major", 1, 1)

    def test_minor_point(self):
        dis = ArcDissection(10**6, 1.0)  # Q ~ 13.8, radius ~ 1.4e-5
        kind, _, _ = dis.classify(math.sqrt(2) - 1)
        assert kind == "minor"

    def test_rationals_farey_count(self):
        dis = ArcDissection(10**4, 1.0)  # Q ~ 9.2
        Q = int(dis.Q)
        expect = sum(mult_functions(q).phi for q in range(1, Q + 1))
        assert len(dis.rationals) == expect


class TestBVDelta:
    def test_oracle_small(self):
        x, q = 1000, 7
        ps = [int(p) for p in primes_up_to(x)]
        phi = mult_functions(q).phi
        best = 0.0
        for r in range(1, q + 1):
            if gcd(r, q) != 1:
                continue
            theta = sum(math.log(p) for p in ps if p % q == r % q)
            best = max(best, abs(theta - x / phi))
        assert bv_delta(x, q) == pytest.approx(best, abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            bv_delta(1, 3)
