import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chen3.arith_core import EULER_GAMMA, factorize, mult_functions, primes_up_to
from chen3.errors import DomainError
from chen3.rosser_sieve import (
    LinearSieveFns,
    build_rosser,
    divisor_sum_table,
    linear_sieve_F_f,
    sandwich_check,
    sieve_main_term,
)


class TestSupport:
    def test_plus_D10(self):
        w = build_rosser(10, "+")
        assert w.support == {1: 1, 2: -1}

    def test_minus_D10(self):
        w = build_rosser(10, "-")
        assert w.support == {1: 1, 2: -1, 3: -1, 5: -1, 7: -1}

    def test_plus_D100_sample(self):
        w = build_rosser(100, "+")
        assert w.weight(1) == 1 and w.weight(6) == 1
        # chain (7, 2): odd position 1 needs 7^3 < 100 -- fails
        assert w.weight(7) == 0 and w.weight(14) == 0
        # chain (3,): 3^3 = 27 < 100
        assert w.weight(3) == -1
        assert all(d < 100 for d in w.support)

    def test_support_is_squarefree_descending(self):
        for sign in "+-":
            w = build_rosser(500, sign)
            for d, chain in w.chains.items():
                assert list(chain) == sorted(chain, reverse=True)
                assert len(set(chain)) == len(chain)
                assert math.prod(chain) == d
                assert w.support[d] == (-1) ** len(chain)

    def test_bad_args(self):
        with pytest.raises(DomainError):
            build_rosser(1, "+")
        with pytest.raises(DomainError):
            build_rosser(10, "x")


class TestSandwich:
    def test_example_q15(self):
        wp, wm = build_rosser(10, "+"), build_rosser(10, "-")
        r = sandwich_check(15, wp, wm)
        assert (r.lower, r.mid, r.upper, r.ok) == (-1, 0, 1, True)

    def test_q1(self):
        wp, wm = build_rosser(10, "+"), build_rosser(10, "-")
        r = sandwich_check(1, wp, wm)
        assert r.mid == 1 and r.ok

    def test_rejects_non_squarefree(self):
        wp, wm = build_rosser(10, "+"), build_rosser(10, "-")
        with pytest.raises(DomainError):
            sandwich_check(12, wp, wm)

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=200, deadline=None)
    def test_sandwich_property_D100(self, q):
        if any(e > 1 for _, e in factorize(q)):
            return
        wp, wm = build_rosser(100, "+"), build_rosser(100, "-")
        assert sandwich_check(q, wp, wm).ok

    def test_divisor_sum_table_matches_pointwise(self):
        wp = build_rosser(50, "+")
        T = divisor_sum_table(wp, 2000)
        for q in (1, 2, 15, 30, 210, 1155):
            assert T[q] == wp.divisor_sum([p for p, _ in factorize(q)])


class TestMainTerm:
    def test_unit_omega_example(self):
        w = build_rosser(10, "+")
        rep = sieve_main_term(w, lambda p: 1.0, z=10)
        assert rep.value == pytest.approx(0.5)

    def test_phi_weight_example(self):
        w = build_rosser(10, "-")
        # omega(p) = p / (p - 1) so lambda(d) omega(d)/d = lambda(d)/phi(d)
        rep = sieve_main_term(w, lambda p: p / (p - 1), z=10)
        expect = sum(
            val / mult_functions(d).phi for d, val in w.support.items()
        )
        assert rep.value == pytest.approx(expect)
        assert rep.value == pytest.approx(1 - 1 - 1 / 2 - 1 / 4 - 1 / 6)

    def test_rejects_bad_omega(self):
        w = build_rosser(10, "+")
        with pytest.raises(DomainError):
            sieve_main_term(w, lambda p: p + 1.0, z=10)
        with pytest.raises(DomainError):
            sieve_main_term(w, lambda p: -1.0, z=10)

    def test_reports_s_and_limits(self):
        w = build_rosser(1000, "+")
        rep = sieve_main_term(w, lambda p: 1.0, z=10)
        assert rep.s == pytest.approx(3.0)
        assert rep.F_s == pytest.approx(2 * math.exp(EULER_GAMMA) / 3)


class TestLinearSieve:
    def test_closed_forms(self):
        two_eg = 2 * math.exp(EULER_GAMMA)
        F2, f2 = linear_sieve_F_f(2.0)
        assert F2 == pytest.approx(math.exp(EULER_GAMMA))
        assert f2 == 0.0
        F3, f3 = linear_sieve_F_f(3.0)
        assert F3 == pytest.approx(two_eg / 3)
        assert f3 == pytest.approx(two_eg * math.log(2) / 3)
        _, f4 = linear_sieve_F_f(4.0)
        assert f4 == pytest.approx(two_eg * math.log(3) / 4)

    def test_limits_and_ordering(self):
        # the true F - f gap decays below integrator resolution past s ~ 10,
        # so ordering is asserted to 1e-6
        for s in (2.5, 3.5, 5.0, 8.0, 12.0, 20.0):
            F, f = linear_sieve_F_f(s)
            assert F > f - 1e-6
            assert F >= 1.0 - 1e-6 and f <= 1.0 + 1e-6
        F, f = linear_sieve_F_f(20.0)
        assert abs(F - 1) < 1e-6 and abs(f - 1) < 1e-6

    def test_monotonicity(self):
        ss = np.linspace(1.5, 12.0, 80)
        Fs = [linear_sieve_F_f(float(s))[0] for s in ss]
        fs = [linear_sieve_F_f(float(s))[1] for s in ss]
        assert all(a >= b - 1e-6 for a, b in zip(Fs, Fs[1:]))
        assert all(a <= b + 1e-6 for a, b in zip(fs, fs[1:]))

    def test_grid_refinement_agrees(self):
        coarse = LinearSieveFns(steps_per_unit=256)
        fine = LinearSieveFns(steps_per_unit=2048)
        for s in (4.5, 6.0, 9.3):
            Fc, fc = coarse(s)
            Ff, ff = fine(s)
            assert Fc == pytest.approx(Ff, abs=1e-6)
            assert fc == pytest.approx(ff, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            linear_sieve_F_f(0.5)
