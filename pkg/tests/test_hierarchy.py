import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from empathica import (
    EmpathyMatrix,
    Game2x2,
    LimitKind,
    analyze_hierarchy,
    check_consistency,
    consistent_family,
    default_battery,
    equilibrium_signature,
    infinitely_consistent,
    level_game,
    spectral_limit,
    structural_epsilons,
    transform,
)


def ones(rho: float) -> EmpathyMatrix:
    return EmpathyMatrix.homogeneous(rho / 2.0, rho / 2.0)


def max_diff(a: EmpathyMatrix, b: EmpathyMatrix) -> float:
    return max(abs(x - y) for x, y in zip(a.entries(), b.entries()))


class TestLevelGame:
    def test_level_zero_is_the_base_game(self, pd):
        assert level_game(pd, EmpathyMatrix(1, 0.5, -0.3, 2), 0) == pd

    def test_level_one_is_the_transform(self, pd):
        lam = EmpathyMatrix(1, 0.5, -0.3, 2)
        assert level_game(pd, lam, 1) == transform(pd, lam)

    def test_identity_at_every_level(self, pd):
        for k in range(6):
            assert level_game(pd, EmpathyMatrix.identity(), k) == pd

    def test_equal_weights_scale_level_one_payoffs(self, pd):
        rho = 0.8
        lam = ones(rho)
        lvl1 = level_game(pd, lam, 1)
        for k in (2, 3, 5):
            lvlk = level_game(pd, lam, k)
            factor = rho ** (k - 1)
            for name in ("a11", "a12", "a21", "a22", "b11", "b12", "b21", "b22"):
                assert getattr(lvlk, name) == pytest.approx(
                    factor * getattr(lvl1, name), abs=1e-10
                )

    def test_rejects_negative_level(self, pd):
        with pytest.raises(ValueError):
            level_game(pd, EmpathyMatrix.identity(), -1)


class TestPowerRecurrence:
    def test_equal_weights_closed_form(self):
        lam = ones(0.8)
        for k in range(1, 21):
            factor = 0.8 ** (k - 1)
            closed = EmpathyMatrix(*(factor * e for e in lam.entries()))
            assert max_diff(lam.power(k), closed) < 1e-10

    def test_idempotent_closed_form(self):
        lam = infinitely_consistent(0.5, 0.25)
        for k in range(1, 21):
            assert max_diff(lam.power(k), lam) < 1e-10


class TestCheckConsistency:
    def test_positive_equal_weights_are_structurally_consistent(self):
        verdict = check_consistency(ones(0.8), k_max=10)
        assert verdict.label == "StructurallyConsistent"
        assert verdict.consistent_up_to_k
        for k, eps in enumerate(verdict.epsilons, start=1):
            assert eps == pytest.approx(0.8 ** (k - 1), abs=1e-9)

    def test_negative_equal_weights_fail_at_level_two(self):
        verdict = check_consistency(ones(-0.8), k_max=10)
        assert verdict.label == "Inconsistent"
        assert verdict.first_bad_k == 2
        assert verdict.witness_index == 0  # the dilemma probe game
        assert verdict.witness is not None
        sig1, sigk = verdict.witness_signatures
        assert sig1 != sigk

    def test_identity_is_consistent_for_any_battery(self):
        verdict = check_consistency(EmpathyMatrix.identity(), k_max=8)
        assert verdict.consistent_up_to_k
        assert verdict.label != "Inconsistent"

    def test_idempotent_profile_is_consistent(self):
        verdict = check_consistency(infinitely_consistent(0.5, 0.25), k_max=10)
        assert verdict.consistent_up_to_k
        assert verdict.structurally_consistent

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            check_consistency(EmpathyMatrix.identity(), k_max=1)
        with pytest.raises(ValueError):
            check_consistency(EmpathyMatrix.identity(), k_max=5, battery=[])

    def test_structural_scaling_implies_battery_consistency(self):
        # Whenever every power is a positive multiple of the base matrix,
        # no battery game can change its equilibrium signature.
        rng = random.Random(321)
        found = 0
        while found < 20:
            kind = rng.randrange(3)
            if kind == 0:
                lam = ones(rng.uniform(0.05, 1.5))
            elif kind == 1:
                lam = infinitely_consistent(rng.uniform(-1, 2), rng.uniform(0.1, 2))
            else:
                lam = EmpathyMatrix.homogeneous(rng.uniform(0.1, 1.5), 0.0)
            eps = structural_epsilons(lam, 8)
            if eps is None:
                continue
            verdict = check_consistency(lam, k_max=8)
            assert verdict.consistent_up_to_k
            found += 1


class TestPositiveScalingInvariance:
    @given(
        st.builds(
            Game2x2,
            *(
                [
                    st.floats(min_value=-20, max_value=20, allow_nan=False).map(
                        lambda v: round(v, 3)
                    )
                ]
                * 8
            ),
        ),
        st.floats(min_value=0.01, max_value=50, allow_nan=False).map(lambda v: round(v, 3)),
    )
    @settings(max_examples=80)
    def test_signature_unchanged_by_positive_scaling(self, g, c):
        if c == 0.0:
            return
        scaled = Game2x2(*(c * v for v in (
            g.a11, g.a12, g.a21, g.a22, g.b11, g.b12, g.b21, g.b22
        )))
        assert equilibrium_signature(scaled) == equilibrium_signature(g)


class TestConsistentFamily:
    def test_double_root_gives_equal_weights(self):
        (lam,) = consistent_family(1.0, 0.25)
        assert lam == EmpathyMatrix(0.5, 0.5, 0.5, 0.5)

    def test_zero_product_includes_scaled_identity(self):
        fams = consistent_family(0.7, 0.0)
        assert EmpathyMatrix(0.7, 0.0, 0.0, 0.7) in fams

    def test_mixed_sign_roots(self):
        fams = consistent_family(1.0, -2.0)
        assert len(fams) == 2
        for lam in fams:
            assert sorted((lam.l11, lam.l22)) == [-1.0, 2.0]
            assert lam.l12 * lam.l21 == pytest.approx(-2.0)

    def test_every_member_solves_the_matrix_equation(self):
        rng = random.Random(13)
        for _ in range(100):
            eps = rng.uniform(0.05, 3.0)
            y = rng.uniform(-3.0, eps * eps / 4.0)
            for lam in consistent_family(eps, y):
                sq = lam @ lam
                resid = max(abs(a - eps * b) for a, b in zip(sq.entries(), lam.entries()))
                assert resid < 1e-10 * max(1.0, eps, abs(y))

    def test_rejects_complex_roots(self):
        with pytest.raises(ValueError):
            consistent_family(1.0, 1.0)
        with pytest.raises(ValueError):
            consistent_family(-1.0, 0.0)


class TestInfinitelyConsistent:
    def test_worked_example(self):
        lam = infinitely_consistent(0.5, 0.25)
        assert lam == EmpathyMatrix(0.5, 1.0, 0.25, 0.5)
        assert max_diff(lam @ lam, lam) < 1e-12

    def test_degenerate_own_weight_one(self):
        lam = infinitely_consistent(1.0, 0.7)
        assert lam == EmpathyMatrix(1.0, 0.0, 0.7, 0.0)
        assert max_diff(lam @ lam, lam) < 1e-12

    def test_identity_is_idempotent_too(self):
        eye = EmpathyMatrix.identity()
        assert max_diff(eye @ eye, eye) == 0.0

    def test_trace_one_determinant_zero(self):
        rng = random.Random(2)
        for _ in range(200):
            l11 = rng.uniform(-3, 3)
            l21 = rng.uniform(0.05, 3) * rng.choice((-1, 1))
            lam = infinitely_consistent(l11, l21)
            assert lam.trace() == pytest.approx(1.0, abs=1e-12)
            assert lam.det() == pytest.approx(0.0, abs=1e-9)
            assert max_diff(lam @ lam, lam) < 1e-9

    def test_random_non_idempotent_matrices_fail(self):
        rng = random.Random(3)
        checked = failed = 0
        while checked < 1000:
            lam = EmpathyMatrix(*(rng.uniform(-2, 2) for _ in range(4)))
            if abs(lam.trace() - 1.0) < 1e-6 and abs(lam.det()) < 1e-6:
                continue  # measure-zero idempotent neighborhood
            checked += 1
            if max_diff(lam @ lam, lam) >= 1e-12:
                failed += 1
        assert failed == checked == 1000

    def test_rejects_zero_l21(self):
        with pytest.raises(ValueError):
            infinitely_consistent(0.5, 0.0)


class TestSpectralLimit:
    def test_quarter_matrix_shrinks_to_zero(self):
        rec = spectral_limit(EmpathyMatrix(0.25, 0.25, 0.25, 0.25), 10)
        evs = sorted(abs(e) for e in rec.eigenvalues)
        assert evs == pytest.approx([0.0, 0.5])
        assert rec.rho == pytest.approx(0.5)
        assert rec.limit_kind is LimitKind.ZERO
        assert rec.limit == EmpathyMatrix(0.0, 0.0, 0.0, 0.0)

    def test_idempotent_converges_to_itself(self):
        lam = infinitely_consistent(0.5, 0.25)
        rec = spectral_limit(lam, 10)
        evs = sorted(abs(e) for e in rec.eigenvalues)
        assert evs == pytest.approx([0.0, 1.0], abs=1e-12)
        assert rec.limit_kind is LimitKind.CONVERGES
        assert max_diff(rec.limit, lam) < 1e-12

    def test_negative_unit_family_oscillates(self):
        rec = spectral_limit(ones(-1.0), 20)
        assert rec.rho == pytest.approx(1.0)
        assert rec.limit_kind is LimitKind.OSCILLATES

    def test_expanding_matrix_diverges(self):
        rec = spectral_limit(EmpathyMatrix(2.0, 0.0, 0.0, 0.5), 50)
        assert rec.limit_kind is LimitKind.DIVERGES

    def test_complex_pair(self):
        rec = spectral_limit(EmpathyMatrix(0.0, -0.5, 0.5, 0.0), 10)
        assert rec.eigenvalues[0].imag != 0.0
        assert rec.rho == pytest.approx(0.5)
        assert rec.limit_kind is LimitKind.ZERO


class TestAnalyzeHierarchy:
    def test_levels_enumerate_matrix_powers(self, pd):
        lam = ones(0.8)
        analysis = analyze_hierarchy(pd, lam, k_max=6)
        assert [rec.k for rec in analysis.levels] == [1, 2, 3, 4, 5, 6]
        assert analysis.levels[0].lam_k == lam
        for rec in analysis.levels:
            assert max_diff(rec.lam_k, lam.power(rec.k)) < 1e-12
        assert analysis.consistent_up_to_k

    def test_sign_flip_breaks_signature(self, pd):
        analysis = analyze_hierarchy(pd, ones(-0.8), k_max=4)
        assert not analysis.consistent_up_to_k
        assert analysis.levels[0].signature != analysis.levels[1].signature

    def test_battery_has_one_game_per_class(self):
        sigs = {equilibrium_signature(g) for g in default_battery()}
        assert len(sigs) == 4
