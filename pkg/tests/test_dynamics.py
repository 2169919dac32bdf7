import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from empathica import (
    EmpathyMatrix,
    Game2x2,
    GameKind,
    LearningSchedule,
    PopulationState,
    RevisionProtocol,
    classify,
    pure_nash,
    simulate,
    stabilization_check,
    step,
    switch_rates,
    transform,
    vector_field,
)
from oracles import random_game

ALL_PROTOS = (
    RevisionProtocol.replicator(),
    RevisionProtocol.bnn(),
    RevisionProtocol.smith(),
    RevisionProtocol.imitation(),
)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


class TestSwitchRates:
    def test_smith_stationary_at_indifference(self, mp):
        # Both actions earn 0 at the mixed center of the unit-stakes game.
        s = PopulationState(0.5, 0.5)
        for pop in (1, 2):
            assert switch_rates(RevisionProtocol.smith(), mp, s, pop) == (0.0, 0.0)

    def test_bnn_vanishes_at_matching_pennies_center(self, mp):
        s = PopulationState(0.5, 0.5)
        for pop in (1, 2):
            assert switch_rates(RevisionProtocol.bnn(), mp, s, pop) == (0.0, 0.0)

    def test_pd_flows_toward_the_dominant_action(self, pd):
        s = PopulationState(0.7, 0.3)
        for proto in ALL_PROTOS[:3]:
            for pop in (1, 2):
                e12, e21 = switch_rates(proto, pd, s, pop)
                assert e12 > 0.0
                assert e21 == 0.0

    def test_rates_are_nonnegative_for_random_inputs(self):
        rng = random.Random(8)
        for _ in range(2000):
            g = random_game(rng)
            s = PopulationState(rng.random(), rng.random())
            proto = rng.choice(ALL_PROTOS)
            for pop in (1, 2):
                e12, e21 = switch_rates(proto, g, s, pop)
                assert e12 >= 0.0 and e21 >= 0.0

    def test_hybrid_is_the_convex_combination(self, pd):
        s = PopulationState(0.3, 0.8)
        hybrid = RevisionProtocol.hybrid(("smith", 1.0), ("bnn", 3.0))
        for pop in (1, 2):
            e = switch_rates(hybrid, pd, s, pop)
            a = switch_rates(RevisionProtocol.smith(), pd, s, pop)
            b = switch_rates(RevisionProtocol.bnn(), pd, s, pop)
            assert e[0] == pytest.approx(0.25 * a[0] + 0.75 * b[0])
            assert e[1] == pytest.approx(0.25 * a[1] + 0.75 * b[1])

    def test_protocol_parsing(self):
        assert RevisionProtocol.parse("smith") == RevisionProtocol.smith()
        h = RevisionProtocol.parse("hybrid:replicator=0.5,smith=0.5")
        assert h.kind == "hybrid"
        assert h.components == (("replicator", 0.5), ("smith", 0.5))
        with pytest.raises(ValueError):
            RevisionProtocol.parse("gradient")


class TestStep:
    def test_zero_rates_leave_state_unchanged(self, mp):
        s = PopulationState(0.5, 0.5)
        out = step(s, RevisionProtocol.smith(), LearningSchedule.constant(0.1), mp)
        assert out == s

    def test_pd_moves_both_populations_down(self, pd):
        s = PopulationState(0.9, 0.9)
        out = step(s, RevisionProtocol.smith(), LearningSchedule.constant(0.1), pd)
        assert out.p1 < 0.9 and out.p2 < 0.9

    def test_corner_with_no_outflow_is_absorbing(self, pd):
        s = PopulationState(0.0, 0.0)
        out = step(s, RevisionProtocol.replicator(), LearningSchedule.constant(0.5), pd)
        assert out == s

    def test_forward_invariance_exact(self):
        # Capped updates may touch the boundary but never cross it.
        rng = random.Random(10_000)
        sched_pool = [LearningSchedule.constant(r) for r in (0.01, 0.1, 1.0, 10.0)]
        for _ in range(10_000):
            g = random_game(rng, span=10.0)
            s = PopulationState(rng.random(), rng.random())
            proto = rng.choice(ALL_PROTOS)
            out = step(s, proto, rng.choice(sched_pool), g)
            assert 0.0 <= out.p1 <= 1.0
            assert 0.0 <= out.p2 <= 1.0

    def test_pure_nash_profiles_are_fixed_points(self):
        rng = random.Random(77)
        sched = LearningSchedule.constant(0.2)
        checked = 0
        while checked < 300:
            g = random_game(rng)
            for p in pure_nash(g):
                i, j = p.cell
                s = PopulationState(1.0 if i == 1 else 0.0, 1.0 if j == 1 else 0.0)
                for proto in (RevisionProtocol.smith(), RevisionProtocol.bnn()):
                    assert step(s, proto, sched, g) == s
                checked += 1

    def test_harmonic_schedule_decays(self):
        sched = LearningSchedule.harmonic(0.5)
        assert sched.rate(0) == 0.5
        assert sched.rate(4) == 0.1


class TestSimulate:
    def test_pd_replicator_reaches_the_defect_corner(self, pd):
        traj = simulate(
            PopulationState(0.7, 0.6),
            RevisionProtocol.replicator(),
            LearningSchedule.constant(0.05),
            pd,
            steps=100_000,
        )
        assert traj.diagnostics.converged
        assert traj.p1[-1] == pytest.approx(0.0, abs=1e-6)
        assert traj.p2[-1] == pytest.approx(0.0, abs=1e-6)

    def test_matching_pennies_cycles_without_converging(self, mp):
        traj = simulate(
            PopulationState(0.4, 0.6),
            RevisionProtocol.replicator(),
            LearningSchedule.constant(0.01),
            mp,
            steps=100_000,
        )
        assert not traj.diagnostics.converged
        assert traj.diagnostics.cycle_detected
        assert traj.diagnostics.cycle_period_estimate > 0

    def test_cycle_breaking_empathy_converges_to_a_corner(self, mp):
        lam = EmpathyMatrix(1.0, 0.0001, 0.0001, -1.0)
        traj = simulate(
            PopulationState(0.55, 0.65),
            RevisionProtocol.replicator(),
            LearningSchedule.constant(0.02),
            transform(mp, lam),
            steps=100_000,
        )
        assert traj.diagnostics.converged
        corner_dist = min(
            max(abs(traj.p1[-1] - cx), abs(traj.p2[-1] - cy))
            for cx in (0.0, 1.0)
            for cy in (0.0, 1.0)
        )
        assert corner_dist < 1e-3

    def test_cycle_persistence_across_interior_starts(self, mp):
        rng = random.Random(1234)
        sched = LearningSchedule.constant(0.01)
        for _ in range(10):
            while True:
                x, y = rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)
                if abs(x - 0.5) > 0.02 or abs(y - 0.5) > 0.02:
                    break
            traj = simulate(
                PopulationState(x, y),
                RevisionProtocol.replicator(),
                sched,
                mp,
                steps=100_000,
                detect_cycles=False,
            )
            assert not traj.diagnostics.converged

    def test_convergence_on_random_stable_classes(self):
        # Coordination, anti-coordination, and dominance games all settle on
        # a pure equilibrium from interior starts under the three protocols.
        rng = random.Random(555)
        sched = LearningSchedule.constant(0.05)
        protos = (RevisionProtocol.replicator(), RevisionProtocol.bnn(), RevisionProtocol.smith())
        games_checked = 0
        while games_checked < 20:
            g = random_game(rng)
            cls = classify(g)
            kind = cls.kind
            if kind not in (GameKind.COORDINATION, GameKind.ANTI_COORDINATION,
                            GameKind.DOMINANT_STRATEGY):
                continue
            if kind is GameKind.DOMINANT_STRATEGY and not (
                cls.dominant_action_p1 and cls.dominant_action_p2
            ):
                continue
            # A payoff-margin floor bounds how slowly the most sluggish
            # protocol closes in on a corner within the step budget.
            if min(abs(g.a11 - g.a21), abs(g.a12 - g.a22),
                   abs(g.b11 - g.b12), abs(g.b21 - g.b22)) < 1.0:
                continue
            corners = []
            for p in pure_nash(g):
                i, j = p.cell
                corners.append((1.0 if i == 1 else 0.0, 1.0 if j == 1 else 0.0))
            for proto in protos:
                for _ in range(2):
                    s0 = PopulationState(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
                    traj = simulate(s0, proto, sched, g, steps=60_000, detect_cycles=False)
                    dist = min(
                        max(abs(traj.p1[-1] - cx), abs(traj.p2[-1] - cy))
                        for cx, cy in corners
                    )
                    assert dist <= 1e-3
            games_checked += 1

    def test_single_population_anti_coordination_finds_interior_ess(self, anti):
        # A symmetric game started on the diagonal stays on it, emulating one
        # population; the anti-coordination interior point attracts it.
        traj = simulate(
            PopulationState(0.9, 0.9),
            RevisionProtocol.replicator(),
            LearningSchedule.constant(0.05),
            anti,
            steps=100_000,
        )
        assert traj.p1 == traj.p2
        # beta1 = -1, beta2 = -1 for this fixture: interior rest point 0.5.
        assert traj.p1[-1] == pytest.approx(0.5, abs=1e-3)

    def test_trajectory_bookkeeping(self, pd):
        traj = simulate(
            PopulationState(0.5, 0.5),
            RevisionProtocol.smith(),
            LearningSchedule.constant(0.05),
            pd,
            steps=50,
        )
        assert traj.times == tuple(range(len(traj)))
        assert len(traj.p1) == len(traj.p2) == len(traj)
        assert traj.final.p1 == traj.p1[-1]
        assert len(traj.states) == len(traj)

    def test_rejects_zero_steps(self, pd):
        with pytest.raises(ValueError):
            simulate(PopulationState(0.5, 0.5), RevisionProtocol.smith(),
                     LearningSchedule.constant(0.1), pd, steps=0)


class TestVectorField:
    def test_zero_game_has_zero_field(self):
        g = Game2x2(0, 0, 0, 0, 0, 0, 0, 0)
        field = vector_field(RevisionProtocol.replicator(), g, resolution=5)
        assert all(r[2] == 0.0 and r[3] == 0.0 for r in field.rows)

    def test_coordination_interior_rest_point(self, coord):
        # The mixed equilibrium of the (2,0;0,1) coordination game is at 1/3.
        field = vector_field(RevisionProtocol.replicator(), coord, resolution=4)
        rest = [r for r in field.rows if abs(r[0] - 1 / 3) < 1e-9 and abs(r[1] - 1 / 3) < 1e-9]
        assert len(rest) == 1
        assert abs(rest[0][2]) < 1e-12 and abs(rest[0][3]) < 1e-12

    def test_coordination_flow_points_to_matching_corners(self, coord):
        field = vector_field(RevisionProtocol.replicator(), coord, resolution=11)
        for p1, p2, d1, d2 in field.rows:
            if p1 > 0.5 and p2 > 0.5 and p1 < 1 and p2 < 1:
                assert d1 >= 0 and d2 >= 0
            if p1 < 1 / 3 and p2 < 1 / 3 and p1 > 0 and p2 > 0:
                assert d1 <= 0 and d2 <= 0

    def test_pd_interior_flow_is_strictly_downhill(self, pd):
        field = vector_field(RevisionProtocol.smith(), pd, resolution=9)
        for p1, p2, d1, d2 in field.rows:
            if 0 < p1 < 1 and 0 < p2 < 1:
                assert d1 < 0 and d2 < 0

    def test_grid_shape_and_order(self, pd):
        field = vector_field(RevisionProtocol.smith(), pd, resolution=3)
        assert len(field.rows) == 9
        assert [r[:2] for r in field.rows[:3]] == [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]

    def test_rejects_tiny_resolution(self, pd):
        with pytest.raises(ValueError):
            vector_field(RevisionProtocol.smith(), pd, resolution=1)


class TestStabilization:
    def test_mixed_sign_weights_stabilize_matching_pennies(self, mp):
        rep = stabilization_check(mp, EmpathyMatrix(1, -1, 1, -1))
        assert rep.stabilized
        out = transform(mp, EmpathyMatrix(1, -1, 1, -1))
        assert (out.a11, out.b11) == (2.0, 2.0)
        assert (out.a12, out.b12) == (-2.0, -2.0)
        assert (out.a21, out.b21) == (-2.0, -2.0)
        assert (out.a22, out.b22) == (2.0, 2.0)

    def test_identity_does_not_stabilize(self, mp):
        rep = stabilization_check(mp, EmpathyMatrix.identity())
        assert not rep.stabilized
        assert rep.transformed_class.kind is GameKind.DISCOORDINATION

    def test_tiny_cross_weights_with_flipped_self_weight(self, mp):
        rep = stabilization_check(mp, EmpathyMatrix(1, 0.0001, 0.0001, -1))
        assert rep.stabilized
        assert rep.transformed_class.kind is GameKind.COORDINATION

    def test_requires_discoordination(self, pd):
        with pytest.raises(ValueError):
            stabilization_check(pd, EmpathyMatrix.identity())


class TestStateValidation:
    @given(unit, unit)
    def test_valid_states_accepted(self, x, y):
        s = PopulationState(x, y)
        assert s.as_tuple() == (x, y)

    def test_invalid_states_rejected(self):
        with pytest.raises(ValueError):
            PopulationState(-0.1, 0.5)
        with pytest.raises(ValueError):
            PopulationState(0.5, 1.5)
