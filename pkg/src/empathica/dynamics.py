"""Discrete-time evolutionary dynamics for two populations on 2x2 games.

Each population revises between its two actions at nonnegative switch rates
determined by a revision protocol, and the state updates as

    m' = m + rate_t * (1 - m) * eta_in - rate_t * m * eta_out,

with the learning rate capped per step so the state never leaves [0, 1]^2.
Population 1 plays the row role against population 2's mix, and vice versa.

Supported protocols (pi_a is the expected payoff of action a against the
opponent population's current mix, pi_bar the population average):

* replicator (pairwise proportional imitation): eta_ab = m_b * max(pi_b - pi_a, 0)
* bnn:        eta_ab = max(pi_b - pi_bar, 0)
* smith:      eta_ab = max(pi_b - pi_a, 0)
* imitation:  eta_ab = m_b * (pi_b + K) with K = -min payoff entry of the game
* hybrid:     convex combination of the above
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .games import Classification, EmpathyMatrix, Game2x2, GameKind, classify, transform

_PROTOCOL_KINDS = ("replicator", "bnn", "smith", "imitation")
_RATE_FLOOR = 2.220446049250313e-16  # machine epsilon floor for the step cap


@dataclass(frozen=True)
class PopulationState:
    """Mass each population places on action 1."""

    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name in ("p1", "p2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.p1, self.p2)


@dataclass(frozen=True)
class RevisionProtocol:
    """A named switch-rate rule, or a weighted hybrid of several."""

    kind: str
    components: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "hybrid":
            if not self.components:
                raise ValueError("hybrid protocol needs at least one component")
            for name, w in self.components:
                if name not in _PROTOCOL_KINDS:
                    raise ValueError(f"unknown protocol component {name!r}")
                if not (math.isfinite(w) and w >= 0.0):
                    raise ValueError("hybrid weights must be nonnegative")
            if sum(w for _, w in self.components) <= 0.0:
                raise ValueError("hybrid weights must not all be zero")
        elif self.kind not in _PROTOCOL_KINDS:
            raise ValueError(f"unknown protocol {self.kind!r}")

    @classmethod
    def replicator(cls) -> "RevisionProtocol":
        return cls("replicator")

    @classmethod
    def bnn(cls) -> "RevisionProtocol":
        return cls("bnn")

    @classmethod
    def smith(cls) -> "RevisionProtocol":
        return cls("smith")

    @classmethod
    def imitation(cls) -> "RevisionProtocol":
        return cls("imitation")

    @classmethod
    def hybrid(cls, *components: tuple[str, float]) -> "RevisionProtocol":
        return cls("hybrid", tuple(components))

    @classmethod
    def parse(cls, text: str) -> "RevisionProtocol":
        """Parse 'replicator', 'smith', ... or 'hybrid:smith=0.5,bnn=0.5'."""
        text = text.strip()
        if not text.startswith("hybrid"):
            return cls(text)
        _, _, spec = text.partition(":")
        comps = []
        for chunk in filter(None, spec.split(",")):
            name, _, w = chunk.partition("=")
            comps.append((name.strip(), float(w) if w else 1.0))
        return cls.hybrid(*comps)


@dataclass(frozen=True)
class LearningSchedule:
    """Learning-rate sequence: constant, or harmonically decaying base/(t+1).

    The scheduled rate is additionally capped inside each step at
    1 / max(switch rates, machine epsilon) so updates stay in the simplex.
    """

    kind: str
    base: float

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "harmonic"):
            raise ValueError(f"unknown schedule {self.kind!r}")
        if not (math.isfinite(self.base) and self.base >= 0.0):
            raise ValueError("learning rate must be nonnegative and finite")

    @classmethod
    def constant(cls, rate: float) -> "LearningSchedule":
        return cls("constant", rate)

    @classmethod
    def harmonic(cls, base: float) -> "LearningSchedule":
        return cls("harmonic", base)

    def rate(self, t: int) -> float:
        if self.kind == "constant":
            return self.base
        return self.base / (t + 1.0)


def _payoffs(game: Game2x2, state: PopulationState, pop: int) -> tuple[float, float, float]:
    """(pi_1, pi_2, own mass on action 1) for the given population."""
    if pop == 1:
        q = state.p2
        return (
            game.a11 * q + game.a12 * (1.0 - q),
            game.a21 * q + game.a22 * (1.0 - q),
            state.p1,
        )
    if pop == 2:
        p = state.p1
        return (
            game.b11 * p + game.b21 * (1.0 - p),
            game.b12 * p + game.b22 * (1.0 - p),
            state.p2,
        )
    raise ValueError("pop must be 1 or 2")


def _base_rates(kind: str, pi1: float, pi2: float, m: float, shift: float) -> tuple[float, float]:
    if kind == "replicator":
        d = pi2 - pi1
        return ((1.0 - m) * d if d > 0.0 else 0.0, m * -d if d < 0.0 else 0.0)
    if kind == "bnn":
        bar = m * pi1 + (1.0 - m) * pi2
        e12 = pi2 - bar
        e21 = pi1 - bar
        return (e12 if e12 > 0.0 else 0.0, e21 if e21 > 0.0 else 0.0)
    if kind == "smith":
        d = pi2 - pi1
        return (d if d > 0.0 else 0.0, -d if d < 0.0 else 0.0)
    # imitation
    return ((1.0 - m) * (pi2 + shift), m * (pi1 + shift))


def switch_rates(
    proto: RevisionProtocol, game: Game2x2, state: PopulationState, pop: int
) -> tuple[float, float]:
    """Nonnegative switch rates (eta_12, eta_21) for one population."""
    pi1, pi2, m = _payoffs(game, state, pop)
    shift = -game.min_payoff()
    if proto.kind != "hybrid":
        return _base_rates(proto.kind, pi1, pi2, m, shift)
    total = sum(w for _, w in proto.components)
    e12 = e21 = 0.0
    for name, w in proto.components:
        r12, r21 = _base_rates(name, pi1, pi2, m, shift)
        e12 += w * r12
        e21 += w * r21
    return (e12 / total, e21 / total)


def _capped_rate(scheduled: float, *rates: float) -> float:
    cap = 1.0 / max(max(rates), _RATE_FLOOR)
    return scheduled if scheduled <= cap else cap


def step(
    state: PopulationState,
    proto: RevisionProtocol,
    sched: LearningSchedule,
    game: Game2x2,
    t: int = 0,
) -> PopulationState:
    """One synchronous update of both populations; never leaves [0, 1]^2."""
    e112, e121 = switch_rates(proto, game, state, 1)
    e212, e221 = switch_rates(proto, game, state, 2)
    lam = _capped_rate(sched.rate(t), e112, e121, e212, e221)
    p1 = state.p1
    p2 = state.p2
    n1 = p1 + lam * (1.0 - p1) * e121 - lam * p1 * e112
    n2 = p2 + lam * (1.0 - p2) * e221 - lam * p2 * e212
    n1 = 0.0 if n1 < 0.0 else 1.0 if n1 > 1.0 else n1
    n2 = 0.0 if n2 < 0.0 else 1.0 if n2 > 1.0 else n2
    return PopulationState(n1, n2)


@dataclass(frozen=True)
class Diagnostics:
    converged: bool
    limit_point: PopulationState | None
    cycle_detected: bool
    cycle_period_estimate: float | None


@dataclass(frozen=True)
class Trajectory:
    """Time-indexed states of a simulation run plus convergence diagnostics.

    Coordinates are stored as parallel tuples; ``states`` materializes
    ``PopulationState`` objects on demand.
    """

    times: tuple[int, ...]
    p1: tuple[float, ...]
    p2: tuple[float, ...]
    diagnostics: Diagnostics

    @property
    def states(self) -> list[PopulationState]:
        return [PopulationState(a, b) for a, b in zip(self.p1, self.p2)]

    @property
    def final(self) -> PopulationState:
        return PopulationState(self.p1[-1], self.p2[-1])

    def __len__(self) -> int:
        return len(self.times)


def _rate_closure(proto: RevisionProtocol, game: Game2x2):
    """Specialized (p1, p2) -> four switch rates, hoisted for the hot loop."""
    a11, a12, a21, a22 = game.a11, game.a12, game.a21, game.a22
    b11, b12, b21, b22 = game.b11, game.b12, game.b21, game.b22
    shift = -game.min_payoff()

    if proto.kind == "hybrid":
        total = sum(w for _, w in proto.components)
        members = [
            (_rate_closure(RevisionProtocol(name), game), w / total)
            for name, w in proto.components
        ]

        def hybrid_rates(p1: float, p2: float):
            e112 = e121 = e212 = e221 = 0.0
            for fn, w in members:
                r = fn(p1, p2)
                e112 += w * r[0]
                e121 += w * r[1]
                e212 += w * r[2]
                e221 += w * r[3]
            return (e112, e121, e212, e221)

        return hybrid_rates

    kind = proto.kind

    def rates(p1: float, p2: float):
        q2 = 1.0 - p2
        r1 = a11 * p2 + a12 * q2
        r2 = a21 * p2 + a22 * q2
        q1 = 1.0 - p1
        c1 = b11 * p1 + b21 * q1
        c2 = b12 * p1 + b22 * q1
        if kind == "replicator":
            d = r2 - r1
            e112 = q1 * d if d > 0.0 else 0.0
            e121 = p1 * -d if d < 0.0 else 0.0
            d = c2 - c1
            e212 = q2 * d if d > 0.0 else 0.0
            e221 = p2 * -d if d < 0.0 else 0.0
        elif kind == "smith":
            d = r2 - r1
            e112 = d if d > 0.0 else 0.0
            e121 = -d if d < 0.0 else 0.0
            d = c2 - c1
            e212 = d if d > 0.0 else 0.0
            e221 = -d if d < 0.0 else 0.0
        elif kind == "bnn":
            bar = p1 * r1 + q1 * r2
            x = r2 - bar
            e112 = x if x > 0.0 else 0.0
            x = r1 - bar
            e121 = x if x > 0.0 else 0.0
            bar = p2 * c1 + q2 * c2
            x = c2 - bar
            e212 = x if x > 0.0 else 0.0
            x = c1 - bar
            e221 = x if x > 0.0 else 0.0
        else:  # imitation
            e112 = q1 * (r2 + shift)
            e121 = p1 * (r1 + shift)
            e212 = q2 * (c2 + shift)
            e221 = p2 * (c1 + shift)
        return (e112, e121, e212, e221)

    return rates


def _detect_cycle(
    p1s: list[float], p2s: list[float], eps: float
) -> tuple[bool, float | None]:
    """Return-proximity test: a post-transient state re-enters an eps-ball of
    an earlier state with at least 10*eps of arc length in between."""
    n = len(p1s)
    start = n // 10
    if n - start < 3:
        return (False, None)
    # Prefix arc length in the max norm.
    arc = [0.0] * n
    acc = 0.0
    for i in range(1, n):
        acc += max(abs(p1s[i] - p1s[i - 1]), abs(p2s[i] - p2s[i - 1]))
        arc[i] = acc
    min_gap = 10.0 * eps
    episodes: dict[tuple[int, int], list[int]] = {}
    last_key: tuple[int, int] | None = None
    for i in range(start, n):
        x = p1s[i]
        y = p2s[i]
        key = (int(x / eps), int(y / eps))
        ai = arc[i]
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in episodes.get((key[0] + dx, key[1] + dy), ()):
                    if ai - arc[j] > min_gap and abs(x - p1s[j]) < eps and abs(y - p2s[j]) < eps:
                        return (True, float(i - j))
        if key != last_key:
            episodes.setdefault(key, []).append(i)
            last_key = key
    return (False, None)


def simulate(
    s0: PopulationState,
    proto: RevisionProtocol,
    sched: LearningSchedule,
    game: Game2x2,
    steps: int,
    conv_tol: float = 1e-9,
    window: int = 25,
    detect_cycles: bool = True,
    cycle_eps: float = 1e-3,
) -> Trajectory:
    """Iterate the dynamics for ``steps`` updates or until convergence.

    Convergence is declared when the max-norm state change stays below
    conv_tol * scheduled rate for ``window`` consecutive steps.  When the run
    does not converge and ``detect_cycles`` is set, a return-proximity scan
    (ignoring the first 10% of the run as transient) reports cycling.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rates = _rate_closure(proto, game)
    rate_of = sched.rate
    floor = _RATE_FLOOR
    p1 = s0.p1
    p2 = s0.p2
    p1s = [p1]
    p2s = [p2]
    append1 = p1s.append
    append2 = p2s.append
    consecutive = 0
    converged = False
    for t in range(steps):
        lam = rate_of(t)
        e112, e121, e212, e221 = rates(p1, p2)
        mx = e112
        if e121 > mx:
            mx = e121
        if e212 > mx:
            mx = e212
        if e221 > mx:
            mx = e221
        if mx < floor:
            mx = floor
        lam_eff = lam if lam * mx <= 1.0 else 1.0 / mx
        n1 = p1 + lam_eff * (1.0 - p1) * e121 - lam_eff * p1 * e112
        n2 = p2 + lam_eff * (1.0 - p2) * e221 - lam_eff * p2 * e212
        if n1 < 0.0:
            n1 = 0.0
        elif n1 > 1.0:
            n1 = 1.0
        if n2 < 0.0:
            n2 = 0.0
        elif n2 > 1.0:
            n2 = 1.0
        d1 = n1 - p1
        if d1 < 0.0:
            d1 = -d1
        d2 = n2 - p2
        if d2 < 0.0:
            d2 = -d2
        delta = d1 if d1 > d2 else d2
        p1 = n1
        p2 = n2
        append1(p1)
        append2(p2)
        if delta < conv_tol * lam:
            consecutive += 1
            if consecutive >= window:
                converged = True
                break
        else:
            consecutive = 0

    cycle = False
    period: float | None = None
    if not converged and detect_cycles:
        cycle, period = _detect_cycle(p1s, p2s, cycle_eps)
    diag = Diagnostics(
        converged=converged,
        limit_point=PopulationState(p1, p2) if converged else None,
        cycle_detected=cycle,
        cycle_period_estimate=period,
    )
    return Trajectory(
        times=tuple(range(len(p1s))),
        p1=tuple(p1s),
        p2=tuple(p2s),
        diagnostics=diag,
    )


@dataclass(frozen=True)
class VectorField:
    """Raw one-step flow (unit rate, uncapped) on a uniform state grid."""

    resolution: int
    rows: tuple[tuple[float, float, float, float], ...]  # (p1, p2, dp1, dp2)


def vector_field(proto: RevisionProtocol, game: Game2x2, resolution: int) -> VectorField:
    """Evaluate the raw flow (1-p)*eta_in - p*eta_out on a uniform grid.

    Rows are ordered p2-outer, p1-inner.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    rates = _rate_closure(proto, game)
    coords = [k / (resolution - 1) for k in range(resolution)]
    rows = []
    for p2 in coords:
        for p1 in coords:
            e112, e121, e212, e221 = rates(p1, p2)
            dp1 = (1.0 - p1) * e121 - p1 * e112
            dp2 = (1.0 - p2) * e221 - p2 * e212
            rows.append((p1, p2, dp1, dp2))
    return VectorField(resolution=resolution, rows=tuple(rows))


@dataclass(frozen=True)
class StabilizationReport:
    transformed_class: Classification
    stabilized: bool


def stabilization_check(g: Game2x2, lam: EmpathyMatrix) -> StabilizationReport:
    """Whether an empathy structure removes the instability of a
    discoordination game by moving it into a class with stable pure equilibria.

    Raises ValueError when ``g`` is not a discoordination game.
    """
    base = classify(g)
    if base.kind is not GameKind.DISCOORDINATION:
        raise ValueError("stabilization_check requires a discoordination game")
    after = classify(transform(g, lam))
    stabilized = after.kind in (
        GameKind.COORDINATION,
        GameKind.ANTI_COORDINATION,
        GameKind.DOMINANT_STRATEGY,
    )
    return StabilizationReport(transformed_class=after, stabilized=stabilized)
