"""Multi-level empathy: powers of the weight matrix and their game effects.

The level-k game applies the k-th matrix power of the empathy weights to the
payoff vector.  An empathy structure is consistent when the equilibrium
structure of every level-k game matches the level-1 game; a game-independent
sufficient condition is that every power is a positive multiple of the
matrix itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .equilibria import mixed_nash, pure_nash
from .games import (
    EmpathyMatrix,
    Game2x2,
    anti_coordination_game,
    classify,
    coordination_game,
    matching_pennies,
    prisoners_dilemma,
    transform,
)

_DIVERGENCE_GUARD = 1e12
_EPS_FIT_RESIDUAL = 1e-9
_CAUCHY_TOL = 1e-12


def default_battery() -> list[Game2x2]:
    """One representative game per class, used to probe consistency."""
    return [
        prisoners_dilemma(),
        coordination_game(),
        anti_coordination_game(),
        matching_pennies(),
    ]


def level_game(g: Game2x2, lam: EmpathyMatrix, k: int) -> Game2x2:
    """The game whose payoff vector is the k-th matrix power applied to the
    original payoffs; k=0 returns the original game, k=1 the transform."""
    if k < 0:
        raise ValueError("level requires k >= 0")
    return transform(g, lam.power(k))


def equilibrium_signature(g: Game2x2) -> str:
    """Canonical label of a game's equilibrium structure: pure-equilibrium
    cells, interior-mixed presence, and game class."""
    cls = classify(g)
    cells = ",".join(f"{i}{j}" for (i, j) in sorted(p.cell for p in pure_nash(g)))
    mixed = mixed_nash(g)
    mixed_tag = str(len(mixed.points))
    if mixed.continua:
        mixed_tag += "+cont"
    if mixed.degenerate:
        mixed_tag += "+deg"
    return f"class={cls.kind.value}|pure={cells or '-'}|mixed={mixed_tag}"


@dataclass(frozen=True)
class LevelRecord:
    k: int
    lam_k: EmpathyMatrix
    signature: str


class LimitKind(Enum):
    ZERO = "Zero"
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    OSCILLATES = "Oscillates"


@dataclass(frozen=True)
class SpectralRecord:
    eigenvalues: tuple[complex, complex]
    rho: float
    limit_kind: LimitKind
    limit: EmpathyMatrix | None


def spectral_limit(lam: EmpathyMatrix, k_max: int) -> SpectralRecord:
    """Eigenvalues in closed form (trace/determinant) and the behavior of the
    power sequence: Zero when the spectral radius is below one, Converges
    when successive powers become Cauchy within ``k_max``, Diverges when the
    radius exceeds one or entries blow past an overflow guard, Oscillates
    otherwise."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    tr = lam.trace()
    det = lam.det()
    disc = tr * tr / 4.0 - det
    if disc >= 0.0:
        s = math.sqrt(disc)
        ev = (complex(tr / 2.0 + s), complex(tr / 2.0 - s))
    else:
        s = math.sqrt(-disc)
        ev = (complex(tr / 2.0, s), complex(tr / 2.0, -s))
    rho = max(abs(ev[0]), abs(ev[1]))
    if rho < 1.0:
        return SpectralRecord(ev, rho, LimitKind.ZERO, EmpathyMatrix(0.0, 0.0, 0.0, 0.0))
    if rho > 1.0 + 1e-12:
        return SpectralRecord(ev, rho, LimitKind.DIVERGES, None)
    prev = lam
    for _ in range(2, k_max + 1):
        cur = lam @ prev
        if max(abs(e) for e in cur.entries()) > _DIVERGENCE_GUARD:
            return SpectralRecord(ev, rho, LimitKind.DIVERGES, None)
        diff = max(abs(a - b) for a, b in zip(cur.entries(), prev.entries()))
        if diff < _CAUCHY_TOL:
            return SpectralRecord(ev, rho, LimitKind.CONVERGES, cur)
        prev = cur
    return SpectralRecord(ev, rho, LimitKind.OSCILLATES, None)


def structural_epsilons(lam: EmpathyMatrix, k_max: int) -> tuple[float, ...] | None:
    """Per-level scalars eps_k with lam^k = eps_k * lam, when they exist.

    Each eps_k is the least-squares fit of the k-th power against the matrix;
    the fit must leave a residual below 1e-9 and be strictly positive at
    every level up to ``k_max``, otherwise None is returned.
    """
    base = lam.entries()
    den = sum(e * e for e in base)
    if den == 0.0:
        return None
    eps: list[float] = []
    cur = lam
    for _ in range(1, k_max + 1):
        fit = sum(c * b for c, b in zip(cur.entries(), base)) / den
        residual = max(abs(c - fit * b) for c, b in zip(cur.entries(), base))
        if residual >= _EPS_FIT_RESIDUAL or fit <= 0.0:
            return None
        eps.append(fit)
        cur = lam @ cur
        if max(abs(e) for e in cur.entries()) > _DIVERGENCE_GUARD:
            return None
    return tuple(eps)


@dataclass(frozen=True)
class ConsistencyVerdict:
    """Outcome of probing an empathy structure across reasoning levels.

    ``consistent_up_to_k`` reports the battery comparison; when it fails,
    the first offending level and the probe game are recorded as a witness.
    ``structurally_consistent`` reports the game-independent positive-scaling
    property with its fitted scalars.
    """

    k_max: int
    consistent_up_to_k: bool
    first_bad_k: int | None
    witness_index: int | None
    witness: Game2x2 | None
    witness_signatures: tuple[str, str] | None
    structurally_consistent: bool
    epsilons: tuple[float, ...] | None

    @property
    def label(self) -> str:
        if not self.consistent_up_to_k:
            return "Inconsistent"
        if self.structurally_consistent:
            return "StructurallyConsistent"
        return "ConsistentUpToK"


def check_consistency(
    lam: EmpathyMatrix, k_max: int, battery: list[Game2x2] | None = None
) -> ConsistencyVerdict:
    """Compare the equilibrium signature of every level-k game (k = 2..k_max)
    against the level-1 game over a battery of probe games, and additionally
    run the game-independent structural test lam^k = eps_k * lam.

    The witness is the earliest offending level; ties are broken by battery
    order, so the verdict is deterministic however the games are evaluated.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    games = default_battery() if battery is None else list(battery)
    if not games:
        raise ValueError("battery must be non-empty")

    best: tuple[int, int, str, str] | None = None  # (k, index, sig1, sig_k)
    for idx, g in enumerate(games):
        sig1 = equilibrium_signature(transform(g, lam))
        lam_k = lam
        for k in range(2, k_max + 1):
            lam_k = lam @ lam_k
            if max(abs(e) for e in lam_k.entries()) > _DIVERGENCE_GUARD:
                break
            sig_k = equilibrium_signature(transform(g, lam_k))
            if sig_k != sig1:
                if best is None or (k, idx) < best[:2]:
                    best = (k, idx, sig1, sig_k)
                break

    eps = structural_epsilons(lam, k_max)
    if best is not None:
        k, idx, sig1, sig_k = best
        return ConsistencyVerdict(
            k_max=k_max,
            consistent_up_to_k=False,
            first_bad_k=k,
            witness_index=idx,
            witness=games[idx],
            witness_signatures=(sig1, sig_k),
            structurally_consistent=eps is not None,
            epsilons=eps,
        )
    return ConsistencyVerdict(
        k_max=k_max,
        consistent_up_to_k=True,
        first_bad_k=None,
        witness_index=None,
        witness=None,
        witness_signatures=None,
        structurally_consistent=eps is not None,
        epsilons=eps,
    )


@dataclass(frozen=True)
class HierarchyAnalysis:
    """Per-level weight matrices and equilibrium signatures for one game."""

    lam: EmpathyMatrix
    k_max: int
    levels: tuple[LevelRecord, ...]
    consistent_up_to_k: bool
    spectral: SpectralRecord


def analyze_hierarchy(g: Game2x2, lam: EmpathyMatrix, k_max: int) -> HierarchyAnalysis:
    """Walk the matrix powers up to ``k_max`` for a single game, recording the
    weight matrix and equilibrium signature at each level."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    levels = []
    lam_k = lam
    for k in range(1, k_max + 1):
        levels.append(
            LevelRecord(k=k, lam_k=lam_k, signature=equilibrium_signature(transform(g, lam_k)))
        )
        lam_k = lam @ lam_k
    consistent = all(rec.signature == levels[0].signature for rec in levels)
    return HierarchyAnalysis(
        lam=lam,
        k_max=k_max,
        levels=tuple(levels),
        consistent_up_to_k=consistent,
        spectral=spectral_limit(lam, k_max),
    )


def consistent_family(epsilon: float, y: float) -> list[EmpathyMatrix]:
    """Representative empathy matrices solving lam^2 = epsilon * lam.

    The diagonal entries are roots of x^2 - epsilon*x + y = 0 (their sum is
    pinned to epsilon whenever the off-diagonal entries are nonzero) and the
    off-diagonal product is y, realized canonically as l12 = sqrt(|y|),
    l21 = y / l12.  For y = 0 the off-diagonals vanish and the diagonal
    entries may be chosen independently among the roots {0, epsilon};
    epsilon times the identity is listed first.  Raises ValueError when
    epsilon^2 < 4y (no real roots).
    """
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise ValueError("epsilon must be positive and finite")
    if not math.isfinite(y):
        raise ValueError("y must be finite")
    disc = epsilon * epsilon - 4.0 * y
    if disc < 0.0:
        raise ValueError("no real solution: requires epsilon^2 >= 4*y")

    out: list[EmpathyMatrix] = []
    if y == 0.0:
        out.append(EmpathyMatrix(epsilon, 0.0, 0.0, epsilon))
        out.append(EmpathyMatrix(epsilon, 0.0, 0.0, 0.0))
        out.append(EmpathyMatrix(0.0, 0.0, 0.0, epsilon))
    else:
        s = math.sqrt(disc)
        roots = ((epsilon + s) / 2.0, (epsilon - s) / 2.0)
        l12 = math.sqrt(abs(y))
        l21 = y / l12
        pairs = [(roots[0], roots[1])]
        if roots[0] != roots[1]:
            pairs.append((roots[1], roots[0]))
        for d1, d2 in pairs:
            out.append(EmpathyMatrix(d1, l12, l21, d2))

    scale = max(1.0, abs(epsilon), abs(y))
    for lam in out:
        sq = lam @ lam
        residual = max(
            abs(a - epsilon * b) for a, b in zip(sq.entries(), lam.entries())
        )
        assert residual <= 1e-10 * scale, f"family construction failed for {lam}"
    return out


def infinitely_consistent(l11: float, l21: float) -> EmpathyMatrix:
    """The idempotent empathy profile with given first column: trace one,
    determinant zero, so every power equals the matrix itself.  The identity
    matrix (EmpathyMatrix.identity()) is the only other profile whose powers
    all preserve the equilibrium structure."""
    if l21 == 0.0:
        raise ValueError("l21 must be nonzero")
    return EmpathyMatrix(l11, l11 * (1.0 - l11) / l21, l21, 1.0 - l11)
