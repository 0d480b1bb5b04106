"""Momentum reduction of the projected pair evolution and survival probabilities.

Restricted to states with both particles on one site and aligned coins, the
projected step is invariant under ring translations, so it splits into d
two-by-two momentum blocks acting on the (both-right, both-left) pair of
amplitudes.  Post-removal mixtures are evolved either directly, member by
member, or through these blocks; the two routes must agree.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .evolution import projected_step
from .lattice import Ensemble, LatticeConfig, PureState, RIGHT, make_basis_state, phase_factor

_DEGENERACY_TOL = 1e-10


def aligned_pair_amplitudes(phi) -> tuple[complex, complex]:
    """(stay, flip) for an aligned co-located pair under the contact coin:
    the amplitude to keep the joint direction and the amplitude to reverse it."""
    flip = (phase_factor(phi) - 1.0) / 4.0
    return 1.0 + flip, flip


@dataclass(frozen=True)
class MomentumBlock:
    """Projected pair step in one momentum sector, basis (both-right, both-left)."""

    momentum_index: int
    site_count: int
    matrix: np.ndarray


def momentum_block(k: int, d: int, phi) -> MomentumBlock:
    if not 0 <= k < d:
        raise ValueError("momentum index must lie in [0, d)")
    stay, flip = aligned_pair_amplitudes(phi)
    forward = phase_factor(Fraction(2 * k, d), -1)
    backward = phase_factor(Fraction(2 * k, d))
    matrix = np.array(
        [[stay * forward, flip * forward], [flip * backward, stay * backward]]
    )
    matrix.setflags(write=False)
    return MomentumBlock(k, d, matrix)


def block_eigenvalues(k: int, d: int, phi) -> tuple[complex, complex]:
    """Both closed-form roots of the momentum block.

    The square-root branch is anchored at the flip amplitude, which puts the
    persistent eigenvalue +1 on the minus root at k = 0 and -1 on the plus
    root at k = d/2.
    """
    stay, flip = aligned_pair_amplitudes(phi)
    w = phase_factor(Fraction(2 * k, d))
    cos_t, sin_t = w.real, w.imag
    root = flip * cmath.sqrt(1.0 - (stay / flip) ** 2 * (sin_t * sin_t))
    base = stay * cos_t
    return base + root, base - root


def spectrum_norms(d: int, phi) -> list[tuple[float, float, float]]:
    """Rows (k/d, |lambda_plus|, |lambda_minus|) over all momentum sectors."""
    rows = []
    for k in range(d):
        plus, minus = block_eigenvalues(k, d, phi)
        rows.append((k / d, abs(plus), abs(minus)))
    return rows


@dataclass(frozen=True)
class SurvivalSeries:
    site_count: int
    arity: int
    phase: float | Fraction
    values: list[tuple[int, float]]


def survival_probability(ensemble: Ensemble, t_max: int, method: str = "direct") -> SurvivalSeries:
    """Probability that the mixture is still collectively bound after each
    projected step, for t = 0 .. t_max."""
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    if method == "direct":
        values = _survival_direct(ensemble, t_max)
    elif method == "momentum":
        values = _survival_momentum(ensemble, t_max)
    else:
        raise ValueError(f"unknown survival method {method!r}")
    cfg = ensemble.config
    return SurvivalSeries(cfg.site_count, cfg.particle_count, cfg.interaction_phase, values)


def _translation_key(state: PureState):
    """Canonical (positions, coins) for a single-label unit member, shifted so
    the first particle sits at the origin; None when that shape does not apply.

    The projected step commutes with ring translations, so members that only
    differ by a translation share one norm trajectory.
    """
    if len(state.amplitudes) != 1:
        return None
    ((pos, coins), amp), = state.amplitudes.items()
    if abs(amp.real * amp.real + amp.imag * amp.imag - 1.0) > 1e-9:
        return None
    d = state.config.site_count
    shifted = tuple((x - pos[0]) % d for x in pos)
    return shifted, coins


def _survival_direct(ensemble: Ensemble, t_max: int) -> list[tuple[int, float]]:
    cfg = ensemble.config
    grouped: dict = {}
    loose: list[tuple[float, PureState]] = []
    for weight, member in ensemble.members:
        key = _translation_key(member)
        if key is None:
            loose.append((weight, member))
        else:
            grouped[key] = grouped.get(key, 0.0) + weight
    representatives = list(loose)
    for (pos, coins), weight in sorted(grouped.items()):
        representatives.append((weight, make_basis_state(cfg, pos, coins)))
    totals = [0.0] * (t_max + 1)
    for weight, state in representatives:
        current = state
        totals[0] += weight * current.norm_sq()
        for t in range(1, t_max + 1):
            current = projected_step(current)
            totals[t] += weight * current.norm_sq()
    return list(enumerate(totals))


def _require_uniform_pair_mixture(ensemble: Ensemble) -> None:
    cfg = ensemble.config
    d = cfg.site_count
    expected_weight = 1.0 / (2 * d)
    seen = set()
    for weight, member in ensemble.members:
        key = _translation_key(member)
        if key is None:
            raise ValueError("momentum method expects single-label unit members")
        ((pos, coins),) = member.amplitudes
        if len(set(pos)) != 1 or len(set(coins)) != 1:
            raise ValueError("momentum method expects co-located aligned members")
        if abs(weight - expected_weight) > 1e-9:
            raise ValueError("momentum method expects uniform weights 1/(2d)")
        seen.add((pos[0], coins[0]))
    if len(seen) != 2 * d or len(ensemble.members) != 2 * d:
        raise ValueError("momentum method expects one member per site and direction")


def _survival_momentum(ensemble: Ensemble, t_max: int) -> list[tuple[int, float]]:
    cfg = ensemble.config
    if cfg.particle_count != 2:
        raise ValueError("momentum method handles the two-particle mixture only")
    if cfg.free_coin != "identity":
        raise ValueError("momentum method requires the identity free coin")
    _require_uniform_pair_mixture(ensemble)
    d = cfg.site_count
    phi = cfg.interaction_phase
    stay, flip = aligned_pair_amplitudes(phi)

    diagonalizable = []
    degenerate = []
    for k in range(d):
        sin_t = phase_factor(Fraction(2 * k, d)).imag
        discriminant = flip * flip - (stay * sin_t) ** 2
        block = momentum_block(k, d, phi).matrix
        if abs(discriminant) <= _DEGENERACY_TOL:
            degenerate.append(block)
        else:
            diagonalizable.append(block)

    totals = np.zeros(t_max + 1)
    basis = [np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)]

    if diagonalizable:
        stack = np.stack(diagonalizable)
        eigenvalues, vectors = np.linalg.eig(stack)
        inverses = np.linalg.inv(vectors)
        coords = [inverses[:, :, 0], inverses[:, :, 1]]
        powers = np.ones_like(eigenvalues)
        for t in range(t_max + 1):
            for c in coords:
                recombined = np.einsum("kij,kj->ki", vectors, powers * c)
                totals[t] += float(np.sum(recombined.real**2 + recombined.imag**2))
            powers = powers * eigenvalues

    for block in degenerate:
        for e in basis:
            vec = e.copy()
            totals[0] += float(np.vdot(vec, vec).real)
            for t in range(1, t_max + 1):
                vec = block @ vec
                totals[t] += float(np.vdot(vec, vec).real)

    probabilities = totals / (2 * d)
    return [(t, float(p)) for t, p in enumerate(probabilities)]
