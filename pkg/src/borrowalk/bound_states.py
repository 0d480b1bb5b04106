"""Collectively moving multiplets and the alignment condition that selects them.

A bound multiplet is a uniform or alternating wave of all particles on one
site, dressed with a two-branch coin state beta|R..R> + gamma|L..L>.  The
walk step maps that coin state through the full contact product and a
momentum phase; the multiplet is exact exactly when the phased overlap has
modulus one.  Both a dense coin-space evaluation of that modulus and a
closed sector expansion are provided, plus a grid scan and the mixture left
behind after one particle is lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb

import numpy as np

from .evolution import StepOperator, interaction_group_matrix
from .lattice import (
    Ensemble,
    LEFT,
    LatticeConfig,
    PureState,
    RIGHT,
    inner_product,
    phase_factor,
)
from .parallel import ordered_map

_BRANCH_SIGN = {2: -1.0, 3: 1.0, 4: -1.0}


@dataclass(frozen=True)
class GhzSpec:
    """Coefficients of the two-branch coin state beta|R..R> + gamma|L..L>."""

    arity: int
    beta: complex
    gamma: complex

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("a two-branch coin state needs at least 2 particles")
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "gamma", complex(self.gamma))
        weight = abs(self.beta) ** 2 + abs(self.gamma) ** 2
        if abs(weight - 1.0) > 1e-12:
            raise ValueError("branch weights must sum to one")

    @classmethod
    def symmetric(cls, arity: int) -> "GhzSpec":
        s = 1.0 / math.sqrt(2.0)
        return cls(arity, s, s)

    @classmethod
    def antisymmetric(cls, arity: int) -> "GhzSpec":
        s = 1.0 / math.sqrt(2.0)
        return cls(arity, s, -s)


def ghz_coin(spec: GhzSpec) -> np.ndarray:
    """Dense coin-space vector with beta on all-right and gamma on all-left."""
    vec = np.zeros(1 << spec.arity, dtype=complex)
    vec[0] = spec.beta
    vec[-1] = spec.gamma
    return vec


def bound_state(config: LatticeConfig, arity: int, r: int = 0) -> PureState:
    """Bound multiplet of 2, 3 or 4 particles.

    r = 0 gives the uniform position wave (step eigenvalue +1 at resonance),
    r = 1 the sign-alternating wave (eigenvalue -1), which needs an even ring.
    The coin branch sign is fixed by the particle number: the pair and the
    quadruple bind on the antisymmetric branch combination, the triple on the
    symmetric one.
    """
    if arity not in _BRANCH_SIGN:
        raise ValueError("bound multiplets exist for 2, 3 or 4 particles only")
    if arity != config.particle_count:
        raise ValueError("arity must match the lattice particle count")
    if r not in (0, 1):
        raise ValueError("r selects the uniform (0) or alternating (1) wave")
    d = config.site_count
    if r == 1 and d % 2:
        raise ValueError("the alternating wave needs an even ring")
    sign = _BRANCH_SIGN[arity]
    amp = 1.0 / math.sqrt(2 * d)
    all_right = (RIGHT,) * arity
    all_left = (LEFT,) * arity
    amplitudes: dict = {}
    for x in range(d):
        parity = -1.0 if (r == 1 and x % 2 == 1) else 1.0
        site = (x,) * arity
        amplitudes[(site, all_right)] = complex(parity * amp)
        amplitudes[(site, all_left)] = complex(sign * parity * amp)
    return PureState(config, amplitudes)


@dataclass(frozen=True)
class EigenReport:
    is_eigenvector: bool
    eigenvalue: complex
    residual: float


def verify_eigenstate(state: PureState, projected: bool = False, tol: float = 1e-12) -> EigenReport:
    """Estimate the step eigenvalue as <s|A|s> and measure ||A s - lambda s||."""
    operator = StepOperator(state.config, projected)
    image = operator.apply(state)
    lam = inner_product(state, image)
    acc = 0.0
    for lab in set(image.amplitudes) | set(state.amplitudes):
        delta = image.amplitudes.get(lab, 0j) - lam * state.amplitudes.get(lab, 0j)
        acc += delta.real * delta.real + delta.imag * delta.imag
    residual = math.sqrt(acc)
    return EigenReport(residual <= tol, lam, residual)


def ghz_condition(arity: int, phi, ghz: GhzSpec, k: int = 0, d: int = 2) -> float:
    """Modulus of the phased overlap between the two-branch coin state and its
    image under the full contact product, evaluated densely.

    The value is 1 exactly when the multiplet is an eigenstate in momentum
    sector k.  It depends on k and d only through k/d, so the default ring of
    two sites already realizes both relevant sectors.
    """
    if arity != ghz.arity:
        raise ValueError("arity must match the coin state")
    if not 0 <= k < d:
        raise ValueError("momentum index must lie in [0, d)")
    image = interaction_group_matrix(arity, phi) @ ghz_coin(ghz)
    forward = phase_factor(Fraction(2 * k, d), -1)
    backward = phase_factor(Fraction(2 * k, d))
    value = ghz.beta.conjugate() * forward * image[0]
    value += ghz.gamma.conjugate() * backward * image[-1]
    return abs(value)


def ghz_condition_closed(arity: int, phi, ghz: GhzSpec, k: int = 0, d: int = 2) -> float:
    """Same modulus from the sector expansion over rotated-basis strings,
    grouped by their number of antisymmetric factors.

    Expanding the all-left branch in the rotated basis contributes
    gamma times (-1) to the power of that count, hence the sign below.
    """
    if arity != ghz.arity:
        raise ValueError("arity must match the coin state")
    if not 0 <= k < d:
        raise ValueError("momentum index must lie in [0, d)")
    forward = phase_factor(Fraction(2 * k, d), -1)
    backward = phase_factor(Fraction(2 * k, d))
    total = 0j
    scale = 1.0 / (1 << arity)
    for zeros in range(arity + 1):
        sign = -1.0 if zeros % 2 else 1.0
        weight = comb(arity, zeros) * scale
        bra = ghz.beta.conjugate() * forward + ghz.gamma.conjugate() * backward * sign
        ket = ghz.beta + ghz.gamma * sign
        total += weight * bra * ket * phase_factor(phi, comb(arity - zeros, 2))
    return abs(total)


@dataclass(frozen=True)
class ConditionPoint:
    arity: int
    phase: float | Fraction
    momentum_index: int
    ghz: GhzSpec
    value: float
    closed_form_value: float


def scan_conditions(
    arities,
    phases,
    k_values=(0, 1),
    signs=("symmetric", "antisymmetric"),
    d: int = 2,
    threshold: float = 1.0 - 1e-9,
) -> list[ConditionPoint]:
    """Grid search for parameter points where the alignment condition reaches one.

    Returns every grid point whose dense condition value meets the threshold,
    together with the closed-form value at the same point.
    """
    spec_of = {"symmetric": GhzSpec.symmetric, "antisymmetric": GhzSpec.antisymmetric}
    tasks = []
    for arity in arities:
        for name in signs:
            ghz = spec_of[name](arity)
            for phi in phases:
                for k in k_values:
                    tasks.append((arity, phi, k, ghz))

    def evaluate(task):
        arity, phi, k, ghz = task
        value = ghz_condition(arity, phi, ghz, k, d)
        if value < threshold:
            return None
        closed = ghz_condition_closed(arity, phi, ghz, k, d)
        return ConditionPoint(arity, phi, k, ghz, value, closed)

    return [point for point in ordered_map(evaluate, tasks) if point is not None]


def refine_condition_peak(
    arity: int,
    phi0: float,
    ghz: GhzSpec,
    k: int = 0,
    d: int = 2,
    halfwidth: float = 0.02,
    iterations: int = 60,
) -> tuple[float, float]:
    """Polish a grid hit by golden-section search of the condition value
    around phi0; returns the refined (phase, value)."""
    inv_golden = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = phi0 - halfwidth, phi0 + halfwidth
    a = hi - inv_golden * (hi - lo)
    b = lo + inv_golden * (hi - lo)
    fa = ghz_condition(arity, a, ghz, k, d)
    fb = ghz_condition(arity, b, ghz, k, d)
    for _ in range(iterations):
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + inv_golden * (hi - lo)
            fb = ghz_condition(arity, b, ghz, k, d)
        else:
            hi, b, fb = b, a, fa
            a = hi - inv_golden * (hi - lo)
            fa = ghz_condition(arity, a, ghz, k, d)
    best = 0.5 * (lo + hi)
    return best, ghz_condition(arity, best, ghz, k, d)


def remove_particle(state: PureState) -> Ensemble:
    """Trace out the last particle of a collectively bound state.

    Every stored label must put all particles on one site with one shared
    coin direction.  Conditioning on the removed particle then distinguishes
    the remaining labels completely, so the reduced state is the diagonal
    mixture of shortened labels weighted by squared amplitudes.
    """
    cfg = state.config
    n = cfg.particle_count
    if n < 2:
        raise ValueError("nothing to remove from a single particle")
    reduced_cfg = replace(cfg, particle_count=n - 1)
    members: list[tuple[float, PureState]] = []
    for pos, coins in sorted(state.amplitudes):
        if len(set(pos)) != 1 or len(set(coins)) != 1:
            raise ValueError("particle removal supports collectively bound states only")
        amp = state.amplitudes[(pos, coins)]
        weight = amp.real * amp.real + amp.imag * amp.imag
        if weight == 0.0:
            continue
        member = PureState(
            reduced_cfg, {(pos[:-1], coins[:-1]): complex(1.0)}, state.prune_epsilon
        )
        members.append((weight, member))
    return Ensemble(members)
