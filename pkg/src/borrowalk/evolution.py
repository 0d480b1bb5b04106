"""One walk step: contact coin on co-located groups, then a coin-conditioned shift.

The contact operator on a group of m co-located particles is the product of
the phased pair projector over all m(m-1)/2 pairs.  In the rotated coin basis
built from (|R>+|L>)/sqrt(2) and (|R>-|L>)/sqrt(2) that product is diagonal:
a basis string whose symmetric factors number p picks up exp(i*phi*p(p-1)/2).
The dense group matrix is assembled once per (m, phi) from this diagonal.
An explicit product of embedded pair operators is kept alongside as an
independent route for cross-checks; the step itself never uses it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import comb

import numpy as np

from .lattice import (
    LEFT,
    Label,
    LatticeConfig,
    PureState,
    RIGHT,
    phase_factor,
    prune_amplitudes,
)

_SQRT_HALF = 1.0 / math.sqrt(2.0)

# single-coin change of basis, scaled by sqrt(2) so every entry is +-1;
# row 0 is the antisymmetric combination, row 1 the symmetric one,
# columns ordered (R, L)
_SIGN_BASIS = np.array([[1.0, -1.0], [1.0, 1.0]])


def grover_pair_matrix(phi) -> np.ndarray:
    """Contact operator for one pair: identity plus a phased projector onto
    the doubly symmetric coin combination.  Basis order (RR, RL, LR, LL)."""
    sym_pair = np.full(4, 0.5)
    return np.eye(4, dtype=complex) + (phase_factor(phi) - 1.0) * np.outer(sym_pair, sym_pair)


@lru_cache(maxsize=None)
def _sector_weights(m: int) -> np.ndarray:
    """Integer weight matrix per symmetric-factor count p, built from the
    unnormalised change of basis.  The group operator is the contraction
    sum_p exp(i*phi*p(p-1)/2) * weights[p] / 2**m."""
    dim = 1 << m
    transform = reduce(np.kron, [_SIGN_BASIS] * m)
    counts = np.array([bin(row).count("1") for row in range(dim)])
    weights = np.zeros((m + 1, dim, dim))
    for p in range(m + 1):
        rows = transform[counts == p]
        weights[p] = rows.T @ rows
    weights.setflags(write=False)
    return weights


@lru_cache(maxsize=None)
def interaction_group_matrix(m: int, phi) -> np.ndarray:
    """Coin operator for m co-located particles, i.e. the full pair product.

    Entries are assembled sector by sector so each phase value multiplies an
    exact integer weight; sums that cancel algebraically then cancel exactly
    in floating point as well, which keeps long products of this matrix from
    drifting at right-angle phases."""
    if m < 1:
        raise ValueError("group size must be at least 1")
    weights = _sector_weights(m)
    phases = np.array([phase_factor(phi, comb(p, 2)) for p in range(m + 1)])
    matrix = np.tensordot(phases, weights, axes=1) / (1 << m)
    matrix.setflags(write=False)
    return matrix


def pairwise_interaction_matrix(m: int, phi, pair_order=None) -> np.ndarray:
    """Same operator as interaction_group_matrix, built as an ordered product
    of embedded pair operators.  Retained as an independent cross-check route;
    pair_order may permute the (commuting) factors."""
    if m < 2:
        raise ValueError("a pair product needs at least 2 particles")
    pairs = list(pair_order) if pair_order is not None else [
        (i, j) for i in range(m) for j in range(i + 1, m)
    ]
    pair_op = grover_pair_matrix(phi)
    total = np.eye(1 << m, dtype=complex)
    for i, j in pairs:
        total = _embed_pair(pair_op, i, j, m) @ total
    return total


def _embed_pair(pair_op: np.ndarray, i: int, j: int, m: int) -> np.ndarray:
    dim = 1 << m
    out = np.zeros((dim, dim), dtype=complex)
    bi, bj = m - 1 - i, m - 1 - j
    mask = ~((1 << bi) | (1 << bj))
    for col in range(dim):
        ci = (col >> bi) & 1
        cj = (col >> bj) & 1
        base = col & mask
        sub_col = (ci << 1) | cj
        for ri in (0, 1):
            for rj in (0, 1):
                w = pair_op[(ri << 1) | rj, sub_col]
                if w == 0:
                    continue
                out[base | (ri << bi) | (rj << bj), col] += w
    return out


def free_coin_matrix(config: LatticeConfig) -> np.ndarray | None:
    """2x2 coin for particles alone at their site; None when it is the identity."""
    coin = config.free_coin
    if coin == "identity":
        return None
    if coin == "hadamard":
        return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _SQRT_HALF
    theta, xi, zeta = coin
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [cmath.exp(1j * xi) * c, cmath.exp(1j * zeta) * s],
            [-cmath.exp(-1j * zeta) * s, cmath.exp(-1j * xi) * c],
        ]
    )


def apply_shift(state: PureState) -> PureState:
    """Move every particle one site along its coin direction (periodic)."""
    d = state.config.site_count
    out: dict[Label, complex] = {}
    for (pos, coins), amp in state.amplitudes.items():
        moved = tuple((x + c) % d for x, c in zip(pos, coins))
        out[(moved, coins)] = amp
    return PureState(state.config, out, state.prune_epsilon)


def apply_interaction(state: PureState) -> PureState:
    """Apply the coin stage: every co-located group gets the contact pair
    product, every lone particle gets the configured free coin."""
    cfg = state.config
    phi = cfg.interaction_phase
    free = free_coin_matrix(cfg)
    out: dict[Label, complex] = {}
    for (pos, coins), amp in state.amplitudes.items():
        sites: dict[int, list[int]] = {}
        for idx, x in enumerate(pos):
            sites.setdefault(x, []).append(idx)
        factors = []
        for members in sites.values():
            if len(members) >= 2:
                factors.append((members, interaction_group_matrix(len(members), phi)))
            elif free is not None:
                factors.append((members, free))
        if not factors:
            out[(pos, coins)] = out.get((pos, coins), 0j) + amp
            continue
        branches = [(coins, amp)]
        for members, matrix in factors:
            width = len(members)
            dim = 1 << width
            next_branches = []
            for cns, a in branches:
                col = 0
                for idx in members:
                    col = (col << 1) | (0 if cns[idx] == RIGHT else 1)
                column = matrix[:, col]
                for row in range(dim):
                    w = column[row]
                    if w == 0:
                        continue
                    new_coins = list(cns)
                    for offset, idx in enumerate(members):
                        bit = (row >> (width - 1 - offset)) & 1
                        new_coins[idx] = LEFT if bit else RIGHT
                    next_branches.append((tuple(new_coins), a * w))
            branches = next_branches
        for cns, a in branches:
            key = (pos, cns)
            out[key] = out.get(key, 0j) + a
    return PureState(cfg, prune_amplitudes(out, state.prune_epsilon), state.prune_epsilon)


def step(state: PureState) -> PureState:
    """One full walk step: coin stage followed by the conditional shift."""
    return apply_shift(apply_interaction(state))


def project_bound(state: PureState) -> PureState:
    """Keep only amplitudes where all particles share one site and one coin
    direction, the subspace the bound multiplets move in."""
    kept = {
        lab: amp
        for lab, amp in state.amplitudes.items()
        if len(set(lab[0])) == 1 and len(set(lab[1])) == 1
    }
    return PureState(state.config, kept, state.prune_epsilon)


def projected_step(state: PureState) -> PureState:
    """Walk step followed by the collective projection; a contraction."""
    return project_bound(step(state))


@dataclass(frozen=True)
class StepOperator:
    """Full step (norm preserving) or step plus projection (contracting)."""

    config: LatticeConfig
    projected: bool = False

    def apply(self, state: PureState) -> PureState:
        if state.config != self.config:
            raise ValueError("state does not match this operator's lattice")
        return projected_step(state) if self.projected else step(state)
