"""Randomized finite-dimensional oracle for the operator-dimension identities.

Each signal space is identified with coordinates over one orthonormal basis
function per resolvable direction: a refinement atom of width w under an
array of half-length L contributes exactly 2*L*w basis functions, which must
be an integer (apply integer_rescale first if it is not).  The scattering
operators become complex matrices whose support is exactly the product of
the receive and transmit scattering intervals, with free entries drawn from
a standard complex normal so that every fully-supported submatrix has
maximal rank with probability one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .intervals import DirectionSet, refine
from .regions import ScatteringGeometry, _pos

DEFAULT_RANK_TOL = 1e-9

# relative interference leakage the zero-forcing construction must beat
LEAKAGE_TOL = 1e-8


class QuantizationError(ValueError):
    """A refinement atom carries a non-integer number of basis functions."""

    def __init__(self, space: str, atom: DirectionSet, dim: Fraction,
                 total: Fraction, suggested_scale: int):
        self.space = space
        self.atom = atom
        self.dim = dim
        self.total = total
        self.suggested_scale = suggested_scale
        lo, hi = atom.intervals[0]
        super().__init__(
            f"space {space}: atom [{lo}, {hi}) has non-integral dimension "
            f"{dim} (space total {total}); scaling all array lengths by "
            f"{suggested_scale} makes every atom dimension integral"
        )


class RankToleranceWarning(UserWarning):
    """A singular value sits near the rank threshold; rank is unreliable."""


def numerical_rank(matrix: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    """Count singular values above rank_tol relative to the largest.

    Warns when any singular value lies within a decade of the threshold:
    the spectral gap should be many orders of magnitude wide here, so a
    near-threshold value means the draw is ill-conditioned and a reseed is
    advisable.
    """
    if matrix.size == 0:
        return 0
    svals = np.linalg.svd(matrix, compute_uv=False)
    top = float(svals[0])
    if top == 0.0:
        return 0
    threshold = rank_tol * top
    near = np.sum((svals > threshold / 10) & (svals < threshold * 10))
    if near:
        warnings.warn(
            f"{int(near)} singular value(s) within a decade of the rank "
            f"threshold {threshold:.3e}; rank decision is ill-conditioned, "
            "resample with a different seed",
            RankToleranceWarning,
            stacklevel=2,
        )
    return int(np.sum(svals > threshold))


@dataclass(frozen=True)
class SpaceAllocation:
    """Basis-function counts per refinement atom of one signal space."""

    label: str
    length: Fraction
    atoms: tuple[DirectionSet, ...]
    dims: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def mask_within(self, support: DirectionSet) -> np.ndarray:
        """Boolean per basis function: True when its atom lies in ``support``."""
        flags = [atom.issubset(support) for atom in self.atoms]
        return np.repeat(np.asarray(flags, dtype=bool), self.dims)


@dataclass(frozen=True)
class BasisAllocation:
    t1: SpaceAllocation
    t2: SpaceAllocation
    r1: SpaceAllocation
    r2: SpaceAllocation


def _space_families(g: ScatteringGeometry):
    L = g.lengths
    return (
        ("t1", L.l_t1, [g.t11]),
        ("t2", L.l_t2, [g.t22, g.t12]),
        ("r1", L.l_r1, [g.r11, g.r12]),
        ("r2", L.l_r2, [g.r22]),
    )


def integer_scale(g: ScatteringGeometry) -> int:
    """Least positive integer length multiplier making all atom dims integral."""
    scale = 1
    for _, length, family in _space_families(g):
        for atom in refine(family):
            scale = math.lcm(scale, (2 * length * atom.measure()).denominator)
    return scale


def integer_rescale(g: ScatteringGeometry) -> tuple[ScatteringGeometry, int]:
    """Scale all four array lengths so every atom dimension is an integer.

    Dimension caps scale linearly with array length, so results on the
    scaled geometry translate back by dividing by the returned factor.
    """
    scale = integer_scale(g)
    return (g if scale == 1 else g.scaled(scale)), scale


def allocate_basis(g: ScatteringGeometry) -> BasisAllocation:
    """Integer basis allocation per refinement atom for all four spaces.

    The transmit space of each node spans its forward support united with
    its backscatter support; the totals therefore equal 2L times the union
    measure.  Raises QuantizationError naming the first offending atom when
    a dimension is non-integral, together with the smallest integer length
    scale that repairs the whole geometry.
    """
    spaces = {}
    for label, length, family in _space_families(g):
        atoms = tuple(refine(family))
        dims = []
        for atom in atoms:
            value = 2 * length * atom.measure()
            if value.denominator != 1:
                total = 2 * length * sum(
                    (a.measure() for a in atoms), Fraction(0)
                )
                raise QuantizationError(
                    label, atom, value, total, integer_scale(g)
                )
            dims.append(int(value))
        spaces[label] = SpaceAllocation(label, length, atoms, tuple(dims))
    return BasisAllocation(**spaces)


@dataclass(frozen=True)
class DiscretizedChannel:
    """Finite stand-in for the three scattering operators.

    Rows index receive basis functions over the full receive space of the
    corresponding receiver, columns index transmit basis functions over the
    full transmit space; entries outside the operator's scattering support
    are structurally zero.  Deterministic given (geometry, seed).
    """

    s11: np.ndarray
    s12: np.ndarray
    s22: np.ndarray
    allocation: BasisAllocation
    seed: int
    rank_tol: float = DEFAULT_RANK_TOL


def _sample_block(rng, row_space, row_support, col_space, col_support):
    out = np.zeros((row_space.total, col_space.total), dtype=np.complex128)
    rows = np.flatnonzero(row_space.mask_within(row_support))
    cols = np.flatnonzero(col_space.mask_within(col_support))
    if rows.size and cols.size:
        shape = (rows.size, cols.size)
        block = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        out[np.ix_(rows, cols)] = block / np.sqrt(2)
    return out


def sample_channel(
    g: ScatteringGeometry, seed: int, rank_tol: float = DEFAULT_RANK_TOL
) -> DiscretizedChannel:
    """Draw the three block-supported matrices for an integral geometry.

    The matrices are drawn in a fixed order from one generator, so a given
    seed reproduces them bit for bit.
    """
    alloc = allocate_basis(g)
    rng = np.random.default_rng(seed)
    s11 = _sample_block(rng, alloc.r1, g.r11, alloc.t1, g.t11)
    s12 = _sample_block(rng, alloc.r1, g.r12, alloc.t2, g.t12)
    s22 = _sample_block(rng, alloc.r2, g.r22, alloc.t2, g.t22)
    return DiscretizedChannel(s11, s12, s22, alloc, seed, rank_tol)


def _support_row_col_masks(ch: DiscretizedChannel, g: ScatteringGeometry):
    alloc = ch.allocation
    return {
        "s11": (alloc.r1.mask_within(g.r11), alloc.t1.mask_within(g.t11)),
        "s12": (alloc.r1.mask_within(g.r12), alloc.t2.mask_within(g.t12)),
        "s22": (alloc.r2.mask_within(g.r22), alloc.t2.mask_within(g.t22)),
    }


def corrupt_support(
    ch: DiscretizedChannel, g: ScatteringGeometry
) -> DiscretizedChannel:
    """Negative-control hook: force a rank identity to fail on one matrix.

    A rank-one plant raises the rank only when the planted row direction is
    outside the range and the planted column direction is outside the row
    space, so the corruption picks its cell (or falls back to deleting a
    supported row or column of a full-generic-rank matrix) accordingly.
    """
    masks = _support_row_col_masks(ch, g)
    for name in ("s12", "s11", "s22"):
        mat = getattr(ch, name)
        if mat.size == 0:
            continue
        row_mask, col_mask = masks[name]
        dead_rows = np.flatnonzero(~row_mask)
        dead_cols = np.flatnonzero(~col_mask)
        live = int(min(row_mask.sum(), col_mask.sum()))  # generic rank
        patched = mat.copy()
        if dead_rows.size and dead_cols.size:
            patched[dead_rows[0], dead_cols[0]] = 1.0
        elif dead_rows.size and live < mat.shape[1]:
            patched[dead_rows[0], 0] = 1.0
        elif dead_cols.size and live < mat.shape[0]:
            patched[0, dead_cols[0]] = 1.0
        elif int(col_mask.sum()) <= int(row_mask.sum()):
            patched[:, np.flatnonzero(col_mask)[0]] = 0.0
        else:
            patched[0, :] = 0.0
        return replace(ch, **{name: patched})
    raise ValueError("all matrices are empty; nothing to corrupt")


@dataclass(frozen=True)
class DimCheck:
    name: str
    expected: int
    observed: int

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def __str__(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        return (
            f"{self.name}: expected {self.expected}, "
            f"observed {self.observed} [{verdict}]"
        )


@dataclass(frozen=True)
class OperatorDimReport:
    checks: tuple[DimCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ValueError(f"expected integral dimension, got {x}")
    return int(x)


def verify_operator_dims(
    ch: DiscretizedChannel, g: ScatteringGeometry
) -> OperatorDimReport:
    """Compare numerical rank, nullity and column-space codimension with
    the closed forms.

    Rank of each operator is twice the smaller of its two length-weighted
    support widths; the nullity of the self-interference operator and the
    codimension of the uplink operator's range follow from the support
    overlaps.  All comparisons are integer equalities.
    """
    L = g.lengths
    tol = ch.rank_tol
    rank11 = numerical_rank(ch.s11, tol)
    rank12 = numerical_rank(ch.s12, tol)
    rank22 = numerical_rank(ch.s22, tol)

    exp_rank11 = _as_int(2 * min(L.l_t1 * g.t11.measure(),
                                 L.l_r1 * g.r11.measure()))
    exp_rank12 = _as_int(2 * min(L.l_t2 * g.t12.measure(),
                                 L.l_r1 * g.r12.measure()))
    exp_rank22 = _as_int(2 * min(L.l_t2 * g.t22.measure(),
                                 L.l_r2 * g.r22.measure()))
    exp_null12 = _as_int(
        2 * L.l_t2 * (g.t22 - g.t12).measure()
        + 2 * _pos(L.l_t2 * g.t12.measure() - L.l_r1 * g.r12.measure())
    )
    exp_codim11 = _as_int(
        2 * L.l_r1 * (g.r12 - g.r11).measure()
        + 2 * _pos(L.l_r1 * g.r11.measure() - L.l_t1 * g.t11.measure())
    )

    checks = (
        DimCheck("rank(s11)", exp_rank11, rank11),
        DimCheck("rank(s12)", exp_rank12, rank12),
        DimCheck("rank(s22)", exp_rank22, rank22),
        DimCheck("nullity(s12)", exp_null12, ch.s12.shape[1] - rank12),
        DimCheck("codim range(s11)", exp_codim11, ch.s11.shape[0] - rank11),
    )
    return OperatorDimReport(checks)


@dataclass(frozen=True)
class ZeroForcingResult:
    """Outcome of the corner-achieving zero-forcing construction."""

    d1: int
    d2: int
    p12_dim: int
    max_leakage: float

    @property
    def corner(self) -> tuple[int, int]:
        return (self.d1, self.d2)


def _count(svals: np.ndarray, rank_tol: float) -> int:
    if svals.size == 0 or float(svals[0]) == 0.0:
        return 0
    return int(np.sum(svals > rank_tol * float(svals[0])))


def zero_forcing_corner(
    ch: DiscretizedChannel, g: ScatteringGeometry | None = None
) -> ZeroForcingResult:
    """Corner point achieved by transmitter-side spatial isolation.

    Flow 1 takes its full dimension, d1 = rank(s11).  Flow 2 then signals
    inside the preimage of range(s11)-perp under s12: the nullspace of s12
    plus minimum-norm preimages of the overlap between range(s11)-perp and
    range(s12).  d2 is the rank of s22 restricted to that subspace, which
    caps it by the downlink receive dimension automatically.

    The leakage figure is the largest interference energy any constructed
    transmit basis vector deposits onto range(s11), relative to the
    spectral norm of s12.
    """
    if g is not None:
        alloc = allocate_basis(g)
        if (alloc.r1.total, alloc.t1.total) != ch.s11.shape or (
            alloc.r2.total,
            alloc.t2.total,
        ) != ch.s22.shape:
            raise ValueError("channel was not sampled from this geometry")

    tol = ch.rank_tol
    n2 = ch.s12.shape[1]

    u11, sv11, _ = np.linalg.svd(ch.s11)
    r1 = _count(sv11, tol)
    desired = u11[:, :r1]          # range(s11)
    clear = u11[:, r1:]            # range(s11)-perp: interference-free

    u12, sv12, v12h = np.linalg.svd(ch.s12)
    r12 = _count(sv12, tol)
    nullspace = v12h[r12:, :].conj().T
    reach = u12[:, :r12]           # range(s12)

    overlap = 0
    if clear.shape[1] and r12:
        joint = np.hstack([clear, reach])
        overlap = clear.shape[1] + r12 - numerical_rank(joint, tol)

    pieces = [nullspace]
    if overlap:
        _, _, vmh = np.linalg.svd(clear.conj().T @ reach)
        targets = reach @ vmh[:overlap, :].conj().T
        # purify: keep only the interference-free component before solving
        targets = clear @ (clear.conj().T @ targets)
        preimages, *_ = np.linalg.lstsq(ch.s12, targets, rcond=None)
        pieces.append(preimages)

    stacked = np.hstack([p for p in pieces if p.size]) if any(
        p.size for p in pieces
    ) else np.zeros((n2, 0), dtype=np.complex128)
    if stacked.shape[1]:
        ub, sb, _ = np.linalg.svd(stacked, full_matrices=False)
        p12 = ub[:, : _count(sb, tol)]
    else:
        p12 = stacked

    d2 = numerical_rank(ch.s22 @ p12, tol) if p12.shape[1] else 0

    max_leakage = 0.0
    norm12 = float(sv12[0]) if sv12.size else 0.0
    if p12.shape[1] and norm12 > 0.0 and r1:
        leak = desired.conj().T @ (ch.s12 @ p12)
        # p12 columns are orthonormal, so per-column norms are already
        # relative to the transmit vector norm
        max_leakage = float(np.linalg.norm(leak, axis=0).max() / norm12)

    return ZeroForcingResult(
        d1=r1, d2=int(d2), p12_dim=p12.shape[1], max_leakage=max_leakage
    )


def zf_case_applies(g: ScatteringGeometry) -> bool:
    """True when the single-case corner construction is provably exact.

    The construction reaches the p' corner whenever flow 1 is limited at
    its own transmitter, the T2 end of the backscatter link dominates the
    R1 end, the forward/backscatter overlap at T2 is wide enough to absorb
    the residual interference budget, and the downlink receiver can carry
    the resulting dimension count.  Outside these conditions the
    construction is still a valid inner point but may sit strictly below
    the corner.
    """
    L = g.lengths
    a = L.l_t1 * g.t11.measure()
    b = L.l_r1 * g.r11.measure()
    d = L.l_r2 * g.r22.measure()
    e = L.l_t2 * g.t12.measure()
    f = L.l_r1 * g.r12.measure()
    q = L.l_t2 * (g.t22 & g.t12).measure()
    u = L.l_r1 * (g.r12 - g.r11).measure()
    p = L.l_t2 * (g.t22 - g.t12).measure()
    if a < b or e < f:
        return False
    if q < 2 * (_pos(e - f) + u):
        return False
    d_t2 = 2 * p + 2 * min(q, _pos(e - f) + u)
    return d_t2 <= 2 * d
