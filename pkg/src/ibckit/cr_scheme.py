"""The cross-ratio exchange and its desk-scale indistinguishability check.

The sender fixes three points whose cross-ratio with a fourth equals the
session invariant, optionally pushes the three through a secret Moebius
mask, and transmits them; the receiver unmasks and solves the linear
fourth-point equation.  The experiment measures whether masked transcripts
carry any trace of the invariant.
"""

from __future__ import annotations

import hmac
import json
import random
from dataclasses import dataclass, field

from scipy.stats import chi2 as _chi2

from .codec import derive_invariant, derive_mask, integrity_tag
from .errors import (
    DegenerateDenominator,
    DegenerateQuadruple,
    IntegrityFailure,
)
from .field import FieldElement, FieldParams
from .messages import CrMessage, Nonce, SharedSecret
from .projective import (
    INFINITY,
    MobiusMap,
    ProjPoint,
    apply_mask,
    cross_ratio,
    invert_mask,
    solve_fourth,
)

__all__ = [
    "generate",
    "recover",
    "indistinguishability_experiment",
    "ExperimentReport",
    "CoordinateStat",
    "MobiusMap",
    "ProjPoint",
    "INFINITY",
    "cross_ratio",
    "solve_fourth",
    "apply_mask",
    "invert_mask",
]


def _sample_instance(params: FieldParams, invariant: FieldElement, rng,
                     mask: MobiusMap | None):
    """Distinct points z1, z2, z3 with a solvable fourth-point equation,
    resampled until the masked images are all finite.  Returns
    (z1, z2, z3, z4, m1, m2, m3)."""
    while True:
        z1 = params.random_element(rng)
        z2 = params.random_element(rng)
        z3 = params.random_element(rng)
        if z1 == z2 or z1 == z3 or z2 == z3:
            continue
        try:
            z4 = solve_fourth(z1, z2, z3, invariant)
        except DegenerateDenominator:
            continue
        if mask is None:
            return z1, z2, z3, z4, z1, z2, z3
        images = [apply_mask(mask, z) for z in (z1, z2, z3)]
        if any(m.is_infinity for m in images):
            continue
        return z1, z2, z3, z4, images[0].value, images[1].value, images[2].value


def generate(secret: SharedSecret, nonce: Nonce, params: FieldParams, rng,
             use_mask: bool = True, use_check: bool = True,
             ) -> tuple[CrMessage, FieldElement]:
    """Build a cross-ratio message; returns (message, fourth_point).

    The fourth point never travels: it is the session value both sides end
    up sharing.
    """
    invariant = derive_invariant(secret, nonce, params)
    mask = derive_mask(secret, nonce, params) if use_mask else None
    _, _, _, z4, m1, m2, m3 = _sample_instance(params, invariant, rng, mask)
    check = integrity_tag("check", secret, nonce, [m1, m2, m3]) if use_check else None
    return CrMessage(m1, m2, m3, nonce, check), z4


def recover(secret: SharedSecret, msg: CrMessage, params: FieldParams,
            use_mask: bool = True) -> FieldElement:
    """Verify the optional tag, unmask, and solve for the fourth point."""
    if msg.check_tag is not None:
        expect = integrity_tag("check", secret, msg.nonce, [msg.m1, msg.m2, msg.m3])
        if not hmac.compare_digest(expect, msg.check_tag):
            raise IntegrityFailure("check tag mismatch: message tampered or wrong secret")
    invariant = derive_invariant(secret, msg.nonce, params)
    if use_mask:
        mask = derive_mask(secret, msg.nonce, params)
        points = [invert_mask(mask, m) for m in (msg.m1, msg.m2, msg.m3)]
        if any(pt.is_infinity for pt in points):
            raise DegenerateDenominator("unmasked point at infinity: message malformed")
        z1, z2, z3 = (pt.value for pt in points)
    else:
        z1, z2, z3 = msg.m1, msg.m2, msg.m3
    return solve_fourth(z1, z2, z3, invariant)


# --- Indistinguishability experiment ------------------------------------------


@dataclass
class CoordinateStat:
    """Two-sample chi-square comparison of one masked coordinate between the
    fixed-invariant and per-session-random-invariant arms."""

    index: int
    chi2: float
    dof: int
    p_value: float


@dataclass
class ExperimentReport:
    p: int
    sessions: int
    seed: int
    bins: int
    coordinates: list[CoordinateStat] = field(default_factory=list)
    control_fixed_distinct_cr: int = 0
    control_random_distinct_cr: int = 0
    control_distinguished: bool = False

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "N": self.sessions,
            "seed": self.seed,
            "bins": self.bins,
            "coordinates": [
                {"index": c.index, "chi2": c.chi2, "dof": c.dof, "p_value": c.p_value}
                for c in self.coordinates
            ],
            "control": {
                "fixed_distinct_cr": self.control_fixed_distinct_cr,
                "random_distinct_cr": self.control_random_distinct_cr,
                "distinguished": self.control_distinguished,
            },
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _uniform_mask(params: FieldParams, rng) -> MobiusMap:
    while True:
        a = params.random_element(rng)
        b = params.random_element(rng)
        c = params.random_element(rng)
        d = params.random_element(rng)
        if not (a * d - b * c).is_zero():
            return MobiusMap(a, b, c, d)


def _nonzero_element(params: FieldParams, rng) -> FieldElement:
    while True:
        x = params.random_element(rng)
        if not x.is_zero():
            return x


def _masked_arm(params: FieldParams, rng, sessions: int,
                fixed_invariant: FieldElement | None) -> list[tuple]:
    """Masked triples for one arm; a fresh uniform mask per session (per the
    indistinguishability statement, not the hash-derived protocol masks)."""
    out = []
    for _ in range(sessions):
        invariant = fixed_invariant or _nonzero_element(params, rng)
        mask = _uniform_mask(params, rng)
        _, _, _, _, m1, m2, m3 = _sample_instance(params, invariant, rng, mask)
        out.append((m1, m2, m3))
    return out


def _unmasked_arm(params: FieldParams, rng, sessions: int,
                  fixed_invariant: FieldElement | None) -> set[FieldElement]:
    """Cross-ratio values of completed unmasked quadruples (the checker
    completes each quadruple with the fourth point it can recover)."""
    values = set()
    for _ in range(sessions):
        invariant = fixed_invariant or _nonzero_element(params, rng)
        z1, z2, z3, z4, *_ = _sample_instance(params, invariant, rng, None)
        try:
            values.add(cross_ratio(z1, z2, z3, z4))
        except DegenerateQuadruple:  # z4 == z1 cannot happen; belt and braces
            continue
    return values


def _two_sample_chi2(counts_a: list[int], counts_b: list[int]) -> tuple[float, int, float]:
    stat = 0.0
    dof = -1
    for a, b in zip(counts_a, counts_b):
        total = a + b
        if total == 0:
            continue
        stat += (a - b) ** 2 / total
        dof += 1
    p_value = float(_chi2.sf(stat, dof)) if dof > 0 else 1.0
    return stat, max(dof, 0), p_value


def indistinguishability_experiment(p: int, sessions: int, seed: int) -> ExperimentReport:
    """Run the masked fixed-vs-random invariant comparison at desk scale.

    One arm holds the invariant fixed across `sessions` masked sessions, the
    other redraws it uniformly per session; each transmitted coordinate is
    binned into min(p, 64) equal-width buckets and compared with a
    two-sample chi-square.  A masked transcript leaking the invariant would
    show up as a small p-value.  The unmasked control completes each
    quadruple and must detect the constant cross-ratio in the fixed arm.
    """
    if p > 1 << 16:
        raise ValueError("experiment is desk-scale only: p <= 2^16")
    if sessions < 1000:
        raise ValueError("need at least 1000 sessions per arm")
    params = FieldParams(p)
    rng = random.Random(seed)
    fixed_invariant = _nonzero_element(params, rng)

    arm_fixed = _masked_arm(params, rng, sessions, fixed_invariant)
    arm_random = _masked_arm(params, rng, sessions, None)

    bins = min(p, 64)
    report = ExperimentReport(p=p, sessions=sessions, seed=seed, bins=bins)
    for coord in range(3):
        counts_fixed = [0] * bins
        counts_random = [0] * bins
        for triple in arm_fixed:
            counts_fixed[triple[coord].lift() * bins // p] += 1
        for triple in arm_random:
            counts_random[triple[coord].lift() * bins // p] += 1
        stat, dof, p_value = _two_sample_chi2(counts_fixed, counts_random)
        report.coordinates.append(CoordinateStat(coord + 1, stat, dof, p_value))

    fixed_crs = _unmasked_arm(params, rng, sessions, fixed_invariant)
    random_crs = _unmasked_arm(params, rng, sessions, None)
    report.control_fixed_distinct_cr = len(fixed_crs)
    report.control_random_distinct_cr = len(random_crs)
    report.control_distinguished = len(fixed_crs) == 1 and len(random_crs) > 1
    return report
