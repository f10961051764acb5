"""Projector algebra and idealized resonant-pulse propagators.

A hard resonant pulse addressing the level pair (m, n), with E_m > E_n,
rotation angle a and RF phase f produces (in the energy eigenbasis)

    V_X(a_mn, f) = 1 + (P_nn + P_mm)(cos(a/2) - 1)
                     + i (P_mn e^{if} + P_nm e^{-if}) sin(a/2)

where P_mn is the matrix unit |m><n|.  A pulse along the Y coil axis is
the same operator with f replaced by f + pi/2.  The rotation angle obeys
a = 2 (t - t0) gammaHrf |<n|Ix|m>|, which pulse_duration inverts.

Multi-frequency pulses drive several level pairs at once; as long as the
pairs are disjoint the total propagator is the (order-independent) product
of the per-tone propagators.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ForbiddenTransitionError, InputError, OverlappingTonesError
from .operators import DIM


@dataclass(frozen=True, eq=False)
class Projector:
    """Matrix unit P_mn: all entries zero except a single 1 at (m, n)."""

    m: int
    n: int
    matrix: np.ndarray


def projector(m: int, n: int) -> Projector:
    """P_mn with P_kl P_mn = delta_lm P_kn and P_mn^dag = P_nm (exact)."""
    if not (0 <= m < DIM and 0 <= n < DIM):
        raise InputError(f"projector indices must lie in 0..{DIM - 1}, got ({m}, {n})")
    mat = np.zeros((DIM, DIM), dtype=complex)
    mat[m, n] = 1.0
    mat.setflags(write=False)
    return Projector(m=m, n=n, matrix=mat)


AXES = ("X", "Y")


@dataclass(frozen=True)
class Tone:
    """One resonant tone: level pair, rotation angle, RF phase and coil axis."""

    upper: int
    lower: int
    angle: float
    phase: float = 0.0
    axis: str = "X"

    def __post_init__(self):
        if not (0 <= self.upper < DIM and 0 <= self.lower < DIM):
            raise InputError(f"tone levels must lie in 0..{DIM - 1}, "
                             f"got ({self.upper}, {self.lower})")
        if self.upper == self.lower:
            raise InputError("tone must address two distinct levels")
        if not np.isfinite(self.angle):
            raise InputError(f"tone angle must be finite, got {self.angle}")
        if self.axis not in AXES:
            raise InputError(f"tone axis must be one of {AXES}, got {self.axis!r}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.upper, self.lower)


@dataclass(frozen=True)
class PulseParams:
    """Drive amplitude gammaHrf (gamma * H_rf, angular frequency units) and start time."""

    gammaHrf: float
    t0: float = 0.0

    def __post_init__(self):
        if not self.gammaHrf > 0:
            raise InputError(f"gammaHrf must be positive, got {self.gammaHrf}")


def pulse_propagator(tone: Tone) -> np.ndarray:
    """Idealized unitary propagator of one resonant tone (8x8 complex)."""
    m, n = tone.upper, tone.lower
    f_eff = tone.phase + (np.pi / 2 if tone.axis == "Y" else 0.0)
    half = tone.angle / 2
    v = (np.eye(DIM, dtype=complex)
         + (projector(n, n).matrix + projector(m, m).matrix) * (np.cos(half) - 1)
         + 1j * (projector(m, n).matrix * np.exp(1j * f_eff)
                 + projector(n, m).matrix * np.exp(-1j * f_eff)) * np.sin(half))
    return v


def multi_tone_propagator(tones) -> np.ndarray:
    """Propagator of simultaneous tones on pairwise-disjoint level pairs.

    Disjoint supports make the factors commute, so the product order does
    not matter; overlapping pairs are rejected because the product form
    would silently misrepresent the physics there.
    """
    seen: set[int] = set()
    for tone in tones:
        for level in (tone.upper, tone.lower):
            if level in seen:
                raise OverlappingTonesError(
                    f"level {level} is addressed by more than one simultaneous tone")
            seen.add(level)
    u = np.eye(DIM, dtype=complex)
    for tone in tones:
        u = pulse_propagator(tone) @ u
    return u


def pulse_duration(angle: float, params: PulseParams, ix_element: float) -> float:
    """Pulse length t - t0 realizing `angle` on a pair with |<n|Ix|m>| = ix_element."""
    if ix_element == 0:
        raise ForbiddenTransitionError(
            "forbidden transition: |<n|Ix|m>| = 0 implies infinite pulse duration "
            "(longer pulses or a stronger RF field are needed as the element -> 0)")
    return angle / (2 * params.gammaHrf * ix_element)
