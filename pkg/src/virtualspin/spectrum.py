"""Energy levels and eigenstates, perturbative and exact.

The eight eigenstates are labeled M = 0..7 via m = M - 7/2, so M = 0 is
the m = -7/2 level (highest energy for omegaQ -> 0) and M = 7 is m = +7/2
(lowest).  First-order perturbation theory in the quadrupole coupling
gives

    eps_m = -omega0 * m + omegaQ * q0 * (m^2 - 21/4)
    |psi_m> = |chi_m> + sum_{k != m} <chi_k|H_Q|chi_m> / (omega0 (k - m)) |chi_k>

with |chi_m> the Zeeman (Iz) eigenstates.  The first-order vectors are not
exactly orthonormal; they are symmetrically (Loewdin) orthonormalized so no
level is privileged.  The exact spectrum comes from dense diagonalization
and is relabeled by maximal overlap against the perturbative states, which
keeps the M labels attached to the physical levels rather than to an energy
ordering.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import AmbiguousLabelingError
from .operators import DIM, M_VALUES, make_spin_operators
from .system import SpinSystem, build_hamiltonian, quadrupole_hamiltonian

PERTURBATIVE = "perturbative-first-order"
EXACT = "exact"

# above this coupling ratio first-order theory degrades noticeably
PERTURBATIVE_RATIO_LIMIT = 0.1

# a label assignment is trusted only if the best overlap beats the
# runner-up by this factor
OVERLAP_DOMINANCE = 2.0


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eight labeled energy levels and eigenvectors of a SpinSystem.

    states[:, M] is the eigenvector for label M; energies[M] its energy.
    """

    energies: np.ndarray
    states: np.ndarray
    method: str
    warning: str | None = None


def perturbative_spectrum(sys: SpinSystem) -> Spectrum:
    """First-order energies and (orthonormalized) first-order eigenvectors.

    Returns a Spectrum with a diagnostic warning when omegaQ/omega0 >= 0.1,
    where first-order theory is unreliable; the values are still computed.
    """
    m = M_VALUES
    q0 = 3 * np.cos(sys.theta) ** 2 - 1
    energies = -sys.omega0 * m + sys.omegaQ * q0 * (m ** 2 - 21 / 4)

    hq = quadrupole_hamiltonian(sys)
    raw = np.eye(DIM, dtype=complex)
    denom = sys.omega0 * (m[:, None] - m[None, :])  # omega0 * (k - m)
    np.fill_diagonal(denom, 1.0)
    raw = raw + hq * (1.0 / denom) * (1 - np.eye(DIM))

    states = _loewdin_orthonormalize(raw)

    warning = None
    ratio = sys.omegaQ / sys.omega0
    if ratio >= PERTURBATIVE_RATIO_LIMIT:
        warning = (f"omegaQ/omega0 = {ratio:.3g} >= {PERTURBATIVE_RATIO_LIMIT}: "
                   "first-order perturbation theory is unreliable here")
    return Spectrum(energies=energies, states=states,
                    method=PERTURBATIVE, warning=warning)


def exact_spectrum(sys: SpinSystem) -> Spectrum:
    """Dense eigendecomposition of the static Hamiltonian, relabeled M = 0..7.

    Labels are assigned by maximal overlap with the perturbative states
    (not by energy sort), so they track the adiabatic continuation of each
    level.  Raises AmbiguousLabelingError when, for some perturbative state,
    the two largest overlaps differ by less than a factor of two; this
    signals a level crossing / strong mixing regime where labels would be
    arbitrary.
    """
    h = build_hamiltonian(sys)
    evals, evecs = np.linalg.eigh(h)

    reference = perturbative_spectrum(sys).states
    overlap = np.abs(reference.conj().T @ evecs)  # overlap[M, j]

    rows, cols = linear_sum_assignment(-(overlap ** 2))
    assignment = np.empty(DIM, dtype=int)
    assignment[rows] = cols

    for m_label in range(DIM):
        best = overlap[m_label, assignment[m_label]]
        rest = np.delete(overlap[m_label], assignment[m_label]).max()
        if best < OVERLAP_DOMINANCE * rest:
            raise AmbiguousLabelingError(
                f"cannot label exact eigenstates: perturbative state M={m_label} "
                f"overlaps two exact states at ratio {best:.3f}:{rest:.3f} "
                f"(< {OVERLAP_DOMINANCE}:1); omegaQ/omega0 = "
                f"{sys.omegaQ / sys.omega0:.3g} is a level-mixing regime")

    energies = evals[assignment]
    states = evecs[:, assignment]
    # fix gauge: overlap with the perturbative reference is real positive
    phases = np.angle(np.sum(reference.conj() * states, axis=0))
    states = states * np.exp(-1j * phases)[None, :]
    return Spectrum(energies=energies, states=states, method=EXACT)


@dataclass(frozen=True)
class Transition:
    """One level pair: labels, frequency and drive matrix element."""

    upper: int          # smaller label = higher energy in the normal regime
    lower: int
    omega: float        # E_upper - E_lower
    ix_element: float   # |<psi_lower| Ix |psi_upper>|
    allowed: bool       # delta m = +-1 ladder transition

    @property
    def flag(self) -> str:
        return "allowed" if self.allowed else "weak/forbidden"


def transition_table(spec: Spectrum) -> list[Transition]:
    """All 28 level pairs with transition frequency and |Ix| matrix element.

    The seven delta-m = +-1 pairs are flagged allowed; quadrupole mixing
    makes the remaining ones weakly allowed at theta != 0.
    """
    ix = make_spin_operators().Ix
    elements = np.abs(spec.states.conj().T @ ix @ spec.states)
    rows = []
    for upper in range(DIM):
        for lower in range(upper + 1, DIM):
            rows.append(Transition(
                upper=upper,
                lower=lower,
                omega=float(spec.energies[upper] - spec.energies[lower]),
                ix_element=float(elements[upper, lower]),
                allowed=(lower - upper == 1),
            ))
    return rows


def _loewdin_orthonormalize(vectors: np.ndarray) -> np.ndarray:
    """Symmetric orthonormalization: A (A^dag A)^{-1/2}."""
    s = vectors.conj().T @ vectors
    w, v = np.linalg.eigh(s)
    s_inv_sqrt = (v * (w ** -0.5)[None, :]) @ v.conj().T
    return vectors @ s_inv_sqrt
