"""Static spin system: Zeeman + quadrupole Hamiltonian of one spin-7/2.

A nucleus with spin 7/2 sits in a strong magnetic field along z (Zeeman
frequency omega0) and an axially symmetric electric field gradient whose
symmetry axis points along the polar angles (theta, phi) in the lab frame.
In units of hbar = 1 the static Hamiltonian is

    H = -omega0 * Iz + omegaQ * sum_a Q_a q_{-a},  a in {0, +-1, +-2}

    Q_0   = Iz^2 - I(I+1)/3          q_0   = 3 cos^2(theta) - 1
    Q_+-1 = Iz I_+-1 + I_+-1 Iz      q_+-1 = sin(theta)cos(theta) e^{+-i phi}
    Q_+-2 = I_+-1^2                  q_+-2 = (1/2) sin(2 theta) e^{+-2i phi}

omegaQ is normalized so that first-order theory gives level shifts
omegaQ * q0 * (m^2 - 21/4) exactly (see spectrum module).  The q_+-2
coefficient above is the default ("as-printed") form; the conventional
coefficient obtained by rotating an axial field-gradient tensor is
(1/2) sin^2(theta) e^{+-2i phi} and can be selected with
q2_form="sin-squared".
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .operators import SPIN, SpinOperators, make_spin_operators

Q2_FORMS = ("as-printed", "sin-squared")


@dataclass(frozen=True, eq=False)
class SpinSystem:
    """Physical parameters of the spin-7/2 system (frequencies in units of omega0)."""

    omega0: float = 1.0
    omegaQ: float = 0.01
    theta: float = 0.0
    phi: float = 0.0
    q2_form: str = "as-printed"
    ops: SpinOperators = field(default_factory=make_spin_operators)

    def __post_init__(self):
        if not self.omega0 > 0:
            raise InputError(f"omega0 must be positive, got {self.omega0}")
        if self.omegaQ < 0:
            raise InputError(f"omegaQ must be non-negative, got {self.omegaQ}")
        if not 0 <= self.theta <= np.pi:
            raise InputError(f"theta must lie in [0, pi], got {self.theta}")
        if self.q2_form not in Q2_FORMS:
            raise InputError(f"q2_form must be one of {Q2_FORMS}, got {self.q2_form!r}")


def quadrupole_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Quadrupole part omegaQ * sum_a Q_a q_{-a} as a complex 8x8 matrix."""
    ops = sys.ops
    iz, ip, im = ops.Iz, ops.Iplus, ops.Iminus
    eye = np.eye(ops.dimension)

    q0 = 3 * np.cos(sys.theta) ** 2 - 1
    qp1 = np.sin(sys.theta) * np.cos(sys.theta) * np.exp(1j * sys.phi)
    if sys.q2_form == "as-printed":
        q2_mag = 0.5 * np.sin(2 * sys.theta)
    else:
        q2_mag = 0.5 * np.sin(sys.theta) ** 2
    qp2 = q2_mag * np.exp(2j * sys.phi)

    big_q0 = iz @ iz - SPIN * (SPIN + 1) / 3 * eye
    big_qp1 = iz @ ip + ip @ iz
    big_qm1 = iz @ im + im @ iz
    big_qp2 = ip @ ip
    big_qm2 = im @ im

    # term for index a pairs Q_a with q_{-a} = conj(q_a)
    total = (big_q0 * q0
             + big_qp1 * np.conj(qp1) + big_qm1 * qp1
             + big_qp2 * np.conj(qp2) + big_qm2 * qp2)
    return sys.omegaQ * total


def build_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Full static Hamiltonian -omega0*Iz + quadrupole term (Hermitian 8x8)."""
    return -sys.omega0 * sys.ops.Iz + quadrupole_hamiltonian(sys)
