"""First-order closed forms for the weakly coupled quartic oscillator.

Two families of scalar formulas live here, and the distinction matters.

``mean_photon_number`` and ``hoa_witness_d(1, ...)`` are exact first-order
perturbation coefficients: their deviation from the spectral oracle shrinks
as lam^2.  The remaining compact witnesses (``squeezing_witness_f``,
``hoa_witness_d`` at orders 2 and 3, ``delta_y1_squared``) trade that
exactness for a simple *sign structure*, which is their contract --
always-negative f at theta = pi/2, bunching for real input, coherence on
the t = 2*theta locus, and the theta = pi/2 specializations.  The
``first_order_*`` functions provide the exact coefficients instead; each
one has been validated against the exact-evolution oracle by the
lam-scaling protocol (residual falls two decades per decade of lam).

All formulas share two adjudicated phase products and one secular factor:

    P1 = sin(t - 2 theta) sin(t)
    P2 = sin(2 (t - 2 theta)) sin(2 t)
    S  = t sin(4 theta)              # grows linearly in t; never wrapped

Keeping every formula routed through these helpers localizes sign and phase
conventions to one place and preserves the exact floating-point zeros on the
t = 2*theta locus (the argument t - 2*theta is computed as written, so it is
exactly 0.0 there).

The first-order operator solution in the rotating frame is

    a_1(t) = a - (i lam / 8) [ 6 t a + 6 t a^dag a^2 + 6 e^{it} sin(t) a^dag^2 a
                               + e^{2it} sin(2t) a^dag^3 + 6 e^{it} sin(t) a^dag
                               + 2 e^{-it} sin(t) a^3 ],

obtained from the unitary sandwich U^dag a U with the first-order Dyson
propagator; the sign of every bracket term was adjudicated against the
oracle (the a^dag^3 coefficient in particular must be +e^{2it} sin 2t for
the lam-scaling test to hold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dynamics import MomentSet
from .fock import ModelParams, coherent_state, make_ladder_ops


@dataclass(frozen=True)
class ClosedFormInputs:
    """Scalar arguments of every closed form: (|alpha|, theta, lam, t)."""

    alpha_mag: float
    theta: float
    lam: float
    t: float

    def __post_init__(self):
        object.__setattr__(self, "alpha_mag", float(self.alpha_mag))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "t", float(self.t))
        if self.alpha_mag < 0.0:
            raise ValueError(f"alpha_mag must be >= 0, got {self.alpha_mag}")
        if self.lam < 0.0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")

    @classmethod
    def from_params(cls, params: ModelParams, t: float) -> "ClosedFormInputs":
        return cls(params.alpha_mag, params.theta, params.lam, t)


# ---------------------------------------------------------------------------
# shared bracket pieces (separately testable)
# ---------------------------------------------------------------------------

def phase_fundamental(theta: float, t: float) -> float:
    """P1 = sin(t - 2 theta) sin(t); exactly 0.0 on the t = 2*theta locus."""
    return math.sin(t - 2.0 * theta) * math.sin(t)


def phase_second_harmonic(theta: float, t: float) -> float:
    """P2 = sin(2 (t - 2 theta)) sin(2 t); exactly 0.0 at t = 2*theta."""
    return math.sin(2.0 * (t - 2.0 * theta)) * math.sin(2.0 * t)


def secular_factor(theta: float, t: float) -> float:
    """S = t sin(4 theta).  Linear growth is physical at first order; the
    argument is never reduced modulo 2*pi."""
    return t * math.sin(4.0 * theta)


# ---------------------------------------------------------------------------
# exact first-order coefficients (oracle-validated)
# ---------------------------------------------------------------------------

def mean_photon_correction(inputs: ClosedFormInputs) -> float:
    """First-order shift of <N(t)> away from |alpha|^2; exactly linear in lam."""
    r2 = inputs.alpha_mag**2
    p1 = phase_fundamental(inputs.theta, inputs.t)
    p2 = phase_second_harmonic(inputs.theta, inputs.t)
    return (inputs.lam / 4.0) * (2.0 * r2 * (2.0 * r2 + 3.0) * p1 + r2 * r2 * p2)


def mean_photon_number(inputs: ClosedFormInputs) -> float:
    """<N(t)> = |alpha|^2 + (lam/4)[2|a|^2(2|a|^2+3) P1 + |a|^4 P2].

    Exact first-order coefficient of the model (lam-scaling slope 2 against
    the oracle).
    """
    return inputs.alpha_mag**2 + mean_photon_correction(inputs)


def first_order_hoa_d_correction(order: int, inputs: ClosedFormInputs) -> float:
    """Exact first-order coefficient of d(order) = <N^(order+1)> - <N>^(order+1).

    order 1: (3 lam r^2 / 4) [ 2 (2 r^2 + 1) P1 + r^2 P2 ]
    order 2: (3 lam r^4 / 4) [ 2 (6 r^2 + 5) P1 + (3 r^2 + 2) P2 ]
    order 3: (3 lam / 4) [ 4 r^6 (6 r^2 + 7) P1 + 2 r^4 (3 r^4 + 4 r^2 + 1) P2 ]

    Each validated against the exact-evolution oracle (residual O(lam^2)).
    """
    r2 = inputs.alpha_mag**2
    p1 = phase_fundamental(inputs.theta, inputs.t)
    p2 = phase_second_harmonic(inputs.theta, inputs.t)
    if order == 1:
        return (3.0 * inputs.lam * r2 / 4.0) * (2.0 * (2.0 * r2 + 1.0) * p1 + r2 * p2)
    if order == 2:
        return (3.0 * inputs.lam * r2 * r2 / 4.0) * (
            2.0 * (6.0 * r2 + 5.0) * p1 + (3.0 * r2 + 2.0) * p2
        )
    if order == 3:
        return (3.0 * inputs.lam / 4.0) * (
            4.0 * r2**3 * (6.0 * r2 + 7.0) * p1
            + 2.0 * r2 * r2 * (3.0 * r2 * r2 + 4.0 * r2 + 1.0) * p2
        )
    raise ValueError(
        f"order must be 1, 2 or 3, got {order}: a first-order operator solution "
        "carries no information about antibunching of fourth or higher order"
    )


def first_order_hoa_d(order: int, inputs: ClosedFormInputs) -> float:
    """Exact first-order antibunching witness d(order); negative means
    order-``order`` antibunching."""
    return first_order_hoa_d_correction(order, inputs)


def first_order_squeezing_f_correction(inputs: ClosedFormInputs) -> float:
    """Exact first-order coefficient of f = (Delta Y1)^2 - <2N+1>:

        -(3 lam / 4) [ -4 r^2 (2 r^2 + 3) sin(t) sin(t + 2 theta)
                       - 4 r^4 S - (2 r^4 + 4 r^2 + 1) sin^2(2t) ]

    Differs from the compact form ``squeezing_witness_f`` only in the
    sign of the sin^2(2t) term; that sign is what the oracle fixes.
    """
    r2 = inputs.alpha_mag**2
    s = secular_factor(inputs.theta, inputs.t)
    s2t = math.sin(2.0 * inputs.t)
    return -(3.0 * inputs.lam / 4.0) * (
        -4.0 * r2 * (2.0 * r2 + 3.0) * math.sin(inputs.t) * math.sin(inputs.t + 2.0 * inputs.theta)
        - 4.0 * r2 * r2 * s
        - (2.0 * r2 * r2 + 4.0 * r2 + 1.0) * s2t * s2t
    )


def first_order_squeezing_f(inputs: ClosedFormInputs) -> float:
    return first_order_squeezing_f_correction(inputs)


def first_order_delta_y1_squared(inputs: ClosedFormInputs) -> float:
    """Exact first-order (Delta Y1)^2 = f + <2N + 1> with the validated f."""
    return (
        2.0 * inputs.alpha_mag**2
        + 1.0
        + first_order_squeezing_f_correction(inputs)
        + 2.0 * mean_photon_correction(inputs)
    )


# aliases: at these orders the compact and first-order forms coincide
first_order_mean_photon_number = mean_photon_number


# ---------------------------------------------------------------------------
# compact forms (sign-structure contract)
# ---------------------------------------------------------------------------

def delta_y1_correction(inputs: ClosedFormInputs) -> float:
    """lam-linear part of the compact (Delta Y1)^2; see ``delta_y1_squared``."""
    r2 = inputs.alpha_mag**2
    r4 = r2 * r2
    p1 = phase_fundamental(inputs.theta, inputs.t)
    p2 = phase_second_harmonic(inputs.theta, inputs.t)
    s = secular_factor(inputs.theta, inputs.t)
    s2t = math.sin(2.0 * inputs.t)
    q = 2.0 * r4 + 4.0 * r2 + 1.0
    return -(inputs.lam / 4.0) * (
        -4.0 * r2 * (2.0 * r2 + 3.0) * p1
        - 12.0 * r4 * s
        + 3.0 * q * s2t * s2t
        - 12.0 * r2 * (2.0 * r2 + 3.0) * math.sin(inputs.t) * math.sin(inputs.t + 2.0 * inputs.theta)
        - 2.0 * r4 * p2
    )


def delta_y1_squared(inputs: ClosedFormInputs) -> float:
    """Survey form of the squared-amplitude variance (Delta Y1)^2,
    Y1 = (a^dag^2 + a^2)/sqrt(2).

    Satisfies the identity f = (Delta Y1)^2 - <2N+1> with
    ``squeezing_witness_f`` and ``mean_photon_number`` exactly (algebraically;
    to rounding in floats).  For the oracle-validated variant see
    ``first_order_delta_y1_squared``.
    """
    return 2.0 * inputs.alpha_mag**2 + 1.0 + delta_y1_correction(inputs)


def squeezing_f_correction(inputs: ClosedFormInputs) -> float:
    """lam-linear value of the compact witness f; see ``squeezing_witness_f``."""
    r2 = inputs.alpha_mag**2
    s = secular_factor(inputs.theta, inputs.t)
    s2t = math.sin(2.0 * inputs.t)
    return -(3.0 * inputs.lam / 4.0) * (
        -4.0 * r2 * (2.0 * r2 + 3.0) * math.sin(inputs.t) * math.sin(inputs.t + 2.0 * inputs.theta)
        - 4.0 * r2 * r2 * s
        + (2.0 * r2 * r2 + 4.0 * r2 + 1.0) * s2t * s2t
    )


def squeezing_witness_f(inputs: ClosedFormInputs) -> float:
    """Survey witness f for squared-amplitude squeezing; f < 0 flags squeezing.

    Sign-structure contract: never positive at theta = pi/2 (see
    ``squeezing_witness_f_special``), oscillates with theta and t otherwise.
    Not the exact first-order coefficient -- the sin^2(2t) term enters with
    the opposite sign there; see ``first_order_squeezing_f``.
    """
    return squeezing_f_correction(inputs)


def squeezing_witness_f_special(inputs: ClosedFormInputs) -> float:
    """Survey witness f with the input phase pinned to theta = pi/2:

        f = -(3 lam / 4) [ 4 r^2 (2 r^2 + 3) sin^2 t + (2 r^4 + 4 r^2 + 1) sin^2 2t ]

    A sum of squares times a negative prefactor, hence always <= 0.  The
    ``theta`` field of ``inputs`` is ignored.
    """
    r2 = inputs.alpha_mag**2
    st = math.sin(inputs.t)
    s2t = math.sin(2.0 * inputs.t)
    return -(3.0 * inputs.lam / 4.0) * (
        4.0 * r2 * (2.0 * r2 + 3.0) * st * st
        + (2.0 * r2 * r2 + 4.0 * r2 + 1.0) * s2t * s2t
    )


def hoa_witness_d(order: int, inputs: ClosedFormInputs) -> float:
    """Survey witness d(order); d < 0 flags antibunching of that order.

    order 1: (3 lam r^2 / 4) [ 2 (2 r^2 + 1) P1 + r^2 P2 ]   (first-order exact)
    order 2: (3 lam r^4 / 2) [ P1 + P2 ]
    order 3: (3 lam r^4 / 4) P2

    Sign-structure contract shared by all three: sums of squares (hence
    bunching) for real input theta = 0 or pi, exact zero on the coherence
    locus t = 2*theta, and the theta = pi/2 specializations of
    ``hoa_witness_d_special``.  Orders 2 and 3 are not the exact first-order
    coefficients; see ``first_order_hoa_d``.
    """
    r2 = inputs.alpha_mag**2
    p1 = phase_fundamental(inputs.theta, inputs.t)
    p2 = phase_second_harmonic(inputs.theta, inputs.t)
    if order == 1:
        return (3.0 * inputs.lam * r2 / 4.0) * (2.0 * (2.0 * r2 + 1.0) * p1 + r2 * p2)
    if order == 2:
        return (3.0 * inputs.lam * r2 * r2 / 2.0) * (p1 + p2)
    if order == 3:
        return (3.0 * inputs.lam * r2 * r2 / 4.0) * p2
    raise ValueError(
        f"order must be 1, 2 or 3, got {order}: a first-order operator solution "
        "carries no information about antibunching of fourth or higher order"
    )


def hoa_witness_d_special(order: int, inputs: ClosedFormInputs) -> float:
    """theta = pi/2 specializations of the compact d(2) and d(3):

        d(2) = (3 lam r^4 / 2) [ -sin^2 t + sin^2 2t ]
        d(3) = (3 lam r^4 / 4) sin^2 2t

    d(3) never goes negative here, so third-order antibunching cannot
    coincide with the always-on squeezing of ``squeezing_witness_f_special``.
    The ``theta`` field of ``inputs`` is ignored.
    """
    r4 = inputs.alpha_mag**4
    st = math.sin(inputs.t)
    s2t = math.sin(2.0 * inputs.t)
    if order == 2:
        return (3.0 * inputs.lam * r4 / 2.0) * (-st * st + s2t * s2t)
    if order == 3:
        return (3.0 * inputs.lam * r4 / 4.0) * s2t * s2t
    raise ValueError(f"specialized forms exist for orders 2 and 3 only, got {order}")


# ---------------------------------------------------------------------------
# first-order operator solution as a matrix
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bracket_words(dim: int):
    """Constant matrices of the bracket monomials, cached per dimension."""
    a, adag, _ = make_ladder_ops(dim)
    words = (a, adag @ (a @ a), adag @ (adag @ a), adag @ (adag @ adag), adag, a @ (a @ a))
    for w in words:
        w.flags.writeable = False
    return words


def a_i_first_order(params: ModelParams, t: float) -> np.ndarray:
    """First-order rotating-frame annihilation operator a_1(t) as a matrix.

    a_1(t) = a - (i lam / 8) [ 6t a + 6t a^dag a^2 + 6 e^{it} sin t a^dag^2 a
                               + e^{2it} sin 2t a^dag^3 + 6 e^{it} sin t a^dag
                               + 2 e^{-it} sin t a^3 ]

    Reduces to a exactly at lam = 0 and at t = 0.
    """
    t = float(t)
    a, ada2, ad2a, ad3, adag, a3 = _bracket_words(params.dim)
    f = np.exp(1j * t) * math.sin(t)
    g = np.exp(2j * t) * math.sin(2.0 * t)
    fbar = np.exp(-1j * t) * math.sin(t)
    bracket = 6.0 * t * a + 6.0 * t * ada2 + 6.0 * f * ad2a + g * ad3 + 6.0 * f * adag + 2.0 * fbar * a3
    return a - (1j * params.lam / 8.0) * bracket


def first_order_moment_set(params: ModelParams, t: float) -> MomentSet:
    """Moments of the first-order operator over the initial coherent state.

    <a_1^dag^m a_1^n> is evaluated as (a_1^m psi0)^dag (a_1^n psi0); the
    operator already lives in the rotating frame, so no extra phases apply.
    Agrees with the exact oracle to O(lam^2) -- the dropped cross terms of
    the Dyson series.
    """
    b = a_i_first_order(params, t)
    psi0 = coherent_state(params.alpha, params.dim).amplitudes
    bk = [psi0]
    for _ in range(4):
        bk.append(b @ bk[-1])

    def mom(m: int, n: int) -> complex:
        return complex(np.vdot(bk[m], bk[n]))

    return MomentSet(
        a=mom(0, 1),
        a2=mom(0, 2),
        a4=mom(0, 4),
        ada=mom(1, 1),
        ada2=mom(1, 2),
        ad2a2=mom(2, 2),
        ada3=mom(1, 3),
        ad2a4=mom(2, 4),
        ad3a3=mom(3, 3),
        ad4a4=mom(4, 4),
    )
