"""Grass-Lattice: structured Grassmannian constellations for noncoherent SIMO links.

The constellation is the image of a Gray-labeled lattice in the unit
hypercube under the measure-preserving chain

    hypercube --theta1--> C^(T-1) Gaussian --theta2--> unit ball --theta3--> G(1, C^T)
"""

from .ballmap import chi2_cdf, radial_norm, radial_profile, theta2, theta2_inv, theta2_via_chi2
from .codec import (
    CodecConfig,
    all_words,
    constellation,
    decode,
    decode_soft,
    denoise,
    encode,
    gray_decode,
    gray_encode,
    lattice_points,
)
from .gaussmap import gauss_cdf, gauss_icdf, theta1, theta1_inv
from .grassmap import (
    big_theta,
    big_theta_inv,
    canonical_phase,
    chordal_distance,
    jacobian_closed_form,
    lift_subspace,
    sample_uniform_opball,
    theta3,
    theta3_inv,
)

__version__ = "0.1.0"


def grass_map(p):
    """Full chain hypercube (..., 2(T-1)) -> canonical unit vectors (..., T)."""
    return theta3(theta2(theta1(p)))


def grass_map_inv(x):
    """Inverse chain for canonical representatives (first entry real, positive)."""
    return theta1_inv(theta2_inv(theta3_inv(x)))
