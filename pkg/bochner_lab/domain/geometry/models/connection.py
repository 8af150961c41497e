"""
Levi-Civita formulas evaluated from a metric jet.

A jet is the triple (g, dg, ddg) with g[..., i, j] = g_ij,
dg[..., p, i, j] = d_p g_ij and ddg[..., p, q, i, j] = d_p d_q g_ij.
Curvature follows the convention R_abab > 0 on round spheres and
Ric_bd = g^ac R_abcd.
"""

from typing import Tuple

import numpy as np


def christoffel_from_jet(g_inv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """
    Christoffel symbols of the second kind.

    Args:
        g_inv: Inverse metric, shape (..., n, n)
        dg: First metric derivatives, shape (..., n, n, n)

    Returns:
        Gamma[..., k, i, j] = Gamma^k_ij
    """
    first_kind = 0.5 * (
        np.einsum("...ijl->...lij", dg)
        + np.einsum("...jil->...lij", dg)
        - dg
    )
    return np.einsum("...kl,...lij->...kij", g_inv, first_kind)


def riemann_from_jet(
    g: np.ndarray, ddg: np.ndarray, christoffel: np.ndarray
) -> np.ndarray:
    """Fully covariant Riemann tensor R_abcd."""
    second = 0.5 * (
        np.einsum("...bcad->...abcd", ddg)
        + np.einsum("...adbc->...abcd", ddg)
        - np.einsum("...acbd->...abcd", ddg)
        - np.einsum("...bdac->...abcd", ddg)
    )
    lowered = np.einsum("...ef,...fad->...ead", g, christoffel)
    quadratic = np.einsum("...ebc,...ead->...abcd", christoffel, lowered) - np.einsum(
        "...ebd,...eac->...abcd", christoffel, lowered
    )
    return second + quadratic


def ricci_from_riemann(g_inv: np.ndarray, riemann: np.ndarray) -> np.ndarray:
    ricci = np.einsum("...ac,...abcd->...bd", g_inv, riemann)
    return 0.5 * (ricci + np.swapaxes(ricci, -1, -2))


def scalar_from_ricci(g_inv: np.ndarray, ricci: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...ij->...", g_inv, ricci)


def space_form_riemann(g: np.ndarray, curvature: float) -> np.ndarray:
    """R_abcd = C (g_ac g_bd - g_ad g_bc)."""
    return curvature * (
        np.einsum("...ac,...bd->...abcd", g, g) - np.einsum("...ad,...bc->...abcd", g, g)
    )


def levi_civita_from_jet(
    g: np.ndarray, g_inv: np.ndarray, dg: np.ndarray, ddg: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Christoffel symbols, Riemann, Ricci and scalar curvature from a jet.

    Returns:
        Tuple of (christoffel, riemann, ricci, scalar)
    """
    christoffel = christoffel_from_jet(g_inv, dg)
    riemann = riemann_from_jet(g, ddg, christoffel)
    ricci = ricci_from_riemann(g_inv, riemann)
    return christoffel, riemann, ricci, scalar_from_ricci(g_inv, ricci)
