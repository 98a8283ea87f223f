"""Single-atom comparison baseline and the strong-field approximation.

The one-atom resonant model is exactly solvable: starting excited against
field level n, the amplitudes are cos(T sqrt(n+1)) on |+, n> and
-i sin(T sqrt(n+1)) on |-, n+1>.  The two-atom symmetric case admits a
strong-field (alpha >> 1) approximation for the transverse coherence in
terms of the block frequencies w_n = sqrt(4n + 6); both live here as
references against the exact two-atom pipeline.
"""

from __future__ import annotations

import math

from .observables import BlochVector, entropy_squeezing
from .params import FockWeights


def jcm_bloch(weights: FockWeights, T: float) -> BlochVector:
    """Bloch vector of the single-atom model at scaled time T:

        sz = sum_n C_n^2 cos(2 T sqrt(n+1))
        sy = 2 sum_n C_n C_{n+1} cos(T sqrt(n+2)) sin(T sqrt(n+1))

    and sx = 0 for the excited-state start.
    """
    c = weights.c
    sz = math.fsum(
        c[n] * c[n] * math.cos(2.0 * T * math.sqrt(n + 1.0))
        for n in range(c.size)
    )
    sy = 2.0 * math.fsum(
        c[n] * c[n + 1]
        * math.cos(T * math.sqrt(n + 2.0)) * math.sin(T * math.sqrt(n + 1.0))
        for n in range(c.size - 1)
    )
    return BlochVector(sx=0.0, sy=sy, sz=sz)


def jcm_entropy_squeezing(weights: FockWeights, T: float) -> float:
    """Transverse entropy-squeezing witness of the single-atom baseline."""
    return entropy_squeezing(jcm_bloch(weights, T), "y")


def tjcm_harmonic_sy(weights: FockWeights, T: float) -> float:
    """Strong-field approximation to the transverse coherence of the
    symmetric two-atom model (g = 1, l = 1):

        sy ~ sum_n C_n C_{n+1} { sin[T(w_n - w_{n+1})] / 2
             + sin[T(w_n + w_{n+1}) / 2] cos[T(w_n - w_{n+1}) / 2] }

    with w_n = sqrt(4n + 6).  Valid when the photon distribution is sharply
    peaked (alpha >> 1); evaluable for any weights.
    """
    c = weights.c
    terms = []
    for n in range(c.size - 1):
        wn = math.sqrt(4.0 * n + 6.0)
        wn1 = math.sqrt(4.0 * n + 10.0)
        terms.append(
            c[n] * c[n + 1] * (
                0.5 * math.sin(T * (wn - wn1))
                + math.sin(T * (wn + wn1) / 2.0) * math.cos(T * (wn - wn1) / 2.0)
            )
        )
    return math.fsum(terms)
