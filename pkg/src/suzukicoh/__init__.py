"""Exact de Rham cohomology of the Suzuki curves over GF(2^(2m+1)).

Computes explicit bases of H^0(Omega^1), H^1(O) and H^1_dR for the
curves z^q + z = y^(q0) (y^q + y), the Cartier / Frobenius /
Verschiebung / torus actions on them, and the resulting mod-2
Dieudonne-module invariants (a-number, 2-rank, Ekedahl-Oort type,
indecomposable decomposition), together with the 2-modular
representation-theoretic bookkeeping that predicts the torus
eigenvalue multiplicities.
"""

__version__ = "0.1.0"

from .gf2m import FieldParams, field_f2, field_of_degree, make_field
from .suzuki_ff import CurveParams, RawFunc, ConeFunc, curve_params

__all__ = [
    "FieldParams",
    "make_field",
    "field_of_degree",
    "field_f2",
    "CurveParams",
    "RawFunc",
    "ConeFunc",
    "curve_params",
]
