"""Exact polynomial spaces cut out by finite differences along matrix rows,
their Hilbert functions, and Weyl permutohedron volume bases."""

from .diffops import OperatorContext, delta, dee, in_D, in_Delta, verify_expansion
from .geometricity import GeometricityCertificate, Status, decompose, is_geometric, round_trip
from .gradedspace import basis_degree, dual_quotient_dim, graded_basis, hilbert_report, membership_in_span
from .hull import hull_volume
from .linalg import QMatrix, all_principal_minors_nonzero, determinant, nullspace, principal_minor, rank
from .mpoly import MPoly, parse, render
from .rootsys import CartanSystem, cartan_matrix, parse_label, weyl_orbit, weyl_order
from .volumes import (VolumeBasis, face_volume_polynomial, permutohedron_volume, renormalize,
                      volume_basis, volume_polynomial)

__version__ = "0.1.0"
