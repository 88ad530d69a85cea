"""Exact truncated q-series for quasimodular forms and MacMahon-type partition series."""
from __future__ import annotations

from .generators import eisenstein, euler_product, g2, lambert, theta, theta_xy
from .graded import GradedPoly, eval_poly, express_in_basis
from .partitions import family_sum, macmahon_c, macmahon_u, macmahon_u_star, macmahon_u_two
from .recursions import cc_table, cc_tilde_table, cv_table
from .series import TruncatedSeries
from .verify import VerificationReport, run_check, run_suite

__version__ = "0.1.0"
