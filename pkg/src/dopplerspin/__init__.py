"""Doppler shift factors between space/time splittings and the spinor norms they induce."""

from .clifford_rep import (GammaRep, Signature, SpinorMetric, build_gamma_rep, build_spinor_metric,
                           dirac_rep, multivector_action)
from .doppler import (DSFResult, MetricSpace, PolarParts, Splitting, connecting_map, dsf, dsf_lorentzian,
                      make_splitting, polar_decompose, qboost, random_splitting)
from .krein_core import (FundSym, KreinProductSpace, check_T_quadratic, fundamental_symmetry, krein_product,
                         norm, operator_norm, scalar_product)
from .spin_lift import LiftNormReport, SpinLift, ad_spectrum, lift, lift_norm, pseudo_unitary_spectrum_check

__version__ = "0.1.0"
