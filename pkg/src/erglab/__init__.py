"""Numerical laboratory for occupation-time and Kac-type limit laws of
null-recurrent dynamics: renewal shifts, intermittent interval maps, Ulam
transfer operators and regular-variation tools."""

from .dynamics import (
    AtRenewal, DelayTail, Harmonic, InverseLog, IntervalMap, LebesgueOn, PointMass,
    PurePower, RenewalShift, UniformOnA, doubling, lasota_yorke, make_map, orbit,
    parse_tail, renewal_u_sequence, return_time, thaler,
)
from .limits import AlphaLaw, cdf, pdf, reg_inc_beta, sample
from .processes import (
    TailTable, estimate_tail, exact_Zn_pmf, kac_pair, kac_values, laplace_product,
    sample_Zn, shift_identity_check, simulate_Zn, wandering_rate,
)
from .regvar import asymptotic_inverse, distort, erickson_scale, evaluate, power_log
from .stats import EmpiricalCDF, convergence_sweep, dkw_bound, ks_distance
from .transfer import Partition, build_ulam, check_uniform, check_uniformly_returning, push_density

__version__ = "0.1.0"
