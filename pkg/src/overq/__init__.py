"""Exact q-series machinery for overpartition congruences modulo powers of 2."""

__version__ = "0.1.0"

from .bigseries import QSeries, series_invert, series_mul, series_pow, u_p, v_p, alternate_sign, reduce_mod2k
from .etaq import EtaQuotient, Cusp, eta, eta_expansion, newman_check, cusp_set, cusp_orders, ligozat_order
from .etaq import gordon_hughes_bound, normalize_cusp
from .hauptmodul import G8Polynomial, named, fit_in_basis, all_identities
from .valuation import t_table, u_table, l_tower, audit_valuations, deep_tower_audit
from .congruence import (
    overpartition_table,
    jacobi,
    verify_main_congruence,
    verify_corollary_congruence,
    scan_max_power,
    fit_garvan_morrow,
)
