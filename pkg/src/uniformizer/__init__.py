"""Ramification invariants of totally ramified extensions of local fields and
coefficient congruences for minimal polynomials of perturbed uniformizers."""

from .basefield import (INF, BaseFieldConfig, ConfigMismatch, FieldElement, NotAUnit, ParseError,
                        PrecisionTooLow, congruent, parse_element)
from .extension import (EisensteinPoly, InseparabilityProfile, NotEisenstein, hasse_herbrand, indices,
                        indices_raw, lower_breaks, phi, phi_table, phi_tilde, validate_eisenstein, vbar)
from .perturb import (PerturbationSeries, QuotientElement, E_h_perturbed, M_mu, c_lambda,
                      minpoly_linear_algebra, minpoly_symmetric, quot_apply_series)
from .symcomb import (d_closed_form, d_coeff, enumerate_tilings, eta, oracle_psi_expansion,
                      partitions_of, psi_expansion, scale_partition)
from .theorems import (CongruenceReport, SpecialTerms, equiv_ell, kappa, predict_special, rho,
                       special_terms, verify_nochange, verify_special)

__version__ = "0.1.0"
