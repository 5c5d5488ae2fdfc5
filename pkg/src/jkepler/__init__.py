"""Verification workbench for simple euclidean Jordan algebras, their
conformal (TKK) algebras, classical and operator realizations, canonical-cone
geometry, and generalized Kepler spectra."""

from .algebra import (AlgebraSpec, Algebra, Element, JordanFrame, make_algebra,
                      SpecificationError, MismatchError, DomainError, EXACT, FLOAT)
from .conformal import (StrElement, CoElement, RootData, co_bracket, cartan_involution,
                        root_data, dim_str, dim_co, ConsistencyError)
from .phase import (PhasePoly, PhaseRational, poisson, poisson_poly, moments,
                    verify_poisson_tkk, classical_hamiltonian, classical_angular,
                    classical_lenz)
from .weyl import (WeylOp, PolyState, WallachParam, compose, commutator, apply_op,
                   acute_ops, gaussian_conjugate, verify_tkk_ops, he_grading_check,
                   lowest_weight_check, restriction_degeneracy, restriction_rank,
                   bound_spectrum)
from .cone import (ConePoint, PolarChart, cone_dim, sample_cone_point, radial_cone_point,
                   canonical_metric, co_metric, kepler_metric_crosscheck, lambda_u,
                   phi_value, r_laplace_apply, quantum_potential, polar_chart,
                   radial_density, measure_crosscheck, radial_exponent, integral_finite,
                   radial_exponent_continuous, truncated_integral_continuous)

__version__ = "0.1.0"
