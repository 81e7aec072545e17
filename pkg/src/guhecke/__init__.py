"""Exact computation of the Hecke polynomial of GU(n-1,1) at an inert
prime, its certified factorization, and the classification and slope
theory of the associated unitary Dieudonne modules and spaces of
signature (n-1,1)."""

from .dieudonne import (ClassificationError, DieudonneModuleZ, DieudonneSpace,
                        IsocrystalShape, NoMatchError, NotBT1Error,
                        SlopeMultiset, StratumRow, basechange, check_bt1,
                        classify_type, direct_sum, fingerprint,
                        isocrystal_shape, make_B, make_SS, model_space,
                        newton_slopes, random_basechange, signature,
                        strata_dims)
from .finitefield import GFp2, gfp2
from .hecke import (central_monomial, check_sigma_invariance,
                    check_weyl_invariance, factor_hecke, hecke_polynomial,
                    hecke_report, hecke_roots, hecke_value_by_determinant,
                    r_weights, satake_alpha)
from .laurent import LaurentPoly, Monomial, NonZeroRemainderError, TPoly
from .rootdatum import (WeylElement, norm_monomial, pairing, rho, sigma_twist,
                        sigma_twist_poly, weyl_act, weyl_generators,
                        weyl_group)

__version__ = "0.1.0"
