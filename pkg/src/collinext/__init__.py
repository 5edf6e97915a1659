"""Finite projective spaces over small fields, with partial collineation
extension, admissible-family machinery, prime-set growth recovery, and a
genus-zero function field demonstration pipeline."""

__version__ = "0.1.0"

from .gf import GF, Fe, GFError, make_field, fe_arith, frobenius, enumerate_field
from .projgeom import (GeomError, ProjSpace, ProjPoint, ProjLine, join, meet,
                       collinear, concurrent, span_rank, perspectivity,
                       AxiomReport, noncollinear_triples, check_axioms,
                       DesarguesCheck, desargues_admissible, check_desargues,
                       desargues_sweep, gaussian_binomial)
from .semilinear import (SemilinearError, FieldIso, SemilinearIso,
                         Collineation, induce_collineation, random_semilinear,
                         equal_up_to_scalar, decode_ftpg)
from .ample import (AmpleError, AmpleFamily, AmpleReport, lines_meeting,
                    is_ample, is_mn_admissible, closed_form_admissible,
                    is_pgl2_stable, transport_subset)
from .extend import (ExtendError, PartialCollineation, ValidationReport,
                     validate_partial, ExtensionResult, extend, restrict,
                     random_ample_instance, brute_force_extensions)
from .primesets import (PrimeSetError, PrimeSet, SigmaFactorization,
                        sigma_part, FrobGrowth, w_sequence, recover_M0_and_p,
                        gl_order, construct_remark28, natural_density_estimate,
                        factorize, is_prime_u64, integer_nth_root, prime_sieve)
from .funcfield import (FuncFieldError, ClosedPointP1, DivisorP1, RatFunc,
                        valuation, divisor_of, RRSpace, rr_basis, UnitSubset,
                        unit_subset, shift_survivors, FFCertificate,
                        ample_certificate, moebius_substitute, Scramble,
                        scramble, RingIsoReport, apply_psi, recover_ring_iso,
                        demo_instance, run_demo)
