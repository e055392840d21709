"""Exact parabolic Chern-character calculus on finite Chow-ring models."""
from .chow import (ChowElement, ChowMap, ChowModel, ValidationReport, apply_map, exp_class,
                   graded_part, ideal_membership, mul, projective_space, validate_model)
from .errors import (InvalidModelError, ModelMismatchError, ParchernError, PreconditionError,
                     SchemaError)
from .grr import (FamilyModel, MainIdentityResult, SplitKR, chi, log_de_rham_euler, main_identity,
                  residue_iso_check, split_kr)
from .logconn import (AbelianLogConnection, RankOnePiece, ResidueSpectrum, associated_parabolic,
                      associated_weights, normalize_eigenvalue, positive_integer_eigenvalue_check,
                      pullback_connection, representative_in_window)
from .parabolic import (MultiIndex, NormalCrossingsDivisor, ParabolicKClass, ParabolicLineBundle,
                        ParabolicMorphism, RationalDivisor, ch_par, constituent, diff_over_d,
                        direct_sum, k_equal, line, pullback_par, tensor_par, trivial, weights_along)
from .steenbrink import (LogComplex, TruncatedSeriesRing, check_hypotheses,
                         fiber_cohomology_ranks, verdict)

__version__ = "0.1.0"
