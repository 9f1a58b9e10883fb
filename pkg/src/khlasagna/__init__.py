"""Exact framed-graded gl(N) link homology and surface grading calculus."""

from .frobenius import DeformationMultiset, FrobeniusData, crt_idempotents, specialize, twisting_scalar, unknot_algebra
from .homology import (BigradedHomology, FilteredHomology, deformed_homology, filtered_homology,
                       integral_homology, nontorsion_witness, q_min, rational_homology)
from .khcomplex import GradedChainComplex, UnsupportedRank, cube, framing_shift, regrade_fr, regrade_std
from .lasagna import (FourManifoldDatum, SurfaceDatum, cable_invariants, genus_bound, gl1_skein_tridegree,
                      is_homologically_diverse, predict_decomposition, s2xd2_model, surface_tridegree,
                      verify_decomposition)
from .linkdiag import (PDError, PlanarDiagram, SublinkSelector, cable_unknot, disjoint_union, from_braid,
                       mirror, parse_diagram, parse_pd, seifert_data, sublink)

__version__ = "0.1.0"
