"""Exact arithmetic for even integral lattices: genus symbols, finite
quadratic forms, root systems, Niemeier lattices and moduli counts."""

from .exact_linalg import IntMatrix, smith_normal_form, inertia
from .lattice import (Lattice, Sublattice, FiniteQuadraticForm, direct_sum,
                      rescale, discriminant_group, discriminant_form,
                      saturate, orthogonal_complement, overlattice)
from .fqf_genus import (FqfSymbol, GenusSymbol, genus_symbol, render_genus,
                        render_symbol, parse_symbol, normalize_symbol,
                        fqf_sum, fqf_negate, fqf_equivalent, fqf_to_symbol,
                        signature_mod8, materialize, embedding_compatible,
                        unique_in_genus)
from .rootsys import (RootSystemType, parse_type, weyl_order,
                      vectors_of_norm, root_system)
from .niemeier import (ROOT_TYPES, build_niemeier, verify_niemeier,
                       coinvariant_lattice, marking_pipeline,
                       golay_binary, golay_ternary, golay_octads,
                       golay_involutions)
from .moduli import (isometry_group, weyl_subgroup, oq_group, oq_images,
                     image_in_oq, strong_component_count, double_coset_count,
                     BudgetExceeded)

__version__ = "0.1.0"
