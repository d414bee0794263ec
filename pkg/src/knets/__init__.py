"""Exact star calculus on barycentric subdivisions and binary k-network synthesis."""

from .complexes import (Point, SimplicialComplex, barycenter, carrier, cone,
                        dimension, join, l1_distance, make_complex, make_simplex)
from .errors import ContractViolation, InputError
from .families import (ConvexSet, CylinderFamily, Factor, OrderedGround,
                       all_convex_sets, cylinder_family, go_binary_family,
                       go_witness, product_knetwork)
from .realization import (MeetSemilattice, RankStratification, Realization,
                          SetSystem, meet_semilattice, minimal_member,
                          rank_strata, realize, set_system)
from .stars import (Chain, DisjointStars, Star, StarFamily, chain_witness,
                    discreteness_certificate, in_sd_cell, linked_stars_chain,
                    linked_intersection_witness, sd_cells, st1_membership,
                    st2_membership, st2_membership_oracle, star_cover,
                    star_meets_subcomplex)
from .sweep import SweepResult, radial_retraction, sweep_out
from .synthesis import (BinaryFamilyReport, NamedSet, key_refinement,
                        synthesize, verify_binary, verify_refinement)

__all__ = [name for name in dir() if not name.startswith("_")]
