"""Marked-vertex combinatorics for simply-laced diagrams: branch sequences,
truncated orbits, placed tableaux, and seminormal matrices over exact
rational functions."""

from .exact_arith import (LaurentPoly, Monomial, PlaceSymbol, RatFunc,
                          SymMatrix, parse_monomial, q_shift_eq,
                          ratfunc_eval_q)
from .root_data import (EPS, RootSystemType, NewLabelling, VLabel, WeightData,
                        ZERO, build_labelling, cartan_pairing, delta_basis,
                        dunder, invariant_vector, label_from_text, labelling,
                        plain, under, weight_data)
from .sequences import (ContentSeq, Orbit, apply_word, delta_invariant,
                        enumerate_orbit, reflect, substrings, trunc_reflect)
from .tableaux import (AdmissibilityResult, PlacedComponent,
                       PlacedSkewDiagram, SkewDiagram, Tableau,
                       TripletTableau, classical_content, is_admissible,
                       is_level1, is_level1_by_shapes, reconstruct,
                       render_ascii, seq_of_tableau, top_left_nodes,
                       triplet_from_seq)
from .representations import (FiniteRestriction, RelationReport,
                              SeminormalRep, WeylRep, build_rep,
                              central_element, classical_limit, idempotents,
                              irreducibility_evidence, passes_to_quotient,
                              restrict_to_finite, verify_finite_relations,
                              verify_gl_embeddings, verify_relations,
                              verify_weyl_relations)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
