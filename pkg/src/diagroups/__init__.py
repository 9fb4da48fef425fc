"""Exact computation in diagram groups of directed 2-complexes."""

from .complex import (Cell, CellRef, ComplexError, DirectedComplex, Edge, from_presentation,
                      subdivide, tietze_add_edge)
from .cover import build_cover, lift_diagram, project, verify_rooted_tree
from .diagrams import (Diagram, DiagramError, Step, atomic, canonical, concat, diagram, identity,
                       inverse, is_reduced, isotopic, mult, reduce, sum_, transport)
from .homology import betti_numbers, geometric_dimension, poincare_series
from .io import load_complex, load_diagram, parse_complex, parse_diagram, serialize_complex
from .morphism import Morphism, substitute, validate_morphism
from .presentation import generator_diagram, minimal_presentation, wirtinger_presentation
from .rewriting import (complete_by_retract, confluence_check, critical_pairs, irreducible_form,
                        noetherian_certificate)
from .squier import classify_cube, component, left_forest, right_forest

__all__ = [name for name in dir() if not name.startswith("_")]
