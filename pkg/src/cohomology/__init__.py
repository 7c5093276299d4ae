"""
Torus cohomology: exterior algebra, relation lattices and the discreteness obstruction.
"""

from .exterior import ExteriorClass, wedge, wedge_all, intersection_number, format_class, parse_class
from .lattice import (
    RelationLattice,
    exgcd,
    column_reduce,
    saturate_rows,
    make_lattice,
    parse_relations,
    format_relations,
    load_relations,
    relation_minor,
    complementary_minor,
)
from .obstruction import (
    OBSTRUCTED,
    INCONCLUSIVE,
    ObstructionEntry,
    ObstructionReport,
    zero_locus_class,
    stratum_class,
    closure_class,
    discreteness_obstruction,
    symbolic_relations,
    symbolic_obstruction,
)
