"""Exact workbench for topological modal logic with derivative and difference modalities.

The pieces:

* :mod:`topomodal.formula` parses and renders the modal language and builds
  closure sets;
* :mod:`topomodal.topology` holds exact finite topological spaces, their four
  operators, connectivity and homeomorphism testing;
* :mod:`topomodal.realline` is the same operator algebra over exact
  rational-endpoint regions of the real line;
* :mod:`topomodal.semantics` evaluates formulas over either carrier and
  decides validity on finite spaces by exhaustive valuation search;
* :mod:`topomodal.morphism` analyzes interior maps, unique points and the
  difference-modality morphisms;
* :mod:`topomodal.catalog` enumerates all finite topologies up to a size and
  runs the exhaustive verification suites;
* :mod:`topomodal.cli` is the ``topomodal`` command.
"""

from .errors import (
    GuardError, ParseError, RegionError, TopologyError, TopomodalError,
    UnboundVariableError,
)
from .formula import (
    BUILTINS, KUR, KUR_IDIFF, BOX_KUR, ClosureSet, Formula, closure_set,
    parse, render, resolve, subformulas, variables,
)
from .realline import Region, comb, parse_region, render_region
from .semantics import (
    FiniteCarrier, Model, RealCarrier, ValidityReport, equiv_classes_up_to,
    evaluate, point_validity, satisfies, valid_on_space,
)
from .topology import (
    FiniteSpace, Preorder, discrete, empty_space, find_homeomorphism,
    from_preorder, generate_from_subbasis, indiscrete, is_homeomorphic,
    pseudo_line, sierpinski, to_preorder, validate_space,
)
from .morphism import (
    PointMap, analyze_map, find_u_morphisms, gg_check, pullback_valuation,
    unique_points, verify_preservation,
)
from .catalog import (
    classify, count_crosscheck, enumerate_spaces, search_transfer_pairs,
    verify_lemma_l1c, verify_theorem_kur,
)

__version__ = "0.1.0"
