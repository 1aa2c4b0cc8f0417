"""Loopless mixed graphs, m-separation, and graphoid independence models.

The package covers the combinatorial core of graphical Markov models over
graphs with three edge marks (lines, arrows, arcs): separation queries with
both a fast reachability engine and brute-force oracles, anterior graphs and
anterior sets, ribbon and maximality structure tests, and explicit
independence models with axiom checking and closure.
"""

from .graph import (
    Edge,
    EdgeKind,
    GraphError,
    Mark,
    MixedGraph,
    Path,
    TripathClass,
    build_graph,
    classify_tripath,
    combine_paths,
    endpoint_identical,
    make_path,
    path_in_graph,
)
from .separation import (
    SeparationQuery,
    combine_m_connecting,
    find_m_connecting_path,
    is_m_connecting_path,
    m_connecting_path_exists,
    m_separated,
    oracle_m_separated,
)
from .structure import (
    GraphClass,
    Ribbon,
    RibbonFlavor,
    classify,
    find_primitive_inducing_paths,
    find_ribbons,
    is_maximal,
    is_ribbonless,
    maximality_violations,
    maximalize,
    oracle_is_maximal,
    pairwise_separator,
)
from .independence import (
    AXIOM_SETS,
    Axiom,
    AxiomViolation,
    COMPOSITIONAL_GRAPHOID,
    COMPOSITIONAL_SEMI_GRAPHOID,
    GRAPHOID,
    IndependenceModel,
    IndependenceStatement,
    MarkovCheck,
    SEMI_GRAPHOID,
    check_axiom,
    check_axioms,
    closure,
    conforms,
    enumerate_model,
    format_statement,
    marginal_model,
    markov_equivalent,
    pairwise_model,
    parse_statement,
    satisfies_global,
    satisfies_pairwise,
)
from .textformat import (
    GraphDocument,
    ParseError,
    load_graph,
    parse_graph,
    serialize_graph,
    to_dot,
)
from .corpus import CorpusSpec, generate_corpus, random_lmg

__version__ = "0.1.0"

__all__ = [
    "AXIOM_SETS",
    "Axiom",
    "AxiomViolation",
    "COMPOSITIONAL_GRAPHOID",
    "COMPOSITIONAL_SEMI_GRAPHOID",
    "CorpusSpec",
    "Edge",
    "EdgeKind",
    "GRAPHOID",
    "GraphClass",
    "GraphDocument",
    "GraphError",
    "IndependenceModel",
    "IndependenceStatement",
    "Mark",
    "MarkovCheck",
    "MixedGraph",
    "ParseError",
    "Path",
    "Ribbon",
    "RibbonFlavor",
    "SEMI_GRAPHOID",
    "SeparationQuery",
    "TripathClass",
    "build_graph",
    "check_axiom",
    "check_axioms",
    "classify",
    "classify_tripath",
    "closure",
    "combine_m_connecting",
    "combine_paths",
    "conforms",
    "endpoint_identical",
    "enumerate_model",
    "find_m_connecting_path",
    "find_primitive_inducing_paths",
    "find_ribbons",
    "format_statement",
    "generate_corpus",
    "is_m_connecting_path",
    "is_maximal",
    "is_ribbonless",
    "load_graph",
    "m_connecting_path_exists",
    "m_separated",
    "make_path",
    "marginal_model",
    "markov_equivalent",
    "maximality_violations",
    "maximalize",
    "oracle_is_maximal",
    "oracle_m_separated",
    "pairwise_model",
    "pairwise_separator",
    "parse_graph",
    "parse_statement",
    "path_in_graph",
    "random_lmg",
    "satisfies_global",
    "satisfies_pairwise",
    "serialize_graph",
    "to_dot",
]
