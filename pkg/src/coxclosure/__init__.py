"""Coxeter group combinatorics: weak and Bruhat orders, Bruhat preclosure and closure, twisted Bruhat orders."""
from .closure import PreclosureResult, bruhat_preclosure, infinite_closure, is_closed, iterate_preclosure
from .errors import (CoxeterError, InfiniteBond, IterationCapExceeded, JoinAnomaly, NoConnectingReflection,
                     NoJoin, NoJoinWithinCap, NotTypeA, RootDepthExceeded, TruncationUnsound, UnknownGenerator)
from .matrix import INF, CoxeterMatrix, load_matrix, preset
from .orders import (BruhatGraphSlice, bruhat_graph, bruhat_leq, join_brute, join_R, lower_set, meet_R,
                     restrict_labels, weak_leq)
from .system import CoxeterSystem, Enumeration, GroupElement, Reflection, build_system
from .twisted import (TwistDescriptor, Verdict, check_acyclic, is_initial_section_finite, twisted_edge,
                      twisted_graph, twisted_inversion, twisted_length, twisted_leq)

__version__ = "0.1.0"
