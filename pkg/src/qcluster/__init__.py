"""Exact symbolic engine for quantum cluster algebras."""
from .catalog import ExampleBundle, builtin_algebra, builtin_seed
from .exgraph import (
    BoundExceeded,
    ExchangeGraph,
    almost_positive_roots,
    cluster_type,
    collect_variables,
    denominator_vector,
    enumerate_graph,
)
from .ncalg import (
    CompletionError,
    DegreeBoundError,
    NCPolynomial,
    Presentation,
    RewriteSystem,
    complete,
    hilbert_series_coefficients,
    normal_form,
    q_commutator,
    quantum_minor,
    verify_identity,
)
from .qscalar import ONE, Q, QINV, ZERO, QScalar, QScalarError, qpow
from .seed import (
    CompatibilityError,
    ConsistencyError,
    ExchangeMatrix,
    QuantumSeed,
    SeedError,
    check_compatibility,
    mutate_B,
    mutate_L,
)
from .torus import (
    DivisionError,
    TorusElement,
    classical_limit,
    exchange_relation,
    frame_monomial,
    torus_divide_exact,
    torus_mul,
)
from .verify import VerificationReport, verify_example

__all__ = [name for name in dir() if not name.startswith("_")]
