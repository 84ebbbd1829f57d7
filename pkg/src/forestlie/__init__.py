"""forestlie: exact combinatorics of Dyck vectors, compositions, set
partitions, strictly decreasing labeled forests, Dyck polynomials, and the
formal expansion of products of Lie derivatives, with every closed formula
cross-checked against an independent brute-force construction.
"""

from .compositions import (
    coeff_clambda,
    enumerate_compositions,
    derive_step,
    predecessors,
    pullback_coefficients,
    verify_key_identity,
)
from .dyck import (
    catalan,
    coeff_cp,
    deficit_profile,
    enumerate_dyck,
    path_to_vector,
    vector_to_path,
)
from .errors import SelfCheckError
from .forests import (
    ROOT,
    Forest,
    Primed,
    cprime,
    decorate,
    enumerate_forests,
    enumerate_trees,
    expand_covariant,
    fiber,
    graft,
    monomial,
    prune,
)
from .operators import (
    OperatorSum,
    estimate_certificate,
    expand_lie_forests,
    expand_lie_partitions,
    leibniz_split,
    lie_chain_oracle,
)
from .partitions import SetPartition, bell, count_by_shape, enumerate_partitions, partition_to_path, path_to_partition
from .polynomial import MultiPoly, poly_equal, sigma_bruteforce, sigma_formula

__version__ = "0.1.0"

__all__ = [
    "Forest",
    "MultiPoly",
    "OperatorSum",
    "Primed",
    "ROOT",
    "SelfCheckError",
    "SetPartition",
    "bell",
    "catalan",
    "coeff_clambda",
    "coeff_cp",
    "count_by_shape",
    "cprime",
    "decorate",
    "deficit_profile",
    "derive_step",
    "enumerate_compositions",
    "enumerate_dyck",
    "enumerate_forests",
    "enumerate_partitions",
    "enumerate_trees",
    "estimate_certificate",
    "expand_covariant",
    "expand_lie_forests",
    "expand_lie_partitions",
    "fiber",
    "graft",
    "leibniz_split",
    "lie_chain_oracle",
    "monomial",
    "partition_to_path",
    "path_to_partition",
    "path_to_vector",
    "poly_equal",
    "predecessors",
    "prune",
    "pullback_coefficients",
    "sigma_bruteforce",
    "sigma_formula",
    "vector_to_path",
    "verify_key_identity",
]
