"""Eventify: event sensors derived from finite sensori-computational devices."""

from .device import (Device, DeviceError, NoSolution, determinize, direct_product,
                     is_deterministic, language_contains, outputs_of, singleton_restrict, trace)
from .monoid_transforms import disaggregator, eventify_pipeline, monoid_integrator
from .ovm import (Graph, exact_min_cardinality, graph_3colorable_bruteforce, minimize_variator,
                  reduce_3coloring)
from .relations import (Compose, Delta, Disaggregator, Identity, Integrator, Pump, Shave, Shrink,
                        relation_image)
from .simulation import (Existence, Status, Verdict, Witness, brute_force_derivative_exists,
                         check_output_simulation, check_output_stable, check_vertex_stable,
                         simulatable)
from .transforms import (Transformed, delta_transform, pump_transform, shave_delta_transform,
                         shrink_transform)
from .variator import (MonoidVariator, Variator, is_functional, is_group_with_transitive_point,
                       is_pairwise_unique, product_variator, validate_monoid, validate_variator,
                       variator_from_monoid)

__all__ = [
    "Device", "DeviceError", "NoSolution", "determinize", "direct_product", "is_deterministic",
    "language_contains", "outputs_of", "singleton_restrict", "trace", "disaggregator",
    "eventify_pipeline", "monoid_integrator", "Graph", "exact_min_cardinality",
    "graph_3colorable_bruteforce", "minimize_variator", "reduce_3coloring", "Compose", "Delta",
    "Disaggregator", "Identity", "Integrator", "Pump", "Shave", "Shrink", "relation_image",
    "Existence", "Status", "Verdict", "Witness", "brute_force_derivative_exists",
    "check_output_simulation", "check_output_stable", "check_vertex_stable", "simulatable",
    "Transformed", "delta_transform", "pump_transform", "shave_delta_transform",
    "shrink_transform", "MonoidVariator", "Variator", "is_functional",
    "is_group_with_transitive_point", "is_pairwise_unique", "product_variator", "validate_monoid",
    "validate_variator", "variator_from_monoid",
]
