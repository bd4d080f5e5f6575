"""Shared instance builders and random-instance helpers for the suite."""

from random import Random

from voltcover import FiniteGroup, build_graph
from voltcover.cli import (
    cyclic_triangle_instance,
    permutation_triangle_instance,
    two_fold_counterexample_instance,
)
from voltcover.experiments import random_voltage_graph

__all__ = [
    "cyclic_triangle_instance",
    "permutation_triangle_instance",
    "two_fold_counterexample_instance",
    "single_loop",
    "abelian_specs",
    "random_graphs",
]


def single_loop(p: int):
    """One vertex, one loop with voltage a generator of a cyclic group."""
    return build_graph(
        ["1"],
        [(0, 0, "a", 1)],
        group=FiniteGroup.cyclic(p),
        group_spec={"type": "cyclic", "order": p},
    )


def abelian_specs():
    return [
        {"type": "cyclic", "order": 2},
        {"type": "cyclic", "order": 3},
        {"type": "cyclic", "order": 4},
        {"type": "product", "orders": (2, 2)},
    ]


def _spec_to_kwargs(spec):
    if spec.get("type") == "product":
        a, b = spec["orders"]
        group = FiniteGroup.product(FiniteGroup.cyclic(a), FiniteGroup.cyclic(b))
        return {
            "group": group,
            "group_spec": {"type": "table", "mul": group.table},
        }
    return None


def random_graphs(seed, count, specs, n_range=(2, 4), edge_range=(2, 7)):
    """Yield `count` random voltage graphs cycling through the given specs."""
    rng = Random(seed)
    produced = 0
    while produced < count:
        spec = specs[produced % len(specs)]
        kwargs = _spec_to_kwargs(spec)
        if kwargs is None:
            yield random_voltage_graph(rng, spec, n_range, edge_range)
        else:
            n = rng.randint(*n_range)
            m = rng.randint(*edge_range)
            k = kwargs["group"].order
            edge_data = [
                (rng.randrange(n), rng.randrange(n), f"w{i}", rng.randrange(k))
                for i in range(m)
            ]
            yield build_graph([str(i + 1) for i in range(n)], edge_data, **kwargs)
        produced += 1
