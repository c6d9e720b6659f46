import random

import pytest

from argsolve import netgen
from argsolve.model import Framework
from argsolve.netgen import GenSpec


@pytest.fixture
def fig4w() -> Framework:
    return netgen.fig4(weighted=True)


@pytest.fixture
def fig4u() -> Framework:
    return netgen.fig4(weighted=False)


def small_corpus(count: int, *, weighted: bool = False, weight_max: int = 9) -> list[Framework]:
    """Seeded mixed corpus of small instances from both generators."""
    frameworks: list[Framework] = []
    rng = random.Random(0xC0FFEE + count + (1000 if weighted else 0))
    while len(frameworks) < count:
        seed = rng.randrange(1 << 30)
        if len(frameworks) % 2 == 0:
            spec = GenSpec(
                kind="barabasi",
                node_count=rng.randint(3, 8),
                edges_per_step=rng.randint(1, 2),
                seed=seed,
                orient=rng.choice(["coin", "both"]),
            )
        else:
            spec = GenSpec(
                kind="kleinberg",
                side=2,
                theta=rng.choice([0.5, 1.0, 2.0]),
                long_range_per_node=rng.randint(1, 2),
                seed=seed,
                orient=rng.choice(["coin", "both"]),
            )
        f = netgen.generate(spec)
        if weighted:
            f = netgen.assign_weights(f, netgen.WEIGHTS_INT, seed + 1, weight_max)
        frameworks.append(f)
    return frameworks
