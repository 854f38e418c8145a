"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from qrac.bloch import BlochVector, Measurement, uniform_directions


def random_measurements(n: int, rng: np.random.Generator) -> tuple[Measurement, ...]:
    """n measurements with directions drawn uniformly on the sphere."""
    return tuple(Measurement(BlochVector.from_array(row)) for row in uniform_directions(n, rng))
