"""Single-qubit codes for n-bit strings and their success probabilities.

A code fixes one measurement direction per bit position and one encoding
state per input string.  When the receiver measures the encoding of x along
direction v_i, the answer is correct with probability
p(x, i) = (1 + (-1)^(x_i) * r_x . v_i) / 2.  Averaging over uniform inputs
and positions, the best encodings point each r_x along the signed direction
sum of the measurements, which reduces the whole average to a single norm
sum over sign patterns.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .bloch import BlochVector, Measurement, uniform_directions
from .classical import BitString, optimal_classical_probability
from .errors import CostLimitError

#: Signed sums with norm below this are treated as zero: the input string is
#: probability-neutral and receives the fixed fallback encoding.
NEUTRAL_CUTOFF = 1e-12

#: Encoding assigned to probability-neutral strings.  Any fixed unit vector
#: keeps output deterministic; the average probability does not depend on it.
NEUTRAL_FALLBACK = BlochVector(0.0, 0.0, 1.0)

#: Hard guard for the 2^n sign-pattern enumeration in sign_pattern_norm_sum.
MAX_SIGN_ENUMERATION = 24

#: Hard guard for the 2^n enumeration in parallelogram_check.
MAX_PARALLELOGRAM = 20

#: Relative tolerance (times 2^n) for the squared-norm identity check.
PARALLELOGRAM_TOLERANCE = 1e-8

#: Sign patterns are processed in blocks of this many rows.
_CHUNK = 1 << 16


def sign_matrix(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows of signs (-1)^(x_i) for input indices start..stop-1.

    Row k corresponds to input index start + k; column i (0-based) holds +1
    when bit i of the index is 0 and -1 when it is 1.
    """
    if stop is None:
        stop = 1 << n
    values = np.arange(start, stop, dtype=np.int64)
    return 1.0 - 2.0 * ((values[:, None] >> np.arange(n)) & 1)


def _direction_array(measurements: Sequence[Measurement]) -> np.ndarray:
    return np.array([(m.direction.x, m.direction.y, m.direction.z) for m in measurements])


def signed_direction_sum(measurements: Sequence[Measurement], x: BitString) -> np.ndarray:
    """Sum of measurement directions with sign (-1)^(x_i) on the i-th term.

    The result is generally not a unit vector; its normalization is the best
    encoding point for x, and its norm measures how well x can be encoded.
    """
    if len(measurements) != len(x):
        raise ValueError(
            f"string length {len(x)} does not match measurement count {len(measurements)}"
        )
    signs = np.array([1.0 - 2.0 * b for b in x])
    return signs @ _direction_array(measurements)


def optimal_encoding(measurements: Sequence[Measurement]) -> dict[BitString, BlochVector]:
    """Best encoding point for every input string: the normalized signed sum.

    Strings whose signed sum vanishes (within NEUTRAL_CUTOFF) are mapped to
    the fixed fallback NEUTRAL_FALLBACK; any choice gives the same average.
    """
    n = len(measurements)
    if n < 1:
        raise ValueError("need at least one measurement")
    dirs = _direction_array(measurements)
    encodings: dict[BitString, BlochVector] = {}
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        sums = sign_matrix(n, start, stop) @ dirs
        norms = np.linalg.norm(sums, axis=1)
        for row, value in enumerate(range(start, stop)):
            x = BitString.from_index(value, n)
            if norms[row] < NEUTRAL_CUTOFF:
                encodings[x] = NEUTRAL_FALLBACK
            else:
                encodings[x] = BlochVector.from_array(sums[row] / norms[row])
    return encodings


def neutral_strings(measurements: Sequence[Measurement]) -> tuple[BitString, ...]:
    """Input strings whose signed direction sum vanishes, in index order."""
    n = len(measurements)
    dirs = _direction_array(measurements)
    found: list[BitString] = []
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        norms = np.linalg.norm(sign_matrix(n, start, stop) @ dirs, axis=1)
        found.extend(
            BitString.from_index(start + int(row), n)
            for row in np.nonzero(norms < NEUTRAL_CUTOFF)[0]
        )
    return tuple(found)


def sign_pattern_norm_sum(dirs: np.ndarray) -> float:
    """Sum over all 2^n sign patterns of the norm of the signed row sum."""
    n = dirs.shape[0]
    total = 0.0
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        total += float(np.linalg.norm(sign_matrix(n, start, stop) @ dirs, axis=1).sum())
    return total


def s_value(measurements: Sequence[Measurement]) -> float:
    """Total norm of signed direction sums over all 2^n sign patterns.

    This single number determines the optimally-encoded average success
    probability: average = (1 + s_value / (n * 2^n)) / 2.
    """
    n = len(measurements)
    if n < 1:
        raise ValueError("need at least one measurement")
    if n > MAX_SIGN_ENUMERATION:
        raise CostLimitError(
            f"sign-pattern sum enumerates 2**n terms; n = {n} exceeds the limit {MAX_SIGN_ENUMERATION}"
        )
    return sign_pattern_norm_sum(_direction_array(measurements))


@dataclass(frozen=True)
class QracCode:
    """A complete code: n measurement directions plus an encoding per string."""

    measurements: tuple[Measurement, ...]
    encodings: Mapping[BitString, BlochVector]

    def __post_init__(self) -> None:
        n = len(self.measurements)
        if n < 1:
            raise ValueError("need at least one measurement")
        if len(self.encodings) != 1 << n:
            raise ValueError(
                f"need {1 << n} encodings for n = {n}, got {len(self.encodings)}"
            )
        for x in self.encodings:
            if len(x) != n:
                raise ValueError(f"encoding key {x.text!r} has wrong length for n = {n}")
        object.__setattr__(self, "measurements", tuple(self.measurements))
        object.__setattr__(self, "encodings", MappingProxyType(dict(self.encodings)))

    @property
    def n(self) -> int:
        return len(self.measurements)

    def measurement_array(self) -> np.ndarray:
        """Measurement directions as an (n, 3) array, row i = position i+1."""
        return _direction_array(self.measurements)

    def encoding_array(self) -> np.ndarray:
        """Encoding points as a (2^n, 3) array ordered by input index."""
        out = np.empty((1 << self.n, 3))
        for x, r in self.encodings.items():
            out[x.index] = (r.x, r.y, r.z)
        return out


def optimal_code(measurements: Sequence[Measurement]) -> QracCode:
    """The code using the given measurements with their best encodings."""
    return QracCode(tuple(measurements), optimal_encoding(measurements))


@dataclass(frozen=True, eq=False)
class CodeReport:
    """Success probabilities of a code, per input/position and in aggregate.

    `per_input[x.index, i-1]` is the probability of answering position i
    correctly on input x.  `worst_case` is the smallest such cell — the
    deterministic worst case.  Once the protocol is wrapped in shared
    randomization the worst case rises to the average, exposed as
    `randomized_worst_case`.
    """

    per_input: np.ndarray
    average: float
    worst_case: float
    s_value: float
    neutral_strings: tuple[BitString, ...]

    def __post_init__(self) -> None:
        self.per_input.setflags(write=False)

    def probability(self, x: BitString, i: int) -> float:
        """Probability of answering position i (1-based) correctly on input x."""
        if not 1 <= i <= self.per_input.shape[1]:
            raise ValueError(f"position must lie in 1..{self.per_input.shape[1]}, got {i}")
        if (1 << len(x)) != self.per_input.shape[0]:
            raise ValueError(f"string length {len(x)} does not match this report")
        return float(self.per_input[x.index, i - 1])

    @property
    def randomized_worst_case(self) -> float:
        """Worst case once inputs are masked by shared randomness: the average."""
        return self.average


def evaluate(code: QracCode) -> CodeReport:
    """Score a code: per-cell success probabilities plus their aggregates."""
    n = code.n
    dirs = code.measurement_array()
    points = code.encoding_array()
    per_input = 0.5 * (1.0 + sign_matrix(n) * (points @ dirs.T))
    np.clip(per_input, 0.0, 1.0, out=per_input)
    return CodeReport(
        per_input=per_input,
        average=float(per_input.mean()),
        worst_case=float(per_input.min()),
        s_value=s_value(code.measurements),
        neutral_strings=neutral_strings(code.measurements),
    )


def upper_bound(n: int) -> float:
    """Ceiling 1/2 + 1/(2*sqrt(n)) on the average success probability.

    No single-qubit code for n bits — even with shared randomness, and even
    when the qubit is assisted by classical postprocessing — exceeds this.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return 0.5 + 0.5 / math.sqrt(n)


def parallelogram_check(measurements: Sequence[Measurement]) -> bool:
    """Verify sum over sign patterns of the squared signed-sum norm equals n*2^n.

    The identity holds for any unit vectors because cross terms cancel in
    pairs; this enumerates the left side and compares within
    PARALLELOGRAM_TOLERANCE * 2^n.
    """
    n = len(measurements)
    if n < 1:
        raise ValueError("need at least one measurement")
    if n > MAX_PARALLELOGRAM:
        raise CostLimitError(
            f"identity check enumerates 2**n terms; n = {n} exceeds the limit {MAX_PARALLELOGRAM}"
        )
    dirs = _direction_array(measurements)
    total = 0.0
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        sums = sign_matrix(n, start, stop) @ dirs
        total += float((sums * sums).sum())
    return abs(total - n * (1 << n)) <= PARALLELOGRAM_TOLERANCE * (1 << n)


def classical_comparison_scan(
    ns: Iterable[int], sets_per_n: int, seed: int = 0
) -> list[tuple[int, int, float, float]]:
    """Scan random measurement sets for quantum averages below the classical optimum.

    For each n, draws `sets_per_n` measurement sets uniformly on the sphere,
    scores each with optimal encodings, and collects a tuple
    (n, set_index, quantum_average, classical_optimum) whenever the quantum
    average falls more than 1e-12 below the exact classical optimum.  No such
    set is known, but the comparison in full generality is unproven, so
    violations are returned as data to inspect rather than raised.
    """
    if sets_per_n < 1:
        raise ValueError(f"sets_per_n must be at least 1, got {sets_per_n}")
    rng = np.random.default_rng(seed)
    violations: list[tuple[int, int, float, float]] = []
    for n in ns:
        if n < 1:
            raise ValueError(f"n must be at least 1, got {n}")
        classical = float(optimal_classical_probability(n))
        for index in range(sets_per_n):
            dirs = uniform_directions(n, rng)
            average = 0.5 * (1.0 + sign_pattern_norm_sum(dirs) / (n * (1 << n)))
            if average < classical - 1e-12:
                violations.append((n, index, average, classical))
    return violations
