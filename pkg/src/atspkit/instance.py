"""ATSP cost-matrix generation, parsing, transformation, and serialization.

Matrices are dense n x n int64 tables.  Self-arcs carry a large sentinel so
no optimal structure ever uses them.  Generation is a pure function of the
generation spec: the RNG is SplitMix64 (reference constants) and the draw
order is pinned, so the same spec yields a bit-identical matrix everywhere.
"""

import math
from dataclasses import dataclass, field

import numpy as np

DIAGONAL_SENTINEL = 1_000_000

MODES = ("uniform-matrix", "euclidean-asymmetric")

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class InstanceError(ValueError):
    """Invalid generation spec or malformed matrix."""


class TsplibFormatError(ValueError):
    """Unsupported or inconsistent TSPLIB input."""


class SplitMix64:
    """Reference SplitMix64 stream; stateless per-index form also available."""

    def __init__(self, seed):
        self._state = seed & _MASK64

    def next_u64(self):
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def next_unit(self):
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)


def _mix(z):
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _mix_vec(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _draws(seed, start, count):
    """Vectorized SplitMix64 outputs for draw indices start+1 .. start+count."""
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    states = np.uint64(seed & _MASK64) + ks * np.uint64(_GAMMA)
    return _mix_vec(states)


@dataclass(frozen=True)
class CostMatrix:
    """Dense asymmetric arc-cost table with a forbidden diagonal."""

    n: int
    costs: np.ndarray
    diagonal_sentinel: int = DIAGONAL_SENTINEL

    def __post_init__(self):
        costs = np.ascontiguousarray(self.costs, dtype=np.int64)
        if costs.shape != (self.n, self.n):
            raise InstanceError(f"costs must be {self.n}x{self.n}")
        costs.setflags(write=False)
        object.__setattr__(self, "costs", costs)

    def __eq__(self, other):
        if not isinstance(other, CostMatrix):
            return NotImplemented
        return (self.n == other.n
                and self.diagonal_sentinel == other.diagonal_sentinel
                and bool(np.array_equal(self.costs, other.costs)))

    def __hash__(self):
        return hash((self.n, self.diagonal_sentinel, self.costs.tobytes()))


@dataclass(frozen=True)
class GenSpec:
    """Deterministic instance description: size, seed, cost range, mode."""

    n: int
    seed: int
    cost_range: tuple = (1, 10)
    mode: str = "uniform-matrix"

    def validate(self):
        low, high = self.cost_range
        if self.n < 2:
            raise InstanceError("node count must be >= 2")
        if low < 1 or high < low:
            raise InstanceError(f"invalid cost range ({low}, {high})")
        if self.mode not in MODES:
            raise InstanceError(f"unknown mode {self.mode!r}")
        if self.n * high >= DIAGONAL_SENTINEL:
            raise InstanceError("n * high must stay below the diagonal sentinel")


@dataclass(frozen=True)
class NodeLayout:
    """Unit-square positions used only for rendering."""

    coords: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.coords)


def generate(spec):
    """Generate (CostMatrix, NodeLayout | None) deterministically from spec.

    Off-diagonal entries are drawn in row-major order (skipping the
    diagonal, which consumes no draw) as low + u64 % (high - low + 1).
    Euclidean-asymmetric mode first draws n coordinate pairs, takes
    round(100 * distance) as the base cost (half-up rounding), then adds an
    independent per-ordered-pair perturbation from {0, 1, 2, 3}.
    """
    spec.validate()
    n = spec.n
    low, high = spec.cost_range
    if spec.mode == "uniform-matrix":
        vals = _draws(spec.seed, 0, n * (n - 1)) % np.uint64(high - low + 1)
        m = np.full((n, n), DIAGONAL_SENTINEL, dtype=np.int64)
        off = ~np.eye(n, dtype=bool)
        m[off] = vals.astype(np.int64) + low
        return CostMatrix(n, m), None

    # euclidean-asymmetric: 2n coordinate draws, then n(n-1) perturbations
    unit = (_draws(spec.seed, 0, 2 * n) >> np.uint64(11)).astype(np.float64) \
        * (1.0 / 9007199254740992.0)
    xs = unit[0::2]
    ys = unit[1::2]
    dx = xs[:, None] - xs[None, :]
    dy = ys[:, None] - ys[None, :]
    base = np.floor(100.0 * np.hypot(dx, dy) + 0.5).astype(np.int64)
    perturb = (_draws(spec.seed, 2 * n, n * (n - 1)) % np.uint64(4)).astype(np.int64)
    m = np.full((n, n), DIAGONAL_SENTINEL, dtype=np.int64)
    off = ~np.eye(n, dtype=bool)
    m[off] = base[off] + perturb
    layout = NodeLayout(tuple(zip(xs.tolist(), ys.tolist())))
    return CostMatrix(n, m), layout


def scale(m, k):
    """Multiply every off-diagonal entry by k >= 1; the sentinel stays put."""
    if k < 1:
        raise InstanceError("scale factor must be >= 1")
    off_max = int(np.max(np.abs(np.where(np.eye(m.n, dtype=bool), 0, m.costs))))
    if off_max and k > (2**63 - 1) // off_max:
        raise OverflowError("scaling overflows the 64-bit cost type")
    scaled = m.costs * np.int64(k)
    out = np.where(np.eye(m.n, dtype=bool), m.diagonal_sentinel, scaled)
    return CostMatrix(m.n, out, m.diagonal_sentinel)


def parse_tsplib(data):
    """Parse an EXPLICIT / FULL_MATRIX TSPLIB (A)TSP instance.

    Accepts bytes or str.  The diagonal is overwritten with the sentinel.
    Symmetric TSP files are accepted and treated as ATSP with equal
    opposing arcs.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    header = {}
    weight_tokens = []
    in_weights = False
    for raw in data.splitlines():
        line = raw.strip()
        if not line or line == "EOF":
            continue
        if in_weights:
            weight_tokens.extend(line.split())
            continue
        if line == "EDGE_WEIGHT_SECTION":
            in_weights = True
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            header[key.strip().upper()] = value.strip()
        else:
            raise TsplibFormatError(f"unexpected line {line!r}")
    ftype = header.get("TYPE", "").upper()
    if ftype not in ("ATSP", "TSP"):
        raise TsplibFormatError(f"unsupported TYPE {ftype!r}")
    if header.get("EDGE_WEIGHT_TYPE", "").upper() != "EXPLICIT":
        raise TsplibFormatError("EDGE_WEIGHT_TYPE must be EXPLICIT")
    if header.get("EDGE_WEIGHT_FORMAT", "").upper() != "FULL_MATRIX":
        raise TsplibFormatError("EDGE_WEIGHT_FORMAT must be FULL_MATRIX")
    try:
        n = int(header["DIMENSION"])
    except (KeyError, ValueError):
        raise TsplibFormatError("missing or invalid DIMENSION") from None
    if len(weight_tokens) != n * n:
        raise TsplibFormatError(
            f"expected {n * n} weights for DIMENSION {n}, got {len(weight_tokens)}")
    try:
        values = [int(tok) for tok in weight_tokens]
    except ValueError as exc:
        raise TsplibFormatError(f"non-integer weight: {exc}") from None
    m = np.array(values, dtype=np.int64).reshape(n, n)
    np.fill_diagonal(m, DIAGONAL_SENTINEL)
    return CostMatrix(n, m)


def write_tsplib(m, name="atspkit"):
    """Serialize to TSPLIB FULL_MATRIX bytes; parse(write(m)) == m."""
    lines = [
        f"NAME: {name}",
        "TYPE: ATSP",
        f"DIMENSION: {m.n}",
        "EDGE_WEIGHT_TYPE: EXPLICIT",
        "EDGE_WEIGHT_FORMAT: FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in m.costs.tolist():
        lines.append(" ".join(str(v) for v in row))
    lines.append("EOF")
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_csv(m):
    """One CSV row per source node, including the diagonal sentinel."""
    rows = (",".join(str(v) for v in row) for row in m.costs.tolist())
    return ("\n".join(rows) + "\n").encode("utf-8")


def parse_csv(data):
    """Inverse of write_csv; the diagonal is normalized to the sentinel."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    rows = [line.split(",") for line in data.splitlines() if line.strip()]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InstanceError("CSV matrix is not square")
    m = np.array([[int(v) for v in row] for row in rows], dtype=np.int64)
    np.fill_diagonal(m, DIAGONAL_SENTINEL)
    return CostMatrix(n, m)


def circular_coords(n):
    """Node i at angle 2*pi*i/n on a radius-0.45 circle centered in the square."""
    pts = []
    for i in range(n):
        a = 2.0 * math.pi * i / n
        pts.append((0.5 + 0.45 * math.cos(a), 0.5 + 0.45 * math.sin(a)))
    return NodeLayout(tuple(pts))
