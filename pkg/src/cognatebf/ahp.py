"""Analytic hierarchy process: pairwise comparisons, priorities, election."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, MatrixError, ParseError, UnsupportedDimensionError

SCALE_MIN = Fraction(1, 9)
SCALE_MAX = Fraction(9)

# Saaty random consistency indices for k = 1..10
RANDOM_INDEX = (0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49)
MAX_RI_DIMENSION = 10
CR_THRESHOLD = 0.10

TOLERANCE = 1e-12
MAX_ITERATIONS = 10_000

BENEFIT = "benefit"
COST = "cost"


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    raise TypeError(f"unsupported entry type {type(value).__name__}")


class ComparisonMatrix:
    """Reciprocal k x k matrix of exact rational judgments on the 1/9..9 scale."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = [[_to_fraction(v) for v in row] for row in entries]
        k = len(rows)
        if k == 0:
            raise MatrixError("empty matrix")
        for i, row in enumerate(rows):
            if len(row) != k:
                raise MatrixError(f"row {i} has {len(row)} entries, expected {k}")
        for i in range(k):
            if rows[i][i] != 1:
                raise MatrixError("diagonal entry must be 1", (i, i))
            for j in range(k):
                v = rows[i][j]
                if not SCALE_MIN <= v <= SCALE_MAX:
                    raise MatrixError(f"entry {v} outside the scale [1/9, 9]", (i, j))
                if v * rows[j][i] != 1:
                    raise MatrixError(f"entry {v} is not reciprocal to {rows[j][i]}", (i, j))
        self.entries = tuple(tuple(r) for r in rows)

    @classmethod
    def from_upper(cls, k: int, upper) -> ComparisonMatrix:
        """Fill from the strict upper triangle given row by row."""
        it = iter(upper)
        rows = [[Fraction(1)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                v = _to_fraction(next(it))
                rows[i][j], rows[j][i] = v, 1 / v
        return cls(rows)

    @classmethod
    def from_weights(cls, weights) -> ComparisonMatrix:
        """The consistent matrix w_i / w_j."""
        w = [_to_fraction(x) for x in weights]
        return cls([[a / b for b in w] for a in w])

    @classmethod
    def uniform(cls, k: int) -> ComparisonMatrix:
        return cls([[1] * k for _ in range(k)])

    @property
    def k(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, ComparisonMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ComparisonMatrix(k={self.k})"


@dataclass(frozen=True)
class PriorityVector:
    weights: tuple[float, ...]
    lambda_max: float
    consistency_index: float
    # None when k exceeds the random-index table
    consistency_ratio: float | None
    iterations: int = 0

    @property
    def k(self) -> int:
        return len(self.weights)

    @property
    def consistent(self) -> bool | None:
        if self.consistency_ratio is None:
            return None
        return self.consistency_ratio <= CR_THRESHOLD


def random_index(k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > MAX_RI_DIMENSION:
        raise UnsupportedDimensionError(f"no random index for k={k} (table covers k <= {MAX_RI_DIMENSION})")
    return RANDOM_INDEX[k]


def consistency_index(lambda_max: float, k: int) -> float:
    if k <= 2:
        return 0.0
    return max(0.0, (lambda_max - k) / (k - 1))


def consistency_ratio(pv: PriorityVector, k: int | None = None) -> float:
    k = pv.k if k is None else k
    ri = random_index(k)
    if k <= 2:
        return 0.0
    return pv.consistency_index / ri


def priority_vector(m: ComparisonMatrix) -> PriorityVector:
    """Principal right eigenvector by power iteration, normalized to sum 1.

    Starts from the row geometric means; stops once successive iterates
    differ by less than 1e-12 in max norm. lambda_max is the Rayleigh
    quotient of the converged vector.
    """
    A = m.to_array()
    k = m.k
    w = np.exp(np.log(A).mean(axis=1))
    w /= w.sum()
    for it in range(1, MAX_ITERATIONS + 1):
        v = A @ w
        v /= v.sum()
        delta = np.abs(v - w).max()
        w = v
        if delta < TOLERANCE:
            break
    else:
        raise ConvergenceError(f"power iteration did not converge in {MAX_ITERATIONS} iterations")
    lam = max(float(w @ (A @ w) / (w @ w)), float(k))
    ci = consistency_index(lam, k)
    cr = None
    if k <= MAX_RI_DIMENSION:
        cr = 0.0 if k <= 2 else ci / RANDOM_INDEX[k]
    return PriorityVector(tuple(float(x) for x in w), lam, ci, cr, it)


def score_measured(values, direction: str) -> tuple[float, ...]:
    """Normalize raw per-alternative measurements into weights.

    Benefit: proportional to the value (uniform when all are zero).
    Cost: proportional to 1/value; when any value is zero every value is
    shifted by +1 before inversion.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("at least one value is required")
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise ValueError("measured values must be finite and non-negative")
    if direction == BENEFIT:
        total = v.sum()
        if total == 0:
            return tuple([1.0 / v.size] * v.size)
        return tuple(float(x) for x in v / total)
    if direction == COST:
        if np.any(v == 0):
            v = v + 1.0
        inv = 1.0 / v
        return tuple(float(x) for x in inv / inv.sum())
    raise ValueError(f"direction must be {BENEFIT!r} or {COST!r}, got {direction!r}")


@dataclass(frozen=True)
class Judgment:
    matrix: ComparisonMatrix


@dataclass(frozen=True)
class Measured:
    direction: str
    values: tuple[float, ...]
    metric: str | None = None


@dataclass(frozen=True)
class DecisionProblem:
    criteria: tuple[str, ...]
    criteria_matrix: ComparisonMatrix
    scorings: tuple  # Judgment | Measured, one per criterion
    alternatives: tuple[str, ...]

    def __post_init__(self):
        if len(self.criteria) != self.criteria_matrix.k or len(self.scorings) != len(self.criteria):
            raise ValueError("criteria, criteria matrix and scorings disagree in size")
        count = len(self.alternatives)
        for name, s in zip(self.criteria, self.scorings):
            size = s.matrix.k if isinstance(s, Judgment) else len(s.values)
            if size != count:
                raise ValueError(f"criterion {name!r} scores {size} alternatives, expected {count}")


@dataclass(frozen=True)
class Ranking:
    order: tuple[int, ...]
    scores: tuple[float, ...]
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    criteria_priority: PriorityVector
    local_scores: tuple[tuple[float, ...], ...]
    judgment_priorities: dict = field(default_factory=dict)

    @property
    def elected(self) -> str:
        return self.alternatives[self.order[0]]

    def warnings(self) -> list[str]:
        out = []
        pv = self.criteria_priority
        if pv.consistency_ratio is not None and pv.consistency_ratio > CR_THRESHOLD:
            out.append(f"criteria matrix is inconsistent (CR={pv.consistency_ratio:.4f} > {CR_THRESHOLD})")
        for name, p in self.judgment_priorities.items():
            if p.consistency_ratio is not None and p.consistency_ratio > CR_THRESHOLD:
                out.append(f"judgment matrix for {name!r} is inconsistent (CR={p.consistency_ratio:.4f})")
        return out


def synthesize(p: DecisionProblem) -> Ranking:
    """Weighted sum of local scores; stable sort so ties keep input order."""
    criteria_pv = priority_vector(p.criteria_matrix)
    local, judgments = [], {}
    for name, s in zip(p.criteria, p.scorings):
        if isinstance(s, Judgment):
            pv = priority_vector(s.matrix)
            judgments[name] = pv
            local.append(pv.weights)
        else:
            local.append(score_measured(s.values, s.direction))
    L = np.array(local)
    scores = np.asarray(criteria_pv.weights) @ L
    order = sorted(range(len(p.alternatives)), key=lambda j: -scores[j])
    return Ranking(
        order=tuple(order),
        scores=tuple(float(x) for x in scores),
        alternatives=p.alternatives,
        criteria=p.criteria,
        criteria_priority=criteria_pv,
        local_scores=tuple(tuple(row) for row in local),
        judgment_priorities=judgments,
    )


# -- text formats --------------------------------------------------------

def parse_matrix(text: str, source=None) -> ComparisonMatrix:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        row, col = [], 0
        for token in stripped.split():
            col = raw.index(token, col)
            try:
                row.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"invalid matrix entry {token!r}", lineno, col + 1, source) from None
            if row[-1] <= 0:
                raise ParseError(f"entry {token!r} must be positive", lineno, col + 1, source)
            col += len(token)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix", source=source)
    try:
        return ComparisonMatrix(rows)
    except MatrixError as exc:
        raise ParseError(str(exc), source=source) from None


def read_matrix(path) -> ComparisonMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), source=str(path))


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    kind: str  # "judgment" or "measured"
    matrix: ComparisonMatrix | None = None
    direction: str | None = None
    metric: str | None = None


@dataclass(frozen=True)
class DecisionFile:
    """Parsed decision-problem file, not yet bound to alternatives."""

    criteria: tuple[CriterionSpec, ...]
    criteria_matrix: ComparisonMatrix

    def bind(self, alternatives) -> DecisionProblem:
        """Resolve measured criteria against ``[(label, metrics dict), ...]``."""
        labels = tuple(label for label, _ in alternatives)
        scorings = []
        for c in self.criteria:
            if c.kind == "judgment":
                scorings.append(Judgment(c.matrix))
                continue
            values = []
            for label, metrics in alternatives:
                if c.metric not in metrics:
                    raise KeyError(f"metric {c.metric!r} not available for alternative {label!r}")
                v = metrics[c.metric]
                if isinstance(v, bool):
                    v = int(v)
                if not isinstance(v, (int, float)):
                    raise KeyError(f"metric {c.metric!r} of alternative {label!r} is not numeric ({v!r})")
                values.append(float(v))
            scorings.append(Measured(c.direction, tuple(values), c.metric))
        return DecisionProblem(tuple(c.name for c in self.criteria), self.criteria_matrix,
                               tuple(scorings), labels)


def parse_decision(text: str, source=None, base_dir=None) -> DecisionFile:
    """Parse ``name = <matrix file> | judgment <file> | measured benefit|cost <metric>``.

    The reserved key ``criteria_matrix`` names the criteria comparison matrix
    file, or ``uniform`` for equal weights. Criteria keep file order and
    relative paths resolve against ``base_dir``.
    """
    base_dir = base_dir or "."
    criteria, matrix_ref = [], None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        col = raw.index(stripped[0]) + 1
        if "=" not in stripped:
            raise ParseError("expected 'name = value'", lineno, col, source)
        name, _, value = (s.strip() for s in stripped.partition("="))
        vcol = raw.index("=") + 2
        if not name or not value:
            raise ParseError("empty name or value", lineno, col, source)
        if name in seen:
            raise ParseError(f"duplicate entry {name!r}", lineno, col, source)
        seen.add(name)
        if name == "criteria_matrix":
            matrix_ref = (value, lineno, vcol)
            continue
        parts = value.split()
        if parts[0] == "measured":
            if len(parts) != 3 or parts[1] not in (BENEFIT, COST):
                raise ParseError("expected 'measured benefit|cost <metric-key>'", lineno, vcol, source)
            criteria.append(CriterionSpec(name, "measured", direction=parts[1], metric=parts[2]))
        else:
            path = parts[1] if parts[0] == "judgment" and len(parts) == 2 else value
            criteria.append(CriterionSpec(name, "judgment", matrix=_load_matrix(path, base_dir, lineno, vcol, source)))
    if not criteria:
        raise ParseError("no criteria defined", source=source)
    if matrix_ref is None:
        raise ParseError("missing 'criteria_matrix' entry", source=source)
    value, lineno, vcol = matrix_ref
    if value == "uniform":
        cm = ComparisonMatrix.uniform(len(criteria))
    else:
        cm = _load_matrix(value, base_dir, lineno, vcol, source)
    if cm.k != len(criteria):
        raise ParseError(f"criteria matrix is {cm.k}x{cm.k} but {len(criteria)} criteria are defined",
                         lineno, vcol, source)
    return DecisionFile(tuple(criteria), cm)


def _load_matrix(path, base_dir, lineno, col, source):
    full = path if os.path.isabs(path) else os.path.join(base_dir, path)
    try:
        return read_matrix(full)
    except OSError as exc:
        raise ParseError(f"cannot read matrix file {path!r}: {exc.strerror}", lineno, col, source) from None


def read_decision(path) -> DecisionFile:
    with open(path, encoding="utf-8") as fh:
        return parse_decision(fh.read(), source=str(path), base_dir=os.path.dirname(os.path.abspath(path)))
