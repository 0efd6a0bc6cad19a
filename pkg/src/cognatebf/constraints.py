"""Restriction systems on nonlinearity, autocorrelation and optional floors."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import NamedTuple

from .boolean import TruthTable
from .errors import DimensionError, ParseError
from .properties import MAX_AI_VARIABLES, PropertyReport, classify, covering_radius_bound

KEYS = (
    "n",
    "min_nonlinearity",
    "max_absolute_indicator",
    "max_sum_of_squares",
    "require_balanced",
    "min_degree",
    "min_ci_order",
    "min_algebraic_immunity",
)

# exact optima of balanced functions for small n; above this even n uses bent - 2
_BALANCED_OPTIMUM = {1: 0, 2: 0, 3: 2, 4: 4, 5: 12, 6: 26, 7: 56, 8: 116}


class Violation(NamedTuple):
    constraint: str
    required: object
    actual: object

    def __str__(self):
        return f"{self.constraint}: required {self.required}, actual {self.actual}"


@dataclass(frozen=True)
class ConstraintSystem:
    """Bounds a candidate must meet; ``None`` (or False) leaves a bound inactive.

    ``n`` may be left unset while a system is parsed and bound later with
    :meth:`for_n`.
    """

    n: int | None = None
    min_nonlinearity: int | None = None
    max_absolute_indicator: int | None = None
    max_sum_of_squares: int | None = None
    require_balanced: bool = False
    min_degree: int | None = None
    min_ci_order: int | None = None
    min_algebraic_immunity: int | None = None

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "require_balanced":
                if not isinstance(value, bool):
                    raise ValueError("require_balanced must be a bool")
            elif value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
                raise ValueError(f"{f.name} must be a non-negative integer, got {value!r}")
        if self.n is not None:
            if self.n < 1:
                raise ValueError("n must be >= 1")
            if self.max_absolute_indicator is not None and self.max_absolute_indicator > 1 << self.n:
                raise ValueError(f"max_absolute_indicator must be <= 2^n = {1 << self.n}")
            if self.min_algebraic_immunity is not None and self.n > MAX_AI_VARIABLES:
                raise ValueError(f"algebraic immunity constraints need n <= {MAX_AI_VARIABLES}")

    def for_n(self, n: int) -> ConstraintSystem:
        if self.n is not None and self.n != n:
            raise DimensionError(f"constraints are for n={self.n}, function has n={n}")
        return self if self.n == n else replace(self, n=n)

    def active(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k != "n" and v not in (None, False)}

    @property
    def is_vacuous(self) -> bool:
        return not self.active()

    @property
    def needs_full_report(self) -> bool:
        return self.min_ci_order is not None or self.min_algebraic_immunity is not None \
            or self.min_degree is not None

    def is_feasible(self) -> bool:
        """False when min_nonlinearity exceeds the covering-radius bound."""
        return self.n is None or self.min_nonlinearity is None \
            or self.min_nonlinearity <= covering_radius_bound(self.n)

    def feasibility_warnings(self) -> list[str]:
        out = []
        if self.n is None or self.min_nonlinearity is None:
            return out
        bound = covering_radius_bound(self.n)
        if self.min_nonlinearity > bound:
            out.append(f"min_nonlinearity {self.min_nonlinearity} exceeds the covering-radius "
                       f"bound {bound} for n={self.n}; no function can satisfy it")
        elif self.require_balanced:
            best = _BALANCED_OPTIMUM.get(self.n)
            if best is None and self.n % 2 == 0:
                best = bound - 2
            if best is not None and self.min_nonlinearity > best:
                out.append(f"min_nonlinearity {self.min_nonlinearity} exceeds the best balanced "
                           f"nonlinearity {best} for n={self.n}")
        if self.require_balanced and self.min_ci_order is not None and self.min_degree is not None \
                and self.min_degree > self.n - self.min_ci_order - 1:
            out.append("min_degree is above the Siegenthaler bound n - m - 1 for resilient functions")
        return out

    def check(self, report: PropertyReport) -> list[Violation]:
        """Violations of every active bound by ``report`` (empty when it passes)."""
        out = []
        if self.require_balanced and not report.balanced:
            out.append(Violation("require_balanced", True, False))
        if self.min_nonlinearity is not None and report.nonlinearity < self.min_nonlinearity:
            out.append(Violation("min_nonlinearity", self.min_nonlinearity, report.nonlinearity))
        if self.max_absolute_indicator is not None and report.absolute_indicator > self.max_absolute_indicator:
            out.append(Violation("max_absolute_indicator", self.max_absolute_indicator,
                                 report.absolute_indicator))
        if self.max_sum_of_squares is not None and report.sum_of_squares > self.max_sum_of_squares:
            out.append(Violation("max_sum_of_squares", self.max_sum_of_squares, report.sum_of_squares))
        if self.min_degree is not None and report.algebraic_degree < self.min_degree:
            out.append(Violation("min_degree", self.min_degree, report.algebraic_degree))
        if self.min_ci_order is not None and report.ci_order < self.min_ci_order:
            out.append(Violation("min_ci_order", self.min_ci_order, report.ci_order))
        if self.min_algebraic_immunity is not None and (
                report.algebraic_immunity is None or report.algebraic_immunity < self.min_algebraic_immunity):
            out.append(Violation("min_algebraic_immunity", self.min_algebraic_immunity,
                                 report.algebraic_immunity))
        return out

    def to_text(self) -> str:
        lines = []
        for key in KEYS:
            value = getattr(self, key)
            if key == "require_balanced":
                lines.append(f"require_balanced = {'true' if value else 'false'}")
            elif value is not None:
                lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"


def evaluate_constraints(f: TruthTable, cs: ConstraintSystem,
                         report: PropertyReport | None = None) -> tuple[bool, list[Violation]]:
    if cs.n is not None and cs.n != f.n:
        raise DimensionError(f"constraints are for n={cs.n}, function has n={f.n}")
    if report is None:
        report = classify(f)
    violations = cs.check(report)
    return not violations, violations


def parse_constraints(text: str, source=None) -> ConstraintSystem:
    """Parse the line-oriented ``key = value`` constraint format."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col = raw.index(stripped[0]) + 1
        if "=" not in stripped:
            raise ParseError("expected 'key = value'", lineno, col, source)
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.split("#", 1)[0].strip()
        if key not in KEYS:
            raise ParseError(f"unknown constraint key {key!r}", lineno, col, source)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, col, source)
        vcol = raw.index("=") + 2
        if key == "require_balanced":
            if value.lower() not in ("true", "false"):
                raise ParseError(f"require_balanced must be true or false, got {value!r}", lineno, vcol, source)
            values[key] = value.lower() == "true"
        else:
            try:
                values[key] = int(value)
            except ValueError:
                raise ParseError(f"{key} needs an integer, got {value!r}", lineno, vcol, source) from None
    try:
        return ConstraintSystem(**values)
    except ValueError as exc:
        raise ParseError(str(exc), source=source) from None


def read_constraints(path) -> ConstraintSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_constraints(fh.read(), source=str(path))
