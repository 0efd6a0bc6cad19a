"""Cryptographic properties of single Boolean functions."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .boolean import TruthTable
from .errors import CapacityError
from .spectra import (
    AutocorrelationSpectrum,
    WalshSpectrum,
    autocorrelation_from_walsh,
    moebius_transform,
    walsh_spectrum,
)

MAX_AI_VARIABLES = 14


def covering_radius_bound(n: int) -> int:
    """floor(2^(n-1) - 2^(n/2-1)): no n-variable function has higher nonlinearity."""
    if n == 1:
        return 0
    square = 1 << (n - 2)  # (2^(n/2-1))^2
    root = math.isqrt(square)
    if root * root < square:
        root += 1
    return (1 << (n - 1)) - root


def nonlinearity_from_walsh(w: WalshSpectrum) -> int:
    return (1 << (w.n - 1)) - int(np.abs(w.values).max()) // 2


def nonlinearity(f: TruthTable) -> int:
    return nonlinearity_from_walsh(walsh_spectrum(f))


def indicators(ac: AutocorrelationSpectrum) -> tuple[int, int]:
    """(absolute indicator, sum-of-squares indicator)."""
    off_peak = np.abs(ac.values[1:])
    absolute = int(off_peak.max()) if off_peak.size else 0
    return absolute, int((ac.values * ac.values).sum())


def _mask_weights(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


def correlation_immunity_from_walsh(w: WalshSpectrum) -> int:
    weights = _mask_weights(w.n)
    nonzero = weights[(w.values != 0) & (weights > 0)]
    if nonzero.size == 0:
        return w.n
    return int(nonzero.min()) - 1


def correlation_immunity_order(f: TruthTable) -> int:
    """Largest m with W_f(a) = 0 for every mask of weight 1..m."""
    return correlation_immunity_from_walsh(walsh_spectrum(f))


def linear_structures(ac: AutocorrelationSpectrum) -> frozenset[int]:
    full = 1 << ac.n
    hits = np.flatnonzero(np.abs(ac.values) == full)
    return frozenset(int(d) for d in hits if d != 0)


def _monomials_by_degree(n: int):
    for d in range(n + 1):
        yield d, [sum(1 << i for i in c) for c in combinations(range(n), d)]


def _column(points: np.ndarray, mask: int) -> int:
    """Monomial ``mask`` evaluated on ``points`` packed into a Python int."""
    hits = (points & mask) == mask
    return int.from_bytes(np.packbits(hits, bitorder="little").tobytes(), "little")


class _Gf2Basis:
    """Row-echelon basis over GF(2) with vectors stored as Python ints."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def insert(self, v: int) -> bool:
        """Add ``v``; False when it is already in the span (a dependency)."""
        while v:
            top = v.bit_length() - 1
            pivot = self.pivots.get(top)
            if pivot is None:
                self.pivots[top] = v
                return True
            v ^= pivot
        return False


def algebraic_immunity(f: TruthTable) -> int:
    """Minimum degree of a nonzero annihilator of f or of f ^ 1.

    Monomial columns evaluated on each support are added in increasing degree
    to a GF(2) echelon basis that persists across degrees; the first column
    that falls into the span of earlier ones exposes an annihilator of that
    degree.
    """
    if f.n > MAX_AI_VARIABLES:
        raise CapacityError(f"algebraic immunity is capped at n={MAX_AI_VARIABLES}, got n={f.n}")
    n = f.n
    supports = [np.flatnonzero(f.bits), np.flatnonzero(f.bits ^ 1)]
    bases = [_Gf2Basis(), _Gf2Basis()]
    limit = (n + 1) // 2
    for d, masks in _monomials_by_degree(n):
        for points, basis in zip(supports, bases):
            # a kernel vector exists once columns outnumber support points
            if len(basis.pivots) + len(masks) > len(points):
                return d
            for m in masks:
                if not basis.insert(_column(points, m)):
                    return d
        if d == limit:
            break
    raise AssertionError("no annihilator up to degree ceil(n/2)")  # pragma: no cover


@dataclass(frozen=True)
class PropertyReport:
    n: int
    weight: int
    balanced: bool
    nonlinearity: int
    algebraic_degree: int
    absolute_indicator: int
    sum_of_squares: int
    ci_order: int
    resiliency_order: int | None
    algebraic_immunity: int | None
    is_bent: bool
    linear_structures: frozenset = field(default_factory=frozenset)

    @property
    def algebraically_nondegenerate(self) -> bool:
        return not self.linear_structures

    def to_dict(self) -> dict:
        out = asdict(self)
        out["linear_structures"] = sorted(self.linear_structures)
        if self.resiliency_order is None:
            out["resiliency_order"] = "not balanced"
        out["algebraically_nondegenerate"] = self.algebraically_nondegenerate
        return out

    @classmethod
    def from_dict(cls, data: dict) -> PropertyReport:
        kwargs = {k: data[k] for k in cls.__dataclass_fields__}
        if kwargs["resiliency_order"] == "not balanced":
            kwargs["resiliency_order"] = None
        kwargs["linear_structures"] = frozenset(kwargs["linear_structures"])
        return cls(**kwargs)


def classify(f: TruthTable) -> PropertyReport:
    """Aggregate every property; algebraic immunity is None above its size cap."""
    n = f.n
    w = walsh_spectrum(f)
    ac = autocorrelation_from_walsh(w)
    weight = f.weight
    balanced = 2 * weight == 1 << n
    absolute, sos = indicators(ac)
    ci = correlation_immunity_from_walsh(w)
    bent = n % 2 == 0 and bool(np.all(np.abs(w.values) == 1 << (n // 2)))
    return PropertyReport(
        n=n,
        weight=weight,
        balanced=balanced,
        nonlinearity=nonlinearity_from_walsh(w),
        algebraic_degree=moebius_transform(f).degree,
        absolute_indicator=absolute,
        sum_of_squares=sos,
        ci_order=ci,
        resiliency_order=ci if balanced else None,
        algebraic_immunity=algebraic_immunity(f) if n <= MAX_AI_VARIABLES else None,
        is_bent=bent,
        linear_structures=linear_structures(ac),
    )
