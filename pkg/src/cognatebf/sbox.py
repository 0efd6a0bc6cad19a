"""Substitution tables assembled from component Boolean functions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolean import TruthTable, linear_combination
from .errors import DimensionError, ParseError
from .properties import PropertyReport, classify
from .spectra import fwht

MAX_SBOX_INPUTS = 16


class SubstitutionTable:
    """An n-bit to m-bit table; output bit i is component i (bit 0 least significant)."""

    __slots__ = ("n", "m", "table", "components")

    def __init__(self, table, m: int):
        arr = np.array(table, dtype=np.int64)
        size = arr.shape[0] if arr.ndim == 1 else 0
        if size < 2 or size & (size - 1):
            raise DimensionError(f"table length {size} is not 2^n with n >= 1")
        n = size.bit_length() - 1
        if not 1 <= m <= n <= MAX_SBOX_INPUTS:
            raise DimensionError(f"need 1 <= m <= n <= {MAX_SBOX_INPUTS}, got n={n}, m={m}")
        if arr.min() < 0 or arr.max() >= 1 << m:
            raise ValueError(f"table entries must lie in [0, 2^{m})")
        arr.flags.writeable = False
        self.n, self.m, self.table = n, m, arr
        self.components = tuple(TruthTable((arr >> i) & 1) for i in range(m))

    @property
    def is_square(self) -> bool:
        return self.n == self.m

    def combination(self, mask: int) -> TruthTable:
        return linear_combination(self.components, mask)

    def combination_bits(self) -> np.ndarray:
        """Row c - 1 holds the truth table of the combination selected by mask c."""
        masks = np.arange(1, 1 << self.m, dtype=np.int64)
        return (np.bitwise_count(self.table[None, :] & masks[:, None]) & 1).astype(np.uint8)

    def __eq__(self, other):
        if not isinstance(other, SubstitutionTable):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.m, self.table.tobytes()))

    def __repr__(self):
        return f"SubstitutionTable(n={self.n}, m={self.m})"


def build_sbox(components) -> SubstitutionTable:
    """table[x] = sum_i components[i](x) * 2^i."""
    components = list(components)
    if not components:
        raise ValueError("empty component list")
    n = components[0].n
    table = np.zeros(1 << n, dtype=np.int64)
    for i, f in enumerate(components):
        if f.n != n:
            raise DimensionError(f"component {i} has n={f.n}, expected n={n}")
        table |= f.bits.astype(np.int64) << i
    return SubstitutionTable(table, len(components))


def sbox_nonlinearity(s: SubstitutionTable) -> int:
    """Minimum nonlinearity over all nonzero combinations of components."""
    spectra = fwht(1 - 2 * s.combination_bits().astype(np.int64))
    peak = int(np.abs(spectra).max())
    return (1 << (s.n - 1)) - peak // 2


def is_permutation(s: SubstitutionTable) -> bool:
    if not s.is_square:
        raise DimensionError("bijectivity needs n = m")
    return np.unique(s.table).size == s.table.size


def all_combinations_balanced(s: SubstitutionTable) -> bool:
    if not s.is_square:
        raise DimensionError("bijectivity needs n = m")
    weights = s.combination_bits().sum(axis=1, dtype=np.int64)
    return bool(np.all(2 * weights == 1 << s.n))


def is_bijective(s: SubstitutionTable) -> bool:
    """Permutation check cross-validated by balancedness of every combination."""
    direct = is_permutation(s)
    if direct != all_combinations_balanced(s):
        raise AssertionError("permutation scan and combination balancedness disagree")
    return direct


@dataclass(frozen=True)
class SboxReport:
    n: int
    m: int
    combinations: tuple[tuple[int, PropertyReport], ...]
    min_nonlinearity: int
    max_absolute_indicator: int
    bijective: bool | None
    worst_linear_structure_count: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "min_nonlinearity": self.min_nonlinearity,
            "max_absolute_indicator": self.max_absolute_indicator,
            "bijective": self.bijective,
            "worst_linear_structure_count": self.worst_linear_structure_count,
            "combinations": [{"mask": mask, **r.to_dict()} for mask, r in self.combinations],
        }


def sbox_report(s: SubstitutionTable) -> SboxReport:
    combos = tuple((c, classify(s.combination(c))) for c in range(1, 1 << s.m))
    reports = [r for _, r in combos]
    return SboxReport(
        n=s.n,
        m=s.m,
        combinations=combos,
        min_nonlinearity=min(r.nonlinearity for r in reports),
        max_absolute_indicator=max(r.absolute_indicator for r in reports),
        bijective=is_bijective(s) if s.is_square else None,
        worst_linear_structure_count=max(len(r.linear_structures) for r in reports),
    )


# -- file format ---------------------------------------------------------

def format_sbox(s: SubstitutionTable, header_lines=()) -> str:
    width = max(1, (s.m + 3) // 4)
    lines = [f"# {h}" for h in header_lines]
    lines.append(f"n={s.n} m={s.m}")
    per_row = 16
    for start in range(0, len(s.table), per_row):
        lines.append(" ".join(f"{int(v):0{width}x}" for v in s.table[start:start + per_row]))
    return "\n".join(lines) + "\n"


def parse_sbox(text: str, source=None) -> SubstitutionTable:
    header = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            fields = dict(part.split("=", 1) for part in stripped.split() if "=" in part)
            try:
                header = int(fields["n"]), int(fields["m"])
            except (KeyError, ValueError):
                raise ParseError("expected header 'n=<n> m=<m>'", lineno, raw.index(stripped[0]) + 1,
                                 source) from None
            continue
        col = 0
        for token in raw.split():
            col = raw.index(token, col)
            try:
                entries.append(int(token, 16))
            except ValueError:
                raise ParseError(f"invalid hex entry {token!r}", lineno, col + 1, source) from None
            col += len(token)
    if header is None:
        raise ParseError("missing 'n=<n> m=<m>' header", source=source)
    n, m = header
    if len(entries) != 1 << n:
        raise ParseError(f"expected {1 << n} entries for n={n}, found {len(entries)}", source=source)
    try:
        return SubstitutionTable(entries, m)
    except ValueError as exc:
        raise ParseError(str(exc), source=source) from None


def read_sbox(path) -> SubstitutionTable:
    with open(path, encoding="utf-8") as fh:
        return parse_sbox(fh.read(), source=str(path))
