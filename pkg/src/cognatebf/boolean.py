"""Truth-table representation of Boolean functions and its text format.

Index convention (used everywhere, including files): entry ``x`` of a table
is f(x), and variable x_i is bit (i - 1) of ``x``, so x_1 is the least
significant index bit.
"""
from __future__ import annotations

import numpy as np

from .errors import CapacityError, DimensionError, ParseError

MAX_VARIABLES = 20

_HEX_DIGITS = "0123456789abcdef"


class TruthTable:
    """Immutable value vector of an n-variable Boolean function."""

    __slots__ = ("_n", "_bits", "_hash")

    def __init__(self, bits, n: int | None = None):
        arr = np.asarray(bits)
        if arr.ndim != 1:
            raise DimensionError("truth table must be one-dimensional")
        size = arr.shape[0]
        if size < 2 or size & (size - 1):
            raise DimensionError(f"truth table length {size} is not 2^n with n >= 1")
        inferred = size.bit_length() - 1
        if n is not None and n != inferred:
            raise DimensionError(f"length {size} does not match n={n}")
        if inferred > MAX_VARIABLES:
            raise CapacityError(f"n={inferred} exceeds the cap of {MAX_VARIABLES} variables")
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        elif not np.all((arr == 0) | (arr == 1)):
            raise ValueError("truth table entries must be 0 or 1")
        out = np.array(arr, dtype=np.uint8)
        out.flags.writeable = False
        self._n = inferred
        self._bits = out
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, n: int, value: int = 0) -> TruthTable:
        return cls(np.full(1 << n, value & 1, dtype=np.uint8))

    @classmethod
    def variable(cls, i: int, n: int) -> TruthTable:
        """The coordinate function x_i (1-based)."""
        if not 1 <= i <= n:
            raise DimensionError(f"variable x_{i} does not exist for n={n}")
        return cls((np.arange(1 << n) >> (i - 1)) & 1)

    @classmethod
    def from_callable(cls, n: int, fn) -> TruthTable:
        """Tabulate ``fn(x1, ..., xn)`` over all inputs."""
        return cls([int(fn(*((x >> i) & 1 for i in range(n)))) & 1 for x in range(1 << n)])

    @classmethod
    def from_int(cls, value: int, n: int) -> TruthTable:
        """Bit ``x`` of ``value`` becomes f(x)."""
        raw = value.to_bytes(max(1, (1 << n) // 8), "little")
        return cls(np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[: 1 << n])

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, balanced: bool = False) -> TruthTable:
        if balanced:
            bits = np.zeros(1 << n, dtype=np.uint8)
            bits[: 1 << (n - 1)] = 1
            return cls(rng.permutation(bits))
        return cls(rng.integers(0, 2, size=1 << n, dtype=np.uint8))

    # -- views --------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self):
        return self._bits.shape[0]

    def __getitem__(self, x):
        return int(self._bits[x])

    def __iter__(self):
        return (int(b) for b in self._bits)

    @property
    def weight(self) -> int:
        return int(self._bits.sum(dtype=np.int64))

    def signs(self) -> np.ndarray:
        """(-1)^f(x) as a signed integer vector."""
        return 1 - 2 * self._bits.astype(np.int64)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self._bits)

    def to_int(self) -> int:
        return int.from_bytes(np.packbits(self._bits, bitorder="little").tobytes(), "little")

    # -- algebra ------------------------------------------------------
    def complement(self) -> TruthTable:
        return TruthTable(self._bits ^ 1)

    def flip(self, x: int) -> TruthTable:
        bits = self._bits.copy()
        bits[x] ^= 1
        return TruthTable(bits)

    def __xor__(self, other):
        if isinstance(other, TruthTable):
            if other.n != self.n:
                raise DimensionError(f"cannot combine n={self.n} with n={other.n}")
            return TruthTable(self._bits ^ other._bits)
        if other in (0, 1):
            return TruthTable(self._bits ^ other)
        return NotImplemented

    __rxor__ = __xor__

    def __and__(self, other: TruthTable) -> TruthTable:
        if other.n != self.n:
            raise DimensionError(f"cannot combine n={self.n} with n={other.n}")
        return TruthTable(self._bits & other._bits)

    def distance(self, other: TruthTable) -> int:
        if other.n != self.n:
            raise DimensionError(f"cannot compare n={self.n} with n={other.n}")
        return int(np.count_nonzero(self._bits != other._bits))

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._bits.tobytes()))
        return self._hash

    def __repr__(self):
        token = format_truth_table(self, hex_form=self.n >= 5)
        if len(token) > 40:
            token = token[:37] + "..."
        return f"TruthTable(n={self.n}, {token})"


def inner_product_bent(n: int) -> TruthTable:
    """x1x2 ^ x3x4 ^ ... ^ x_{n-1}x_n for even n."""
    if n < 2 or n % 2:
        raise DimensionError("the inner-product bent function needs an even n >= 2")
    x = np.arange(1 << n)
    bits = np.zeros(1 << n, dtype=np.uint8)
    for i in range(0, n, 2):
        bits ^= (((x >> i) & (x >> (i + 1))) & 1).astype(np.uint8)
    return TruthTable(bits)


# -- text format ---------------------------------------------------------

def format_truth_table(f: TruthTable, hex_form: bool = False) -> str:
    """Render the single-token text form ("0110..." or "hex:...")."""
    if not hex_form:
        return "".join("1" if b else "0" for b in f.bits)
    if f.n < 2:
        raise DimensionError("hex form needs n >= 2")
    nibbles = f.bits.reshape(-1, 4).astype(np.int64) @ np.array([8, 4, 2, 1])
    return "hex:" + "".join(_HEX_DIGITS[v] for v in nibbles)


def parse_token(token: str, line: int | None = None, column: int = 1, source=None) -> TruthTable:
    if token.lower().startswith("hex:"):
        digits = token[4:].lower()
        count = len(digits)
        if count == 0 or count & (count - 1):
            raise ParseError(f"hex form needs 2^n/4 digits (power of two), got {count}",
                             line, column + 4, source)
        bits = []
        for k, ch in enumerate(digits):
            v = _HEX_DIGITS.find(ch)
            if v < 0:
                raise ParseError(f"invalid hex digit {ch!r}", line, column + 4 + k, source)
            bits.extend((v >> s) & 1 for s in (3, 2, 1, 0))
    else:
        count = len(token)
        bits = []
        for k, ch in enumerate(token):
            if ch not in "01":
                raise ParseError(f"invalid truth-table character {ch!r}", line, column + k, source)
            bits.append(ord(ch) - 48)
        if count < 2 or count & (count - 1):
            raise ParseError(f"truth table length {count} is not 2^n with n >= 1", line, column, source)
    if len(bits).bit_length() - 1 > MAX_VARIABLES:
        raise ParseError(f"more than {MAX_VARIABLES} variables", line, column, source)
    return TruthTable(np.array(bits, dtype=np.uint8))


def parse_truth_table(text: str, source=None) -> TruthTable:
    """Parse the truth-table text format: '#' comment lines, then one token."""
    found = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if found is not None:
            raise ParseError("unexpected content after the truth-table token", lineno,
                             raw.index(stripped[0]) + 1, source)
        parts = stripped.split()
        column = raw.index(parts[0]) + 1
        if len(parts) > 1:
            raise ParseError("expected a single token", lineno, raw.index(parts[1], column) + 1, source)
        found = parse_token(parts[0], lineno, column, source)
    if found is None:
        raise ParseError("no truth-table token found", source=source)
    return found


def read_truth_table(path) -> TruthTable:
    with open(path, encoding="utf-8") as fh:
        return parse_truth_table(fh.read(), source=str(path))


def linear_combination(components, mask: int) -> TruthTable:
    """XOR of the components selected by the bits of ``mask`` (bit i -> component i)."""
    if not components:
        raise ValueError("no components given")
    n = components[0].n
    acc = np.zeros(1 << n, dtype=np.uint8)
    for i, f in enumerate(components):
        if f.n != n:
            raise DimensionError(f"component {i} has n={f.n}, expected n={n}")
        if mask >> i & 1:
            acc ^= f.bits
    return TruthTable(acc)
