"""Walsh-Hadamard, Moebius and autocorrelation spectra.

Both transforms are radix-2 butterflies over the last axis of an integer
array, so they also run on stacks of tables (shape ``(..., 2**n)``).
"""
from __future__ import annotations

import numpy as np

from .boolean import TruthTable
from .errors import DimensionError


def fwht(values) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along the last axis.

    Returns a new int64 array; the input is not modified. Applying it twice
    multiplies by 2**n.
    """
    a = np.array(values, dtype=np.int64)
    size = a.shape[-1]
    if size & (size - 1):
        raise DimensionError(f"transform length {size} is not a power of two")
    h = 1
    while h < size:
        v = a.reshape(-1, size // (2 * h), 2, h)
        lo = v[:, :, 0, :].copy()
        hi = v[:, :, 1, :]
        v[:, :, 0, :] += hi
        hi *= -1
        hi += lo
        h *= 2
    return a


def moebius(values) -> np.ndarray:
    """Binary Moebius transform (truth table <-> ANF) along the last axis.

    The transform is an involution over GF(2).
    """
    a = np.array(values, dtype=np.uint8)
    size = a.shape[-1]
    if size & (size - 1):
        raise DimensionError(f"transform length {size} is not a power of two")
    h = 1
    while h < size:
        v = a.reshape(-1, size // (2 * h), 2, h)
        v[:, :, 1, :] ^= v[:, :, 0, :]
        h *= 2
    return a


class _Spectrum:
    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        arr = np.array(values, dtype=np.int64)
        if arr.shape != (1 << n,):
            raise DimensionError(f"spectrum of n={n} needs {1 << n} entries, got {arr.shape}")
        arr.flags.writeable = False
        self.n = n
        self.values = arr

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, a):
        return int(self.values[a])

    def __iter__(self):
        return (int(v) for v in self.values)

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.values.tobytes()))

    def __repr__(self):
        body = self.values.tolist() if self.n <= 4 else f"<{len(self)} values>"
        return f"{type(self).__name__}(n={self.n}, {body})"


class WalshSpectrum(_Spectrum):
    """W_f(a) = sum_x (-1)^(f(x) ^ <a,x>), indexed by mask a."""

    __slots__ = ()


class AutocorrelationSpectrum(_Spectrum):
    """D_f(d) = sum_x (-1)^(f(x) ^ f(x ^ d)), indexed by shift d."""

    __slots__ = ()


class AnfCoefficients:
    """Algebraic normal form: coeffs[m] is the coefficient of prod_{i in m} x_i."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        arr = np.array(coeffs, dtype=np.uint8)
        if arr.shape != (1 << n,):
            raise DimensionError(f"ANF of n={n} needs {1 << n} coefficients")
        arr.flags.writeable = False
        self.n = n
        self.coeffs = arr

    @property
    def degree(self) -> int:
        masks = np.flatnonzero(self.coeffs)
        if masks.size == 0:
            return 0
        return int(max(bin(int(m)).count("1") for m in masks))

    def monomials(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(self.coeffs)]

    def to_truth_table(self) -> TruthTable:
        return TruthTable(moebius(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, AnfCoefficients):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.coeffs.tobytes()))

    def __str__(self):
        terms = []
        for m in self.monomials():
            if m == 0:
                terms.append("1")
            else:
                terms.append("".join(f"x{i + 1}" for i in range(self.n) if m >> i & 1))
        return " ^ ".join(terms) if terms else "0"

    def __repr__(self):
        return f"AnfCoefficients(n={self.n}, {self})"


def walsh_spectrum(f: TruthTable) -> WalshSpectrum:
    return WalshSpectrum(f.n, fwht(f.signs()))


def moebius_transform(f: TruthTable) -> AnfCoefficients:
    return AnfCoefficients(f.n, moebius(f.bits))


def algebraic_degree(f: TruthTable) -> int:
    return moebius_transform(f).degree


def autocorrelation(f: TruthTable, method: str = "spectral") -> AutocorrelationSpectrum:
    """Autocorrelation spectrum.

    ``method="spectral"`` inverts the squared Walsh spectrum (O(n 2^n));
    ``method="direct"`` evaluates the defining sum (O(4^n)).
    """
    if method == "spectral":
        return autocorrelation_from_walsh(walsh_spectrum(f))
    if method == "direct":
        s = f.signs()
        x = np.arange(1 << f.n)
        return AutocorrelationSpectrum(f.n, [int(s @ s[x ^ d]) for d in range(1 << f.n)])
    raise ValueError(f"unknown method {method!r}")


def autocorrelation_from_walsh(w: WalshSpectrum) -> AutocorrelationSpectrum:
    sq = w.values * w.values
    return AutocorrelationSpectrum(w.n, fwht(sq) >> w.n)
