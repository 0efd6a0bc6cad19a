"""Constrained steepest-ascent search for Boolean functions.

Each restart starts from a random table (a random permutation of 2^(n-1)
ones when balancedness is required) and repeatedly takes the best strictly
improving move: a single-entry flip, or a swap of a 0-entry with a 1-entry
in balanced mode. Moves are ranked lexicographically by

    (-CI deficit, nonlinearity, -multiplicity of max |W|,
     -absolute indicator, -sum-of-squares indicator)

where the CI deficit, the sum of |W(a)| over masks of weight 1..m, only
takes part when a correlation-immunity floor is set. Ties go to the lowest
flipped index, or the lowest (low, high) index pair for swaps. The Walsh
spectrum is carried incrementally; a restart ends at a local optimum or
when its iteration budget is spent.

Randomness: restart ``r`` draws from ``numpy.random.PCG64`` seeded with
``SeedSequence(seed, spawn_key=(r,))``, so every restart is reproducible on
its own and restarts may run in any order.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .boolean import TruthTable, linear_combination
from .constraints import ConstraintSystem, evaluate_constraints
from .errors import DimensionError, SearchFailure
from .properties import PropertyReport, classify
from .spectra import WalshSpectrum, fwht, walsh_spectrum

# rows x 2^n entries evaluated per numpy batch
_CHUNK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_iterations: int = 10_000
    max_restarts: int = 20
    # "all", or an int k meaning evaluate k random moves per iteration
    candidate_sampling: str | int = "all"
    # recompute the full spectrum after every accepted move and compare
    debug: bool = False

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.max_iterations < 1 or self.max_restarts < 1:
            raise ValueError("max_iterations and max_restarts must be >= 1")
        if self.candidate_sampling != "all" and not (
                isinstance(self.candidate_sampling, int) and self.candidate_sampling >= 1):
            raise ValueError("candidate_sampling must be 'all' or a positive int")

    @property
    def sample_size(self) -> int | None:
        return None if self.candidate_sampling == "all" else int(self.candidate_sampling)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["candidate_sampling"] = "all" if self.sample_size is None else f"sampled({self.sample_size})"
        return out


def parse_sampling(text: str) -> str | int:
    text = text.strip()
    if text in ("all", "all-flips"):
        return "all"
    if text.startswith("sampled(") and text.endswith(")"):
        return int(text[8:-1])
    return int(text)


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(restart,))))


@dataclass(frozen=True)
class SearchResult:
    function: TruthTable
    report: PropertyReport
    restart: int
    iterations: int
    total_iterations: int


def _characters(n: int, xs: np.ndarray) -> np.ndarray:
    """Rows (-1)^<a, x> over all masks a, one row per x in ``xs``."""
    a = np.arange(1 << n, dtype=np.int64)
    parity = np.bitwise_count(xs.astype(np.int64)[:, None] & a[None, :]) & 1
    return 1 - 2 * parity.astype(np.int64)


def incremental_walsh_update(w: WalshSpectrum, flipped_index: int) -> WalshSpectrum:
    """Spectrum after flipping one table entry, in O(2^n).

    The entry's current value is read back from the spectrum itself,
    (-1)^f(x) = 2^-n * sum_a W(a) (-1)^<a,x>.
    """
    size = 1 << w.n
    if not 0 <= flipped_index < size:
        raise DimensionError(f"index {flipped_index} out of range for n={w.n}")
    chi = _characters(w.n, np.array([flipped_index]))[0]
    sign = int(w.values @ chi) >> w.n
    return WalshSpectrum(w.n, w.values - 2 * sign * chi)


class _Scorer:
    """Vectorized objective over a batch of candidate spectra."""

    def __init__(self, cs: ConstraintSystem):
        n = cs.n
        self.n = n
        self.half = 1 << (n - 1)
        self.cs = cs
        if cs.min_ci_order:
            weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint32))
            self.ci_masks = np.flatnonzero((weights >= 1) & (weights <= cs.min_ci_order))
        else:
            self.ci_masks = None

    def cheap_keys(self, W: np.ndarray) -> list[np.ndarray]:
        absW = np.abs(W)
        peak = absW.max(axis=1)
        keys = []
        if self.ci_masks is not None:
            keys.append(-absW[:, self.ci_masks].sum(axis=1))
        keys.append(self.half - peak // 2)
        keys.append(-(absW == peak[:, None]).sum(axis=1))
        return keys

    def autocorrelation_keys(self, W: np.ndarray) -> list[np.ndarray]:
        ac = fwht(W * W) >> self.n
        off = np.abs(ac[:, 1:])
        absind = off.max(axis=1) if off.shape[1] else np.zeros(len(W), dtype=np.int64)
        return [-absind, -(ac * ac).sum(axis=1)]

    def key(self, W: np.ndarray) -> tuple:
        row = W[None, :]
        return tuple(int(k[0]) for k in self.cheap_keys(row) + self.autocorrelation_keys(row))

    def best(self, W: np.ndarray, order: np.ndarray) -> tuple[tuple, int]:
        """(key, row) of the lexicographically best row; ties go to the lowest ``order``."""
        idx = np.arange(len(W))
        key = []
        for k in self.cheap_keys(W):
            top = k[idx].max()
            idx = idx[k[idx] == top]
            key.append(int(top))
        pos = np.arange(len(idx))
        for k in self.autocorrelation_keys(W[idx]):
            top = k[pos].max()
            pos = pos[k[pos] == top]
            key.append(int(top))
        idx = idx[pos]
        row = int(idx[np.argmin(order[idx])])
        return tuple(key), row

    def cheap_pass(self, key: tuple) -> bool:
        cs = self.cs
        i = 0
        if self.ci_masks is not None:
            if key[0] != 0:
                return False
            i = 1
        nl, absind, sos = key[i], -key[i + 2], -key[i + 3]
        if cs.min_nonlinearity is not None and nl < cs.min_nonlinearity:
            return False
        if cs.max_absolute_indicator is not None and absind > cs.max_absolute_indicator:
            return False
        if cs.max_sum_of_squares is not None and sos > cs.max_sum_of_squares:
            return False
        return True


class _Restart:
    def __init__(self, cs, cfg, scorer, restart, cancel=None, on_accept=None):
        self.cs, self.cfg, self.scorer = cs, cfg, scorer
        self.restart = restart
        self.cancel = cancel
        self.on_accept = on_accept
        self.n = cs.n
        self.size = 1 << cs.n
        self.rng = restart_rng(cfg.seed, restart)
        self.iterations = 0
        self.best_key = None
        self.best_bits = None
        self._dense = _characters(self.n, np.arange(self.size)) if self.n <= 12 else None

    def chars(self, xs):
        if self._dense is not None:
            return self._dense[xs]
        return _characters(self.n, xs)

    def _moves(self, bits):
        """Candidate moves as (first, second) index arrays; second is -1 for flips."""
        size = self.size
        if self.cs.require_balanced:
            ones, zeros = np.flatnonzero(bits), np.flatnonzero(bits ^ 1)
            total = len(ones) * len(zeros)
            if total == 0:
                return np.empty(0, np.int64), np.empty(0, np.int64)
            picks = np.arange(total)
            k = self.cfg.sample_size
            if k is not None and k < total:
                picks = np.sort(self.rng.choice(total, size=k, replace=False))
            p, q = ones[picks // len(zeros)], zeros[picks % len(zeros)]
            return np.minimum(p, q), np.maximum(p, q)
        xs = np.arange(size)
        k = self.cfg.sample_size
        if k is not None and k < size:
            xs = np.sort(self.rng.choice(size, size=k, replace=False))
        return xs, np.full(len(xs), -1)

    def _best_move(self, bits, signs, W):
        first, second = self._moves(bits)
        if len(first) == 0:
            return None, None, None
        order = first * self.size + np.where(second < 0, 0, second)
        rows = max(1, _CHUNK_ELEMENTS // self.size)
        best = None
        for start in range(0, len(first), rows):
            a, b = first[start:start + rows], second[start:start + rows]
            Wc = W[None, :] - 2 * signs[a][:, None] * self.chars(a)
            swap = b >= 0
            if swap.any():
                Wc[swap] -= 2 * signs[b[swap]][:, None] * self.chars(b[swap])
            key, row = self.scorer.best(Wc, order[start:start + rows])
            candidate = (key, -int(order[start + row]))
            if best is None or candidate > best[0]:
                best = (candidate, start + row, Wc[row].copy())
        (key, _), pos, Wnew = best
        return key, (int(first[pos]), int(second[pos])), Wnew

    def _verified(self, bits, key):
        if not self.scorer.cheap_pass(key):
            return None
        f = TruthTable(bits)
        report = classify(f)
        ok, _ = evaluate_constraints(f, self.cs, report)
        return (f, report) if ok else None

    def run(self):
        """Climb from a fresh random start; returns (function, report) or None."""
        start = TruthTable.random(self.n, self.rng, balanced=self.cs.require_balanced)
        bits = start.bits.copy()
        signs = start.signs()
        W = fwht(signs)
        key = self.scorer.key(W)
        self._track(key, bits)
        found = self._verified(bits, key)
        if found:
            return found
        while self.iterations < self.cfg.max_iterations:
            if self.cancel is not None and self.cancel(self.restart):
                return None
            self.iterations += 1
            new_key, move, Wnew = self._best_move(bits, signs, W)
            if new_key is None or new_key <= key:
                return None
            for x in move:
                if x >= 0:
                    bits[x] ^= 1
                    signs[x] = -signs[x]
            W, key = Wnew, new_key
            if self.cfg.debug and not np.array_equal(W, fwht(signs)):
                raise AssertionError("incremental spectrum diverged from the full transform")
            if self.on_accept is not None:
                self.on_accept(self.restart, self.iterations, TruthTable(bits), W.copy())
            self._track(key, bits)
            found = self._verified(bits, key)
            if found:
                return found
        return None

    def _track(self, key, bits):
        if self.best_key is None or key > self.best_key:
            self.best_key, self.best_bits = key, bits.copy()


def constrained_search(cs: ConstraintSystem, cfg: SearchConfig, workers: int | None = None,
                       on_accept=None) -> SearchResult:
    """Run restarts until one yields a function satisfying ``cs``.

    The lowest successful restart index wins, so the result does not depend
    on ``workers``. Raises :class:`SearchFailure` with the best table seen
    once every restart is exhausted.
    """
    if cs.n is None:
        raise ValueError("the constraint system must fix n")
    scorer = _Scorer(cs)

    if workers and workers > 1 and on_accept is None:
        winner = [cfg.max_restarts]
        lock = threading.Lock()

        def cancelled(r):
            return winner[0] < r

        def job(r):
            restart = _Restart(cs, cfg, scorer, r, cancel=cancelled)
            out = restart.run()
            if out is not None:
                with lock:
                    winner[0] = min(winner[0], r)
            return restart, out

        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, range(cfg.max_restarts)))
    else:
        outcomes = []
        for r in range(cfg.max_restarts):
            restart = _Restart(cs, cfg, scorer, r, on_accept=on_accept)
            out = restart.run()
            outcomes.append((restart, out))
            if out is not None:
                break

    total = 0
    for restart, out in outcomes:
        total += restart.iterations
        if out is not None:
            f, report = out
            return SearchResult(f, report, restart.restart, restart.iterations, total)

    tracked = [r for r, _ in outcomes if r.best_key is not None]
    best = max(tracked, key=lambda r: r.best_key)
    f = TruthTable(best.best_bits)
    report = classify(f)
    raise SearchFailure(
        f"no function met the constraints within {cfg.max_restarts} restarts "
        f"of at most {cfg.max_iterations} iterations",
        best=f, report=report)


def gradient_descent_search(cs: ConstraintSystem, cfg: SearchConfig) -> TruthTable:
    return constrained_search(cs, cfg).function


def check_component_constraints(components, cs: ConstraintSystem) -> tuple[bool, list[int]]:
    """Evaluate ``cs`` on every nonzero linear combination of the components."""
    if not components:
        raise ValueError("empty component list")
    n = components[0].n
    m = len(components)
    if m > n:
        raise DimensionError(f"{m} components exceed n={n}")
    cs = cs.for_n(n)
    failing = []
    for mask in range(1, 1 << m):
        ok, _ = evaluate_constraints(linear_combination(components, mask), cs)
        if not ok:
            failing.append(mask)
    return not failing, failing
