"""Segmented odd-only sieve with block-indexed prime counting.

The table stores one byte per odd number (1 iff prime), a reversed copy
used by the pair-counting kernel, and cumulative prime counts at fixed
block boundaries so that pi(x) costs at most one partial block scan.
Queries past the covered limit raise instead of extrapolating.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CoverageError, ResourceBudgetError

DEFAULT_SEGMENT_SIZE = 1 << 18   # integers sieved per pass
DEFAULT_BLOCK_SIZE = 4096        # integers per cumulative-count block
DEFAULT_MAX_BYTES = 2 << 30


class PrimeTable:
    """Immutable primality / prime-count oracle over [0, limit].

    Construction sieves odd numbers segment by segment; afterwards the
    table is read-only and safe to share across threads or processes.
    """

    __slots__ = ("limit", "_odd", "_rev", "_n_odds", "_block_odds", "_block_cum")

    def __init__(self, limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                 block_size: int = DEFAULT_BLOCK_SIZE,
                 max_bytes: int = DEFAULT_MAX_BYTES):
        if limit < 2:
            raise ValueError(f"limit must be >= 2, got {limit}")
        if segment_size < 2 or block_size < 2:
            raise ValueError("segment_size and block_size must be >= 2")
        n_odds = (limit + 1) // 2
        block_odds = max(1, block_size // 2)
        need = 2 * n_odds + 8 * (n_odds // block_odds + 2)
        if need > max_bytes:
            raise ResourceBudgetError(
                f"limit {limit} needs ~{need} bytes, budget is {max_bytes}")

        self.limit = limit
        self._n_odds = n_odds
        self._block_odds = block_odds
        self._odd = self._sieve(limit, n_odds, segment_size)
        self._rev = self._odd[::-1].copy()

        n_blocks = -(-n_odds // block_odds)
        per_block = np.add.reduceat(
            self._odd, np.arange(0, n_odds, block_odds), dtype=np.int64)
        cum = np.zeros(n_blocks + 1, dtype=np.int64)
        np.cumsum(per_block, out=cum[1:])
        self._block_cum = cum

    @staticmethod
    def _sieve(limit: int, n_odds: int, segment_size: int) -> np.ndarray:
        odd = np.ones(n_odds, dtype=np.uint8)
        odd[0] = 0  # the unit 1
        root = math.isqrt(limit)
        if root >= 3:
            mask = np.ones(root + 1, dtype=bool)
            mask[:2] = False
            for p in range(2, math.isqrt(root) + 1):
                if mask[p]:
                    mask[p * p:: p] = False
            small = np.nonzero(mask)[0]
            small = small[small > 2]  # even multiples are never odd
        else:
            small = np.empty(0, dtype=np.int64)

        seg_odds = max(1, segment_size // 2)
        for seg_start in range(0, n_odds, seg_odds):
            seg_end = min(seg_start + seg_odds, n_odds)
            seg_lo_val = 2 * seg_start + 1
            for p in small.tolist():
                lo_val = max(p * p, seg_lo_val)
                m = -(-lo_val // p)
                if m % 2 == 0:
                    m += 1
                idx = (p * m - 1) // 2
                if idx < seg_end:
                    odd[idx:seg_end:p] = 0
        return odd

    # -- queries ---------------------------------------------------------

    def _check_range(self, n: int, name: str = "n") -> None:
        if n < 0:
            raise ValueError(f"{name} must be >= 0, got {n}")
        if n > self.limit:
            raise CoverageError(
                f"{name}={n} exceeds table limit {self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check_range(n)
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        return bool(self._odd[(n - 1) // 2])

    def pi(self, x: int) -> int:
        """Exact count of primes <= x."""
        self._check_range(x, "x")
        if x < 2:
            return 0
        return 1 + self._count_idx(0, (x + 1) // 2)

    def odd_prime_count(self, lo: int, hi: int) -> int:
        """Count of odd primes p with lo <= p <= hi (closed interval)."""
        self._check_range(hi, "hi")
        if lo < 0 or lo > hi:
            raise ValueError(f"need 0 <= lo <= hi, got [{lo}, {hi}]")
        return self._count_idx(lo // 2, (hi + 1) // 2)

    @staticmethod
    def odd_count(lo: int, hi: int) -> int:
        """Count of odd integers in the closed interval [lo, hi]."""
        if lo > hi:
            return 0
        return (hi + 1) // 2 - lo // 2

    def _count_idx(self, i0: int, i1: int) -> int:
        """Odd primes with odd-index in [i0, i1); index i holds 2*i + 1."""
        if i0 >= i1:
            return 0
        B = self._block_odds
        b0 = -(-i0 // B)
        b1 = i1 // B
        if b0 > b1:
            return int(np.count_nonzero(self._odd[i0:i1]))
        total = int(self._block_cum[b1] - self._block_cum[b0])
        if i0 < b0 * B:
            total += int(np.count_nonzero(self._odd[i0:b0 * B]))
        if b1 * B < i1:
            total += int(np.count_nonzero(self._odd[b1 * B:i1]))
        return total

    # -- raw views for the pair-counting kernel ---------------------------

    @property
    def odd_flags(self) -> np.ndarray:
        """Read-only uint8 view: odd_flags[i] == 1 iff 2*i + 1 is prime."""
        return self._odd

    @property
    def odd_flags_rev(self) -> np.ndarray:
        """odd_flags reversed (contiguous copy), for mirrored slicing."""
        return self._rev

    @property
    def n_odds(self) -> int:
        return self._n_odds

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit})"
