"""Quadruple decomposition of an even number's odd-pair sums.

For even E, every pair of odd positives x <= y with x + y = E is one
"interaction".  Classifying the members by primality splits the
floor((E+2)/4) interactions into four counts:

    a  both nonprime        b  x nonprime, y prime
    c  x prime, y nonprime  d  both prime

where the midpoint pair x == y (present exactly when E % 4 == 2)
contributes 1/2 to a or d.  Then a + b + c + d = E/4 exactly, and the
wing sums L1 = a+b, L2 = c+d, R1 = a+c, R2 = b+d have ceilings equal to
the number of odd nonprimes/primes in [0, E/2] and [E/2, E] (1 counts
as an odd nonprime; intervals closed on both ends).

All arithmetic is exact: counts are ints, half-integers are `Half`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import CoverageError
from .halfint import Half
from .primes import PrimeTable

SELF_NONE = "none"
SELF_PRIME = "prime_self"
SELF_NONPRIME = "nonprime_self"


@dataclass(frozen=True)
class InteractionTallies:
    """Strict-pair counts plus the kind of the midpoint self-pair."""
    E: int
    nn: int
    np: int
    pn: int
    pp: int
    self_kind: str


@dataclass(frozen=True)
class Decomposition:
    E: int
    tallies: InteractionTallies
    a: Half
    b: int
    c: int
    d: Half
    L1: Half
    L2: Half
    R1: Half
    R2: Half

    @property
    def quadruple(self):
        return (self.a, self.b, self.c, self.d)

    def doubled_quadruple(self) -> tuple[int, int, int, int]:
        """(2a, 2b, 2c, 2d) as exact ints, the classifier's input."""
        return (self.a.doubled, 2 * self.b, 2 * self.c, self.d.doubled)


@dataclass(frozen=True)
class IdentityReport:
    """Exact truth values of the model identities for one E.

    halving_ok checks the strict halving form (the half-unit always
    credited to the nonprime side); halving_exact_ok credits it to
    whichever side the midpoint E/2 actually belongs to.  Both are None
    when E/2 < 2, where no half-size decomposition exists.
    """
    E: int
    eq2_1_ok: bool
    eq8_6_ok: bool
    eq22_ok: bool
    eq22_5_ok: bool
    halving_ok: Optional[bool]
    halving_exact_ok: Optional[bool]
    wing_count_ok: bool

    def failed_ids(self) -> list[str]:
        out = []
        for name, flag in (("eq2_1", self.eq2_1_ok), ("eq8_6", self.eq8_6_ok),
                           ("eq22", self.eq22_ok), ("eq22_5", self.eq22_5_ok),
                           ("halving", self.halving_ok),
                           ("halving_exact", self.halving_exact_ok),
                           ("wing_count", self.wing_count_ok)):
            if flag is False:
                out.append(name)
        return out


def _check_even(E: int) -> None:
    if E < 2 or E % 2 != 0:
        raise ValueError(f"E must be a positive even number, got {E}")


def interactions(E: int) -> Iterator[tuple[int, int]]:
    """Yield the pairs (x, y), x <= y odd, x + y = E, in increasing x."""
    _check_even(E)
    for x in range(1, E // 2 + 1, 2):
        yield (x, E - x)


def _pair_tallies(E: int, table: PrimeTable) -> InteractionTallies:
    """Count the four primality classes with three vector reductions.

    x runs over odd indices [0, K); y = E - x is the mirrored slice of
    the same bitmap, taken from the precomputed reversed copy so both
    operands stay contiguous.
    """
    h = E // 2
    K = (E + 2) // 4
    odd = table.odd_flags
    rev = table.odd_flags_rev
    n = table.n_odds

    u = odd[0:K]
    vr = rev[n - h:n - h + K]
    pp_dot = int(np.count_nonzero(u & vr))
    su = table._count_idx(0, K)
    sv = table._count_idx(h - K, h)

    if E % 4 == 2:  # midpoint pair (E/2, E/2), E/2 odd
        mid_prime = bool(odd[(h - 1) // 2])
        self_kind = SELF_PRIME if mid_prime else SELF_NONPRIME
    else:
        self_kind = SELF_NONE

    nn_dot = K - su - sv + pp_dot
    tallies = InteractionTallies(
        E=E,
        nn=nn_dot - (1 if self_kind == SELF_NONPRIME else 0),
        np=sv - pp_dot,
        pn=su - pp_dot,
        pp=pp_dot - (1 if self_kind == SELF_PRIME else 0),
        self_kind=self_kind,
    )
    return tallies


def decompose(E: int, table: PrimeTable) -> Decomposition:
    """Exact quadruple and wings for E; needs table.limit >= E."""
    _check_even(E)
    if table.limit < E:
        raise CoverageError(f"table limit {table.limit} < E = {E}")
    t = _pair_tallies(E, table)
    a2 = 2 * t.nn + (1 if t.self_kind == SELF_NONPRIME else 0)
    d2 = 2 * t.pp + (1 if t.self_kind == SELF_PRIME else 0)
    b, c = t.np, t.pn
    return Decomposition(
        E=E, tallies=t,
        a=Half(a2), b=b, c=c, d=Half(d2),
        L1=Half(a2 + 2 * b), L2=Half(2 * c + d2),
        R1=Half(a2 + 2 * c), R2=Half(2 * b + d2),
    )


def prime_pair_weight(E: int, table: PrimeTable) -> int:
    """Doubled d-value only (fast path for sum-of-two-primes scans)."""
    _check_even(E)
    if table.limit < E:
        raise CoverageError(f"table limit {table.limit} < E = {E}")
    h = E // 2
    K = (E + 2) // 4
    n = table.n_odds
    u = table.odd_flags[0:K]
    vr = table.odd_flags_rev[n - h:n - h + K]
    d2 = 2 * int(np.count_nonzero(u & vr))
    if E % 4 == 2 and table.odd_flags[(h - 1) // 2]:
        d2 -= 1
    return d2


def odd_nonprime_count(table: PrimeTable, lo: int, hi: int) -> int:
    """Odd nonprimes in the closed interval [lo, hi]; 1 counts as one."""
    return table.odd_count(lo, hi) - table.odd_prime_count(lo, hi)


def check_identities(dec: Decomposition, table: PrimeTable) -> IdentityReport:
    """Evaluate every exact identity of the model for dec.E."""
    E = dec.E
    if table.limit < E:
        raise CoverageError(f"table limit {table.limit} < E = {E}")
    h = E // 2
    a2, b2, c2, d2 = dec.doubled_quadruple()
    pi_E = table.pi(E)

    eq2_1 = (a2 + b2 + c2 + d2) == h
    eq8_6 = (dec.L1.doubled + dec.L2.doubled == h
             and dec.R1.doubled + dec.R2.doubled == h)
    eq22 = dec.b + dec.c + d2 == pi_E - 1
    eq22_5 = dec.b + dec.c + a2 == h - pi_E + 1

    wings_ok = (
        dec.L1.ceil() == odd_nonprime_count(table, 0, h)
        and dec.L2.ceil() == table.odd_prime_count(0, h)
        and dec.R1.ceil() == odd_nonprime_count(table, h, E)
        and dec.R2.ceil() == table.odd_prime_count(h, E)
    )

    halving: Optional[bool] = None
    halving_exact: Optional[bool] = None
    if h >= 2:
        if h % 2 == 0:
            sub = decompose(h, table)
            ok = (sub.L1 + sub.R1 == dec.L1 and sub.L2 + sub.R2 == dec.L2)
            halving = halving_exact = ok
        else:
            sub = decompose(h - 1, table)
            l1_sum = (sub.L1 + sub.R1).doubled
            l2_sum = (sub.L2 + sub.R2).doubled
            # strict form: the odd midpoint's half-unit goes to the L1 line
            halving = (l1_sum + 1 == dec.L1.doubled
                       and l2_sum == dec.L2.doubled)
            # exact form: it goes to the side the midpoint belongs to
            if table.is_prime(h):
                halving_exact = (l1_sum == dec.L1.doubled
                                 and l2_sum + 1 == dec.L2.doubled)
            else:
                halving_exact = halving

    return IdentityReport(
        E=E, eq2_1_ok=eq2_1, eq8_6_ok=eq8_6, eq22_ok=eq22,
        eq22_5_ok=eq22_5, halving_ok=halving,
        halving_exact_ok=halving_exact, wing_count_ok=wings_ok,
    )
