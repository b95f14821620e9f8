"""Range scanners: sum-of-two-primes survey, taxonomy census, bound battery.

A scan walks the even numbers of [lo, hi] in fixed-size chunks.  Chunks
are independent, so they can run on a process pool; per-chunk reports
merge associatively in range order, which makes the final report (and
its serialized bytes) identical for any worker count.  An optional JSON
checkpoint records the last completed chunk plus running aggregates so
a killed long run resumes where it stopped.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import DEFAULT_UPPER_C, FAILS, MARGINAL, check_bounds
from .errors import CoverageError
from .model import check_identities, decompose, prime_pair_weight
from .primes import PrimeTable
from .taxonomy import classify

DEFAULT_CHUNK = 1024  # even numbers per chunk

_FEATURES = {
    "goldbach": frozenset(),
    "census": frozenset({"census"}),
    "bounds": frozenset({"bounds"}),
    "identities": frozenset({"identities"}),
    "theorem": frozenset({"census", "bounds", "identities", "theorem"}),
}


@dataclass
class ScanReport:
    lo: int
    hi: int
    mode: str
    constant: float
    scanned: int = 0
    goldbach_failures: list[int] = field(default_factory=list)
    min_d: Optional[tuple[int, int]] = None   # (doubled d, E)
    type_census: dict[str, int] = field(default_factory=dict)
    excluded_hits: list[tuple[int, str]] = field(default_factory=list)
    bound_failures: dict[str, list[int]] = field(default_factory=dict)
    identity_failures: list[tuple[int, str]] = field(default_factory=list)
    marginal: dict[str, int] = field(default_factory=dict)
    theorem_violations: list[int] = field(default_factory=list)

    def merge(self, other: "ScanReport") -> "ScanReport":
        """Combine with the adjacent report that starts at self.hi + 2."""
        if other.lo != self.hi + 2:
            raise ValueError(
                f"reports are not adjacent: [{self.lo},{self.hi}] then "
                f"[{other.lo},{other.hi}]")
        if (other.mode, other.constant) != (self.mode, self.constant):
            raise ValueError("cannot merge reports from different scans")
        out = ScanReport(lo=self.lo, hi=other.hi, mode=self.mode,
                         constant=self.constant)
        out.scanned = self.scanned + other.scanned
        out.goldbach_failures = self.goldbach_failures + other.goldbach_failures
        pair = [p for p in (self.min_d, other.min_d) if p is not None]
        out.min_d = min(pair) if pair else None
        out.type_census = dict(self.type_census)
        for k, v in other.type_census.items():
            out.type_census[k] = out.type_census.get(k, 0) + v
        out.excluded_hits = self.excluded_hits + other.excluded_hits
        out.bound_failures = {k: list(v) for k, v in self.bound_failures.items()}
        for k, v in other.bound_failures.items():
            out.bound_failures.setdefault(k, []).extend(v)
        out.identity_failures = self.identity_failures + other.identity_failures
        out.marginal = dict(self.marginal)
        for k, v in other.marginal.items():
            out.marginal[k] = out.marginal.get(k, 0) + v
        out.theorem_violations = self.theorem_violations + other.theorem_violations
        return out

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "mode": self.mode,
            "constant": self.constant,
            "scanned": self.scanned,
            "goldbach_failures": list(self.goldbach_failures),
            "min_d": list(self.min_d) if self.min_d else None,
            "type_census": {k: self.type_census[k]
                            for k in sorted(self.type_census)},
            "excluded_hits": [list(t) for t in self.excluded_hits],
            "bound_failures": {k: list(self.bound_failures[k])
                               for k in sorted(self.bound_failures)},
            "identity_failures": [list(t) for t in self.identity_failures],
            "marginal": {k: self.marginal[k] for k in sorted(self.marginal)},
            "theorem_violations": list(self.theorem_violations),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScanReport":
        rep = cls(lo=data["lo"], hi=data["hi"], mode=data["mode"],
                  constant=data["constant"])
        rep.scanned = data["scanned"]
        rep.goldbach_failures = list(data["goldbach_failures"])
        rep.min_d = tuple(data["min_d"]) if data["min_d"] else None
        rep.type_census = dict(data["type_census"])
        rep.excluded_hits = [(e, t) for e, t in data["excluded_hits"]]
        rep.bound_failures = {k: list(v)
                              for k, v in data["bound_failures"].items()}
        rep.identity_failures = [(e, t) for e, t in data["identity_failures"]]
        rep.marginal = dict(data["marginal"])
        rep.theorem_violations = list(data["theorem_violations"])
        return rep


def _scan_block(lo: int, hi: int, table: PrimeTable, mode: str,
                constant: float) -> ScanReport:
    feats = _FEATURES[mode]
    rep = ScanReport(lo=lo, hi=hi, mode=mode, constant=constant)
    d_only = not feats
    for E in range(lo, hi + 1, 2):
        if d_only:
            d2 = prime_pair_weight(E, table)
        else:
            dec = decompose(E, table)
            d2 = dec.d.doubled
            if "census" in feats:
                t = classify(dec)
                rep.type_census[t.canonical] = \
                    rep.type_census.get(t.canonical, 0) + 1
                if t.excluded:
                    rep.excluded_hits.append((E, t.canonical))
                if "theorem" in feats and not t.excluded and d2 == 0:
                    rep.theorem_violations.append(E)
            if "bounds" in feats:
                br = check_bounds(dec, constant)
                for name, chk in br.checks.items():
                    if chk.state == FAILS:
                        rep.bound_failures.setdefault(name, []).append(E)
                    elif chk.state == MARGINAL:
                        rep.marginal[name] = rep.marginal.get(name, 0) + 1
            if "identities" in feats:
                ir = check_identities(dec, table)
                for name in ir.failed_ids():
                    rep.identity_failures.append((E, name))
        rep.scanned += 1
        if d2 == 0:
            rep.goldbach_failures.append(E)
        if rep.min_d is None or (d2, E) < rep.min_d:
            rep.min_d = (d2, E)
    return rep


# -- process-pool plumbing -------------------------------------------------

_pool_table: Optional[PrimeTable] = None


def _pool_init(limit: int) -> None:
    global _pool_table
    _pool_table = PrimeTable(limit)


def _pool_chunk(args: tuple[int, int, str, float]) -> ScanReport:
    lo, hi, mode, constant = args
    assert _pool_table is not None
    return _scan_block(lo, hi, _pool_table, mode, constant)


# -- checkpointing ---------------------------------------------------------

def _checkpoint_key(lo, hi, mode, constant, chunk_size, limit) -> dict:
    return {"range": [lo, hi], "mode": mode, "constant": constant,
            "chunk_size": chunk_size, "limit": limit}


def _load_checkpoint(path: str, key: dict) -> Optional[dict]:
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for k, v in key.items():
        if data.get(k) != v:
            raise ValueError(
                f"checkpoint {path} does not match this scan "
                f"({k}: {data.get(k)!r} != {v!r})")
    return data


def _write_checkpoint(path: str, key: dict, completed_through: int,
                      report: ScanReport) -> None:
    data = dict(key)
    data["completed_through"] = completed_through
    data["aggregates"] = report.to_dict()
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


# -- driver ----------------------------------------------------------------

def scan_range(lo: int, hi: int, *, mode: str,
               table: Optional[PrimeTable] = None,
               limit: Optional[int] = None,
               constant: float = DEFAULT_UPPER_C,
               chunk_size: int = DEFAULT_CHUNK,
               workers: int = 1,
               checkpoint_path: Optional[str] = None,
               max_chunks: Optional[int] = None) -> ScanReport:
    """Scan the even numbers of [lo, hi]; see module docstring.

    `max_chunks` stops after that many chunks (progress lands in the
    checkpoint), which is how interrupted runs are simulated and how an
    operator can slice a long census into sessions.
    """
    if mode not in _FEATURES:
        raise ValueError(f"unknown scan mode {mode!r}")
    if lo % 2 or hi % 2 or lo < 2 or lo > hi:
        raise ValueError(f"need even 2 <= lo <= hi, got [{lo}, {hi}]")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    if limit is None:
        limit = table.limit if table is not None else hi
    if limit < hi:
        raise CoverageError(f"sieve limit {limit} < scan end {hi}")
    if table is not None and table.limit < hi:
        raise CoverageError(f"table limit {table.limit} < scan end {hi}")

    key = _checkpoint_key(lo, hi, mode, constant, chunk_size, limit)
    report: Optional[ScanReport] = None
    start = lo
    if checkpoint_path:
        saved = _load_checkpoint(checkpoint_path, key)
        if saved is not None:
            report = ScanReport.from_dict(saved["aggregates"])
            start = saved["completed_through"] + 2
            if start > hi:
                return report

    step = 2 * chunk_size
    chunks = [(a, min(a + step - 2, hi)) for a in range(start, hi + 1, step)]
    if max_chunks is not None:
        chunks = chunks[:max_chunks]
    if not chunks:
        return report if report is not None else ScanReport(
            lo=lo, hi=hi, mode=mode, constant=constant)

    def absorb(part: ScanReport) -> None:
        nonlocal report
        report = part if report is None else report.merge(part)
        if checkpoint_path:
            _write_checkpoint(checkpoint_path, key, part.hi, report)

    if workers <= 1 or len(chunks) == 1:
        local = table if table is not None else PrimeTable(limit)
        for a, b in chunks:
            absorb(_scan_block(a, b, local, mode, constant))
    else:
        args = [(a, b, mode, constant) for a, b in chunks]
        with ProcessPoolExecutor(max_workers=workers,
                                 initializer=_pool_init,
                                 initargs=(limit,)) as pool:
            for part in pool.map(_pool_chunk, args, chunksize=1):
                absorb(part)

    assert report is not None
    return report


def goldbach_scan(lo: int, hi: int, table: Optional[PrimeTable] = None,
                  **kwargs) -> ScanReport:
    """d-only scan: which even numbers are a sum of two odd primes."""
    if lo < 4:
        raise ValueError(f"goldbach scan starts at 4, got lo={lo}")
    return scan_range(lo, hi, mode="goldbach", table=table, **kwargs)


def census(lo: int, hi: int, table: Optional[PrimeTable] = None,
           **kwargs) -> ScanReport:
    """Classify every even number onto the 75-type catalog."""
    if lo < 4:
        raise ValueError(f"census starts at 4, got lo={lo}")
    return scan_range(lo, hi, mode="census", table=table, **kwargs)


def theorem_check(lo: int, hi: int, table: Optional[PrimeTable] = None,
                  constant: float = DEFAULT_UPPER_C, **kwargs) -> ScanReport:
    """Full battery: census + bounds + identities + the d > 0 claim
    for every even number whose type is not excluded."""
    if lo < 4:
        raise ValueError(f"theorem check starts at 4, got lo={lo}")
    return scan_range(lo, hi, mode="theorem", table=table,
                      constant=constant, **kwargs)
