"""Weak orderings of the four class counts: the 75-type catalog.

A structural type is an ordered set partition of the symbols
{a, b, c, d}: blocks in strictly increasing value, symbols inside a
block tied.  Four symbols admit exactly 75 such orderings (the fourth
Fubini number).  Types carry a stable id (rank in lexicographic order
of the canonical string), a category 1-4 given by which of d, c, b, a
first appears in the minimal block, and an `excluded` flag for the
three orderings whose minimal element is d alone under a alone on top
with b, c strictly between.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

SYMBOLS = ("a", "b", "c", "d")

EXCLUDED_CANONICALS = frozenset({"d<b<c<a", "d<b=c<a", "d<c<b<a"})


@dataclass(frozen=True)
class StructuralType:
    type_id: int
    canonical: str
    blocks: tuple[tuple[str, ...], ...]
    category: int
    excluded: bool


def _ordered_partitions(symbols: tuple[str, ...]) -> Iterator[tuple[tuple[str, ...], ...]]:
    if not symbols:
        yield ()
        return
    for k in range(1, len(symbols) + 1):
        for block in combinations(symbols, k):
            rest = tuple(s for s in symbols if s not in block)
            for tail in _ordered_partitions(rest):
                yield (block,) + tail


def canonical_of_blocks(blocks: tuple[tuple[str, ...], ...]) -> str:
    return "<".join("=".join(block) for block in blocks)


def category_of_blocks(blocks: tuple[tuple[str, ...], ...]) -> int:
    first = set(blocks[0])
    for rank, sym in enumerate(("d", "c", "b", "a"), start=1):
        if sym in first:
            return rank
    raise AssertionError("empty minimal block")


@lru_cache(maxsize=1)
def enumerate_types() -> tuple[StructuralType, ...]:
    """All 75 types, sorted by canonical string, ids 1..75."""
    canon_blocks = sorted(
        (canonical_of_blocks(blocks), blocks)
        for blocks in _ordered_partitions(SYMBOLS)
    )
    return tuple(
        StructuralType(
            type_id=i,
            canonical=canon,
            blocks=blocks,
            category=category_of_blocks(blocks),
            excluded=canon in EXCLUDED_CANONICALS,
        )
        for i, (canon, blocks) in enumerate(canon_blocks, start=1)
    )


@lru_cache(maxsize=1)
def _by_canonical() -> dict[str, StructuralType]:
    return {t.canonical: t for t in enumerate_types()}


def type_by_canonical(canonical: str) -> StructuralType:
    try:
        return _by_canonical()[canonical]
    except KeyError:
        raise ValueError(f"unknown structural type {canonical!r}") from None


def canonical_of_values(av, bv, cv, dv) -> str:
    """Tie pattern of four exactly comparable values, as a canonical string."""
    items = sorted(zip((av, bv, cv, dv), SYMBOLS))
    parts = [items[0][1]]
    for (prev_v, _), (v, sym) in zip(items, items[1:]):
        parts.append("=" if v == prev_v else "<")
        parts.append(sym)
    return "".join(parts)


def classify_values(av, bv, cv, dv) -> StructuralType:
    return type_by_canonical(canonical_of_values(av, bv, cv, dv))


def classify(dec) -> StructuralType:
    """Structural type of a decomposition, by exact integer comparison."""
    return classify_values(*dec.doubled_quadruple())


def is_excluded(t: StructuralType) -> bool:
    return t.canonical in EXCLUDED_CANONICALS


def example_values(t: StructuralType) -> tuple[int, int, int, int]:
    """A synthetic quadruple realizing t (block rank as the value)."""
    level = {sym: i for i, block in enumerate(t.blocks) for sym in block}
    return tuple(level[s] for s in SYMBOLS)  # type: ignore[return-value]
