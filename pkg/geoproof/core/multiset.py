"""
Multiset helpers over sorted tuples.
"""

from collections import Counter
from typing import Iterable, Tuple, TypeVar

T = TypeVar("T")


def contains(big: Iterable[T], small: Iterable[T]) -> bool:
    """True when ``small`` is a sub-multiset of ``big``."""
    have = Counter(big)
    need = Counter(small)
    return all(have[item] >= n for item, n in need.items())


def minus(big: Iterable[T], small: Iterable[T]) -> Tuple[T, ...]:
    """``big - small``; every item of ``small`` must occur in ``big``."""
    remaining = Counter(big)
    for item in small:
        if remaining[item] <= 0:
            raise ValueError(f"{item} does not occur in the multiset")
        remaining[item] -= 1
    return tuple(sorted(remaining.elements()))


def difference(big: Iterable[T], small: Iterable[T]) -> Tuple[T, ...]:
    """Saturating difference: items of ``big`` not matched in ``small``."""
    return tuple(sorted((Counter(big) - Counter(small)).elements()))


def support(items: Iterable[T]) -> frozenset:
    return frozenset(items)


def dedupe(items: Iterable[T]) -> Tuple[T, ...]:
    """Drop repeated items, keeping first occurrences in order."""
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)
