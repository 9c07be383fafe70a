"""
Chunked scans over canonical orders with a thread pool.

Items are numbered in the order the iterable yields them. Work is cut into
chunks and handed to workers a wave at a time; results are reduced in chunk
order, so the answer is the same for any thread count.
"""

from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import TypeVar

T = TypeVar("T")
W = TypeVar("W")

Hit = tuple[int, T, W]


def _chunks(items: Iterable[T], size: int) -> Iterator[list[tuple[int, T]]]:
    numbered = enumerate(items)
    while chunk := list(islice(numbered, size)):
        yield chunk


def first_hit(
    items: Iterable[T],
    evaluate: Callable[[T], W | None],
    threads: int = 1,
    chunk_size: int = 512,
    on_item: Callable[[int, T, W | None], None] | None = None,
) -> tuple[Hit | None, int]:
    """
    Find the first item (in iteration order) whose evaluation is not None.

    Returns the hit (index, item, result) or None, plus how many items the
    canonical order needed to look at. ``on_item`` sees every evaluated item
    in order and is only honoured single-threaded.
    """
    if threads <= 1:
        count = 0
        for index, item in enumerate(items):
            count += 1
            result = evaluate(item)
            if on_item is not None:
                on_item(index, item, result)
            if result is not None:
                return (index, item, result), count
        return None, count

    def scan(chunk: list[tuple[int, T]]) -> Hit | None:
        for index, item in chunk:
            result = evaluate(item)
            if result is not None:
                return index, item, result
        return None

    chunks = _chunks(items, chunk_size)
    seen = 0
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="pathdiv-scan") as pool:
        while wave := list(islice(chunks, threads)):
            for chunk, hit in zip(wave, pool.map(scan, wave), strict=True):
                if hit is not None:
                    return hit, hit[0] + 1
                seen = chunk[-1][0] + 1
    return None, seen


def all_hits(
    items: Iterable[T],
    evaluate: Callable[[T], W | None],
    threads: int = 1,
    chunk_size: int = 512,
) -> tuple[list[Hit], int]:
    """Every item whose evaluation is not None, in iteration order, plus the item count."""

    def scan(chunk: list[tuple[int, T]]) -> list[Hit]:
        found = []
        for index, item in chunk:
            result = evaluate(item)
            if result is not None:
                found.append((index, item, result))
        return found

    hits: list[Hit] = []
    total = 0
    if threads <= 1:
        for chunk in _chunks(items, chunk_size):
            hits.extend(scan(chunk))
            total = chunk[-1][0] + 1
        return hits, total

    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="pathdiv-scan") as pool:
        chunks = _chunks(items, chunk_size)
        while wave := list(islice(chunks, threads)):
            for found in pool.map(scan, wave):
                hits.extend(found)
            total = wave[-1][-1][0] + 1
    return hits, total
