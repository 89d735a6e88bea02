"""Seeded random sources split into reproducible chunks."""

from typing import Iterator, Tuple

import numpy as np

from quantum_fragments.constants import CHUNK_SIZE


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def chunk_sizes(total: int, chunk_size: int = CHUNK_SIZE) -> Iterator[int]:
    full, rest = divmod(total, chunk_size)
    for _ in range(full):
        yield chunk_size
    if rest:
        yield rest


def chunked(
    seed: int, total: int, chunk_size: int = CHUNK_SIZE
) -> Iterator[Tuple[int, np.random.Generator]]:
    """Yield (size, generator) per chunk; chunk i is seeded with seed + i.

    Results depend only on seed, total and chunk_size, never on who consumes
    the chunks or in which order.
    """
    for index, size in enumerate(chunk_sizes(total, chunk_size)):
        yield size, np.random.default_rng(seed + index)
