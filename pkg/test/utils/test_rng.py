import numpy as np

from quantum_fragments.utils.rng import chunk_sizes, chunked, make_rng


def test_chunk_sizes_cover_total():
    assert list(chunk_sizes(250, 100)) == [100, 100, 50]
    assert list(chunk_sizes(200, 100)) == [100, 100]
    assert list(chunk_sizes(0, 100)) == []


def test_chunks_are_seeded_by_index():
    draws = [rng.random(size) for size, rng in chunked(7, 30, 10)]
    assert np.array_equal(draws[2], np.random.default_rng(9).random(10))


def test_same_seed_same_stream():
    assert np.array_equal(make_rng(1).random(5), make_rng(1).random(5))
