import pytest

from src.utils.parallel import chunked, run_parallel


def _square(x):
    return x * x


@pytest.mark.parametrize("n_chunks", [1, 2, 3, 7, 50])
def test_chunked_preserves_order(n_chunks):
    items = list(range(10))
    chunks = chunked(items, n_chunks)

    assert [x for c in chunks for x in c] == items
    assert len(chunks) == min(n_chunks, 10)
    assert max(map(len, chunks)) - min(map(len, chunks)) <= 1


def test_chunked_empty():
    assert chunked([], 4) == []


@pytest.mark.parametrize("threads", [1, 2])
def test_run_parallel_keeps_input_order(threads):
    assert run_parallel(_square, [3, 1, 2], threads=threads) == [9, 1, 4]
