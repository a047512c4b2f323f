from concurrent.futures import ProcessPoolExecutor


def parallel_map(fn, items, jobs=1):
    """Ordered map over `items`, in worker processes when ``jobs > 1``.

    Results come back in input order, so aggregation is independent of which
    worker finished first.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
