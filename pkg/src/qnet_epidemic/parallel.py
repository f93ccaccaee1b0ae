from concurrent.futures import ProcessPoolExecutor


def ordered_map(fn, items, workers=1):
    """``list(map(fn, items))``, optionally on a process pool; output order is input order."""
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
