"""Jitted inner loop of the top-down peeling search.

Importing this module requires numba; ``peeling`` falls back to its pure
Python implementation when the import fails.  Both implementations follow
the exact same selection, tie-break, and floating-point evaluation order,
so their outputs are bit-identical (verified by the test suite).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True, inline="always")
def _heap_push(keys, size, key):
    i = size
    keys[i] = key
    while i > 0:
        parent = (i - 1) >> 1
        if keys[parent] <= keys[i]:
            break
        keys[parent], keys[i] = keys[i], keys[parent]
        i = parent
    return size + 1


@njit(cache=True, nogil=True, inline="always")
def _heap_pop(keys, size):
    size -= 1
    keys[0] = keys[size]
    i = 0
    while True:
        left = 2 * i + 1
        right = left + 1
        smallest = i
        if left < size and keys[left] < keys[smallest]:
            smallest = left
        if right < size and keys[right] < keys[smallest]:
            smallest = right
        if smallest == i:
            break
        keys[i], keys[smallest] = keys[smallest], keys[i]
        i = smallest
    return size


@njit(cache=True, nogil=True)
def peel_kernel(e0, e1, e2, num_objects, off_d, off_t, le, log2i):
    """Greedy peel of one edge view.

    ``e0``/``e1``/``e2`` hold the global object index of each edge's three
    coordinates.  Returns the removal order (global indices), the 1-based
    step whose suffix maximizes the saving, and that saving.

    Heaps are keyed by ``degree * num_objects + object`` so the argmin
    within a kind breaks ties toward the smallest global index; the minimum
    across kinds is compared by exact integer cross-multiplication of the
    connection ratios (int64; safe below ~5e4 view objects per kind).
    """
    m = e0.shape[0]
    deg = np.zeros(num_objects, np.int64)
    for pos in range(m):
        deg[e0[pos]] += 1
        deg[e1[pos]] += 1
        deg[e2[pos]] += 1

    indptr = np.zeros(num_objects + 1, np.int64)
    for o in range(num_objects):
        indptr[o + 1] = indptr[o] + deg[o]
    fill = indptr[:-1].copy()
    eids = np.empty(3 * m, np.int64)
    for pos in range(m):
        for o in (e0[pos], e1[pos], e2[pos]):
            eids[fill[o]] = pos
            fill[o] += 1

    cap = 2 * m + num_objects + 4
    heap0 = np.empty(cap, np.int64)
    heap1 = np.empty(cap, np.int64)
    heap2 = np.empty(cap, np.int64)
    size0 = size1 = size2 = 0
    c_s = c_d = c_t = 0
    for o in range(num_objects):
        if deg[o] > 0:
            if o < off_d:
                size0 = _heap_push(heap0, size0, deg[o] * num_objects + o)
                c_s += 1
            elif o < off_t:
                size1 = _heap_push(heap1, size1, deg[o] * num_objects + o)
                c_d += 1
            else:
                size2 = _heap_push(heap2, size2, deg[o] * num_objects + o)
                c_t += 1

    alive = np.ones(m, np.uint8)
    removed = np.zeros(num_objects, np.uint8)
    live = m
    n_rem = c_s + c_d + c_t
    n_objs = n_rem
    order = np.empty(n_objs, np.int64)
    s_max = -np.inf
    t_max = 0

    for step in range(1, n_objs + 1):
        psi = (2.0 * live - np.float64(c_s * c_d * c_t)) * le - (n_rem + 1.0) * log2i
        if psi > s_max:
            s_max = psi
            t_max = step

        best_num = np.int64(-1)
        best_den = np.int64(1)
        best_obj = np.int64(-1)
        best_kind = -1
        for kind in range(3):
            if kind == 0:
                heap, size = heap0, size0
                den = c_d * c_t
            elif kind == 1:
                heap, size = heap1, size1
                den = c_s * c_t
            else:
                heap, size = heap2, size2
                den = c_s * c_d
            while size > 0:
                top = heap[0]
                obj = top % num_objects
                if removed[obj] == 1 or deg[obj] != top // num_objects:
                    size = _heap_pop(heap, size)
                else:
                    break
            if kind == 0:
                size0 = size
            elif kind == 1:
                size1 = size
            else:
                size2 = size
            if size == 0:
                continue
            obj = heap[0] % num_objects
            if den == 0:
                num = np.int64(0)
                den = np.int64(1)
            else:
                num = deg[obj]
            if best_obj < 0 or num * best_den < best_num * den:
                best_num, best_den, best_obj, best_kind = num, den, obj, kind

        obj = best_obj
        if best_kind == 0:
            size0 = _heap_pop(heap0, size0)
            c_s -= 1
        elif best_kind == 1:
            size1 = _heap_pop(heap1, size1)
            c_d -= 1
        else:
            size2 = _heap_pop(heap2, size2)
            c_t -= 1
        removed[obj] = 1
        n_rem -= 1
        order[step - 1] = obj

        for ii in range(indptr[obj], indptr[obj + 1]):
            pos = eids[ii]
            if alive[pos] == 1:
                alive[pos] = 0
                live -= 1
                for other in (e0[pos], e1[pos], e2[pos]):
                    if other != obj:
                        nd = deg[other] - 1
                        deg[other] = nd
                        if other < off_d:
                            size0 = _heap_push(heap0, size0, nd * num_objects + other)
                        elif other < off_t:
                            size1 = _heap_push(heap1, size1, nd * num_objects + other)
                        else:
                            size2 = _heap_push(heap2, size2, nd * num_objects + other)

    return order, t_max, s_max
