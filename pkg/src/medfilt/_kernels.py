"""Compiled inner loops.

The release sort-median postprocess is the block data structure of
``medfilt.block`` flattened into one loop (two blocks, four index arrays);
keep the two in step, the test suite compares them on every code path.
"""

import numpy as np
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic


@intrinsic
def _shift(typingctx, arr, dst, src, count):
    """memmove ``count`` items of ``arr`` from index ``src`` to index ``dst``."""
    sig = types.void(arr, types.intp, types.intp, types.intp)

    def codegen(context, builder, signature, args):
        ary = context.make_array(signature.args[0])(context, builder, args[0])
        itemsize = context.get_constant(types.intp, context.get_abi_sizeof(context.get_data_type(arr.dtype)))
        d = cgutils.gep(builder, ary.data, args[1])
        s = cgutils.gep(builder, ary.data, args[2])
        cgutils.raw_memmove(builder, d, s, args[3], itemsize)
        return context.get_dummy_value()

    return sig, codegen


@njit(cache=True)
def sort_median_postprocess(x, perm, k, out):
    """Fill ``out`` (length b*k - k + 1) with the medians of the padded input ``x``.

    ``perm[j]`` stably sorts block ``x[j*k:(j+1)*k]``.  Block A is the block
    being deleted from, block B the one being rebuilt by undoing deletions.
    """
    h = k // 2
    b = x.shape[0] // k
    prev_a = np.empty(k + 1, np.int64)
    next_a = np.empty(k + 1, np.int64)
    prev_b = np.empty(k + 1, np.int64)
    next_b = np.empty(k + 1, np.int64)

    p = k
    for t in range(k):
        q = perm[0, t]
        next_b[p] = q
        prev_b[q] = p
        p = q
    next_b[p] = k
    prev_b[k] = p
    m_b = perm[0, h]
    s_b = h
    out[0] = x[m_b]

    for j in range(1, b):
        prev_a, prev_b = prev_b, prev_a
        next_a, next_b = next_b, next_a
        m_a = m_b
        s_a = s_b
        oa = (j - 1) * k
        ob = j * k

        p = k
        for t in range(k):
            q = perm[j, t]
            next_b[p] = q
            prev_b[q] = p
            p = q
        next_b[p] = k
        prev_b[k] = p
        for i in range(k - 1, -1, -1):
            next_b[prev_b[i]] = next_b[i]
            prev_b[next_b[i]] = prev_b[i]
        m_b = k
        s_b = 0

        for i in range(k):
            # delete(A, i)
            if m_a == k:
                small = True
            else:
                u = x[oa + i]
                w = x[oa + m_a]
                small = u < w or (u == w and i < m_a)
            next_a[prev_a[i]] = next_a[i]
            prev_a[next_a[i]] = prev_a[i]
            if small:
                s_a -= 1
            else:
                if m_a == i:
                    m_a = next_a[m_a]
                if s_a > 0:
                    m_a = prev_a[m_a]
                    s_a -= 1

            # undelete(B, i)
            next_b[prev_b[i]] = i
            prev_b[next_b[i]] = i
            if m_b == k:
                m_b = prev_b[m_b]
            else:
                u = x[ob + i]
                w = x[ob + m_b]
                if u < w or (u == w and i < m_b):
                    m_b = prev_b[m_b]

            if s_a + s_b < h:
                # A wins ties; the list-end node ranks above every element
                if m_a != k and (m_b == k or x[oa + m_a] <= x[ob + m_b]):
                    m_a = next_a[m_a]
                    s_a += 1
                else:
                    m_b = next_b[m_b]
                    s_b += 1

            if m_a == k:
                v = x[ob + m_b]
            elif m_b == k:
                v = x[oa + m_a]
            else:
                v = min(x[oa + m_a], x[ob + m_b])
            out[oa + i + 1] = v


@njit(cache=True)
def pack_keys(x, k, lo, top, keys):
    """keys[t] = (x[t] - lo) * k + t % k, with ``top`` in place of x[t] - lo past the input."""
    n = x.shape[0]
    j = 0
    for t in range(keys.shape[0]):
        v = (np.int64(x[t]) - lo) if t < n else top
        keys[t] = v * k + j
        j += 1
        if j == k:
            j = 0


@njit(cache=True)
def repair_ties(blocks, perm):
    """Reorder runs of equal values in each row of ``perm`` by index."""
    b, k = perm.shape
    for j in range(b):
        row = perm[j]
        vals = blocks[j]
        t = 0
        while t < k:
            v = vals[row[t]]
            u = t + 1
            while u < k and vals[row[u]] == v:
                u += 1
            if u - t > 1:
                row[t:u].sort()
            t = u


@njit(cache=True)
def naive_median(x, k, out):
    h = k // 2
    w = np.empty(k, x.dtype)
    for i in range(x.shape[0] - k + 1):
        w[:] = x[i:i + k]
        w.sort()
        out[i] = w[h]


@njit(cache=True)
def move_median(x, k, out):
    h = k // 2
    w = np.sort(x[:k])
    out[0] = w[h]
    for t in range(k, x.shape[0]):
        old = x[t - k]
        new = x[t]
        p = np.searchsorted(w, old)
        if new < old:
            q = np.searchsorted(w, new)
            _shift(w, q + 1, q, p - q)
            w[q] = new
        else:
            r = np.searchsorted(w, new, side="right") - 1
            _shift(w, p, p + 1, r - p)
            w[r] = new
        out[t - k + 1] = w[h]


# Double heap.  ``heap`` holds slot numbers at positions -h..h (stored at
# offset h): position 0 is the median, negative positions form a max-heap,
# positive positions a min-heap; the parent of position i is i/2 truncated
# toward zero.  ``pos`` maps a circular-buffer slot to its heap position.

@njit(cache=True)
def _half(i):
    return -((-i) // 2) if i < 0 else i // 2


@njit(cache=True)
def _less(data, heap, off, i, j):
    return data[heap[off + i]] < data[heap[off + j]]


@njit(cache=True)
def _cmp_exchange(data, heap, pos, off, i, j):
    if data[heap[off + i]] < data[heap[off + j]]:
        t = heap[off + i]
        heap[off + i] = heap[off + j]
        heap[off + j] = t
        pos[heap[off + i]] = i
        pos[heap[off + j]] = j
        return True
    return False


@njit(cache=True)
def _min_sort_down(data, heap, pos, off, i, count):
    while i <= count:
        if i > 1 and i < count and _less(data, heap, off, i + 1, i):
            i += 1
        if not _cmp_exchange(data, heap, pos, off, i, i // 2):
            break
        i *= 2


@njit(cache=True)
def _max_sort_down(data, heap, pos, off, i, count):
    while i >= -count:
        if i < -1 and i > -count and _less(data, heap, off, i, i - 1):
            i -= 1
        if not _cmp_exchange(data, heap, pos, off, _half(i), i):
            break
        i *= 2


@njit(cache=True)
def _min_sort_up(data, heap, pos, off, i):
    while i > 0 and _cmp_exchange(data, heap, pos, off, i, i // 2):
        i //= 2
    return i == 0


@njit(cache=True)
def _max_sort_up(data, heap, pos, off, i):
    while i < 0 and _cmp_exchange(data, heap, pos, off, _half(i), i):
        i = _half(i)
    return i == 0


@njit(cache=True)
def heap_is_consistent(data, heap, pos, k):
    off = k // 2
    for t in range(k):
        if heap[off + pos[t]] != t:
            return False
    for i in range(1, off + 1):
        if data[heap[off + i]] < data[heap[off + i // 2]]:
            return False
        if data[heap[off - i]] > data[heap[off + _half(-i)]]:
            return False
    return True


@njit(cache=True)
def heap_median(x, k, out, check):
    off = k // 2
    data = np.zeros(k, x.dtype)
    heap = np.empty(k, np.int64)
    pos = np.empty(k, np.int64)
    for t in range(k):
        p = ((t + 1) // 2) * (-1 if t & 1 else 1)
        pos[t] = p
        heap[off + p] = t
    ct = 0
    idx = 0
    for t in range(x.shape[0]):
        v = x[t]
        fresh = ct < k
        p = pos[idx]
        old = data[idx]
        data[idx] = v
        idx += 1
        if idx == k:
            idx = 0
        if fresh:
            ct += 1
        min_ct = (ct - 1) // 2
        max_ct = ct // 2
        if p > 0:
            if not fresh and old < v:
                _min_sort_down(data, heap, pos, off, 2 * p, min_ct)
            elif _min_sort_up(data, heap, pos, off, p):
                _max_sort_down(data, heap, pos, off, -1, max_ct)
        elif p < 0:
            if not fresh and v < old:
                _max_sort_down(data, heap, pos, off, 2 * p, max_ct)
            elif _max_sort_up(data, heap, pos, off, p):
                _min_sort_down(data, heap, pos, off, 1, min_ct)
        else:
            if max_ct:
                _max_sort_down(data, heap, pos, off, -1, max_ct)
            if min_ct:
                _min_sort_down(data, heap, pos, off, 1, min_ct)
        if t >= k - 1:
            if check and not heap_is_consistent(data, heap, pos, k):
                raise AssertionError("double heap invariant violated")
            out[t - k + 1] = data[heap[off]]


_FNV_OFFSET = np.uint64(0xCBF29CE484222325)
_FNV_PRIME = np.uint64(0x100000001B3)


@njit(cache=True)
def fnv_fold(values):
    acc = _FNV_OFFSET
    for v in values:
        acc = (acc ^ np.uint64(np.int64(v))) * _FNV_PRIME
    return acc
