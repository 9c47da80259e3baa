# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair-counting kernel; semantics identical to ``_pairs_py``."""

from libc.stdlib cimport calloc, free


def count_pairs(long long[:] tokens, long long[:] offsets, long long n_tokens):
    """Count per-token document occurrences and per-pair co-occurrences."""
    cdef Py_ssize_t n_docs = offsets.shape[0] - 1
    cdef long long *occ = <long long *> calloc(n_tokens, sizeof(long long))
    if occ == NULL:
        raise MemoryError()
    cdef dict pairs = {}
    cdef Py_ssize_t d, a, b
    cdef long long start, stop, i, base, key
    cdef object prev
    try:
        for d in range(n_docs):
            start = offsets[d]
            stop = offsets[d + 1]
            for a in range(start, stop):
                i = tokens[a]
                occ[i] += 1
                base = i * n_tokens
                for b in range(a + 1, stop):
                    key = base + tokens[b]
                    prev = pairs.get(key)
                    if prev is None:
                        pairs[key] = 1
                    else:
                        pairs[key] = prev + 1
        counts = [occ[j] for j in range(n_tokens)]
    finally:
        free(occ)
    return counts, pairs
