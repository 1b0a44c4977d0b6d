# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel.

Same search order and semantics as ``_kernel_py.search``; inputs are the flat
int64 arrays prepared by ``homclass.kernels``.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t


cdef inline bint _member(const int64_t[:] keys, Py_ssize_t lo, Py_ssize_t hi, int64_t key) noexcept nogil:
    cdef Py_ssize_t end = hi, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < end and keys[lo] == key


def search(Py_ssize_t na, Py_ssize_t nb,
           const int64_t[:] dom_ptr, const int64_t[:] dom_val,
           const int64_t[:] chk_ptr, const int64_t[:] chk_con,
           const int64_t[:] con_ptr, const int64_t[:] con_var, const int64_t[:] con_rel,
           const int64_t[:] rel_ptr, const int64_t[:] rel_key,
           bint injective, bint count):
    """Return ``(number_found, first_witness or None)``."""
    cdef int64_t[:] assign = np.zeros(max(na, 1), dtype=np.int64)
    cdef int64_t[:] pos = np.zeros(max(na, 1) + 1, dtype=np.int64)
    cdef unsigned char[:] used = np.zeros(max(nb, 1), dtype=np.uint8)
    cdef uint64_t found = 0
    cdef Py_ssize_t var = 0, i, end, c, ci, k, r, p
    cdef int64_t b, key, mult
    cdef bint ok, advanced, have_first = False
    first = None

    with nogil:
        while var >= 0:
            if var == na:
                found += 1
                if not have_first:
                    have_first = True
                    with gil:
                        first = tuple([assign[k] for k in range(na)])
                if not count:
                    break
                var -= 1
                if var >= 0 and injective:
                    used[assign[var]] = 0
                continue
            i = pos[var]
            end = dom_ptr[var + 1]
            if i < dom_ptr[var]:
                i = dom_ptr[var]
            advanced = False
            while i < end:
                b = dom_val[i]
                i += 1
                if injective and used[b]:
                    continue
                assign[var] = b
                ok = True
                for c in range(chk_ptr[var], chk_ptr[var + 1]):
                    ci = chk_con[c]
                    key = 0
                    mult = 1
                    for p in range(con_ptr[ci], con_ptr[ci + 1]):
                        key += assign[con_var[p]] * mult
                        mult *= nb
                    r = con_rel[ci]
                    if not _member(rel_key, rel_ptr[r], rel_ptr[r + 1], key):
                        ok = False
                        break
                if ok:
                    advanced = True
                    break
            pos[var] = i
            if advanced:
                if injective:
                    used[assign[var]] = 1
                var += 1
                if var < na:
                    pos[var] = 0
            else:
                pos[var] = 0
                var -= 1
                if var >= 0 and injective:
                    used[assign[var]] = 0
    return found, first
