# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled nowhere-zero search kernel.

Variables are the free parameters ``t_v`` of an echelon parametrization of
the zero-weight solution module, one coordinate at a time.  Assigning ``t_v``
adds ``t_v * coef`` to the partial label of every edge the generator
touches.  ``check_edge[check_ptr[v]:check_ptr[v+1]]`` lists the edges whose
labels are final once ``v`` is assigned; each must be nonzero in some
coordinate.

Returns ``(status, values, nodes)`` with status 1 = found, 0 = exhausted,
-1 = node budget hit.
"""

import numpy as np
from libc.stdlib cimport malloc, free, calloc

ctypedef long long i64


def search(Py_ssize_t n_vars, Py_ssize_t n_edges, moduli, var_coord, var_ptr,
           entry_edge, entry_coef, check_ptr, check_edge, value_ptr, values,
           long long budget):
    cdef i64[::1] mod_v = np.ascontiguousarray(moduli, dtype=np.int64)
    cdef i64[::1] coord_v = np.ascontiguousarray(var_coord, dtype=np.int64)
    cdef i64[::1] vptr = np.ascontiguousarray(var_ptr, dtype=np.int64)
    cdef i64[::1] eedge = np.ascontiguousarray(entry_edge, dtype=np.int64)
    cdef i64[::1] ecoef = np.ascontiguousarray(entry_coef, dtype=np.int64)
    cdef i64[::1] cptr = np.ascontiguousarray(check_ptr, dtype=np.int64)
    cdef i64[::1] cedge = np.ascontiguousarray(check_edge, dtype=np.int64)
    cdef i64[::1] valptr = np.ascontiguousarray(value_ptr, dtype=np.int64)
    cdef i64[::1] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t ncoord = mod_v.shape[0]
    cdef i64 *partial = <i64 *> calloc(max(ncoord * n_edges, 1), sizeof(i64))
    cdef i64 *choice = <i64 *> malloc((n_vars + 1) * sizeof(i64))
    if partial == NULL or choice == NULL:
        free(partial)
        free(choice)
        raise MemoryError()
    cdef Py_ssize_t depth = 0, v, i, e, c, off
    cdef i64 idx, n, val, old, pos, nodes = 0
    cdef bint ok, nonzero
    cdef int status
    try:
        for i in range(n_vars + 1):
            choice[i] = -1
        while True:
            if depth == n_vars:
                status = 1
                break
            v = depth
            n = mod_v[coord_v[v]]
            off = coord_v[v] * n_edges
            idx = choice[v]
            if idx >= 0:
                old = vals[valptr[v] + idx]
                if old != 0:
                    for i in range(vptr[v], vptr[v + 1]):
                        pos = off + eedge[i]
                        partial[pos] = (partial[pos] + (n - old) * ecoef[i]) % n
            idx += 1
            if idx == valptr[v + 1] - valptr[v]:
                choice[v] = -1
                depth -= 1
                if depth < 0:
                    status = 0
                    break
                continue
            choice[v] = idx
            val = vals[valptr[v] + idx]
            if val != 0:
                for i in range(vptr[v], vptr[v + 1]):
                    pos = off + eedge[i]
                    partial[pos] = (partial[pos] + val * ecoef[i]) % n
            nodes += 1
            if nodes > budget:
                status = -1
                break
            ok = True
            for i in range(cptr[v], cptr[v + 1]):
                e = cedge[i]
                nonzero = False
                for c in range(ncoord):
                    if partial[c * n_edges + e] != 0:
                        nonzero = True
                        break
                if not nonzero:
                    ok = False
                    break
            if ok:
                depth += 1
                choice[depth] = -1
        if status == 1:
            out = [int(vals[valptr[i] + choice[i]]) for i in range(n_vars)]
        else:
            out = []
        return status, out, int(nodes)
    finally:
        free(partial)
        free(choice)
