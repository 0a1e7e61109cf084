# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-field kernels; same contracts as ``_fp_py``."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


def projective_common_zeros(exps, coefs, offsets, int nvars, int64_t p, int limit):
    cdef int nterms = len(coefs)
    cdef int npolys = len(offsets) - 1
    cdef int maxdeg = 0
    cdef int t, v, k, lead, free_vars, e
    cdef int64_t code, ncodes, c, acc, term
    cdef bint ok
    cdef long count = 0

    for t in range(nterms):
        for v in range(nvars):
            if exps[t][v] > maxdeg:
                maxdeg = exps[t][v]

    cdef int *E = <int *> malloc(nterms * nvars * sizeof(int))
    cdef int64_t *C = <int64_t *> malloc(nterms * sizeof(int64_t))
    cdef int *O = <int *> malloc((npolys + 1) * sizeof(int))
    cdef int64_t *P = <int64_t *> malloc(p * (maxdeg + 1) * sizeof(int64_t))
    cdef int64_t *x = <int64_t *> malloc(nvars * sizeof(int64_t))
    found = []
    try:
        for t in range(nterms):
            C[t] = coefs[t] % p
            for v in range(nvars):
                E[t * nvars + v] = exps[t][v]
        for k in range(npolys + 1):
            O[k] = offsets[k]
        for c in range(p):
            P[c * (maxdeg + 1)] = 1 % p
            for e in range(1, maxdeg + 1):
                P[c * (maxdeg + 1) + e] = (P[c * (maxdeg + 1) + e - 1] * c) % p

        for lead in range(nvars):
            free_vars = nvars - lead - 1
            for v in range(lead):
                x[v] = 0
            x[lead] = 1
            ncodes = 1
            for v in range(free_vars):
                ncodes *= p
            for code in range(ncodes):
                c = code
                for v in range(nvars - 1, lead, -1):
                    x[v] = c % p
                    c = c // p
                ok = True
                for k in range(npolys):
                    acc = 0
                    for t in range(O[k], O[k + 1]):
                        term = C[t]
                        for v in range(nvars):
                            e = E[t * nvars + v]
                            if e:
                                term = (term * P[x[v] * (maxdeg + 1) + e]) % p
                                if term == 0:
                                    break
                        acc += term
                    if acc % p:
                        ok = False
                        break
                if ok:
                    count += 1
                    if len(found) < limit:
                        found.append(tuple([x[v] for v in range(nvars)]))
    finally:
        free(E)
        free(C)
        free(O)
        free(P)
        free(x)
    return count, found


def rank_mod_p(rows, int ncols, int64_t p):
    cdef int nrows = len(rows)
    cdef int r, col, piv, c, rank = 0
    cdef int64_t inv, f
    if nrows == 0 or ncols == 0:
        return 0
    cdef int64_t *M = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                M[r * ncols + c] = row[c] % p
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if M[r * ncols + col]:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(ncols):
                    M[piv * ncols + c], M[rank * ncols + c] = M[rank * ncols + c], M[piv * ncols + c]
            inv = pow(M[rank * ncols + col], p - 2, p)
            for c in range(col, ncols):
                M[rank * ncols + c] = (M[rank * ncols + c] * inv) % p
            for r in range(nrows):
                if r != rank:
                    f = M[r * ncols + col]
                    if f:
                        for c in range(col, ncols):
                            M[r * ncols + c] = (M[r * ncols + c] - f * M[rank * ncols + c]) % p
                            if M[r * ncols + c] < 0:
                                M[r * ncols + c] += p
            rank += 1
            if rank == nrows:
                break
    finally:
        free(M)
    return rank
