"""Pure-Python finite-field kernels (fallback for the compiled ``_fp``)."""
from __future__ import annotations


def projective_common_zeros(exps, coefs, offsets, nvars, p, limit):
    """Common zeros in P^(nvars-1)(F_p) of the polynomials given in flat form.

    Polynomial ``k`` owns terms ``offsets[k]:offsets[k+1]``; term ``t`` is
    ``coefs[t] * prod x_v ** exps[t][v]`` with coefficients already reduced
    mod p.  Points are normalized so the first nonzero coordinate is 1.
    Returns ``(count, points)`` with at most ``limit`` points listed.
    """
    npolys = len(offsets) - 1
    maxdeg = max((max(e) for e in exps), default=0)
    powtab = [[pow(x, e, p) for e in range(maxdeg + 1)] for x in range(p)]
    count = 0
    found = []
    x = [0] * nvars
    for lead in range(nvars):
        free = nvars - lead - 1
        for v in range(lead):
            x[v] = 0
        x[lead] = 1
        for code in range(p ** free):
            c = code
            for v in range(nvars - 1, lead, -1):
                x[v] = c % p
                c //= p
            ok = True
            for k in range(npolys):
                acc = 0
                for t in range(offsets[k], offsets[k + 1]):
                    term = coefs[t]
                    e = exps[t]
                    for v in range(nvars):
                        if e[v]:
                            term = term * powtab[x[v]][e[v]] % p
                            if not term:
                                break
                    acc += term
                if acc % p:
                    ok = False
                    break
            if ok:
                count += 1
                if len(found) < limit:
                    found.append(tuple(x))
    return count, found


def rank_mod_p(rows, ncols, p):
    """Rank of a dense integer matrix over F_p."""
    m = [[v % p for v in r] for r in rows]
    rank = 0
    nrows = len(m)
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        prow = [v * inv % p for v in m[rank]]
        m[rank] = prow
        for r in range(nrows):
            if r != rank and m[r][col]:
                f = m[r][col]
                row = m[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank
