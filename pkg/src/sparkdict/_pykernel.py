"""Pure-Python subset-search kernel; mirrors ``_ckernel.pyx`` line for line.

Vectors are the dictionary columns (as rows of ``vecs``).  The k-subsets whose
first member lies in ``[first_lo, first_hi)`` are walked depth-first in
lexicographic order while each prefix is kept in fraction-free (Bareiss)
echelon form, so pushing one vector costs one reduction against the prefix.
Every intermediate entry is a minor of the selected vectors, hence exact.

Return codes: (1, subset, examined) on the lex-first dependent k-subset,
(0, None, examined) when the range is exhausted, (-2, prefix, examined) when a
proper prefix is already dependent (the caller skipped a level it should not have).
"""


def _reduce(vec, rows, pivcols, pivvals, depth):
    v = list(vec)
    prev = 1
    for s in range(depth):
        p = pivvals[s]
        c = v[pivcols[s]]
        row = rows[s]
        if c:
            v = [(p * x - c * y) // prev for x, y in zip(v, row)]
        elif p != prev:
            v = [p * x // prev for x in v]
        prev = p
    for j, x in enumerate(v):
        if x:
            return v, j
    return v, -1


def search_level(vecs, k, first_lo, first_hi):
    vecs = [list(map(int, row)) for row in vecs]
    n = len(vecs)
    if k < 1 or k > n:
        return 0, None, 0
    first_hi = min(first_hi, n - k + 1)
    rows = [None] * k
    pivcols = [0] * k
    pivvals = [0] * k
    idx = [0] * k
    examined = 0
    depth = 0
    idx[0] = first_lo
    while True:
        if idx[depth] > n - (k - depth) or (depth == 0 and idx[0] >= first_hi):
            if depth == 0:
                return 0, None, examined
            depth -= 1
            idx[depth] += 1
            continue
        v, pc = _reduce(vecs[idx[depth]], rows, pivcols, pivvals, depth)
        if depth == k - 1:
            examined += 1
            if pc < 0:
                return 1, tuple(idx), examined
            idx[depth] += 1
            continue
        if pc < 0:
            return -2, tuple(idx[: depth + 1]), examined
        rows[depth] = v
        pivcols[depth] = pc
        pivvals[depth] = v[pc]
        depth += 1
        idx[depth] = idx[depth - 1] + 1
