"""Integer simplicial homology via Smith normal form.

Only used as a certificate for spheres of dimension >= 3, where exact PL
recognition is out of reach; the matrices involved are links of faces and
stay small, so a dense exact-integer elimination is adequate.
"""
from itertools import combinations


def smith_diagonal(matrix):
    """Nonzero invariant factors of an integer matrix (list of row lists).

    The result is sorted so that each entry divides the next.
    """
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        pivot = _min_nonzero(a, t, m, n)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(
                    (i for i in range(t + 1, m)
                     if any(a[i][k] % p for k in range(t + 1, n))),
                    None,
                )
                if bad is None:
                    break
                rb, rt = a[bad], a[t]
                for k in range(t, n):
                    rt[k] += rb[k]
                continue
            pivot = _min_nonzero_cross(a, t, m, n)
            i, j = pivot
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _min_nonzero(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else best[1:]


def _min_nonzero_cross(a, t, m, n):
    # smallest nonzero entry in row t or column t
    best = (abs(a[t][t]), t, t)
    for i in range(t + 1, m):
        if a[i][t] and abs(a[i][t]) < best[0]:
            best = (abs(a[i][t]), i, t)
    for j in range(t + 1, n):
        if a[t][j] and abs(a[t][j]) < best[0]:
            best = (abs(a[t][j]), t, j)
    return best[1:]


def all_faces(facets):
    """Set of all nonempty faces (sorted vertex tuples) of the given facets."""
    faces = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    return faces


def boundary_matrix(rows_basis, cols_basis):
    """Matrix of the simplicial boundary from ``cols_basis`` (k-faces) to
    ``rows_basis`` ((k-1)-faces), both lists of sorted tuples."""
    index = {f: i for i, f in enumerate(rows_basis)}
    mat = [[0] * len(cols_basis) for _ in rows_basis]
    for j, f in enumerate(cols_basis):
        for i in range(len(f)):
            mat[index[f[:i] + f[i + 1:]]][j] += -1 if i % 2 else 1
    return mat


def homology(facets, dimension=None):
    """Reduced-free integer homology groups of the complex generated by
    ``facets``.

    Returns a list indexed by degree of ``(betti, torsion)`` pairs, torsion
    being the tuple of invariant factors > 1.
    """
    faces = all_faces(facets)
    if dimension is None:
        dimension = max((len(f) - 1 for f in faces), default=-1)
    by_dim = [sorted(f for f in faces if len(f) == k + 1) for k in range(dimension + 1)]
    ranks = [0] * (dimension + 2)
    factors = [[] for _ in range(dimension + 2)]
    for k in range(1, dimension + 1):
        d = smith_diagonal(boundary_matrix(by_dim[k - 1], by_dim[k])) if by_dim[k] else []
        ranks[k] = len(d)
        factors[k] = [x for x in d if x > 1]
    result = []
    for k in range(dimension + 1):
        betti = len(by_dim[k]) - ranks[k] - ranks[k + 1]
        result.append((betti, tuple(factors[k + 1])))
    return result
