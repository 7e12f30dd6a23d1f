"""Small self-contained oracles used by the tests.

Deliberately independent of quivertilt.linalg: plain Fraction Gaussian
elimination over row lists, so oracle results share no code with the
implementation they check.
"""

from fractions import Fraction


def oracle_rank(rows):
    """Rank of a list-of-lists matrix over Q by naive elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def oracle_solve(rows, target):
    """Coefficients expressing target in the row span, or None."""
    n = len(rows)
    width = len(rows[0]) if rows else len(target)
    work = [[Fraction(x) for x in r] for r in rows]
    combos = [[Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    pivots = []
    rank = 0
    for c in range(width):
        piv = None
        for r in range(rank, n):
            if work[r][c]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        combos[rank], combos[piv] = combos[piv], combos[rank]
        pv = work[rank][c]
        work[rank] = [x / pv for x in work[rank]]
        combos[rank] = [x / pv for x in combos[rank]]
        for r in range(n):
            if r != rank and work[r][c]:
                f = work[r][c]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
                combos[r] = [a - f * b for a, b in zip(combos[r], combos[rank])]
        pivots.append(c)
        rank += 1
    t = [Fraction(x) for x in target]
    coeff = [Fraction(0)] * n
    for k, c in enumerate(pivots):
        f = t[c]
        if f:
            t = [a - f * b for a, b in zip(t, work[k])]
            coeff = [a + f * b for a, b in zip(coeff, combos[k])]
    if any(t):
        return None
    return coeff


def oracle_left_kernel(rows):
    """Basis of {v : v @ rows = 0} by eliminating an augmented identity."""
    n = len(rows)
    if n == 0:
        return []
    width = len(rows[0])
    aug = [[Fraction(x) for x in rows[i]] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    rank = 0
    for c in range(width):
        piv = None
        for r in range(rank, n):
            if aug[r][c]:
                piv = r
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][c]
        aug[rank] = [x / pv for x in aug[rank]]
        for r in range(n):
            if r != rank and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[rank])]
        rank += 1
    return [row[width:] for row in aug[rank:]]


def oracle_tensor_dim(dim_x, dim_y, right_acts, left_acts):
    """dim of (X ⊗ Y) / span{x·g ⊗ y - x ⊗ g·y} over the generators g.

    right_acts[g][p][p2]: x_p · g = sum_p2 R[p][p2] x_p2;
    left_acts[g][q][q2]:  g · y_q = sum_q2 L[q][q2] y_q2.
    """
    rows = []
    for R, L in zip(right_acts, left_acts):
        for p in range(dim_x):
            for q in range(dim_y):
                row = [Fraction(0)] * (dim_x * dim_y)
                for p2 in range(dim_x):
                    if R[p][p2]:
                        row[p2 * dim_y + q] += Fraction(R[p][p2])
                for q2 in range(dim_y):
                    if L[q][q2]:
                        row[p * dim_y + q2] -= Fraction(L[q][q2])
                if any(row):
                    rows.append(row)
    return dim_x * dim_y - (oracle_rank(rows) if rows else 0)


def corner_data(alg, vertices):
    """Raw corner data straight from the multiplication table:
    (corner basis indices, Ae indices, eA indices)."""
    vset = set(vertices)
    corner = [i for i in range(alg.dim)
              if alg.path_source(i) in vset and alg.path_target(i) in vset]
    ae = [i for i in range(alg.dim) if alg.path_target(i) in vset]
    ea = [i for i in range(alg.dim) if alg.path_source(i) in vset]
    return corner, ae, ea


def _corner_actions(alg, vertices):
    corner, ae, ea = corner_data(alg, vertices)
    ae_pos = {b: k for k, b in enumerate(ae)}
    ea_pos = {b: k for k, b in enumerate(ea)}
    right_acts, left_acts = [], []
    for g in corner:
        R = [[0] * len(ae) for _ in ae]
        for p, i in enumerate(ae):
            for k, c in enumerate(alg.mult[(i, g)]):
                if c:
                    R[p][ae_pos[k]] = c
        L = [[0] * len(ea) for _ in ea]
        for q, i in enumerate(ea):
            for k, c in enumerate(alg.mult[(g, i)]):
                if c:
                    L[q][ea_pos[k]] = c
        right_acts.append(R)
        left_acts.append(L)
    return corner, ae, ea, right_acts, left_acts


def oracle_corner_tensor_dim(alg, vertices):
    """dim Ae ⊗_{eAe} eA by the generic bilinear quotient."""
    _, ae, ea, right_acts, left_acts = _corner_actions(alg, vertices)
    return oracle_tensor_dim(len(ae), len(ea), right_acts, left_acts)


def oracle_corner_ideal_dim(alg, vertices):
    """dim AeA as the span of all products of Ae and eA basis paths."""
    _, ae, ea = corner_data(alg, vertices)
    rows = [list(alg.mult[(p, q)]) for p in ae for q in ea]
    return oracle_rank(rows) if rows else 0


def oracle_corner_tor1_dim(alg, vertices):
    """dim Tor_1^{eAe}(Ae, eA) from the one-free-generator-per-basis-vector
    presentation 0 -> K -> (eAe)^{dim Ae} -> Ae -> 0, tensored with eA.

    Tor_1 = dim(K ⊗ eA) - rank(K ⊗ eA -> F ⊗ eA), and since F is free,
    F ⊗ eA is identified with (eA)^{dim Ae}.
    """
    corner, ae, ea, _, left_acts = _corner_actions(alg, vertices)
    nc, na, ne = len(corner), len(ae), len(ea)
    corner_pos = {b: k for k, b in enumerate(corner)}
    # free cover F = (eAe)^na, basis (p, g): maps to ae_p * g
    cover = []
    for p, i in enumerate(ae):
        for g in corner:
            cover.append([alg.mult[(i, g)][j] for j in ae])
    kernel = oracle_left_kernel(cover)
    kdim = len(kernel)
    if kdim == 0:
        return 0
    # right action of corner basis on F, basis (p, g) -> (p, g*h)
    right_free = []
    for h in corner:
        mat = [[Fraction(0)] * (na * nc) for _ in range(na * nc)]
        for p in range(na):
            for gi, g in enumerate(corner):
                for k, c in enumerate(alg.mult[(g, h)]):
                    if c:
                        assert k in corner_pos
                        mat[p * nc + gi][p * nc + corner_pos[k]] += Fraction(c)
        right_free.append(mat)
    # right action on K in kernel coordinates
    right_kernel = []
    for hi in range(nc):
        mat = []
        for row in kernel:
            moved = [sum(row[a] * right_free[hi][a][b] for a in range(na * nc))
                     for b in range(na * nc)]
            coords = oracle_solve(kernel, moved)
            assert coords is not None, "kernel is not action-stable"
            mat.append(coords)
        right_kernel.append(mat)
    k_tensor = oracle_tensor_dim(kdim, ne, right_kernel, left_acts)
    # induced map on the raw K ⊗ eA basis; relation vectors map to zero, so
    # the rank over the raw basis equals the rank of the induced map
    img_rows = []
    for krow in kernel:
        for q in range(ne):
            img = [Fraction(0)] * (na * ne)
            for p in range(na):
                for gi, g in enumerate(corner):
                    c = krow[p * nc + gi]
                    if c:
                        for q2, d in enumerate(left_acts[gi][q]):
                            if d:
                                img[p * ne + q2] += Fraction(c) * d
            img_rows.append(img)
    induced_rank = oracle_rank(img_rows) if img_rows else 0
    return k_tensor - induced_rank
