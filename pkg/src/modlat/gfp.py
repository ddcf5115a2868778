"""Exact linear algebra over prime fields F_p.

Vectors are tuples of ints in [0, p); matrices are tuples of row tuples.
Everything returns canonical (reduced-echelon, sorted) data so results can
be hashed, compared and used as dictionary keys.
"""

from __future__ import annotations

from itertools import product

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def vec_add(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))

def vec_sub(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a - b) % p for a, b in zip(u, v))

def vec_scale(c: int, v: Vec, p: int) -> Vec:
    c %= p
    return tuple((c * a) % p for a in v)

def zero_vec(n: int) -> Vec:
    return (0,) * n

def unit_vec(i: int, n: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))

def is_zero(v: Vec) -> bool:
    return not any(v)


def mat_vec(m: Mat, v: Vec, p: int) -> Vec:
    return tuple(sum(r * c for r, c in zip(row, v)) % p for row in m)

def mat_mul(a: Mat, b: Mat, p: int) -> Mat:
    cols_b = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols_b) for row in a
    )

def mat_add(a: Mat, b: Mat, p: int) -> Mat:
    return tuple(vec_add(ra, rb, p) for ra, rb in zip(a, b))

def mat_scale(c: int, a: Mat, p: int) -> Mat:
    return tuple(vec_scale(c, row, p) for row in a)

def identity(n: int) -> Mat:
    return tuple(unit_vec(i, n) for i in range(n))

def zero_mat(rows: int, cols: int) -> Mat:
    return ((0,) * cols,) * rows

def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def rref(rows, p: int) -> Mat:
    """Reduced row echelon form; zero rows dropped, pivots strictly increasing.

    The result is the canonical representative of the row span.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    ncols = len(work[0])
    pivot_row = 0
    for col in range(ncols):
        src = None
        for r in range(pivot_row, len(work)):
            if work[r][col] % p:
                src = r
                break
        if src is None:
            continue
        work[pivot_row], work[src] = work[src], work[pivot_row]
        inv = pow(work[pivot_row][col], p - 2, p) if p > 2 else 1
        if inv != 1:
            work[pivot_row] = [(x * inv) % p for x in work[pivot_row]]
        piv = work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and work[r][col] % p:
                c = work[r][col] % p
                work[r] = [(x - c * y) % p for x, y in zip(work[r], piv)]
        pivot_row += 1
        if pivot_row == len(work):
            break
    out = [tuple(r) for r in work if any(r)]
    out.sort(key=pivot_column)
    return tuple(out)


def pivot_column(row: Vec) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return len(row)


def pivot_columns(echelon: Mat) -> tuple[int, ...]:
    return tuple(pivot_column(r) for r in echelon)


def reduce_mod(v: Vec, echelon: Mat, p: int) -> Vec:
    """Subtract echelon rows to kill v's entries at the pivot columns."""
    w = list(v)
    for row in echelon:
        c = pivot_column(row)
        if w[c] % p:
            coef = w[c] % p
            w = [(x - coef * y) % p for x, y in zip(w, row)]
    return tuple(w)


def in_span(v: Vec, echelon: Mat, p: int) -> bool:
    return is_zero(reduce_mod(v, echelon, p))


def contains(big: Mat, small: Mat, p: int) -> bool:
    return all(in_span(r, big, p) for r in small)


def span_sum(a: Mat, b: Mat, p: int) -> Mat:
    return rref(list(a) + list(b), p)


def span_intersection(a: Mat, b: Mat, p: int) -> Mat:
    """Zassenhaus: reduce (r|r) for r in a and (r|0) for r in b; rows with
    zero left half carry the intersection in the right half."""
    if not a or not b:
        return ()
    n = len(a[0])
    stacked = [tuple(r) + tuple(r) for r in a] + [tuple(r) + zero_vec(n) for r in b]
    reduced = rref(stacked, p)
    inter = [row[n:] for row in reduced if not any(row[:n])]
    return rref(inter, p)


def nullspace(m: Mat, ncols: int, p: int) -> Mat:
    """Canonical basis of {x : m @ x = 0} for an (anything x ncols) matrix."""
    red = rref(m, p)
    pivots = set(pivot_columns(red))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row in red:
            c = pivot_column(row)
            x[c] = (-row[f]) % p
        basis.append(tuple(x))
    return rref(basis, p)


def solve(m: Mat, rhs: Vec, p: int) -> Vec | None:
    """One solution of m @ x = rhs, or None. Columns of m are the unknowns."""
    if not m:
        return None if any(rhs) else ()
    ncols = len(m[0])
    aug = [tuple(row) + (b,) for row, b in zip(m, rhs)]
    red = rref(aug, p)
    x = [0] * ncols
    for row in red:
        c = pivot_column(row)
        if c == ncols:
            return None
        x[c] = row[ncols] % p
    return tuple(x)


def rank(rows, p: int) -> int:
    return len(rref(rows, p))


def all_vectors(n: int, p: int):
    """Iterate F_p^n in lexicographic order (first coordinate slowest)."""
    for tup in product(range(p), repeat=n):
        yield tup


def normalized_vectors(n: int, p: int):
    """One nonzero vector per scalar line: leading nonzero coordinate is 1."""
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield zero_vec(lead) + (1,) + tail


def all_echelon_bases(n: int, p: int):
    """All reduced echelon bases, i.e. all subspaces of F_p^n (incl. the zero space)."""
    yield ()
    for k in range(1, n + 1):
        for pivots in _increasing_tuples(n, k):
            pivset = set(pivots)
            free_slots = [
                [c for c in range(piv + 1, n) if c not in pivset] for piv in pivots
            ]
            total_free = sum(len(s) for s in free_slots)
            for assignment in product(range(p), repeat=total_free):
                rows = []
                pos = 0
                for piv, slots in zip(pivots, free_slots):
                    row = [0] * n
                    row[piv] = 1
                    for c in slots:
                        row[c] = assignment[pos]
                        pos += 1
                    rows.append(tuple(row))
                yield tuple(rows)


def _increasing_tuples(n: int, k: int):
    from itertools import combinations

    return combinations(range(n), k)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den
