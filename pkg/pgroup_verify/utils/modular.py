"""
Exact linear algebra over the residue rings Z/p^E.

Row spaces are canonicalized with the Howell normal form, kernels come from
Howell forms of augmented matrices, and abelian group types from a Smith
reduction over the local ring. Everything works on lists of Python ints.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import multiplicity

Matrix = List[List[int]]


def plog(n: int, p: int) -> int:
    """Exact log_p of a power of p."""
    k = int(multiplicity(p, n))
    if p**k != n:
        raise ValueError(f"{n} is not a power of {p}")
    return k


def valuation(x: int, p: int, cap: int) -> int:
    """p-adic valuation of x, with 0 mapped to cap."""
    if x == 0:
        return cap
    return min(int(multiplicity(p, x)), cap)


def _unit_part(x: int, p: int, modulus: int) -> Tuple[int, int]:
    """Split a nonzero residue as p^v * u and return (v, u^-1 mod modulus)."""
    v = int(multiplicity(p, x))
    u = x // p**v
    return v, pow(u, -1, modulus)


def _pivot_column(row: Sequence[int]) -> int:
    for c, x in enumerate(row):
        if x:
            return c
    return -1


def howell_form(rows: Sequence[Sequence[int]], p: int, E: int) -> Matrix:
    """
    Howell normal form of a row space over Z/p^E.

    Pivots are powers of p, entries above a pivot are reduced below it and
    every pivot that is a zero divisor contributes its annihilator row, so
    two generating sets span the same module iff their forms are identical.
    """
    modulus = p**E
    mat = [[x % modulus for x in row] for row in rows if any(x % modulus for x in row)]
    if not mat:
        return []
    n_col = len(mat[0])
    r = 0
    for c in range(n_col):
        best, best_v = -1, E
        for i in range(r, len(mat)):
            if mat[i][c]:
                v = valuation(mat[i][c], p, E)
                if v < best_v:
                    best, best_v = i, v
        if best < 0:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        _, inverse = _unit_part(mat[r][c], p, modulus)
        mat[r] = [(x * inverse) % modulus for x in mat[r]]
        b = p**best_v

        for i in range(r + 1, len(mat)):
            if mat[i][c]:
                q = mat[i][c] // b
                mat[i] = [(x - q * y) % modulus for x, y in zip(mat[i], mat[r])]

        for i in range(r):
            if mat[i][c] >= b:
                q = mat[i][c] // b
                mat[i] = [(x - q * y) % modulus for x, y in zip(mat[i], mat[r])]

        if best_v > 0:
            extra = [(p ** (E - best_v) * y) % modulus for y in mat[r]]
            if any(extra):
                mat.append(extra)
        r += 1
    return [row for row in mat[:r] if any(row)]


def howell_reduce(
    vector: Sequence[int], form: Sequence[Sequence[int]], p: int, E: int
) -> List[int]:
    """Reduce vector against a Howell form; the result is zero iff it is a member."""
    modulus = p**E
    v = [x % modulus for x in vector]
    for row in form:
        c = _pivot_column(row)
        b = row[c]
        if v[c] % b:
            break
        q = v[c] // b
        if q:
            v = [(x - q * y) % modulus for x, y in zip(v, row)]
    return v


def in_row_space(
    vector: Sequence[int], form: Sequence[Sequence[int]], p: int, E: int
) -> bool:
    return not any(howell_reduce(vector, form, p, E))


def span_exponent(form: Sequence[Sequence[int]], p: int, E: int) -> int:
    """log_p of the size of the module spanned by a Howell form."""
    return sum(E - valuation(row[_pivot_column(row)], p, E) for row in form)


def kernel_generators(
    matrix: Sequence[Sequence[int]], n_rows: int, p: int, E: int
) -> Matrix:
    """
    Generators of {x in (Z/p^E)^n_rows : x * matrix = 0}.

    Computed from the Howell form of [matrix | I]: rows whose left block
    vanishes span the left kernel.
    """
    n_cols = len(matrix[0]) if matrix else 0
    augmented = []
    for i in range(n_rows):
        left = list(matrix[i]) if n_cols else []
        right = [1 if k == i else 0 for k in range(n_rows)]
        augmented.append(left + right)
    form = howell_form(augmented, p, E)
    return [row[n_cols:] for row in form if not any(row[:n_cols])]


@dataclass
class SmithReduction:
    """Diagonal valuations with the column transform V and its inverse."""

    valuations: List[int]
    transform: Matrix
    inverse: Matrix


def local_smith(
    rows: Sequence[Sequence[int]], n_cols: int, p: int, E: int
) -> SmithReduction:
    """
    Smith reduction over the local ring Z/p^E.

    Returns U * rows * V = diag(p^{s_1}, ..., p^{s_k}); the row space of
    `rows` is then spanned by the independent vectors p^{s_t} * Vinv[t].
    """
    modulus = p**E
    D = [[x % modulus for x in row] for row in rows]
    V = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    Vinv = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    valuations: List[int] = []
    t = 0
    while t < min(len(D), n_cols):
        best: Optional[Tuple[int, int]] = None
        best_v = E
        for i in range(t, len(D)):
            for j in range(t, n_cols):
                if D[i][j]:
                    v = valuation(D[i][j], p, E)
                    if v < best_v:
                        best, best_v = (i, j), v
        if best is None:
            break
        i, j = best
        D[t], D[i] = D[i], D[t]
        if j != t:
            for row in D:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
            Vinv[t], Vinv[j] = Vinv[j], Vinv[t]
        _, inverse = _unit_part(D[t][t], p, modulus)
        D[t] = [(x * inverse) % modulus for x in D[t]]
        b = p**best_v

        for i in range(len(D)):
            if i != t and D[i][t]:
                q = D[i][t] // b
                D[i] = [(x - q * y) % modulus for x, y in zip(D[i], D[t])]

        for j in range(t + 1, n_cols):
            if D[t][j]:
                q = D[t][j] // b
                D[t][j] = 0
                for row in V:
                    row[j] = (row[j] - q * row[t]) % modulus
                Vinv[t] = [(x + q * y) % modulus for x, y in zip(Vinv[t], Vinv[j])]

        valuations.append(best_v)
        t += 1
    return SmithReduction(valuations, V, Vinv)


def invariant_exponents(
    relations: Sequence[Sequence[int]], n_cols: int, p: int, E: int
) -> List[int]:
    """
    Invariant factor exponents of Z^n_cols / <relations>, descending.

    The relations must make the quotient a finite p-group of exponent
    below p^E; factors with valuation 0 are dropped.
    """
    reduction = local_smith(relations, n_cols, p, E)
    if len(reduction.valuations) < n_cols:
        raise ValueError("relation lattice does not have full rank")
    return sorted((v for v in reduction.valuations if v > 0), reverse=True)


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over the field with p elements."""
    mat = [[x % p for x in row] for row in rows]
    pivots: List[int] = []
    if not mat:
        return mat, pivots
    r = 0
    for c in range(len(mat[0])):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inverse = pow(mat[r][c], -1, p)
        mat[r] = [(x * inverse) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                q = mat[i][c]
                mat[i] = [(x - q * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(rows, p)[1])


def det_is_unit_mod_p(square: Sequence[Sequence[int]], p: int) -> bool:
    return rank_mod_p(square, p) == len(square)


def solve_affine_mod_p(
    coefficients: Sequence[Sequence[int]], constants: Sequence[int], n_vars: int, p: int
) -> Optional[Tuple[List[int], Matrix]]:
    """
    Solve coefficients * t = constants over F_p.

    Returns (particular solution, kernel basis) or None when inconsistent.
    """
    augmented = [list(row) + [b] for row, b in zip(coefficients, constants)]
    reduced, pivots = rref_mod_p(augmented, p)
    if n_vars in pivots:
        return None
    particular = [0] * n_vars
    for row, c in zip(reduced, pivots):
        particular[c] = row[n_vars] % p
    free = [c for c in range(n_vars) if c not in pivots]
    kernel: Matrix = []
    for f in free:
        vector = [0] * n_vars
        vector[f] = 1
        for row, c in zip(reduced, pivots):
            vector[c] = (-row[f]) % p
        kernel.append(vector)
    return particular, kernel
