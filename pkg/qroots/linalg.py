"""
Exact linear algebra over sympy domains.

Every matrix here is a list of rows of domain elements; DomainMatrix does the
elimination. Empty shapes are handled before sympy sees them.
"""

from typing import Any, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

Row = List[Any]


def to_dm(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), domain)


def from_dm(m: DomainMatrix) -> List[Row]:
    return [list(r) for r in m.to_list()]


def rref(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> Tuple[List[Row], Tuple[int, ...]]:
    if not rows or ncols == 0:
        return [list(r) for r in rows], ()
    reduced, pivots = to_dm(rows, domain, ncols).rref()
    return from_dm(reduced), tuple(pivots)


def rank(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> int:
    return len(rref(rows, domain, ncols)[1])


def transpose(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> List[Row]:
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def nullspace(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> List[Row]:
    """Basis of {x : M x = 0}."""
    reduced, pivots = rref(rows, domain, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [domain.zero] * ncols
        vec[f] = domain.one
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def independent_rows(rows: Sequence[Sequence[Any]], domain: Any, ncols: int) -> List[int]:
    """Indices of the first maximal linearly independent subset of rows."""
    if not rows:
        return []
    _, pivots = rref(transpose(rows, domain, ncols), domain, len(rows))
    return list(pivots)


def coordinates(basis: Sequence[Sequence[Any]], vector: Sequence[Any], domain: Any) -> Optional[Row]:
    """Coefficients c with sum c_i basis_i = vector, or None if not in the span.

    The basis is assumed linearly independent.
    """
    n = len(basis)
    dim = len(vector)
    if n == 0:
        return [] if all(not x for x in vector) else None
    augmented = [[basis[i][j] for i in range(n)] + [vector[j]] for j in range(dim)]
    reduced, pivots = rref(augmented, domain, n + 1)
    if n in pivots:
        return None
    coeffs = [domain.zero] * n
    for r, p in enumerate(pivots):
        coeffs[p] = reduced[r][n]
    return coeffs


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]], domain: Any) -> List[Row]:
    inner = len(b)
    ncols = len(b[0]) if b else 0
    if not a or not ncols or not inner:
        return [[domain.zero] * ncols for _ in a]
    return from_dm(to_dm(a, domain, inner) * to_dm(b, domain, ncols))


def matvec(a: Sequence[Sequence[Any]], v: Sequence[Any], domain: Any) -> Row:
    out = []
    for row in a:
        acc = domain.zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def inverse(a: Sequence[Sequence[Any]], domain: Any) -> List[Row]:
    n = len(a)
    if n == 0:
        return []
    return from_dm(to_dm(a, domain, n).inv())


def identity(n: int, domain: Any) -> List[Row]:
    return [[domain.one if i == j else domain.zero for j in range(n)] for i in range(n)]


def zeros(m: int, n: int, domain: Any) -> List[Row]:
    return [[domain.zero] * n for _ in range(m)]


def is_zero_matrix(a: Sequence[Sequence[Any]]) -> bool:
    return all(not x for row in a for x in row)


def mat_add(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> List[Row]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> List[Row]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: Any, a: Sequence[Sequence[Any]]) -> List[Row]:
    return [[c * x for x in row] for row in a]


def det(a: Sequence[Sequence[Any]], domain: Any) -> Any:
    n = len(a)
    if n == 0:
        return domain.one
    return to_dm(a, domain, n).det()


def lattice_span(vectors: Sequence[Sequence[Any]], valuation: Any, ncols: int) -> List[Row]:
    """An echelon basis of the span of vectors over a discrete valuation ring.

    Per column the generator of least valuation becomes the pivot and clears
    that column from the others; every step is unimodular over the ring, so
    the result spans the same lattice.
    """
    pending = [list(v) for v in vectors if any(v)]
    basis: List[Row] = []
    for col in range(ncols):
        live = [v for v in pending if v[col]]
        if not live:
            continue
        pivot = min(live, key=lambda v: valuation(v[col]))
        rest = []
        for v in pending:
            if v is pivot:
                continue
            if v[col]:
                ratio = v[col] / pivot[col]
                v = [x - ratio * p for x, p in zip(v, pivot)]
            if any(v):
                rest.append(v)
        basis.append(pivot)
        pending = rest
    return basis
