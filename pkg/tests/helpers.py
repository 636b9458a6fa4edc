"""Shared test oracles, independent of the library code paths they check."""

from fractions import Fraction

from k3mukai.series import TruncatedSeries


def lagrange_coefficient(h: TruncatedSeries, z: TruncatedSeries, n: int) -> Fraction:
    """[z^n] of h(t(z)) via the Lagrange-Buermann formula.

    For z(t) = t*u(t) with u(0) invertible and n >= 1:

        [z^n] h(t(z)) = (1/n) * [t^(n-1)] ( h'(t) * (t/z(t))^n ).

    This never calls revert or compose-with-an-inverse, so it is an
    independent second algorithm for the same coefficient.
    """
    assert n >= 1
    u = TruncatedSeries(z.coeffs[1:])  # z/t, a unit
    t_over_z = 1 / u
    power = t_over_z
    for _ in range(n - 1):
        power = power * t_over_z
    return (h.derivative() * power).coeff(n - 1) / n


def naive_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(t)) by summing f_k * g^k directly (no Horner)."""
    n = min(f.order, g.order)
    acc = TruncatedSeries([f.coeffs[0]] + [0] * n)
    gk = TruncatedSeries([1] + [0] * n)
    for k in range(1, n + 1):
        gk = gk * g
        acc = acc + f.coeffs[k] * gk
    return acc


def gauss_rank(rows) -> int:
    """Rank over the rationals by plain fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for i in range(rank + 1, n_rows):
            factor = m[i][col] * inv
            if factor != 0:
                for j in range(col, n_cols):
                    m[i][j] -= factor * m[rank][j]
        rank += 1
        if rank == n_rows:
            break
    return rank


def gauss_det(rows) -> Fraction:
    """Determinant over the rationals by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            factor = m[i][col] * inv
            if factor != 0:
                for j in range(col, n):
                    m[i][j] -= factor * m[col][j]
    return det
