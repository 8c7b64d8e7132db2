"""Sign-preserving coefficient reduction via exact lattice basis reduction.

Given a rational vector ``w`` and a norm budget ``N``, :func:`frank_tardos_reduce`
returns an integer vector ``v`` with ``sign(w . b) == sign(v . b)`` for every
integer vector ``b`` of l1-norm at most ``N``, and with ``max |v_i|`` bounded
by ``2**(4 r**3) * N**(r**2 + 2 r)`` in dimension ``r``.

The construction rounds the normalized vector to a simultaneous Diophantine
approximation ``p / q`` good enough that inner products with small ``b``
cannot cross an integer boundary, then recurses on the approximation residue
and stitches the levels together with a multiplier large enough that lower
levels only ever break ties.  The approximation itself comes from LLL on the
standard ``(r+1)``-dimensional lattice; all arithmetic is exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .core import InvariantError

__all__ = ["lll_reduce", "simultaneous_approximation", "frank_tardos_reduce"]

_DELTA = Fraction(3, 4)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _nearest_int(x: Fraction) -> int:
    # floor(x + 1/2): any nearest integer works for size reduction
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def _gram_schmidt(basis):
    """Orthogonalization coefficients mu and squared norms of the orthogonal
    vectors; the vectors themselves are not needed afterwards."""
    n = len(basis)
    ortho = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i, row in enumerate(basis):
        v = [Fraction(x) for x in row]
        for j in range(i):
            coeff = _dot(row, ortho[j]) / norms[j]
            mu[i][j] = coeff
            v = [x - coeff * y for x, y in zip(v, ortho[j])]
        ortho.append(v)
        norms.append(_dot(v, v))
    return mu, norms


def lll_reduce(basis, delta: Fraction = _DELTA):
    """LLL with incremental coefficient updates (no re-orthogonalization), so
    moderate dimensions stay fast under exact rational arithmetic.  Returns a
    new reduced basis spanning the same lattice; rows must be independent."""
    b = [[Fraction(x) for x in row] for row in basis]
    n = len(b)
    if n <= 1:
        return b
    mu, norms = _gram_schmidt(b)

    def size_reduce(k: int, l: int) -> None:
        q = _nearest_int(mu[k][l])
        if q:
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            for j in range(l):
                mu[k][j] -= q * mu[l][j]
            mu[k][l] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if norms[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]:
            # swap rows k-1 and k, updating mu and the orthogonal norms in place
            coeff = mu[k][k - 1]
            lifted = norms[k] + coeff * coeff * norms[k - 1]
            mu[k][k - 1] = coeff * norms[k - 1] / lifted
            norms[k] = norms[k - 1] * norms[k] / lifted
            norms[k - 1] = lifted
            b[k - 1], b[k] = b[k], b[k - 1]
            for j in range(k - 1):
                mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - coeff * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b


def simultaneous_approximation(alpha, eps: Fraction):
    """Integers ``(p, q)`` with ``|q * alpha_i - p_i| <= eps`` for all ``i``
    and ``1 <= q <= 2**ceil(r(r+1)/4) * eps**(-r)``.

    ``alpha`` must satisfy ``max |alpha_i| <= 1`` and ``0 < eps < 1``.  The
    pair is read off the first vector of an LLL-reduced basis of the lattice
    spanned by the unit rows and ``(-alpha, c)`` for a determinant ``c`` tuned
    to the guarantee above.
    """
    alpha = [Fraction(a) for a in alpha]
    r = len(alpha)
    if r < 1:
        raise InvariantError("sda.dim", "need at least one coordinate")
    if not 0 < eps < 1:
        raise InvariantError("sda.eps", f"eps must lie in (0, 1), got {eps}")
    if any(abs(a) > 1 for a in alpha):
        raise InvariantError("sda.norm", "coordinates must lie in [-1, 1]")
    exponent = -((-r * (r + 1)) // 4)  # ceil(r(r+1)/4)
    c = eps ** (r + 1) / 2**exponent

    # scale the lattice to integers; reduction commutes with uniform scaling
    # and integer rows keep the row operations cheap
    scale = lcm(c.denominator, *(a.denominator for a in alpha))
    basis = []
    for i in range(r):
        row = [0] * (r + 1)
        row[i] = scale
        basis.append(row)
    basis.append([int(-a * scale) for a in alpha] + [int(c * scale)])

    first = [x / scale for x in lll_reduce(basis)[0]]
    q = first[r] / c
    assert q.denominator == 1, "last coordinate must be an integer multiple of c"
    q = q.numerator
    assert q != 0, "a zero multiplier would mean a sub-unit nonzero integer vector"
    if q < 0:
        q = -q
        first = [-x for x in first]
    p = []
    for i in range(r):
        value = first[i] + q * alpha[i]
        assert value.denominator == 1
        p.append(value.numerator)
    assert all(abs(q * a - pi) <= eps for a, pi in zip(alpha, p))
    assert q <= 2**exponent * eps**-r
    return p, q


def _reduce_recursive(w: list[Fraction], n_bound: int) -> list[int]:
    if all(x == 0 for x in w):
        return [0] * len(w)
    norm = max(abs(x) for x in w)
    unit = [x / norm for x in w]
    eps = Fraction(1, 2 * n_bound)
    p, q = simultaneous_approximation(unit, eps)
    # coordinates at the max (and all zeros) round exactly, so the support
    # strictly shrinks and the recursion ends after at most dim(w) levels
    residue = [q * u - pi for u, pi in zip(unit, p)]
    deeper = _reduce_recursive(residue, n_bound)
    scale = 2 * n_bound * max((abs(x) for x in deeper), default=0) + 1
    return [scale * pi + di for pi, di in zip(p, deeper)]


def frank_tardos_reduce(weights, n_bound: int) -> list[int]:
    """Reduce a rational vector to a small integer vector agreeing in sign
    with it against every integer ``b`` with ``sum |b_i| <= n_bound``.

    Equal input coordinates are collapsed before reduction and re-expanded
    afterwards; grouping the entries of any ``b`` can only lower its l1-norm,
    so the contract carries over and equal coordinates provably stay equal.
    """
    entries = [Fraction(x) for x in weights]
    if not entries:
        raise InvariantError("ft.dim", "cannot reduce an empty vector")
    if n_bound < 1:
        raise InvariantError("ft.bound", f"norm budget must be >= 1, got {n_bound}")
    common = lcm(*(f.denominator for f in entries))
    scaled = [int(f * common) for f in entries]
    distinct = sorted(set(scaled))
    reduced = _reduce_recursive([Fraction(v) for v in distinct], n_bound)
    lookup = dict(zip(distinct, reduced))
    return [lookup[v] for v in scaled]
