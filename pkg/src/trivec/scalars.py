"""Scalar arithmetic and small dense-matrix kernels.

Two scalar modes coexist in the library and are never mixed silently:

* exact mode: ``int``, ``fractions.Fraction`` and :class:`GaussianRational`
  (a complex number with rational real and imaginary parts),
* float mode: ``float`` and ``complex``.

Arithmetic between a :class:`GaussianRational` and a float or complex raises
``TypeError``; callers that want to leave exact mode must convert explicitly
with :func:`to_complex`.

The matrix kernels operate on rectangular lists of row lists.  In exact mode
rank and determinant use fraction-free (Bareiss) elimination, so results are
bit-exact; in float mode rank counts singular values against a
:class:`TolerancePolicy` and eigenvalues come from cyclic Jacobi sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

_EXACT_TYPES = (int, Fraction)


class GaussianRational:
    """Complex number with exact rational real and imaginary parts.

    Parts are stored as ``Fraction`` in lowest terms with positive
    denominator (the ``Fraction`` normal form).  Operations accept ``int``
    and ``Fraction`` operands; floats and complexes are rejected.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, _EXACT_TYPES):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)


def is_exact(x) -> bool:
    """True for the exact scalar types, False for float/complex."""
    return isinstance(x, (GaussianRational,) + _EXACT_TYPES)


def conjugate(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def abs_sq(x):
    """|x|^2, exact (Fraction) for exact scalars, float otherwise."""
    if isinstance(x, GaussianRational):
        return x.norm_sq()
    if isinstance(x, _EXACT_TYPES):
        return Fraction(x) ** 2
    if isinstance(x, complex):
        return x.real * x.real + x.imag * x.imag
    return x * x


def to_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return x.to_complex()
    return complex(x)


def real_part(x):
    if isinstance(x, GaussianRational):
        return x.re
    if isinstance(x, complex):
        return x.real
    return x


def imag_part(x):
    if isinstance(x, GaussianRational):
        return x.im
    if isinstance(x, complex):
        return x.imag
    return 0


@dataclass(frozen=True)
class TolerancePolicy:
    """Float-mode thresholds; ignored entirely in exact mode.

    Rank keeps singular values above
    ``max(relative_rank_epsilon * sigma_max, absolute_floor)``.  Zero tests
    on invariant values scale ``zero_epsilon`` by the maximum input amplitude
    raised to the invariant's homogeneous degree.
    """

    relative_rank_epsilon: float = 1e-10
    absolute_floor: float = 1e-13
    zero_epsilon: float = 1e-8

    def __post_init__(self):
        if self.relative_rank_epsilon <= 0 or self.absolute_floor <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOLERANCE = TolerancePolicy()


def _check_rect(m):
    if not m:
        return 0, 0
    ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise ValueError("matrix rows have unequal lengths")
    return len(m), ncols


def matrix_is_exact(m) -> bool:
    return all(is_exact(x) for row in m for x in row)


def _exact_div(x, d):
    """Exact division, staying in int when both operands are int."""
    if isinstance(x, int) and isinstance(d, int):
        q, r = divmod(x, d)
        if r:
            raise ArithmeticError("non-exact integer division in Bareiss step")
        return q
    return x / d


def _bareiss(m):
    """Fraction-free elimination.  Returns (rank, det_of_leading_block, swaps).

    ``det`` is meaningful only when the matrix is square and has full rank;
    the caller adjusts for the parity of row swaps.
    """
    nr, nc = _check_rect(m)
    if nr == 0 or nc == 0:
        return 0, 1, 0
    m = [list(row) for row in m]
    prev = 1
    rank = 0
    swaps = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            swaps += 1
        pv = m[rank][col]
        for i in range(rank + 1, nr):
            fi = m[i][col]
            row_i = m[i]
            row_r = m[rank]
            if fi:
                m[i] = [_exact_div(pv * row_i[j] - fi * row_r[j], prev)
                        for j in range(nc)]
            elif prev != 1:
                m[i] = [_exact_div(pv * row_i[j], prev) for j in range(nc)]
            else:
                m[i] = [pv * x for x in row_i]
        prev = pv
        rank += 1
        if rank == nr:
            break
    return rank, prev, swaps


def _singular_values(m):
    """(singular values, noise floor): Gram-eigenvalue route.

    Squaring through the Gram matrix limits the resolvable ratio of singular
    values to about sqrt(machine epsilon); the returned floor bounds the
    spurious magnitude a mathematically zero singular value can show.
    """
    nr, nc = _check_rect(m)
    a = [[to_complex(x) for x in row] for row in m]
    if nr == 0 or nc == 0:
        return [], 0.0
    if nc <= nr:
        g = [[sum(a[k][i].conjugate() * a[k][j] for k in range(nr))
              for j in range(nc)] for i in range(nc)]
    else:
        g = [[sum(a[i][k] * a[j][k].conjugate() for k in range(nc))
              for j in range(nr)] for i in range(nr)]
    evs = hermitian_eigenvalues(g)
    lam_max = max((abs(ev) for ev in evs), default=0.0)
    noise = math.sqrt(16 * max(nr, nc) * 2.3e-16 * lam_max)
    return [math.sqrt(ev) if ev > 0 else 0.0 for ev in evs], noise


def rank(m, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> int:
    """Rank of a rectangular matrix, exact or tolerance-based."""
    nr, nc = _check_rect(m)
    if nr == 0 or nc == 0:
        return 0
    if matrix_is_exact(m):
        r, _, _ = _bareiss(m)
        return r
    svs, noise = _singular_values(m)
    if not svs:
        return 0
    smax = max(svs)
    cut = max(tol.relative_rank_epsilon * smax, tol.absolute_floor, noise)
    return sum(1 for s in svs if s > cut)


def determinant(m):
    """Determinant of a square matrix (exact Bareiss or float LU)."""
    nr, nc = _check_rect(m)
    if nr != nc:
        raise ValueError("determinant requires a square matrix")
    if nr == 0:
        return 1
    if matrix_is_exact(m):
        r, det, swaps = _bareiss(m)
        if r < nr:
            return 0 * m[0][0]
        return -det if swaps % 2 else det
    a = [[to_complex(x) for x in row] for row in m]
    det = 1.0 + 0j
    for col in range(nr):
        piv = max(range(col, nr), key=lambda i: abs(a[i][col]))
        if abs(a[piv][col]) == 0.0:
            return 0j
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for i in range(col + 1, nr):
            f = a[i][col] * inv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def _antisymmetry_defect(m):
    nr, _ = _check_rect(m)
    worst = 0
    for i in range(nr):
        for j in range(nr):
            d = abs_sq(m[i][j] + m[j][i])
            if d > worst:
                worst = d
    return worst


def pfaffian(m):
    """Pfaffian of an even-order antisymmetric matrix.

    Expansion along the first row; intended for the orders (at most 8) that
    arise here, where the recursion cost is negligible.  Satisfies
    ``pfaffian(m)**2 == determinant(m)``.
    """
    nr, nc = _check_rect(m)
    if nr != nc:
        raise ValueError("pfaffian requires a square matrix")
    if nr % 2:
        raise ValueError("pfaffian requires even order")
    exact = matrix_is_exact(m)
    defect = _antisymmetry_defect(m)
    if exact:
        if defect != 0:
            raise ValueError("matrix is not antisymmetric")
    else:
        scale = max((abs_sq(x) for row in m for x in row), default=0.0)
        if defect > 1e-20 * max(scale, 1e-300):
            raise ValueError("matrix is not antisymmetric to tolerance")
    if nr == 0:
        return 1

    def rec(rows):
        if not rows:
            return 1
        first = rows[0]
        rest = rows[1:]
        total = None
        for pos, j in enumerate(rest):
            a = m[first][j]
            if not a:
                continue
            sub = rec(rest[:pos] + rest[pos + 1:])
            term = a * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return 0 * m[0][0]
        return total

    return rec(list(range(nr)))


def _jacobi_sweeps(a, v, tol):
    """Cyclic Jacobi on a real symmetric matrix in place; v gathers rotations."""
    n = len(a)
    norm = math.sqrt(sum(a[i][j] * a[i][j] for i in range(n) for j in range(n)))
    if norm == 0.0:
        return
    for _ in range(60):
        off = math.sqrt(sum(a[i][j] * a[i][j]
                            for i in range(n) for j in range(n) if i != j))
        if off < tol * norm:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p][k]
                    aqk = a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                if v is not None:
                    for k in range(n):
                        vkp = v[k][p]
                        vkq = v[k][q]
                        v[k][p] = c * vkp - s * vkq
                        v[k][q] = s * vkp + c * vkq
    raise ArithmeticError("Jacobi iteration failed to converge")


def _embed_hermitian(m):
    """Real symmetric 2n x 2n embedding [[A, -B], [B, A]] of A + iB."""
    n = len(m)
    a = [[to_complex(x) for x in row] for row in m]
    big = [[0.0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            re = a[i][j].real
            im = a[i][j].imag
            big[i][j] = re
            big[n + i][n + j] = re
            big[i][n + j] = -im
            big[n + i][j] = im
    return big


def _check_hermitian(m):
    n, nc = _check_rect(m)
    if n != nc:
        raise ValueError("hermitian_eigenvalues requires a square matrix")
    a = [[to_complex(x) for x in row] for row in m]
    scale = max((abs(a[i][j]) for i in range(n) for j in range(n)), default=0.0)
    worst = max((abs(a[i][j] - a[j][i].conjugate())
                 for i in range(n) for j in range(n)), default=0.0)
    if worst > 1e-10 * max(scale, 1e-300):
        raise ValueError("matrix is not Hermitian to tolerance")
    return a, n


def hermitian_eigenvalues(m, convergence: float = 1e-14) -> list:
    """Ascending real eigenvalues of a Hermitian matrix.

    Exact inputs are converted to float first.  A complex Hermitian H = A+iB
    is diagonalized through its real symmetric embedding [[A,-B],[B,A]],
    whose spectrum is that of H with every eigenvalue doubled.
    """
    a, n = _check_hermitian(m)
    if n == 0:
        return []
    if all(x.imag == 0.0 for row in a for x in row):
        real = [[x.real for x in row] for row in a]
        _jacobi_sweeps(real, None, convergence)
        return sorted(real[i][i] for i in range(n))
    big = _embed_hermitian(a)
    _jacobi_sweeps(big, None, convergence)
    evs = sorted(big[i][i] for i in range(2 * n))
    return evs[::2]


def hermitian_eigensystem(m, convergence: float = 1e-14):
    """(ascending eigenvalues, unitary whose columns are eigenvectors).

    For complex input the eigenvectors are recovered from the real
    embedding: each real eigenvector (u; w) of [[A,-B],[B,A]] yields the
    complex vector u + iw, and a Gram-Schmidt pass picks one member per
    conjugate pair (the embedding doubles every eigenspace).
    """
    a, n = _check_hermitian(m)
    if n == 0:
        return [], []
    if all(x.imag == 0.0 for row in a for x in row):
        real = [[x.real for x in row] for row in a]
        v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
        _jacobi_sweeps(real, v, convergence)
        order = sorted(range(n), key=lambda i: real[i][i])
        vals = [real[i][i] for i in order]
        vecs = [[complex(v[r][i]) for i in order] for r in range(n)]
        return vals, vecs
    big = _embed_hermitian(a)
    v = [[1.0 if i == j else 0.0 for j in range(2 * n)] for i in range(2 * n)]
    _jacobi_sweeps(big, v, convergence)
    order = sorted(range(2 * n), key=lambda i: big[i][i])
    vals, vecs = [], []
    for idx in order:
        if len(vals) == n:
            break
        cand = [complex(v[r][idx], v[n + r][idx]) for r in range(n)]
        for w in vecs:
            ip = sum(wc.conjugate() * cc for wc, cc in zip(w, cand))
            cand = [cc - ip * wc for cc, wc in zip(cand, w)]
        nrm = math.sqrt(sum(abs(c) ** 2 for c in cand))
        if nrm < 1e-8:
            continue  # conjugate partner of a vector already chosen
        vecs.append([c / nrm for c in cand])
        vals.append(big[idx][idx])
    if len(vals) != n:
        raise ArithmeticError("failed to extract a full complex eigenbasis")
    cols = [[vecs[j][r] for j in range(n)] for r in range(n)]
    return vals, cols
