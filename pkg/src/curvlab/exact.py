"""Exact rational linear algebra and multivariate polynomial calculus.

Every scalar in the package is a :class:`fractions.Fraction`; no floating
point appears in any correctness-bearing path.  Matrices are dense and
small (ambient dimensions are at most ~30), so simple algorithms win.
Rank and determinant use fraction-free (Bareiss) elimination to control
coefficient swell.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

Rat = Fraction

__all__ = [
    "Rat",
    "Matrix",
    "MultiPoly",
    "UniPoly",
    "SingularError",
    "NotSymmetricError",
    "VariableUnknownError",
    "mat_rank",
    "mat_inverse",
    "char_poly",
    "signature",
    "congruence_diagonalize",
    "nullspace",
    "solve",
    "rational_roots",
]


class SingularError(ValueError):
    """Matrix inversion was requested for a matrix with zero determinant."""


class NotSymmetricError(ValueError):
    """An operation requiring a symmetric matrix received a non-symmetric one."""


class VariableUnknownError(KeyError):
    """A polynomial operation referenced a variable that is not declared."""


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Dense matrix of exact rationals, immutable after construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_of_entries: Iterable[Iterable]):
        data = tuple(tuple(_rat(e) for e in row) for row in rows_of_entries)
        if not data:
            raise ValueError("matrix must have at least one row")
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(
            [[_rat(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        return cls(columns).transpose()

    def __getitem__(self, i: int) -> tuple:
        return self.data[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.data for e in row)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-e for e in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = _rat(c)
        return Matrix([[c * e for e in row] for row in self.data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        bt = other.transpose().data
        out = []
        for row in self.data:
            out_row = []
            for col in bt:
                acc = Fraction(0)
                for a, b in zip(row, col):
                    if a and b:
                        acc += a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [_rat(x) for x in v]
        return tuple(
            sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.data
        )

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), Fraction(0))

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of non-square matrix")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result * self
        return result

    def det(self) -> Fraction:
        return mat_det(self)

    def rank(self) -> int:
        return mat_rank(self)

    def inverse(self) -> "Matrix":
        return mat_inverse(self)


def _bareiss(data: list[list[Fraction]]) -> tuple[int, Fraction, bool]:
    """Fraction-free elimination in place.

    Returns (rank, product-of-final-pivot-data, row-swap-parity).  The
    intermediate entries stay integral once the rows are cleared of
    denominators, which keeps coefficient growth polynomial.
    """
    rows, cols = len(data), len(data[0])
    # Clear denominators row by row; rank is unchanged, det scaling is tracked.
    scale = Fraction(1)
    for i, row in enumerate(data):
        lcm = 1
        for e in row:
            if e:
                lcm = lcm * e.denominator // _gcd(lcm, e.denominator)
        if lcm != 1:
            data[i] = [e * lcm for e in row]
            scale *= lcm
    prev = Fraction(1)
    r = 0
    swaps = 0
    last_pivot = Fraction(1)
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if data[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            data[r], data[pr] = data[pr], data[r]
            swaps += 1
        pivot = data[r][c]
        for i in range(r + 1, rows):
            fac = data[i][c]
            data[i] = [
                (pivot * data[i][j] - fac * data[r][j]) / prev for j in range(cols)
            ]
        prev = pivot
        last_pivot = pivot
        r += 1
    det_like = last_pivot / scale
    return r, det_like, swaps % 2 == 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def mat_rank(m: Matrix) -> int:
    """Exact rank over the rationals via fraction-free elimination."""
    data = [list(row) for row in m.data]
    r, _, _ = _bareiss(data)
    return r


def mat_det(m: Matrix) -> Fraction:
    if not m.is_square:
        raise ValueError("determinant of non-square matrix")
    data = [list(row) for row in m.data]
    r, det_like, odd = _bareiss(data)
    if r < m.rows:
        return Fraction(0)
    return -det_like if odd else det_like


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination.

    Raises :class:`SingularError` when the determinant vanishes.
    """
    if not m.is_square:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.data)]
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            raise SingularError("matrix is singular")
        a[c], a[pr] = a[pr], a[c]
        piv = a[c][c]
        a[c] = [e / piv for e in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                fac = a[i][c]
                a[i] = [e - fac * p for e, p in zip(a[i], a[c])]
    return Matrix([row[n:] for row in a])


def nullspace(m: Matrix) -> list[tuple]:
    """Basis of the right kernel, as a list of vectors."""
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        a[r] = [e / piv for e in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                fac = a[i][c]
                a[i] = [e - fac * p for e, p in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -a[ri][fc]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, rhs: Sequence) -> tuple | None:
    """One exact solution of m·x = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    rows, cols = m.rows, m.cols
    b = [_rat(x) for x in rhs]
    if len(b) != rows:
        raise ValueError("rhs length mismatch")
    a = [list(row) + [b[i]] for i, row in enumerate(m.data)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        a[r] = [e / piv for e in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                fac = a[i][c]
                a[i] = [e - fac * p for e, p in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for ri, pc in enumerate(pivots):
        x[pc] = a[ri][cols]
    return tuple(x)


class UniPoly:
    """Univariate polynomial with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        x = _rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "UniPoly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(terms) + ")"


def char_poly(m: Matrix) -> UniPoly:
    """Monic characteristic polynomial det(lambda*I - m) by Faddeev-LeVerrier."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    ident = Matrix.identity(n)
    work = Matrix.identity(n)
    descending = [Fraction(1)]
    for k in range(1, n + 1):
        work = m * work
        ck = -work.trace() / k
        descending.append(ck)
        if k < n:
            work = work + ident.scale(ck)
    return UniPoly(reversed(descending))


def signature(m: Matrix) -> tuple[int, int, int]:
    """Inertia (n_neg, n_zero, n_pos) of a symmetric matrix.

    Computed by exact rational congruence diagonalization; raises
    :class:`NotSymmetricError` on asymmetric input.
    """
    diag, _ = congruence_diagonalize(m)
    n_neg = sum(1 for d in diag if d < 0)
    n_pos = sum(1 for d in diag if d > 0)
    return (n_neg, len(diag) - n_neg - n_pos, n_pos)


def congruence_diagonalize(m: Matrix) -> tuple[list[Fraction], Matrix]:
    """Diagonalize a symmetric matrix by congruence.

    Returns (diag, B) with B nonsingular and B^T m B = diag(diag).
    Zero diagonals with a nonzero off-diagonal partner are repaired by a
    column addition (valid in characteristic zero).
    """
    if not m.is_symmetric():
        raise NotSymmetricError("matrix is not symmetric")
    n = m.rows
    a = [list(row) for row in m.data]
    b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in b:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, fac):
        # column op on a and b, matching row op on a keeps congruence
        for row in a:
            row[dst] += fac * row[src]
        a[dst] = [e + fac * s for e, s in zip(a[dst], a[src])]
        for row in b:
            row[dst] += fac * row[src]

    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                pair = next(
                    (
                        (r, c)
                        for r in range(i, n)
                        for c in range(r + 1, n)
                        if a[r][c] != 0
                    ),
                    None,
                )
                if pair is None:
                    break  # remaining block is zero
                r, c = pair
                if r != i:
                    swap(i, r)
                add_col(i, c, Fraction(1))
        piv = a[i][i]
        for j in range(i + 1, n):
            if a[i][j]:
                add_col(j, i, -a[i][j] / piv)
    diag = [a[i][i] for i in range(n)]
    return diag, Matrix(b)


def rational_roots(p: UniPoly) -> set[Fraction]:
    """All rational roots of a nonzero polynomial, each verified exactly.

    Candidates come from the rational-root theorem on the
    denominator-cleared coefficients; divisor enumeration uses
    sympy.factorint for the two boundary coefficients.
    """
    if p.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    lcm = 1
    for c in p.coeffs:
        if c:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    roots: set[Fraction] = set()
    low = next(i for i, c in enumerate(ints) if c)
    if low > 0:
        roots.add(Fraction(0))
    a0, an = abs(ints[low]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return roots


def _divisors(n: int) -> list[int]:
    if n == 1:
        return [1]
    divs = [1]
    for prime, mult in sympy.factorint(n).items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
    return divs


class MultiPoly:
    """Multivariate polynomial over a fixed ordered variable list.

    Terms map exponent tuples to nonzero rational coefficients; zero
    coefficients are never stored.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        variables = tuple(variables)
        clean = {}
        for expo, coeff in (terms or {}).items():
            coeff = _rat(coeff)
            if coeff == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(variables):
                raise ValueError("exponent vector length mismatch")
            clean[expo] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "MultiPoly":
        zero = (0,) * len(variables)
        return cls(variables, {zero: _rat(c)})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableUnknownError(name)
        expo = tuple(int(v == name) for v in variables)
        return cls(variables, {expo: Fraction(1)})

    def _check_same(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ValueError("polynomials use different variable lists")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        self._check_same(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = terms.get(expo, Fraction(0)) + coeff
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = _rat(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check_same(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(1, self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(expo) for expo in self.terms)

    def eval(self, point: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != len(self.variables):
            raise ValueError("point length must equal variable count")
        point = [_rat(x) for x in point]
        acc = Fraction(0)
        for expo, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, expo):
                if e:
                    term *= x**e
            acc += term
        return acc

    def diff(self, var: str) -> "MultiPoly":
        """Exact formal partial derivative with respect to a named variable."""
        if var not in self.variables:
            raise VariableUnknownError(var)
        idx = self.variables.index(var)
        terms: dict = {}
        for expo, coeff in self.terms.items():
            e = expo[idx]
            if e == 0:
                continue
            new = list(expo)
            new[idx] = e - 1
            terms[tuple(new)] = coeff * e
        return MultiPoly(self.variables, terms)

    def lift(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express the polynomial over a larger variable list."""
        variables = tuple(variables)
        index = {}
        for v in self.variables:
            if v not in variables:
                raise VariableUnknownError(v)
            index[v] = variables.index(v)
        terms: dict = {}
        for expo, coeff in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, expo):
                new[index[v]] = e
            terms[tuple(new)] = coeff
        return MultiPoly(variables, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for expo, coeff in sorted(self.terms.items()):
            factors = [str(coeff)]
            for v, e in zip(self.variables, expo):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            parts.append("*".join(factors))
        return "MultiPoly(" + " + ".join(parts) + ")"


def poly_eval(p: MultiPoly, point: Sequence) -> Fraction:
    return p.eval(point)


def poly_diff(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)
