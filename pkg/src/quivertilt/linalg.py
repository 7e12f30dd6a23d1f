"""Exact linear algebra over the rationals and prime fields.

Row-vector convention, used consistently by the whole package: vectors are
rows, linear maps act by right multiplication, and a subspace of K^n is a
matrix whose rows span it.  Consequently the kernel of a matrix ``m`` is
``{v : v*m = 0}`` and solving ``x*a = b`` treats the rows of ``b`` as
right-hand sides.

No floating point anywhere: rationals are ``fractions.Fraction``, prime
field elements are ints in ``[0, p)``.
"""

from dataclasses import dataclass, field as _dc_field
from fractions import Fraction

from .errors import DimensionMismatch, InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: the rationals (characteristic 0) or F_p, p prime < 2**31."""

    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise InputError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not (2 <= p < 2**31 and _is_prime(p)):
                raise InputError(f"characteristic must be a prime < 2**31, got {p}")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    # -- element operations ------------------------------------------------

    def zero(self):
        return 0 if self.kind == "prime-field" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime-field" else Fraction(1)

    def coerce(self, x):
        """Coerce an int, Fraction or 'a/b' string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "prime-field":
            p = self.characteristic
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise InputError(f"denominator of {x} not invertible mod {p}")
                return (x.numerator * pow(x.denominator, p - 2, p)) % p
            return int(x) % p
        return Fraction(x)

    def add(self, a, b):
        if self.kind == "prime-field":
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.kind == "prime-field":
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a, b):
        if self.kind == "prime-field":
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.kind == "prime-field":
            return (-a) % self.characteristic
        return -a

    def inv(self, a):
        if self.kind == "prime-field":
            if a % self.characteristic == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.characteristic - 2, self.characteristic)
        return Fraction(1) / a

    def __str__(self):
        return "Q" if self.kind == "rationals" else f"GF({self.characteristic})"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


@dataclass(frozen=True)
class Matrix:
    """Immutable exact matrix.  A 0 x n or n x 0 matrix is a valid value and
    represents the zero map to or from the zero space."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple = _dc_field(default=())  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry grid does not match declared shape")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rows(fld: FieldSpec, rows, cols: int | None = None) -> "Matrix":
        rows = [tuple(fld.coerce(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise InputError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return Matrix(fld, len(rows), cols, tuple(rows))

    @staticmethod
    def zeros(fld: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = fld.zero()
        return Matrix(fld, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @staticmethod
    def identity(fld: FieldSpec, n: int) -> "Matrix":
        z, o = fld.zero(), fld.one()
        return Matrix(fld, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- basic algebra -------------------------------------------------------

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"({self.rows}x{self.cols}) * ({other.rows}x{other.cols})")
        fld = self.field
        if self.rows == 0 or other.cols == 0:
            return Matrix.zeros(fld, self.rows, other.cols)
        if self.cols == 0:
            return Matrix.zeros(fld, self.rows, other.cols)
        add, mul, zero = fld.add, fld.mul, fld.zero()
        ocols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            row = []
            for c in ocols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = add(s, mul(a, b))
                row.append(s)
            out.append(tuple(row))
        return Matrix(fld, self.rows, other.cols, tuple(out))

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        f = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(f(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def sub(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        f = self.field.sub
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(f(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def neg(self) -> "Matrix":
        f = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(f(a) for a in r) for r in self.entries))

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        f = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(f(c, a) for a in r) for r in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows and self.cols
                      else tuple(() for _ in range(self.cols)) if self.cols else ())

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(r + s for r, s in zip(self.entries, other.entries)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def take_rows(self, idxs) -> "Matrix":
        return Matrix(self.field, len(idxs), self.cols, tuple(self.entries[i] for i in idxs))

    def take_cols(self, idxs) -> "Matrix":
        return Matrix(self.field, self.rows, len(idxs),
                      tuple(tuple(r[j] for j in idxs) for r in self.entries))

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def block_matrix(fld: FieldSpec, grid) -> Matrix:
    """Assemble a matrix from a 2d grid of blocks (each a Matrix)."""
    rows = []
    for brow in grid:
        if not brow:
            continue
        m = brow[0]
        for other in brow[1:]:
            m = m.hstack(other)
        rows.append(m)
    if not rows:
        return Matrix.zeros(fld, 0, 0)
    out = rows[0]
    for m in rows[1:]:
        out = out.vstack(m)
    return out


# -- elimination ------------------------------------------------------------


def _rref_with_transform(m: Matrix):
    """Reduced row echelon form.  Returns (R, pivots, T) with T*m = R and T
    invertible; rows of T below the pivot rows span the left kernel of m."""
    fld = m.field
    work = [list(r) for r in m.entries]
    trans = [list(r) for r in Matrix.identity(fld, m.rows).entries]
    add, sub, mul, inv = fld.add, fld.sub, fld.mul, fld.inv
    pivots = []
    pr = 0
    for pc in range(m.cols):
        sel = None
        for i in range(pr, m.rows):
            if work[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        trans[pr], trans[sel] = trans[sel], trans[pr]
        piv = work[pr][pc]
        if piv != fld.one():
            iv = inv(piv)
            work[pr] = [mul(iv, x) for x in work[pr]]
            trans[pr] = [mul(iv, x) for x in trans[pr]]
        for i in range(m.rows):
            if i != pr and work[i][pc]:
                c = work[i][pc]
                work[i] = [sub(a, mul(c, b)) for a, b in zip(work[i], work[pr])]
                trans[i] = [sub(a, mul(c, b)) for a, b in zip(trans[i], trans[pr])]
        pivots.append(pc)
        pr += 1
        if pr == m.rows:
            break
    R = Matrix(fld, m.rows, m.cols, tuple(tuple(r) for r in work))
    T = Matrix(fld, m.rows, m.rows, tuple(tuple(r) for r in trans))
    return R, tuple(pivots), T


def rref(m: Matrix):
    """(R, pivots) without the transform."""
    R, pivots, _ = _rref_with_transform(m)
    return R, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def row_space(m: Matrix) -> Matrix:
    """Canonical basis (rref rows) of the row span."""
    R, pivots = rref(m)
    return R.take_rows(range(len(pivots)))


def solve_right_kernel(m: Matrix) -> Matrix:
    """Basis of {v : v*m = 0}, one basis vector per row.

    Row count is rows(m) - rank(m); the rows are linearly independent.
    """
    R, pivots, T = _rref_with_transform(m)
    return T.take_rows(range(len(pivots), m.rows))


def solve_linear_system(a: Matrix, b: Matrix):
    """Find x with x*a = b.  Returns (x, kernel) where x is one particular
    solution (or None when unsolvable) and kernel is a basis of
    {v : v*a = 0}.  Requires cols(a) = cols(b)."""
    if a.cols != b.cols:
        raise DimensionMismatch("solve_linear_system: cols(a) != cols(b)")
    R, pivots, T = _rref_with_transform(a)
    fld = a.field
    zero = fld.zero()
    xrows = []
    ok = True
    for brow in b.entries:
        # express brow in the reduced row basis of a
        residual = list(brow)
        coeffs = [zero] * a.rows
        for k, pc in enumerate(pivots):
            c = residual[pc]
            if c:
                coeffs[k] = c
                residual = [fld.sub(r, fld.mul(c, v)) for r, v in zip(residual, R.entries[k])]
        if any(residual):
            ok = False
            break
        # y*R = brow with y supported on pivot rows; x = y*T
        x = [zero] * a.rows
        for k in range(len(pivots)):
            c = coeffs[k]
            if c:
                x = [fld.add(xi, fld.mul(c, t)) for xi, t in zip(x, T.entries[k])]
        xrows.append(tuple(x))
    kernel = T.take_rows(range(len(pivots), a.rows))
    if not ok:
        return None, kernel
    x = Matrix(fld, b.rows, a.rows, tuple(xrows))
    return x, kernel


def in_row_span(rows: Matrix, v: Matrix) -> bool:
    """Are all rows of v in the row span of `rows`?"""
    x, _ = solve_linear_system(rows, v)
    return x is not None


def quotient_basis(sub: Matrix, ambient_dim: int):
    """Quotient of K^n by the row span of `sub` (a matrix with n columns).

    Returns (section, projection): section is a q x n matrix whose rows are
    coset representatives forming a basis of the quotient, projection is the
    n x q matrix of the quotient map in coordinates.  Identities:
    section*projection = I_q and sub*projection = 0.
    """
    fld = sub.field
    if sub.cols != ambient_dim:
        raise DimensionMismatch("quotient_basis: subspace ambient dimension mismatch")
    R, pivots = rref(sub)
    free = [j for j in range(ambient_dim) if j not in pivots]
    zero, one = fld.zero(), fld.one()
    section = Matrix(fld, len(free), ambient_dim,
                     tuple(tuple(one if j == c else zero for j in range(ambient_dim)) for c in free))
    # projection row for e_i: reduce e_i modulo R, keep free coordinates
    proj_rows = []
    for i in range(ambient_dim):
        residual = [one if j == i else zero for j in range(ambient_dim)]
        for k, pc in enumerate(pivots):
            c = residual[pc]
            if c:
                residual = [fld.sub(r, fld.mul(c, v)) for r, v in zip(residual, R.entries[k])]
        proj_rows.append(tuple(residual[c] for c in free))
    projection = Matrix(fld, ambient_dim, len(free), tuple(proj_rows))
    return section, projection


def sum_subspaces(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.cols:
        raise DimensionMismatch("sum_subspaces ambient mismatch")
    return row_space(a.vstack(b))


def intersect_subspaces(a: Matrix, b: Matrix) -> Matrix:
    """Basis of (row span a) ∩ (row span b)."""
    if a.cols != b.cols:
        raise DimensionMismatch("intersect_subspaces ambient mismatch")
    if a.rows == 0 or b.rows == 0:
        return Matrix.zeros(a.field, 0, a.cols)
    stacked = a.vstack(b)
    ker = solve_right_kernel(stacked)  # rows (x | y) with x*a + y*b = 0
    xpart = ker.take_cols(range(a.rows))
    return row_space(xpart.mul(a))
