"""Exact matrix realizations attached to a parameter array.

Everything here works over an arbitrary Field from .fields: square matrices
with exact entries, the bidiagonal pair (A, A*) and its companion pair
(B, B*), the triangular transition machinery connecting them, primitive
idempotents, and the q-binomial transition matrix available when the array
has a usable base in the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    BaseNotApplicable,
    IdentityViolated,
    RepeatedEigenvalue,
    SingularMatrix,
)
from .fields import Field, FieldElement
from .parray import ParameterArray, beta_plus_one
from .report import CheckReport


@dataclass(frozen=True)
class SquareMatrix:
    """Immutable square matrix with entries in a common field."""

    field: Field
    n: int
    rows: tuple[tuple[FieldElement, ...], ...]

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence[FieldElement]]) -> "SquareMatrix":
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix rows must all have length n")
        return SquareMatrix(field, n, tuple(tuple(row) for row in rows))

    @staticmethod
    def build(field: Field, n: int, entry: Callable[[int, int], FieldElement]) -> "SquareMatrix":
        return SquareMatrix(field, n, tuple(
            tuple(entry(i, j) for j in range(n)) for i in range(n)
        ))

    @staticmethod
    def identity(field: Field, n: int) -> "SquareMatrix":
        one, zero = field.one(), field.zero()
        return SquareMatrix.build(field, n, lambda i, j: one if i == j else zero)

    @staticmethod
    def diagonal(field: Field, entries: Sequence[FieldElement]) -> "SquareMatrix":
        zero = field.zero()
        ent = list(entries)
        return SquareMatrix.build(field, len(ent), lambda i, j: ent[i] if i == j else zero)

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix.build(self.field, self.n,
                                  lambda i, j: self.rows[i][j] + other.rows[i][j])

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix.build(self.field, self.n,
                                  lambda i, j: self.rows[i][j] - other.rows[i][j])

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n or self.field != other.field:
            raise ValueError("matrix product requires matching shapes and fields")
        cols = list(zip(*other.rows))
        return SquareMatrix(self.field, self.n, tuple(
            tuple(sum((a * b for a, b in zip(row, col)), start=self.field.zero())
                  for col in cols)
            for row in self.rows
        ))

    def scale(self, c: FieldElement) -> "SquareMatrix":
        return SquareMatrix.build(self.field, self.n, lambda i, j: self.rows[i][j] * c)

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.field, self.n, tuple(zip(*self.rows)))

    def is_diagonal(self) -> bool:
        zero = self.field.zero()
        return all(self.rows[i][j] == zero
                   for i in range(self.n) for j in range(self.n) if i != j)

    def inverse(self) -> "SquareMatrix":
        """Gauss-Jordan with exact pivoting; raises SingularMatrix."""
        n = self.n
        zero, one = self.field.zero(), self.field.one()
        left = [list(row) for row in self.rows]
        right = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if left[r][col] != zero), None)
            if pivot is None:
                raise SingularMatrix(f"no pivot in column {col}")
            left[col], left[pivot] = left[pivot], left[col]
            right[col], right[pivot] = right[pivot], right[col]
            inv = left[col][col].inverse()
            left[col] = [x * inv for x in left[col]]
            right[col] = [x * inv for x in right[col]]
            for r in range(n):
                if r != col and left[r][col] != zero:
                    f = left[r][col]
                    left[r] = [x - f * y for x, y in zip(left[r], left[col])]
                    right[r] = [x - f * y for x, y in zip(right[r], right[col])]
        return SquareMatrix.from_rows(self.field, right)

    def solve(self, rhs: Sequence[FieldElement]) -> list[FieldElement]:
        if len(rhs) != self.n:
            raise ValueError("rhs length must equal n")
        inv = self.inverse()
        return [sum((a * b for a, b in zip(row, rhs)), start=self.field.zero())
                for row in inv.rows]

    def to_json(self) -> dict:
        return {"n": self.n,
                "rows": [[self.field.format(x) for x in row] for row in self.rows]}

    @staticmethod
    def from_json(field: Field, obj: dict) -> "SquareMatrix":
        rows = [[field.parse(s) for s in row] for row in obj["rows"]]
        if len(rows) != obj["n"]:
            raise ValueError("row count disagrees with n")
        return SquareMatrix.from_rows(field, rows)


def _lower_inverse(m: SquareMatrix) -> SquareMatrix:
    # Forward substitution column by column; diagonal entries must be units.
    n = m.n
    zero = m.field.zero()
    out = [[zero] * n for _ in range(n)]
    for j in range(n):
        out[j][j] = m.rows[j][j].inverse()
        for i in range(j + 1, n):
            acc = zero
            for k in range(j, i):
                acc = acc + m.rows[i][k] * out[k][j]
            out[i][j] = -acc * m.rows[i][i].inverse()
    return SquareMatrix.from_rows(m.field, out)


@dataclass(frozen=True)
class SplitMatrixSet:
    """The matrices realizing a parameter array in the split basis."""

    A: SquareMatrix
    B: SquareMatrix
    Astar: SquareMatrix
    Bstar: SquareMatrix
    T: SquareMatrix
    Tstar: SquareMatrix
    Tdown: SquareMatrix
    D: SquareMatrix
    Ddown: SquareMatrix
    Z: SquareMatrix
    H: SquareMatrix
    Hstar: SquareMatrix
    G: SquareMatrix


def build(p: ParameterArray) -> SplitMatrixSet:
    F, d = p.field, p.d
    n = d + 1
    zero, one = F.zero(), F.one()
    th, ths, vp, ph = p.theta, p.theta_star, p.varphi, p.phi

    def bidiag_lower(diag):
        return SquareMatrix.build(F, n, lambda i, j:
                                  diag[i] if i == j else one if i == j + 1 else zero)

    def bidiag_upper(diag, sup):
        return SquareMatrix.build(F, n, lambda i, j:
                                  diag[i] if i == j else sup[i] if j == i + 1 else zero)

    A = bidiag_lower(th)
    B = bidiag_lower(tuple(th[d - i] for i in range(n)))
    Astar = bidiag_upper(ths, vp)
    Bstar = bidiag_upper(ths, ph)

    def prod(values, i, j):
        acc = one
        for h in range(j):
            acc = acc * (values[i] - values[h])
        return acc

    T = SquareMatrix.build(F, n, lambda i, j: prod(th, i, j))
    Tstar = SquareMatrix.build(F, n, lambda i, j: prod(ths, i, j))
    rev = tuple(th[d - i] for i in range(n))
    Tdown = SquareMatrix.build(F, n, lambda i, j: prod(rev, i, j))

    def prefix_products(values):
        acc, out = one, [one]
        for v in values:
            acc = acc * v
            out.append(acc)
        return out

    D = SquareMatrix.diagonal(F, prefix_products(vp))
    Ddown = SquareMatrix.diagonal(F, prefix_products(ph))
    Z = SquareMatrix.build(F, n, lambda i, j: one if i + j == d else zero)
    H = SquareMatrix.diagonal(F, th)
    Hstar = SquareMatrix.diagonal(F, ths)

    G = _lower_inverse(T) * Z * Tdown
    if G.rows[0][0] != one:
        raise IdentityViolated("transition matrix is not unit-normalized at (0, 0)")
    return SplitMatrixSet(A=A, B=B, Astar=Astar, Bstar=Bstar, T=T, Tstar=Tstar,
                          Tdown=Tdown, D=D, Ddown=Ddown, Z=Z, H=H, Hstar=Hstar, G=G)


def verify_conjugation(p: ParameterArray) -> CheckReport:
    """Check that G carries (A, A*) to (B, B*), plus the triangular identities
    that drive the construction of G."""
    m = build(p)
    report = CheckReport("conjugation")
    Ginv = _lower_inverse(m.Tdown) * m.Z * m.T
    n = m.A.n
    ident = SquareMatrix.identity(p.field, n)

    checks = [
        ("G * Ginv = I", m.G * Ginv, ident),
        ("Ginv * A * G = B", Ginv * m.A * m.G, m.B),
        ("Ginv * A* * G = B*", Ginv * m.Astar * m.G, m.Bstar),
        ("T A = H T", m.T * m.A, m.H * m.T),
        ("Z Tdown B = H Z Tdown", m.Z * m.Tdown * m.B, m.H * m.Z * m.Tdown),
        ("D A* D^-1 T*^t = T*^t H*",
         m.D * m.Astar * m.D.inverse() * m.Tstar.transpose(),
         m.Tstar.transpose() * m.Hstar),
    ]
    for label, got, want in checks:
        if got != want:
            report.add(label + " violated")
    return report


def primitive_idempotents(m: SquareMatrix,
                          eigenvalues: Sequence[FieldElement]) -> list[SquareMatrix]:
    """Lagrange projectors of a multiplicity-free matrix onto its eigenspaces."""
    n = m.n
    if len(eigenvalues) != n:
        raise ValueError("need exactly n eigenvalues")
    for i in range(n):
        for j in range(i + 1, n):
            if eigenvalues[i] == eigenvalues[j]:
                raise RepeatedEigenvalue(
                    f"eigenvalue at positions {i} and {j} repeats")
    ident = SquareMatrix.identity(m.field, n)
    out = []
    for i, ev in enumerate(eigenvalues):
        acc = ident
        for j, other in enumerate(eigenvalues):
            if j == i:
                continue
            acc = acc * (m - ident.scale(other)).scale((ev - other).inverse())
        out.append(acc)
    return out


def verify_leonard_conditions(p: ParameterArray) -> CheckReport:
    """Idempotent decompositions of A and A*, and the tridiagonal shape of each
    operator with respect to the other's eigenspaces."""
    m = build(p)
    F, d = p.field, p.d
    n = d + 1
    report = CheckReport("leonard-conditions")
    zero_mat = SquareMatrix.build(F, n, lambda i, j: F.zero())
    ident = SquareMatrix.identity(F, n)

    E = primitive_idempotents(m.A, p.theta)
    Estar = primitive_idempotents(m.Astar, p.theta_star)

    for label, fam in (("E", E), ("E*", Estar)):
        total = zero_mat
        for e in fam:
            total = total + e
        if total != ident:
            report.add(f"{label} idempotents do not sum to the identity")
        for i in range(n):
            for j in range(n):
                got = fam[i] * fam[j]
                want = fam[i] if i == j else zero_mat
                if got != want:
                    report.add(f"{label}_{i} {label}_{j} product is wrong")

    for label, fam, op in (("E* A E*", Estar, m.A), ("E A* E", E, m.Astar)):
        for i in range(n):
            for j in range(n):
                block = fam[i] * op * fam[j]
                if abs(i - j) > 1 and block != zero_mat:
                    report.add(f"{label} block ({i}, {j}) should vanish")
                if abs(i - j) == 1 and block == zero_mat:
                    report.add(f"{label} block ({i}, {j}) should be nonzero")
    return report


def _q_pochhammer(field: Field, q: FieldElement, n: int) -> list[FieldElement]:
    # out[m] = (q; q)_m
    out = [field.one()]
    power = field.one()
    for m in range(1, n + 1):
        power = power * q
        out.append(out[-1] * (field.one() - power))
    return out


def s_matrix(p: ParameterArray, q: FieldElement) -> SquareMatrix:
    """Closed-form transition matrix in base q: entries are forward products of
    (theta_0 - theta_{d-t}) times q-trinomial coefficients.

    Raises BaseNotApplicable for q = 1 or q = -1, for scalars that are not a
    base of the array (d >= 3), and when a required (q; q)_m vanishes.
    """
    F, d = p.field, p.d
    one = F.one()
    if q == one or q == -one:
        raise BaseNotApplicable("no closed form at base 1 or -1")
    if q == F.zero():
        raise BaseNotApplicable("zero is never a base")
    if d >= 3:
        ratio = beta_plus_one(p)
        if q + q.inverse() + one != ratio:
            raise BaseNotApplicable("q + 1/q + 1 does not match the eigenvalue ratio")

    poch = _q_pochhammer(F, q, d)
    if any(x == F.zero() for x in poch[1:]):
        raise BaseNotApplicable("q is a root of unity of order at most d")

    def trinomial(r: int, s: int, t: int) -> FieldElement:
        num = poch[r + s] * poch[r + t] * poch[s + t]
        den = poch[r] * poch[s] * poch[t] * poch[r + s + t]
        return num * den.inverse()

    prefix = [one]
    for t in range(d):
        prefix.append(prefix[-1] * (p.theta[0] - p.theta[d - t]))

    zero = F.zero()
    return SquareMatrix.build(F, d + 1, lambda i, j:
                              prefix[j - i] * trinomial(i, j - i, d - j)
                              if i <= j else zero)
