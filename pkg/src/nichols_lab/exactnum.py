"""Exact scalar arithmetic and the integer/field linear algebra used everywhere else.

Two kinds of coefficient field are supported: the rationals (arbitrary
precision, via ``fractions.Fraction``) and prime fields F_p with p < 2**31
(residues as plain ints, products fit in 64 bits).  A field object carries
the arithmetic; matrix and vector entries are raw payloads (``Fraction`` or
``int``) interpreted in the context of their field.

The integer-lattice routines (Hermite form, integer kernels, saturation)
are what the mod-p comparison of graded dimensions ultimately rests on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class FieldError(ValueError):
    """Raised for mixed-field operands or malformed field elements."""


class RationalField:
    """The field of rational numbers.

    Elements are ``Fraction`` or plain ints (exact either way); arithmetic
    keeps ints as long as divisions are exact, which is the common case in
    the graded computations and much faster than all-Fraction arithmetic.
    """

    name = "Q"
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f

    def check(self, x):
        if not isinstance(x, (Fraction, int)) or isinstance(x, bool):
            raise FieldError("rational entry expected, got %r" % (x,))
        return x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if isinstance(a, int):
            return 1 if a == 1 else (-1 if a == -1 else Fraction(1, a))
        return 1 / a

    def div(self, a, b):
        if isinstance(a, int) and isinstance(b, int):
            q, r = divmod(a, b)
            return q if r == 0 else Fraction(a, b)
        out = Fraction(a) / b
        return out.numerator if out.denominator == 1 else out

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """F_p for a prime p < 2**31; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or p >= 2 ** 31:
            raise FieldError("prime modulus out of range: %r" % (p,))
        if not _is_prime(p):
            raise FieldError("modulus %d is not prime" % p)
        self.p = p
        self.name = "F%d" % p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return x.numerator % self.p * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def check(self, x):
        if not isinstance(x, int) or isinstance(x, bool):
            raise FieldError("residue expected, got %r" % (x,))
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 mod %d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_by_name(name: str):
    """Resolve "Q" or "F<p>" to a field object."""
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise FieldError("unknown field name %r" % name)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class ExactMatrix:
    """Dense matrix over a single field; entries stored row-major."""

    def __init__(self, field, rows, cols, entries):
        if rows * cols != len(entries):
            raise FieldError("entry count %d does not match %dx%d" % (len(entries), rows, cols))
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = [field.check(x) for x in entries]

    @classmethod
    def from_rows(cls, field, row_list):
        rows = len(row_list)
        cols = len(row_list[0]) if rows else 0
        flat = []
        for r in row_list:
            if len(r) != cols:
                raise FieldError("ragged rows")
            flat.extend(r)
        return cls(field, rows, cols, flat)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise FieldError("vector length mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            base = i * self.cols
            s = f.zero
            for j, x in enumerate(v):
                if x:
                    s = f.add(s, f.mul(self.entries[base + j], x))
            out.append(s)
        return out

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return "ExactMatrix(%r, %dx%d)" % (self.field, self.rows, self.cols)


class IntegerLattice:
    """A full-rank-in-its-span sublattice of Z^ambient, given by basis rows."""

    def __init__(self, ambient: int, basis):
        self.ambient = ambient
        self.basis = [list(map(int, b)) for b in basis]
        for b in self.basis:
            if len(b) != ambient:
                raise ValueError("basis vector length mismatch")

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, vec) -> bool:
        """Exact membership test by solving over Q and checking integrality."""
        if not self.basis:
            return all(x == 0 for x in vec)
        rows = [[Fraction(x) for x in b] for b in self.basis]
        target = [Fraction(x) for x in vec]
        # solve coeffs * basis = target by elimination on the transpose system
        coeffs = _solve_left(rows, target)
        if coeffs is None:
            return False
        return all(c.denominator == 1 for c in coeffs)

    def __repr__(self):
        return "IntegerLattice(ambient=%d, rank=%d)" % (self.ambient, self.rank)


def _solve_left(rows, target):
    """Solve x * rows = target over Q; return x or None when inconsistent."""
    m = len(rows)
    n = len(rows[0])
    aug = [[rows[i][j] for i in range(m)] for j in range(n)]  # n x m, columns are basis vectors
    rhs = list(target)
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        rhs[r], rhs[pr] = rhs[pr], rhs[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        rhs[r] = rhs[r] / pv
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
                rhs[i] = rhs[i] - f * rhs[r]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if rhs[i] != 0:
            return None
    x = [Fraction(0)] * m
    for k, c in enumerate(piv_cols):
        x[c] = rhs[k]
    return x


# ---------------------------------------------------------------------------
# rank and kernel


def rank_and_kernel(m: ExactMatrix):
    """Rank and a kernel basis of ``m``, exact over its field.

    Over Q the elimination is fraction-free (Bareiss) on the cleared
    integer matrix, which keeps intermediate entries polynomially bounded.
    The kernel basis is deterministic: one vector per free column, with the
    free coordinate set to 1.
    """
    if m.field == QQ:
        echelon, piv_cols, _ = _bareiss_echelon(_cleared_int_rows(m))
    else:
        echelon, piv_cols = _gauss_echelon_fp(m.row_lists(), m.field.p)
    rank = len(piv_cols)
    kernel = _kernel_from_echelon(m.field, echelon, piv_cols, m.cols)
    return rank, kernel


def fraction_free_pivots(m: ExactMatrix):
    """The successive Bareiss pivots (leading-minor determinants, up to sign)."""
    if m.field != QQ:
        raise FieldError("fraction-free elimination is a rational-matrix routine")
    _, _, pivots = _bareiss_echelon(_cleared_int_rows(m))
    return pivots


def _cleared_int_rows(m: ExactMatrix):
    rows = []
    for r in m.row_lists():
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    return rows


def _bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot column list, pivot values).  Row order of
    the echelon part follows pivot discovery; entries stay integral.
    """
    a = [list(r) for r in rows]
    n = len(a)
    piv_cols = []
    pivots = []
    prev = 1
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        pr = next((i for i in range(r, n) if a[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        for i in range(r + 1, n):
            ai_c = a[i][c]
            row_i = a[i]
            row_r = a[r]
            a[i] = [(pv * row_i[j] - ai_c * row_r[j]) // prev for j in range(cols)]
        prev = pv
        piv_cols.append(c)
        pivots.append(pv)
        r += 1
        if r == n:
            break
    return a[:r], piv_cols, pivots


def _gauss_echelon_fp(rows, p):
    a = [list(r) for r in rows]
    n = len(a)
    cols = len(a[0]) if a else 0
    piv_cols = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, n) if a[i][c] % p != 0), None)
        if pr is None:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(r + 1, n):
            f = a[i][c] % p
            if f:
                row_r = a[r]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_r)]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    return a[:r], piv_cols


def _kernel_from_echelon(field, echelon, piv_cols, cols):
    """Back-substitute a (possibly fraction-free) echelon form for its kernel."""
    piv_set = set(piv_cols)
    free_cols = [c for c in range(cols) if c not in piv_set]
    basis = []
    for fc in free_cols:
        v = [field.zero] * cols
        v[fc] = field.one
        # solve pivot variables bottom-up
        for k in range(len(piv_cols) - 1, -1, -1):
            c = piv_cols[k]
            row = echelon[k]
            s = field.zero
            for j in range(c + 1, cols):
                if v[j] != field.zero and row[j] != 0:
                    s = field.add(s, field.mul(field(row[j]), v[j]))
            v[c] = field.div(field.neg(s), field(row[c]))
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# integer lattices: Hermite form, kernels, saturation


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Zero rows are dropped.  Pivoting inside a column picks the smallest
    absolute nonzero value, which keeps coefficient growth modest; the
    result itself is canonical.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            pr = min(nz, key=lambda i: (abs(a[i][c]), i))
            if pr != r:
                a[r], a[pr] = a[pr], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if any(a[i][c] != 0 for i in range(r, len(a))):
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    a = [row for row in a if any(row)]
    return a


def integer_kernel(rows, cols=None):
    """Basis of {x in Z^k : rows * x = 0}, as rows; the kernel of an integer matrix.

    Always returns a saturated lattice (kernels of integer maps are).
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    if cols is None:
        if not a:
            raise ValueError("cannot infer column count of an empty matrix")
        cols = len(a[0])
    # reduce [A^T | I] by integer row operations on the A^T part
    work = [[a[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(cols)]
            for j in range(cols)]
    r = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r, cols) if work[i][c] != 0]
            if not nz:
                break
            pr = min(nz, key=lambda i: (abs(work[i][c]), i))
            if pr != r:
                work[r], work[pr] = work[pr], work[r]
            done = True
            for i in range(r + 1, cols):
                if work[i][c] != 0:
                    q = work[i][c] // work[r][c]
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
                    if work[i][c] != 0:
                        done = False
            if done:
                break
        if any(work[i][c] != 0 for i in range(r, cols)):
            r += 1
            if r == cols:
                break
    kernel = [row[m:] for row in work[r:] if all(x == 0 for x in row[:m])]
    return hermite_normal_form(kernel)


def saturate_lattice(vectors, ambient_dim: int) -> IntegerLattice:
    """Z-basis of span_Q(vectors) ∩ Z^ambient, the saturation of the input span.

    Denominators are cleared per vector, a Hermite basis of the resulting
    lattice is taken, and the elementary divisors are divided out by passing
    to the double integer kernel (the kernel of the orthogonal-complement
    lattice), which is saturated by construction.
    """
    cleared = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        fr = [Fraction(x) for x in v]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        iv = [int(x * den) for x in fr]
        if any(iv):
            cleared.append(iv)
    if not cleared:
        return IntegerLattice(ambient_dim, [])
    basis = hermite_normal_form(cleared)
    complement = integer_kernel(basis, cols=ambient_dim)
    if not complement:
        # full span: the saturation is all of Z^ambient
        return IntegerLattice(ambient_dim, [[1 if i == j else 0 for j in range(ambient_dim)]
                                            for i in range(ambient_dim)])
    saturated = integer_kernel(complement, cols=ambient_dim)
    return IntegerLattice(ambient_dim, saturated)


def elementary_divisors(rows):
    """Invariant factors d_1 | d_2 | ... of an integer matrix (Smith form diagonal)."""
    a = [list(map(int, r)) for r in rows if any(r)]
    divisors = []
    while a:
        step = _smith_step(a)
        if step is None:
            break
        pivot, rest = step
        divisors.append(pivot)
        a = [r for r in rest if any(r)]
    return divisors


def _smith_step(a):
    """Isolate one invariant factor; returns (divisor, remaining block) or None."""
    while True:
        best = None
        for i, row in enumerate(a):
            for j, x in enumerate(row):
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            return None
        _, bi, bj = best
        a[0], a[bi] = a[bi], a[0]
        for row in a:
            row[0], row[bj] = row[bj], row[0]
        p = a[0][0]
        clean = True
        for i in range(1, len(a)):
            q = a[i][0] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[0])]
            if a[i][0]:
                clean = False
        if not clean:
            continue
        for j in range(1, len(a[0])):
            q = a[0][j] // p
            if q:
                a[0][j] -= q * p
            if a[0][j]:
                clean = False
        if not clean:
            continue
        pivot = abs(p)
        rest = [row[1:] for row in a[1:]]
        offender = None
        for i, row in enumerate(rest):
            if any(x % pivot for x in row):
                offender = i
                break
        if offender is not None:
            a[0] = [u + v for u, v in zip(a[0], a[offender + 1])]
            continue
        return pivot, rest


def character_exists(relation_matrix, target_orders) -> bool:
    """Decide whether unit values of the given multiplicative orders extend to a character.

    ``relation_matrix`` presents a finite abelian group on k generators (rows
    span the relation lattice).  Generator i is to be sent to a primitive
    root of unity of order ``target_orders[i]`` (order 1 means the value 1,
    order 2 means -1).  The assignment extends to a homomorphism into the
    unit group precisely when every relation row is killed, i.e. when
    sum_i r_i / o_i is an integer for each row r.
    """
    orders = list(target_orders)
    if any(o < 1 for o in orders):
        raise ValueError("orders must be positive")
    for row in relation_matrix:
        if len(row) != len(orders):
            raise ValueError("relation row length does not match generator count")
        s = sum(Fraction(int(r), o) for r, o in zip(row, orders))
        if s.denominator != 1:
            return False
    return True
