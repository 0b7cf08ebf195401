"""Exact rational sparse vectors, echelon subspaces, and dense matrices.

Everything is over Q via fractions.Fraction; no floating point anywhere.
All values are treated as immutable after construction, so they can be
shared freely between workers.  Subspaces are kept in reduced row echelon
form, which makes subspace equality plain basis-list equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Coerce ints / strings like "3/4" to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


class SparseVector:
    """Length-n vector storing only nonzero rational entries."""

    __slots__ = ("n", "data")

    def __init__(self, n: int, data: Mapping[int, Fraction] | None = None):
        if n < 0:
            raise ValueError("negative length")
        clean: dict[int, Fraction] = {}
        if data:
            for i, v in data.items():
                v = rat(v)
                if v:
                    if not 0 <= i < n:
                        raise ValueError(f"index {i} out of range for length {n}")
                    clean[i] = v
        self.n = n
        self.data = clean

    @classmethod
    def zero(cls, n: int) -> "SparseVector":
        return cls(n)

    @classmethod
    def unit(cls, n: int, i: int) -> "SparseVector":
        return cls(n, {i: ONE})

    @classmethod
    def from_dense(cls, values: Sequence) -> "SparseVector":
        return cls(len(values), {i: rat(v) for i, v in enumerate(values) if rat(v)})

    def get(self, i: int) -> Fraction:
        return self.data.get(i, ZERO)

    def items(self):
        return self.data.items()

    def is_zero(self) -> bool:
        return not self.data

    def support(self) -> list[int]:
        return sorted(self.data)

    def leading(self) -> tuple[int, Fraction]:
        """Smallest-index nonzero entry; raises on the zero vector."""
        i = min(self.data)
        return i, self.data[i]

    def to_dense(self) -> list[Fraction]:
        return [self.data.get(i, ZERO) for i in range(self.n)]

    def scale(self, c) -> "SparseVector":
        c = rat(c)
        if not c:
            return SparseVector(self.n)
        return SparseVector(self.n, {i: c * v for i, v in self.data.items()})

    def dot(self, other: "SparseVector") -> Fraction:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        a, b = self.data, other.data
        if len(b) < len(a):
            a, b = b, a
        return sum((v * b[i] for i, v in a.items() if i in b), ZERO)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        data = dict(self.data)
        for i, v in other.data.items():
            s = data.get(i, ZERO) + v
            if s:
                data[i] = s
            else:
                data.pop(i, None)
        out = SparseVector(self.n)
        out.data = data
        return out

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __neg__(self) -> "SparseVector":
        return SparseVector(self.n, {i: -v for i, v in self.data.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseVector)
            and self.n == other.n
            and self.data == other.data
        )

    def __repr__(self) -> str:
        entries = ", ".join(f"{i}: {v}" for i, v in sorted(self.data.items()))
        return f"SparseVector({self.n}, {{{entries}}})"


# -- generic coefficient-dict helpers (terms: hashable key -> Fraction) -----

def add_terms(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sub_terms(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale_terms(a: dict, c) -> dict:
    c = rat(c)
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def accumulate(out: dict, key, coeff: Fraction) -> None:
    """In-place coefficient accumulation used by hot loops only."""
    s = out.get(key, ZERO) + coeff
    if s:
        out[key] = s
    else:
        out.pop(key, None)


# -- echelon machinery -------------------------------------------------------

class Echelon:
    """Mutable reduced-row-echelon accumulator over raw index->Fraction dicts.

    Pivot entries are 1 and are the sole nonzero entries in their columns,
    so subspace equality is row-list equality once frozen into a Subspace.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[dict[int, Fraction]] = []
        self.pivot_row: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce_data(self, data: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out = dict(data)
        # Eliminating one pivot never introduces entries at other pivot
        # columns (RREF), so a single pass over the initial support works.
        for p in [c for c in out if c in self.pivot_row]:
            lam = out.get(p)
            if not lam:
                continue
            row = self.rows[self.pivot_row[p]]
            for c, v in row.items():
                s = out.get(c, ZERO) - lam * v
                if s:
                    out[c] = s
                else:
                    out.pop(c, None)
        return out

    def add_data(self, data: Mapping[int, Fraction]) -> dict[int, Fraction] | None:
        """Insert a vector; returns the new normalized row, or None if in span."""
        red = self.reduce_data(data)
        if not red:
            return None
        p = min(red)
        inv = ONE / red[p]
        row = {c: inv * v for c, v in red.items()}
        # clear the new pivot column from existing rows
        for other in self.rows:
            lam = other.get(p)
            if lam:
                for c, v in row.items():
                    s = other.get(c, ZERO) - lam * v
                    if s:
                        other[c] = s
                    else:
                        other.pop(c, None)
        self.rows.append(row)
        self.pivot_row[p] = len(self.rows) - 1
        return row

    def contains_data(self, data: Mapping[int, Fraction]) -> bool:
        return not self.reduce_data(data)

    def add(self, v: SparseVector) -> SparseVector | None:
        if v.n != self.n:
            raise ValueError("dimension mismatch")
        row = self.add_data(v.data)
        if row is None:
            return None
        out = SparseVector(self.n)
        out.data = dict(row)
        return out

    def to_subspace(self) -> "Subspace":
        ordered = sorted(self.pivot_row.items())
        rows = []
        for p, idx in ordered:
            vec = SparseVector(self.n)
            vec.data = dict(self.rows[idx])
            rows.append(vec)
        return Subspace(self.n, tuple(rows), tuple(p for p, _ in ordered))


class Subspace:
    """Immutable subspace of Q^n in reduced row echelon form."""

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rows: tuple = (), pivots: tuple = ()):
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def reduce(self, v: SparseVector) -> SparseVector:
        """Remainder of v after eliminating all pivot coordinates."""
        if v.n != self.ambient_dim:
            raise ValueError("dimension mismatch")
        data = dict(v.data)
        pivot_index = {p: k for k, p in enumerate(self.pivots)}
        for p in [c for c in data if c in pivot_index]:
            lam = data.get(p)
            if not lam:
                continue
            for c, val in self.rows[pivot_index[p]].data.items():
                s = data.get(c, ZERO) - lam * val
                if s:
                    data[c] = s
                else:
                    data.pop(c, None)
        out = SparseVector(self.ambient_dim)
        out.data = data
        return out

    def contains(self, v: SparseVector) -> bool:
        return self.reduce(v).is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and list(self.rows) == list(other.rows)
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.ambient_dim}, rank={self.rank})"


def join_and_reduce(vectors: Iterable[SparseVector], ambient_dim: int) -> Subspace:
    """Echelonized span of the given vectors."""
    ech = Echelon(ambient_dim)
    for v in vectors:
        if v.n != ambient_dim:
            raise ValueError("dimension mismatch")
        ech.add(v)
    return ech.to_subspace()


def in_span(s: Subspace, v: SparseVector) -> bool:
    if v.n != s.ambient_dim:
        raise ValueError("dimension mismatch")
    return s.contains(v)


def saturate_closure(
    seed: Iterable[SparseVector],
    operators: Sequence[Callable[[SparseVector], SparseVector]],
    ambient_dim: int,
) -> Subspace:
    """Smallest subspace containing seed and invariant under the operators.

    Terminates because the rank is bounded by the ambient dimension.  Each
    vector ever added to the span gets all its operator images fed back in;
    linearity makes that sufficient for invariance of the final span.
    """
    ech = Echelon(ambient_dim)
    queue: list[SparseVector] = []
    for v in seed:
        if v.n != ambient_dim:
            raise ValueError("dimension mismatch")
        added = ech.add(v)
        if added is not None:
            queue.append(added)
    while queue:
        v = queue.pop()
        for op in operators:
            w = op(v)
            if w.n != ambient_dim:
                raise ValueError("operator changed dimension")
            added = ech.add(w)
            if added is not None:
                queue.append(added)
    return ech.to_subspace()


class TrackedEchelon:
    """Echelon that remembers how each row combines the inserted vectors."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[dict, dict]] = []  # (row data, tag data)
        self.pivot_row: dict[int, int] = {}
        self.count = 0  # tags are coordinates in the insertion index space

    def insert(self, data: Mapping[int, Fraction]) -> None:
        tag = {self.count: ONE}
        self.count += 1
        red, redtag = self._reduce(data, tag)
        if not red:
            return
        p = min(red)
        inv = ONE / red[p]
        row = {c: inv * v for c, v in red.items()}
        rowtag = {c: inv * v for c, v in redtag.items()}
        for other, othertag in self.rows:
            lam = other.get(p)
            if lam:
                for c, v in row.items():
                    s = other.get(c, ZERO) - lam * v
                    if s:
                        other[c] = s
                    else:
                        other.pop(c, None)
                for c, v in rowtag.items():
                    s = othertag.get(c, ZERO) - lam * v
                    if s:
                        othertag[c] = s
                    else:
                        othertag.pop(c, None)
        self.rows.append((row, rowtag))
        self.pivot_row[p] = len(self.rows) - 1

    def _reduce(self, data, tag):
        out = dict(data)
        outtag = dict(tag)
        for p in [c for c in out if c in self.pivot_row]:
            lam = out.get(p)
            if not lam:
                continue
            row, rowtag = self.rows[self.pivot_row[p]]
            for c, v in row.items():
                s = out.get(c, ZERO) - lam * v
                if s:
                    out[c] = s
                else:
                    out.pop(c, None)
            for c, v in rowtag.items():
                s = outtag.get(c, ZERO) - lam * v
                if s:
                    outtag[c] = s
                else:
                    outtag.pop(c, None)
        return out, outtag

    def express(self, v: SparseVector) -> dict[int, Fraction] | None:
        """Coefficients over the inserted vectors, or None if not in span."""
        out = dict(v.data)
        acc: dict[int, Fraction] = {}
        for p in [c for c in out if c in self.pivot_row]:
            lam = out.get(p)
            if not lam:
                continue
            row, rowtag = self.rows[self.pivot_row[p]]
            for c, val in row.items():
                s = out.get(c, ZERO) - lam * val
                if s:
                    out[c] = s
                else:
                    out.pop(c, None)
            for c, val in rowtag.items():
                s = acc.get(c, ZERO) + lam * val
                if s:
                    acc[c] = s
                else:
                    acc.pop(c, None)
        if out:
            return None
        return acc


def express_in_span(
    vectors: Sequence[SparseVector], target: SparseVector
) -> list[Fraction] | None:
    """Coefficients c with target = sum c_t * vectors[t], or None."""
    if not vectors:
        return [] if target.is_zero() else None
    n = vectors[0].n
    tracked = TrackedEchelon(n)
    for v in vectors:
        if v.n != n:
            raise ValueError("dimension mismatch")
        tracked.insert(v.data)
    combo = tracked.express(target)
    if combo is None:
        return None
    return [combo.get(t, ZERO) for t in range(len(vectors))]


def solve_nullspace(rows: Iterable[SparseVector], dim: int) -> Subspace:
    """Solution space of the homogeneous system given by the rows."""
    ech = Echelon(dim)
    for r in rows:
        if r.n != dim:
            raise ValueError("dimension mismatch")
        ech.add(r)
    pivots = sorted(ech.pivot_row)
    pivot_set = set(pivots)
    basis = []
    for free in range(dim):
        if free in pivot_set:
            continue
        data = {free: ONE}
        for p in pivots:
            c = ech.rows[ech.pivot_row[p]].get(free)
            if c:
                data[p] = -c
        v = SparseVector(dim)
        v.data = data
        basis.append(v)
    return join_and_reduce(basis, dim)


def complement_conditions(s: Subspace) -> list[SparseVector]:
    """Basis of {w : w . b = 0 for all b in s}; v in s iff all w . v = 0."""
    return list(solve_nullspace(s.rows, s.ambient_dim).rows)


# -- dense exact matrices (tuples of tuples of Fraction) ---------------------

Matrix = tuple

def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(rat(x) for x in row) for row in rows)


def mat_identity(m: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m))


def mat_zero(r: int, c: int | None = None) -> Matrix:
    c = r if c is None else c
    return tuple((ZERO,) * c for _ in range(r))


def mat_shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise ValueError("matrix shape mismatch")
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt)
        for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    c = rat(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_lincomb(pairs: Iterable[tuple[Fraction, Matrix]], r: int, c: int | None = None) -> Matrix:
    acc = None
    for coeff, m in pairs:
        term = mat_scale(m, coeff)
        acc = term if acc is None else mat_add(acc, term)
    return acc if acc is not None else mat_zero(r, c)


def mat_apply(a: Matrix, v: SparseVector) -> SparseVector:
    r, c = mat_shape(a)
    if v.n != c:
        raise ValueError("dimension mismatch")
    data: dict[int, Fraction] = {}
    for j, coeff in v.data.items():
        for i in range(r):
            x = a[i][j]
            if x:
                s = data.get(i, ZERO) + coeff * x
                if s:
                    data[i] = s
                else:
                    data.pop(i, None)
    out = SparseVector(r)
    out.data = data
    return out


def mat_flatten(a: Matrix) -> SparseVector:
    """Row-major flattening: entry (r, c) goes to coordinate r*cols + c."""
    rows, cols = mat_shape(a)
    data = {}
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                data[i * cols + j] = x
    out = SparseVector(rows * cols)
    out.data = data
    return out


def mat_unflatten(v: SparseVector, rows: int, cols: int) -> Matrix:
    if v.n != rows * cols:
        raise ValueError("dimension mismatch")
    grid = [[ZERO] * cols for _ in range(rows)]
    for idx, x in v.data.items():
        grid[idx // cols][idx % cols] = x
    return tuple(tuple(row) for row in grid)


def minimal_polynomial(a: Matrix) -> list[Fraction]:
    """Monic minimal polynomial of a square matrix, coefficients low to high."""
    m, mc = mat_shape(a)
    if m != mc:
        raise ValueError("square matrix required")
    tracked = TrackedEchelon(m * m)
    power = mat_identity(m)
    powers = [power]
    k = 0
    while True:
        flat = mat_flatten(power)
        combo = tracked.express(flat)
        if combo is not None:
            # a^k = sum combo[t] a^t, so minpoly = x^k - sum combo[t] x^t
            coeffs = [-combo.get(t, ZERO) for t in range(k)]
            coeffs.append(ONE)
            return coeffs
        tracked.insert(flat.data)
        power = mat_mul(power, a)
        powers.append(power)
        k += 1
        if k > m * m + 1:  # cannot happen; minpoly degree <= m
            raise RuntimeError("minimal polynomial search failed to terminate")
