"""Quasi-Poisson and Poisson modules over an NCPA, and the mutually
inverse passages between such modules and representations of the
quasi-Poisson enveloping algebra.

A module is given by three families of exact matrices indexed by the
algebra basis: left action, right action, and Lie-type action.  The
passage to an enveloping-algebra action sends the monomial (i, j, word)
to left(i) . lie(word) . right(j); the reverse passage reads the three
families off the degree <= 1 monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .linalg import (
    Matrix,
    SparseVector,
    Subspace,
    ZERO,
    mat_add,
    mat_identity,
    mat_is_zero,
    mat_lincomb,
    mat_mul,
    mat_shape,
    mat_sub,
    solve_nullspace,
)
from .ncpa import NCPA, is_standard, poisson_ideal_closure
from .smash import QElement, QMonomial, q_mono_mult
from .truncation import ideal_j_gens
from .pbw import u_monomials


class ModuleShapeError(Exception):
    """Matrices of a module have inconsistent shapes."""


class ActionError(Exception):
    """An enveloping-algebra action failed its multiplicativity check."""


@dataclass(eq=False)
class QuasiPoissonModule:
    algebra: NCPA
    dim: int
    left: tuple  # Matrix per basis index, action of v_i . m
    right: tuple  # Matrix per basis index, action of m . v_i
    lie: tuple  # Matrix per basis index, action of {v_i, m}*

    def __post_init__(self):
        n = self.algebra.n
        if not (len(self.left) == len(self.right) == len(self.lie) == n):
            raise ModuleShapeError("need one matrix per basis element")
        for fam in (self.left, self.right, self.lie):
            for m in fam:
                if mat_shape(m) != (self.dim, self.dim):
                    raise ModuleShapeError(
                        f"matrix shape {mat_shape(m)} != {(self.dim, self.dim)}"
                    )

    def left_of(self, x: SparseVector) -> Matrix:
        return mat_lincomb(
            ((c, self.left[i]) for i, c in x.data.items()), self.dim
        )

    def right_of(self, x: SparseVector) -> Matrix:
        return mat_lincomb(
            ((c, self.right[i]) for i, c in x.data.items()), self.dim
        )

    def lie_of(self, x: SparseVector) -> Matrix:
        return mat_lincomb(
            ((c, self.lie[i]) for i, c in x.data.items()), self.dim
        )

    def equal_actions(self, other: "QuasiPoissonModule") -> bool:
        return (
            self.dim == other.dim
            and self.left == other.left
            and self.right == other.right
            and self.lie == other.lie
        )


# -- constructions -------------------------------------------------------------

def regular_module(A: NCPA, lie_table: Mapping | None = None) -> QuasiPoissonModule:
    """The algebra acting on itself; optionally with a replacement table
    for the Lie-type action (used by twisted regular structures)."""
    n = A.n
    left = tuple(A.left_mult_matrix(i) for i in range(n))
    right = tuple(A.right_mult_matrix(i) for i in range(n))
    if lie_table is None:
        lie = tuple(A.ad_matrix(i) for i in range(n))
    else:
        lie = []
        for i in range(n):
            cols = [
                lie_table.get((i, j), SparseVector(n)) for j in range(n)
            ]
            lie.append(tuple(tuple(col.get(r) for col in cols) for r in range(n)))
        lie = tuple(lie)
    return QuasiPoissonModule(A, n, left, right, lie)


def tensor_square_module(A: NCPA) -> QuasiPoissonModule:
    """A (x) A with a . (b (x) c) = ab (x) c, (b (x) c) . a = b (x) ca and
    the Lie action acting as a derivation on the two legs."""
    n = A.n
    dim = n * n

    def at(b, c):
        return b * n + c

    left = []
    right = []
    lie = []
    for i in range(n):
        lmat = [[ZERO] * dim for _ in range(dim)]
        rmat = [[ZERO] * dim for _ in range(dim)]
        zmat = [[ZERO] * dim for _ in range(dim)]
        for b in range(n):
            for c in range(n):
                src = at(b, c)
                for k, v in A.mul_basis(i, b).data.items():
                    lmat[at(k, c)][src] += v
                for k, v in A.mul_basis(c, i).data.items():
                    rmat[at(b, k)][src] += v
                for k, v in A.bracket_basis(i, b).data.items():
                    zmat[at(k, c)][src] += v
                for k, v in A.bracket_basis(i, c).data.items():
                    zmat[at(b, k)][src] += v
        left.append(tuple(tuple(row) for row in lmat))
        right.append(tuple(tuple(row) for row in rmat))
        lie.append(tuple(tuple(row) for row in zmat))
    return QuasiPoissonModule(A, dim, tuple(left), tuple(right), tuple(lie))


def standard_bimodule_to_poisson(
    A: NCPA, left: Sequence, right: Sequence
) -> QuasiPoissonModule:
    """For a standard NCPA (commutator bracket), any bimodule becomes a
    Poisson module with Lie action left - right."""
    if not is_standard(A):
        raise ValueError("bracket is not the commutator of the product")
    dim = mat_shape(left[0])[0]
    lie = tuple(mat_sub(l, r) for l, r in zip(left, right))
    return QuasiPoissonModule(A, dim, tuple(left), tuple(right), lie)


def quotient_module(A: NCPA, ideal: Subspace) -> QuasiPoissonModule:
    """Regular actions induced on A / ideal, for a two-sided Poisson ideal.

    Representatives are the non-pivot coordinates of the ideal's echelon
    basis; images are reduced modulo the ideal."""
    n = A.n
    for op_name, op in (
        ("left", A.mul),
        ("right", lambda x, y: A.mul(y, x)),
        ("bracket", A.bracket),
    ):
        for row in ideal.rows:
            for i in range(n):
                if not ideal.contains(op(A.basis(i), row)):
                    raise ValueError(f"seed subspace not closed under {op_name}")
    reps = [c for c in range(n) if c not in set(ideal.pivots)]
    dim = len(reps)
    pos = {c: t for t, c in enumerate(reps)}

    def project(v: SparseVector) -> dict:
        red = ideal.reduce(v)
        return {pos[c]: val for c, val in red.data.items()}

    left, right, lie = [], [], []
    for i in range(n):
        lmat = [[ZERO] * dim for _ in range(dim)]
        rmat = [[ZERO] * dim for _ in range(dim)]
        zmat = [[ZERO] * dim for _ in range(dim)]
        for t, c in enumerate(reps):
            for r, val in project(A.mul_basis(i, c)).items():
                lmat[r][t] = val
            for r, val in project(A.mul_basis(c, i)).items():
                rmat[r][t] = val
            for r, val in project(A.bracket_basis(i, c)).items():
                zmat[r][t] = val
        left.append(tuple(tuple(row) for row in lmat))
        right.append(tuple(tuple(row) for row in rmat))
        lie.append(tuple(tuple(row) for row in zmat))
    return QuasiPoissonModule(A, dim, tuple(left), tuple(right), tuple(lie))


# -- validation ------------------------------------------------------------------

def quasi_violations(M: QuasiPoissonModule) -> list[dict]:
    """Bimodule axioms plus the three quasi-Poisson compatibilities,
    checked on basis pairs."""
    A = M.algebra
    n = A.n
    out: list[dict] = []
    ident = mat_identity(M.dim)

    if M.left_of(A.unit) != ident:
        out.append({"axiom": "unit-left", "indices": ()})
    if M.right_of(A.unit) != ident:
        out.append({"axiom": "unit-right", "indices": ()})

    for i in range(n):
        for j in range(n):
            prod = A.mul_basis(i, j)
            if mat_mul(M.left[i], M.left[j]) != M.left_of(prod):
                out.append({"axiom": "left-action", "indices": (i, j)})
            if mat_mul(M.right[j], M.right[i]) != M.right_of(prod):
                out.append({"axiom": "right-action", "indices": (i, j)})
            if mat_mul(M.left[i], M.right[j]) != mat_mul(M.right[j], M.left[i]):
                out.append({"axiom": "bimodule-commute", "indices": (i, j)})
            bra = A.bracket_basis(i, j)
            # {a, b.m}* = {a,b}.m + b.{a,m}*
            lhs = mat_mul(M.lie[i], M.left[j])
            rhs = mat_add(M.left_of(bra), mat_mul(M.left[j], M.lie[i]))
            if lhs != rhs:
                out.append({"axiom": "lie-left", "indices": (i, j)})
            # {a, m.b}* = m.{a,b} + {a,m}*.b
            lhs = mat_mul(M.lie[i], M.right[j])
            rhs = mat_add(M.right_of(bra), mat_mul(M.right[j], M.lie[i]))
            if lhs != rhs:
                out.append({"axiom": "lie-right", "indices": (i, j)})
            # {{a,b}, m}* = {a,{b,m}*}* - {b,{a,m}*}*
            lhs = M.lie_of(bra)
            rhs = mat_sub(
                mat_mul(M.lie[i], M.lie[j]), mat_mul(M.lie[j], M.lie[i])
            )
            if lhs != rhs:
                out.append({"axiom": "lie-module", "indices": (i, j)})
    return out


def poisson_violations(M: QuasiPoissonModule) -> list[dict]:
    """Quasi-Poisson axioms plus {ab, m}* = a.{b,m}* + {a,m}*.b."""
    out = quasi_violations(M)
    A = M.algebra
    for i in range(A.n):
        for j in range(A.n):
            lhs = M.lie_of(A.mul_basis(i, j))
            rhs = mat_add(
                mat_mul(M.left[i], M.lie[j]), mat_mul(M.right[j], M.lie[i])
            )
            if lhs != rhs:
                out.append({"axiom": "product-compat", "indices": (i, j)})
    return out


def validate_quasi_poisson(M: QuasiPoissonModule) -> QuasiPoissonModule:
    bad = quasi_violations(M)
    if bad:
        raise ActionError(f"quasi-Poisson axioms violated: {bad[:3]}")
    return M


# -- enveloping-algebra actions ---------------------------------------------------

class EnvAction:
    """A representation of the quasi-Poisson enveloping algebra, given by
    a matrix for each monomial (computed lazily and cached)."""

    def __init__(self, algebra: NCPA, dim: int, matrix_fn: Callable[[QMonomial], Matrix]):
        self.algebra = algebra
        self.dim = dim
        self._fn = matrix_fn
        self._cache: dict[QMonomial, Matrix] = {}

    def matrix(self, mono: QMonomial) -> Matrix:
        hit = self._cache.get(mono)
        if hit is None:
            hit = self._fn(mono)
            if mat_shape(hit) != (self.dim, self.dim):
                raise ModuleShapeError("action matrix has wrong shape")
            self._cache[mono] = hit
        return hit

    def of_element(self, x: QElement) -> Matrix:
        return mat_lincomb(
            ((c, self.matrix(m)) for m, c in x.items()), self.dim
        )

    def multiplicativity_failures(self, degree_bound: int) -> list[tuple]:
        """Monomial pairs (total degree <= bound) where composing matrices
        differs from acting by the product."""
        A = self.algebra
        out = []
        monos = []
        for word in u_monomials(A.n, degree_bound):
            for i in range(A.n):
                for j in range(A.n):
                    monos.append((i, j, word))
        for m1 in monos:
            for m2 in monos:
                if len(m1[2]) + len(m2[2]) > degree_bound:
                    continue
                composed = mat_mul(self.matrix(m1), self.matrix(m2))
                direct = self.of_element(q_mono_mult(A, m1, m2))
                if composed != direct:
                    out.append((m1, m2))
        return out


def module_to_action(M: QuasiPoissonModule) -> EnvAction:
    """Monomial (i, j, word) acts by left(i) . lie(word) . right(j); the
    module must satisfy the quasi-Poisson axioms."""
    validate_quasi_poisson(M)

    def fn(mono: QMonomial) -> Matrix:
        # apply the Lie word first (innermost letter last), then the
        # commuting left/right multiplications
        i, j, word = mono
        acc = mat_mul(M.left[i], M.right[j])
        for letter in word:
            acc = mat_mul(acc, M.lie[letter])
        return acc

    return EnvAction(M.algebra, M.dim, fn)


def action_to_module(action: EnvAction, check_degree: int = 2) -> QuasiPoissonModule:
    """Read the three action families off the degree <= 1 monomials.  The
    action must respect monomial products up to the given degree (the
    degree-2 products encode the generating relations)."""
    bad = action.multiplicativity_failures(check_degree)
    if bad:
        raise ActionError(f"action not multiplicative at {bad[:3]}")
    A = action.algebra
    unit = A.unit
    left, right, lie = [], [], []
    for p in range(A.n):
        left.append(
            mat_lincomb(
                ((uq, action.matrix((p, q, ()))) for q, uq in unit.data.items()),
                action.dim,
            )
        )
        right.append(
            mat_lincomb(
                ((up, action.matrix((q2, p, ()))) for q2, up in unit.data.items()),
                action.dim,
            )
        )
        terms = []
        for q1, u1 in unit.data.items():
            for q2, u2 in unit.data.items():
                terms.append((u1 * u2, action.matrix((q1, q2, (p,)))))
        lie.append(mat_lincomb(terms, action.dim))
    M = QuasiPoissonModule(
        A, action.dim, tuple(left), tuple(right), tuple(lie)
    )
    return validate_quasi_poisson(M)


def roundtrip_report(
    A: NCPA, M: QuasiPoissonModule, degree_bound: int = 2
) -> dict:
    """Check both passages are mutually inverse on M, and that the induced
    action is associative on monomial pairs up to the bound."""
    action = module_to_action(M)
    back = action_to_module(action)
    gf_equal = M.equal_actions(back)

    action2 = module_to_action(back)
    monos = [
        (i, j, word)
        for word in u_monomials(A.n, degree_bound)
        for i in range(A.n)
        for j in range(A.n)
    ]
    fgf_mismatches = [
        m for m in monos if action.matrix(m) != action2.matrix(m)
    ]
    assoc_failures = action.multiplicativity_failures(degree_bound)
    return {
        "module_roundtrip_equal": gf_equal,
        "monomials_checked": len(monos),
        "action_roundtrip_mismatches": fgf_mismatches,
        "associativity_failures": assoc_failures,
        "ok": gf_equal and not fgf_mismatches and not assoc_failures,
    }


def action_annihilates(action: EnvAction, gens) -> bool:
    return all(mat_is_zero(action.of_element(g)) for g in gens.gens)


def j_annihilation_check(A: NCPA, M: QuasiPoissonModule) -> bool:
    """True iff every generator of the product-compatibility ideal acts as
    zero; agrees with the Poisson verdict of poisson_violations."""
    return action_annihilates(module_to_action(M), ideal_j_gens(A))


def annihilator(A: NCPA, M: QuasiPoissonModule) -> Subspace:
    """Elements acting as zero on both sides; always a two-sided Poisson
    ideal, which is re-checked here."""
    n = A.n
    rows = []
    for r in range(M.dim):
        for c in range(M.dim):
            for fam in (M.left, M.right):
                data = {}
                for i in range(n):
                    v = fam[i][r][c]
                    if v:
                        data[i] = v
                if data:
                    vec = SparseVector(n)
                    vec.data = data
                    rows.append(vec)
    ann = solve_nullspace(rows, n)
    closed = poisson_ideal_closure(A, ann.rows, "two_sided")
    if closed != ann:
        raise RuntimeError("annihilator failed its Poisson-ideal closure check")
    return ann
