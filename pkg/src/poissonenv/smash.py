"""The quasi-Poisson enveloping algebra: the smash product of the
bimodule-enveloping algebra A (x) A^op with the universal enveloping
algebra of the Lie structure.

Monomials are triples (i, j, word): i indexes the left algebra factor,
j the opposite factor, and word is a PBW monomial.  Elements are dicts
from such triples to nonzero rational coefficients.  The product follows
the ordered-tripartition expansion: letters of the left factor's word
either bracket into the incoming left slot, bracket into the incoming
opposite slot, or pass through to the word slot.
"""

from __future__ import annotations

from .limits import DegreeCapExceeded, degree_cap
from .linalg import SparseVector, accumulate, add_terms, scale_terms, sub_terms
from .ncpa import NCPA
from .pbw import lie_word_act, straighten
from .words import ordered_partitions, subword

QMonomial = tuple  # (i: int, j: int, word: Word)
QElement = dict  # dict[QMonomial, Fraction]


def q_term_key(m: QMonomial):
    """Fixed term order: (degree, word lex, left index, right index)."""
    i, j, word = m
    return (len(word), word, i, j)


def q_degree(x: QElement) -> int:
    return max((len(m[2]) for m in x), default=0)


def q_scale(x: QElement, c) -> QElement:
    return scale_terms(x, c)


def q_add(x: QElement, y: QElement) -> QElement:
    return add_terms(x, y)


def q_sub(x: QElement, y: QElement) -> QElement:
    return sub_terms(x, y)


def q_identity(A: NCPA) -> QElement:
    out: QElement = {}
    for p, up in A.unit.data.items():
        for q, uq in A.unit.data.items():
            out[(p, q, ())] = up * uq
    return out


def embed_left(A: NCPA, a: SparseVector) -> QElement:
    """a  |->  a (x) 1 # 1; an algebra map for the product."""
    if a.n != A.n:
        raise ValueError("element has wrong dimension for this algebra")
    out: QElement = {}
    for p, c in a.data.items():
        for q, uq in A.unit.data.items():
            accumulate(out, (p, q, ()), c * uq)
    return out


def embed_right(A: NCPA, a: SparseVector) -> QElement:
    """a  |->  1 (x) a # 1; an algebra map for the opposite product."""
    if a.n != A.n:
        raise ValueError("element has wrong dimension for this algebra")
    out: QElement = {}
    for q, c in a.data.items():
        for p, up in A.unit.data.items():
            accumulate(out, (p, q, ()), c * up)
    return out


def embed_lie(A: NCPA, a: SparseVector) -> QElement:
    """a  |->  1 (x) 1 # a; a Lie-algebra map."""
    if a.n != A.n:
        raise ValueError("element has wrong dimension for this algebra")
    out: QElement = {}
    for r, c in a.data.items():
        for p, up in A.unit.data.items():
            for q, uq in A.unit.data.items():
                accumulate(out, (p, q, (r,)), c * up * uq)
    return out


def embed(A: NCPA, kind: str, a: SparseVector) -> QElement:
    if kind == "i":
        return embed_left(A, a)
    if kind == "k":
        return embed_right(A, a)
    if kind == "j":
        return embed_lie(A, a)
    raise ValueError(f"unknown embedding kind {kind!r}")


def q_mono_mult(A: NCPA, m1: QMonomial, m2: QMonomial) -> QElement:
    """Product of two basis monomials, memoized per algebra."""
    cache = A.caches["q_mono"]
    hit = cache.get((m1, m2))
    if hit is not None:
        return hit
    i1, j1, alpha = m1
    i2, j2, beta = m2
    if len(alpha) + len(beta) > degree_cap():
        raise DegreeCapExceeded(
            f"product degree {len(alpha) + len(beta)} exceeds cap {degree_cap()}"
        )
    out: QElement = {}
    for part1, rest in ordered_partitions(len(alpha), 2):
        left = A.mul(A.basis(i1), lie_word_act(A, subword(alpha, part1), A.basis(i2)))
        if left.is_zero():
            continue
        remainder = subword(alpha, rest)
        for part2, part3 in ordered_partitions(len(remainder), 2):
            # opposite product: v_{j1} o w = w . v_{j1}
            right = A.mul(
                lie_word_act(A, subword(remainder, part2), A.basis(j2)), A.basis(j1)
            )
            if right.is_zero():
                continue
            tail = straighten(A, subword(remainder, part3) + beta)
            for p, cp in left.data.items():
                for q, dq in right.data.items():
                    c = cp * dq
                    for gamma, eg in tail.items():
                        accumulate(out, (p, q, gamma), c * eg)
    cache[(m1, m2)] = out
    return out


def q_mult(A: NCPA, x: QElement, y: QElement) -> QElement:
    out: QElement = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            c = c1 * c2
            for mono, d in q_mono_mult(A, m1, m2).items():
                accumulate(out, mono, c * d)
    return out


def augmentation(A: NCPA, x: QElement) -> SparseVector:
    """Collapse a (x) b # word to (counit of word) . a b in the algebra;
    a left inverse of both algebra embeddings."""
    out = A.zero()
    for (p, q, word), c in x.items():
        if word:
            continue
        out = out + A.mul_basis(p, q).scale(c)
    return out


def generator_relation_failures(A: NCPA) -> list[dict]:
    """Verify the defining relations among the three embeddings on all
    basis pairs: both algebra maps, their mutual commutation, the Lie
    bracket relation, the two cross relations, and unit compatibility."""
    failures: list[dict] = []
    n = A.n

    def check(tag: str, pair, lhs: QElement, rhs: QElement):
        if lhs != rhs:
            failures.append({"relation": tag, "pair": pair})

    one = q_identity(A)
    check("i-unit", None, embed_left(A, A.unit), one)
    check("k-unit", None, embed_right(A, A.unit), one)

    for a in range(n):
        va = A.basis(a)
        ia = embed_left(A, va)
        ka = embed_right(A, va)
        ja = embed_lie(A, va)
        for b in range(n):
            vb = A.basis(b)
            ib = embed_left(A, vb)
            kb = embed_right(A, vb)
            jb = embed_lie(A, vb)
            br = A.bracket_basis(a, b)
            check(
                "i(a)i(b)=i(ab)", (a, b),
                q_mult(A, ia, ib), embed_left(A, A.mul_basis(a, b)),
            )
            check(
                "k(a)k(b)=k(ba)", (a, b),
                q_mult(A, ka, kb), embed_right(A, A.mul_basis(b, a)),
            )
            check(
                "i(a)k(b)=k(b)i(a)", (a, b),
                q_mult(A, ia, kb), q_mult(A, kb, ia),
            )
            check(
                "j(a)j(b)-j(b)j(a)=j({a,b})", (a, b),
                q_sub(q_mult(A, ja, jb), q_mult(A, jb, ja)), embed_lie(A, br),
            )
            check(
                "j(a)i(b)=i(b)j(a)+i({a,b})", (a, b),
                q_mult(A, ja, ib),
                q_add(q_mult(A, ib, ja), embed_left(A, br)),
            )
            check(
                "j(a)k(b)=k(b)j(a)+k({a,b})", (a, b),
                q_mult(A, ja, kb),
                q_add(q_mult(A, kb, ja), embed_right(A, br)),
            )
    return failures


def format_q_element(A: NCPA, x: QElement) -> str:
    """Round-trippable text form: coeff*ilabel:jlabel:w1.w2 terms."""
    if not x:
        return "0"
    parts = []
    for m in sorted(x, key=q_term_key):
        i, j, word = m
        c = x[m]
        body = f"{A.labels[i]}:{A.labels[j]}:" + ".".join(A.labels[t] for t in word)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}*{body}")
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out
