"""Tuple bases and boundary maps for the rack, degenerate, and quandle complexes.

Degree-n chains are integer combinations of n-tuples over the quandle's
elements.  The degenerate tuples (some adjacent pair equal) span a
subcomplex; the quandle complex is the quotient, realized here on the
complementary basis of tuples with no adjacent repeat.  Degree 0 is the
zero group, so boundaries out of degree 1 vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .quandles import QuandleTable, _check_shape

FLAVORS = ("rack", "degenerate", "quandle")
SIGNS = ("d1", "d2", "minus", "plus")


def _has_adjacent_repeat(t):
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def tuple_basis(X, n, flavor="rack"):
    """Ordered (lexicographic) basis of C_n for the given flavor."""
    if flavor not in FLAVORS:
        raise ValueError("unknown flavor %r" % (flavor,))
    size = X.n if isinstance(X, QuandleTable) else int(X)
    if n <= 0:
        return []
    tuples = product(range(size), repeat=n)
    if flavor == "rack":
        return list(tuples)
    if flavor == "degenerate":
        return [t for t in tuples if _has_adjacent_repeat(t)]
    return [t for t in tuples if not _has_adjacent_repeat(t)]


@dataclass(frozen=True)
class IntChain:
    """Finite integer combination of same-length tuples."""

    degree: int
    coeffs: tuple  # sorted ((tuple, coefficient), ...) with no zeros

    @classmethod
    def from_dict(cls, degree, d):
        items = tuple(sorted((t, c) for t, c in d.items() if c))
        for t, _ in items:
            if len(t) != degree:
                raise ValueError("tuple %r does not have degree %d" % (t, degree))
        return cls(degree, items)

    @classmethod
    def generator(cls, t):
        return cls.from_dict(len(t), {tuple(t): 1})

    def as_dict(self):
        return dict(self.coeffs)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        d = self.as_dict()
        for t, c in other.coeffs:
            d[t] = d.get(t, 0) + c
        return IntChain.from_dict(self.degree, d)

    def scaled(self, k):
        return IntChain.from_dict(self.degree, {t: k * c for t, c in self.coeffs})

    def is_zero(self):
        return not self.coeffs


def _d1_terms(t):
    # i runs 1..n with sign (-1)^i
    for i in range(1, len(t) + 1):
        yield (-1) ** i, t[:i - 1] + t[i:]


def _d2_terms(op, t):
    for i in range(1, len(t) + 1):
        a = t[i - 1]
        yield (-1) ** i, tuple(op(x, a) for x in t[:i - 1]) + t[i:]


def _apply_terms(chain, term_fn):
    out = {}
    for t, c in chain.coeffs:
        for sgn, u in term_fn(t):
            out[u] = out.get(u, 0) + sgn * c
    return IntChain.from_dict(chain.degree - 1, out)


def d1_apply(chain):
    """First boundary piece: drop one entry with alternating sign."""
    if chain.degree <= 1:
        return IntChain.from_dict(max(chain.degree - 1, 0), {})
    return _apply_terms(chain, _d1_terms)


def d2_apply(X, chain):
    """Second boundary piece: act on the prefix by the dropped entry."""
    if chain.degree <= 1:
        return IntChain.from_dict(max(chain.degree - 1, 0), {})
    return _apply_terms(chain, lambda t: _d2_terms(X.op, t))


def boundary_apply(X, chain, sign):
    if sign == "d1":
        return d1_apply(chain)
    if sign == "d2":
        return d2_apply(X, chain)
    if sign == "minus":
        return d1_apply(chain) + d2_apply(X, chain).scaled(-1)
    if sign == "plus":
        return d1_apply(chain) + d2_apply(X, chain)
    raise ValueError("unknown sign %r" % (sign,))


@dataclass(frozen=True)
class BoundaryMatrix:
    """Matrix of a boundary map C_n -> C_{n-1} in fixed lexicographic bases."""

    n: int
    sign: str
    flavor: str
    matrix: tuple  # rows, len(domain) columns each
    domain: tuple  # degree-n basis tuples
    codomain: tuple  # degree-(n-1) basis tuples

    @property
    def shape(self):
        return len(self.codomain), len(self.domain)


def _term_fn(op, sign):
    if sign == "d1":
        return _d1_terms
    if sign == "d2":
        return lambda t: _d2_terms(op, t)
    if sign == "minus":
        def both(t):
            yield from _d1_terms(t)
            for s, u in _d2_terms(op, t):
                yield -s, u
        return both
    if sign == "plus":
        def both(t):
            yield from _d1_terms(t)
            yield from _d2_terms(op, t)
        return both
    raise ValueError("unknown sign %r" % (sign,))


def _column(op, t, sign, target_index, strict):
    """Accumulated boundary of one generator, expressed in the target basis.

    With ``strict`` the image must be supported on the target basis exactly
    (the degenerate subcomplex property); otherwise stray tuples are dropped
    (the quandle quotient).
    """
    acc = {}
    for sgn, u in _term_fn(op, sign)(t):
        acc[u] = acc.get(u, 0) + sgn
    col = [0] * len(target_index)
    for u, c in acc.items():
        if not c:
            continue
        if u in target_index:
            col[target_index[u]] = c
        elif strict:
            raise ArithmeticError(
                "boundary of %r leaves the degenerate span at %r" % (t, u)
            )
    return col


def boundary_matrix(X, n, sign, flavor="rack"):
    """Matrix of the degree-n boundary in the chosen flavor and sign."""
    if n < 1:
        raise ValueError("boundary needs degree >= 1")
    if sign not in SIGNS:
        raise ValueError("unknown sign %r" % (sign,))
    domain = tuple(tuple_basis(X, n, flavor))
    codomain = tuple(tuple_basis(X, n - 1, flavor))
    target_index = {t: i for i, t in enumerate(codomain)}
    rows = [[0] * len(domain) for _ in codomain]
    if n > 1:
        for j, t in enumerate(domain):
            col = _column(X.op, t, sign, target_index, strict=(flavor == "degenerate"))
            for i, c in enumerate(col):
                if c:
                    rows[i][j] = c
    return BoundaryMatrix(
        n=n,
        sign=sign,
        flavor=flavor,
        matrix=tuple(tuple(r) for r in rows),
        domain=domain,
        codomain=codomain,
    )


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    degree: int
    witness: tuple


@dataclass(frozen=True)
class ComplexReport:
    order: int
    max_degree: int
    checked: tuple
    failures: tuple

    @property
    def ok(self):
        return not self.failures

    def first_failure(self):
        return self.failures[0] if self.failures else None


def _raw_matrix(op, size, n, which):
    basis_from = [t for t in product(range(size), repeat=n)]
    basis_to = [t for t in product(range(size), repeat=n - 1)] if n > 1 else []
    index = {t: i for i, t in enumerate(basis_to)}
    m = np.zeros((len(basis_to), len(basis_from)), dtype=np.int64)
    fn = _d1_terms if which == "d1" else (lambda t: _d2_terms(op, t))
    if n > 1:
        for j, t in enumerate(basis_from):
            for sgn, u in fn(t):
                m[index[u], j] += sgn
    return m, basis_from


def verify_complex_identities(X, max_degree=4):
    """Check the defining identities d1d1 = d2d2 = d1d2 + d2d1 = 0 (hence
    also that both signed boundaries square to zero) and that d1, d2 carry
    degenerate tuples into the degenerate span.

    Accepts a QuandleTable or raw table rows; raw rows get only structural
    validation, so a non-quandle table can be fed in as a negative control
    and will show up as identity failures rather than an exception.
    """
    if max_degree > 4:
        raise ValueError("identity checks are sized for degrees <= 4")
    if isinstance(X, QuandleTable):
        table = X.table
    else:
        table = _check_shape(X)
    size = len(table)

    def op(a, b):
        return table[a][b]

    d1 = {}
    d2 = {}
    bases = {}
    for n in range(1, max_degree + 1):
        d1[n], bases[n] = _raw_matrix(op, size, n, "d1")
        d2[n], _ = _raw_matrix(op, size, n, "d2")

    checked = []
    failures = []

    def record(name, degree, prod, basis):
        checked.append((name, degree))
        if prod.size and prod.any():
            j = int(np.nonzero(prod.any(axis=0))[0][0])
            failures.append(IdentityFailure(name, degree, basis[j]))

    for n in range(2, max_degree + 1):
        basis = bases[n]
        a, b = d1[n - 1], d2[n - 1]
        record("d1.d1", n, a @ d1[n], basis)
        record("d2.d2", n, b @ d2[n], basis)
        record("d1.d2+d2.d1", n, a @ d2[n] + b @ d1[n], basis)
        record("minus.minus", n, (a - b) @ (d1[n] - d2[n]), basis)
        record("plus.plus", n, (a + b) @ (d1[n] + d2[n]), basis)

    for n in range(2, max_degree + 1):
        checked.append(("degenerate-closure", n))
        for t in tuple_basis(size, n, "degenerate"):
            for which, fn in (("d1", _d1_terms), ("d2", lambda u: _d2_terms(op, u))):
                acc = {}
                for sgn, u in fn(t):
                    acc[u] = acc.get(u, 0) + sgn
                stray = [u for u, c in acc.items() if c and not _has_adjacent_repeat(u)]
                if stray:
                    failures.append(
                        IdentityFailure("degenerate-closure-" + which, n, t)
                    )
                    break
            else:
                continue
            break

    return ComplexReport(
        order=size,
        max_degree=max_degree,
        checked=tuple(checked),
        failures=tuple(failures),
    )
