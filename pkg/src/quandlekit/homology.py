"""(Co)homology of the tuple complexes over Z, Q, and Z/m, plus 2-cochain tools.

Everything is exact: integer Smith normal form underneath, with Z/m groups
computed from an integer presentation (kernel lattice modulo boundary
lattice) rather than by linear algebra over the modular ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .chains import FLAVORS, boundary_matrix, tuple_basis
from .quandles import QuandleTable


@dataclass(frozen=True)
class CoefficientGroup:
    kind: str  # "Z", "Q", or "Zm"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zm"):
            raise ValueError("unknown coefficient kind %r" % (self.kind,))
        if self.kind == "Zm":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError("modulus must be an integer >= 2")
        elif self.modulus is not None:
            raise ValueError("modulus only makes sense for Zm")

    @classmethod
    def parse(cls, text):
        t = str(text).strip()
        if t == "Z":
            return cls("Z")
        if t == "Q":
            return cls("Q")
        if t.startswith("Z/"):
            t = "Z" + t[2:]
        if t.startswith("Z") and t[1:].isdigit():
            return cls("Zm", int(t[1:]))
        raise ValueError("cannot parse coefficient group %r" % (text,))

    def __str__(self):
        return "Z%d" % self.modulus if self.kind == "Zm" else self.kind

    def reduce(self, v):
        return v % self.modulus if self.kind == "Zm" else int(v)


ZZ = CoefficientGroup("Z")
QQ = CoefficientGroup("Q")


def Zm(m):
    return CoefficientGroup("Zm", m)


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple  # invariant factors > 1, each dividing the next

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError("torsion coefficients must exceed 1")
            if i and t % self.torsion[i - 1]:
                raise ValueError("torsion list is not a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def prime_powers(self):
        """Multiset of prime-power cyclic factors, canonical for comparisons."""
        parts = []
        for t in self.torsion:
            for p, e in _factor(t).items():
                parts.append(p ** e)
        return tuple(sorted(parts))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_doc(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


TRIVIAL_GROUP = AbelianGroupDescriptor(0, ())


def _presented_group(nrows, rel_cols):
    """Z^nrows modulo the lattice spanned by the given relation columns."""
    if nrows == 0:
        return TRIVIAL_GROUP
    if not rel_cols:
        return AbelianGroupDescriptor(nrows, ())
    rel = [[col[i] for col in rel_cols] for i in range(nrows)]
    res = linalg.smith_normal_form(rel, ncols=len(rel_cols))
    d = res.diagonal()
    torsion = tuple(x for x in d[: res.rank] if x > 1)
    return AbelianGroupDescriptor(nrows - res.rank, torsion)


def _columns(mat, ncols):
    m = len(mat)
    return [[mat[i][j] for i in range(m)] for j in range(ncols)]


def _subquotient(a, b, mid, coeff):
    """Homology at the middle of  . --b--> Z^mid --a--> .  over coeff.

    ``a`` is the map out of the middle term (any row count, mid columns) and
    ``b`` the map in (mid rows, any column count).
    """
    if mid == 0:
        return TRIVIAL_GROUP
    a = [list(r) for r in a]
    b = [list(r) for r in b]
    bcols = len(b[0]) if b else 0

    if coeff.kind == "Q":
        ra = linalg.rank(a, ncols=mid) if a else 0
        rb = linalg.rank(b, ncols=bcols) if bcols else 0
        return AbelianGroupDescriptor(mid - ra - rb, ())

    if coeff.kind == "Z":
        kernel = linalg.kernel_basis(a, ncols=mid) if a else _columns(linalg.identity(mid), mid)
        k = len(kernel)
        if k == 0:
            return TRIVIAL_GROUP
        if bcols == 0:
            return AbelianGroupDescriptor(k, ())
        kmat = [[kernel[j][i] for j in range(k)] for i in range(mid)]
        y = linalg.solve_matrix(kmat, b, ncols=k)
        if y is None:
            raise ArithmeticError("boundaries do not lie in the cycle lattice")
        return _presented_group(k, _columns(y, bcols))

    m = coeff.modulus
    if a:
        ext = [list(a[i]) + [m * (j == i) for j in range(len(a))] for i in range(len(a))]
        lifted = linalg.kernel_basis(ext, ncols=mid + len(a))
        kernel = [col[:mid] for col in lifted]
    else:
        kernel = _columns(linalg.identity(mid), mid)
    if len(kernel) != mid:
        raise ArithmeticError("mod-m cycle lattice has unexpected rank")
    kmat = [[kernel[j][i] for j in range(mid)] for i in range(mid)]
    rel = [list(b[i]) if bcols else [] for i in range(mid)]
    for i in range(mid):
        rel[i].extend(m * (j == i) for j in range(mid))
    y = linalg.solve_matrix(kmat, rel, ncols=mid)
    if y is None:
        raise ArithmeticError("boundaries do not lie in the mod-m cycle lattice")
    return _presented_group(mid, _columns(y, bcols + mid))


def _check_args(flavor, sign, n, coeff):
    if flavor not in FLAVORS:
        raise ValueError("unknown flavor %r" % (flavor,))
    if sign not in ("minus", "plus"):
        raise ValueError("sign must be 'minus' or 'plus'")
    if n > 3:
        raise ValueError("degree capped at 3")
    if not isinstance(coeff, CoefficientGroup):
        raise TypeError("coeff must be a CoefficientGroup")


def homology_group(X, flavor, sign, n, coeff):
    """H_n of the chosen complex with the chosen coefficients."""
    _check_args(flavor, sign, n, coeff)
    if n <= 0:
        return TRIVIAL_GROUP
    out = boundary_matrix(X, n, sign, flavor)
    into = boundary_matrix(X, n + 1, sign, flavor)
    return _subquotient(out.matrix, into.matrix, len(out.domain), coeff)


def cohomology_group(X, flavor, sign, n, coeff):
    """H^n, computed directly from transposed boundary matrices."""
    _check_args(flavor, sign, n, coeff)
    if n <= 0:
        return TRIVIAL_GROUP
    into = boundary_matrix(X, n, sign, flavor)  # its transpose maps into degree n
    out = boundary_matrix(X, n + 1, sign, flavor)  # its transpose maps out
    mid = len(out.codomain)
    a = linalg.transpose([list(r) for r in out.matrix], ncols=len(out.domain))
    b = linalg.transpose([list(r) for r in into.matrix], ncols=mid)
    return _subquotient(a, b, mid, coeff)


def pair_basis(n):
    """Off-diagonal pairs in lexicographic order: the degree-2 quandle basis."""
    return tuple_basis(n, 2, "quandle")


class Cochain2:
    """A 2-cochain on a quandle: square table of values with a zero diagonal."""

    __slots__ = ("coeff", "values")

    def __init__(self, coeff, values):
        values = tuple(tuple(coeff.reduce(v) for v in row) for row in values)
        n = len(values)
        if any(len(row) != n for row in values):
            raise ValueError("values must form a square table")
        if any(values[a][a] for a in range(n)):
            raise ValueError("diagonal must vanish")
        if coeff.kind == "Q":
            raise ValueError("cochains are kept over Z or Z/m")
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "values", values)

    def __setattr__(self, *_):
        raise AttributeError("Cochain2 is immutable")

    @property
    def n(self):
        return len(self.values)

    def __call__(self, a, b):
        return self.values[a][b]

    def __eq__(self, other):
        return (
            isinstance(other, Cochain2)
            and self.coeff == other.coeff
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.coeff, self.values))

    def __repr__(self):
        return "Cochain2(%s, %r)" % (self.coeff, [list(r) for r in self.values])

    @classmethod
    def zero(cls, n, coeff=ZZ):
        return cls(coeff, [[0] * n for _ in range(n)])

    @classmethod
    def indicator(cls, n, a, b, coeff=ZZ):
        if a == b:
            raise ValueError("indicator must sit off the diagonal")
        rows = [[0] * n for _ in range(n)]
        rows[a][b] = 1
        return cls(coeff, rows)

    @classmethod
    def from_vector(cls, n, vec, coeff=ZZ):
        rows = [[0] * n for _ in range(n)]
        for (a, b), v in zip(pair_basis(n), vec):
            rows[a][b] = v
        return cls(coeff, rows)

    def vector(self):
        return [self.values[a][b] for a, b in pair_basis(self.n)]

    def add(self, other):
        if self.coeff != other.coeff or self.n != other.n:
            raise ValueError("mismatched cochains")
        return Cochain2(
            self.coeff,
            [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.values, other.values)],
        )

    def scaled(self, k):
        return Cochain2(self.coeff, [[k * v for v in row] for row in self.values])

    def is_cocycle(self, X, sign):
        """Direct all-triples check of the degree-2 cocycle condition."""
        red = self.coeff.reduce
        op = X.op
        f = self.__call__
        for x in range(self.n):
            for y in range(self.n):
                for z in range(self.n):
                    if sign == "minus":
                        v = f(x, z) - f(op(x, y), z) - f(x, y) + f(op(x, z), op(y, z))
                    else:
                        v = (
                            -2 * f(y, z)
                            + f(x, z)
                            + f(op(x, y), z)
                            - f(x, y)
                            - f(op(x, z), op(y, z))
                        )
                    if red(v):
                        return False
        return True

    def to_doc(self):
        return {"coeff": str(self.coeff), "values": [list(r) for r in self.values]}

    @classmethod
    def from_doc(cls, doc):
        if not isinstance(doc, dict) or "values" not in doc:
            raise ValueError("cochain document needs a 'values' table")
        coeff = CoefficientGroup.parse(doc.get("coeff", "Z"))
        values = doc["values"]
        if not (
            isinstance(values, list)
            and all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in values)
        ):
            raise ValueError("cochain values must be integer rows")
        if any(values[a][a] if a < len(r) else True for a, r in enumerate(values)):
            raise ValueError("cochain diagonal must be zero")
        return cls(coeff, values)


def _delta2_matrix(X, sign):
    """Matrix of the coboundary C^2 -> C^3 on the off-diagonal pair basis."""
    bm = boundary_matrix(X, 3, sign, "quandle")
    return (
        linalg.transpose([list(r) for r in bm.matrix], ncols=len(bm.domain)),
        len(bm.codomain),
    )


def cocycle_basis(X, sign, coeff=ZZ):
    """Degree-2 cocycles, as Cochain2 values.

    Over Z this is a lattice basis of the kernel; over Z/m a spanning set,
    obtained from the integer SNF by keeping reduced kernel vectors and
    adding the m-torsion lifts of the nonzero elementary divisors.
    """
    if coeff.kind == "Q":
        raise ValueError("cocycle bases are computed over Z or Z/m")
    delta2, c2 = _delta2_matrix(X, sign)
    if coeff.kind == "Z":
        cols = linalg.kernel_basis(delta2, ncols=c2)
        return [Cochain2.from_vector(X.n, v, coeff) for v in cols]
    m = coeff.modulus
    res = linalg.smith_normal_form(delta2, ncols=c2)
    out = []
    for j in range(c2):
        if j < res.rank:
            g = math.gcd(res.S[j][j], m)
            if g == 1:
                continue
            mult = m // g
        else:
            mult = 1
        vec = [(mult * res.V[i][j]) % m for i in range(c2)]
        if any(vec):
            out.append(Cochain2.from_vector(X.n, vec, coeff))
    return out


def coboundary_of(X, psi, sign, coeff=ZZ):
    """Coboundary of a 1-cochain psi (a sequence over the quandle elements)."""
    n = X.n
    if len(psi) != n:
        raise ValueError("psi must assign a value to every element")
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            if sign == "minus":
                v = psi[x] - psi[X.op(x, y)]
            elif sign == "plus":
                v = psi[x] + psi[X.op(x, y)] - 2 * psi[y]
            else:
                raise ValueError("sign must be 'minus' or 'plus'")
            row.append(v)
        rows.append(row)
    return Cochain2(coeff, rows)


def _delta1_matrix(X, sign):
    """Coboundary C^1 -> C^2 as columns over the pair basis."""
    cols = []
    for a in range(X.n):
        psi = [0] * X.n
        psi[a] = 1
        cols.append(coboundary_of(X, psi, sign).vector())
    c2 = len(pair_basis(X.n))
    return [[col[i] for col in cols] for i in range(c2)], c2


def coboundary_basis(X, sign, coeff=ZZ):
    """Degree-2 coboundaries: lattice basis over Z, spanning set over Z/m."""
    if coeff.kind == "Q":
        raise ValueError("coboundary bases are computed over Z or Z/m")
    d, c2 = _delta1_matrix(X, sign)
    if coeff.kind == "Z":
        cols = linalg.column_lattice_basis(d, ncols=X.n)
        return [Cochain2.from_vector(X.n, v, coeff) for v in cols]
    m = coeff.modulus
    out = []
    seen = set()
    for a in range(X.n):
        psi = [0] * X.n
        psi[a] = 1
        phi = coboundary_of(X, psi, sign, coeff)
        if any(any(r) for r in phi.values) and phi.values not in seen:
            seen.add(phi.values)
            out.append(phi)
    return out


def cohomology_class_order(X, phi, sign):
    """Least k >= 1 with k*phi a coboundary, or math.inf."""
    if phi.coeff.kind != "Z":
        raise ValueError("class orders are computed over Z")
    d, c2 = _delta1_matrix(X, sign)
    res = linalg.smith_normal_form(d, ncols=X.n)
    c = linalg.mat_vec(res.U, phi.vector())
    order = 1
    for i in range(c2):
        if i < res.rank:
            s = res.S[i][i]
            order = math.lcm(order, s // math.gcd(s, c[i]))
        elif c[i]:
            return math.inf
    return order


def restrict_cocycle(X, phi, embedding):
    """Pull a cochain back to a subquandle given by an element embedding."""
    emb = list(embedding)
    if len(set(emb)) != len(emb) or any(not 0 <= e < X.n for e in emb):
        raise ValueError("embedding must be a list of distinct elements")
    rows = [[phi(a, b) for b in emb] for a in emb]
    return Cochain2(phi.coeff, rows)


def rank_split_check(X, n, sign):
    """Does H_n of the rack complex split as degenerate + quandle parts?

    Compares free ranks and the prime-power decompositions of the torsion,
    which is exactly isomorphism of the direct sum.
    """
    parts = {f: homology_group(X, f, sign, n, ZZ) for f in FLAVORS}
    rack, degen, quandle = parts["rack"], parts["degenerate"], parts["quandle"]
    if rack.free_rank != degen.free_rank + quandle.free_rank:
        return False
    return rack.prime_powers() == tuple(
        sorted(degen.prime_powers() + quandle.prime_powers())
    )
