"""Finite quandles as explicit right-translation tables.

A table T encodes the binary operation a*b = T[a][b] on {0, ..., n-1}.
The axioms:

  (Q1) a*a == a for every a
  (Q2) for each b the right translation a -> a*b is a bijection
  (Q3) (a*b)*c == (a*c)*(b*c)

Dropping (Q1) gives a rack.  The dual operation is the inverse of each
right translation, so (a*b) dual b == a.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property


class MalformedTableError(ValueError):
    """Table is not a square integer array over 0..n-1 (structural defect)."""


def _check_shape(rows):
    if not isinstance(rows, (list, tuple)) or len(rows) == 0:
        raise MalformedTableError("table must be a non-empty square array")
    n = len(rows)
    out = []
    for r in rows:
        if not isinstance(r, (list, tuple)) or len(r) != n:
            raise MalformedTableError("every row must have length %d" % n)
        for v in r:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTableError("entries must be integers in 0..%d" % (n - 1))
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    n: int
    valid: bool
    violations: tuple[AxiomViolation, ...]

    def for_axiom(self, k: int) -> list[AxiomViolation]:
        return [v for v in self.violations if v.axiom == k]


def validate_quandle(rows) -> ValidationReport:
    """Check the three axioms, collecting every violation.

    Structural defects (non-square table, out-of-range entries) raise
    MalformedTableError instead, so corrupt input is distinguishable from a
    well-formed table that merely fails an axiom.
    """
    table = _check_shape(rows)
    n = len(table)
    bad = []
    for a in range(n):
        if table[a][a] != a:
            bad.append(AxiomViolation(1, (a,)))
    for b in range(n):
        seen = {}
        for a in range(n):
            c = table[a][b]
            if c in seen:
                bad.append(AxiomViolation(2, (seen[c], a, b)))
                break
            seen[c] = a
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[table[a][c]][table[b][c]]:
                    bad.append(AxiomViolation(3, (a, b, c)))
    return ValidationReport(n=n, valid=not bad, violations=tuple(bad))


@dataclass(frozen=True)
class QuandleTable:
    """Operation table wrapper.

    The plain constructor does not validate the axioms (deliberately: the
    chain machinery is also exercised on non-quandles as negative controls).
    Use from_rows for checked construction.
    """

    table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "QuandleTable":
        report = validate_quandle(rows)
        if not report.valid:
            v = report.violations[0]
            raise ValueError("not a quandle: axiom %d fails at %s" % (v.axiom, v.witness))
        return cls(_check_shape(rows))

    @property
    def n(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def dual_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        dual = [[0] * n for _ in range(n)]
        for b in range(n):
            for a in range(n):
                dual[self.table[a][b]][b] = a
        return tuple(tuple(r) for r in dual)

    def inv_op(self, c: int, b: int) -> int:
        """The unique a with a*b == c."""
        return self.dual_table[c][b]

    @cached_property
    def is_involutory(self) -> bool:
        return all(self.table[self.table[a][b]][b] == a
                   for a in range(self.n) for b in range(self.n))

    def relabeled(self, perm) -> "QuandleTable":
        """Transport the table along the bijection a -> perm[a]."""
        n = self.n
        inv = [0] * n
        for a, pa in enumerate(perm):
            inv[pa] = a
        rows = [[perm[self.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        return QuandleTable(tuple(tuple(r) for r in rows))


def dual(q: QuandleTable) -> QuandleTable:
    """The dual quandle: same set, operation a -> a dual b."""
    return QuandleTable(q.dual_table)


def trivial_quandle(n: int) -> QuandleTable:
    if n < 1:
        raise ValueError("order must be positive")
    return QuandleTable(tuple(tuple(a for _ in range(n)) for a in range(n)))


def dihedral_quandle(n: int) -> QuandleTable:
    """i*j = 2j - i mod n."""
    if n < 1:
        raise ValueError("order must be positive")
    return QuandleTable(tuple(tuple((2 * j - i) % n for j in range(n)) for i in range(n)))


def conjugation_quandle(group_rows, rep: int) -> tuple[QuandleTable, tuple[int, ...]]:
    """Conjugation quandle a*b = b^-1 a b on the conjugacy class of rep.

    group_rows is a full multiplication table; it is checked to be a group
    (associativity, identity, inverses).  Returns the quandle on the class,
    relabeled to 0..k-1 in increasing group-element order, together with the
    class itself as the embedding back into the group.
    """
    mul = _check_shape(group_rows)
    m = len(mul)
    e = None
    for g in range(m):
        if all(mul[g][h] == h and mul[h][g] == h for h in range(m)):
            e = g
            break
    if e is None:
        raise ValueError("no identity element: not a group table")
    inv = [None] * m
    for g in range(m):
        for h in range(m):
            if mul[g][h] == e and mul[h][g] == e:
                inv[g] = h
                break
        if inv[g] is None:
            raise ValueError("element %d has no inverse: not a group table" % g)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise ValueError("multiplication is not associative at (%d,%d,%d)" % (a, b, c))
    if not 0 <= rep < m:
        raise ValueError("class representative out of range")
    cls = sorted({mul[mul[inv[g]][rep]][g] for g in range(m)})
    index = {g: i for i, g in enumerate(cls)}
    rows = [[index[mul[mul[inv[b]][a]][b]] for b in cls] for a in cls]
    return QuandleTable.from_rows(rows), tuple(cls)


@dataclass(frozen=True)
class OrbitPartition:
    blocks: tuple[tuple[int, ...], ...]
    orbit_of: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def connected(self) -> bool:
        return len(self.blocks) == 1


def orbits(q: QuandleTable) -> OrbitPartition:
    """Partition into orbits of the group generated by all right translations.

    Closure under x -> x*y and x -> x dual y for every y; blocks are sorted
    by least element.
    """
    n = q.n
    orbit_of = [-1] * n
    blocks = []
    for start in range(n):
        if orbit_of[start] >= 0:
            continue
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in range(n):
                for z in (q.table[x][y], q.dual_table[x][y]):
                    if z not in seen:
                        seen.add(z)
                        frontier.append(z)
        block = tuple(sorted(seen))
        for x in block:
            orbit_of[x] = len(blocks)
        blocks.append(block)
    return OrbitPartition(blocks=tuple(blocks), orbit_of=tuple(orbit_of))


def subquandle_on_orbit(q: QuandleTable, a: int) -> tuple[QuandleTable, tuple[int, ...]]:
    """The induced quandle on the orbit of a, plus the embedding into q.

    Orbits are closed under the operation, so the restriction is a quandle.
    """
    part = orbits(q)
    block = part.blocks[part.orbit_of[a]]
    index = {x: i for i, x in enumerate(block)}
    rows = [[index[q.table[x][y]] for y in block] for x in block]
    return QuandleTable.from_rows(rows), block


def _canonical_form(table):
    n = len(table)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for a, pa in enumerate(perm):
            inv[pa] = a
        cand = tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or cand < best:
            best = cand
    return best


def are_isomorphic(q1: QuandleTable, q2: QuandleTable) -> bool:
    if q1.n != q2.n:
        return False
    return _canonical_form(q1.table) == _canonical_form(q2.table)


MAX_ENUMERATION_ORDER = 5


def enumerate_quandles(n: int, dedupe_iso: bool = False) -> list[QuandleTable]:
    """All quandle tables of order n <= 5, lexicographically sorted.

    Search runs over columns: the column for b must be a permutation fixing b
    (axioms 1 and 2 exactly), and partial column stacks are pruned with every
    axiom 3 instance whose three participating columns are already placed.
    Axiom 3 in column form: sigma_c . sigma_b == sigma_{sigma_c(b)} . sigma_c.
    With dedupe_iso, one representative per relabeling class is kept (the
    least table under the canonical form).
    """
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise ValueError("order must be between 1 and %d" % MAX_ENUMERATION_ORDER)
    candidates = {}
    for b in range(n):
        perms = []
        for p in itertools.permutations(range(n)):
            if p[b] == b:
                perms.append(p)
        candidates[b] = perms

    cols: list[tuple[int, ...]] = []
    found: list[tuple[tuple[int, ...], ...]] = []

    def consistent_with(k):
        # check every axiom-3 pair (b, c) whose columns b, c, sigma_c(b) are
        # all placed and that mentions the new column k
        for b in range(k + 1):
            for c in range(k + 1):
                bc = cols[c][b]
                if bc > k:
                    continue
                if k not in (b, c, bc):
                    continue
                sc, sb, sbc = cols[c], cols[b], cols[bc]
                if any(sc[sb[a]] != sbc[sc[a]] for a in range(n)):
                    return False
        return True

    def extend():
        k = len(cols)
        if k == n:
            table = tuple(tuple(cols[b][a] for b in range(n)) for a in range(n))
            found.append(table)
            return
        for p in candidates[k]:
            cols.append(p)
            if consistent_with(k):
                extend()
            cols.pop()

    extend()
    if dedupe_iso:
        found = sorted({_canonical_form(t) for t in found})
    else:
        found = sorted(found)
    return [QuandleTable(t) for t in found]


# --- file format -----------------------------------------------------------
#
# {"n": 3, "table": [[0,2,1],[2,1,0],[1,0,2]], "labels": ["r0","r1","r2"]}
#
# "labels" is optional and purely cosmetic.

def table_doc(q: QuandleTable, labels=None) -> dict:
    doc = {"n": q.n, "table": [list(r) for r in q.table]}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def rows_from_doc(doc):
    """Structural load of a table document; axiom checks are the caller's."""
    if not isinstance(doc, dict) or "table" not in doc:
        raise MalformedTableError("document must be an object with a 'table' field")
    rows = _check_shape(doc["table"])
    if "n" in doc and doc["n"] != len(rows):
        raise MalformedTableError("declared n=%r does not match table size %d"
                                  % (doc["n"], len(rows)))
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != len(rows)
                or not all(isinstance(s, str) for s in labels)):
            raise MalformedTableError("labels must be a list of %d strings" % len(rows))
        labels = tuple(labels)
    return rows, labels


def load_quandle_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedTableError("invalid JSON: %s" % exc) from exc
    return rows_from_doc(doc)
