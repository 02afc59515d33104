"""Quandle colorings of diagrams and the 2-cocycle state-sum invariants.

A coloring assigns a quandle element to every arc.  At a crossing the
source under-arc is the incoming one when the writhe sign is +1 and the
outgoing one when it is -1; the other under-arc must carry source * over.
Each crossing then contributes s(tau) * phi(source, over) to its coloring's
weight, where s is the writhe sign w in minus mode and the shading sign
eps in plus mode, and the invariant is the multiset of weights.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .diagrams import arcs, checkerboard, load_diagram, signs
from .homology import ZZ, cocycle_basis

MODES = ("minus", "plus")


@dataclass(frozen=True)
class Coloring:
    """Arc index -> quandle element."""

    colors: tuple

    def __getitem__(self, arc):
        return self.colors[arc]

    def __len__(self):
        return len(self.colors)


def crossing_roles(d, arcset):
    """Per crossing: (source arc, over arc, target arc, w)."""
    out = []
    for i, (a, b, c, _) in enumerate(d.crossings):
        w = d.writhe_sign(i)
        under_in = arcset.arc_of[a]
        under_out = arcset.arc_of[c]
        over = arcset.arc_of[b]
        src, tgt = (under_in, under_out) if w == 1 else (under_out, under_in)
        out.append((src, over, tgt, w))
    return out


def is_valid_coloring(d, X, rho, arcset=None):
    ar = arcset or arcs(d)
    if len(rho) != len(ar):
        return False
    for src, over, tgt, _ in crossing_roles(d, ar):
        if X.op(rho[src], rho[over]) != rho[tgt]:
            return False
    return True


def enumerate_colorings(d, X):
    """All valid colorings, by backtracking with constraint propagation."""
    ar = arcs(d)
    roles = crossing_roles(d, ar)
    k = len(ar)
    touch = [[] for _ in range(k)]
    for idx, (src, over, tgt, _) in enumerate(roles):
        for arc in {src, over, tgt}:
            touch[arc].append(idx)

    colors = [None] * k
    found = []

    def propagate(queue, trail):
        while queue:
            src, over, tgt, _ = roles[queue.pop()]
            cs, co, ct = colors[src], colors[over], colors[tgt]
            if co is None:
                continue
            if cs is not None:
                v = X.op(cs, co)
                if ct is None:
                    colors[tgt] = v
                    trail.append(tgt)
                    queue.extend(touch[tgt])
                elif ct != v:
                    return False
            elif ct is not None:
                v = X.inv_op(ct, co)
                colors[src] = v
                trail.append(src)
                queue.extend(touch[src])
        return True

    def backtrack():
        arc = next((i for i in range(k) if colors[i] is None), None)
        if arc is None:
            found.append(Coloring(tuple(colors)))
            return
        for val in range(X.n):
            colors[arc] = val
            trail = [arc]
            if propagate(list(touch[arc]), trail):
                backtrack()
            for a in trail:
                colors[a] = None

    backtrack()
    found.sort(key=lambda c: c.colors)
    return found


def act_coloring(X, rho, a):
    """Translate every arc color by * a; stays a coloring (self-distributivity)."""
    return Coloring(tuple(X.op(c, a) for c in rho.colors))


@dataclass(frozen=True)
class GroupRingValue:
    """Multiset of coefficient-group elements, one per coloring."""

    coeff: object
    counts: tuple  # sorted ((element, multiplicity), ...)

    @classmethod
    def from_values(cls, coeff, values):
        acc = {}
        for v in values:
            v = coeff.reduce(v)
            acc[v] = acc.get(v, 0) + 1
        return cls(coeff, tuple(sorted(acc.items())))

    @property
    def total(self):
        return sum(m for _, m in self.counts)

    def support(self):
        return tuple(v for v, _ in self.counts)

    def to_doc(self):
        return [[str(v), m] for v, m in self.counts]


def is_trivial(value):
    """All weights are the identity; an empty multiset is an error, not trivial."""
    if not value.counts:
        raise ValueError("state sum over no colorings (corrupt inputs)")
    return value.support() == (0,)


def contribution(d, rho, phi, mode, crossing_signs=None, arcset=None):
    """Total weight of one coloring: sum of s(tau) * phi(source, over)."""
    if mode not in MODES:
        raise ValueError("mode must be 'minus' or 'plus'")
    ar = arcset or arcs(d)
    sg = crossing_signs or signs(d, checkerboard(d))
    s = sg.w if mode == "minus" else sg.eps
    total = 0
    for i, (src, over, _, _) in enumerate(crossing_roles(d, ar)):
        total += s[i] * phi(rho[src], rho[over])
    return phi.coeff.reduce(total)


def state_sum(d, X, phi, mode, coeff=None):
    """The invariant: one weight per coloring, collected as a multiset."""
    if coeff is not None and coeff != phi.coeff:
        raise ValueError("coefficient group does not match the cocycle")
    if phi.n != X.n:
        raise ValueError("cocycle size does not match the quandle")
    ar = arcs(d)
    sg = signs(d, checkerboard(d))
    values = [
        contribution(d, rho, phi, mode, crossing_signs=sg, arcset=ar)
        for rho in enumerate_colorings(d, X)
    ]
    return GroupRingValue.from_values(phi.coeff, values)


@dataclass(frozen=True)
class LemmaReport:
    name: str
    pairs_checked: int
    failures: tuple  # ((coloring, element, value, translated value), ...)

    @property
    def ok(self):
        return not self.failures


def _lemma_scan(d, X, phi, relation, name):
    if not d.is_knot():
        raise ValueError("lemma checks are stated for knot diagrams")
    if phi.coeff != ZZ:
        raise ValueError("lemma checks run over Z")
    ar = arcs(d)
    sg = signs(d, checkerboard(d))
    checked = 0
    failures = []
    for rho in enumerate_colorings(d, X):
        base = contribution(d, rho, phi, "plus", crossing_signs=sg, arcset=ar)
        for a in range(X.n):
            moved = act_coloring(X, rho, a)
            if not is_valid_coloring(d, X, moved, arcset=ar):
                failures.append((rho.colors, a, "not a coloring", None))
                continue
            other = contribution(d, moved, phi, "plus", crossing_signs=sg, arcset=ar)
            checked += 1
            if not relation(base, other):
                failures.append((rho.colors, a, base, other))
    return LemmaReport(name=name, pairs_checked=checked, failures=tuple(failures))


def check_lemma_4_1(d, X, phi):
    """Translating a coloring negates its plus-mode weight."""
    return _lemma_scan(d, X, phi, lambda u, v: u + v == 0, "weights-cancel")


def check_lemma_4_2(d, X, phi):
    """Translating a coloring preserves its plus-mode weight."""
    return _lemma_scan(d, X, phi, lambda u, v: u == v, "weights-agree")


@dataclass(frozen=True)
class ArcTraversal:
    """One arc's travel: start undercrossing, over-passages in order, end."""

    arc: int
    start: int | None
    overs: tuple
    end: int | None
    closed: bool


def arc_traversals(d, arcset=None):
    ar = arcset or arcs(d)
    out = []
    for idx, block in enumerate(ar.arcs):
        if all(e in d.loops for e in block):
            out.append(ArcTraversal(idx, None, (), None, True))
            continue
        starts = []
        for e in block:
            for i, p in d.ends[e]:
                if p == 2 and not d.incoming[i][p]:
                    starts.append((e, i))
        if not starts:
            # a component passing over everything it meets
            e = min(block)
            overs = []
            cur = e
            while True:
                i, p = d.head(cur)
                overs.append(i)
                cur = d.successor(cur)
                if cur == e:
                    break
            out.append(ArcTraversal(idx, None, tuple(overs), None, True))
            continue
        if len(starts) != 1:
            raise AssertionError("arc %r has %d under-exits" % (block, len(starts)))
        cur, start = starts[0]
        overs = []
        while True:
            i, p = d.head(cur)
            if p == 0:
                out.append(ArcTraversal(idx, start, tuple(overs), i, False))
                break
            overs.append(i)
            cur = d.successor(cur)
    return out


def check_eps_alternation(d, crossing_signs=None):
    """Do the shading signs alternate along every over-passing run?

    Closed all-over components need the alternation to close up cyclically.
    """
    sg = crossing_signs or signs(d, checkerboard(d))
    for trav in arc_traversals(d):
        run = [sg.eps[i] for i in trav.overs]
        for j in range(len(run) - 1):
            if run[j] == run[j + 1]:
                return False
        if trav.closed and len(run) > 1 and run[0] == run[-1]:
            return False
    return True


def eps_psi_zero_sum(d, rho, psi, crossing_signs=None, arcset=None):
    """sum over crossings of eps * (-2 psi(over) + psi(source) + psi(target)).

    Vanishes for every coloring and every psi; this is the cancellation that
    makes plus-mode state sums blind to coboundaries.
    """
    ar = arcset or arcs(d)
    sg = crossing_signs or signs(d, checkerboard(d))
    total = 0
    for i, (src, over, tgt, _) in enumerate(crossing_roles(d, ar)):
        total += sg.eps[i] * (-2 * psi[rho[over]] + psi[rho[src]] + psi[rho[tgt]])
    return total


@dataclass(frozen=True)
class SweepEntry:
    quandle: tuple  # the table rows
    diagram: str
    cocycle: tuple  # value table rows
    colorings: int
    invariant: GroupRingValue
    trivial: bool
    witnesses: tuple  # nontrivial (coloring, weight) pairs


@dataclass(frozen=True)
class SweepReport:
    mode: str
    coeff: object
    entries: tuple

    @property
    def all_trivial(self):
        return all(e.trivial for e in self.entries)

    def nontrivial(self):
        return tuple(e for e in self.entries if not e.trivial)


def _sweep_cell(X, name, d, basis, mode):
    ar = arcs(d)
    sg = signs(d, checkerboard(d))
    colorings = enumerate_colorings(d, X)
    entries = []
    for phi in basis:
        weights = []
        witnesses = []
        for rho in colorings:
            v = contribution(d, rho, phi, mode, crossing_signs=sg, arcset=ar)
            weights.append(v)
            if v:
                witnesses.append((rho.colors, v))
        value = GroupRingValue.from_values(phi.coeff, weights)
        entries.append(
            SweepEntry(
                quandle=X.table,
                diagram=name,
                cocycle=phi.values,
                colorings=len(colorings),
                invariant=value,
                trivial=is_trivial(value),
                witnesses=tuple(witnesses[:5]),
            )
        )
    return entries


def sweep_threads():
    raw = os.environ.get("QUANDLE_KIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def theorem_sweep(quandles, diagrams, coeff, mode, threads=None):
    """Evaluate every (quandle, diagram, basis cocycle) cell of a sweep.

    Diagrams may be corpus names, file paths, or (name, diagram) pairs.
    Over Z the basis-only sweep is exhaustive because weights are additive
    in the cocycle.
    """
    if mode not in MODES:
        raise ValueError("mode must be 'minus' or 'plus'")
    resolved = []
    for item in diagrams:
        if isinstance(item, tuple):
            resolved.append(item)
        else:
            resolved.append((item, load_diagram(item)))
    cells = []
    for X in quandles:
        basis = cocycle_basis(X, mode, coeff)
        for name, d in resolved:
            cells.append((X, name, d, basis))
    workers = threads if threads is not None else sweep_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(
                pool.map(lambda c: _sweep_cell(c[0], c[1], c[2], c[3], mode), cells)
            )
    else:
        batches = [_sweep_cell(X, name, d, basis, mode) for X, name, d, basis in cells]
    entries = [e for batch in batches for e in batch]
    return SweepReport(mode=mode, coeff=coeff, entries=tuple(entries))
