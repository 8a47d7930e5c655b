"""Finite racks: construction, validation, predicates, isomorphism, enumeration.

A rack is a finite set {1..d} with an operation i |> j such that every left
translation phi_i = (j -> i |> j) is a bijection (R1) and left translations
are self-distributive (R2).  Element labels are 1-based everywhere in the
public interface so operation tables read exactly like published ones.
"""

from __future__ import annotations

import itertools
import json

from . import permgroup
from .permgroup import closure, cycle_structure, perm_from_cycles


class RackError(ValueError):
    """Invalid rack data: the message names the violated axiom and witness."""


class Rack:
    """An immutable rack given by its operation table (1-based)."""

    def __init__(self, table, name=None):
        d = len(table)
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        for i, row in enumerate(tbl, start=1):
            if len(row) != d or sorted(row) != list(range(1, d + 1)):
                raise RackError("axiom R1 violated: row %d is not a permutation of 1..%d" % (i, d))
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for k in range(1, d + 1):
                    lhs = tbl[i - 1][tbl[j - 1][k - 1] - 1]
                    rhs = tbl[tbl[i - 1][j - 1] - 1][tbl[i - 1][k - 1] - 1]
                    if lhs != rhs:
                        raise RackError(
                            "axiom R2 violated at (i,j,k)=(%d,%d,%d): %d != %d"
                            % (i, j, k, lhs, rhs))
        self.size = d
        self.table = tbl
        self.name = name

    def op(self, i: int, j: int) -> int:
        return self.table[i - 1][j - 1]

    def phi(self, i: int):
        """The left translation by i, as a permutation tuple."""
        return self.table[i - 1]

    def phis(self):
        return [self.table[i] for i in range(self.size)]

    def inner_group(self):
        return closure(self.phis(), degree=self.size)

    def is_quandle(self) -> bool:
        return all(self.op(i, i) == i for i in range(1, self.size + 1))

    def is_crossed_set(self) -> bool:
        if not self.is_quandle():
            return False
        return all((self.op(i, j) == j) == (self.op(j, i) == i)
                   for i in range(1, self.size + 1) for j in range(1, self.size + 1))

    def is_involutive(self) -> bool:
        return all(self.op(i, self.op(i, j)) == j
                   for i in range(1, self.size + 1) for j in range(1, self.size + 1))

    def is_faithful(self) -> bool:
        return len(set(self.phis())) == self.size

    def is_indecomposable(self) -> bool:
        return len(self.inner_orbit(1)) == self.size

    def inner_orbit(self, i: int):
        """Orbit of i under the inner group, as a sorted list."""
        orbit = {i}
        frontier = [i]
        while frontier:
            new = []
            for x in frontier:
                for p in self.phis():
                    for y in (p[x - 1], p.index(x) + 1):
                        if y not in orbit:
                            orbit.add(y)
                            new.append(y)
            frontier = new
        return sorted(orbit)

    def inner_orbits(self):
        seen = set()
        out = []
        for i in range(1, self.size + 1):
            if i not in seen:
                orb = self.inner_orbit(i)
                seen.update(orb)
                out.append(orb)
        return out

    def phi_orders(self):
        return [permgroup.perm_order(p) for p in self.phis()]

    def to_json(self) -> str:
        return json.dumps({"size": self.size, "table": [list(r) for r in self.table]})

    def __eq__(self, other):
        return isinstance(other, Rack) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "Rack(%s, d=%d)" % (self.name or "table", self.size)


class RackProperties:
    def __init__(self, quandle, crossed_set, involutive, faithful, indecomposable,
                 injective, fixed_point_count_of_phi1):
        self.quandle = quandle
        self.crossed_set = crossed_set
        self.involutive = involutive
        self.faithful = faithful
        self.indecomposable = indecomposable
        self.injective = injective
        self.fixed_point_count_of_phi1 = fixed_point_count_of_phi1

    def as_dict(self):
        return {
            "quandle": self.quandle,
            "crossed_set": self.crossed_set,
            "involutive": self.involutive,
            "faithful": self.faithful,
            "indecomposable": self.indecomposable,
            "injective": self.injective,
            "fixed_point_count_of_phi1": self.fixed_point_count_of_phi1,
        }

    def __repr__(self):
        return "RackProperties(%r)" % (self.as_dict(),)


def properties(r: Rack) -> RackProperties:
    """All predicate flags of a rack; injectivity goes through the enveloping group."""
    from . import envgroup

    phi1 = r.phi(1)
    return RackProperties(
        quandle=r.is_quandle(),
        crossed_set=r.is_crossed_set(),
        involutive=r.is_involutive(),
        faithful=r.is_faithful(),
        indecomposable=r.is_indecomposable(),
        injective=envgroup.injectivity(r),
        fixed_point_count_of_phi1=sum(1 for j in range(1, r.size + 1) if phi1[j - 1] == j),
    )


# ---------------------------------------------------------------------------
# constructors


def dihedral(p: int) -> Rack:
    """The p-element rack of involutions i |> j = 2i - j (mod p)."""
    if p < 2:
        raise RackError("dihedral rack needs p >= 2")
    table = [[((2 * i - j) % p) + 1 for j in range(p)] for i in range(p)]
    return Rack(table, name="D%d" % p)


def affine(q: int, alpha: int) -> Rack:
    """The affine rack x |> y = (1-alpha)x + alpha*y on the prime field F_q.

    Field element e corresponds to label e+1.  Only prime q is supported:
    that covers every affine rack appearing in the classification, and keeps
    the arithmetic to plain residues.
    """
    from .exactnum import _is_prime

    if not _is_prime(q):
        raise RackError("affine rack modulus must be prime, got %d" % q)
    a = alpha % q
    if a in (0, 1):
        raise RackError("affine parameter must differ from 0 and 1 mod q")
    table = [[(((1 - a) * x + a * y) % q) + 1 for y in range(q)] for x in range(q)]
    return Rack(table, name="Aff(%d,%d)" % (q, a))


def conjugation_rack(group: permgroup.FinGroup, element, name=None) -> Rack:
    """The conjugacy class of ``element``, with i |> j = g_i g_j g_i^{-1}, labels sorted.

    Products compose left-to-right, matching the rest of the library.
    """
    cls = permgroup.conjugacy_class(group, element)
    idx = {g: k + 1 for k, g in enumerate(cls)}
    table = []
    for g in cls:
        gi = permgroup.inverse(g)
        table.append([idx[permgroup.mul(permgroup.mul(g, h), gi)] for h in cls])
    return Rack(table, name=name)


def from_table(table, name=None) -> Rack:
    return Rack(table, name=name)


def from_json(text: str, name=None) -> Rack:
    data = json.loads(text)
    if not isinstance(data, dict) or "size" not in data or "table" not in data:
        raise RackError("rack JSON must have 'size' and 'table' fields")
    if len(data["table"]) != data["size"]:
        raise RackError("table size does not match declared size")
    return Rack(data["table"], name=name)


def from_file(path, name=None) -> Rack:
    with open(path) as fh:
        return from_json(fh.read(), name=name or str(path))


# ---------------------------------------------------------------------------
# isomorphism


def isomorphism(r1: Rack, r2: Rack):
    """A rack isomorphism r1 -> r2 as a dict {i: f(i)}, or None.

    Backtracking over images, pruned by matching cycle structures of the
    left translations; the first (lexicographically least) isomorphism wins,
    so the result is deterministic.
    """
    if r1.size != r2.size:
        return None
    d = r1.size
    sig1 = [cycle_structure(r1.phi(i)) for i in range(1, d + 1)]
    sig2 = [cycle_structure(r2.phi(i)) for i in range(1, d + 1)]
    if sorted(sig1) != sorted(sig2):
        return None
    f = [0] * (d + 1)
    used = [False] * (d + 1)

    def consistent(i):
        for j in range(1, d + 1):
            if f[j] == 0:
                continue
            ij = r1.op(i, j)
            ji = r1.op(j, i)
            if f[ij] and r2.op(f[i], f[j]) != f[ij]:
                return False
            if not f[ij] and used[r2.op(f[i], f[j])] and r2.op(f[i], f[j]) not in (f[ij],):
                # image already taken by a different source: defer to later check
                pass
            if f[ji] and r2.op(f[j], f[i]) != f[ji]:
                return False
        return True

    def extend(i):
        if i > d:
            # full map: verify homomorphism completely
            for a in range(1, d + 1):
                for b in range(1, d + 1):
                    if f[r1.op(a, b)] != r2.op(f[a], f[b]):
                        return False
            return True
        for img in range(1, d + 1):
            if used[img] or sig1[i - 1] != sig2[img - 1]:
                continue
            f[i] = img
            used[img] = True
            if consistent(i) and extend(i + 1):
                return True
            f[i] = 0
            used[img] = False
        return False

    if extend(1):
        return {i: f[i] for i in range(1, d + 1)}
    return None


def is_isomorphism(r1: Rack, r2: Rack, f) -> bool:
    if sorted(f) != list(range(1, r1.size + 1)) or sorted(f.values()) != list(range(1, r2.size + 1)):
        return False
    return all(f[r1.op(i, j)] == r2.op(f[i], f[j])
               for i in range(1, r1.size + 1) for j in range(1, r1.size + 1))


def canonical_table(r: Rack):
    """Minimal operation table over all relabelings (the isomorphism-class key)."""
    d = r.size
    best = None
    for perm in itertools.permutations(range(1, d + 1)):
        # perm maps old label i to new label perm[i-1]
        inv = [0] * (d + 1)
        for i, v in enumerate(perm, start=1):
            inv[v] = i
        tbl = tuple(tuple(perm[r.op(inv[i], inv[j]) - 1] for j in range(1, d + 1))
                    for i in range(1, d + 1))
        if best is None or tbl < best:
            best = tbl
    return best


# ---------------------------------------------------------------------------
# bounded exhaustive enumeration of indecomposable injective quandles


ENUMERATION_CAP = 8


def enumerate_quandles(max_size: int, cap: int = ENUMERATION_CAP):
    """All indecomposable injective quandles with at most ``max_size`` elements,
    one per isomorphism class, ordered by (size, canonical table).

    The trivial one-element quandle is reported only when ``max_size == 1``:
    every statement about the orbit profile assumes at least two elements,
    so larger searches start at size 2.

    The search walks left-translation tuples row by row.  Indecomposability
    forces all translations to share one cycle structure, so candidates for
    each row are the permutations conjugate to phi_1 fixing their own index;
    partial self-distributivity and the conjugation identity prune branches.
    """
    if max_size > cap:
        raise RackError("enumeration bounded at %d elements (asked for %d)" % (cap, max_size))
    if max_size < 1:
        return []
    if max_size == 1:
        return [Rack([[1]], name="trivial1")]
    out = []
    for d in range(2, max_size + 1):
        out.extend(_enumerate_size(d))
    return out


def _enumerate_size(d: int):
    from . import envgroup

    found = {}
    identity = tuple(range(1, d + 1))
    for phi1 in _canonical_first_rows(d):
        if phi1 == identity:
            continue  # the trivial quandle of size d > 1 is decomposable
        same_type = [p for p in itertools.permutations(range(1, d + 1))
                     if cycle_structure(p) == cycle_structure(phi1)]
        by_fixed = {}
        for p in same_type:
            for i in range(1, d + 1):
                if p[i - 1] == i:
                    by_fixed.setdefault(i, []).append(p)
        rows = [None] * (d + 1)
        rows[1] = phi1

        def conj_row(i, j):
            # phi_i phi_j phi_i^{-1} as an image tuple
            return tuple(rows[i][rows[j][_x - 1] - 1] for _x in _inv_list(rows[i]))

        def propagate_ok(new):
            # conjugation identity on every pair that the new row completes
            for j in range(1, d + 1):
                if rows[j] is None:
                    continue
                for a, b in ((new, j), (j, new)):
                    if rows[a] is None or rows[b] is None:
                        continue
                    k = rows[a][b - 1]  # a |> b
                    if rows[k] is not None and rows[k] != conj_row(a, b):
                        return False
                # older pairs whose target only now got a row
                if j != new and rows[j] is not None:
                    for b in range(1, d + 1):
                        if rows[b] is not None and rows[j][b - 1] == new:
                            if rows[new] != conj_row(j, b):
                                return False
            return True

        def assign(i):
            if i > d:
                table = [rows[t] for t in range(1, d + 1)]
                try:
                    r = Rack(table)
                except RackError:
                    return
                if not r.is_indecomposable():
                    return
                if not envgroup.injectivity(r):
                    return
                key = canonical_table(r)
                if key not in found:
                    found[key] = Rack(key, name="search-d%d" % d)
                return
            forced = None
            for j in range(1, i):
                for b in range(1, i):
                    if rows[j][b - 1] == i:
                        want = conj_row(j, b)
                        if forced is not None and want != forced:
                            return
                        forced = want
            candidates = [forced] if forced is not None else by_fixed.get(i, [])
            for p in candidates:
                if p[i - 1] != i or cycle_structure(p) != cycle_structure(phi1):
                    continue
                rows[i] = p
                if propagate_ok(i):
                    assign(i + 1)
                rows[i] = None

        assign(2)
    return [found[k] for k in sorted(found)]


def _inv_list(p):
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return inv


def _canonical_first_rows(d: int):
    """One representative first row per cycle type: phi_1 fixes 1."""
    reps = []
    for part in _partitions(d - 1):
        # cycles on {2..d}, lengths given by the partition, labels in order
        cycles = []
        nxt = 2
        for ln in part:
            if ln == 1:
                nxt += 1
                continue
            cycles.append(tuple(range(nxt, nxt + ln)))
            nxt += ln
        reps.append(perm_from_cycles(cycles, d))
    return reps


def _partitions(n: int):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    def rec(n, maxpart):
        if n == 0:
            yield ()
            return
        for first in range(min(n, maxpart), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest
    yield from rec(n, n)
