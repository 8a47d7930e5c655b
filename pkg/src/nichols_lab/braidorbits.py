"""Orbit structure of the braiding c(i,j) = (i |> j, i) on X x X.

The cycle lengths of c control how many quadratic relations the associated
braided vector space can have: the profile collects the counts k_n (orbit
sizes through a fixed first coordinate), l_n (number of orbits of size n),
and the weight sum S = sum_{n>=3} (n-2)/(2n) * k_n whose value <= 1 is the
many-quadratic-relations condition.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .rack import Rack, isomorphism
from . import catalog


class BraidOrbit:
    """One cycle of c, stored from its lexicographically least pair."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        self.size = len(cycle)

    def __iter__(self):
        return iter(self.cycle)

    def __repr__(self):
        return "BraidOrbit(%r)" % (self.cycle,)


def braiding_map(r: Rack):
    def c(pair):
        i, j = pair
        return (r.op(i, j), i)
    return c


def braid_orbits(r: Rack):
    """Partition of X x X into c-orbits, ordered by least pair."""
    c = braiding_map(r)
    seen = set()
    orbits = []
    for i in range(1, r.size + 1):
        for j in range(1, r.size + 1):
            if (i, j) in seen:
                continue
            cycle = [(i, j)]
            seen.add((i, j))
            cur = c((i, j))
            while cur != (i, j):
                cycle.append(cur)
                seen.add(cur)
                cur = c(cur)
            # rotate so the least pair leads
            k = cycle.index(min(cycle))
            orbits.append(BraidOrbit(cycle[k:] + cycle[:k]))
    orbits.sort(key=lambda o: o.cycle[0])
    return orbits


def orbit_of(r: Rack, i: int, j: int) -> BraidOrbit:
    c = braiding_map(r)
    cycle = [(i, j)]
    cur = c((i, j))
    while cur != (i, j):
        cycle.append(cur)
        cur = c(cur)
    k = cycle.index(min(cycle))
    return BraidOrbit(cycle[k:] + cycle[:k])


class OrbitProfile:
    def __init__(self, d, k, l, S, condition_holds, advisory=False):
        self.d = d
        self.k = dict(k)
        self.l = dict(l)
        self.S = S
        self.condition_holds = condition_holds
        # set when the rack is decomposable, where k_n from row 1 alone
        # is not a full invariant
        self.advisory = advisory

    def to_json(self) -> str:
        data = {
            "d": self.d,
            "k": {str(n): v for n, v in sorted(self.k.items())},
            "l": {str(n): v for n, v in sorted(self.l.items())},
            "S": "%d/%d" % (self.S.numerator, self.S.denominator),
            "condition": self.condition_holds,
        }
        if self.advisory:
            data["advisory"] = True
        return json.dumps(data)

    def __repr__(self):
        return "OrbitProfile(d=%d, k=%r, S=%s)" % (self.d, self.k, self.S)


def profile(r: Rack) -> OrbitProfile:
    """Exact k_n, l_n and the weight sum S for a rack.

    For decomposable racks the k_n are still read off row 1 but the result
    is flagged advisory, since the counting identities assume a transitive
    inner action.
    """
    d = r.size
    k = {}
    for j in range(2, d + 1):
        n = orbit_of(r, 1, j).size
        k[n] = k.get(n, 0) + 1
    l = {}
    for o in braid_orbits(r):
        if o.size >= 2:
            l[o.size] = l.get(o.size, 0) + 1
    S = sum((Fraction(n - 2, 2 * n) * kn for n, kn in k.items() if n >= 3), Fraction(0))
    return OrbitProfile(d, k, l, S, S <= 1, advisory=not r.is_indecomposable())


def iterate_triangle(r: Rack, x: int, y: int, n: int) -> int:
    """The alternating n-fold product x |> (y |> (x |> ...)) with n letters."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # build from the innermost letter: letters alternate x, y, ... ending so
    # that exactly n letters appear, the outermost being x
    letters = [x if t % 2 == 0 else y for t in range(n)]  # outermost first
    val = letters[-1]
    for s in reversed(letters[:-1]):
        val = r.op(s, val)
    return val


def orbit_size_by_triangle(r: Rack, x: int, y: int) -> int:
    """Least n with x |>_n y = y -- the orbit-size criterion."""
    for n in range(1, r.size * r.size + 1):
        if iterate_triangle(r, x, y, n) == y:
            return n
    raise RuntimeError("no period found (not a rack?)")


def classify(r: Rack):
    """Name of the catalog rack isomorphic to r when the condition S <= 1 holds.

    Returns the catalog name, or None when S > 1.  Raises if the condition
    holds but no catalog rack matches: for an indecomposable injective
    quandle that would contradict the classification this library verifies.
    """
    if not r.is_quandle():
        raise ValueError("classification expects a quandle")
    if not r.is_indecomposable():
        raise ValueError("classification expects an indecomposable rack")
    from . import envgroup
    if not envgroup.injectivity(r):
        raise ValueError("classification expects an injective rack")
    p = profile(r)
    if p.S > 1:
        return None
    for name in catalog.BUILTIN_NAMES:
        if isomorphism(r, catalog.builtin(name)) is not None:
            return name
    raise RuntimeError(
        "condition holds but the rack matches no catalog entry; profile %r" % (p,))
