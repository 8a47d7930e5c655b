"""Small permutation groups by explicit element enumeration.

Permutations are tuples of 1-based images on points {1..m}; composition is
left-to-right (``mul(p, q)`` acts as "apply p, then q"), which matches the
way coset tables compose generator actions.  Groups materialize their full
element set, so everything here is meant for orders up to the configured
cap, not for heavy group theory.
"""

from __future__ import annotations

from .exactnum import hermite_normal_form


DEFAULT_CLOSURE_CAP = 10 ** 6


class GroupTooLarge(RuntimeError):
    """Closure exceeded the configured element cap."""


def identity(degree: int):
    return tuple(range(1, degree + 1))


def mul(p, q):
    """Apply p first, then q."""
    return tuple(q[x - 1] for x in p)


def inverse(p):
    img = [0] * len(p)
    for i, v in enumerate(p):
        img[v - 1] = i + 1
    return tuple(img)


def conjugate(p, h):
    """h^-1 p h under left-to-right composition: apply h^-1, then p, then h."""
    return mul(mul(inverse(h), p), h)


def perm_from_cycles(cycles, degree: int):
    img = list(range(1, degree + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return tuple(img)


def cycle_structure(p):
    """Sorted tuple of cycle lengths >= 2."""
    seen = [False] * len(p)
    out = []
    for s in range(1, len(p) + 1):
        if seen[s - 1]:
            continue
        n = 0
        x = s
        while not seen[x - 1]:
            seen[x - 1] = True
            x = p[x - 1]
            n += 1
        if n > 1:
            out.append(n)
    return tuple(sorted(out))


def perm_order(p):
    n = 1
    q = p
    e = identity(len(p))
    while q != e:
        q = mul(q, p)
        n += 1
    return n


class FinGroup:
    """A finite permutation group with its elements materialized."""

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = list(generators)
        self.elements = sorted(elements)
        self._set = set(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self._set

    def __iter__(self):
        return iter(self.elements)

    def identity(self):
        return identity(self.degree)

    def subgroup(self, gens):
        return closure(gens, degree=self.degree)

    def __repr__(self):
        return "FinGroup(degree=%d, order=%d)" % (self.degree, self.order)


def closure(generators, degree=None, cap=DEFAULT_CLOSURE_CAP) -> FinGroup:
    """The group generated by the permutations, all elements materialized."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators act on different degrees")
    e = identity(degree)
    els = {e}
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in els:
                    els.add(y)
                    new.append(y)
                    if len(els) > cap:
                        raise GroupTooLarge("group too large: more than %d elements" % cap)
        frontier = new
    return FinGroup(degree, gens, els)


def centralizer(g: FinGroup, x) -> FinGroup:
    if x not in g:
        raise ValueError("element does not belong to the group")
    members = [h for h in g.elements if mul(h, x) == mul(x, h)]
    return FinGroup(g.degree, [h for h in members if h != g.identity()] or [g.identity()], members)


def conjugacy_class(g: FinGroup, x):
    if x not in g:
        raise ValueError("element does not belong to the group")
    orbit = {x}
    frontier = [x]
    while frontier:
        new = []
        for y in frontier:
            for h in g.generators:
                z = conjugate(y, h)
                if z not in orbit:
                    orbit.add(z)
                    new.append(z)
        frontier = new
    return sorted(orbit)


def center(g: FinGroup) -> FinGroup:
    members = [h for h in g.elements if all(mul(h, k) == mul(k, h) for k in g.generators)]
    return FinGroup(g.degree, members, members)


def derived_subgroup(g: FinGroup) -> FinGroup:
    """Commutator subgroup: normal closure of generator commutators."""
    comms = set()
    for a in g.generators:
        for b in g.generators:
            comms.add(mul(mul(inverse(a), inverse(b)), mul(a, b)))
    comms.discard(g.identity())
    sub = closure(list(comms) or [g.identity()], degree=g.degree)
    while True:
        extra = set()
        for h in g.generators:
            for x in sub.elements:
                y = conjugate(x, h)
                if y not in sub:
                    extra.add(y)
        if not extra:
            return sub
        sub = closure(list(set(sub.generators) | extra), degree=g.degree)


def generates(g: FinGroup, gens) -> bool:
    return closure(gens, degree=g.degree).order == g.order


class CosetQuotient:
    """The quotient g/n of a materialized group by a normal subgroup.

    Cosets are keyed by their minimal member, which makes multiplication
    and element lookup deterministic.
    """

    def __init__(self, g: FinGroup, n: FinGroup):
        self.g = g
        self.n = n
        rep = {}
        for x in g.elements:
            if x in rep:
                continue
            coset = sorted(mul(x, h) for h in n.elements)
            key = coset[0]
            for y in coset:
                rep[y] = key
        self.rep = rep
        self.cosets = sorted(set(rep.values()))

    @property
    def order(self):
        return len(self.cosets)

    def project(self, x):
        return self.rep[x]

    def mul(self, a, b):
        return self.rep[mul(a, b)]

    def inverse(self, a):
        return self.rep[inverse(a)]

    def identity(self):
        return self.rep[self.g.identity()]


def abelianization_relations(g: FinGroup, gens):
    """Integer relation matrix of g/[g,g] with respect to the images of ``gens``.

    The rows span the full relation lattice: the matrix presents the
    abelianization exactly, not just a group mapping onto it.  Obtained by
    enumerating the quotient by the derived subgroup and collecting every
    exponent vector that hits the identity coset within the box of
    generator-image orders.
    """
    if not generates(g, gens):
        raise ValueError("given elements do not generate the group")
    der = derived_subgroup(g)
    q = CosetQuotient(g, der)
    imgs = [q.project(x) for x in gens]
    k = len(imgs)
    e = q.identity()
    orders = []
    for im in imgs:
        n = 1
        y = im
        while y != e:
            y = q.mul(y, im)
            n += 1
        orders.append(n)
    box = 1
    for n in orders:
        box *= n
    if box > 10 ** 6:
        raise RuntimeError("abelianization exponent box too large (%d)" % box)
    relations = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    # powers of each generator image, for fast box evaluation
    pows = []
    for im, n in zip(imgs, orders):
        ps = [e]
        for _ in range(n - 1):
            ps.append(q.mul(ps[-1], im))
        pows.append(ps)
    vec = [0] * k
    while True:
        prod = e
        for i in range(k):
            prod = q.mul(prod, pows[i][vec[i]])
        if prod == e and any(vec):
            relations.append(list(vec))
        i = 0
        while i < k:
            vec[i] += 1
            if vec[i] < orders[i]:
                break
            vec[i] = 0
            i += 1
        if i == k:
            break
    return hermite_normal_form(relations)
