"""Centralizer characters, the induced rack 2-cocycle, and degree-2 analysis.

A sign character of the centralizer of x_1 in the enveloping group induces a
module over the group algebra whose underlying braided vector space is the
rack with a 2-cocycle q: c(v_i (x) v_j) = q_{ij} v_{i|>j} (x) v_i.  The
cocycle is computed inside the finite quotient by x_1^{2n} (all sign
characters factor through it): pick section elements h_i conjugating x_1 to
x_i by breadth-first search, set q_{ij} = rho(h_{i|>j}^{-1} x_i h_j), and
normalize the basis by the parity of the section word lengths.  With that
normalization the cyclic-centralizer racks get the constant cocycle -1.

Character values on centralizer elements are read off a consistently
labeled Cayley graph of the centralizer (which simultaneously certifies
that the prescribed generator values extend to a homomorphism); the
abelianization relation matrix provides an independent existence check.
"""

from __future__ import annotations

from fractions import Fraction

from . import envgroup, permgroup
from .braidorbits import braid_orbits
from .exactnum import ExactMatrix, character_exists, rank_and_kernel
from .permgroup import inverse, mul
from .rack import Rack


class CharacterError(ValueError):
    """The prescribed generator values do not extend to a character."""


def parse_generator_name(name: str):
    """Letters of a centralizer generator name: "x4x2" -> [4, 2]."""
    if not name.startswith("x"):
        raise ValueError("generator names look like 'x1' or 'x4x2', got %r" % name)
    parts = name[1:].split("x")
    if not all(p.isdigit() for p in parts):
        raise ValueError("malformed generator name %r" % name)
    return [int(p) for p in parts]


class CharacterSpec:
    """Values (+1/-1) on named centralizer generators."""

    def __init__(self, values: dict):
        self.values = {}
        for name, v in values.items():
            if v not in (1, -1):
                raise ValueError("character values must be +1 or -1, got %r" % (v,))
            self.values[name] = int(v)

    def names(self):
        return list(self.values)

    def words(self):
        return [parse_generator_name(n) for n in self.values]

    def signs(self):
        return [self.values[n] for n in self.values]

    @classmethod
    def parse(cls, text: str) -> "CharacterSpec":
        """Parse "x1=-1,x4=1" style assignments."""
        vals = {}
        for part in text.split(","):
            name, _, sval = part.strip().partition("=")
            vals[name.strip()] = int(sval)
        return cls(vals)

    def __repr__(self):
        return "CharacterSpec(%r)" % (self.values,)


class YDContext:
    """Hat-quotient data backing a character: sections, centralizer, value table."""

    def __init__(self, r: Rack, spec: CharacterSpec, cap: int = envgroup.DEFAULT_COSET_CAP):
        if not r.is_indecomposable():
            raise ValueError("character-induced cocycles need an indecomposable rack")
        if not envgroup.injectivity(r, cap=cap):
            raise ValueError("character-induced cocycles need an injective rack")
        self.rack = r
        self.spec = spec
        self.hat = envgroup.hat_group(r, cap=cap)
        self.gens = self.hat.generators
        self.sections, self.section_lengths = _sections(self.hat, r)
        self.centralizer = permgroup.centralizer(self.hat, self.gens[0])
        self.claimed = [envgroup.word_image(self.hat, w) for w in spec.words()]
        for name, img in zip(spec.names(), self.claimed):
            if img not in self.centralizer:
                raise CharacterError("generator %s does not centralize x1" % name)
        if not permgroup.generates(self.centralizer, self.claimed):
            raise CharacterError("claimed generators do not generate the centralizer")
        self.relation_matrix = permgroup.abelianization_relations(self.centralizer, self.claimed)
        orders = [1 if s == 1 else 2 for s in spec.signs()]
        if not character_exists(self.relation_matrix, orders):
            raise CharacterError(
                "values %r kill no character of the centralizer abelianization" % (spec.values,))
        self.values = _cayley_values(self.centralizer, self.claimed, spec.signs())

    def rho(self, z) -> int:
        """Character value (+-1) on a centralizer element."""
        return self.values[z]


def _sections(hat, r: Rack):
    """Shortest positive words h_i with h_i x_1 h_i^{-1} = x_i, plus their lengths.

    Breadth-first over right multiplication by generators, ties broken by
    generator index; h_1 is the identity.
    """
    gens = hat.generators
    x1 = gens[0]
    target = {}
    for i in range(1, r.size + 1):
        target[gens[i - 1]] = i
    sections = {}
    lengths = {}
    e = hat.identity()
    frontier = [(e, 0)]
    seen = {e}
    conj = mul(mul(e, x1), inverse(e))
    sections[target[conj]] = e
    lengths[target[conj]] = 0
    while frontier and len(sections) < r.size:
        nxt = []
        for h, ln in frontier:
            for g in gens:
                h2 = mul(h, g)
                if h2 in seen:
                    continue
                seen.add(h2)
                nxt.append((h2, ln + 1))
                c = mul(mul(h2, x1), inverse(h2))
                i = target.get(c)
                if i is not None and i not in sections:
                    sections[i] = h2
                    lengths[i] = ln + 1
        frontier = nxt
    if len(sections) != r.size:
        raise RuntimeError("sections not found for all class elements")
    return [sections[i] for i in range(1, r.size + 1)], \
           [lengths[i] for i in range(1, r.size + 1)]


def _cayley_values(cen, claimed, signs):
    """Sign labels on the centralizer making each claimed generator act by its sign.

    Labels every element by BFS and then checks every Cayley edge, which is a
    complete well-definedness certificate for the character.
    """
    e = cen.identity()
    values = {e: 1}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g, s in zip(claimed, signs):
                y = mul(x, g)
                if y not in values:
                    values[y] = values[x] * s
                    nxt.append(y)
        frontier = nxt
    if len(values) != cen.order:
        raise CharacterError("claimed generators do not generate the centralizer")
    for x, vx in values.items():
        for g, s in zip(claimed, signs):
            if values[mul(x, g)] != vx * s:
                raise CharacterError("sign assignment is inconsistent on the centralizer")
    return values


class CocycleError(ValueError):
    """The scalar table violates the rack 2-cocycle identity."""


class Cocycle:
    """A rack 2-cocycle with values in a field, defining the braiding."""

    def __init__(self, r: Rack, field, q, grading_perms=None, validate=True):
        self.rack = r
        self.field = field
        self.q = tuple(tuple(field(x) for x in row) for row in q)
        if len(self.q) != r.size or any(len(row) != r.size for row in self.q):
            raise CocycleError("cocycle table must be d x d")
        # per-letter grading labels; any group where the rack relations hold
        self.grading_perms = list(grading_perms) if grading_perms is not None else list(r.phis())
        if validate:
            self.validate()

    def value(self, i, j):
        return self.q[i - 1][j - 1]

    def validate(self):
        r = self.rack
        f = self.field
        for i in range(1, r.size + 1):
            for j in range(1, r.size + 1):
                for k in range(1, r.size + 1):
                    lhs = f.mul(self.value(i, r.op(j, k)), self.value(j, k))
                    rhs = f.mul(self.value(r.op(i, j), r.op(i, k)), self.value(i, k))
                    if lhs != rhs:
                        raise CocycleError(
                            "cocycle identity fails at (i,j,k)=(%d,%d,%d)" % (i, j, k))

    def braiding_pair(self, i, j):
        """c(v_i (x) v_j) = coeff * v_{i|>j} (x) v_i."""
        return (self.rack.op(i, j), i), self.value(i, j)

    def specialize(self, field) -> "Cocycle":
        """The same integral sign table over another field (values must be +-1)."""
        signs = []
        for row in self.q:
            srow = []
            for x in row:
                if x == self.field.one:
                    srow.append(1)
                elif x == self.field.neg(self.field.one):
                    srow.append(-1)
                else:
                    raise CocycleError("specialization needs a +-1 valued cocycle")
            signs.append(srow)
        return Cocycle(self.rack, field, signs, grading_perms=self.grading_perms,
                       validate=False)

    def __repr__(self):
        return "Cocycle(%r, %r)" % (self.rack, self.field)


def cocycle_from_character(r: Rack, spec: CharacterSpec, field,
                           cap: int = envgroup.DEFAULT_COSET_CAP) -> Cocycle:
    """The induced-module cocycle of a sign character, basis normalized by
    section length parity.  q_{ij} = (-1)^{len_j + len_{i|>j}} rho(h_{i|>j}^{-1} x_i h_j).

    Catalog racks carrying a recorded basis-sign normalization get that final
    twist, so witness scalars match the published ones.
    """
    ctx = YDContext(r, spec, cap=cap)
    return cocycle_from_context(ctx, field)


def cocycle_from_context(ctx: YDContext, field) -> Cocycle:
    from . import catalog

    r = ctx.rack
    gens = ctx.gens
    sec = ctx.sections
    ln = ctx.section_lengths
    mu = [1] * (r.size + 1)
    for i, s in catalog.BASIS_SIGNS.get(r.name or "", {}).items():
        mu[i] = s
    signs = []
    for i in range(1, r.size + 1):
        row = []
        for j in range(1, r.size + 1):
            k = r.op(i, j)
            z = mul(mul(inverse(sec[k - 1]), gens[i - 1]), sec[j - 1])
            v = ctx.rho(z)
            if (ln[j - 1] + ln[k - 1]) % 2:
                v = -v
            row.append(v * mu[j] * mu[k])
        signs.append(row)
    return Cocycle(r, field, signs, grading_perms=gens)


# ---------------------------------------------------------------------------
# braiding matrices and the braid equation


def pair_index(d, i, j):
    """Index of the basis vector v_i (x) v_j of V (x) V, row-major, 0-based."""
    return (i - 1) * d + (j - 1)


def one_plus_c_matrix(c: Cocycle) -> ExactMatrix:
    d = c.rack.size
    f = c.field
    n = d * d
    entries = [f.zero] * (n * n)
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            col = pair_index(d, i, j)
            entries[col * n + col] = f.add(entries[col * n + col], f.one)
            (a, b), coeff = c.braiding_pair(i, j)
            row = pair_index(d, a, b)
            entries[row * n + col] = f.add(entries[row * n + col], coeff)
    return ExactMatrix(f, n, n, entries)


def braid_equation_holds(c: Cocycle) -> bool:
    """(c x 1)(1 x c)(c x 1) = (1 x c)(c x 1)(1 x c) on V^(x)3, checked monomially."""
    d = c.rack.size
    f = c.field

    def c12(word, coeff):
        (a, b), s = c.braiding_pair(word[0], word[1])
        return (a, b, word[2]), f.mul(coeff, s)

    def c23(word, coeff):
        (a, b), s = c.braiding_pair(word[1], word[2])
        return (word[0], a, b), f.mul(coeff, s)

    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                w, s = (i, j, k), f.one
                for step in (c12, c23, c12):
                    w, s = step(w, s)
                w2, s2 = (i, j, k), f.one
                for step in (c23, c12, c23):
                    w2, s2 = step(w2, s2)
                if w != w2 or s != s2:
                    return False
    return True


# ---------------------------------------------------------------------------
# quadratic profile


class QuadraticProfile:
    def __init__(self, orbit_flags, kernel_dim, dim_b2, bound_value, condition_holds):
        self.orbit_flags = orbit_flags      # list of (least pair, size, has relation)
        self.kernel_dim = kernel_dim
        self.dim_b2 = dim_b2
        self.bound_value = bound_value      # kernel bound from the orbit counts
        self.condition_holds = condition_holds

    def __repr__(self):
        return ("QuadraticProfile(kernel=%d, dim_b2=%d, bound=%s, condition=%r)"
                % (self.kernel_dim, self.dim_b2, self.bound_value, self.condition_holds))


def orbit_relation_scalar(c: Cocycle, orbit):
    """The scalar by which c^m acts on the orbit line; relation iff it equals (-1)^m."""
    f = c.field
    i0, j0 = orbit.cycle[0]
    w, s = (i0, j0), f.one
    for _ in range(orbit.size):
        (a, b), coeff = c.braiding_pair(*w)
        w, s = (a, b), f.mul(s, coeff)
    assert w == (i0, j0)
    return s


def quad_profile(c: Cocycle, cross_check: bool = True) -> QuadraticProfile:
    """Per-orbit quadratic relation flags and the kernel dimension of 1+c.

    The orbit criterion counts one kernel line for each braiding orbit on
    which c^m acts by (-1)^m; with ``cross_check`` the count is verified
    against a direct rank computation of the full d^2 x d^2 matrix of 1+c.
    """
    r = c.rack
    f = c.field
    flags = []
    kernel = 0
    for orbit in braid_orbits(r):
        scalar = orbit_relation_scalar(c, orbit)
        target = f.one if orbit.size % 2 == 0 else f.neg(f.one)
        has = scalar == target
        flags.append(((orbit.cycle[0]), orbit.size, has))
        if has:
            kernel += 1
    d = r.size
    if cross_check:
        rank, kb = rank_and_kernel(one_plus_c_matrix(c))
        if d * d - rank != kernel:
            raise RuntimeError(
                "orbit criterion (%d) disagrees with direct kernel (%d)"
                % (kernel, d * d - rank))
    dim_b2 = d * d - kernel
    bound = _kernel_bound(r, 1)
    return QuadraticProfile(flags, kernel, dim_b2,
                            bound, dim_b2 <= Fraction(d * (d + 1), 2))


def _kernel_bound(r: Rack, e: int) -> Fraction:
    d = r.size
    total = Fraction(d * e * (e + 1), 2)
    sizes = {}
    for orbit in braid_orbits(r):
        if orbit.size >= 2:
            sizes[orbit.size] = sizes.get(orbit.size, 0) + 1
    for n, ln in sizes.items():
        total += ln * e * e
    return total


def quadratic_bound(r: Rack, e: int):
    """The kernel bound for a module with e-dimensional isotypic piece and the
    weight threshold 1/e it implies: (bound, S, threshold, S <= 1/e)."""
    from .braidorbits import profile as orbit_profile

    bound = _kernel_bound(r, e)
    prof = orbit_profile(r)
    threshold = Fraction(1, e)
    return bound, prof.S, threshold, prof.S <= threshold
