"""Exact finite permutation-group arithmetic.

Elements are permutations of {0, ..., degree-1}; a group stores its complete
element table together with a multiplication table over element ordinals.

Conventions (fixed, everything else in the package is written against them):

* Composition applies the left factor first: ``(p * q)(i) == q[p[i]]``.
* Cycle strings use 1-based points and the *rightmost* cycle acts first, so
  ``"(1 2)(2 3)"`` is the 3-cycle ``1 -> 2 -> 3 -> 1``.
* Conjugation is the right action ``x^g = g^-1 * x * g``.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_ORDER_CAP = 2000
ORDER_CAP_ENV = "GROUPLAB_ORDER_CAP"


class GroupError(Exception):
    """Base error for group construction and queries."""


class ParseError(GroupError):
    """Malformed cycle text or group spec."""


class OrderCapExceeded(GroupError):
    """Generated group would exceed the configured order cap."""


def order_cap() -> int:
    """Active order cap; the GROUPLAB_ORDER_CAP env var overrides the default."""
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise GroupError(f"bad {ORDER_CAP_ENV} value: {raw!r}") from exc
    if cap < 1:
        raise GroupError(f"{ORDER_CAP_ENV} must be positive, got {cap}")
    return cap


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: multiplicity}."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and list(factorize(n)) == [n]


def prime_power(n: int) -> tuple[int, int] | None:
    """(q, m) with n == q**m for a prime q and m >= 1, else None."""
    f = factorize(n) if n > 1 else {}
    if len(f) != 1:
        return None
    [(q, m)] = f.items()
    return q, m


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation(tuple):
    """A bijection on {0..degree-1}, stored as the tuple of images."""

    def __new__(cls, images: Iterable[int]) -> "Permutation":
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ParseError(f"images are not a bijection: {images}")
        return super().__new__(cls, images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        # left factor acts first
        if len(self) != len(other):
            raise GroupError("degree mismatch in composition")
        return Permutation(other[i] for i in self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycle_string(self) -> str:
        """1-based disjoint cycle notation; "()" for the identity."""
        seen = [False] * len(self)
        parts = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self[j]
            parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
        return "".join(parts) if parts else "()"

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as "(1 2 3)(4 5)".

        Points are 1-based and must not exceed the degree.  Cycles need not be
        disjoint; the rightmost cycle is applied first.  Empty text (or "()")
        parses to the identity.
        """
        if degree < 0:
            raise ParseError("degree must be non-negative")
        stripped = text.strip()
        if not stripped:
            return cls.identity(degree)
        leftover = _CYCLE_RE.sub("", stripped)
        if leftover.strip():
            raise ParseError(f"malformed cycle text: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
            points = []
            for tok in tokens:
                try:
                    p = int(tok)
                except ValueError as exc:
                    raise ParseError(f"bad point {tok!r} in {text!r}") from exc
                if not 1 <= p <= degree:
                    raise ParseError(f"point {p} out of range 1..{degree}")
                points.append(p - 1)
            if len(set(points)) != len(points):
                raise ParseError(f"repeated point within one cycle: {text!r}")
            cycles.append(points)
        result = cls.identity(degree)
        for points in reversed(cycles):  # rightmost cycle acts first
            if len(points) < 2:
                continue
            images = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
            result = result * cls(images)
        return result


@dataclass
class BasicInvariants:
    order: int
    is_abelian: bool
    is_cyclic: bool
    prime_divisors: tuple[int, ...]


class FiniteGroup:
    """A concrete finite permutation group with a full element table.

    Immutable after construction; internal tables (multiplication,
    conjugation, element orders, subgroup lattice) are cached lazily.
    """

    def __init__(
        self,
        degree: int,
        elements: Sequence[Permutation],
        generators: Sequence[Permutation],
        name: str = "G",
        _trusted: bool = False,
    ):
        self.degree = degree
        self.elements = list(elements)
        self.generators = list(generators)
        self.name = name
        self.element_index = {e: i for i, e in enumerate(self.elements)}
        if len(self.element_index) != len(self.elements):
            raise GroupError("duplicate elements in element table")
        ident = Permutation.identity(degree)
        if ident not in self.element_index:
            raise GroupError("identity missing from element table")
        self.identity_ordinal = self.element_index[ident]
        if not _trusted:
            self._check_closure()
        self._mult: list[list[int]] | None = None
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None
        self._conj: dict[int, list[int]] = {}
        self._lattice = None
        self._quotients: dict[int, tuple["FiniteGroup", "Epimorphism"]] = {}
        self._derived_mask: int | None = None
        self._class_cache: dict[str, bool] = {}
        self._sylow_masks: dict[int, int] = {}

    # -- elementary structure ------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order}, degree={self.degree})"

    def _check_closure(self) -> None:
        for x in self.elements:
            if x.inverse() not in self.element_index:
                raise GroupError(f"element table not inverse-closed at {x}")
        for x in self.elements:
            for g in self.generators:
                if x * g not in self.element_index:
                    raise GroupError("element table not closed under composition")

    @property
    def mult(self) -> list[list[int]]:
        """Multiplication table over ordinals, left factor first."""
        if self._mult is None:
            idx = self.element_index
            els = self.elements
            self._mult = [[idx[a * b] for b in els] for a in els]
        return self._mult

    @property
    def inv(self) -> list[int]:
        if self._inv is None:
            self._inv = [self.element_index[e.inverse()] for e in self.elements]
        return self._inv

    def op(self, i: int, j: int) -> int:
        return self.mult[i][j]

    def conj_table(self, g: int) -> list[int]:
        """Ordinal map x -> g^-1 x g."""
        tab = self._conj.get(g)
        if tab is None:
            mult = self.mult
            gi = self.inv[g]
            row = mult[gi]
            tab = [mult[row[x]][g] for x in range(self.order)]
            self._conj[g] = tab
        return tab

    @property
    def element_orders(self) -> list[int]:
        if self._orders is None:
            mult = self.mult
            e = self.identity_ordinal
            orders = []
            for x in range(self.order):
                y, n = x, 1
                while y != e:
                    y = mult[y][x]
                    n += 1
                orders.append(n)
            self._orders = orders
        return self._orders

    def exponent(self) -> int:
        """Least common multiple of the element orders."""
        return math.lcm(*self.element_orders) if self.order else 1

    def is_abelian(self) -> bool:
        mult = self.mult
        n = self.order
        return all(mult[i][j] == mult[j][i] for i in range(n) for j in range(i + 1, n))

    def is_cyclic(self) -> bool:
        return self.order in self.element_orders or self.order == 1

    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(sorted(factorize(self.order))) if self.order > 1 else ()

    def basic_invariants(self) -> BasicInvariants:
        return BasicInvariants(
            order=self.order,
            is_abelian=self.is_abelian(),
            is_cyclic=self.is_cyclic(),
            prime_divisors=self.prime_divisors(),
        )

    # -- subgroup masks ------------------------------------------------------
    # Subgroup element sets are bitmasks over element ordinals throughout the
    # package; bit i set means elements[i] belongs to the set.

    def closure_mask(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by the given ordinals."""
        mult = self.mult
        e = self.identity_ordinal
        gens = list(gens)
        mask = 1 << e
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mult[x][g]
                    if not mask >> y & 1:
                        mask |= 1 << y
                        new.append(y)
            frontier = new
        return mask

    def mask_members(self, mask: int) -> list[int]:
        return [i for i in range(self.order) if mask >> i & 1]

    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def conjugate_mask(self, mask: int, g: int) -> int:
        tab = self.conj_table(g)
        out = 0
        for i in self.mask_members(mask):
            out |= 1 << tab[i]
        return out

    def derived_mask(self) -> int:
        """Bitmask of the derived (commutator) subgroup."""
        if self._derived_mask is None:
            mult, inv = self.mult, self.inv
            n = self.order
            comms = set()
            for x in range(n):
                for y in range(n):
                    comms.add(mult[mult[inv[x]][inv[y]]][mult[x][y]])
            self._derived_mask = self.closure_mask(comms)
        return self._derived_mask

    def mask_is_normal(self, mask: int) -> bool:
        return all(self.conjugate_mask(mask, g) == mask
                   for g in (self.element_index[p] for p in self.generators))

    def sylow_mask(self, p: int) -> int:
        """Bitmask of one Sylow p-subgroup, by normalizer extension.

        Deterministic but representative-only; the lattice module picks the
        canonical (least-id) representative when a lattice is in hand.
        """
        cached = self._sylow_masks.get(p)
        if cached is not None:
            return cached
        target = p ** factorize(self.order).get(p, 0)
        orders = self.element_orders
        mask = 1 << self.identity_ordinal
        size = 1
        while size < target:
            # a p-element normalizing the current p-subgroup, outside it
            members = self.mask_members(mask)
            found = None
            for g in range(self.order):
                if mask >> g & 1:
                    continue
                pp = prime_power(orders[g])
                if pp is None or pp[0] != p:
                    continue
                tab = self.conj_table(g)
                if all(mask >> tab[x] & 1 for x in members):
                    found = g
                    break
            if found is None:
                raise GroupError("sylow extension failed")  # cannot happen
            mask = self.closure_mask(members + [found])
            size = bin(mask).count("1")
        self._sylow_masks[p] = mask
        return mask

    def lattice(self):
        """The full subgroup lattice of this group (built once, cached)."""
        if self._lattice is None:
            from .lattice import all_subgroups

            self._lattice = all_subgroups(self)
        return self._lattice


@dataclass
class Epimorphism:
    """Surjective homomorphism, stored as a per-element image table."""

    source: FiniteGroup
    target: FiniteGroup
    table: tuple[int, ...]

    def __call__(self, ordinal: int) -> int:
        return self.table[ordinal]

    def kernel_mask(self) -> int:
        t = self.target.identity_ordinal
        out = 0
        for i, img in enumerate(self.table):
            if img == t:
                out |= 1 << i
        return out

    def verify(self) -> None:
        """Exhaustive homomorphism and surjectivity check."""
        sm, tm, t = self.source.mult, self.target.mult, self.table
        n = self.source.order
        for i in range(n):
            ti = t[i]
            for j in range(n):
                if t[sm[i][j]] != tm[ti][t[j]]:
                    raise GroupError("image table is not a homomorphism")
        if len(set(t)) != self.target.order:
            raise GroupError("image table is not surjective")


# -- construction ------------------------------------------------------------


def generate(degree: int, gens: Sequence[Permutation], name: str = "G") -> FiniteGroup:
    """Closure of the generators: BFS from the identity, generator order fixed.

    The element ordering is deterministic for a fixed generator list.
    """
    for g in gens:
        if g.degree != degree:
            raise GroupError(f"generator degree {g.degree} != {degree}")
    cap = order_cap()
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > cap:
                        raise OrderCapExceeded(
                            f"order of {name} exceeds cap {cap}")
        frontier = new
    return FiniteGroup(degree, elements, gens, name=name, _trusted=True)


def parse_permutation(cycles: str, degree: int) -> Permutation:
    return Permutation.parse(cycles, degree)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """External direct product acting on disjoint point sets."""
    if G.order * H.order > order_cap():
        raise OrderCapExceeded(
            f"|{G.name} x {H.name}| = {G.order * H.order} exceeds cap")
    d = G.degree + H.degree
    gens = [Permutation(tuple(p) + tuple(range(G.degree, d))) for p in G.generators]
    gens += [Permutation(tuple(range(G.degree)) + tuple(q + G.degree for q in p))
             for p in H.generators]
    return generate(d, gens, name=f"{G.name}x{H.name}")


def _perm_from_map(images: dict[int, int], degree: int) -> Permutation:
    return Permutation(images.get(i, i) for i in range(degree))


def _cyclic_gen(n: int) -> Permutation:
    return Permutation([(i + 1) % n for i in range(n)])


def _unit_perms(m: int) -> list[Permutation]:
    return [Permutation([(u * i) % m for i in range(m)])
            for u in range(2, m) if math.gcd(u, m) == 1]


def named_group(name: str, args: Sequence[int]) -> FiniteGroup:
    """Builders for the stock families used throughout the corpus."""
    args = list(args)
    if name == "cyclic":
        (n,) = args
        if n < 1:
            raise GroupError("cyclic(n) needs n >= 1")
        if n == 1:
            return generate(1, [], name="Z1")
        return generate(n, [_cyclic_gen(n)], name=f"Z{n}")
    if name == "elem_abelian":
        p, k = args
        if not is_prime(p) or k < 1:
            raise GroupError("elem_abelian(p, k) needs prime p and k >= 1")
        G = named_group("cyclic", [p])
        for _ in range(k - 1):
            G = direct_product(G, named_group("cyclic", [p]))
        G.name = f"E{p}^{k}"
        return G
    if name == "dihedral":
        (n,) = args
        if n < 1:
            raise GroupError("dihedral(n) needs n >= 1")
        if n == 1:
            return generate(2, [Permutation([1, 0])], name="D1")
        if n == 2:
            G = direct_product(named_group("cyclic", [2]), named_group("cyclic", [2]))
            G.name = "D2"
            return G
        rot = _cyclic_gen(n)
        refl = Permutation([(-i) % n for i in range(n)])
        return generate(n, [rot, refl], name=f"D{n}")
    if name == "dicyclic":
        (n,) = args
        if n < 2:
            raise GroupError("dicyclic(n) needs n >= 2")
        return _dicyclic(n)
    if name == "sym":
        (n,) = args
        if n < 1:
            raise GroupError("sym(n) needs n >= 1")
        if n == 1:
            return generate(1, [], name="S1")
        gens = [Permutation([1, 0] + list(range(2, n))), _cyclic_gen(n)]
        return generate(n, gens, name=f"S{n}")
    if name == "alt":
        (n,) = args
        if n < 3:
            return generate(max(n, 1), [], name=f"A{n}")
        three = _perm_from_map({0: 1, 1: 2, 2: 0}, n)
        gens = [three]
        if n > 3:
            if n % 2:  # the n-cycle is even
                gens.append(_cyclic_gen(n))
            else:  # use the (n-1)-cycle fixing point 1
                gens.append(_perm_from_map(
                    {i: 1 + (i % (n - 1)) for i in range(1, n)}, n))
        return generate(n, gens, name=f"A{n}")
    if name == "holomorph_cyclic":
        (m,) = args
        if m < 2:
            raise GroupError("holomorph_cyclic(m) needs m >= 2")
        gens = [_cyclic_gen(m)] + _unit_perms(m)
        return generate(m, gens, name=f"Hol(Z{m})")
    if name == "frobenius_metacyclic":
        p, q, n = args
        if not is_prime(p) or not is_prime(q) or n < 1:
            raise GroupError("frobenius_metacyclic(p, q, n) needs primes p, q and n >= 1")
        qn = q**n
        if (p - 1) % qn:
            raise GroupError(f"{q}^{n} does not divide {p - 1}")
        u = _multiplier_of_order(p, qn)
        gens = [_cyclic_gen(p), Permutation([(u * i) % p for i in range(p)])]
        return generate(p, gens, name=f"F({p},{q}^{n})")
    raise GroupError(f"unknown builder {name!r}")


def _multiplier_of_order(p: int, d: int) -> int:
    """Least unit mod p of multiplicative order exactly d (d | p-1)."""
    for u in range(2, p):
        x, n = u, 1
        while x != 1:
            x = x * u % p
            n += 1
        if n == d:
            return u
    raise GroupError(f"no unit of order {d} mod {p}")


def _dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n via its right regular representation."""
    if 4 * n > order_cap():
        raise OrderCapExceeded(f"dicyclic({n}) exceeds cap")
    # elements (i, j) = a^i b^j with a^(2n)=1, b^2=a^n, b^-1 a b = a^-1
    els = [(i, j) for j in range(2) for i in range(2 * n)]
    pos = {e: x for x, e in enumerate(els)}

    def mul(e1, e2):
        i1, j1 = e1
        i2, j2 = e2
        if j1 == 0:
            i, j = i1 + i2, j2
        else:
            i, j = i1 - i2, 1 + j2
        if j >= 2:
            i, j = i + n, j - 2
        return (i % (2 * n), j)

    def right_mul(g):
        return Permutation(pos[mul(e, g)] for e in els)

    return generate(4 * n, [right_mul((1, 0)), right_mul((0, 1))], name=f"Dic{n}")


def quotient(G: FiniteGroup, members) -> tuple[FiniteGroup, Epimorphism]:
    """Quotient by a normal subgroup, realized as the coset action.

    `members` is a bitmask or iterable of element ordinals of a normal
    subgroup N.  The quotient acts on the cosets of N (degree = index); the
    returned epimorphism is verified exhaustively and its kernel checked
    against N.
    """
    if isinstance(members, int):
        nmask = members
    else:
        nmask = 0
        for i in members:
            nmask |= 1 << i
    nmems = G.mask_members(nmask)
    if not nmems or G.closure_mask(nmems) != nmask:
        raise GroupError("quotient: member set is not a subgroup")
    if not G.mask_is_normal(nmask):
        raise GroupError("quotient: subgroup is not normal")
    mult = G.mult
    n = G.order
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for m in nmems:
            coset_of[mult[x][m]] = c
    index = len(reps)

    images: dict[Permutation, int] = {}
    q_elements: list[Permutation] = []
    table = []
    for g in range(n):
        perm = Permutation(coset_of[mult[r][g]] for r in reps)
        if perm not in images:
            images[perm] = len(q_elements)
            q_elements.append(perm)
        table.append(images[perm])
    gen_perms = []
    for p in G.generators:
        perm = q_elements[table[G.element_index[p]]]
        if perm not in gen_perms and not perm.is_identity():
            gen_perms.append(perm)
    Q = FiniteGroup(index, q_elements, gen_perms,
                    name=f"{G.name}/N{bin(nmask).count('1')}", _trusted=True)
    epi = Epimorphism(G, Q, tuple(table))
    epi.verify()
    if epi.kernel_mask() != nmask:
        raise GroupError("quotient: kernel does not match N")
    return Q, epi


def quotient_cached(G: FiniteGroup, nmask: int) -> tuple[FiniteGroup, Epimorphism]:
    hit = G._quotients.get(nmask)
    if hit is None:
        hit = quotient(G, nmask)
        G._quotients[nmask] = hit
    return hit


def exponent(G: FiniteGroup) -> int:
    return G.exponent()


def basic_invariants(G: FiniteGroup) -> BasicInvariants:
    return G.basic_invariants()


# -- group-spec files --------------------------------------------------------


def group_from_spec(spec: dict) -> FiniteGroup:
    """Build a group from a JSON group-spec.

    Forms: {"kind": "generators", "degree": n, "cycles": [...]},
    {"kind": "named", "name": ..., "args": [...]},
    {"kind": "direct", "parts": [<spec>, <spec>, ...]}.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("group spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "generators":
        degree = spec.get("degree")
        cycles = spec.get("cycles", [])
        if not isinstance(degree, int) or degree < 0:
            raise ParseError("generators spec needs an integer 'degree'")
        gens = [Permutation.parse(c, degree) for c in cycles]
        return generate(degree, gens, name=spec.get("name", f"gen{degree}"))
    if kind == "named":
        return named_group(spec.get("name", ""), spec.get("args", []))
    if kind == "direct":
        parts = spec.get("parts", [])
        if not parts:
            raise ParseError("direct spec needs at least one part")
        G = group_from_spec(parts[0])
        for sub in parts[1:]:
            G = direct_product(G, group_from_spec(sub))
        return G
    raise ParseError(f"unknown group spec kind {kind!r}")
