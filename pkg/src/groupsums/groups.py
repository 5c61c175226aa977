"""Finite abelian groups in invariant-factor form, with table-driven arithmetic.

Every group here is a direct product Z_d1 x Z_d2 x ... x Z_dk whose factors
form a divisibility chain d1 | d2 | ... | dk (the invariant factors), so the
factor tuple is a canonical label for the isomorphism class.  An element is a
tuple (x1, ..., xk) with 0 <= xi < di, identified with the mixed-radix index

    x1 + d1*(x2 + d2*(x3 + ...))

in which the first factor varies fastest.  A subset of a group is a length-|G|
bit-vector over element indices, stored as an arbitrary-precision integer;
translating a subset by a group element is then a masked shift (a plain
rotation in the cyclic case), which is what keeps the search loops in
`groupsums.verify` branch-free and fast.

Negation and doubling tables are precomputed at construction, so element
arithmetic, 2-torsion and halving counts are table lookups.  Groups are
immutable after construction and compare equal exactly when their invariant
factors agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator

DEFAULT_MAX_ORDER = 1 << 20

_ATOM_RE = re.compile(r"Z(\d+)(?:\^(\d+))?$", re.IGNORECASE)


class GroupSpecError(ValueError):
    """Raised for malformed group descriptions or out-of-range orders."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: exponent}.

    >>> factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = 1
    return out


def _partitions(e: int) -> Iterator[tuple[int, ...]]:
    """Partitions of e in decreasing-part form, largest-first order."""

    def gen(rest: int, mx: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, mx), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return gen(e, e)


def invariant_factors(cyclic_orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical invariant factors of a direct product of cyclic groups.

    The prime-power components of all the given orders are pooled and
    regrouped: the largest factor takes the highest power of every prime,
    the next factor the second-highest, and so on.  Coprime factors
    therefore collapse and the result is the unique chain d1 | d2 | ... | dk.

    >>> invariant_factors([2, 3])
    (6,)
    >>> invariant_factors([4, 6])
    (2, 12)
    >>> invariant_factors([2, 2, 2])
    (2, 2, 2)
    """
    exps: dict[int, list[int]] = {}
    for m in cyclic_orders:
        if m < 1:
            raise ValueError(f"cyclic order {m} < 1")
        for p, e in factorize(m).items():
            exps.setdefault(p, []).append(e)
    for lst in exps.values():
        lst.sort(reverse=True)
    depth = max((len(lst) for lst in exps.values()), default=0)
    chain = []
    for i in range(depth):
        d = prod(p ** lst[i] for p, lst in exps.items() if i < len(lst))
        chain.append(d)
    return tuple(reversed(chain))


class AbelianGroup:
    """A finite abelian group Z_d1 x ... x Z_dk in invariant-factor form."""

    __slots__ = (
        "factors",
        "order",
        "full_mask",
        "neg_table",
        "double_table",
        "_strides",
        "_mask_cache",
    )

    def __init__(self, factors: Iterable[int], max_order: int = DEFAULT_MAX_ORDER):
        factors = tuple(int(d) for d in factors)
        for d in factors:
            if d < 2:
                raise GroupSpecError(f"invariant factor {d} < 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise GroupSpecError(f"{factors} is not a divisibility chain")
        order = prod(factors) if factors else 1
        if order > max_order:
            raise GroupSpecError(f"order {order} exceeds the maximum {max_order}")
        self.factors = factors
        self.order = order
        self.full_mask = (1 << order) - 1
        strides = []
        s = 1
        for d in factors:
            strides.append(s)
            s *= d
        self._strides = tuple(strides)
        self._mask_cache: dict[tuple[int, int], tuple[int, int, int]] = {}
        self.neg_table, self.double_table = self._build_tables()

    def _build_tables(self) -> tuple[list[int], list[int]]:
        factors = self.factors
        k = len(factors)
        neg = [0] * self.order
        dbl = [0] * self.order
        tup = [0] * k
        for i in range(self.order):
            ni = 0
            di = 0
            for axis in range(k - 1, -1, -1):
                d = factors[axis]
                x = tup[axis]
                ni = ni * d + (d - x) % d
                di = di * d + (2 * x) % d
            neg[i] = ni
            dbl[i] = di
            for axis in range(k):
                tup[axis] += 1
                if tup[axis] < factors[axis]:
                    break
                tup[axis] = 0
        return neg, dbl

    # -- identity and rendering ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"AbelianGroup({self.factors})"

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Alias for `factors`, the divisibility chain d1 | d2 | ... | dk."""
        return self.factors

    @property
    def spec(self) -> str:
        """Canonical textual form, e.g. "Z2 x Z4"; the trivial group is "Z1"."""
        if not self.factors:
            return "Z1"
        return " x ".join(f"Z{d}" for d in self.factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    @classmethod
    def cyclic(cls, m: int, max_order: int = DEFAULT_MAX_ORDER) -> "AbelianGroup":
        if m == 1:
            return cls((), max_order)
        return cls((m,), max_order)

    # -- element encoding --------------------------------------------------

    def index_to_tuple(self, i: int) -> tuple[int, ...]:
        t = []
        for d in self.factors:
            t.append(i % d)
            i //= d
        return tuple(t)

    def tuple_to_index(self, t: Iterable[int]) -> int:
        t = tuple(t)
        if len(t) != len(self.factors):
            raise ValueError(f"{t} has wrong arity for {self.spec}")
        i = 0
        for d, x in zip(reversed(self.factors), reversed(t)):
            if not 0 <= x < d:
                raise ValueError(f"coordinate {x} out of range for Z{d}")
            i = i * d + x
        return i

    def element(self, i: int) -> "GroupElement":
        if not 0 <= i < self.order:
            raise ValueError(f"index {i} out of range for {self.spec}")
        return GroupElement(self, i)

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield GroupElement(self, i)

    def _index_of(self, x: "GroupElement | int") -> int:
        if isinstance(x, GroupElement):
            if x.group != self:
                raise ValueError(f"element of {x.group.spec} used in {self.spec}")
            return x.index
        if not 0 <= x < self.order:
            raise ValueError(f"index {x} out of range for {self.spec}")
        return x

    # -- arithmetic ---------------------------------------------------------

    def add_index(self, i: int, j: int) -> int:
        out = 0
        for axis in range(len(self.factors) - 1, -1, -1):
            d = self.factors[axis]
            s = self._strides[axis]
            out = out * d + ((i // s) % d + (j // s) % d) % d
        return out

    def neg_index(self, i: int) -> int:
        return self.neg_table[i]

    def add(self, x: "GroupElement | int", y: "GroupElement | int") -> "GroupElement":
        return GroupElement(self, self.add_index(self._index_of(x), self._index_of(y)))

    def neg(self, x: "GroupElement | int") -> "GroupElement":
        return GroupElement(self, self.neg_table[self._index_of(x)])

    # -- bit-vector translation ----------------------------------------------

    def _axis_masks(self, axis: int, r: int) -> tuple[int, int, int]:
        """(shift, low_mask, high_mask) for adding r to coordinate `axis`.

        Within every block of B = stride*d consecutive indices, coordinates
        below d-r move up by r*stride bits and the rest wrap down by the
        complementary amount; the masks select the two parts in every block
        at once.
        """
        key = (axis, r)
        cached = self._mask_cache.get(key)
        if cached is not None:
            return cached
        d = self.factors[axis]
        s = self._strides[axis]
        block = s * d
        shift = r * s
        rep = self.full_mask // ((1 << block) - 1)
        low = ((1 << (block - shift)) - 1) * rep
        high = (((1 << shift) - 1) << (block - shift)) * rep
        out = (shift, low, high)
        self._mask_cache[key] = out
        return out

    def translate_bits(self, bits: int, g: int) -> int:
        """Image of a subset bit-vector under adding element index g."""
        if g == 0:
            return bits
        if len(self.factors) == 1:
            m = self.order
            return ((bits << g) | (bits >> (m - g))) & self.full_mask
        for axis, d in enumerate(self.factors):
            r = (g // self._strides[axis]) % d
            if r:
                shift, low, high = self._axis_masks(axis, r)
                block = self._strides[axis] * d
                bits = ((bits & low) << shift) | ((bits & high) >> (block - shift))
        return bits

    def translator(self):
        """A (bits, element_index) -> bits closure, specialised per group."""
        if self.order == 1:
            return lambda bits, g: bits
        if len(self.factors) == 1:
            m = self.order
            mask = self.full_mask

            def rotate(bits: int, g: int) -> int:
                if not g:
                    return bits
                return ((bits << g) | (bits >> (m - g))) & mask

            return rotate
        return self.translate_bits


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup, identified by its mixed-radix index."""

    group: AbelianGroup
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.group.order:
            raise ValueError(f"index {self.index} out of range for {self.group.spec}")

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.index_to_tuple(self.index)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.group.add(self, other)

    def __neg__(self) -> "GroupElement":
        return self.group.neg(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self.group.add(self, self.group.neg_table[self.group._index_of(other)])

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"<{self.coords} in {self.group.spec}>"


class GroupSubset:
    """A subset of group elements as a length-|G| bit-vector.

    Bit i is set exactly when the element with index i is in the set.  The
    JSON form of a subset is its sorted list of element indices.
    """

    __slots__ = ("group", "bits")

    def __init__(self, group: AbelianGroup, bits: int = 0):
        if bits & ~group.full_mask:
            raise ValueError("bit-vector longer than the group order")
        self.group = group
        self.bits = bits

    @classmethod
    def from_indices(cls, group: AbelianGroup, indices: Iterable[int | GroupElement]) -> "GroupSubset":
        bits = 0
        for i in indices:
            bits |= 1 << group._index_of(i)
        return cls(group, bits)

    @classmethod
    def full(cls, group: AbelianGroup) -> "GroupSubset":
        return cls(group, group.full_mask)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def _same_group(self, other: "GroupSubset") -> None:
        if self.group != other.group:
            raise ValueError(f"subset of {other.group.spec} used with {self.group.spec}")

    def __contains__(self, x: int | GroupElement) -> bool:
        return bool(self.bits >> self.group._index_of(x) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.cardinality

    def __or__(self, other: "GroupSubset") -> "GroupSubset":
        self._same_group(other)
        return GroupSubset(self.group, self.bits | other.bits)

    def __and__(self, other: "GroupSubset") -> "GroupSubset":
        self._same_group(other)
        return GroupSubset(self.group, self.bits & other.bits)

    def __sub__(self, other: "GroupSubset") -> "GroupSubset":
        self._same_group(other)
        return GroupSubset(self.group, self.bits & ~other.bits)

    def complement(self) -> "GroupSubset":
        return GroupSubset(self.group, ~self.bits & self.group.full_mask)

    def translate(self, g: int | GroupElement) -> "GroupSubset":
        """The set {a + g : a in self}."""
        return GroupSubset(self.group, self.group.translate_bits(self.bits, self.group._index_of(g)))

    def negated(self) -> "GroupSubset":
        """The set {-a : a in self}."""
        return self.map_indices(self.group.neg_table)

    def map_indices(self, perm) -> "GroupSubset":
        bits = self.bits
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << perm[low.bit_length() - 1]
            bits ^= low
        return GroupSubset(self.group, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupSubset):
            return NotImplemented
        return self.group == other.group and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.group, self.bits))

    def __repr__(self) -> str:
        return f"GroupSubset({self.group.spec}, {{{', '.join(map(str, self.indices()))}}})"


def parse_group_spec(text: str, max_order: int = DEFAULT_MAX_ORDER) -> AbelianGroup:
    """Parse "Z<n>" atoms joined by "x", with optional "^e" exponents.

    The result is always in canonical invariant-factor form, so coprime
    factors collapse:

    >>> parse_group_spec("Z9").factors
    (9,)
    >>> parse_group_spec("Z2^3").factors
    (2, 2, 2)
    >>> parse_group_spec("Z2xZ3").factors
    (6,)
    >>> parse_group_spec("Z2 x Z4").factors
    (2, 4)
    """
    compact = text.replace(" ", "").replace("\t", "")
    if not compact:
        raise GroupSpecError("empty group spec")
    orders: list[int] = []
    for atom in re.split("[xX]", compact):
        m = _ATOM_RE.fullmatch(atom)
        if m is None:
            raise GroupSpecError(f"bad group atom {atom!r} in {text!r}")
        n = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        if n < 2:
            raise GroupSpecError(f"cyclic order {n} < 2 in {text!r}")
        if e < 1:
            raise GroupSpecError(f"exponent {e} < 1 in {text!r}")
        orders.extend([n] * e)
        if prod(orders) > max_order:
            raise GroupSpecError(f"order of {text!r} exceeds the maximum {max_order}")
    return AbelianGroup(invariant_factors(orders), max_order)


def enumerate_groups_of_order(n: int, max_order: int = DEFAULT_MAX_ORDER) -> list[AbelianGroup]:
    """All abelian groups of order n, one per isomorphism class.

    Classes are produced by choosing a partition of each prime exponent,
    and listed deterministically: fewest invariant factors first, then by
    the factor tuple.

    >>> [g.factors for g in enumerate_groups_of_order(8)]
    [(8,), (2, 4), (2, 2, 2)]
    >>> [g.factors for g in enumerate_groups_of_order(12)]
    [(12,), (2, 6)]
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > max_order:
        raise GroupSpecError(f"order {n} exceeds the maximum {max_order}")
    primes = sorted(factorize(n).items())
    pools: list[list[int]] = [[]]
    for p, e in primes:
        pools = [base + [p**part_e for part_e in part] for base in pools for part in _partitions(e)]
    groups = [AbelianGroup(invariant_factors(orders), max_order) for orders in pools]
    groups.sort(key=lambda g: (len(g.factors), g.factors))
    return groups


def torsion_two(G: AbelianGroup) -> GroupSubset:
    """The subgroup {x : 2x = 0} of elements of order at most 2."""
    bits = 0
    for i, d in enumerate(G.double_table):
        if d == 0:
            bits |= 1 << i
    return GroupSubset(G, bits)


def count_halvings(G: AbelianGroup, g: GroupElement | int) -> int:
    """How many x in G satisfy 2x = g; always 0 or the 2-torsion size."""
    target = G._index_of(g)
    return sum(1 for d in G.double_table if d == target)


def subgroup_generated(G: AbelianGroup, S: GroupSubset) -> GroupSubset:
    """Closure of S together with 0 and all inverses, i.e. the subgroup <S>."""
    if S.group != G:
        raise ValueError(f"subset of {S.group.spec} used with {G.spec}")
    tr = G.translator()
    closure = 1
    for s in S.indices():
        if closure >> s & 1:
            continue
        shifted = tr(closure, s)
        while shifted & ~closure:
            closure |= shifted
            shifted = tr(shifted, s)
    return GroupSubset(G, closure)


def is_generating(G: AbelianGroup, S: GroupSubset) -> bool:
    return subgroup_generated(G, S).bits == G.full_mask


def cyclic_units(m: int) -> list[int]:
    """Multipliers coprime to m; these are the automorphisms of Z_m."""
    return [u for u in range(1, m) if gcd(u, m) == 1]


def unit_permutation(G: AbelianGroup, u: int) -> tuple[int, ...]:
    """Index permutation of multiplication by the unit u on a cyclic group."""
    if not G.is_cyclic:
        raise ValueError(f"{G.spec} is not cyclic")
    m = G.order
    if gcd(u, m) != 1:
        raise ValueError(f"{u} is not a unit mod {m}")
    return tuple((u * i) % m for i in range(m))
