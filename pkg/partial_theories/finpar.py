"""Finite ordinals, total and partial functions between them, and cospans.

Ordinals are 1-based, ``[m] = {1, ..., m}``. Composition is written in
diagrammatic order throughout: ``f.compose(g)`` and ``compose_pfn(f, g)`` run
``f`` first.
"""
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .messages import SortError


def _check_interface(ok: bool, what: str, *args):
    if not ok:
        raise SortError("interface-mismatch", what.format(*args))


@dataclass(frozen=True)
class FinFun:
    """A function ``[src] -> [tgt]``"""
    src: int
    tgt: int
    image: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        _check_interface(len(self.image) == self.src,
                         "image of length {} for source {}", len(self.image), self.src)
        for value in self.image:
            _check_interface(1 <= value <= self.tgt, "value {} outside [{}]", value, self.tgt)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @classmethod
    def identity(cls, n: int) -> "FinFun":
        """The identity on ``[n]``"""
        return cls(n, n, range(1, n + 1))

    def is_surjective(self) -> bool:
        """Whether every element of the target is hit"""
        return len(set(self.image)) == self.tgt

    def is_injective(self) -> bool:
        """Whether no two elements share an image"""
        return len(set(self.image)) == self.src

    def compose(self, other: "FinFun") -> "FinFun":
        """``self`` then ``other``"""
        _check_interface(self.tgt == other.src, "target {} against source {}", self.tgt, other.src)
        return FinFun(self.src, other.tgt, (other(v) for v in self.image))

    def tensor(self, other: "FinFun") -> "FinFun":
        """Disjoint union, ``self`` on the first block and ``other`` shifted after it"""
        image = self.image + tuple(v + self.tgt for v in other.image)
        return FinFun(self.src + other.src, self.tgt + other.tgt, image)

    def __str__(self):
        return "[{}]".format(",".join(str(v) for v in self.image))


@dataclass(frozen=True)
class FinPfn:
    """A partial function ``[src] -> [tgt]``; ``None`` marks an undefined position"""
    src: int
    tgt: int
    mapping: Tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        _check_interface(len(self.mapping) == self.src,
                         "mapping of length {} for source {}", len(self.mapping), self.src)
        for value in self.mapping:
            if value is not None:
                _check_interface(1 <= value <= self.tgt, "value {} outside [{}]", value, self.tgt)

    def __call__(self, i: int) -> Optional[int]:
        return self.mapping[i - 1]

    @classmethod
    def identity(cls, n: int) -> "FinPfn":
        return cls(n, n, range(1, n + 1))

    @classmethod
    def nowhere(cls, src: int, tgt: int) -> "FinPfn":
        """The partial function defined nowhere"""
        return cls(src, tgt, (None,) * src)

    @classmethod
    def from_fun(cls, f: FinFun) -> "FinPfn":
        """A total function seen as a partial one"""
        return cls(f.src, f.tgt, f.image)

    @property
    def dom(self) -> frozenset:
        """Ordinals where the function is defined"""
        return frozenset(i for i, v in enumerate(self.mapping, 1) if v is not None)

    def is_total(self) -> bool:
        """Whether the function is defined everywhere"""
        return None not in self.mapping

    def restrict(self, subset) -> "FinPfn":
        """Undefine every position outside ``subset``"""
        return FinPfn(self.src, self.tgt,
                      (v if i in subset else None for i, v in enumerate(self.mapping, 1)))

    def __str__(self):
        return "{{{}}}".format(", ".join(
            "{}->{}".format(i, "undef" if v is None else v) for i, v in enumerate(self.mapping, 1)))


def compose_pfn(f: FinPfn, g: FinPfn) -> FinPfn:
    """``f`` then ``g``; defined at ``i`` iff ``f`` is, and ``g`` is at ``f(i)``"""
    _check_interface(f.tgt == g.src, "target {} against source {}", f.tgt, g.src)
    return FinPfn(f.src, g.tgt, (None if v is None else g(v) for v in f.mapping))


def tensor_pfn(f: FinPfn, g: FinPfn) -> FinPfn:
    """Disjoint union of partial functions"""
    shifted = tuple(None if v is None else v + f.tgt for v in g.mapping)
    return FinPfn(f.src + g.src, f.tgt + g.tgt, f.mapping + shifted)


def domain_idempotent(f: FinPfn) -> FinPfn:
    """The partial identity on the domain of ``f``"""
    return FinPfn(f.src, f.src, (None if v is None else i for i, v in enumerate(f.mapping, 1)))


def leq_pfn(f: FinPfn, g: FinPfn) -> bool:
    """``f <= g``: ``g`` is defined wherever ``f`` is, and agrees with it there"""
    _check_interface((f.src, f.tgt) == (g.src, g.tgt), "{}->{} against {}->{}",
                     f.src, f.tgt, g.src, g.tgt)
    return all(v is None or v == w for v, w in zip(f.mapping, g.mapping))


class TupleSpace:
    """Lexicographic 1-based numbering of the tuples of a product of finite sets.

    Coordinates are 0-based elements, as in model files.
    """

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(sizes)
        size = 1
        for s in self.sizes:
            size *= s
        self.size = size

    def __len__(self):
        return self.size

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(s) for s in self.sizes))

    def index(self, elements: Sequence[int]) -> int:
        """1-based position of a 0-based tuple"""
        position = 0
        for value, s in zip(elements, self.sizes):
            position = position * s + value
        return position + 1

    def tuple_at(self, index: int) -> Tuple[int, ...]:
        """Inverse of :meth:`index`"""
        position = index - 1
        result = []
        for s in reversed(self.sizes):
            position, value = divmod(position, s)
            result.append(value)
        return tuple(reversed(result))

    def __eq__(self, other):
        return isinstance(other, TupleSpace) and self.sizes == other.sizes

    def __hash__(self):
        return hash(self.sizes)


def product_pfn(f: FinPfn, g: FinPfn) -> FinPfn:
    """Cartesian product ``f x g`` on lexicographically numbered pairs.

    Defined at ``(x, y)`` iff ``f`` is defined at ``x`` and ``g`` at ``y``.
    """
    mapping = []
    for fx in f.mapping:
        for gy in g.mapping:
            if fx is None or gy is None:
                mapping.append(None)
            else:
                mapping.append((fx - 1) * g.tgt + gy)
    return FinPfn(f.src * g.src, f.tgt * g.tgt, mapping)


def pushout(f: FinFun, g: FinFun) -> Tuple[int, FinFun, FinFun]:
    """Pushout of the span ``k1 <-f- z -g-> k2``.

    The apex is ``k1 + k2`` modulo ``f(i) ~ g(i)``; classes are numbered in the
    order of their smallest member, the ``k1`` elements counting first.
    """
    _check_interface(f.src == g.src, "span legs with sources {} and {}", f.src, g.src)
    k1, k2 = f.tgt, g.tgt
    classes = UnionFind(range(1, k1 + k2 + 1))
    for a, b in zip(f.image, g.image):
        classes.union(a, k1 + b)
    numbering = {}
    for element in range(1, k1 + k2 + 1):
        numbering.setdefault(classes[element], len(numbering) + 1)
    k = len(numbering)
    inj1 = FinFun(k1, k, (numbering[classes[e]] for e in range(1, k1 + 1)))
    inj2 = FinFun(k2, k, (numbering[classes[k1 + e]] for e in range(1, k2 + 1)))
    return k, inj1, inj2


def _first_occurrence(legs: Sequence[FinFun], apex: int) -> Tuple[int, ...]:
    """Relabelling of the apex numbering elements by first occurrence along ``legs``"""
    relabel = {}
    for leg in legs:
        for value in leg.image:
            relabel.setdefault(value, len(relabel) + 1)
    for value in range(1, apex + 1):
        relabel.setdefault(value, len(relabel) + 1)
    return tuple(relabel[v] for v in range(1, apex + 1))


def _relabel(leg: FinFun, permutation: Tuple[int, ...]) -> FinFun:
    return FinFun(leg.src, leg.tgt, (permutation[v - 1] for v in leg.image))


@dataclass(frozen=True)
class RawCospan:
    """A cospan ``[m] -left-> [k] <-right- [n]`` with no condition on the legs"""
    left: FinFun
    right: FinFun

    def __post_init__(self):
        _check_interface(self.left.tgt == self.right.tgt, "legs into apexes {} and {}",
                         self.left.tgt, self.right.tgt)

    @property
    def m(self) -> int:
        return self.left.src

    @property
    def n(self) -> int:
        return self.right.src

    @property
    def k(self) -> int:
        return self.left.tgt

    @classmethod
    def identity(cls, n: int) -> "RawCospan":
        return cls(FinFun.identity(n), FinFun.identity(n))

    def __str__(self):
        return "m={} n={} k={} left={} right={}".format(self.m, self.n, self.k, self.left, self.right)


@dataclass(frozen=True)
class SurjCospan(RawCospan):
    """Canonical cospan with surjective left leg: an arrow of the free DCR prop"""

    def __post_init__(self):
        super().__post_init__()
        if not self.left.is_surjective():
            raise SortError("not-surjective", self.left)
        if _first_occurrence((self.left,), self.k) != tuple(range(1, self.k + 1)):
            raise SortError("interface-mismatch",
                            "apex of {} is not numbered by first occurrence".format(self))

    @classmethod
    def identity(cls, n: int) -> "SurjCospan":
        return cls(FinFun.identity(n), FinFun.identity(n))


def cospan_canonicalize(c: RawCospan) -> SurjCospan:
    """Renumber the apex by first occurrence; the left leg must be surjective"""
    if not c.left.is_surjective():
        raise SortError("not-surjective", c.left)
    permutation = _first_occurrence((c.left,), c.k)
    return SurjCospan(_relabel(c.left, permutation), _relabel(c.right, permutation))


def raw_cospan_canonicalize(c: RawCospan) -> RawCospan:
    """Representative of the isomorphism class of an arbitrary cospan"""
    permutation = _first_occurrence((c.left, c.right), c.k)
    return RawCospan(_relabel(c.left, permutation), _relabel(c.right, permutation))


def _compose_legs(c1: RawCospan, c2: RawCospan) -> RawCospan:
    _check_interface(c1.n == c2.m, "cospan {}->{} against {}->{}", c1.m, c1.n, c2.m, c2.n)
    _k, inj1, inj2 = pushout(c1.right, c2.left)
    return RawCospan(c1.left.compose(inj1), c2.right.compose(inj2))


def cospan_compose(c1: SurjCospan, c2: SurjCospan) -> SurjCospan:
    """``c1`` then ``c2``, by pushout over the shared interface, in canonical form"""
    return cospan_canonicalize(_compose_legs(c1, c2))


def raw_cospan_compose(c1: RawCospan, c2: RawCospan) -> RawCospan:
    """Like :func:`cospan_compose`, keeping apex elements neither leg reaches"""
    return raw_cospan_canonicalize(_compose_legs(c1, c2))


def cospan_tensor(c1: SurjCospan, c2: SurjCospan) -> SurjCospan:
    """Side by side, apex and interfaces placed as disjoint unions"""
    return cospan_canonicalize(RawCospan(c1.left.tensor(c2.left), c1.right.tensor(c2.right)))


def raw_cospan_tensor(c1: RawCospan, c2: RawCospan) -> RawCospan:
    return raw_cospan_canonicalize(RawCospan(c1.left.tensor(c2.left), c1.right.tensor(c2.right)))


def all_funs(m: int, n: int) -> Iterator[FinFun]:
    """Every function ``[m] -> [n]`` in lexicographic order"""
    for image in itertools.product(range(1, n + 1), repeat=m):
        yield FinFun(m, n, image)


def all_pfns(m: int, n: int) -> Iterator[FinPfn]:
    """Every partial function ``[m] -> [n]``, undefined entries ordered first"""
    for mapping in itertools.product((None,) + tuple(range(1, n + 1)), repeat=m):
        yield FinPfn(m, n, mapping)


def _restricted_growth(m: int) -> Iterator[Tuple[int, ...]]:
    def extend(prefix, top):
        if len(prefix) == m:
            yield prefix
            return
        for value in range(1, top + 2):
            yield from extend(prefix + (value,), max(top, value))
    yield from extend((), 0)


def all_surj_cospans(m: int, n: int) -> Iterator[SurjCospan]:
    """Every canonical cospan ``m -> n`` with surjective left leg"""
    for left in _restricted_growth(m):
        k = max(left, default=0)
        for right in itertools.product(range(1, k + 1), repeat=n):
            yield SurjCospan(FinFun(m, k, left), FinFun(n, k, right))
