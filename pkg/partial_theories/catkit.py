"""
Finite categories
=================
Categories are given by explicit composition tables; composition is written
diagrammatically, ``compose(f, g)`` runs ``f`` first. Limits are found by
exhaustive cone search with the universal property checked against every
other cone, so only tiny categories are in reach.

Category files
--------------
```
objects X, Y
1X : X -> X
1Y : Y -> Y
f : X -> Y
id X = 1X
id Y = 1Y
```
Composites with identities are implied; others are written ``g . f = h``
(``f`` first).

Concrete restriction category files
-----------------------------------
```
sizes 1 2
arrow f : 2 -> 1
  0 -> 0
  1 -> undef
```
"""
import itertools
import logging
from collections import namedtuple
from typing import (Dict, Hashable, Iterable, Iterator, List, Mapping, Optional,
                    Sequence, Tuple)

from lark import Lark
from lark.exceptions import UnexpectedInput

from .diagram import syntax_error
from .finpar import FinFun, FinPfn, all_funs, all_pfns, compose_pfn, domain_idempotent
from .messages import CategoryError, Location, PftError

logger = logging.getLogger(__name__)

Cone = namedtuple("Cone", ("apex", "legs"))
Embedding = namedtuple("Embedding", ("source", "target", "objects", "arrows"))


class FinCat:
    """A finite category: objects, typed arrows, a composition table and
    identities"""

    def __init__(self, objects: Iterable[Hashable], arrows: Mapping[Hashable, Tuple],
                 comp: Mapping[Tuple[Hashable, Hashable], Hashable],
                 ids: Mapping[Hashable, Hashable], validate: bool = True):
        self.objects = list(objects)
        self.arrows = dict(arrows)
        self.comp = dict(comp)
        self.ids = dict(ids)
        self.index = {f: i for i, f in enumerate(self.arrows)}
        self._homs: Dict[Tuple, List] = {(x, y): [] for x in self.objects for y in self.objects}
        for f, (x, y) in self.arrows.items():
            if (x, y) not in self._homs:
                raise CategoryError("invalid-category", "arrow {} between unknown objects".format(f))
            self._homs[x, y].append(f)
        if validate:
            self.validate()

    def src(self, f) -> Hashable:
        return self.arrows[f][0]

    def tgt(self, f) -> Hashable:
        return self.arrows[f][1]

    def hom(self, x, y) -> List:
        """Arrows ``x -> y`` in declaration order"""
        return self._homs[x, y]

    def id(self, x) -> Hashable:
        return self.ids[x]

    def compose(self, f, g) -> Hashable:
        """``f`` then ``g``"""
        try:
            return self.comp[f, g]
        except KeyError:
            raise CategoryError("invalid-category", "no composite of {} then {}".format(f, g))

    def composable(self) -> Iterator[Tuple]:
        """Every pair ``(f, g)`` with ``f`` ending where ``g`` starts"""
        for f, (_, y) in self.arrows.items():
            for z in self.objects:
                for g in self.hom(y, z):
                    yield f, g

    def validate(self) -> None:
        """Check typing, identity and associativity laws exhaustively"""
        for x in self.objects:
            if x not in self.ids or self.arrows.get(self.ids[x]) != (x, x):
                raise CategoryError("invalid-category", "no identity on {}".format(x))
        for f, g in self.composable():
            h = self.compose(f, g)
            if self.arrows.get(h) != (self.src(f), self.tgt(g)):
                raise CategoryError("invalid-category",
                                    "{} then {} gives {} of the wrong type".format(f, g, h))
        for f, (x, y) in self.arrows.items():
            if self.compose(self.ids[x], f) != f or self.compose(f, self.ids[y]) != f:
                raise CategoryError("invalid-category", "identities do not act on {}".format(f))
        for f, g in self.composable():
            fg = self.compose(f, g)
            for w in self.objects:
                for h in self.hom(self.tgt(g), w):
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                        raise CategoryError("invalid-category",
                                            "composition of {}, {}, {} is not associative"
                                            .format(f, g, h))

    def isos(self) -> List:
        return [f for f, (x, y) in self.arrows.items()
                if any(self.compose(f, g) == self.ids[x] and self.compose(g, f) == self.ids[y]
                       for g in self.hom(y, x))]


def finset_category(sizes: Iterable[int], validate: bool = True) -> FinCat:
    """The full subcategory of finite sets on the given sizes"""
    sizes = sorted(set(sizes))
    arrows = {f: (m, n) for m in sizes for n in sizes for f in all_funs(m, n)}
    comp = {}
    for f, (_, y) in arrows.items():
        for n in sizes:
            for g in all_funs(y, n):
                comp[f, g] = f.compose(g)
    return FinCat(sizes, arrows, comp, {n: FinFun.identity(n) for n in sizes}, validate)


class RestrictionCat(FinCat):
    """A finite category with a restriction operator ``bar``"""

    def __init__(self, objects, arrows, comp, ids, bar: Mapping, validate: bool = True):
        self.bar = dict(bar)
        super().__init__(objects, arrows, comp, ids, validate)

    def validate(self) -> None:
        super().validate()
        c, bar = self.compose, self.bar
        for f, (x, _) in self.arrows.items():
            if self.arrows.get(bar.get(f)) != (x, x):
                raise CategoryError("invalid-category", "restriction of {} is not an endomorphism"
                                    .format(f))
            if c(bar[f], f) != f:
                raise CategoryError("invalid-category", "restriction of {} does not fix it".format(f))
        for x in self.objects:
            for y, z in itertools.product(self.objects, repeat=2):
                for f in self.hom(x, y):
                    for g in self.hom(x, z):
                        if c(bar[f], bar[g]) != c(bar[g], bar[f]):
                            raise CategoryError("invalid-category",
                                                "restrictions of {} and {} do not commute"
                                                .format(f, g))
                        if bar[c(bar[f], g)] != c(bar[f], bar[g]):
                            raise CategoryError("invalid-category",
                                                "restriction of {} then {} is wrong".format(f, g))
        for f, g in self.composable():
            if c(f, bar[g]) != c(bar[c(f, g)], f):
                raise CategoryError("invalid-category",
                                    "{} then restriction of {} is wrong".format(f, g))

    def is_total(self, f) -> bool:
        """Whether the restriction of ``f`` is the identity"""
        return self.bar[f] == self.ids[self.src(f)]

    def restriction_idempotents(self, x) -> List:
        """The distinct restrictions of arrows out of ``x``"""
        return [e for e in self.hom(x, x) if self.bar[e] == e]


class ConcreteRCat:
    """Partial functions between finite sets, closed under composition,
    identities and restriction"""

    def __init__(self, sizes: Iterable[int], arrows: Iterable[FinPfn], validate: bool = True):
        self.sizes = sorted(set(sizes))
        self.arrows = list(dict.fromkeys(arrows))
        if validate:
            self.validate()

    def validate(self) -> None:
        present = set(self.arrows)
        for f in self.arrows:
            if f.src not in self.sizes or f.tgt not in self.sizes:
                raise CategoryError("not-closed", "{} between sizes outside {}".format(f, self.sizes))
            if domain_idempotent(f) not in present:
                raise CategoryError("not-closed", "restriction of {}".format(f))
        for n in self.sizes:
            if FinPfn.identity(n) not in present:
                raise CategoryError("not-closed", "identity on {}".format(n))
        for f in self.arrows:
            for g in self.arrows:
                if f.tgt == g.src and compose_pfn(f, g) not in present:
                    raise CategoryError("not-closed", "{} then {}".format(f, g))

    def as_restriction_category(self, validate: bool = False) -> RestrictionCat:
        arrows = {f: (f.src, f.tgt) for f in self.arrows}
        comp = {(f, g): compose_pfn(f, g) for f in self.arrows for g in self.arrows
                if f.tgt == g.src}
        ids = {n: FinPfn.identity(n) for n in self.sizes}
        bar = {f: domain_idempotent(f) for f in self.arrows}
        return RestrictionCat(self.sizes, arrows, comp, ids, bar, validate)


def all_partial_functions(sizes: Iterable[int]) -> ConcreteRCat:
    """Every partial function between sets of the given sizes"""
    sizes = sorted(set(sizes))
    return ConcreteRCat(sizes, [f for m in sizes for n in sizes for f in all_pfns(m, n)])


def find_monos(C: FinCat) -> List:
    """Left-cancellable arrows, in arrow order"""
    monos = []
    for m, (a, _) in C.arrows.items():
        if all(len(set(C.compose(f, m) for f in C.hom(w, a))) == len(C.hom(w, a))
               for w in C.objects):
            monos.append(m)
    return monos


# Limits

class Diagram:
    """A finite diagram: objects at vertices, arrows between vertex indices"""

    def __init__(self, vertices: Sequence, edges: Sequence[Tuple[int, int, Hashable]] = ()):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)


def cones(C: FinCat, D: Diagram, apex) -> Iterator[Cone]:
    """Cones over ``D`` with the given apex, legs in arrow order"""
    legs: List = [None] * len(D.vertices)

    def extend(i):
        if i == len(D.vertices):
            yield Cone(apex, tuple(legs))
            return
        for leg in C.hom(apex, D.vertices[i]):
            legs[i] = leg
            if all(C.compose(legs[s], e) == legs[t] for s, t, e in D.edges
                   if max(s, t) == i):
                yield from extend(i + 1)
    return extend(0)


def _mediators(C: FinCat, limit: Cone, other: Cone, stop: int = 2) -> int:
    count = 0
    for u in C.hom(other.apex, limit.apex):
        if all(C.compose(u, leg) == o for leg, o in zip(limit.legs, other.legs)):
            count += 1
            if count >= stop:
                break
    return count


def is_limit(C: FinCat, D: Diagram, cone: Cone, every: Optional[Sequence[Cone]] = None) -> bool:
    """Every cone factors through ``cone`` exactly once"""
    if every is None:
        every = [c for x in C.objects for c in cones(C, D, x)]
    return all(_mediators(C, cone, other) == 1 for other in every)


def limit_search(C: FinCat, D: Diagram) -> Optional[Cone]:
    """The first limiting cone over ``D`` in object and arrow order, or ``None``"""
    every = [c for x in C.objects for c in cones(C, D, x)]
    for cone in every:
        if is_limit(C, D, cone, every):
            return cone
    return None


def terminal(C: FinCat) -> Optional[Cone]:
    """A terminal object as a cone over the empty diagram"""
    return limit_search(C, Diagram(()))


def product(C: FinCat, x, y) -> Optional[Cone]:
    return limit_search(C, Diagram((x, y)))


def equalizer(C: FinCat, f, g) -> Optional[Cone]:
    x, y = C.arrows[f]
    return limit_search(C, Diagram((x, y), ((0, 1, f), (0, 1, g))))


def pullback(C: FinCat, f, g) -> Optional[Cone]:
    """Limit of ``X -f-> Z <-g- Y``; the legs are ``(to X, to Y, to Z)``"""
    x, z = C.arrows[f]
    y = C.src(g)
    return limit_search(C, Diagram((x, y, z), ((0, 2, f), (1, 2, g))))


def missing_limit(C: FinCat) -> Optional[str]:
    """Description of the first missing terminal object, product or
    equalizer"""
    if terminal(C) is None:
        return "terminal object"
    for x, y in itertools.combinations_with_replacement(C.objects, 2):
        if product(C, x, y) is None:
            return "product of {} and {}".format(x, y)
    for x, y in itertools.product(C.objects, repeat=2):
        for f, g in itertools.combinations(C.hom(x, y), 2):
            if equalizer(C, f, g) is None:
                return "equalizer of {} and {}".format(f, g)
    return None


def has_finite_limits(C: FinCat) -> bool:
    """Whether ``C`` has a terminal object, binary products and equalizers"""
    missing = missing_limit(C)
    if missing is not None:
        logger.debug("no %s", missing)
    return missing is None


# Partial maps as spans

def par_construction(C: FinCat, validate: bool = False) -> RestrictionCat:
    """Mono-legged spans of ``C`` up to isomorphism, composed by pullback.

    An arrow ``X -> Y`` is the least span ``(m, f)``, ``X <-m- A -f-> Y``, of
    its class in arrow order. Only pullbacks along monos are needed.
    """
    monos = find_monos(C)
    isos = C.isos()
    spans = sorted(((m, f) for m in monos for f in C.arrows if C.src(f) == C.src(m)),
                   key=lambda s: (C.index[s[0]], C.index[s[1]]))
    representative = {}
    for m, f in spans:
        if (m, f) in representative:
            continue
        for phi in isos:
            if C.tgt(phi) == C.src(m):
                representative[C.compose(phi, m), C.compose(phi, f)] = (m, f)
    arrows = {}
    for m, f in spans:
        if representative[m, f] == (m, f):
            arrows[m, f] = (C.tgt(m), C.tgt(f))
    pullbacks = {}
    comp = {}
    for (m, f), (_, y) in arrows.items():
        for (n, g), (y2, _) in arrows.items():
            if y2 != y:
                continue
            if (f, n) not in pullbacks:
                cone = pullback(C, f, n)
                if cone is None:
                    raise CategoryError("missing-limit", "pullback of {} along {}".format(f, n))
                pullbacks[f, n] = cone
            p1, p2, _ = pullbacks[f, n].legs
            comp[(m, f), (n, g)] = representative[C.compose(p1, m), C.compose(p2, g)]
    ids = {x: representative[C.id(x), C.id(x)] for x in C.objects}
    bar = {(m, f): representative[m, m] for m, f in arrows}
    logger.debug("Par: %d spans, %d classes", len(spans), len(arrows))
    result = RestrictionCat(C.objects, arrows, comp, ids, bar, validate)
    result.span_classes = representative
    return result


def span_to_pfn(C: FinCat, span) -> FinPfn:
    """The partial function of a span in a category of finite sets"""
    m, f = span
    mapping = [None] * m.tgt
    for a, x in enumerate(m.image, 1):
        mapping[x - 1] = f(a)
    return FinPfn(m.tgt, f.tgt, mapping)


# Splitting restriction idempotents

def kt_totals(X, validate: bool = True) -> FinCat:
    """Objects ``(A, a)`` with ``a`` a restriction idempotent on ``A``; arrows
    ``(A, a) -> (B, b)`` are the ``f : A -> B`` with ``bar(f) = a`` and
    ``f ; b = f``"""
    R = X.as_restriction_category() if isinstance(X, ConcreteRCat) else X
    objects = [(x, e) for x in R.objects for e in R.restriction_idempotents(x)]
    arrows = {}
    for (x, a), (y, b) in itertools.product(objects, repeat=2):
        for f in R.hom(x, y):
            if R.bar[f] == a and R.compose(f, b) == f:
                arrows[(x, a), f, (y, b)] = ((x, a), (y, b))
    comp = {}
    for (s, f, t) in arrows:
        for (s2, g, u) in arrows:
            if s2 == t:
                comp[(s, f, t), (s2, g, u)] = (s, R.compose(f, g), u)
    ids = {(x, a): ((x, a), a, (x, a)) for x, a in objects}
    return FinCat(objects, arrows, comp, ids, validate)


def check_functor(source: FinCat, target: FinCat, objects: Mapping, arrows: Mapping) -> Optional[str]:
    """Description of the first failure of functoriality, or ``None``"""
    for f, (x, y) in source.arrows.items():
        if target.arrows.get(arrows[f]) != (objects[x], objects[y]):
            return "{} is sent to an arrow of the wrong type".format(f)
    for x in source.objects:
        if arrows[source.id(x)] != target.id(objects[x]):
            return "identity on {} is not preserved".format(x)
    for f, g in source.composable():
        if arrows[source.compose(f, g)] != target.compose(arrows[f], arrows[g]):
            return "composite of {} then {} is not preserved".format(f, g)
    return None


def is_faithful(source: FinCat, arrows: Mapping) -> bool:
    """Whether distinct parallel arrows keep distinct images"""
    for x, y in itertools.product(source.objects, repeat=2):
        images = [arrows[f] for f in source.hom(x, y)]
        if len(set(images)) != len(images):
            return False
    return True


def unit_embed(X: ConcreteRCat) -> Embedding:
    """``f : A -> B`` goes to the span ``(A, bar f)`` with legs ``bar f`` and
    ``f``; checked to be a faithful functor"""
    R = X.as_restriction_category()
    K = kt_totals(R, validate=False)
    P = par_construction(K)
    objects = {x: (x, R.id(x)) for x in R.objects}
    arrows = {}
    for f, (x, y) in R.arrows.items():
        apex = (x, R.bar[f])
        leg = (apex, R.bar[f], objects[x])
        value = (apex, f, objects[y])
        arrows[f] = P.span_classes[leg, value]
    failure = check_functor(R, P, objects, arrows)
    if failure is not None:
        raise CategoryError("invalid-category", failure)
    if not is_faithful(R, arrows):
        raise CategoryError("invalid-category", "embedding is not faithful")
    return Embedding(R, P, objects, arrows)


def counit_check(C: FinCat) -> bool:
    """Whether total maps between split restriction idempotents of ``Par(C)``
    are equivalent to ``C``: every object of ``C`` appears, and for objects
    split by ``m : A -> X`` and ``n : B -> Y`` the assignment
    ``u |-> [m, u ; n]`` is a bijection ``C(A, B) -> K((X, [m, m]), (Y, [n, n]))``"""
    P = par_construction(C)
    K = kt_totals(P, validate=False)
    if not all((x, P.id(x)) in K.objects for x in C.objects):
        return False
    for (x, e), (y, d) in itertools.product(K.objects, repeat=2):
        m, n = e[0], d[0]
        a, b = C.src(m), C.src(n)
        image = [((x, e), P.span_classes[m, C.compose(u, n)], (y, d)) for u in C.hom(a, b)]
        if len(set(image)) != len(image) or set(image) != set(K.hom((x, e), (y, d))):
            logger.debug("counit fails between %s and %s", (x, e), (y, d))
            return False
    return True


# Concrete syntax

_CATEGORY_GRAMMAR = r"""
start: _stmt*
_stmt: objects | arrow | identity | composite
objects: "objects" NAME ("," NAME)* _END?
arrow: NAME ":" NAME "->" NAME _END?
identity: "id" NAME "=" NAME _END?
composite: NAME "." NAME "=" NAME _END?
_END: ";"
NAME: /[A-Za-z0-9_']+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_RCAT_GRAMMAR = r"""
start: sizes arrow*
sizes: "sizes" INT+ _END?
arrow: "arrow" NAME ":" INT "->" INT row*
row: INT "->" value _END?
value: INT | UNDEF
_END: ";"
UNDEF: "undef"
NAME: /[A-Za-z_][A-Za-z0-9_']*/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_CATEGORY_PARSER = Lark(_CATEGORY_GRAMMAR, parser="lalr", propagate_positions=True)
_RCAT_PARSER = Lark(_RCAT_GRAMMAR, parser="lalr", propagate_positions=True)


def _at(node, source: Optional[str]) -> Location:
    return Location(source, node.meta.line, node.meta.column)


def _parse(parser: Lark, text: str, source: Optional[str]):
    try:
        return parser.parse(text)
    except UnexpectedInput as error:
        raise syntax_error(error, source)


def parse_category(text: str, source: Optional[str] = None, validate: bool = True) -> FinCat:
    tree = _parse(_CATEGORY_PARSER, text, source)
    objects: List[str] = []
    arrows: Dict[str, Tuple[str, str]] = {}
    ids: Dict[str, str] = {}
    comp: Dict[Tuple[str, str], str] = {}
    try:
        for stmt in tree.children:
            names = [str(t) for t in stmt.children]
            if stmt.data == "objects":
                objects.extend(names)
            elif stmt.data == "arrow":
                name, x, y = names
                if name in arrows:
                    raise CategoryError("invalid-category", "arrow {} declared twice".format(name),
                                        location=_at(stmt, source))
                arrows[name] = (x, y)
            elif stmt.data == "identity":
                ids[names[0]] = names[1]
            else:
                g, f, h = names
                for arrow in (f, g, h):
                    if arrow not in arrows:
                        raise CategoryError("invalid-category", "unknown arrow {}".format(arrow),
                                            location=_at(stmt, source))
                comp[f, g] = h
        for f, (x, y) in arrows.items():
            if x not in ids or y not in ids:
                raise CategoryError("invalid-category", "no identity for the ends of {}".format(f))
            comp.setdefault((ids[x], f), f)
            comp.setdefault((f, ids[y]), f)
        return FinCat(objects, arrows, comp, ids, validate)
    except PftError as error:
        raise error.at(source)


def parse_rcat(text: str, source: Optional[str] = None) -> Tuple[ConcreteRCat, Dict[str, FinPfn]]:
    """A concrete restriction category and the names of its arrows"""
    tree = _parse(_RCAT_PARSER, text, source)
    sizes_node, *arrow_nodes = tree.children
    sizes = [int(t) for t in sizes_node.children]
    named = {}
    try:
        for node in arrow_nodes:
            name, src, tgt, *rows = node.children
            src, tgt = int(src), int(tgt)
            mapping: List[Optional[int]] = [None] * src
            for row in rows:
                x, value = int(row.children[0]), row.children[1].children[0]
                if x >= src or (value.type == "INT" and int(value) >= tgt):
                    raise CategoryError("not-closed", "row of {} outside {} -> {}".format(
                        name, src, tgt), location=_at(row, source))
                if value.type == "INT":
                    mapping[x] = int(value) + 1
            named[str(name)] = FinPfn(src, tgt, mapping)
        return ConcreteRCat(sizes, named.values()), named
    except PftError as error:
        raise error.at(source)
