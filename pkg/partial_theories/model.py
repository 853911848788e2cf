"""
Finite models
=============
A model interprets each sort as a finite set ``{0, ..., n-1}`` and each
generator as a partial function from the product of its input carriers to its
output carrier (to a one-point set for coarity 0). Structural constructors are
not interpreted: copy duplicates, delete forgets, merge is defined on equal
pairs only.

Model files
-----------
```
model good3 of setoid
carrier A = 3
op R:
  0 0 -> def
  1 1 -> def
  2 2 -> def
```
Unlisted tuples are undefined. Elements are 0-based.
"""
import functools
import itertools
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import (Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple,
                    Union)

from lark import Lark
from lark.exceptions import UnexpectedInput

from .diagram import (Copy, Del, Empty, Gen, Id, Mul, Par, Seq, Sort, Sym, Term, Unit, sort_of,
                      syntax_error)
from .finpar import FinFun, FinPfn, TupleSpace, all_funs, compose_pfn, product_pfn
from .messages import Location, ModelError, PftError, SearchLimitExceeded, TheoryError
from .theory import PartialEquation, Theory, check_equation_sorts

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_CAP = 10 ** 7
COMPILED_CACHE_SIZE = 4096

Values = Optional[Tuple[int, ...]]
Counterexample = namedtuple("Counterexample", ("equation", "inputs", "lhs", "rhs"))
Violation = namedtuple("Violation", ("generator", "inputs"))


def format_values(values: Values) -> str:
    """``undef`` or the elements in parentheses, as reports print them"""
    if values is None:
        return "undef"
    return "({})".format(" ".join(str(v) for v in values))


@dataclass(frozen=True)
class Interpretation:
    """Carrier sizes per sort and one partial-function table per generator"""
    name: str
    theory: str
    carriers: Dict[Sort, int]
    tables: Dict[str, FinPfn]

    def __hash__(self):
        return hash((self.name, self.theory, tuple(sorted(self.carriers.items())),
                     tuple(sorted(self.tables.items()))))

    def size(self, sort: Sort) -> int:
        return self.carriers[sort]

    def space(self, sorts: Sequence[Sort]) -> TupleSpace:
        return TupleSpace([self.carriers[s] for s in sorts])

    def table(self, name: str) -> FinPfn:
        return self.tables[name]


def _table_shape(thy: Theory, carriers: Mapping[Sort, int], gen) -> Tuple[int, int]:
    src = TupleSpace([carriers[s] for s in gen.arity]).size
    tgt = 1 if gen.coarity is None else carriers[gen.coarity]
    return src, tgt


def validate_model(thy: Theory, m: Interpretation) -> None:
    """Raise :class:`ModelError` unless ``m`` fits the signature of ``thy``"""
    for sort in thy.sorts:
        if sort not in m.carriers:
            raise ModelError("bad-carrier", "no carrier for sort {}".format(sort))
        if m.carriers[sort] < 0:
            raise ModelError("bad-carrier", "negative size for sort {}".format(sort))
    names = {g.name for g in thy.gens}
    for name in m.tables:
        if name not in names:
            raise ModelError("bad-table", name, "not a generator of {}".format(thy.name))
    for gen in thy.gens:
        if gen.name not in m.tables:
            raise ModelError("bad-table", gen.name, "missing")
        table = m.tables[gen.name]
        shape = _table_shape(thy, m.carriers, gen)
        if (table.src, table.tgt) != shape:
            raise ModelError("bad-table", gen.name, "{}->{} instead of {}->{}".format(
                table.src, table.tgt, *shape))


# Compositional semantics

def _structural_pfn(t: Term, sizes: Callable[[Sort], int]) -> FinPfn:
    if isinstance(t, Id):
        return FinPfn.identity(sizes(t.sort))
    if isinstance(t, Empty):
        return FinPfn.identity(1)
    if isinstance(t, Sym):
        ins = TupleSpace([sizes(t.left), sizes(t.right)])
        outs = TupleSpace([sizes(t.right), sizes(t.left)])
        return FinPfn(ins.size, outs.size, (outs.index((b, a)) for a, b in ins))
    if isinstance(t, Copy):
        n = sizes(t.sort)
        outs = TupleSpace([n, n])
        return FinPfn(n, outs.size, (outs.index((a, a)) for a in range(n)))
    if isinstance(t, Del):
        n = sizes(t.sort)
        return FinPfn(n, 1, (1,) * n)
    if isinstance(t, Mul):
        n = sizes(t.sort)
        return FinPfn(n * n, n, (a + 1 if a == b else None for a, b in TupleSpace([n, n])))
    if isinstance(t, Unit):
        raise TheoryError("foreign-constructor", "un")
    raise TypeError("not a structural constructor: {!r}".format(t))


def _eval(t: Term, m: Interpretation) -> FinPfn:
    if isinstance(t, Seq):
        return compose_pfn(_eval(t.first, m), _eval(t.second, m))
    if isinstance(t, Par):
        return product_pfn(_eval(t.top, m), _eval(t.bottom, m))
    if isinstance(t, Gen):
        return m.tables[t.sym.name]
    return _structural_pfn(t, m.size)


def eval_term(thy: Theory, m: Interpretation, t: Term) -> FinPfn:
    """The partial function denoted by ``t``, between products of carriers
    numbered lexicographically"""
    sort_of(t, thy.signature)
    validate_model(thy, m)
    return _eval(t, m)


# Pointwise semantics

class _Env:
    """Generator tables in the form the compiled terms read them"""

    def __init__(self, thy: Theory, carriers: Mapping[Sort, int]):
        self.spaces = {g.name: TupleSpace([carriers[s] for s in g.arity]) for g in thy.gens}
        self.outputs = {g.name: g.coarity is not None for g in thy.gens}
        self.mappings: Dict[str, Tuple[Optional[int], ...]] = {}

    @classmethod
    def of(cls, thy: Theory, m: Interpretation) -> "_Env":
        env = cls(thy, m.carriers)
        env.mappings = {name: table.mapping for name, table in m.tables.items()}
        return env

    def lookup(self, name: str, xs: Tuple[int, ...]) -> Values:
        value = self.mappings[name][self.spaces[name].index(xs) - 1]
        if value is None:
            return None
        return (value - 1,) if self.outputs[name] else ()


def _width(t: Term) -> int:
    """Number of input wires"""
    if isinstance(t, Seq):
        return _width(t.first)
    if isinstance(t, Par):
        return _width(t.top) + _width(t.bottom)
    if isinstance(t, Gen):
        return len(t.sym.arity)
    if isinstance(t, (Sym, Mul)):
        return 2
    if isinstance(t, (Unit, Empty)):
        return 0
    return 1


Compiled = Callable[[_Env, Tuple[int, ...]], Values]


@functools.lru_cache(maxsize=COMPILED_CACHE_SIZE)
def _compile(t: Term) -> Compiled:
    if isinstance(t, Seq):
        first, second = _compile(t.first), _compile(t.second)

        def run(env, xs):
            ys = first(env, xs)
            return None if ys is None else second(env, ys)
        return run
    if isinstance(t, Par):
        top, bottom, split = _compile(t.top), _compile(t.bottom), _width(t.top)

        def run(env, xs):
            ys = top(env, xs[:split])
            if ys is None:
                return None
            zs = bottom(env, xs[split:])
            return None if zs is None else ys + zs
        return run
    if isinstance(t, Gen):
        name = t.sym.name
        return lambda env, xs: env.lookup(name, xs)
    if isinstance(t, Id):
        return lambda env, xs: xs
    if isinstance(t, Sym):
        return lambda env, xs: (xs[1], xs[0])
    if isinstance(t, Copy):
        return lambda env, xs: (xs[0], xs[0])
    if isinstance(t, (Del, Empty)):
        return lambda env, xs: ()
    if isinstance(t, Mul):
        return lambda env, xs: (xs[0],) if xs[0] == xs[1] else None
    if isinstance(t, Unit):
        raise TheoryError("foreign-constructor", "un")
    raise TypeError("not a term: {!r}".format(t))


def apply_term(thy: Theory, m: Interpretation, t: Term, inputs: Sequence[int]) -> Values:
    """Kleene value of ``t`` at one input tuple; ``None`` when undefined"""
    kind = sort_of(t, thy.signature)
    inputs = tuple(inputs)
    if len(inputs) != len(kind.ins):
        raise ModelError("bad-carrier", "{} inputs for a term of sort {}".format(len(inputs), kind))
    return _compile(t)(_Env.of(thy, m), inputs)


class _Check:
    """A compiled equation together with the tuples it ranges over"""

    def __init__(self, thy: Theory, equation: PartialEquation, carriers: Mapping[Sort, int]):
        self.equation = equation
        self.lhs, self.rhs = _compile(equation.lhs), _compile(equation.rhs)
        self.space = TupleSpace([carriers[s] for s in equation.sort(thy.signature).ins])

    def first_violation(self, env: _Env) -> Optional[Counterexample]:
        for xs in self.space:
            left, right = self.lhs(env, xs), self.rhs(env, xs)
            if left != right:
                return Counterexample(self.equation.label, xs, left, right)
        return None

    def holds(self, env: _Env) -> bool:
        lhs, rhs = self.lhs, self.rhs
        return all(lhs(env, xs) == rhs(env, xs) for xs in self.space)


# Three-valued evaluation for pruning: a generator without a table yet is
# unknown. A value is None (undefined whatever the missing tables are) or a
# pair (sure, elements) where sure says it is certainly defined and an
# unknown element is -1.

_UNKNOWN = -1

Partial = Optional[Tuple[bool, Tuple[int, ...]]]


@functools.lru_cache(maxsize=COMPILED_CACHE_SIZE)
def _compile_partial(t: Term) -> Callable[[_Env, Tuple[bool, Tuple[int, ...]]], Partial]:
    if isinstance(t, Seq):
        first, second = _compile_partial(t.first), _compile_partial(t.second)

        def run(env, v):
            w = first(env, v)
            return None if w is None else second(env, w)
        return run
    if isinstance(t, Par):
        top, bottom, split = _compile_partial(t.top), _compile_partial(t.bottom), _width(t.top)

        def run(env, v):
            sure, xs = v
            a = top(env, (sure, xs[:split]))
            if a is None:
                return None
            b = bottom(env, (sure, xs[split:]))
            return None if b is None else (a[0] and b[0], a[1] + b[1])
        return run
    if isinstance(t, Gen):
        name = t.sym.name
        unknown = (_UNKNOWN,) if t.sym.coarity is not None else ()

        def run(env, v):
            sure, xs = v
            if name not in env.mappings or _UNKNOWN in xs:
                return False, unknown
            ys = env.lookup(name, xs)
            return None if ys is None else (sure, ys)
        return run
    if isinstance(t, Id):
        return lambda env, v: v
    if isinstance(t, Sym):
        return lambda env, v: (v[0], (v[1][1], v[1][0]))
    if isinstance(t, Copy):
        return lambda env, v: (v[0], (v[1][0], v[1][0]))
    if isinstance(t, (Del, Empty)):
        return lambda env, v: (v[0], ())
    if isinstance(t, Mul):
        def run(env, v):
            sure, (a, b) = v
            if a != _UNKNOWN and b != _UNKNOWN:
                return (sure, (a,)) if a == b else None
            return False, (max(a, b),)
        return run
    if isinstance(t, Unit):
        raise TheoryError("foreign-constructor", "un")
    raise TypeError("not a term: {!r}".format(t))


def _surely_differ(left: Partial, right: Partial) -> bool:
    if left is None or right is None:
        return left is not right and (left or right)[0]
    if not (left[0] or right[0]):
        return False
    return any(a != b for a, b in zip(left[1], right[1]) if a != _UNKNOWN and b != _UNKNOWN)


class _PartialCheck(_Check):
    """An equation some of whose generators have no table yet"""

    def __init__(self, thy: Theory, equation: PartialEquation, carriers: Mapping[Sort, int]):
        super().__init__(thy, equation, carriers)
        self.lhs, self.rhs = _compile_partial(equation.lhs), _compile_partial(equation.rhs)

    def holds(self, env: _Env) -> bool:
        lhs, rhs = self.lhs, self.rhs
        return not any(_surely_differ(lhs(env, (True, xs)), rhs(env, (True, xs)))
                       for xs in self.space)


def check_equation(thy: Theory, m: Interpretation,
                   e: PartialEquation) -> Optional[Counterexample]:
    """``None`` if ``e`` holds in ``m``, else its lexicographically least
    violation"""
    validate_model(thy, m)
    check_equation_sorts(e, thy.signature)
    return _Check(thy, e, m.carriers).first_violation(_Env.of(thy, m))


@dataclass(frozen=True)
class ModelReport:
    model: str
    results: Tuple[Tuple[PartialEquation, Optional[Counterexample]], ...]

    @property
    def ok(self) -> bool:
        return all(c is None for _, c in self.results)

    @property
    def failures(self) -> List[Counterexample]:
        return [c for _, c in self.results if c is not None]


def check_model(thy: Theory, m: Interpretation, audit: bool = False) -> ModelReport:
    """Check every equation of ``thy``; with ``audit`` the derived structural
    equations too"""
    validate_model(thy, m)
    env = _Env.of(thy, m)
    equations = thy.equations + (thy.derived if audit else ())
    results = []
    for equation in equations:
        results.append((equation, _Check(thy, equation, m.carriers).first_violation(env)))
    return ModelReport(m.name, tuple(results))


# Enumeration

Sizes = Union[int, Mapping[Union[Sort, str], int]]


def carrier_sizes(thy: Theory, sizes: Sizes) -> Dict[Sort, int]:
    """One size for every sort, or a size per sort keyed by sort or name"""
    if isinstance(sizes, int):
        return {s: sizes for s in thy.sorts}
    by_name = {(k.name if isinstance(k, Sort) else k): v for k, v in sizes.items()}
    result = {}
    for sort in thy.sorts:
        if sort.name not in by_name:
            raise ModelError("bad-carrier", "no size for sort {}".format(sort))
        result[sort] = by_name[sort.name]
    return result


class _Plan:
    """Generators in signature order. Each equation is checked exactly once
    all of its generators have tables, and before that, three-valued, after
    each of its generators gets one.

    ``visited`` counts candidate tables tried; the search stops with
    :class:`SearchLimitExceeded` once it passes ``cap``.
    """

    def __init__(self, thy: Theory, carriers: Dict[Sort, int], cap: int = DEFAULT_SEARCH_CAP):
        self.thy = thy
        self.carriers = carriers
        self.cap = cap
        self.visited = 0
        self.gens = thy.gens
        self.shapes = [_table_shape(thy, carriers, g) for g in self.gens]
        self.env = _Env(thy, carriers)
        position = {g.name: i for i, g in enumerate(self.gens)}
        self.upfront: List[_Check] = []
        self.stages: List[List[_Check]] = [[] for _ in self.gens]
        pending: List[List[_Check]] = [[] for _ in self.gens]
        for equation in thy.equations:
            names = equation.generators()
            if not names:
                self.upfront.append(_Check(thy, equation, carriers))
                continue
            depths = sorted(position[n] for n in names)
            self.stages[depths[-1]].append(_Check(thy, equation, carriers))
            for depth in set(depths[:-1]):
                pending[depth].append(_PartialCheck(thy, equation, carriers))
        # exact checks first, fewest input tuples first
        for stage, partial in zip(self.stages, pending):
            stage.sort(key=lambda check: len(check.space))
            stage.extend(partial)

    def candidates(self, depth: int) -> Iterator[Tuple[Optional[int], ...]]:
        src, tgt = self.shapes[depth]
        return itertools.product((None,) + tuple(range(1, tgt + 1)), repeat=src)

    @property
    def space_size(self) -> int:
        total = 1
        for src, tgt in self.shapes:
            total *= (tgt + 1) ** src
        return total

    def walk(self, depth: int = 0, first: Optional[Sequence] = None) -> Iterator[Tuple]:
        if depth == len(self.gens):
            yield tuple(self.env.mappings[g.name] for g in self.gens)
            return
        name = self.gens[depth].name
        candidates = first if depth == 0 and first is not None else self.candidates(depth)
        for mapping in candidates:
            self.visited += 1
            if self.visited > self.cap:
                raise SearchLimitExceeded(self.space_size, self.cap)
            self.env.mappings[name] = mapping
            if all(check.holds(self.env) for check in self.stages[depth]):
                yield from self.walk(depth + 1)
        self.env.mappings.pop(name, None)

    def search(self, first: Optional[Sequence] = None) -> Iterator[Tuple]:
        if all(check.holds(self.env) for check in self.upfront):
            yield from self.walk(0, first)

    def interpretation(self, encoding: Tuple, name: str) -> Interpretation:
        tables = {g.name: FinPfn(src, tgt, mapping)
                  for g, (src, tgt), mapping in zip(self.gens, self.shapes, encoding)}
        return Interpretation(name, self.thy.name, dict(self.carriers), tables)


def _key(encoding: Tuple) -> Tuple:
    return tuple(tuple(0 if v is None else v for v in mapping) for mapping in encoding)


def _permuted(plan: _Plan, encoding: Tuple, perm: Mapping[Sort, Sequence[int]]) -> Tuple:
    result = []
    for gen, mapping in zip(plan.gens, encoding):
        space = plan.env.spaces[gen.name]
        moved = [None] * len(mapping)
        for xs, value in zip(space, mapping):
            target = space.index(tuple(perm[s][x] for s, x in zip(gen.arity, xs)))
            if value is not None and gen.coarity is not None:
                value = perm[gen.coarity][value - 1] + 1
            moved[target - 1] = value
        result.append(tuple(moved))
    return tuple(result)


def _is_canonical(plan: _Plan, encoding: Tuple) -> bool:
    """Whether no relabelling of the carriers gives a lexicographically
    smaller encoding"""
    sorts = list(plan.carriers)
    key = _key(encoding)
    for perms in itertools.product(*(itertools.permutations(range(plan.carriers[s]))
                                     for s in sorts)):
        if _key(_permuted(plan, encoding, dict(zip(sorts, perms)))) < key:
            return False
    return True


def _search_chunk(args) -> Tuple[List[Tuple], int]:
    thy, carriers, first, cap = args
    plan = _Plan(thy, carriers, cap)
    return list(plan.search(first)), plan.visited


def _chunks(items: List, jobs: int) -> List[List]:
    size = max(1, -(-len(items) // (jobs * 4)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def enumerate_models(thy: Theory, sizes: Sizes, dedup: bool = False,
                     cap: int = DEFAULT_SEARCH_CAP, jobs: int = 1) -> Iterator[Interpretation]:
    """Every model of ``thy`` with the given carrier sizes, in lexicographic
    order of their tables.

    With ``dedup`` only the least model of each isomorphism class is kept.
    With ``jobs > 1`` the tables of the first generator are split over a
    process pool; the output order does not change. ``cap`` bounds the number
    of candidate tables tried, over all workers together.
    """
    carriers = carrier_sizes(thy, sizes)
    plan = _Plan(thy, carriers, cap)
    logger.debug("enumerating %s at %s: %d candidates, stages %s", thy.name,
                 {str(s): n for s, n in carriers.items()}, plan.space_size,
                 [len(stage) for stage in plan.stages])
    if jobs > 1 and plan.gens:
        chunks = _chunks(list(plan.candidates(0)), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_chunk,
                                    [(thy, carriers, chunk, cap) for chunk in chunks]))
        if sum(visited for _, visited in results) > cap:
            raise SearchLimitExceeded(plan.space_size, cap)
        encodings = [e for part, _ in results for e in part]
    else:
        encodings = plan.search()
    count = 0
    for encoding in encodings:
        if dedup and not _is_canonical(plan, encoding):
            continue
        count += 1
        yield plan.interpretation(encoding, "{}_{}".format(thy.name, count))
    logger.debug("%s: %d models", thy.name, count)


def count_models(thy: Theory, sizes: Sizes, **options) -> int:
    """Number of models :func:`enumerate_models` yields with the same options"""
    return sum(1 for _ in enumerate_models(thy, sizes, **options))


def _size_vectors(thy: Theory, max_size: int) -> Iterator[Dict[Sort, int]]:
    """Carrier sizes with largest entry ``0, 1, ..., max_size`` in turn"""
    for top in range(max_size + 1):
        for vector in itertools.product(range(top + 1), repeat=len(thy.sorts)):
            if max(vector, default=0) == top:
                yield dict(zip(thy.sorts, vector))


def models_up_to(thy: Theory, max_size: int, **options) -> Iterator[Interpretation]:
    """Models with every carrier of size at most ``max_size``, smallest first"""
    for carriers in _size_vectors(thy, max_size):
        yield from enumerate_models(thy, carriers, **options)


def search_counterexample(thy: Theory, lhs: Term, rhs: Term, max_size: int,
                          **options) -> Optional[Tuple[Interpretation, Counterexample]]:
    """The first model up to ``max_size`` in which ``lhs = rhs`` fails"""
    query = PartialEquation("query", lhs, rhs)
    check_equation_sorts(query, thy.signature)
    for m in models_up_to(thy, max_size, **options):
        violation = _Check(thy, query, m.carriers).first_violation(_Env.of(thy, m))
        if violation is not None:
            return m, violation
    return None


# Homomorphisms

@dataclass(frozen=True)
class SortedMap:
    """One total function per sort, on 1-based ordinals"""
    maps: Dict[Sort, FinFun]

    def __hash__(self):
        return hash(tuple(sorted(self.maps.items())))

    def apply(self, sort: Sort, element: int) -> int:
        return self.maps[sort](element + 1) - 1

    def compose(self, other: "SortedMap") -> "SortedMap":
        """``self`` then ``other``, sort by sort"""
        return SortedMap({s: f.compose(other.maps[s]) for s, f in self.maps.items()})

    @classmethod
    def identity(cls, m: Interpretation) -> "SortedMap":
        """The identity homomorphism of ``m``"""
        return cls({s: FinFun.identity(n) for s, n in m.carriers.items()})

    def __str__(self):
        return " ".join("{}={}".format(s, " ".join(str(v - 1) for v in f.image))
                        for s, f in self.maps.items())


def _check_map(thy: Theory, mA: Interpretation, mB: Interpretation, F: SortedMap):
    for sort in thy.sorts:
        f = F.maps.get(sort)
        if f is None:
            raise ModelError("bad-map", "no function for sort {}".format(sort))
        if (f.src, f.tgt) != (mA.size(sort), mB.size(sort)):
            raise ModelError("bad-map", "function {}->{} for sort {} between carriers {} and {}"
                             .format(f.src, f.tgt, sort, mA.size(sort), mB.size(sort)))


def check_hom(thy: Theory, mA: Interpretation, mB: Interpretation,
              F: SortedMap) -> Optional[Violation]:
    """``None`` if ``F`` is a homomorphism: wherever a generator is defined in
    ``mA`` it is defined in ``mB`` at the image and commutes with ``F``"""
    validate_model(thy, mA)
    validate_model(thy, mB)
    _check_map(thy, mA, mB, F)
    for gen in thy.gens:
        source = mA.table(gen.name)
        target = mB.table(gen.name)
        target_space = mB.space(gen.arity)
        for xs, value in zip(mA.space(gen.arity), source.mapping):
            if value is None:
                continue
            image = target(target_space.index(tuple(F.apply(s, x) for s, x in zip(gen.arity, xs))))
            if image is None:
                return Violation(gen.name, xs)
            if gen.coarity is not None and image - 1 != F.apply(gen.coarity, value - 1):
                return Violation(gen.name, xs)
    return None


def enumerate_homs(thy: Theory, mA: Interpretation, mB: Interpretation,
                   cap: int = DEFAULT_SEARCH_CAP) -> Iterator[SortedMap]:
    """Every homomorphism ``mA -> mB``, in lexicographic order"""
    total = 1
    for sort in thy.sorts:
        total *= mB.size(sort) ** mA.size(sort)
    if total > cap:
        raise SearchLimitExceeded(total, cap)
    per_sort = [list(all_funs(mA.size(s), mB.size(s))) for s in thy.sorts]
    for images in itertools.product(*per_sort):
        F = SortedMap(dict(zip(thy.sorts, images)))
        if check_hom(thy, mA, mB, F) is None:
            yield F


# Concrete syntax

_MODEL_GRAMMAR = r"""
start: header _item*
_item: carrier | table
header: "model" NAME "of" NAME _END?
carrier: "carrier" NAME "=" INT _END?
table: "op" NAME ":" row*
row: INT* "->" value _END?
value: INT | UNDEF | DEF
_END: ";"
UNDEF: "undef"
DEF: "def"
NAME: /[A-Za-z_][A-Za-z0-9_']*/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_MODEL_PARSER = Lark(_MODEL_GRAMMAR, parser="lalr", propagate_positions=True)


def _at(node, source: Optional[str]) -> Location:
    return Location(source, node.meta.line, node.meta.column)


def _read_table(thy: Theory, carriers: Dict[Sort, int], table, source) -> Tuple[str, FinPfn]:
    name = str(table.children[0])
    gen = thy.signature.lookup(name)
    if gen is None:
        raise ModelError("bad-table", name, "not a generator of {}".format(thy.name),
                         location=_at(table, source))
    space = TupleSpace([carriers[s] for s in gen.arity])
    src, tgt = _table_shape(thy, carriers, gen)
    mapping: List[Optional[int]] = [None] * src
    seen = set()
    for row in table.children[1:]:
        *elements, value = row.children
        xs = tuple(int(e) for e in elements)
        if len(xs) != len(gen.arity):
            raise ModelError("bad-table", name, "row of {} elements for arity {}".format(
                len(xs), len(gen.arity)), location=_at(row, source))
        for x, sort in zip(xs, gen.arity):
            if x >= carriers[sort]:
                raise ModelError("bad-table", name, "element {} outside carrier {} of size {}"
                                 .format(x, sort, carriers[sort]), location=_at(row, source))
        if xs in seen:
            raise ModelError("bad-table", name, "duplicate row {}".format(format_values(xs)),
                             location=_at(row, source))
        seen.add(xs)
        token = value.children[0]
        if token.type == "UNDEF":
            continue
        if token.type == "DEF":
            if gen.coarity is not None:
                raise ModelError("bad-table", name, "'def' needs coarity 0",
                                 location=_at(row, source))
            mapping[space.index(xs) - 1] = 1
            continue
        if gen.coarity is None:
            raise ModelError("bad-table", name, "coarity 0 rows take 'def' or 'undef'",
                             location=_at(row, source))
        if int(token) >= tgt:
            raise ModelError("bad-table", name, "value {} outside carrier {} of size {}".format(
                token, gen.coarity, tgt), location=_at(row, source))
        mapping[space.index(xs) - 1] = int(token) + 1
    return name, FinPfn(src, tgt, mapping)


def parse_model(text: str, thy: Theory, source: Optional[str] = None) -> Interpretation:
    try:
        tree = _MODEL_PARSER.parse(text)
    except UnexpectedInput as error:
        raise syntax_error(error, source)
    try:
        header, *items = tree.children
        name, theory = (str(t) for t in header.children)
        if theory != thy.name:
            raise ModelError("theory-mismatch", theory, thy.name, location=_at(header, source))
        carriers: Dict[Sort, int] = {}
        for item in items:
            if item.data != "carrier":
                continue
            sort = thy.signature.sort_named(str(item.children[0]))
            if sort is None or sort in carriers:
                raise ModelError("bad-carrier", "unknown or repeated sort {}".format(
                    item.children[0]), location=_at(item, source))
            carriers[sort] = int(item.children[1])
        for sort in thy.sorts:
            if sort not in carriers:
                raise ModelError("bad-carrier", "no carrier for sort {}".format(sort),
                                 location=_at(header, source))
        tables = {}
        for item in items:
            if item.data != "table":
                continue
            gen_name, table = _read_table(thy, carriers, item, source)
            if gen_name in tables:
                raise ModelError("bad-table", gen_name, "declared twice",
                                 location=_at(item, source))
            tables[gen_name] = table
    except PftError as error:
        raise error.at(source)
    for gen in thy.gens:
        if gen.name not in tables:
            src, tgt = _table_shape(thy, carriers, gen)
            tables[gen.name] = FinPfn.nowhere(src, tgt)
    ordered = {g.name: tables[g.name] for g in thy.gens}
    return Interpretation(name, theory, carriers, ordered)


def print_model(thy: Theory, m: Interpretation) -> str:
    """Model file listing the defined rows only"""
    lines = ["model {} of {}".format(m.name, thy.name)]
    lines.extend("carrier {} = {}".format(s, m.size(s)) for s in thy.sorts)
    for gen in thy.gens:
        lines.append("op {}:".format(gen.name))
        for xs, value in zip(m.space(gen.arity), m.table(gen.name).mapping):
            if value is None:
                continue
            shown = "def" if gen.coarity is None else str(value - 1)
            lines.append("  {}-> {}".format("".join("{} ".format(x) for x in xs), shown))
    return "\n".join(lines) + "\n"
