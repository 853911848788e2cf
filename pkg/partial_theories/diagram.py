"""
Sorted string-diagram terms
===========================
Terms are ASTs over generators and the structural constructors ``id``, ``sw``
(symmetry), ``cp`` (copy), ``dl`` (delete), ``mu`` (merge) and ``un`` (merge
unit, structural targets only), composed with ``;`` and ``*``.

Concrete syntax
---------------
```
cp ; (R * R)          # '*' binds tighter than ';'
id[O] * sw[O,A]       # brackets name sorts; optional with a single sort
```
Equality of terms is syntactic. Equality up to the structural laws is decided in
:mod:`partial_theories.structural`, equality in a model in
:mod:`partial_theories.model`.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from .messages import Location, ParseError, SortError


@dataclass(frozen=True, order=True)
class Sort:
    name: str

    def __str__(self):
        return self.name


DEFAULT_SORT = Sort("A")


@dataclass(frozen=True)
class GenSym:
    """A generator with a list of input sorts and at most one output sort"""
    name: str
    arity: Tuple[Sort, ...]
    coarity: Optional[Sort]

    def __post_init__(self):
        object.__setattr__(self, "arity", tuple(self.arity))

    @property
    def outputs(self) -> Tuple[Sort, ...]:
        return () if self.coarity is None else (self.coarity,)


class Term:
    """Base class of term constructors; ``>>`` composes, ``@`` tensors"""

    def __rshift__(self, other: "Term") -> "Term":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Term":
        return Par(self, other)


@dataclass(frozen=True)
class Gen(Term):
    sym: GenSym


@dataclass(frozen=True)
class Id(Term):
    sort: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Sym(Term):
    left: Sort = DEFAULT_SORT
    right: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Copy(Term):
    sort: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Del(Term):
    sort: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Mul(Term):
    sort: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Unit(Term):
    sort: Sort = DEFAULT_SORT


@dataclass(frozen=True)
class Seq(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Par(Term):
    top: Term
    bottom: Term


@dataclass(frozen=True)
class Empty(Term):
    pass


STRUCTURAL_KEYWORDS = {Id: "id", Sym: "sw", Copy: "cp", Del: "dl", Mul: "mu", Unit: "un"}


@dataclass(frozen=True)
class SortType:
    ins: Tuple[Sort, ...]
    outs: Tuple[Sort, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.ins), len(self.outs)

    def __str__(self):
        return "({}) -> ({})".format(", ".join(map(str, self.ins)), ", ".join(map(str, self.outs)))


@dataclass(frozen=True)
class Signature:
    """Sorts and generators a term may mention"""
    sorts: Tuple[Sort, ...] = (DEFAULT_SORT,)
    gens: Tuple[GenSym, ...] = ()
    _by_name: Dict[str, GenSym] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "_by_name", {g.name: g for g in self.gens})

    def lookup(self, name: str) -> Optional[GenSym]:
        return self._by_name.get(name)

    def sort_named(self, name: str) -> Optional[Sort]:
        for sort in self.sorts:
            if sort.name == name:
                return sort
        return None

    @property
    def implicit_sort(self) -> Optional[Sort]:
        """The sort that brackets may leave out, if the signature has exactly one"""
        return self.sorts[0] if len(self.sorts) == 1 else None


def sort_of(t: Term, sig: Optional[Signature] = None) -> SortType:
    """The unique sort of ``t``; raises :class:`SortError` when there is none"""
    if isinstance(t, Gen):
        known = sig.lookup(t.sym.name) if sig is not None else None
        if known is None or known != t.sym:
            raise SortError("unknown-generator", t.sym.name)
        return SortType(t.sym.arity, t.sym.outputs)
    if isinstance(t, Id):
        return SortType((t.sort,), (t.sort,))
    if isinstance(t, Sym):
        return SortType((t.left, t.right), (t.right, t.left))
    if isinstance(t, Copy):
        return SortType((t.sort,), (t.sort, t.sort))
    if isinstance(t, Del):
        return SortType((t.sort,), ())
    if isinstance(t, Mul):
        return SortType((t.sort, t.sort), (t.sort,))
    if isinstance(t, Unit):
        return SortType((), (t.sort,))
    if isinstance(t, Empty):
        return SortType((), ())
    if isinstance(t, Seq):
        first, second = sort_of(t.first, sig), sort_of(t.second, sig)
        if first.outs != second.ins:
            raise SortError("sort-mismatch", ", ".join(map(str, first.outs)),
                            ", ".join(map(str, second.ins)))
        return SortType(first.ins, second.outs)
    if isinstance(t, Par):
        top, bottom = sort_of(t.top, sig), sort_of(t.bottom, sig)
        return SortType(top.ins + bottom.ins, top.outs + bottom.outs)
    raise TypeError("not a term: {!r}".format(t))


def constructors_of(t: Term) -> Iterable[Term]:
    """Leaves of ``t`` from left to right"""
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Seq):
            stack.extend((node.second, node.first))
        elif isinstance(node, Par):
            stack.extend((node.bottom, node.top))
        else:
            yield node


def generators_of(t: Term) -> List[str]:
    """Generator names in order of first occurrence"""
    names = []
    for leaf in constructors_of(t):
        if isinstance(leaf, Gen) and leaf.sym.name not in names:
            names.append(leaf.sym.name)
    return names


def sorts_of(t: Term) -> List[Sort]:
    """Sorts mentioned anywhere in ``t``, in order of first occurrence"""
    found = []
    for leaf in constructors_of(t):
        if isinstance(leaf, Gen):
            candidates = leaf.sym.arity + leaf.sym.outputs
        elif isinstance(leaf, Sym):
            candidates = (leaf.left, leaf.right)
        elif isinstance(leaf, Empty):
            candidates = ()
        else:
            candidates = (leaf.sort,)
        for sort in candidates:
            if sort not in found:
                found.append(sort)
    return found


# Wiring helpers. Multi-wire identities and permutations are built from the
# single-wire primitives.

def tensor_all(terms: Iterable[Term]) -> Term:
    """Left-nested tensor of ``terms``; ``empty`` when there are none"""
    result = None
    for term in terms:
        if isinstance(term, Empty):
            continue
        result = term if result is None else Par(result, term)
    return Empty() if result is None else result


def seq_all(terms: Iterable[Term]) -> Term:
    result = None
    for term in terms:
        result = term if result is None else Seq(result, term)
    return Empty() if result is None else result


def id_row(sorts: Sequence[Sort]) -> Term:
    """Identity on a list of wires"""
    return tensor_all(Id(s) for s in sorts)


def del_row(sorts: Sequence[Sort]) -> Term:
    """Delete every wire of a list"""
    return tensor_all(Del(s) for s in sorts)


def permutation(sorts: Sequence[Sort], order: Sequence[int]) -> Term:
    """Wiring ``(s_0, ..., s_n) -> (s_order[0], ..., s_order[n])`` by adjacent swaps"""
    wires = list(range(len(sorts)))
    steps = []
    for target, wanted in enumerate(order):
        position = wires.index(wanted)
        while position > target:
            current = [sorts[w] for w in wires]
            i = position - 1
            steps.append(tensor_all([
                id_row(current[:i]),
                Sym(current[i], current[i + 1]),
                id_row(current[i + 2:]),
            ]))
            wires[i], wires[i + 1] = wires[i + 1], wires[i]
            position = i
    if not steps:
        return id_row(sorts)
    return seq_all(steps)


def copy_row(sorts: Sequence[Sort]) -> Term:
    """``(X) -> (X, X)``, copying every wire"""
    if not sorts:
        return Empty()
    doubled = [s for s in sorts for _ in range(2)]
    n = len(sorts)
    order = [2 * i for i in range(n)] + [2 * i + 1 for i in range(n)]
    copies = tensor_all(Copy(s) for s in sorts)
    if n == 1:
        return copies
    return Seq(copies, permutation(doubled, order))


# Concrete syntax

TERM_RULES = r"""
?seq: par
    | seq ";" par                  -> seq
?par: atom
    | par "*" atom                 -> par
?atom: "(" seq ")"
     | keyword sortargs?           -> structural
     | NAME                        -> generator
!keyword: "id" | "sw" | "cp" | "dl" | "mu" | "un" | "empty"
sortargs: "[" NAME ("," NAME)* "]"

NAME: /[A-Za-z_][A-Za-z0-9_']*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_TERM_PARSER = Lark("?start: seq\n" + TERM_RULES, parser="lalr", propagate_positions=True)

_KEYWORD_ARITY = {"id": 1, "cp": 1, "dl": 1, "mu": 1, "un": 1}
_KEYWORD_CLASS = {"id": Id, "cp": Copy, "dl": Del, "mu": Mul, "un": Unit}


def _location(token: Token) -> Location:
    return Location(None, token.line, token.column)


class TermBuilder(Transformer):
    """Turns a parse tree into a :class:`Term`, resolving names against ``sig``"""

    def __init__(self, sig: Signature):
        super().__init__()
        self.sig = sig

    def sortargs(self, names):
        sorts = []
        for name in names:
            sort = self.sig.sort_named(str(name))
            if sort is None:
                raise SortError("unknown-sort", str(name), location=_location(name))
            sorts.append(sort)
        return sorts

    def keyword(self, children):
        return children[0]

    def structural(self, children):
        keyword = children[0]
        sorts = children[1] if len(children) > 1 else None
        text = str(keyword)
        if text == "empty":
            if sorts is not None:
                raise ParseError("syntax-error", "'empty' takes no sorts",
                                 location=_location(keyword))
            return Empty()
        if sorts is None:
            implicit = self.sig.implicit_sort
            if implicit is None:
                raise SortError("missing-sort", text, location=_location(keyword))
            sorts = [implicit] * (2 if text == "sw" else 1)
        if text == "sw":
            if len(sorts) == 1:
                sorts = sorts * 2
            if len(sorts) != 2:
                raise ParseError("syntax-error", "'sw' takes one or two sorts",
                                 location=_location(keyword))
            return Sym(sorts[0], sorts[1])
        if len(sorts) != _KEYWORD_ARITY[text]:
            raise ParseError("syntax-error", "'{}' takes exactly one sort".format(text),
                             location=_location(keyword))
        return _KEYWORD_CLASS[text](sorts[0])

    def generator(self, children):
        name = children[0]
        sym = self.sig.lookup(str(name))
        if sym is None:
            raise SortError("unknown-generator", str(name), location=_location(name))
        return Gen(sym)

    @v_args(inline=True)
    def seq(self, first, second):
        return Seq(first, second)

    @v_args(inline=True)
    def par(self, top, bottom):
        return Par(top, bottom)


def syntax_error(error: UnexpectedInput, source: Optional[str] = None) -> ParseError:
    """Convert a lark error into a located :class:`ParseError`"""
    if isinstance(error, UnexpectedEOF):
        detail = "unexpected end of input"
    else:
        token = getattr(error, "token", None)
        char = getattr(error, "char", None)
        if token is not None:
            detail = "unexpected {!r}".format(str(token))
        elif char is not None:
            detail = "unexpected character {!r}".format(char)
        else:
            detail = "unexpected input"
    line = getattr(error, "line", -1)
    column = getattr(error, "column", -1)
    return ParseError("syntax-error", detail, location=Location(source, max(line, 1), max(column, 1)))


def transform(builder: Transformer, tree):
    """Run a transformer, unwrapping errors raised in its callbacks"""
    try:
        return builder.transform(tree)
    except VisitError as error:
        raise error.orig_exc


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    sig = Signature() if sig is None else sig
    try:
        tree = _TERM_PARSER.parse(text)
    except UnexpectedInput as error:
        raise syntax_error(error)
    return transform(TermBuilder(sig), tree)


def _sort_args(sorts: Sequence[Sort], implicit: Optional[Sort]) -> str:
    if implicit is not None and all(s == implicit for s in sorts):
        return ""
    return "[{}]".format(",".join(s.name for s in sorts))


def _print(t: Term, implicit: Optional[Sort]) -> Tuple[str, int]:
    """Text of ``t`` and its binding level: 0 for ``;``, 1 for ``*``, 2 for atoms"""
    if isinstance(t, Seq):
        first, _ = _print(t.first, implicit)
        second, level = _print(t.second, implicit)
        if level == 0:
            second = "(" + second + ")"
        return "{} ; {}".format(first, second), 0
    if isinstance(t, Par):
        top, top_level = _print(t.top, implicit)
        bottom, bottom_level = _print(t.bottom, implicit)
        if top_level == 0:
            top = "(" + top + ")"
        if bottom_level < 2:
            bottom = "(" + bottom + ")"
        return "{} * {}".format(top, bottom), 1
    if isinstance(t, Gen):
        return t.sym.name, 2
    if isinstance(t, Empty):
        return "empty", 2
    if isinstance(t, Sym):
        if t.left == t.right:
            return "sw" + _sort_args((t.left,), implicit), 2
        return "sw" + _sort_args((t.left, t.right), implicit), 2
    return STRUCTURAL_KEYWORDS[type(t)] + _sort_args((t.sort,), implicit), 2


def print_term(t: Term, sig: Optional[Signature] = None) -> str:
    """Normalized concrete syntax; ``parse_term(print_term(t, sig), sig) == t``"""
    implicit = DEFAULT_SORT if sig is None else sig.implicit_sort
    return _print(t, implicit)[0]
