"""
Partial theories
================
A theory is a partial signature (sorts, generators of coarity 0 or 1) together
with a list of partial equations between terms over it. Inequalities
``s <= t`` are accepted by the parser but stored lowered to the equation
``bar(s) ; t = s``.

Theory files
------------
```
theory setoid ;
sort A ;                         # optional, defaults to the single sort A
op R : A * A -> 0 ;
eq sym : sw ; R = R ;
leq trans : (id * cp * id) ; (R * R) <= (id * dl * id) ; R ;
```
"""
import functools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from lark import Lark, Token
from lark.exceptions import UnexpectedInput

from .diagram import (DEFAULT_SORT, Copy, Del, Empty, Gen, GenSym, Id, Mul, Par, Seq,
                      Signature, Sort, SortType, Sym, Term, TermBuilder, Unit, TERM_RULES,
                      constructors_of, copy_row, del_row, generators_of, id_row, print_term,
                      sort_of, syntax_error, tensor_all, transform)
from .library import SOURCES
from .messages import Location, PftError, SortError, TheoryError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartialSignature(Signature):
    """A signature whose generators only mention declared sorts"""

    def __post_init__(self):
        super().__post_init__()
        seen = set()
        for sort in self.sorts:
            if sort.name in seen:
                raise TheoryError("duplicate-name", sort.name)
            seen.add(sort.name)
        seen = set()
        for gen in self.gens:
            if gen.name in seen:
                raise TheoryError("duplicate-name", gen.name)
            seen.add(gen.name)
            for sort in gen.arity + gen.outputs:
                if sort not in self.sorts:
                    raise SortError("unknown-sort", sort.name)


@dataclass(frozen=True)
class PartialEquation:
    """``lhs = rhs`` under Kleene equality.

    ``origin`` keeps the two sides of the inequality an equation was lowered
    from, so that it can be printed back as one.
    """
    label: str
    lhs: Term
    rhs: Term
    origin: Optional[Tuple[Term, Term]] = None

    @property
    def is_inequality(self) -> bool:
        return self.origin is not None

    def sort(self, sig: Optional[Signature] = None) -> SortType:
        return sort_of(self.lhs, sig)

    def generators(self) -> List[str]:
        names = generators_of(self.lhs)
        names.extend(n for n in generators_of(self.rhs) if n not in names)
        return names


@dataclass(frozen=True)
class Theory:
    name: str
    signature: PartialSignature
    equations: Tuple[PartialEquation, ...]
    derived: Tuple[PartialEquation, ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, name: str, signature: PartialSignature,
              equations: Sequence[PartialEquation]) -> "Theory":
        labels = set()
        for equation in equations:
            if equation.label in labels:
                raise TheoryError("duplicate-name", equation.label)
            labels.add(equation.label)
            check_equation_sorts(equation, signature)
        return cls(name, signature, tuple(equations), tuple(derived_equations(signature)))

    @property
    def sorts(self) -> Tuple[Sort, ...]:
        return self.signature.sorts

    @property
    def gens(self) -> Tuple[GenSym, ...]:
        return self.signature.gens

    def equation(self, label: str) -> PartialEquation:
        """Look up an axiom or derived equation by label"""
        for equation in self.equations + self.derived:
            if equation.label == label:
                return equation
        raise KeyError(label)


def check_equation_sorts(equation: PartialEquation, sig: Signature) -> SortType:
    """Sort of ``equation``; both sides must agree and use no foreign constructor"""
    for leaf in constructors_of(equation.lhs):
        _check_partial(leaf)
    for leaf in constructors_of(equation.rhs):
        _check_partial(leaf)
    lhs, rhs = sort_of(equation.lhs, sig), sort_of(equation.rhs, sig)
    if lhs != rhs:
        raise TheoryError("equation-sort-mismatch", equation.label, lhs, rhs)
    return lhs


def _check_partial(leaf: Term):
    if isinstance(leaf, Unit):
        raise TheoryError("foreign-constructor", "un")


def _then(first: Term, second: Term) -> Term:
    if isinstance(first, Empty):
        return second
    if isinstance(second, Empty):
        return first
    return Seq(first, second)


def bar(t: Term, sig: Optional[Signature] = None) -> Term:
    """The domain idempotent of ``t``: copy the inputs, run ``t`` on one copy
    and discard its outputs"""
    kind = sort_of(t, sig)
    domain = _then(t, del_row(kind.outs))
    if not kind.ins:
        return domain
    return Seq(copy_row(kind.ins), tensor_all([id_row(kind.ins), domain]))


def lower_leq(lhs: Term, rhs: Term, sig: Optional[Signature] = None,
              label: str = "leq") -> PartialEquation:
    """``lhs <= rhs`` as the equation ``bar(lhs) ; rhs = lhs``"""
    left, right = sort_of(lhs, sig), sort_of(rhs, sig)
    if left != right:
        raise TheoryError("equation-sort-mismatch", label, left, right)
    return PartialEquation(label, _then(bar(lhs, sig), rhs), lhs, origin=(lhs, rhs))


def _structural_laws(s: Sort) -> List[PartialEquation]:
    i, cp, dl, mu, sw = Id(s), Copy(s), Del(s), Mul(s), Sym(s, s)
    tag = "[{}]".format(s.name)
    return [
        PartialEquation("merge-assoc" + tag, Par(mu, i) >> mu, Par(i, mu) >> mu),
        PartialEquation("merge-comm" + tag, sw >> mu, mu),
        PartialEquation("copy-coassoc" + tag, cp >> Par(cp, i), cp >> Par(i, cp)),
        PartialEquation("copy-cocomm" + tag, cp >> sw, cp),
        PartialEquation("copy-counit" + tag, cp >> Par(dl, i), i),
        PartialEquation("frobenius-left" + tag, Par(cp, i) >> Par(i, mu), mu >> cp),
        PartialEquation("frobenius-right" + tag, Par(i, cp) >> Par(mu, i), mu >> cp),
        PartialEquation("special" + tag, cp >> mu, i),
        PartialEquation("partial-inverse" + tag, mu >> cp, bar(mu)),
    ]


def derived_equations(sig: Signature) -> List[PartialEquation]:
    """Structural laws for every sort and copy-naturality for every generator
    of coarity one"""
    derived = []
    for sort in sig.sorts:
        derived.extend(_structural_laws(sort))
    for gen in sig.gens:
        if gen.coarity is None:
            continue
        g = Gen(gen)
        derived.append(PartialEquation("copy-natural[{}]".format(gen.name),
                                       g >> Copy(gen.coarity),
                                       _then(copy_row(gen.arity), Par(g, g))))
    return derived


# Concrete syntax

_THEORY_GRAMMAR = r"""
start: _decl*
_decl: header | sort_decl | op_decl | eq_decl | leq_decl
header: "theory" NAME ";"
sort_decl: "sort" NAME+ ";"
op_decl: "op" NAME ":" arity "->" coarity ";"
arity: (NAME ("*" NAME)*)?
coarity: NAME | ZERO
eq_decl: "eq" NAME ":" seq "=" seq ";"
leq_decl: "leq" NAME ":" seq "<=" seq ";"
ZERO: "0"
""" + TERM_RULES

_THEORY_PARSER = Lark(_THEORY_GRAMMAR, parser="lalr", propagate_positions=True)


def _location(token: Token, source: Optional[str]) -> Location:
    return Location(source, token.line, token.column)


class _TheoryReader:
    """Walks the declarations in order; each term is resolved against the
    signature declared so far"""

    def __init__(self, source: Optional[str]):
        self.source = source
        self.name = None
        self.sorts: List[Sort] = []
        self.gens: List[GenSym] = []
        self.equations: List[PartialEquation] = []
        self.names: Dict[str, Token] = {}

    def _claim(self, token: Token):
        if str(token) in self.names:
            raise TheoryError("duplicate-name", str(token), location=_location(token, self.source))
        self.names[str(token)] = token

    def _sort(self, token: Token) -> Sort:
        for sort in self.sorts:
            if sort.name == str(token):
                return sort
        raise SortError("unknown-sort", str(token), location=_location(token, self.source))

    def _signature(self) -> PartialSignature:
        return PartialSignature(tuple(self.sorts), tuple(self.gens))

    def read(self, tree) -> None:
        if not any(decl.data == "sort_decl" for decl in tree.children):
            self.sorts.append(DEFAULT_SORT)
        for decl in tree.children:
            getattr(self, decl.data)(decl)

    def header(self, decl):
        self.name = str(decl.children[0])

    def sort_decl(self, decl):
        for token in decl.children:
            self._claim(token)
            self.sorts.append(Sort(str(token)))

    def op_decl(self, decl):
        name, arity, coarity = decl.children
        self._claim(name)
        ins = tuple(self._sort(token) for token in arity.children)
        out_token = coarity.children[0]
        out = None if out_token.type == "ZERO" else self._sort(out_token)
        self.gens.append(GenSym(str(name), ins, out))

    def _terms(self, decl):
        label, lhs, rhs = decl.children
        self._claim(label)
        builder = TermBuilder(self._signature())
        return str(label), transform(builder, lhs), transform(builder, rhs), label

    def eq_decl(self, decl):
        label, lhs, rhs, token = self._terms(decl)
        equation = PartialEquation(label, lhs, rhs)
        self._checked(equation, token)
        self.equations.append(equation)

    def leq_decl(self, decl):
        label, lhs, rhs, token = self._terms(decl)
        self._checked(PartialEquation(label, lhs, rhs), token)
        self.equations.append(lower_leq(lhs, rhs, self._signature(), label))

    def _checked(self, equation, token):
        try:
            check_equation_sorts(equation, self._signature())
        except PftError as error:
            if error.location is None:
                error.location = _location(token, self.source)
                error.args = (error.render(),)
            raise


def parse_theory(text: str, name: Optional[str] = None, source: Optional[str] = None) -> Theory:
    """Parse and validate a theory file.

    ``name`` is used when the text has no ``theory NAME ;`` header.
    """
    try:
        tree = _THEORY_PARSER.parse(text)
    except UnexpectedInput as error:
        raise syntax_error(error, source)
    reader = _TheoryReader(source)
    try:
        reader.read(tree)
    except PftError as error:
        raise error.at(source)
    thy = Theory.build(reader.name or name or "untitled", reader._signature(), reader.equations)
    logger.debug("theory %s: %d sorts, %d generators, %d equations, %d derived",
                 thy.name, len(thy.sorts), len(thy.gens), len(thy.equations), len(thy.derived))
    return thy


def _print_op(gen: GenSym) -> str:
    arity = " * ".join(s.name for s in gen.arity)
    coarity = "0" if gen.coarity is None else gen.coarity.name
    return "op {} : {}-> {} ;".format(gen.name, arity + " " if arity else "", coarity)


def print_theory(thy: Theory) -> str:
    """Normalized theory file; parsing it gives back an equal theory"""
    sig = thy.signature
    lines = ["theory {} ;".format(thy.name)]
    if sig.sorts != (DEFAULT_SORT,):
        lines.append("sort {} ;".format(" ".join(s.name for s in sig.sorts)))
    lines.extend(_print_op(gen) for gen in sig.gens)
    for equation in thy.equations:
        if equation.is_inequality:
            lhs, rhs = equation.origin
            lines.append("leq {} : {} <= {} ;".format(
                equation.label, print_term(lhs, sig), print_term(rhs, sig)))
        else:
            lines.append("eq {} : {} = {} ;".format(
                equation.label, print_term(equation.lhs, sig), print_term(equation.rhs, sig)))
    return "\n".join(lines) + "\n"


def builtin_names() -> List[str]:
    """Names accepted by :func:`builtin`, in the order ``pft builtin`` lists them"""
    return list(SOURCES)


@functools.lru_cache(maxsize=None)
def builtin(name: str) -> Theory:
    """Parse and validate one of the shipped theories"""
    if name not in SOURCES:
        raise TheoryError("unknown-builtin", name)
    logger.debug("loading builtin theory %s", name)
    return parse_theory(SOURCES[name], name=name, source="<builtin {}>".format(name))
