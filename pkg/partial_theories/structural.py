"""Evaluation of generator-free terms into combinatorial props.

=========  ==========================  =====================================
target     constructors                value of a term of sort ``(m, n)``
=========  ==========================  =====================================
``CM``     mu, un                      function ``[m] -> [n]``
``CAM``    mu                          surjective function ``[m] -> [n]``
``CC``     cp, dl                      function ``[n] -> [m]`` (an F^op arrow)
``FROB``   cp, dl, mu, un              cospan ``m -> n``
``PF``     cp, dl, mu                  cospan with surjective left leg
=========  ==========================  =====================================

Every target also admits ``id``, ``sw`` and ``empty``. Equality in the free
structural fragment is decided on canonical ``PF`` values.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Mapping, Tuple, Union

from .diagram import (Copy, Del, Empty, Gen, Id, Mul, Par, Seq, Sort, Sym, Term, Unit,
                      constructors_of, sort_of, sorts_of, STRUCTURAL_KEYWORDS)
from .finpar import (FinFun, FinPfn, RawCospan, SurjCospan, TupleSpace, cospan_canonicalize,
                     cospan_compose, cospan_tensor, raw_cospan_canonicalize, raw_cospan_compose,
                     raw_cospan_tensor)
from .messages import SortError

logger = logging.getLogger(__name__)


class StructTarget(enum.Enum):
    CM = "cm"
    CC = "cc"
    CAM = "cam"
    FROB = "frob"
    PF = "pf"


_WIRING = {Id, Sym, Empty}

ADMISSIBLE = {
    StructTarget.CM: _WIRING | {Mul, Unit},
    StructTarget.CAM: _WIRING | {Mul},
    StructTarget.CC: _WIRING | {Copy, Del},
    StructTarget.FROB: _WIRING | {Copy, Del, Mul, Unit},
    StructTarget.PF: _WIRING | {Copy, Del, Mul},
}

_SWAP = FinFun(2, 2, (2, 1))
_FOLD = FinFun(2, 1, (1, 1))
_POINT = FinFun(0, 1, ())

# Basic cospans [m] -left-> [k] <-right- [n]
_BASIC_COSPANS = {
    Id: (FinFun.identity(1), FinFun.identity(1)),
    Sym: (FinFun.identity(2), _SWAP),
    Copy: (FinFun.identity(1), _FOLD),
    Del: (FinFun.identity(1), _POINT),
    Mul: (_FOLD, FinFun.identity(1)),
    Unit: (_POINT, FinFun.identity(1)),
    Empty: (FinFun.identity(0), FinFun.identity(0)),
}

# Functions [m] -> [n] for CM and CAM, read backwards ([n] -> [m]) for CC
_BASIC_FUNCTIONS = {
    Id: FinFun.identity(1),
    Sym: _SWAP,
    Mul: _FOLD,
    Copy: _FOLD,
    Unit: _POINT,
    Del: _POINT,
    Empty: FinFun.identity(0),
}


def _constructor_name(leaf: Term) -> str:
    if isinstance(leaf, Gen):
        return leaf.sym.name
    if isinstance(leaf, Empty):
        return "empty"
    return STRUCTURAL_KEYWORDS[type(leaf)]


def _check_admissible(t: Term, target: StructTarget):
    allowed = ADMISSIBLE[target]
    for leaf in constructors_of(t):
        if type(leaf) not in allowed:
            raise SortError("inadmissible-constructor", _constructor_name(leaf), target.name)


def _evaluate(t: Term, target: StructTarget):
    if isinstance(t, Seq):
        first, second = _evaluate(t.first, target), _evaluate(t.second, target)
        if target is StructTarget.PF:
            return cospan_compose(first, second)
        if target is StructTarget.FROB:
            return raw_cospan_compose(first, second)
        if target is StructTarget.CC:
            return second.compose(first)
        return first.compose(second)
    if isinstance(t, Par):
        top, bottom = _evaluate(t.top, target), _evaluate(t.bottom, target)
        if target is StructTarget.PF:
            return cospan_tensor(top, bottom)
        if target is StructTarget.FROB:
            return raw_cospan_tensor(top, bottom)
        return top.tensor(bottom)
    if target is StructTarget.PF:
        return cospan_canonicalize(RawCospan(*_BASIC_COSPANS[type(t)]))
    if target is StructTarget.FROB:
        return raw_cospan_canonicalize(RawCospan(*_BASIC_COSPANS[type(t)]))
    return _BASIC_FUNCTIONS[type(t)]


def eval_structural(t: Term, target: StructTarget = StructTarget.PF) -> Union[FinFun, RawCospan]:
    """Compositional value of a single-sorted generator-free term in ``target``"""
    _check_admissible(t, target)
    if len(sorts_of(t)) > 1:
        raise SortError("inadmissible-constructor", "multi-sorted term", target.name)
    sort_of(t)
    return _evaluate(t, target)


@dataclass(frozen=True)
class SortedCospan:
    """A canonical surjective cospan whose interface wires carry sorts.

    Apex elements inherit the sort of their left-leg preimages; the right leg
    must respect it.
    """
    ins: Tuple[Sort, ...]
    outs: Tuple[Sort, ...]
    cospan: SurjCospan

    def __post_init__(self):
        object.__setattr__(self, "ins", tuple(self.ins))
        object.__setattr__(self, "outs", tuple(self.outs))
        if (len(self.ins), len(self.outs)) != (self.cospan.m, self.cospan.n):
            raise SortError("interface-mismatch", "sort lists against {}".format(self.cospan))
        apex = self.apex_sorts
        for j, e in enumerate(self.cospan.right.image):
            if apex[e - 1] != self.outs[j]:
                raise SortError("interface-mismatch",
                                "right leg joins sorts {} and {}".format(apex[e - 1], self.outs[j]))

    @property
    def apex_sorts(self) -> Tuple[Sort, ...]:
        apex = {}
        for i, e in enumerate(self.cospan.left.image):
            sort = apex.setdefault(e, self.ins[i])
            if sort != self.ins[i]:
                raise SortError("interface-mismatch",
                                "left leg joins sorts {} and {}".format(sort, self.ins[i]))
        return tuple(apex[e] for e in range(1, self.cospan.k + 1))

    def compose(self, other: "SortedCospan") -> "SortedCospan":
        if self.outs != other.ins:
            raise SortError("sort-mismatch", ", ".join(map(str, self.outs)),
                            ", ".join(map(str, other.ins)))
        return SortedCospan(self.ins, other.outs, cospan_compose(self.cospan, other.cospan))

    def tensor(self, other: "SortedCospan") -> "SortedCospan":
        return SortedCospan(self.ins + other.ins, self.outs + other.outs,
                            cospan_tensor(self.cospan, other.cospan))

    def __str__(self):
        return str(self.cospan)


def _evaluate_sorted(t: Term) -> SortedCospan:
    if isinstance(t, Seq):
        return _evaluate_sorted(t.first).compose(_evaluate_sorted(t.second))
    if isinstance(t, Par):
        return _evaluate_sorted(t.top).tensor(_evaluate_sorted(t.bottom))
    kind = sort_of(t)
    return SortedCospan(kind.ins, kind.outs, cospan_canonicalize(RawCospan(*_BASIC_COSPANS[type(t)])))


def eval_sorted(t: Term) -> SortedCospan:
    """Sort-indexed ``PF`` value of a generator-free term over any sorts"""
    _check_admissible(t, StructTarget.PF)
    sort_of(t)
    return _evaluate_sorted(t)


def structural_eq(t1: Term, t2: Term) -> bool:
    """Exact equality of generator-free terms in the free DCR prop"""
    kind1, kind2 = sort_of(t1), sort_of(t2)
    if kind1 != kind2:
        raise SortError("term-sort-mismatch", kind1, kind2)
    c1, c2 = eval_sorted(t1), eval_sorted(t2)
    logger.debug("normal forms %s and %s", c1, c2)
    return c1 == c2


def cospan_semantics(c: Union[SurjCospan, SortedCospan],
                     carrier: Union[int, Mapping[Sort, int]]) -> FinPfn:
    """The partial function ``A^m -> A^n`` denoted by a cospan.

    An input tuple is in the domain iff it is constant on every fibre of the
    left leg; output ``j`` is the value of the fibre ``right(j)``.
    """
    if isinstance(c, SortedCospan):
        size_of = (lambda s: carrier) if isinstance(carrier, int) else carrier.__getitem__
        ins = TupleSpace([size_of(s) for s in c.ins])
        outs = TupleSpace([size_of(s) for s in c.outs])
        c = c.cospan
    else:
        ins = TupleSpace([carrier] * c.m)
        outs = TupleSpace([carrier] * c.n)
    mapping = []
    for elements in ins:
        values = {}
        consistent = True
        for value, block in zip(elements, c.left.image):
            if values.setdefault(block, value) != value:
                consistent = False
                break
        if consistent:
            mapping.append(outs.index(tuple(values[e] for e in c.right.image)))
        else:
            mapping.append(None)
    return FinPfn(len(ins), len(outs), mapping)
