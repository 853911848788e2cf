"""Message table and exceptions shared by every module.

Each entry maps a message id to ``(template, symbol, description)``. Code raises
and reports by *symbol*; the id only exists so that output can be grepped.
"""
from collections import namedtuple
from typing import Optional

MESSAGES = {
    "E0101": (
        "syntax error: %s",
        "syntax-error",
        "the input does not conform to the term, theory, model or category grammar",
    ),
    "E0102": (
        "unknown keyword or builtin '%s'",
        "unknown-name",
        "a name was used that is neither declared nor builtin",
    ),
    "E0201": (
        "unknown generator '%s'",
        "unknown-generator",
        "a term mentions a generator the signature does not declare",
    ),
    "E0202": (
        "sort mismatch in sequential composition: outputs (%s) against inputs (%s)",
        "sort-mismatch",
        "the middle sort lists of a sequential composition must agree",
    ),
    "E0203": (
        "unknown sort '%s'",
        "unknown-sort",
        "a sort was used that the signature does not declare",
    ),
    "E0204": (
        "sort brackets are required for '%s' in a multi-sorted signature",
        "missing-sort",
        "brackets may only be omitted when the signature has a single sort",
    ),
    "E0205": (
        "constructor %s is not admissible for target %s",
        "inadmissible-constructor",
        "each structural target accepts a fixed set of constructors",
    ),
    "E0206": (
        "interface mismatch: %s",
        "interface-mismatch",
        "composed or compared maps must share their interfaces",
    ),
    "E0207": (
        "left leg %s is not surjective",
        "not-surjective",
        "arrows of the free DCR prop are cospans with surjective left leg",
    ),
    "E0208": (
        "terms have different sorts: %s against %s",
        "term-sort-mismatch",
        "terms can only be compared when they have the same sort",
    ),
    "E0301": (
        "duplicate declaration of '%s'",
        "duplicate-name",
        "sort, generator and equation names are unique within a theory",
    ),
    "E0302": (
        "equation '%s' has sides of different sorts: %s against %s",
        "equation-sort-mismatch",
        "both sides of a partial equation must have the same sort",
    ),
    "E0303": (
        "unknown builtin theory '%s'",
        "unknown-builtin",
        "the name is not one of the shipped theories",
    ),
    "E0304": (
        "structural constructor '%s' is not part of partial theories",
        "foreign-constructor",
        "the merge unit only exists for the CM and FROB structural targets",
    ),
    "E0401": (
        "model is for theory '%s', expected '%s'",
        "theory-mismatch",
        "a model file names the theory it interprets",
    ),
    "E0402": (
        "bad table for '%s': %s",
        "bad-table",
        "tables must match generator arities and carriers",
    ),
    "E0403": (
        "bad carrier: %s",
        "bad-carrier",
        "every sort of the theory needs a carrier size",
    ),
    "E0404": (
        "bad homomorphism data: %s",
        "bad-map",
        "a sorted map needs one total function per sort",
    ),
    "E0501": (
        "invalid category: %s",
        "invalid-category",
        "composition tables must be associative and unital",
    ),
    "E0502": (
        "arrow set is not closed: %s",
        "not-closed",
        "concrete restriction categories are closed under composition and restriction",
    ),
    "E0503": (
        "required limit is missing: %s",
        "missing-limit",
        "the construction needs limits that the category does not have",
    ),
    "E0601": (
        "search space of %s candidates exceeds the cap of %s",
        "search-limit-exceeded",
        "enumeration refuses to run rather than return a truncated answer",
    ),
    "C0701": (
        "equation '%s' fails at %s: lhs %s, rhs %s",
        "equation-violated",
        "Kleene equality fails on the reported input tuple",
    ),
    "C0702": (
        "generator '%s' not preserved at %s",
        "hom-violated",
        "homomorphisms are total maps making each generator square commute laxly",
    ),
}

_BY_SYMBOL = {symbol: (msgid, template) for msgid, (template, symbol, _) in MESSAGES.items()}

Location = namedtuple("Location", ("source", "line", "column"))


def format_message(symbol: str, *args) -> str:
    """Render the template registered for ``symbol``"""
    _msgid, template = _BY_SYMBOL[symbol]
    return template % args


def msgid_of(symbol: str) -> str:
    """Message id registered for ``symbol``"""
    return _BY_SYMBOL[symbol][0]


class PftError(Exception):
    """Base class of every error raised by the package"""

    def __init__(self, symbol: str, *args, location: Optional[Location] = None):
        self.symbol = symbol
        self.args_ = args
        self.location = location
        super().__init__(self.render())

    def render(self) -> str:
        text = format_message(self.symbol, *self.args_)
        if self.location is None:
            return text
        source, line, column = self.location
        return "{}:{}:{}: {}".format(source or "<input>", line, column, text)

    def at(self, source: str) -> "PftError":
        """Attach a source name to an error that only knows its line and column"""
        if self.location is not None:
            self.location = self.location._replace(source=source)
            self.args = (self.render(),)
        return self


class ParseError(PftError):
    pass


class SortError(PftError):
    pass


class TheoryError(PftError):
    pass


class ModelError(PftError):
    pass


class CategoryError(PftError):
    pass


class SearchLimitExceeded(PftError):
    def __init__(self, candidates: int, cap: int):
        self.candidates = candidates
        self.cap = cap
        super().__init__("search-limit-exceeded", candidates, cap)
