"""
partial_theories
================
Workbench for partial equational theories: string-diagram terms over partial
signatures, exact equality in the free structural fragment via canonical
cospans, and finite models in sets and partial functions.

Usage
-----
```
pft check-theory setoid
pft eq setoid "cp ; mu" "id" --structural
pft enumerate-models setoid --size 3 --count
```
"""
import importlib_metadata

from .diagram import Signature, Sort, parse_term, print_term, sort_of
from .messages import PftError
from .model import (Interpretation, SortedMap, check_equation, check_hom, check_model,
                    enumerate_homs, enumerate_models, eval_term, parse_model)
from .structural import StructTarget, eval_structural, structural_eq
from .theory import Theory, builtin, lower_leq, parse_theory, print_theory

try:
    __version__ = importlib_metadata.version("partial-theories")
except importlib_metadata.PackageNotFoundError:
    __version__ = "unknown"
