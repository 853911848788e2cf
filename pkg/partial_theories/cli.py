"""Command line front end.

Exit status is 0 when the check holds, 1 when it fails with a counterexample
and 2 for usage, parse and validation errors.
"""
import functools
import logging
import os
import sys
from typing import Dict, Optional

import click

from . import __version__
from .catkit import (all_partial_functions, finset_category, has_finite_limits, kt_totals,
                     missing_limit, par_construction, parse_category, parse_rcat)
from .diagram import Term, parse_term, sort_of
from .finpar import FinFun
from .messages import PftError, format_message, msgid_of
from .model import (DEFAULT_SEARCH_CAP, SortedMap, check_hom, check_equation, check_model,
                    count_models, enumerate_homs, enumerate_models, eval_term, format_values,
                    parse_model, print_model, search_counterexample)
from .structural import StructTarget, eval_sorted, eval_structural, structural_eq
from .theory import PartialEquation, Theory, builtin, builtin_names, parse_theory, print_theory


class TheoryParam(click.ParamType):
    """A theory file, or the name of a builtin theory"""
    name = "theory"

    def convert(self, value, param, ctx):
        if isinstance(value, Theory):
            return value
        try:
            if os.path.exists(value):
                with open(value, encoding="utf-8") as handle:
                    stem = os.path.splitext(os.path.basename(value))[0]
                    return parse_theory(handle.read(), name=stem, source=value)
            return builtin(value)
        except PftError as error:
            self.fail(error.render(), param, ctx)


THEORY = TheoryParam()


def _reporting(command):
    """Turn package errors into a message on stderr and exit status 2"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except PftError as error:
            click.echo("{} {}".format(msgid_of(error.symbol), error.render()), err=True)
            raise click.exceptions.Exit(2)
    return wrapper


def _fail():
    raise click.exceptions.Exit(1)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


class SizesParam(click.ParamType):
    """``3`` for every sort, or ``O=1,A=2``"""
    name = "sizes"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            if "=" not in value:
                sizes = int(value)
                values = [sizes]
            else:
                sizes = {}
                for part in value.split(","):
                    sort, _, size = part.partition("=")
                    sizes[sort.strip()] = int(size)
                values = list(sizes.values())
        except ValueError:
            self.fail("expected a size or SORT=SIZE pairs, got {!r}".format(value), param, ctx)
        if any(size < 0 for size in values):
            self.fail("sizes must not be negative, got {!r}".format(value), param, ctx)
        return sizes


class IntListParam(click.ParamType):
    """Comma separated sizes such as ``0,1,2``"""
    name = "sizes"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return [int(part) for part in value.split(",") if part.strip()]
        except ValueError:
            self.fail("expected comma separated sizes, got {!r}".format(value), param, ctx)


SIZES = SizesParam()
INT_LIST = IntListParam()


def _violation_line(violation) -> str:
    return "{} {}".format(msgid_of("equation-violated"), format_message(
        "equation-violated", violation.equation, format_values(violation.inputs),
        format_values(violation.lhs), format_values(violation.rhs)))


@click.group()
@click.version_option(__version__, prog_name="pft")
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages to stderr.")
def pft(verbose):
    """Check partial theories, their terms and their finite models."""
    if verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format="%(name)s: %(message)s")


@pft.command("check-theory")
@click.argument("theory", type=THEORY)
@_reporting
def check_theory(theory):
    """Parse and validate THEORY."""
    click.echo("OK theory {}: {} sorts, {} generators, {} equations ({} derived)".format(
        theory.name, len(theory.sorts), len(theory.gens), len(theory.equations),
        len(theory.derived)))


@pft.command()
@click.option("--term", "text", required=True, help="Generator-free term.")
@click.option("--target", type=click.Choice([t.value for t in StructTarget]), default="pf",
              show_default=True)
@click.option("--theory", type=THEORY, help="Theory providing the sorts.")
@_reporting
def normalize(text, target, theory):
    """Print the canonical structural value of a term."""
    t = parse_term(text, theory.signature if theory else None)
    target = StructTarget(target)
    if target is StructTarget.PF and theory is not None and len(theory.sorts) > 1:
        click.echo(eval_sorted(t))
    else:
        click.echo(eval_structural(t, target))


@pft.command()
@click.argument("theory", type=THEORY)
@click.argument("lhs")
@click.argument("rhs")
@click.option("--structural", is_flag=True, help="Exact equality of generator-free terms.")
@click.option("--in-model", "model_path", type=click.Path(exists=True, dir_okay=False),
              help="Kleene equality in one model.")
@click.option("--model-search", type=click.IntRange(min=0), metavar="N",
              help="Look for a counterexample in all models up to size N.")
@click.option("--search-cap", type=int, default=DEFAULT_SEARCH_CAP, envvar="PFT_SEARCH_CAP",
              show_default=True)
@_reporting
def eq(theory, lhs, rhs, structural, model_path, model_search, search_cap):
    """Compare the terms LHS and RHS over THEORY."""
    modes = [structural, model_path is not None, model_search is not None]
    if sum(modes) != 1:
        raise click.UsageError("choose exactly one of --structural, --in-model, --model-search")
    left, right = parse_term(lhs, theory.signature), parse_term(rhs, theory.signature)
    if structural:
        if structural_eq(left, right):
            click.echo("EQUAL")
            return
        click.echo("NOT EQUAL")
        _fail()
    query = PartialEquation("query", left, right)
    if model_path is not None:
        m = parse_model(_read(model_path), theory, source=model_path)
        violation = check_equation(theory, m, query)
        if violation is None:
            click.echo("EQUAL")
            return
        click.echo("NOT EQUAL")
        click.echo(_violation_line(violation))
        _fail()
    found = search_counterexample(theory, left, right, model_search, cap=search_cap)
    if found is None:
        click.echo("NO COUNTEREXAMPLE FOUND ≤ {}".format(model_search))
        return
    m, violation = found
    click.echo("NOT EQUAL")
    click.echo(_violation_line(violation))
    click.echo(print_model(theory, m), nl=False)
    _fail()


@pft.command("check-model")
@click.argument("theory", type=THEORY)
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--audit", is_flag=True, help="Also check the derived structural equations.")
@_reporting
def check_model_command(theory, model_path, audit):
    """Check that MODEL satisfies every equation of THEORY."""
    m = parse_model(_read(model_path), theory, source=model_path)
    report = check_model(theory, m, audit=audit)
    if report.ok:
        click.echo("OK ({} equations)".format(len(report.results)))
        return
    for violation in report.failures:
        click.echo(_violation_line(violation))
    click.echo("FAILED ({} of {} equations)".format(len(report.failures), len(report.results)))
    _fail()


@pft.command("enumerate-models")
@click.argument("theory", type=THEORY)
@click.option("--size", "size", type=SIZES, required=True,
              help="Carrier size, or per sort as O=1,A=2.")
@click.option("--count", "count_only", is_flag=True, help="Only print the number of models.")
@click.option("--iso", is_flag=True, help="One model per isomorphism class.")
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--search-cap", type=int, default=DEFAULT_SEARCH_CAP, envvar="PFT_SEARCH_CAP",
              show_default=True)
@_reporting
def enumerate_models_command(theory, size, count_only, iso, jobs, search_cap):
    """List the models of THEORY with the given carrier sizes."""
    options = dict(dedup=iso, cap=search_cap, jobs=jobs)
    if count_only:
        click.echo(count_models(theory, size, **options))
        return
    for i, m in enumerate(enumerate_models(theory, size, **options)):
        if i:
            click.echo()
        click.echo(print_model(theory, m), nl=False)


def _parse_maps(theory: Theory, source, target, specs) -> SortedMap:
    maps: Dict = {}
    for spec in specs:
        name, _, values = spec.partition("=")
        sort = theory.signature.sort_named(name.strip())
        if sort is None:
            raise click.BadParameter("unknown sort {}".format(name), param_hint="--map")
        try:
            image = [int(v) + 1 for v in values.split()]
        except ValueError as error:
            raise click.BadParameter("elements must be numbers: {}".format(spec),
                                     param_hint="--map") from error
        maps[sort] = FinFun(source.size(sort), target.size(sort), image)
    return SortedMap(maps)


@pft.command()
@click.argument("theory", type=THEORY)
@click.argument("source_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("target_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--map", "specs", multiple=True, metavar="S=v0 v1 ...",
              help="Check this map instead of listing all homomorphisms.")
@click.option("--search-cap", type=int, default=DEFAULT_SEARCH_CAP, envvar="PFT_SEARCH_CAP",
              show_default=True)
@_reporting
def hom(theory, source_path, target_path, specs, search_cap):
    """Homomorphisms between two models of THEORY."""
    source = parse_model(_read(source_path), theory, source=source_path)
    target = parse_model(_read(target_path), theory, source=target_path)
    if specs:
        violation = check_hom(theory, source, target, _parse_maps(theory, source, target, specs))
        if violation is None:
            click.echo("HOMOMORPHISM")
            return
        click.echo("{} {}".format(msgid_of("hom-violated"), format_message(
            "hom-violated", violation.generator, format_values(violation.inputs))))
        _fail()
    count = 0
    for F in enumerate_homs(theory, source, target, cap=search_cap):
        click.echo(F)
        count += 1
    click.echo("{} homomorphisms".format(count))


@pft.command("eval")
@click.argument("theory", type=THEORY)
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("term")
@_reporting
def eval_command(theory, model_path, term):
    """Tabulate TERM in a model of THEORY."""
    m = parse_model(_read(model_path), theory, source=model_path)
    t: Term = parse_term(term, theory.signature)
    kind = sort_of(t, theory.signature)
    table = eval_term(theory, m, t)
    outs = m.space(kind.outs)
    for xs, value in zip(m.space(kind.ins), table.mapping):
        shown = "undef" if value is None else " ".join(map(str, outs.tuple_at(value))) or "def"
        click.echo("{}-> {}".format("".join("{} ".format(x) for x in xs), shown))


@pft.command("builtin")
@click.argument("name", required=False)
@_reporting
def builtin_command(name: Optional[str]):
    """Print the builtin theory NAME, or list the builtin theories."""
    if name is None:
        for known in builtin_names():
            click.echo(known)
        return
    click.echo(print_theory(builtin(name)), nl=False)


@pft.group()
def catkit():
    """Finite categories, partial maps and split restriction idempotents."""


def _category(path, sizes):
    if (path is None) == (sizes is None):
        raise click.UsageError("give either a category file or --sizes")
    if path is not None:
        return parse_category(_read(path), source=path)
    return finset_category(sizes, validate=False)


@catkit.command()
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--sizes", type=INT_LIST, help="Finite sets of these sizes, e.g. 0,1,2.")
@_reporting
def par(path, sizes):
    """Hom-set sizes of the category of partial maps."""
    P = par_construction(_category(path, sizes))
    for x in P.objects:
        for y in P.objects:
            click.echo("hom({}, {}) = {}".format(x, y, len(P.hom(x, y))))


@catkit.command()
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--sizes", type=INT_LIST,
              help="All partial functions between sets of these sizes, e.g. 1,2.")
@_reporting
def kt(path, sizes):
    """Total maps between split restriction idempotents."""
    if (path is None) == (sizes is None):
        raise click.UsageError("give either a restriction category file or --sizes")
    X = parse_rcat(_read(path), source=path)[0] if path else all_partial_functions(sizes)
    K = kt_totals(X)
    click.echo("{} objects, {} arrows".format(len(K.objects), len(K.arrows)))
    click.echo("finite limits: {}".format("yes" if has_finite_limits(K) else "no"))


@catkit.command("check-lex")
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--sizes", type=INT_LIST, help="Finite sets of these sizes, e.g. 0,1,2.")
@_reporting
def check_lex(path, sizes):
    """Check for a terminal object, binary products and equalizers."""
    missing = missing_limit(_category(path, sizes))
    if missing is None:
        click.echo("HAS FINITE LIMITS")
        return
    click.echo("{} {}".format(msgid_of("missing-limit"), format_message("missing-limit", missing)))
    _fail()


def main():
    pft(prog_name="pft")
