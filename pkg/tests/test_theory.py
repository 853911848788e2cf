import contextlib
import itertools
import typing

import pytest

from partial_theories.diagram import (DEFAULT_SORT, Gen, Seq, Sort, SortType, parse_term,
                                      print_term)
from partial_theories.finpar import FinPfn, TupleSpace, all_funs, all_pfns
from partial_theories.messages import PftError, SortError, TheoryError
from partial_theories.model import Interpretation, check_equation, check_model
from partial_theories.structural import structural_eq
from partial_theories.theory import (PartialEquation, bar, builtin, builtin_names, lower_leq,
                                     parse_theory, print_theory)

A = DEFAULT_SORT


@contextlib.contextmanager
def expect_error(error_type: typing.Type[PftError], symbol: str, line: typing.Optional[int] = None) \
        -> typing.Iterator[None]:
    with pytest.raises(error_type) as info:
        yield
    assert info.value.symbol == symbol
    if line is not None:
        assert info.value.location.line == line


def test_setoid():
    thy = builtin('setoid')
    assert thy.sorts == (A,)
    assert [g.name for g in thy.gens] == ['R']
    assert thy.gens[0].coarity is None
    assert [e.label for e in thy.equations] == ['sym', 'refl', 'trans']
    assert [e.is_inequality for e in thy.equations] == [False, False, True]


def test_pca_generators():
    thy = builtin('pca')
    assert [(g.name, len(g.arity)) for g in thy.gens] == [('app', 2), ('k', 0), ('s', 0)]
    assert len(thy.equations) == 5


def test_total_cmon_extends_pcm():
    pcm, total = builtin('pcm'), builtin('total_cmon')
    assert total.equations[:len(pcm.equations)] == pcm.equations
    assert len(total.equations) == len(pcm.equations) + 2


def test_category_is_two_sorted():
    thy = builtin('category')
    assert [s.name for s in thy.sorts] == ['O', 'A']
    assert thy.signature.lookup('comp').coarity == Sort('A')
    assert thy.equation('comp_dom').is_inequality


def test_ccc_lambda_arity():
    lam = builtin('ccc').signature.lookup('lam')
    assert [s.name for s in lam.arity] == ['O', 'O', 'O', 'A']


@pytest.mark.parametrize('name', builtin_names())
def test_builtin_print_parse_round_trip(name):
    thy = builtin(name)
    assert parse_theory(print_theory(thy)) == thy


def test_unknown_builtin():
    with expect_error(TheoryError, 'unknown-builtin'):
        builtin('groupoid')


def test_derived_equations():
    thy = builtin('pairing')
    labels = [e.label for e in thy.derived]
    assert 'partial-inverse[A]' in labels
    assert 'copy-natural[pair]' in labels
    assert len(labels) == 9 + 3
    assert 'copy-natural[R]' not in [e.label for e in builtin('setoid').derived]


def test_header_and_default_name():
    text = 'op m : A * A -> A ;\neq comm : sw ; m = m ;\n'
    assert parse_theory(text).name == 'untitled'
    assert parse_theory(text, name='magma').name == 'magma'
    assert parse_theory('theory named ;\n' + text, name='magma').name == 'named'


def test_equation_sides_must_have_one_sort():
    with pytest.raises(TheoryError) as info:
        parse_theory('op m : A * A -> A ;\neq bad : m = id ;\n', source='bad.thy')
    assert info.value.symbol == 'equation-sort-mismatch'
    assert info.value.location.source == 'bad.thy'
    assert info.value.location.line == 2


def test_duplicate_names():
    with expect_error(TheoryError, 'duplicate-name', line=2):
        parse_theory('op m : A * A -> A ;\nop m : A -> A ;\n')
    with expect_error(TheoryError, 'duplicate-name'):
        parse_theory('op m : A -> A ;\neq m : m = m ;\n')


def test_unknown_sort_in_declaration():
    with expect_error(SortError, 'unknown-sort', line=2):
        parse_theory('sort O A ;\nop f : B -> A ;\n')


def test_merge_unit_is_rejected():
    with expect_error(TheoryError, 'foreign-constructor'):
        parse_theory('op f : A -> A ;\neq u : un ; dl = empty ;\n')


def test_unknown_generator_in_equation():
    with expect_error(SortError, 'unknown-generator', line=2):
        parse_theory('op f : A -> A ;\neq g_idem : g ; g = g ;\n')


def test_lowered_inequality_prints_back():
    thy = parse_theory('op f : A -> A ;\nleq shrink : f <= id ;\n')
    equation = thy.equation('shrink')
    assert equation.origin == (Gen(thy.gens[0]), parse_term('id'))
    assert 'leq shrink : f <= id ;' in print_theory(thy)


def test_reflexive_inequality_holds_everywhere():
    thy = builtin('setoid')
    t = parse_term('(id * cp) ; (R * dl)', thy.signature)
    equation = lower_leq(t, t, thy.signature, 'refl_leq')
    relation = FinPfn(9, 1, (1, None, 1, None, 1, None, None, 1, 1))
    m = Interpretation('lopsided', 'setoid', {A: 3}, {'R': relation})
    assert check_equation(thy, m, equation) is None


def test_lowered_form_is_a_structural_identity_for_wiring():
    t = parse_term('mu')
    lowered = lower_leq(t, parse_term('id * dl'))
    assert print_term(lowered.rhs) == 'mu'
    assert structural_eq(lowered.lhs, lowered.rhs)


def test_one_point_total_model_satisfies_every_builtin():
    for name in builtin_names():
        thy = builtin(name)
        tables = {g.name: FinPfn(1, 1, (1,)) for g in thy.gens}
        m = Interpretation('point', name, {s: 1 for s in thy.sorts}, tables)
        report = check_model(thy, m, audit=True)
        assert report.ok, (name, report.failures)


@pytest.mark.parametrize('name', ['cr_cat', 'dcr_cat', 'cartesian_cat', 'ccc'])
def test_copy_counit_runs_from_objects_to_arrows(name):
    thy = builtin(name)
    counit = thy.equation('delta_counit')
    assert counit.sort(thy.signature) == SortType((Sort('O'),), (A,))


def test_transitivity_lowers_to_its_equation_form():
    thy = builtin('setoid')
    lhs = parse_term('(id * cp * id) ; (R * R)', thy.signature)
    rhs = parse_term('(id * dl * id) ; R', thy.signature)
    trans = thy.equation('trans')
    assert trans.origin == (lhs, rhs)
    assert (trans.lhs, trans.rhs) == (Seq(bar(lhs, thy.signature), rhs), lhs)
    for bits in itertools.product((None, 1), repeat=9):
        rel = {xy for xy, bit in zip(TupleSpace([3, 3]), bits) if bit}
        m = Interpretation('rel', 'setoid', {A: 3}, {'R': FinPfn(9, 1, bits)})
        transitive = all((x, z) in rel for x, y in rel for w, z in rel if y == w)
        assert (check_equation(thy, m, trans) is None) == transitive


def test_total_lhs_inequality_is_equality_with_the_restricted_rhs():
    thy = parse_theory('op f : A -> A ;\nop g : A -> A ;\n', name='fg')
    f, g = parse_term('f', thy.signature), parse_term('g', thy.signature)
    lowered = lower_leq(f, g, thy.signature, 'f_below_g')
    restricted = PartialEquation('f_is_restricted_g', f, Seq(bar(f, thy.signature), g))
    for total in all_funs(3, 3):
        f_table = FinPfn.from_fun(total)
        for g_table in all_pfns(3, 3):
            m = Interpretation('fg', 'fg', {A: 3}, {'f': f_table, 'g': g_table})
            holds = check_equation(thy, m, lowered) is None
            assert holds == (check_equation(thy, m, restricted) is None)
            assert holds == (g_table == f_table)
