import pytest

from partial_theories.diagram import (DEFAULT_SORT, Copy, Del, Empty, Gen, GenSym, Id, Mul, Par,
                                      Seq, Signature, Sort, SortType, Sym, copy_row,
                                      generators_of, parse_term, permutation, print_term,
                                      sort_of, sorts_of)
from partial_theories.messages import ParseError, SortError

A = DEFAULT_SORT
O = Sort('O')
R = GenSym('R', (A, A), None)
DOM = GenSym('dom', (A,), O)

SETOID = Signature(gens=(R,))
TWO_SORTED = Signature(sorts=(O, A), gens=(DOM,))


def test_parse_copy_then_relations():
    assert parse_term('cp ; (R * R)', SETOID) == Seq(Copy(A), Par(Gen(R), Gen(R)))


def test_tensor_binds_tighter_than_sequence():
    assert parse_term('id * id ; mu') == Seq(Par(Id(A), Id(A)), Mul(A))
    assert parse_term('id * (id ; cp)') == Par(Id(A), Seq(Id(A), Copy(A)))


def test_sequence_and_tensor_associate_left():
    assert parse_term('cp ; sw ; mu') == Seq(Seq(Copy(A), Sym(A, A)), Mul(A))
    assert parse_term('id * id * id') == Par(Par(Id(A), Id(A)), Id(A))


@pytest.mark.parametrize(('text', 'shape'), [
    ('cp ; mu', (1, 1)),
    ('sw', (2, 2)),
    ('mu', (2, 1)),
    ('dl', (1, 0)),
    ('empty', (0, 0)),
    ('(id * mu) ; sw', (3, 2)),
    ('(id * cp) ; (mu * id)', (2, 2)),
    ('(cp * cp) ; (R * R)', (2, 0)),
])
def test_sort_shapes(text, shape):
    assert sort_of(parse_term(text, SETOID), SETOID).shape == shape


def test_sort_of_ignores_association():
    a, b, c = Copy(A), Par(Id(A), Copy(A)), Par(Mul(A), Del(A))
    assert sort_of(Seq(Seq(a, b), c)) == sort_of(Seq(a, Seq(b, c))) == SortType((A,), (A,))


def test_sequence_sort_mismatch():
    with pytest.raises(SortError) as info:
        sort_of(parse_term('cp ; cp'))
    assert info.value.symbol == 'sort-mismatch'


def test_unknown_generator_is_located():
    with pytest.raises(SortError) as info:
        parse_term('cp ; foo', SETOID)
    assert info.value.symbol == 'unknown-generator'
    assert (info.value.location.line, info.value.location.column) == (1, 6)


def test_generator_not_in_signature():
    with pytest.raises(SortError) as info:
        sort_of(Gen(R))
    assert info.value.symbol == 'unknown-generator'


@pytest.mark.parametrize('text', ['cp ;', '(cp', 'cp * * mu', ';'])
def test_syntax_errors(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert info.value.symbol == 'syntax-error'


def test_multi_sorted_terms_need_sort_brackets():
    with pytest.raises(SortError) as info:
        parse_term('cp', TWO_SORTED)
    assert info.value.symbol == 'missing-sort'
    assert parse_term('cp[O] ; (dl[O] * id[O])', TWO_SORTED) == \
        Seq(Copy(O), Par(Del(O), Id(O)))
    assert parse_term('sw[O,A]', TWO_SORTED) == Sym(O, A)
    assert parse_term('sw[O]', TWO_SORTED) == Sym(O, O)


def test_unknown_sort():
    with pytest.raises(SortError) as info:
        parse_term('id[B]', TWO_SORTED)
    assert info.value.symbol == 'unknown-sort'


def test_generator_output_sort():
    t = parse_term('cp[A] ; (dom * id[A])', TWO_SORTED)
    assert sort_of(t, TWO_SORTED) == SortType((A,), (O, A))
    assert generators_of(t) == ['dom']
    assert sorts_of(t) == [A, O]


@pytest.mark.parametrize('text', [
    'cp ; (R * R)',
    'id * id ; mu',
    'cp ; (sw ; mu)',
    '(id * cp) * id ; (id * mu * id)',
    'empty',
    '(cp ; mu) * dl',
])
def test_print_parse_round_trip(text):
    t = parse_term(text, SETOID)
    assert parse_term(print_term(t, SETOID), SETOID) == t


def test_print_normalizes_parentheses():
    assert print_term(parse_term('((cp)) ; (mu)')) == 'cp ; mu'
    assert print_term(Seq(Copy(A), Seq(Sym(A, A), Mul(A)))) == 'cp ; (sw ; mu)'
    assert print_term(Par(Id(A), Par(Id(A), Id(A)))) == 'id * (id * id)'
    assert print_term(Par(Copy(O), Id(A)), TWO_SORTED) == 'cp[O] * id[A]'
    assert print_term(Sym(O, A), TWO_SORTED) == 'sw[O,A]'


def test_copy_row_duplicates_every_wire():
    assert copy_row([]) == Empty()
    assert copy_row([A]) == Copy(A)
    assert sort_of(copy_row([O, A])) == SortType((O, A), (O, A, O, A))


def test_permutation_sorts():
    assert sort_of(permutation([O, A, A], [2, 0, 1])) == SortType((O, A, A), (A, O, A))
    assert permutation([O, A], [0, 1]) == Par(Id(O), Id(A))
