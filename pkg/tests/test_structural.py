import random

import pytest

from partial_theories.diagram import (DEFAULT_SORT, Copy, Del, Id, Mul, Par, Seq, Signature,
                                      Sort, Sym, parse_term, tensor_all)
from partial_theories.finpar import FinFun, all_surj_cospans
from partial_theories.messages import SortError
from partial_theories.model import Interpretation, eval_term
from partial_theories.structural import (StructTarget, cospan_semantics, eval_sorted,
                                         eval_structural, structural_eq)
from partial_theories.theory import PartialSignature, Theory, bar, derived_equations

# pylint: disable=redefined-outer-name

A = DEFAULT_SORT
O = Sort('O')

# (constructor, inputs, outputs) usable in a random layer of wires
_PRIMITIVES = [(Id(A), 1, 1), (Copy(A), 1, 2), (Del(A), 1, 0), (Mul(A), 2, 1),
               (Sym(A, A), 2, 2)]


def _random_layer(rng, width, max_width):
    """A tensor of primitives consuming ``width`` wires, and its output width"""
    parts, outputs, remaining = [], 0, width
    while remaining:
        choices = [(t, i, o) for t, i, o in _PRIMITIVES
                   if i <= remaining and outputs + o + (remaining - i) <= max_width]
        t, i, o = rng.choice(choices)
        parts.append(t)
        outputs += o
        remaining -= i
    return tensor_all(parts), outputs


def _random_term(rng, max_width=4, max_layers=4):
    width = rng.randint(1, max_width)
    inputs = width
    term = None
    for _ in range(rng.randint(1, max_layers)):
        if not width:
            break
        layer, width = _random_layer(rng, width, max_width)
        term = layer if term is None else Seq(term, layer)
    return term, inputs


@pytest.fixture(scope='module')
def wiring_theory():
    return Theory.build('wiring', PartialSignature(), [])


def _carrier_model(size):
    return Interpretation('carrier', 'wiring', {A: size}, {})


def test_cospan_semantics_agrees_with_models(wiring_theory):
    rng = random.Random(7)
    for _ in range(1000):
        term, inputs = _random_term(rng)
        size = inputs + 1
        expected = eval_term(wiring_theory, _carrier_model(size), term)
        assert cospan_semantics(eval_structural(term), size) == expected, term


@pytest.mark.parametrize('equation', derived_equations(Signature()),
                         ids=lambda e: e.label)
def test_structural_laws_hold(equation):
    assert structural_eq(equation.lhs, equation.rhs)


def test_partial_inverse_law():
    assert structural_eq(Seq(Mul(A), Copy(A)), bar(Mul(A)))
    assert str(eval_structural(Seq(Mul(A), Copy(A)))) == 'm=2 n=2 k=1 left=[1,1] right=[1,1]'


def test_merge_is_not_total():
    assert not structural_eq(Mul(A), Par(Id(A), Del(A)))
    assert not structural_eq(Seq(Mul(A), Copy(A)), Par(Id(A), Id(A)))


def test_structural_eq_rejects_different_sorts():
    with pytest.raises(SortError) as info:
        structural_eq(Copy(A), Id(A))
    assert info.value.symbol == 'term-sort-mismatch'


@pytest.mark.parametrize(('m', 'n'), [(m, n) for m in range(4) for n in range(4)])
def test_cospan_semantics_is_faithful(m, n):
    cospans = list(all_surj_cospans(m, n))
    meanings = {cospan_semantics(c, m + 1) for c in cospans}
    assert len(meanings) == len(cospans)


def test_commutative_monoid_target():
    assert eval_structural(parse_term('mu'), StructTarget.CM) == FinFun(2, 1, (1, 1))
    assert eval_structural(parse_term('un'), StructTarget.CM) == FinFun(0, 1, ())
    assert eval_structural(parse_term('(un * id) ; mu'), StructTarget.CM) == FinFun.identity(1)
    assert eval_structural(parse_term('(id * mu) ; mu'), StructTarget.CM) == \
        eval_structural(parse_term('(mu * id) ; mu'), StructTarget.CM)


def test_cocommutative_comonoid_target_reads_backwards():
    assert eval_structural(parse_term('cp'), StructTarget.CC) == FinFun(2, 1, (1, 1))
    assert eval_structural(parse_term('cp ; (dl * id)'), StructTarget.CC) == FinFun.identity(1)
    assert eval_structural(parse_term('cp ; sw'), StructTarget.CC) == \
        eval_structural(parse_term('cp'), StructTarget.CC)


@pytest.mark.parametrize(('text', 'target'), [
    ('un', StructTarget.CAM),
    ('cp', StructTarget.CM),
    ('mu', StructTarget.CC),
    ('un', StructTarget.PF),
])
def test_inadmissible_constructors(text, target):
    with pytest.raises(SortError) as info:
        eval_structural(parse_term(text), target)
    assert info.value.symbol == 'inadmissible-constructor'


def test_frobenius_target_keeps_units():
    assert str(eval_structural(parse_term('un ; cp'), StructTarget.FROB)) == \
        'm=0 n=2 k=1 left=[] right=[1,1]'
    assert str(eval_structural(parse_term('dl ; un'), StructTarget.FROB)) == \
        'm=1 n=1 k=2 left=[1] right=[2]'


def test_sorted_cospans_keep_sorts_apart():
    sig = Signature(sorts=(O, A))
    swap = parse_term('sw[O,A] ; sw[A,O]', sig)
    assert structural_eq(swap, parse_term('id[O] * id[A]', sig))
    value = eval_sorted(parse_term('cp[O] * mu[A]', sig))
    assert value.ins == (O, A, A)
    assert value.outs == (O, O, A)
    assert value.apex_sorts == (O, A)


def test_sorted_semantics_with_carriers_per_sort():
    sig = Signature(sorts=(O, A))
    value = eval_sorted(parse_term('dl[O] * cp[A]', sig))
    table = cospan_semantics(value, {O: 2, A: 3})
    assert (table.src, table.tgt) == (6, 9)
    assert table.is_total()


def test_single_sorted_evaluation_rejects_several_sorts():
    sig = Signature(sorts=(O, A))
    with pytest.raises(SortError):
        eval_structural(parse_term('id[O] * id[A]', sig))


def test_layers_produce_well_sorted_terms():
    rng = random.Random(11)
    for _ in range(50):
        term, inputs = _random_term(rng)
        assert eval_structural(term).m == inputs
