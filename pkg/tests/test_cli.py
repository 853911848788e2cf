import pytest
from click.testing import CliRunner

from partial_theories import __version__
from partial_theories.cli import pft
from partial_theories.theory import builtin_names

# pylint: disable=redefined-outer-name

GOOD3 = """\
model good3 of setoid
carrier A = 3
op R:
  0 0 -> def
  1 1 -> def
  2 2 -> def
"""

CHAIN3 = """\
model chain3 of setoid
carrier A = 3
op R:
  0 0 -> def
  0 1 -> def
  1 0 -> def
  1 1 -> def
  1 2 -> def
  2 1 -> def
  2 2 -> def
"""


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def models(tmpdir):
    paths = {}
    for name, text in (('good3', GOOD3), ('chain3', CHAIN3)):
        path = tmpdir.join(name + '.model')
        path.write_text(text, encoding='utf-8')
        paths[name] = path.strpath
    return paths


def test_version(runner):
    result = runner.invoke(pft, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_check_theory_builtin(runner):
    result = runner.invoke(pft, ['check-theory', 'setoid'])
    assert result.exit_code == 0
    assert result.output == 'OK theory setoid: 1 sorts, 1 generators, 3 equations (9 derived)\n'


def test_check_theory_file(runner, tmpdir):
    path = tmpdir.join('magma.thy')
    path.write_text('op m : A * A -> A ;\neq comm : sw ; m = m ;\n', encoding='utf-8')
    result = runner.invoke(pft, ['check-theory', path.strpath])
    assert result.exit_code == 0
    assert result.output.startswith('OK theory magma: 1 sorts, 1 generators, 1 equations')


def test_check_theory_rejects_bad_files(runner, tmpdir):
    path = tmpdir.join('bad.thy')
    path.write_text('op m : A * A -> A ;\neq bad : m = id ;\n', encoding='utf-8')
    result = runner.invoke(pft, ['check-theory', path.strpath])
    assert result.exit_code == 2
    assert 'equation' in result.output
    assert runner.invoke(pft, ['check-theory', 'nosuch']).exit_code == 2


def test_builtin_listing(runner):
    result = runner.invoke(pft, ['builtin'])
    assert result.output.split() == builtin_names()
    result = runner.invoke(pft, ['builtin', 'setoid'])
    assert result.output.startswith('theory setoid ;\n')


def test_normalize(runner):
    result = runner.invoke(pft, ['normalize', '--term', 'mu ; cp'])
    assert result.exit_code == 0
    assert result.output == 'm=2 n=2 k=1 left=[1,1] right=[1,1]\n'
    result = runner.invoke(pft, ['normalize', '--term', 'cp ; (dl * id)', '--target', 'cc'])
    assert result.output == '[1]\n'


def test_normalize_rejects_inadmissible_constructor(runner):
    result = runner.invoke(pft, ['normalize', '--term', 'cp', '--target', 'cm'])
    assert result.exit_code == 2
    assert 'E0205' in result.output


def test_structural_equality(runner):
    result = runner.invoke(pft, ['eq', 'setoid', 'cp ; mu', 'id', '--structural'])
    assert (result.exit_code, result.output) == (0, 'EQUAL\n')
    result = runner.invoke(pft, ['eq', 'setoid', 'mu', 'id * dl', '--structural'])
    assert (result.exit_code, result.output) == (1, 'NOT EQUAL\n')


def test_eq_needs_exactly_one_mode(runner):
    assert runner.invoke(pft, ['eq', 'setoid', 'id', 'id']).exit_code == 2
    result = runner.invoke(pft, ['eq', 'setoid', 'id', 'id', '--structural',
                                 '--model-search', '1'])
    assert result.exit_code == 2


def test_eq_in_model(runner, models):
    result = runner.invoke(pft, ['eq', 'setoid', 'R', 'sw ; R', '--in-model', models['good3']])
    assert (result.exit_code, result.output) == (0, 'EQUAL\n')
    result = runner.invoke(pft, ['eq', 'setoid', 'R', 'dl * dl', '--in-model', models['good3']])
    assert result.exit_code == 1
    assert result.output.splitlines() == [
        'NOT EQUAL',
        "C0701 equation 'query' fails at (0 1): lhs undef, rhs ()",
    ]


def test_eq_model_search(runner):
    result = runner.invoke(pft, ['eq', 'setoid', 'R', 'sw ; R', '--model-search', '2'])
    assert (result.exit_code, result.output) == (0, 'NO COUNTEREXAMPLE FOUND ≤ 2\n')
    result = runner.invoke(pft, ['eq', 'setoid', 'R', 'dl * dl', '--model-search', '2'])
    assert result.exit_code == 1
    lines = result.output.splitlines()
    assert lines[:2] == ['NOT EQUAL', "C0701 equation 'query' fails at (0 1): lhs undef, rhs ()"]
    assert 'carrier A = 2' in lines


def test_check_model(runner, models):
    result = runner.invoke(pft, ['check-model', 'setoid', models['good3']])
    assert (result.exit_code, result.output) == (0, 'OK (3 equations)\n')
    result = runner.invoke(pft, ['check-model', 'setoid', models['good3'], '--audit'])
    assert result.output == 'OK (12 equations)\n'


def test_check_model_reports_violations(runner, models):
    result = runner.invoke(pft, ['check-model', 'setoid', models['chain3']])
    assert result.exit_code == 1
    assert result.output.splitlines() == [
        "C0701 equation 'trans' fails at (0 1 2): lhs undef, rhs ()",
        'FAILED (1 of 3 equations)',
    ]


def test_check_model_for_another_theory(runner, models):
    result = runner.invoke(pft, ['check-model', 'pcm', models['good3']])
    assert result.exit_code == 2
    assert 'E0401' in result.output


def test_enumerate_models(runner):
    result = runner.invoke(pft, ['enumerate-models', 'setoid', '--size', '3', '--count'])
    assert (result.exit_code, result.output) == (0, '5\n')
    result = runner.invoke(pft, ['enumerate-models', 'setoid', '--size', '3', '--count',
                                 '--iso'])
    assert result.output == '3\n'
    result = runner.invoke(pft, ['enumerate-models', 'setoid', '--size', '1'])
    assert result.output == 'model setoid_1 of setoid\ncarrier A = 1\nop R:\n  0 0 -> def\n'


def test_enumerate_models_by_sort(runner):
    result = runner.invoke(pft, ['enumerate-models', 'category', '--size', 'O=1,A=1',
                                 '--count'])
    assert result.output == '1\n'


def test_search_cap_from_environment(runner):
    result = runner.invoke(pft, ['enumerate-models', 'setoid', '--size', '3', '--count'],
                           env={'PFT_SEARCH_CAP': '10'})
    assert result.exit_code == 2
    assert 'E0601' in result.output


def test_hom(runner, models):
    result = runner.invoke(pft, ['hom', 'setoid', models['chain3'], models['good3']])
    assert result.exit_code == 0
    assert result.output.splitlines() == ['A=0 0 0', 'A=1 1 1', 'A=2 2 2', '3 homomorphisms']
    result = runner.invoke(pft, ['hom', 'setoid', models['good3'], models['chain3'],
                                 '--map', 'A=0 1 2'])
    assert (result.exit_code, result.output) == (0, 'HOMOMORPHISM\n')
    result = runner.invoke(pft, ['hom', 'setoid', models['chain3'], models['good3'],
                                 '--map', 'A=0 1 2'])
    assert result.exit_code == 1
    assert result.output == "C0702 generator 'R' not preserved at (0 1)\n"


def test_eval(runner, models):
    result = runner.invoke(pft, ['eval', 'setoid', models['good3'], 'cp ; R'])
    assert result.output.splitlines() == ['0 -> def', '1 -> def', '2 -> def']
    result = runner.invoke(pft, ['eval', 'setoid', models['good3'], 'R'])
    assert result.output.splitlines()[:2] == ['0 0 -> def', '0 1 -> undef']


def test_catkit_par(runner):
    result = runner.invoke(pft, ['catkit', 'par', '--sizes', '0,1'])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        'hom(0, 0) = 1', 'hom(0, 1) = 1', 'hom(1, 0) = 1', 'hom(1, 1) = 2',
    ]


def test_catkit_kt(runner):
    result = runner.invoke(pft, ['catkit', 'kt', '--sizes', '1'])
    assert result.output.splitlines() == ['2 objects, 3 arrows', 'finite limits: yes']


def test_catkit_check_lex(runner, tmpdir):
    result = runner.invoke(pft, ['catkit', 'check-lex', '--sizes', '0,1,2,4'])
    assert result.exit_code == 1
    assert result.output == 'E0503 required limit is missing: product of 2 and 4\n'
    path = tmpdir.join('arrow.cat')
    path.write_text('objects X, Y\n1X : X -> X\n1Y : Y -> Y\nf : X -> Y\n'
                    'id X = 1X\nid Y = 1Y\n', encoding='utf-8')
    result = runner.invoke(pft, ['catkit', 'check-lex', path.strpath])
    assert (result.exit_code, result.output) == (0, 'HAS FINITE LIMITS\n')
    assert runner.invoke(pft, ['catkit', 'check-lex']).exit_code == 2


@pytest.mark.parametrize('args', [
    ['enumerate-models', 'setoid', '--size', 'three', '--count'],
    ['enumerate-models', 'category', '--size', 'O=1,A=x', '--count'],
    ['enumerate-models', 'setoid', '--size', '-1', '--count'],
    ['catkit', 'par', '--sizes', '0,one'],
    ['catkit', 'kt', '--sizes', '1;2'],
])
def test_malformed_sizes_are_usage_errors(runner, args):
    result = runner.invoke(pft, args)
    assert result.exit_code == 2
    assert 'Invalid value' in result.output


def test_malformed_map_is_a_usage_error(runner, models):
    result = runner.invoke(pft, ['hom', 'setoid', models['good3'], models['chain3'],
                                 '--map', 'A=0 x 2'])
    assert result.exit_code == 2
    assert 'Invalid value' in result.output
