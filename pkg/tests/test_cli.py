import io
import json

import pytest

from batchcodes import matrixfile
from batchcodes.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_construct_grouped_roundtrip(tmp_path):
    path = tmp_path / 'ex1.txt'
    code, out = run('construct', '--n', '60', '--k', '4', '--m', '6', '--method', 'grouped', '--out', str(path))
    assert code == 0 and 'N=180' in out and 'VALID' in out
    mf = matrixfile.read(path)
    assert mf.matrix.n == 60 and (mf.k, mf.t) == (4, 1)
    code, out = run('verify', '--k', '4', str(path))
    assert code == 0 and out.startswith('VALID')


def test_construct_spread_is_example2(example2):
    code, out = run('construct', '--n', '10', '--k', '5', '--m', '5', '--t', '2', '--method', 'spread')
    assert code == 0
    text = out[:out.index('n=10')]
    assert matrixfile.parse_text(text).matrix == example2


def test_construct_range_reports_storage(tmp_path):
    code, out = run('construct', '--n', '54', '--k', '4', '--m', '6', '--method', 'range')
    assert code == 0 and 'N=160' in out and 'method=range' in out


@pytest.mark.parametrize("argv", [
    ['--n', '45', '--k', '4', '--m', '6'],
    ['--n', '62', '--k', '4', '--m', '6'],
    ['--n', '180', '--k', '5', '--m', '10', '--t', '2'],
    ['--n', '9', '--k', '5', '--m', '5', '--t', '2'],
    ['--n', '19', '--k', '9', '--m', '6', '--t', '2'],
])
def test_construct_verify_roundtrip(tmp_path, argv):
    path = tmp_path / 'code.json'
    code, _ = run('construct', *argv, '--out', str(path), '--json')
    assert code == 0
    doc = json.loads(path.read_text())
    k, t = doc['k'], doc['t']
    assert doc['N'] == sum(r.count('1') for r in doc['rows'])
    assert run('verify', '--k', str(k), '--t', str(t), str(path))[0] == 0


def test_verify_invalid(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text("# four copies of one pair\n4 4 4 1\n1111\n1111\n0000\n0000\n")
    code, out = run('verify', '--k', '4', '--naive', str(path))
    assert code == 1
    assert 'naive check: INVALID' in out
    assert 'INVALID: 4 items span 2 servers' in out
    assert 'servers 1,2' in out


def test_verify_example2(tmp_path, example2):
    path = tmp_path / 'ex2.txt'
    matrixfile.write(path, matrixfile.MatrixFile(example2, 5, 2))
    assert run('verify', '--k', '5', '--t', '2', '--naive', str(path)) == (0, "naive check: VALID\nVALID (n=10, N=10, k=5, m=5, t=2)\n")


@pytest.mark.parametrize("content", [
    "2 2 1 1\n10\n01",            # no trailing newline
    "2 2 1 1\n10\n",              # missing row
    "2 2 1 1\n10\n0x\n",          # bad character
    "2 3 1 1\n10\n01\n",          # short rows
    "two by two\n10\n01\n",
    "2 2 1 1\n10\n00\n",          # unstorable item
    '{"m": 2, "rows": ["10"]}\n',
])
def test_verify_malformed(tmp_path, content):
    path = tmp_path / 'm.txt'
    path.write_text(content)
    assert run('verify', '--k', '1', str(path))[0] == 2


def test_verify_missing_file(tmp_path):
    assert run('verify', '--k', '1', str(tmp_path / 'nope'))[0] == 2


def test_construct_usage_errors():
    assert run('construct', '--n', '14', '--k', '4', '--m', '6', '--method', 'range')[0] == 2
    assert run('construct', '--n', '10', '--k', '4', '--m', '6', '--method', 'grouped')[0] == 2
    assert run('construct', '--n', '3', '--k', '4', '--m', '6')[0] == 2
    assert run('construct', '--n', '10', '--k', '5', '--m', '6', '--t', '2', '--method', 'spread')[0] == 2


def test_construct_pairs_augmented_k10_invalid():
    # 3 extra edges on m=7: the 4-server cut holds 9 items (see decisions)
    code, _ = run('construct', '--n', '24', '--k', '10', '--m', '7', '--t', '2', '--method', 'pairs-augmented')
    assert code == 2


def test_bound_outputs():
    code, out = run('bound', 'N', '--n', '54', '--k', '4', '--m', '6')
    assert code == 0 and out.startswith('160 EXACT (') and 'd=6, l=2' in out
    code, out = run('bound', 'uniform', '--m', '10', '--c', '2', '--k', '5', '--t', '2')
    assert out.startswith('180 EXACT (')
    code, out = run('bound', 'tiling', '--m', '56')
    assert out.startswith('delta >= 160 (d=1, g=5, s=4, e=16')
    assert run('bound', 'girth5', '--v', '9')[1].startswith('11 LOWER')
    assert run('bound', 'N', '--n', '3', '--k', '4', '--m', '6')[0] == 2
    assert run('bound', 'tiling', '--m', '7')[0] == 2


def test_bound_unbounded():
    code, out = run('bound', 'uniform', '--m', '6', '--c', '2', '--k', '2')
    assert code == 0 and 'UNBOUNDED' in out


def test_report_table1():
    code, out = run('report', 'table1')
    lines = out.strip().splitlines()[2:]
    assert len(lines) == 15
    assert lines[0].split()[:3] == ['1', '56,59,60', '50']
    last = lines[-1].split()
    assert last[4:6] == ['15', '30']
    assert run('report', 'table1')[1] == out


def test_report_compare():
    code, out = run('report', 'compare')
    rows = {tuple(map(int, ln.split()[:3])): ln for ln in out.splitlines()[2:]}
    t2 = {key: int(ln.split()[7]) for key, ln in rows.items()}
    assert t2 == {(180, 10, 5): 360, (180, 10, 6): 360, (720, 10, 7): 2160, (240, 10, 9): 720}
    assert all('NOT VERIFIED' in ln and 'VALID' in ln for ln in rows.values())


def test_search_commands(tmp_path):
    assert run('search', 'min-storage', '--n', '5', '--k', '3', '--m', '3') == (0, "9\n")
    assert run('search', 'girth5', '--v', '5')[1].startswith('5\n')
    assert run('search', 'uniform', '--m', '4', '--c', '2', '--k', '4') == (0, "6\n")
    assert run('search', 'uniform', '--m', '4', '--c', '2', '--k', '2') == (0, "UNBOUNDED\n")
    code, out = run('search', 'min-storage', '--n', '8', '--k', '4', '--m', '5', '--max-nodes', '10')
    assert code == 3 and out.startswith('EXHAUSTED')
    path = tmp_path / 'w.txt'
    code, _ = run('search', 'min-storage', '--n', '6', '--k', '3', '--m', '4', '--out', str(path))
    assert code == 0 and run('verify', '--k', '3', str(path))[0] == 0


@pytest.mark.slow
def test_search_g8(tmp_path):
    path = tmp_path / 'g8.txt'
    code, out = run('search', 'g8', '--out', str(path))
    assert code == 0 and out.startswith('16\n')
    assert run('verify', '--k', '6', str(path)) == (0, "VALID (n=16, N=48, k=6, m=8, t=1)\n")


def test_bad_flags():
    with pytest.raises(SystemExit) as exc:
        main(['construct', '--n', 'x'])
    assert exc.value.code == 2
