import numpy as np
import pytest

from ffdecomp import io
from ffdecomp.cli import main
from ffdecomp.field import field
from ffdecomp.tensor import Decomposition, evaluate, identity_gadget, random_decomposition
from ffdecomp.wildcard import WILDCARD

GF2 = field(2)


@pytest.fixture
def gadget_file(tmp_path):
    path = tmp_path / "gadget.t"
    path.write_text(io.write_tensor(GF2, identity_gadget()))
    return path


def test_decompose_and_verify(gadget_file, tmp_path):
    out = tmp_path / "gadget.d"
    assert main(["decompose", "--rank", "2", "--in", str(gadget_file), "--out", str(out)]) == 0
    gf, d = io.read_decomposition(out.read_text())
    assert np.array_equal(evaluate(gf, d), identity_gadget())
    assert main(["verify", "--in", str(gadget_file), "--decomp", str(out)]) == 0


def test_decompose_none(gadget_file):
    assert main(["decompose", "--rank", "1", "--in", str(gadget_file)]) == 1


def test_verify_zero_decomposition(gadget_file, tmp_path):
    zero = tmp_path / "zero.d"
    zero.write_text(io.write_decomposition(GF2, Decomposition.zero(2, (2, 2, 2))))
    assert main(["verify", "--in", str(gadget_file), "--decomp", str(zero)]) == 1


def test_verify_skips_wildcards(tmp_path):
    W = np.full((2, 2, 2), WILDCARD)
    W[0, 0, 0] = 1
    t = tmp_path / "w.t"
    t.write_text(io.write_tensor(GF2, W))
    d = tmp_path / "d.d"
    one = np.array([[1, 1]])
    d.write_text(io.write_decomposition(GF2, Decomposition(one, one, one)))
    assert main(["verify", "--in", str(t), "--decomp", str(d)]) == 0


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.t"
    bad.write_text("TENSOR3 2 1 2 2\n")
    assert main(["decompose", "--rank", "1", "--in", str(bad)]) == 2
    assert "line 1, column 16" in capsys.readouterr().err
    assert main(["decompose", "--rank", "1", "--in", str(tmp_path / "missing")]) == 2
    assert main(["decompose", "--rank", "9", "--in", str(bad)]) == 2
    assert main(["frobnicate"]) == 2
    wild = tmp_path / "wild.t"
    wild.write_text("TENSOR3 2 1 1 1 1\n*\n")
    assert main(["decompose", "--rank", "1", "--in", str(wild)]) == 2


def test_budget_exit_code(tmp_path, rng, capsys):
    gf = field(3)
    T = evaluate(gf, random_decomposition(gf, 4, (5, 5, 5), rng))
    path = tmp_path / "t.t"
    path.write_text(io.write_tensor(gf, T))
    assert main(["decompose", "--rank", "4", "--in", str(path), "--budget", "1"]) == 3
    assert "budget" in capsys.readouterr().err


def test_cost_warning(tmp_path, capsys):
    gf = field(5)
    path = tmp_path / "t.t"
    path.write_text(io.write_tensor(gf, np.zeros((2, 2, 2), dtype=np.int64)))
    assert main(["decompose", "--rank", "4", "--in", str(path)]) == 0
    assert "warning" in capsys.readouterr().err


def test_rank(gadget_file, capsys):
    assert main(["rank", "--in", str(gadget_file)]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_rank1w(tmp_path, capsys):
    t = tmp_path / "w.t"
    W = np.full((2, 2, 2), WILDCARD)
    W[0, 0, 0] = 1
    t.write_text(io.write_tensor(GF2, W))
    assert main(["rank1w", "--in", str(t)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "RANK1 2 1 2 2 2" and lines[1:] == ["1 0"] * 3
    m = tmp_path / "m.m"
    m.write_text("MATRIX 2 1 2 2\n1 1\n1 0\n")
    assert main(["rank1w", "--matrix", "--in", str(m)]) == 1
    g3 = tmp_path / "g3.t"
    g3.write_text("TENSOR3 3 1 1 1 2\n2 *\n")
    assert main(["rank1w", "--in", str(g3)]) == 0


def test_reduce_nae(tmp_path, capsys):
    cnf = tmp_path / "i.cnf"
    cnf.write_text("p nae 3 1\n1 2 3 0\n")
    out = tmp_path / "g.t"
    assert main(["reduce-nae", "--in", str(cnf), "--out", str(out)]) == 0
    gf, W = io.read_tensor(out.read_text())
    assert W.shape == (6, 6, 6) and np.count_nonzero(W != WILDCARD) == 25
    cnf.write_text("p nae 1 1\n1 1 1 0\n")
    assert main(["reduce-nae", "--in", str(cnf)]) == 1
    cnf.write_text("p nae 1 1\n1 1 -1 0\n")
    assert main(["reduce-nae", "--in", str(cnf), "--out", str(out)]) == 0
    assert "dropped" in capsys.readouterr().err


def test_oracle(gadget_file, capsys):
    assert main(["oracle", "rank2", "--in", str(gadget_file)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "2"
    assert main(["oracle", "decompose", "--rank", "1", "--in", str(gadget_file)]) == 1
    assert main(["oracle", "decompose", "--rank", "2", "--in", str(gadget_file)]) == 0
    assert main(["oracle", "rank1w", "--in", str(gadget_file)]) == 1
    assert main(["oracle", "decompose", "--in", str(gadget_file)]) == 2
    assert main(["oracle", "rank2", "--in", str(gadget_file), "--budget", "5"]) == 3
