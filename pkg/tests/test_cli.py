from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from conftest import worked_mask
from hermtaylor import fileformats as ff
from hermtaylor.algebra import LaurentMatrix, Z
from hermtaylor.cli import run
from hermtaylor.errors import FormatError
from hermtaylor.factorization import verify_factorization
from hermtaylor.operators import augmented_taylor
from hermtaylor.spectral import SpectralSystem, mask_construct
from hermtaylor.subdivision import Mask, VecSeq


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def wfile(tmp_path):
    path = tmp_path / "W.json"
    ff.write_json(path, ff.mask_to_dict(worked_mask()))
    return str(path)


def test_coeffs_single_values():
    assert call("coeffs", "gregory", "--n", "2", "--k", "1") == (0, "-1/12\n")
    assert call("coeffs", "stirling", "--kind", "second", "--n", "4", "--m", "2") == (0, "7\n")
    assert call("coeffs", "stirling", "--kind", "first-signed", "--n", "4", "--m", "2") == (0, "11\n")
    assert call("coeffs", "pcauchy", "--n", "2", "--p", "1") == (0, "-1/6\n")


def test_coeffs_tables():
    code, text = call("coeffs", "gregory", "--max-n", "3", "--max-k", "2")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n\tk=1\tk=2" and lines[3] == "2\t-1/12\t-1/24"
    code, text = call("coeffs", "pcauchy", "--max-n", "1", "--max-p", "0")
    assert text.splitlines() == ["n\tp=0", "0\t1", "1\t1/2"]
    assert call("coeffs", "stirling", "--max-n", "2")[1].splitlines()[-1] == "2\t0\t1\t1"


def test_op_taylor():
    code, text = call("op", "taylor", "--d", "1", "--variant", "augmented", "--n", "2", "--format", "delta")
    assert code == 0 and text == "Δ, -1-(1/2)Δ\n0, Δ²\n"
    code, text = call("op", "taylor", "--d", "1", "--variant", "complete", "--format", "symbol")
    assert text == "z^-1-1, -1\n0, z^-1-1\n"
    assert call("op", "taylor", "--d", "2", "--variant", "augmented", "--n", "1")[0] == 2


def test_spectral_check_worked_mask(wfile):
    code, text = call("spectral", "check", "--mask", wfile, "--order", "2")
    assert code == 1
    assert text.splitlines() == ["k\tholds", "0\ttrue", "1\ttrue", "2\tfalse"]
    assert call("spectral", "check", "--mask", wfile, "--order", "1")[0] == 0


def test_spectral_check_with_system(wfile, tmp_path):
    sys_path = tmp_path / "sys.json"
    ff.write_json(sys_path, ff.system_to_dict(SpectralSystem.monomial(1, 2)))
    code, text = call("spectral", "check", "--mask", wfile, "--order", "2", "--system", str(sys_path))
    assert code == 1 and text.splitlines()[-1] == "2\tfalse"
    code, _ = call("spectral", "check", "--mask", wfile, "--order", "3", "--system", str(sys_path))
    assert code == 2


def test_spectral_solve_and_eigen(wfile, tmp_path):
    out = tmp_path / "s.json"
    assert call("spectral", "solve", "--mask", wfile, "--order", "1", "--out", str(out))[0] == 0
    assert ff.load_system(out).order == 1
    assert call("spectral", "solve", "--mask", wfile, "--order", "3")[0] == 1
    bpath = tmp_path / "B.json"
    ff.write_json(bpath, ff.mask_to_dict(Mask.from_symbol(LaurentMatrix([[2 * Z, 0], [0, 1 + Z]]))))
    assert call("spectral", "eigen", "--mask", str(bpath)) == (0, "dim\t1\n0\t1\n")


def test_factor_non_exact(wfile, capsys):
    code, _ = call("factor", "--mask", wfile, "--order", "2")
    assert code == 3
    assert "not exactly divisible at order 2" in capsys.readouterr().err


def test_factor_emits_and_verifies(tmp_path):
    mpath = tmp_path / "M.json"
    ff.write_json(mpath, ff.mask_to_dict(mask_construct(1, 3, (-2, 2))))
    for method in ("direct", "chain"):
        out = tmp_path / f"B_{method}.json"
        code, text = call("factor", "--mask", str(mpath), "--order", "3", "--method", method, "--out", str(out), "--verify")
        assert code == 0
        assert "verified\ttrue" in text.splitlines()
        factor = ff.load_mask(out)
        assert verify_factorization(ff.load_mask(mpath), augmented_taylor(1, 3), factor, 3)
    assert (tmp_path / "B_direct.json").read_bytes() == (tmp_path / "B_chain.json").read_bytes()


def test_factor_to_stdout_is_a_mask(wfile, capsys):
    code, text = call("factor", "--mask", wfile, "--order", "1")
    assert code == 0
    assert ff.mask_from_dict(json.loads(text)).symbol() == LaurentMatrix([[2 * Z, 0], [0, Z]])
    assert "verified\ttrue" in capsys.readouterr().err


def test_factor_chain_insufficient_order(wfile):
    assert call("factor", "--mask", wfile, "--order", "2", "--method", "chain")[0] == 3
    assert call("factor", "--mask", wfile, "--order", "0")[0] == 2


def test_subdivide(wfile, tmp_path):
    data = tmp_path / "c.json"
    ff.write_json(data, ff.seq_to_dict(VecSeq(1, -4, [[a, 1] for a in range(-4, 5)])))
    code, text = call("subdivide", "--mask", wfile, "--data", str(data), "--levels", "2")
    assert code == 0
    seq = ff.seq_from_dict(json.loads(text))
    assert seq[0] == (0, 1) and seq[3] == (ff.parse_rational("3/4"), 1)
    code, text = call("subdivide", "--mask", wfile, "--data", str(data), "--levels", "2", "--normalized")
    assert ff.seq_from_dict(json.loads(text))[3][1] == ff.parse_rational("1/4")


def test_remainder_check():
    code, text = call("remainder", "check", "--d", "2", "--n", "3", "--function", "sin", "--x0", "1/2", "--tol", "1e-12")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "row\toperator\tremainder\tdiscrepancy" and len(lines) == 4
    code, text = call("remainder", "check", "--d", "1", "--n", "2", "--function", "poly:1,-2,3", "--x0", "-1")
    assert code == 0 and all(line.split("\t")[3] == "0" for line in text.splitlines()[1:])
    code, _ = call("remainder", "check", "--d", "1", "--n", "1", "--function", "exp", "--atol", "1e-30")
    assert code == 1


def test_mask_construct(tmp_path):
    out = tmp_path / "W.json"
    assert call("mask", "construct", "--d", "1", "--order", "1", "--support", "0:1", "--out", str(out))[0] == 0
    assert ff.load_mask(out) == worked_mask()
    code, text = call("mask", "construct", "--d", "1", "--order", "2", "--support=-1:1")
    assert code == 0 and ff.mask_from_dict(json.loads(text)).offset == -1
    assert call("mask", "construct", "--d", "1", "--order", "5", "--support", "0:0")[0] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "gregory", "--n", "-1"],
        ["coeffs", "gregory", "--k", "0"],
        ["coeffs", "stirling", "--kind", "third"],
        ["op", "taylor", "--d", "x"],
        ["remainder", "check", "--d", "1", "--n", "2", "--function", "tan"],
        ["remainder", "check", "--d", "1", "--n", "2", "--function", "poly:1,a"],
        ["remainder", "check", "--d", "1", "--n", "2", "--function", "exp", "--tol", "0"],
        ["mask", "construct", "--d", "1", "--order", "1", "--support", "1:0"],
        ["mask", "construct", "--d", "1", "--order", "1", "--support", "0-1"],
        ["coeffs", "gregory", "--bogus"],
        ["nothing"],
        [],
    ],
)
def test_bad_arguments(argv, capsys):
    assert call(*argv)[0] == 2


def test_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 1, "offset": 0, "matrices": [], "extra": 1}')
    assert call("spectral", "check", "--mask", str(bad), "--order", "1")[0] == 2
    bad.write_text("not json")
    assert call("factor", "--mask", str(bad), "--order", "1")[0] == 2
    assert call("factor", "--mask", str(tmp_path / "missing.json"), "--order", "1")[0] == 2


def test_file_formats_roundtrip_and_determinism():
    m = mask_construct(2, 3, (-1, 1))
    text = ff.dumps(ff.mask_to_dict(m))
    assert ff.mask_from_dict(json.loads(text)) == m
    assert ff.dumps(ff.mask_to_dict(ff.mask_from_dict(json.loads(text)))) == text
    s = SpectralSystem.monomial(2, 3)
    assert ff.system_from_dict(json.loads(ff.dumps(ff.system_to_dict(s)))) == s
    c = VecSeq(1, -2, [[1, "1/3"], [0, 0], [2, -1]])
    assert ff.seq_from_dict(ff.seq_to_dict(c)) == c


@pytest.mark.parametrize(
    "obj",
    [
        {"d": 1, "offset": 0},
        {"d": 1, "offset": 0, "matrices": [[["1", "0"]]]},
        {"d": 1, "offset": 0, "matrices": [[["1", "0"], ["0"]]]},
        {"d": 1, "offset": "0", "matrices": []},
        {"d": 0, "offset": 0, "matrices": []},
        {"d": 1, "offset": 0, "matrices": [[["1", "0.5"], ["0", "1"]]]},
        [],
    ],
)
def test_mask_format_rejects(obj):
    with pytest.raises(FormatError):
        ff.mask_from_dict(obj)


def test_system_format_rejects():
    with pytest.raises(FormatError):
        ff.system_from_dict({"d": 1, "order": 1, "polys": [["1"]]})
    with pytest.raises(FormatError):
        ff.system_from_dict({"d": 1, "order": 1, "polys": [["1"], ["0", "2"]]})
    with pytest.raises(FormatError):
        ff.seq_from_dict({"d": 1, "offset": 0, "vectors": [["1"]]})


def test_deterministic_cli_output(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"m{i}.json"
        call("mask", "construct", "--d", "2", "--order", "3", "--support=-1:1", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hermtaylor", "coeffs", "gregory", "--n", "5", "--k", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "3/160\n"
