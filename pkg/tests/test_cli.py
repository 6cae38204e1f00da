import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from grouplab import io as gio
from grouplab.cli import main, run_suite
from grouplab.groups import Dihedral, HeisenbergZ, Lamplighter, ZD
from grouplab.extlab import sws_lamplighter_measure
from grouplab.measures import uniform


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def d4_files(tmp_path):
    D = Dihedral(4)
    g = write(tmp_path / "g.json", D.spec())
    P = write(tmp_path / "p.json", gio.measure_to_json(uniform(D, [(0, 1), (1, 1)])))
    return tmp_path, g, P


def test_decay_exact_single_row(tmp_path, capsys):
    out = tmp_path / "d.csv"
    assert main(["decay", "--n", "100", "--mode", "exact", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,decay_norm") and len(lines) == 2
    assert lines[1].startswith("100,") and "/" in lines[1].split(",")[1]


def test_decay_stdout_and_fit(capsys):
    assert main(["decay", "--n", "10,20,40,80"]) == 0
    text = capsys.readouterr().out
    assert "coarse bound violations: none" in text and "fitted exponent" in text


def test_harmonic_cmd(d4_files, capsys):
    tmp, g, P = d4_files
    assert main(["harmonic", "--group", g, "--measure", P, "--out", str(tmp / "b.json")]) == 0
    doc = json.loads((tmp / "b.json").read_text())
    assert doc["dim"] == 1 and doc["vectors"] == [["1/1"] * 8]


@pytest.mark.parametrize("transform,extra", [("nu_t", ["--t", "1/3"]), ("s_t", ["--t", "1/4"]), ("sws", [])])
def test_equiv_cmd(d4_files, transform, extra, capsys):
    tmp, g, P = d4_files
    out = tmp / transform
    code = main(["equiv", "--transform", transform, "--group", g, "--measure", P, "--c", "[1,0]",
                 "--out", str(out), *extra])
    assert code == 0
    assert list(out.glob("*.json")) and not (out / "witness.json").exists()
    assert "PASS" in capsys.readouterr().out


def test_malformed_rational_exit_3(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"kind": "finite_abelian", "orders": [4]})
    P = write(tmp_path / "p.json", {"entries": [[[1], "1/2"], [[3], "3/0"]]})
    assert main(["harmonic", "--group", g, "--measure", P]) == 3
    err = capsys.readouterr().err
    assert "entries[1]" in err and "3/0" in err


def test_input_errors_exit_3(tmp_path, capsys):
    assert main(["harmonic", "--group", str(tmp_path / "nope.json"), "--measure", "x"]) == 3
    assert main(["decay", "--n", "abc"]) == 3
    assert main(["decay", "--n", "401", "--mode", "exact"]) == 3
    assert main(["nonsense"]) == 3
    g = write(tmp_path / "g.json", {"kind": "zd", "d": 1})
    P = write(tmp_path / "p.json", {"entries": [[[1], "1/1"]]})
    assert main(["harmonic", "--group", g, "--measure", P]) == 3  # infinite group


def test_commute_check(tmp_path, capsys):
    D = Dihedral(4)
    g = write(tmp_path / "g.json", D.spec())
    eta = write(tmp_path / "eta.json", gio.measure_to_json(uniform(D, [(1, 0), (3, 0)])))
    zeta = write(tmp_path / "zeta.json", gio.measure_to_json(uniform(D, [(0, 0), (2, 0)])))
    assert main(["commute-check", "--group", g, "--eta", eta, "--zeta", zeta]) == 0
    bad = write(tmp_path / "bad.json", gio.measure_to_json(uniform(D, [(0, 1)])))
    rot = write(tmp_path / "rot.json", gio.measure_to_json(uniform(D, [(1, 0)])))
    assert main(["commute-check", "--group", g, "--eta", rot, "--zeta", bad]) == 3
    assert "do not commute" in capsys.readouterr().err


def test_build_mu(tmp_path, capsys):
    g = write(tmp_path / "h.json", HeisenbergZ().spec())
    q = write(tmp_path / "q.json", ZD(2).spec())
    nu = write(tmp_path / "nu.json", gio.measure_to_json(uniform(ZD(2), [(1, 0), (-1, 0), (0, 1), (0, -1)])))
    out = tmp_path / "mu.json"
    assert main(["build-mu", "--group", g, "--quotient", q, "--nu", nu, "--t", "1/2", "--out", str(out)]) == 0
    mu = gio.measure_from_json(gio.read_json(out))
    assert mu.is_probability()
    assert "PASS" in capsys.readouterr().out


def test_entropy_cmd(tmp_path):
    L = Lamplighter()
    g = write(tmp_path / "l.json", L.spec())
    m = write(tmp_path / "m.json", gio.measure_to_json(sws_lamplighter_measure(L)))
    out = tmp_path / "e.csv"
    assert main(["entropy", "--group", g, "--measure", m, "--steps", "12", "--out", str(out), "--quiet"]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "n,entropy_nats,pruned_mass" and len(rows) == 14
    out2 = tmp_path / "e2.csv"
    assert main(["entropy", "--group", g, "--measure", m, "--steps", "6", "--method", "convolution",
                 "--out", str(out2), "--quiet"]) == 0
    a = [float(r.split(",")[1]) for r in rows[1:8]]
    b = [float(r.split(",")[1]) for r in out2.read_text().splitlines()[1:]]
    assert a == pytest.approx(b, abs=1e-10)


def test_series_cmd(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"kind": "heisenberg_mod_p", "p": 3})
    assert main(["series", "--group", g, "--quiet"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["orders"] == [1, 3, 27]


def test_suites_deterministic(tmp_path):
    for name in ("equiv_mu_nu", "telescoping", "commute"):
        a, b = run_suite(name, 5, 7), run_suite(name, 5, 7)
        assert a == b and all(ok for _, ok, _ in a)
    assert main(["suite", "--name", "identities", "--instances", "5", "--quiet"]) == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "grouplab", "decay", "--n", "100", "--mode", "exact", "--quiet"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
