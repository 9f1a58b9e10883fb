import json
import subprocess
import sys

import pytest

from khlasagna.cli import main, table
from khlasagna.corpus import fixture_text

TREFOIL = fixture_text("trefoil_right")


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.pd"
    path.write_text(TREFOIL + "\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hom_json(capsys, trefoil_file):
    code, out, _ = run(capsys, "hom", "--pd", trefoil_file, "--n", "2", "--coeff", "z", "--json")
    assert code == 0
    obj = json.loads(out)
    assert {"q": -5, "t": 3, "rank": 1} in obj["free"]
    assert obj["torsion"][0]["orders"] == [2] and obj["torsion"][0]["placement"] == "std"


def test_hom_std_grading(capsys):
    code, out, _ = run(capsys, "hom", "--fixture", "trefoil_right", "--grading", "std", "--json")
    free = {(e["q"], e["t"]): e["rank"] for e in json.loads(out)["free"]}
    assert free == {(1, 0): 1, (3, 0): 1, (5, 2): 1, (9, 3): 1}


def test_hom_deformed(capsys):
    code, out, _ = run(capsys, "hom", "--fixture", "hopf_pos", "--sigma", "0,1", "--json")
    obj = json.loads(out)
    assert [(d["t"], d["dim"]) for d in obj["dims"]] == [(0, 2), (2, 2)]
    assert obj["sigma"] == "0,1"


def test_qmin(capsys, trefoil_file):
    assert run(capsys, "qmin", "--pd", trefoil_file, "--sigma", "0,1", "--t", "3")[1].strip() == "-5"
    assert run(capsys, "qmin", "--pd", TREFOIL, "--t", "0", "--grading", "std")[1].strip() == "1"
    code, out, _ = run(capsys, "qmin", "--fixture", "unknot", "--t", "5", "--json")
    assert code == 0 and json.loads(out)["empty"] is True


def test_bound(capsys):
    assert run(capsys, "bound", "--n", "2", "--qmin", "-5", "--ss", "3")[1].strip() == "chi <= -1"
    code, _, err = run(capsys, "bound", "--n", "1", "--qmin", "0", "--ss", "0")
    assert code == 2 and "invalid input" in err


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--fixture", "hopf_pos", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["match"]
    assert len(obj["colorings"]) == 4
    code, out, _ = run(capsys, "decompose", "--braid", "2; 1 1 1", "--sigma", "0,1,2", "--json")
    assert code == 0 and json.loads(out)["predicted"] == [{"t": 3, "dim": 3}]


def test_generators(capsys):
    code, out, _ = run(capsys, "hom", "--cable", "1,1,0", "--n", "1", "--json")
    assert json.loads(out)["free"] == [{"q": -1, "t": 1, "rank": 1}]
    code, _, err = run(capsys, "hom", "--cable", "1,x,0")
    assert code == 2


def test_gl1_surface(capsys):
    code, out, _ = run(capsys, "gl1", "--manifold", '{"Q": [[1]]}', "--v", "3", "--json")
    assert json.loads(out) == {"alpha": [3], "q": -9, "t": 9}
    S = '{"components": [{"chi": 2, "class": [1], "closed": true}]}'
    code, out, _ = run(capsys, "surface", "--surface", S, "--manifold", '{"Q": [[1]]}', "--json")
    obj = json.loads(out)
    assert (obj["q"], obj["t"], obj["diverse"]) == (-4, 1, True)
    code, _, _ = run(capsys, "surface", "--surface", S)
    assert code == 2


def test_cable_spheres(capsys):
    code, out, _ = run(capsys, "cable", "--r", "1", "--m", "1", "--json")
    obj = json.loads(out)
    assert (obj["s"], obj["chi_bound_s"], obj["chi_km"]) == (-2, 3, -1)
    code, out, _ = run(capsys, "spheres", "--k", "0", "--depth", "4", "--json")
    assert [d["q"] for d in json.loads(out)["degrees"]] == [2, 0, -2, -4]


def test_exit_codes(capsys):
    assert run(capsys, "hom", "--pd", "PD[X(1,2,3)]")[0] == 2
    assert run(capsys, "hom")[0] == 2
    assert run(capsys, "hom", "--fixture", "unknot", "--pd", "PD[]; O(1)")[0] == 2
    assert run(capsys, "hom", "--fixture", "kink_pos", "--n", "3")[0] == 3
    assert run(capsys, "hom", "--fixture", "nope")[0] == 2
    assert run(capsys, "hom", "--fixture", "unknot", "--sigma", "1,1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_deterministic_output(capsys):
    argv = ["decompose", "--fixture", "t24", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_all_thread_independent(capsys, monkeypatch):
    argv = ["verify-all", "--only", "1", "9", "10", "--json"]
    monkeypatch.setenv("KHR_THREADS", "1")
    serial = run(capsys, *argv)
    monkeypatch.setenv("KHR_THREADS", "3")
    parallel = run(capsys, *argv)
    assert serial[0] == parallel[0] == 0
    assert serial[1] == parallel[1]
    assert [c["id"] for c in json.loads(serial[1])["criteria"]] == [1, 9, 10]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "khlasagna", "bound", "--n", "3", "--qmin", "-4", "--ss", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "chi <= 0"


def test_table_alignment():
    lines = table(["a", "bbb"], [(1, 2), (100, 3)]).splitlines()
    assert len({len(line) for line in lines}) == 1
