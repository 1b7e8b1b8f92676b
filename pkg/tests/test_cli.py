import csv
import io
import json
import math
import shutil
import subprocess
import sys

import pytest

from qgames.cli import main
from qgames.equilibrium import ThetaProfile
from qgames.private_info import behavioral_payoff
from qgames.quantum import BELL
from qgames.scenarios import airline, cats_dogs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chsh_json(capsys):
    code, out, _ = run(capsys, "chsh", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["chart"]["cat/cat"]["disagree"] == pytest.approx(math.sin(3 * math.pi / 8) ** 2, abs=1e-12)
    assert doc["chart"]["dog/dog"]["disagree"] == pytest.approx(math.sin(math.pi / 8) ** 2, abs=1e-12)
    assert doc["chain_inequality"]["violated"] is True


def test_chsh_classical_angle_respects_chain(capsys):
    _, out, _ = run(capsys, "chsh", "--theta", "0", "--format", "json")
    assert json.loads(out)["chain_inequality"]["violated"] is False


def test_cats_dogs_json(capsys):
    code, out, _ = run(capsys, "cats-dogs", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["theta_star"] == pytest.approx(0.3926991, abs=1e-7)
    assert doc["value"] == pytest.approx(0.8535534, abs=1e-7)
    assert doc["classical_ceiling"] == 0.75
    assert doc["verdict"] is True


def test_cats_dogs_bad_theta_fails(capsys):
    code, out, _ = run(capsys, "cats-dogs", "--theta", "1.0", "--format", "json")
    assert code == 1
    assert json.loads(out)["verdict"] is False


def test_json_round_trip(capsys):
    # recomputing from the emitted angle reproduces the emitted value
    _, out, _ = run(capsys, "cats-dogs", "--format", "json")
    doc = json.loads(out)
    g = cats_dogs().game
    u = behavioral_payoff(g, BELL, ThetaProfile(doc["theta_star"]).behavioral(g.signals))
    assert u[0] == doc["value"]
    _, out, _ = run(capsys, "airline", "--report", "quantum", "--format", "json")
    doc = json.loads(out)["quantum"]
    g = airline().game
    u = behavioral_payoff(g, BELL, ThetaProfile(doc["theta_star"]).behavioral(g.signals))
    assert u[0] == doc["value"]
    assert u[0] + u[1] == doc["producer_surplus"]


def test_airline_welfare_json(capsys):
    code, out, _ = run(capsys, "airline", "--report", "welfare", "--format", "json")
    w = json.loads(out)["welfare"]
    assert code == 0
    assert w["quantum"]["producer_surplus"] == pytest.approx(67.66, abs=0.01)
    assert w["classical"] == {"consumer_surplus": 133.5, "producer_surplus": 30.5, "total": 164.0}
    assert w["collusion"]["producer_surplus"] == 102.5


def test_airline_all_table(capsys):
    code, out, _ = run(capsys, "airline")
    assert code == 0
    assert "classical.payoff_each" in out and "15.25" in out
    assert "claims.firm1_N.quantum" in out and "30.40217" in out
    assert "ce.max_total_payoff" in out and "30.5" in out


def test_airline_csv(capsys):
    code, out, _ = run(capsys, "airline", "--report", "ce", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"]
    assert ["ce.max_total_payoff", "30.5"] in rows


def test_airline_bad_params(capsys):
    code, _, err = run(capsys, "airline", "--params", "1,2,3,4,5")
    assert code == 2
    assert "y < x" in err
    code, _, _ = run(capsys, "airline", "--params", "49,19,1,2,48")
    assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["chsh", "--format", "xml"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["chsh", "--theta", "nan"])
    assert e.value.code == 2
    code, _, err = run(capsys, "verify", "--only", "42")
    assert code == 2


@pytest.fixture
def game_file(tmp_path):
    path = tmp_path / "game.json"
    path.write_text(json.dumps({
        "strategies": [["H", "T"], ["H", "T"]],
        "payoffs": [[0, 0], [2, 1], [1, 2], [0, 0]],
        "distribution": ["1/8", "3/8", "3/8", "1/8"],
    }))
    return path


def test_check_game(capsys, game_file):
    code, out, _ = run(capsys, "check-game", str(game_file), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert sorted(doc["pure_nash"]) == ["H|T", "T|H"]
    assert doc["distribution"]["correlated_equilibrium"] is True
    assert doc["distribution"]["expected_payoffs"] == [1.125, 1.125]
    assert doc["ce_max_total_payoff"] == 3.0


def test_check_game_dist_override(capsys, game_file):
    code, out, _ = run(capsys, "check-game", str(game_file), "--dist", "1,0,0,0", "--format", "json")
    assert code == 1
    assert json.loads(out)["distribution"]["correlated_equilibrium"] is False
    code, _, err = run(capsys, "check-game", str(game_file), "--dist", "1,0")
    assert code == 2 and "distribution" in err


def test_check_private_game(capsys, tmp_path):
    from qgames.gamefile import dumps

    path = tmp_path / "airline.json"
    path.write_text(dumps(airline().game))
    code, out, _ = run(capsys, "check-game", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["ce_max_total_payoff"] == 30.5
    assert doc["pure_nash"] == ["N:L,P:L|N:L,P:L"]


def test_check_game_bad_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"strategies": [["H", "T"], ["H", "T"]],\n "payoffs": [[0, 0], [2, 1], [1, "x"], [0, 0]]}')
    code, _, err = run(capsys, "check-game", str(bad))
    assert code == 2 and "payoffs[2][1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"strategies": [["H", "T"]]\n "payoffs": []}')
    code, _, err = run(capsys, "check-game", str(broken))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "check-game", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,2,4,8,10")
    assert code == 0
    assert out.count("[PASS]") == 5


@pytest.mark.skipif(shutil.which("qgames") is None, reason="console script not installed")
def test_verify_full_through_console_script():
    res = subprocess.run(["qgames", "verify"], capture_output=True, text=True, timeout=300)
    assert res.returncode == 0, res.stdout + res.stderr
    assert "10/10 criteria passed" in res.stdout


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qgames.cli", "chsh", "--format", "json"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0
    assert json.loads(res.stdout)["chain_inequality"]["violated"] is True
