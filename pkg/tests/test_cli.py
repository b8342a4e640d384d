import json

import pytest

from mb3.cli import main

NUNCHAKU = {
    "vertices": ["a", "b", "c", "d", "e"],
    "edges": [["a", "b", "c"], ["c", "d", "e"]],
    "marked": ["a", "e"],
}


@pytest.fixture
def board_file(tmp_path):
    path = tmp_path / "board.json"
    path.write_text(json.dumps(NUNCHAKU))
    return str(path)


class TestCli:
    def test_decide_text(self, board_file, capsys):
        assert main(["decide", board_file]) == 0
        out = capsys.readouterr().out
        assert "winner: maker" in out

    def test_decide_json(self, board_file, capsys):
        assert main(["decide", board_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["winner"] == "maker"

    def test_oracle_agrees(self, board_file, capsys):
        assert main(["oracle", board_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["winner"] == "maker"
        assert payload["tau"] == 2

    def test_threats(self, board_file, capsys):
        assert main(["threats", board_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["threats"][0]["kind"] == "nunchaku"

    def test_tau(self, board_file, capsys):
        assert main(["tau", board_file, "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["tau"] == 2

    def test_move(self, board_file, capsys):
        assert main(["move", board_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertex"] == "c"

    def test_gen_deterministic(self, capsys):
        assert main(["gen", "--mode", "exhaustive", "--max-edges", "2", "--max-vertices", "5"]) == 0
        first = capsys.readouterr()
        assert main(["gen", "--mode", "exhaustive", "--max-edges", "2", "--max-vertices", "5"]) == 0
        second = capsys.readouterr()
        assert first.out == second.out
        assert "generated" in first.err

    def test_missing_file_is_domain_error(self, capsys):
        assert main(["decide", "/nonexistent/board.json"]) == 1

    def test_usage_error(self):
        assert main(["decide"]) == 2

    def test_uniform_flag(self, tmp_path, capsys):
        path = tmp_path / "graph.json"
        path.write_text(json.dumps({
            "vertices": ["a", "b", "c"],
            "edges": [["a", "b"], ["b", "c"]],
            "marked": [],
        }))
        assert main(["decide", str(path), "--uniform", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["winner"] == "maker"  # two incident graph edges
