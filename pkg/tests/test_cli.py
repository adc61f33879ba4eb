"""
Test the command line verbs and their exit statuses.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.complex import cube, is_isomorphic
from src.config import reset_config_cache
from src.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, UsageError, main, parse_nerve
from src.serialization import load, save
from src.simplex import simplex


@pytest.fixture(autouse=True)
def fresh_cache():
    reset_config_cache()
    yield
    reset_config_cache()


@pytest.fixture
def square_file(tmp_path):
    return str(save(cube(2), tmp_path / "square.cub"))


class TestShapes:
    def test_shape_to_file(self, tmp_path):
        path = tmp_path / "cube.cub"
        assert main(["shape", "--kind", "cube", "--n", "2", "-o", str(path)]) == EXIT_OK
        assert is_isomorphic(load(path), cube(2))

    def test_shape_to_stdout(self, capsys):
        assert main(["shape", "--kind", "K"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("complex ")

    def test_simplicial_shape(self, tmp_path):
        path = tmp_path / "horn.sim"
        assert main(["shape", "--simplicial", "--kind", "horn", "--n", "2", "--i", "1", "-o", str(path)]) == EXIT_OK
        assert load(path).counts() == (3, 2)

    def test_missing_dimension_is_a_usage_error(self, capsys):
        assert main(["shape", "--kind", "cube"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_argparse_errors_exit_with_two(self):
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2
        with pytest.raises(SystemExit) as exc_info:
            main(["shape", "--kind", "cube", "--n", "1", "--budget", "0"])
        assert exc_info.value.code == 2


class TestConstructions:
    def test_product(self, tmp_path):
        interval = str(save(cube(1), tmp_path / "interval.cub"))
        out = tmp_path / "square.cub"
        assert main(["product", interval, interval, "-o", str(out)]) == EXIT_OK
        assert is_isomorphic(load(out), cube(2), respect_markings=False)

    def test_triangulate(self, square_file, tmp_path):
        out = tmp_path / "square.sim"
        assert main(["triangulate", square_file, "-o", str(out)]) == EXIT_OK
        assert load(out).counts() == (4, 5, 2)

    def test_cone_and_suspension(self, tmp_path):
        interval = str(save(cube(1), tmp_path / "interval.cub"))
        out = tmp_path / "cone.cub"
        assert main(["cone", interval, "--kind", "R0", "-o", str(out)]) == EXIT_OK
        assert load(out).counts() == (3, 3, 1)
        out = tmp_path / "sigma.cub"
        assert main(["suspend", interval, "-o", str(out)]) == EXIT_OK
        assert load(out).counts() == (2, 2, 1)

    def test_q_needs_a_simplicial_input(self, square_file, tmp_path):
        assert main(["q", square_file]) == EXIT_USAGE
        edge = str(save(simplex(1), tmp_path / "edge.sim"))
        out = tmp_path / "q.cub"
        assert main(["q", edge, "-o", str(out)]) == EXIT_OK
        assert is_isomorphic(load(out), cube(1))

    def test_malformed_simplicial_file_is_a_usage_error(self, tmp_path, capsys):
        path = tmp_path / "bad.sim"
        path.write_text("simplicial bad dim -1\nsimplex a -1\n")
        assert main(["q", str(path)]) == EXIT_USAGE
        assert "negative dimension" in capsys.readouterr().err

    def test_unknown_cone_kind(self, square_file):
        assert main(["cone", square_file, "--kind", "M1"]) == EXIT_USAGE

    def test_name_option(self, tmp_path):
        out = tmp_path / "k.cub"
        assert main(["shape", "--kind", "K", "--name", "walking", "-o", str(out)]) == EXIT_OK
        assert load(out).name == "walking"


class TestChecks:
    """Verbs that report a check."""

    def test_square_is_not_a_quasicategory(self, square_file, capsys):
        assert main(["check-qcat", square_file, "--dim", "2"]) == EXIT_CHECK_FAILED
        assert "no filler" in capsys.readouterr().out

    def test_nerve_is_a_quasicategory(self, capsys):
        assert main(["check-qcat", "--nerve", "poset:2", "--dim", "2"]) == EXIT_OK
        assert "quasicategory up to dimension 2" in capsys.readouterr().out

    def test_input_choice(self, square_file):
        assert main(["check-qcat", square_file, "--nerve", "iso"]) == EXIT_USAGE
        assert main(["check-qcat"]) == EXIT_USAGE
        assert main(["check-qcat", "--nerve", "cyclic:3"]) == EXIT_USAGE

    def test_ho(self, square_file, capsys):
        assert main(["ho", "--nerve", "poset:2"]) == EXIT_OK
        assert "3 objects, 6 morphisms" in capsys.readouterr().out
        assert main(["ho", square_file]) == EXIT_CHECK_FAILED
        assert main(["ho", square_file, "--tau1"]) == EXIT_OK
        assert "(from the presentation)" in capsys.readouterr().out

    def test_map_space(self, capsys):
        assert main(["map-space", "--nerve", "poset:1", "--x0", "0", "--x1", "1", "--bound", "1"]) == EXIT_OK
        assert "cube 0->1 0" in capsys.readouterr().out
        assert main(["map-space", "--nerve", "poset:1", "--x0", "0", "--x1", "7"]) == EXIT_USAGE

    def test_theta_verify(self, capsys):
        assert main(["theta-verify", "--nerve", "poset:1", "--bound", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "theta m=0 n=0 id=T1" in out
        assert "failed=1" not in out

    def test_suite_with_report(self, tmp_path, capsys):
        report = tmp_path / "summary.csv"
        assert main(["suite", "serialization", "--report", str(report)]) == EXIT_OK
        assert report.read_text().startswith("suite,check,checked,failed,ok,first_witness")
        assert "0 failed" in capsys.readouterr().out


class TestNerveArgument:
    def test_known_nerves(self):
        assert parse_nerve("poset:3", 2).category.objects == ("0", "1", "2", "3")
        assert len(parse_nerve("iso", 2).category.morphisms) == 4
        assert len(parse_nerve("terminal", 1).category.objects) == 1

    def test_unknown_nerve(self):
        with pytest.raises(UsageError):
            parse_nerve("poset:x", 2)


if __name__ == "__main__":
    pytest.main([__file__])
