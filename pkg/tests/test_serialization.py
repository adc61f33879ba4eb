"""
Test the .cub and .sim text formats.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.complex import cube, is_isomorphic, k_prime
from src.errors import DimensionMismatch, FormatError
import src.serialization as serialization
from src.serialization import (complex_from_text, complex_to_text, load, save, simplicial_from_text,
                               simplicial_to_text)
from src.simplex import horn, is_isomorphic as simplicial_isomorphic, simplex
from src.tensor import pair_id, product


class TestCubicalFormat:
    """Writing then parsing reproduces the document."""

    @pytest.mark.parametrize("X", [cube(0), cube(1), cube(2), k_prime()], ids=lambda X: X.name)
    def test_text_is_stable(self, X):
        text = complex_to_text(X)
        parsed = complex_from_text(text)
        assert complex_to_text(parsed) == text
        assert is_isomorphic(parsed, X)

    def test_face_lines(self):
        text = complex_to_text(cube(1))
        assert "face c* 1 0 -> c0 [id0]" in text
        assert "face c* 1 1 -> c1 [id0]" in text

    def test_marks_survive(self):
        parsed = complex_from_text(complex_to_text(k_prime()))
        assert parsed.marked == k_prime().marked

    def test_provenance_survives(self):
        P = product(cube(1), cube(1))
        parsed = complex_from_text(complex_to_text(P))
        assert parsed.provenance[pair_id("c*", "c0")] == ("c*", "c0")

    def test_blank_lines_are_ignored(self):
        text = complex_to_text(cube(1)).replace("\n", "\n\n")
        assert complex_from_text(text).counts() == (2, 1)


class TestCubicalErrors:
    @pytest.fixture
    def square_text(self):
        return complex_to_text(cube(2))

    def test_empty(self):
        with pytest.raises(FormatError):
            complex_from_text("")

    def test_unknown_keyword(self, square_text):
        with pytest.raises(FormatError) as exc_info:
            complex_from_text(square_text + "vertex c00\n")
        assert exc_info.value.line_number is not None

    def test_missing_face(self, square_text):
        text = "\n".join(line for line in square_text.splitlines() if line != "face c** 2 1 -> c*1 [id1]")
        with pytest.raises(FormatError, match="missing face"):
            complex_from_text(text)

    def test_dangling_target(self, square_text):
        with pytest.raises(FormatError, match="undeclared"):
            complex_from_text(square_text.replace("-> c*1 [id1]", "-> c*2 [id1]"))

    def test_wrong_dimension_in_header(self, square_text):
        with pytest.raises(FormatError, match="header"):
            complex_from_text(square_text.replace(" dim 2", " dim 3", 1))

    def test_faces_must_satisfy_the_identities(self, square_text):
        with pytest.raises(FormatError):
            complex_from_text(square_text.replace("face c0* 1 0 -> c00", "face c0* 1 0 -> c10"))


class TestSimplicialFormat:
    @pytest.mark.parametrize("S", [simplex(0), simplex(2), horn(2, 1)], ids=lambda S: S.name)
    def test_text_is_stable(self, S):
        text = simplicial_to_text(S)
        parsed = simplicial_from_text(text)
        assert simplicial_to_text(parsed) == text
        assert simplicial_isomorphic(parsed, S)

    def test_errors(self):
        with pytest.raises(FormatError):
            simplicial_from_text("complex wrong dim 0\n")
        text = simplicial_to_text(simplex(1))
        with pytest.raises(FormatError, match="missing face"):
            simplicial_from_text("\n".join(text.splitlines()[:-1]))

    def test_negative_dimensions_are_format_errors(self):
        with pytest.raises(FormatError, match="negative dimension") as exc_info:
            simplicial_from_text("simplicial bad dim -1\nsimplex a -1\n")
        assert exc_info.value.line_number == 2
        with pytest.raises(FormatError, match="negative dimension"):
            complex_from_text("complex bad dim -1\ncube a -1\n")

    def test_validation_errors_are_format_errors(self, monkeypatch):
        def mismatch(S):
            raise DimensionMismatch("face lands in the wrong dimension")

        monkeypatch.setattr(serialization, "validate_simplicial", mismatch)
        with pytest.raises(FormatError, match="wrong dimension"):
            simplicial_from_text(simplicial_to_text(simplex(1)))


class TestFiles:
    """Dispatch on the file extension."""

    def test_save_and_load(self, tmp_path):
        path = save(cube(2), tmp_path / "square.cub")
        assert is_isomorphic(load(path), cube(2))
        path = save(simplex(2), tmp_path / "nested" / "triangle.sim")
        assert simplicial_isomorphic(load(path), simplex(2))

    def test_unknown_extension(self, tmp_path):
        with pytest.raises(FormatError):
            load(tmp_path / "square.txt")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FormatError, match="cannot read"):
            load(tmp_path / "absent.cub")


if __name__ == "__main__":
    pytest.main([__file__])
