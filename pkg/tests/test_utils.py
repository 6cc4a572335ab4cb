import pytest

import pi1_free
from pi1_free import EdgePath
from utils import (
    FormatError,
    load_text_file,
    parse_endo_text,
    parse_graph_text,
    parse_path,
    parse_word,
    render_endo,
    render_path,
    render_steps,
    render_word,
)
from word_core import Word, reduce


@pytest.mark.parametrize("text, expected", [
    ("a0 a1^-1", reduce([(0, 1), (1, -1)])),
    ("", Word.identity()),
    ("1", Word.identity()),
    ("  a3^2   a3^-2 a0 ", reduce([(0, 1)])),
    ("a0^+2", reduce([(0, 2)])),
])
def test_parse_word(text, expected):
    assert parse_word(text) == expected


@pytest.mark.parametrize("text, message", [
    ("a0^0", "zero exponent at token 1"),
    ("a0 a1 b2", "expected letter family 'a' but found 'b' at token 3"),
    ("a0 a^2", "malformed token 'a^2' at token 2"),
    ("a0 1", "malformed token '1' at token 2"),
])
def test_parse_word_errors(text, message):
    with pytest.raises(FormatError) as excinfo:
        parse_word(text)
    assert str(excinfo.value) == message


def test_parse_word_in_the_x_family():
    assert parse_word("x1^-1 x0", "x") == reduce([(1, -1), (0, 1)])
    with pytest.raises(FormatError):
        parse_word("a0", "x")


@pytest.mark.parametrize("text", ["a0 a1^-1 a3^2", "a12^-5", "a0^2 a1 a0^-1"])
def test_render_then_parse(text):
    w = parse_word(text)
    assert render_word(w) == text
    assert parse_word(render_word(w)) == w


def test_render_word():
    assert render_word(Word.identity()) == "1"
    assert render_word(reduce([(2, 1), (0, -3)]), "x") == "x2 x0^-3"


def test_parse_endo_text(data_dir, w):
    f, x0 = parse_endo_text(load_text_file(str(data_dir / "inner_by_w.endo")))
    assert f.rank == 2
    assert f.images[0] == reduce([(1, -1), (0, 1), (1, 1)])
    assert x0 == w


def test_parse_endo_text_without_x0(data_dir, swap):
    f, x0 = parse_endo_text(load_text_file(str(data_dir / "swap.endo")))
    assert f == swap
    assert x0 is None


def test_render_endo_round_trip(retraction):
    text = "\n".join(render_endo(retraction, Word.identity()))
    assert text == "rank 2\nx0 -> x0\nx1 -> x0^2\nx0 = 1"
    assert parse_endo_text(text) == (retraction, Word.identity())


@pytest.mark.parametrize("text, message", [
    ("", "empty endomorphism description"),
    ("rank two\nx0 -> x0", "expected 'rank <r>' at line 1"),
    ("rank 1\nx0 -> x0\nx0 -> x0^2", "second image for x0 at line 3"),
    ("rank 1\nx1 -> x0", "image for x1 beyond rank 1 at line 2"),
    ("rank 2\nx0 -> x0", "no image given for x1"),
    ("rank 1\n# comment\nx0 : x0", "unrecognized line at line 3"),
    ("rank 1\nx0 -> x0^0", "zero exponent at token 1, line 2"),
    ("rank 1\nx0 -> x1", "Image of x0 uses x1 outside rank 1"),
    ("rank 1\nx0 -> x0\nx0 = x3", "x0 uses a generator beyond rank 1"),
])
def test_parse_endo_text_errors(text, message):
    with pytest.raises(FormatError) as excinfo:
        parse_endo_text(text)
    assert str(excinfo.value) == message


def test_parse_graph_text(data_dir, theta, wedge):
    assert parse_graph_text(load_text_file(str(data_dir / "theta.graph"))) == theta
    assert parse_graph_text(load_text_file(str(data_dir / "wedge2.graph"))) == wedge
    cycle = parse_graph_text(load_text_file(str(data_dir / "theta_cycle_base.graph")))
    assert not pi1_free.validate(cycle)


@pytest.mark.parametrize("text, message", [
    ("edge 0 0 0\nbasevertex 0", "missing 'vertices <n>' line"),
    ("vertices 1\nedge 0 0 0", "a base with no edges needs a 'basevertex <v>' line"),
    ("vertices 1\nedge 0 0 x", "non-numeric field at line 2"),
    ("vertices 1\nloop 0 0 0", "unrecognized line at line 2"),
    ("vertices 1\nedge 0 0 1\nbasevertex 0", "Edge 0 uses unknown vertex 1"),
])
def test_parse_graph_text_errors(text, message):
    with pytest.raises(FormatError) as excinfo:
        parse_graph_text(text)
    assert str(excinfo.value) == message


def test_parse_path(theta):
    assert parse_path("e0 e1^-1", theta) == EdgePath(0, ((0, 1), (1, -1)))
    assert parse_path("e1^-1", theta) == EdgePath(1, ((1, -1),))
    assert parse_path("@1", theta) == EdgePath(1)
    assert parse_path("@0 e2 e2^-1", theta) == EdgePath(0, ((2, 1), (2, -1)))


@pytest.mark.parametrize("text", ["", "e0 e1", "e5", "f1", "@1 e0"])
def test_parse_path_errors(theta, text):
    with pytest.raises(FormatError):
        parse_path(text, theta)


def test_render_path_round_trip(theta):
    p = EdgePath(0, ((1, 1), (2, -1)))
    assert render_path(p) == "@0 e1 e2^-1"
    assert parse_path(render_path(p), theta) == p
    assert render_path(EdgePath(1)) == "@1"
    assert render_steps(()) == "1"


def test_load_text_file_missing(tmp_path):
    with pytest.raises(OSError):
        load_text_file(str(tmp_path / "absent.graph"))

