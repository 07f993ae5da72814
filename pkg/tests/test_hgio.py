import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hyperx import hgio
from hyperx.errors import Infeasible, ParseError
from hyperx.genlab import random_linear


def test_hg_text_layout(path2):
    assert hgio.dumps_hg(path2) == "3 5 2\n0 1 2\n2 3 4\n"


def test_comments_and_blank_lines_ignored():
    text = "# loose path\n3 5 2\n\n0 1 2  # first\n2 3 4\n"
    assert hgio.loads_hg(text).edges == ((0, 1, 2), (2, 3, 4))


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 5\n0 1 2\n", 1, "header"),
        ("3 x 1\n0 1 2\n", 1, "integers"),
        ("3 5 2\n0 1 2\n", 2, "announces 2 edges"),
        ("3 5 1\n0 1 2\n2 3 4\n", 3, "announces 1 edges"),
        ("3 5 2\n0 1 2\n2 3\n", 3, "expected 3"),
        ("3 5 2\n0 1 2\n2 3 q\n", 3, "integers"),
        ("3 5 2\n0 1 2\n2 3 9\n", 3, "range"),
        ("3 5 2\n0 1 2\n2 1 0\n", 3, "first on line 2"),
    ],
)
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(ParseError) as info:
        hgio.loads_hg(text, "t.hg")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"t.hg:{line}:")


def test_empty_input():
    with pytest.raises(ParseError):
        hgio.loads_hg("# nothing\n")


def test_json_round_trip(fano):
    text = hgio.dumps_json(fano)
    assert text.startswith('{"k":3,"n":7,"edges":[[0,1,2]')
    assert hgio.loads_json(text) == fano


@pytest.mark.parametrize("text", ['{"k":3}', "[1,2]", "{not json", '{"k":3,"n":2,"edges":[[0,1,2]]}'])
def test_bad_json(text):
    with pytest.raises(ParseError):
        hgio.loads_json(text)


def test_read_write_by_suffix(tmp_path, fano):
    for name in ("f.hg", "f.json"):
        hgio.write(fano, tmp_path / name)
        assert hgio.read(tmp_path / name) == fano


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.sampled_from([3, 4]), n=st.integers(8, 24))
def test_round_trips_are_bit_exact(seed, k, n):
    try:
        H = random_linear(k, n, 2, seed)
    except Infeasible:
        assume(False)
    text = hgio.dumps_hg(H)
    assert hgio.loads_hg(text) == H
    assert hgio.dumps_hg(hgio.loads_hg(text)) == text
    assert hgio.loads_json(hgio.dumps_json(H)) == H
