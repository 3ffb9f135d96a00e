import pytest

from smallcancel.formats import (
    FormatError,
    atomic_writer,
    format_presentation,
    parse_presentation,
    read_presentation,
    read_word,
    write_atomic,
)
from smallcancel.words import Alphabet

TEXT = """# a small presentation
generators: a b
relator: a^2 b^-1 a b^3   # first
relator r_two: b a^-3 b^2 a
"""


def test_parse_roundtrip():
    alphabet, rels, ids = parse_presentation(TEXT)
    assert alphabet == Alphabet(("a", "b")) and ids == ["r1", "r_two"]
    again = parse_presentation(format_presentation(alphabet, rels, ids))
    assert again == (alphabet, rels, ids)


@pytest.mark.parametrize(
    "text",
    [
        "relator: a\n",
        "generators: a\ngenerators: b\n",
        "generators: a b\nrelator: a b b^-1\n",
        "generators: a b\nrelator: c\n",
        "generators: a b\nwhatever: a\n",
        "generators: a\nrelator x: a\nrelator x: a^2\n",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(FormatError):
        parse_presentation(text)


def test_read_files(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text(TEXT)
    alphabet, rels, _ = read_presentation(p)
    w = tmp_path / "w.txt"
    w.write_text("a^3 b\n# comment\nb\n")
    assert read_word(w, alphabet).letters == (1, 1, 1, 2, 2)
    with pytest.raises(FormatError):
        read_presentation(tmp_path / "missing.txt")


def test_atomic_writer_keeps_old_file_on_failure(tmp_path):
    target = tmp_path / "out.txt"
    write_atomic(target, "old\n")
    with pytest.raises(RuntimeError):
        with atomic_writer(target) as fh:
            fh.write("partial")
            raise RuntimeError("interrupted")
    assert target.read_text() == "old\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


def test_atomic_writer_no_file_on_failure(tmp_path):
    target = tmp_path / "new.txt"
    with pytest.raises(KeyboardInterrupt):
        with atomic_writer(target) as fh:
            fh.write("x")
            raise KeyboardInterrupt
    assert not target.exists() and list(tmp_path.iterdir()) == []
