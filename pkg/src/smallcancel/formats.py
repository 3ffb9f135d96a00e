"""Text formats for presentations and words, and atomic file output.

A presentation file has one ``generators:`` line followed by ``relator:``
lines (optionally ``relator <id>:``). Words use the usual token syntax and
``#`` comments are allowed everywhere.
"""

from __future__ import annotations

import contextlib
import os
import tempfile
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO

from .words import Alphabet, CyclicWord, Word, WordSyntaxError


class FormatError(ValueError):
    pass


def parse_presentation(text: str) -> tuple[Alphabet, list[CyclicWord], list[str]]:
    alphabet: Optional[Alphabet] = None
    relators, ids = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'generators:' or 'relator:'")
        key = head.split()
        if key == ["generators"]:
            if alphabet is not None:
                raise FormatError(f"line {lineno}: second generators line")
            try:
                alphabet = Alphabet(tuple(body.split()))
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
            if len(alphabet) == 0:
                raise FormatError(f"line {lineno}: no generators")
        elif key and key[0] == "relator" and len(key) <= 2:
            if alphabet is None:
                raise FormatError(f"line {lineno}: relator before generators")
            try:
                w = alphabet.parse(body)
                r = CyclicWord(w)
            except (WordSyntaxError, ValueError) as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
            relators.append(r)
            ids.append(key[1] if len(key) == 2 else f"r{len(relators)}")
        else:
            raise FormatError(f"line {lineno}: unknown key {head.strip()!r}")
    if alphabet is None:
        raise FormatError("missing generators line")
    if len(set(ids)) != len(ids):
        raise FormatError("duplicate relator ids")
    return alphabet, relators, ids


def read_presentation(path: str | Path) -> tuple[Alphabet, list[CyclicWord], list[str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_presentation(text)


def presentation_lines(alphabet: Alphabet, relators: Iterable[tuple[str, CyclicWord]]) -> Iterator[str]:
    yield "generators: " + " ".join(alphabet.generators) + "\n"
    for rid, r in relators:
        yield f"relator {rid}: {alphabet.format(r.representative)}\n"


def format_presentation(alphabet: Alphabet, relators: Iterable[CyclicWord], ids: Optional[Iterable[str]] = None) -> str:
    rels = list(relators)
    ids = list(ids) if ids is not None else [f"r{j + 1}" for j in range(len(rels))]
    return "".join(presentation_lines(alphabet, zip(ids, rels)))


def read_word(path: str | Path, alphabet: Alphabet) -> Word:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    try:
        return alphabet.parse(text)
    except WordSyntaxError as exc:
        raise FormatError(str(exc)) from None


@contextlib.contextmanager
def atomic_writer(path: str | Path) -> Iterator[TextIO]:
    """Write to a temporary file next to ``path`` and move it into place only
    when the block finishes without error."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def write_atomic(path: str | Path, text: str) -> None:
    with atomic_writer(path) as fh:
        fh.write(text)
