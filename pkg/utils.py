"""
Utility functions for the homsplit text formats
Parsing and rendering of words, endomorphism files, graph files and edge paths
"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

import regex as re

from endo_split import EndoError, FreeEndo
from pi1_free import Edge, EdgePath, GraphComplex, GraphError, path_end
from word_core import Word, reduce

Family = Literal["a", "x"]

_LETTER_PATTERN = re.compile(r"^(?P<family>\p{L})(?P<index>\d+)(?:\^(?P<exponent>[+-]?\d+))?$")
_STEP_PATTERN = re.compile(r"^e(?P<id>\d+)(?:\^(?P<sign>[+-]?1))?$")
_START_PATTERN = re.compile(r"^@(?P<vertex>\d+)$")
_IMAGE_PATTERN = re.compile(r"^x(?P<index>\d+)\s*->\s*(?P<word>.*)$")
_X0_PATTERN = re.compile(r"^x0\s*=\s*(?P<word>.*)$")


class FormatError(ValueError):
    """Raised when input text does not follow one of the homsplit formats."""


def load_text_file(path: str) -> str:
    """
    Read a UTF-8 input file

    Args:
        path: File path

    Returns:
        str: File contents

    Raises:
        OSError: If the file cannot be read
    """
    return Path(path).read_text(encoding="utf-8")


def _content_lines(text: str) -> List[Tuple[int, str]]:
    # (1-based line number, stripped line) with blank lines and # comments dropped
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


# =============================
# Words
# =============================


def parse_word(text: str, family: Family = "a") -> Word:
    """
    Parse a whitespace-separated word such as `a0 a1^-1 a0^2`.

    The empty string and a lone `1` denote the identity.

    Raises:
        FormatError: With the 1-based token position of the first bad token
    """
    tokens = text.split()
    if tokens == ["1"]:
        return Word.identity()
    raw: List[Tuple[int, int]] = []
    for position, token in enumerate(tokens, start=1):
        match = _LETTER_PATTERN.match(token)
        if not match:
            raise FormatError(f"malformed token {token!r} at token {position}")
        if match.group("family") != family:
            raise FormatError(
                f"expected letter family '{family}' but found '{match.group('family')}' at token {position}"
            )
        exponent = int(match.group("exponent")) if match.group("exponent") else 1
        if exponent == 0:
            raise FormatError(f"zero exponent at token {position}")
        raw.append((int(match.group("index")), exponent))
    return reduce(raw)


def render_word(w: Word, family: Family = "a") -> str:
    if w.is_identity:
        return "1"
    return " ".join(
        f"{family}{letter.index}" if letter.exponent == 1 else f"{family}{letter.index}^{letter.exponent}"
        for letter in w.letters
    )


# =============================
# Endomorphism files
# =============================


def parse_endo_text(text: str) -> Tuple[FreeEndo, Optional[Word]]:
    """
    Parse an endomorphism description.

    Format:
        rank <r>
        x<s> -> <word over x-letters>     (one line per generator)
        x0 = <word>                       (optional conjugating element)

    Returns:
        Tuple[FreeEndo, Optional[Word]]: The endomorphism and x0 when given

    Raises:
        FormatError: With the offending line number
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty endomorphism description")
    number, first = lines[0]
    header = first.split()
    if len(header) != 2 or header[0] != "rank" or not header[1].isdigit():
        raise FormatError(f"expected 'rank <r>' at line {number}")
    rank = int(header[1])

    images: dict[int, Word] = {}
    x0: Optional[Word] = None
    for number, line in lines[1:]:
        conjugator = _X0_PATTERN.match(line)
        image = _IMAGE_PATTERN.match(line)
        if not conjugator and not image:
            raise FormatError(f"unrecognized line at line {number}")
        match = conjugator or image
        try:
            word = parse_word(match.group("word"), "x")
        except FormatError as e:
            raise FormatError(f"{str(e)}, line {number}")
        if conjugator:
            x0 = word
            continue
        index = int(image.group("index"))
        if index in images:
            raise FormatError(f"second image for x{index} at line {number}")
        if index >= rank:
            raise FormatError(f"image for x{index} beyond rank {rank} at line {number}")
        images[index] = word

    missing = [s for s in range(rank) if s not in images]
    if missing:
        raise FormatError(f"no image given for x{missing[0]}")
    if x0 is not None and any(letter.index >= rank for letter in x0.letters):
        raise FormatError(f"x0 uses a generator beyond rank {rank}")
    try:
        endo = FreeEndo(rank, tuple(images[s] for s in range(rank)))
    except EndoError as e:
        raise FormatError(str(e))
    return endo, x0


def render_endo(f: FreeEndo, x0: Optional[Word] = None) -> List[str]:
    lines = [f"rank {f.rank}"]
    lines.extend(f"x{s} -> {render_word(image, 'x')}" for s, image in enumerate(f.images))
    if x0 is not None:
        lines.append(f"x0 = {render_word(x0, 'x')}")
    return lines


# =============================
# Graph files and edge paths
# =============================


def parse_graph_text(text: str) -> GraphComplex:
    """
    Parse a graph description.

    Format:
        vertices <n>
        edge <id> <tail> <head>      (one line per edge)
        base <id> <id> ...           (edges of A, possibly none)
        basevertex <v>               (required when A has no edges)

    Raises:
        FormatError: With the offending line number
    """
    vertex_count: Optional[int] = None
    edges: List[Edge] = []
    base_edges: List[int] = []
    base_vertex: Optional[int] = None
    for number, line in _content_lines(text):
        keyword, *fields = line.split()
        if not all(field.isdigit() for field in fields):
            raise FormatError(f"non-numeric field at line {number}")
        values = [int(field) for field in fields]
        if keyword == "vertices" and len(values) == 1:
            vertex_count = values[0]
        elif keyword == "edge" and len(values) == 3:
            edges.append(Edge(*values))
        elif keyword == "base":
            base_edges.extend(values)
        elif keyword == "basevertex" and len(values) == 1:
            base_vertex = values[0]
        else:
            raise FormatError(f"unrecognized line at line {number}")

    if vertex_count is None:
        raise FormatError("missing 'vertices <n>' line")
    if not base_edges and base_vertex is None:
        raise FormatError("a base with no edges needs a 'basevertex <v>' line")
    try:
        return GraphComplex(vertex_count, tuple(edges), frozenset(base_edges), base_vertex)
    except GraphError as e:
        raise FormatError(str(e))


def parse_path(text: str, g: GraphComplex) -> EdgePath:
    """
    Parse an edge path such as `e1 e2^-1`, optionally starting with `@<v>`.

    The start vertex is inferred from the first step when `@<v>` is absent;
    the empty path needs it explicitly.

    Raises:
        FormatError: For malformed tokens or steps that do not connect
    """
    tokens = text.split()
    start: Optional[int] = None
    if tokens:
        anchor = _START_PATTERN.match(tokens[0])
        if anchor:
            start = int(anchor.group("vertex"))
            tokens = tokens[1:]

    steps = []
    for position, token in enumerate(tokens, start=1):
        match = _STEP_PATTERN.match(token)
        if not match:
            raise FormatError(f"malformed step {token!r} at token {position}")
        edge_id = int(match.group("id"))
        if edge_id not in g.edge_map:
            raise FormatError(f"unknown edge e{edge_id} at token {position}")
        steps.append((edge_id, int(match.group("sign") or 1)))

    if start is None:
        if not steps:
            raise FormatError("the empty path needs a start vertex '@<v>'")
        start = g.step_source(steps[0])
    path = EdgePath(start, tuple(steps))
    try:
        path_end(g, path)
    except GraphError as e:
        raise FormatError(str(e))
    return path


def render_steps(steps: Tuple[Tuple[int, int], ...]) -> str:
    if not steps:
        return "1"
    return " ".join(f"e{edge}" if sign > 0 else f"e{edge}^-1" for edge, sign in steps)


def render_path(p: EdgePath) -> str:
    return f"@{p.start} {render_steps(p.steps)}" if p.steps else f"@{p.start}"
