import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

# One op per line:
#   add 3 7
#   del 3 7
#   query            # expect true
# Blank lines and lines starting with '#' are skipped.

RE_ADD = re.compile(r"^add\s+(\d+)\s+(\d+)$", re.I)
RE_DEL = re.compile(r"^del\s+(\d+)\s+(\d+)$", re.I)
RE_QUERY = re.compile(r"^query$", re.I)
RE_EXPECT = re.compile(r"^expect\s+(true|false|\d+)$", re.I)

Expect = Union[bool, int]


class ScriptError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Step:
    line: int
    op: str                     # add / del / query
    u: int = -1
    v: int = -1
    expect: Optional[Expect] = None


def _parse_expect(line_no: int, comment: str) -> Optional[Expect]:
    m = RE_EXPECT.match(comment.strip())
    if not m:
        return None
    word = m.group(1).lower()
    if word == "true":
        return True
    if word == "false":
        return False
    return int(word)


def parse_line(line_no: int, raw: str) -> Optional[Step]:
    body, _, comment = raw.partition("#")
    body = body.strip()
    if not body:
        return None

    m = RE_ADD.match(body)
    if m:
        if comment.strip():
            _reject_expect(line_no, comment)
        return Step(line_no, "add", int(m.group(1)), int(m.group(2)))
    m = RE_DEL.match(body)
    if m:
        if comment.strip():
            _reject_expect(line_no, comment)
        return Step(line_no, "del", int(m.group(1)), int(m.group(2)))
    if RE_QUERY.match(body):
        return Step(line_no, "query", expect=_parse_expect(line_no, comment))
    raise ScriptError(line_no, f"cannot parse {body!r}")


def _reject_expect(line_no: int, comment: str) -> None:
    if RE_EXPECT.match(comment.strip()):
        raise ScriptError(line_no, "'# expect' only applies to query lines")


def parse_script(text: str) -> List[Step]:
    steps: List[Step] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        step = parse_line(i, raw)
        if step is not None:
            steps.append(step)
    return steps


def format_expect(value: Expect) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def format_script(steps: Iterable[Step]) -> str:
    """Inverse of parse_script up to comments and line numbers."""
    out = []
    for s in steps:
        if s.op == "query":
            out.append("query" if s.expect is None else f"query  # expect {format_expect(s.expect)}")
        else:
            out.append(f"{s.op} {s.u} {s.v}")
    return "\n".join(out) + "\n"
