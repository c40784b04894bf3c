"""Parser and renderer for the standardized policy text format.

A policy document is a sequence of lines. Structure comes entirely from
the section numbers, never from indentation:

* ``1.2.3 Title 4``    - section heading; the optional trailing integer
  is the paragraph weight (default 1).
* ``// remark``        - comment, attached to the current paragraph.
* ``Connection AND``   - declares how the current paragraph's options
  combine (``AND`` or ``OR``, case-insensitive).
* anything else        - an option of the current paragraph, written as
  ``[x) ][KEYWORD ]phrase`` with a single-letter label and one of the
  requirement keywords MUST, RECOMMENDED, OPTIONAL, NOT (case-sensitive).

``parse_policy`` never raises on malformed input; it collects diagnostics
and returns no policy when any of them is an error. ``render_policy``
writes a document that parses back to an equivalent tree.
"""

from __future__ import annotations

import enum
import re
import string
from dataclasses import dataclass, field

from .model import (
    Connective,
    Keyword,
    NumberPath,
    Paragraph,
    Policy,
    PolicyOption,
)

__all__ = [
    "Severity",
    "ParseDiagnostic",
    "parse_policy",
    "render_policy",
]


class Severity(enum.Enum):
    WARNING = "warning"
    ERROR = "error"


@dataclass(frozen=True)
class ParseDiagnostic:
    """One problem found while parsing, tied to a 1-based line number."""

    severity: Severity
    code: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.severity.value.upper()} {self.code}: {self.message}"


# ASCII-only so that unicode digits in titles are never read as numbers.
_HEADING_RE = re.compile(r"^(\d+(?:\.\d+)*)\s+(.+?)(?:\s+(\d+))?$", re.ASCII)
_LABEL_RE = re.compile(r"^([A-Za-z])\)\s*")
_DOTTED_NUMBER_RE = re.compile(r"^[0-9.]+$", re.ASCII)

_KEYWORDS = {k.name: k for k in Keyword}


@dataclass
class _Node:
    """Mutable paragraph under construction."""

    path: tuple[int, ...]
    title: str
    weight: int
    line: int
    options: list[PolicyOption] = field(default_factory=list)
    connective: Connective = Connective.NONE
    connective_declared: bool = False
    comments: list[str] = field(default_factory=list)
    children: list["_Node"] = field(default_factory=list)
    labels: set[str] = field(default_factory=set)


class _Parser:
    def __init__(self) -> None:
        self.diagnostics: list[ParseDiagnostic] = []
        self.root = _Node(path=(), title="", weight=1, line=0)
        # Stack of open sections, innermost last; the pseudo-root stays.
        self.stack: list[_Node] = [self.root]
        self.seen_paths: set[tuple[int, ...]] = set()

    def warn(self, code: str, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(Severity.WARNING, code, line, message))

    def error(self, code: str, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(Severity.ERROR, code, line, message))

    @property
    def current(self) -> _Node | None:
        node = self.stack[-1]
        return node if node.path else None

    def feed(self, line_no: int, raw: str) -> None:
        line = raw.strip()
        if not line:
            return
        if line.startswith("//"):
            self.handle_comment(line_no, line)
            return
        heading = _HEADING_RE.match(line)
        if heading is not None:
            self.handle_heading(line_no, heading)
            return
        tokens = line.split()
        if tokens[0].lower() == "connection":
            self.handle_connection(line_no, tokens)
            return
        self.handle_option(line_no, line, tokens)

    def handle_comment(self, line_no: int, line: str) -> None:
        current = self.current
        if current is None:
            self.warn(
                "COMMENT_BEFORE_SECTION",
                line_no,
                "comment before the first section heading is dropped",
            )
            return
        current.comments.append(line)

    def handle_heading(self, line_no: int, match: re.Match[str]) -> None:
        number, title, weight_text = match.group(1), match.group(2), match.group(3)
        segments = tuple(int(s) for s in number.split("."))
        if any(s == 0 for s in segments):
            self.error(
                "BAD_SECTION_NUMBER",
                line_no,
                f"section number {number} contains a zero segment",
            )
            return

        weight = 1
        if weight_text is not None:
            weight = int(weight_text)
            if weight == 0:
                self.error("BAD_WEIGHT", line_no, "paragraph weight must be positive")
                weight = 1

        if len(segments) > 4:
            self.warn(
                "DEPTH_EXCEEDS_4",
                line_no,
                f"section {number} is nested deeper than the standard four levels",
            )
        if len(segments) == 1 and title != title.upper():
            self.warn(
                "MAIN_SECTION_NOT_CAPS",
                line_no,
                f"main section title {title!r} is not upper case",
            )

        node = _Node(path=segments, title=title, weight=weight, line=line_no)
        self.attach(line_no, node)

    def attach(self, line_no: int, node: _Node) -> None:
        dotted = ".".join(str(s) for s in node.path)
        if node.path in self.seen_paths:
            self.error("DUPLICATE_SECTION", line_no, f"section {dotted} already defined")
            self.push(node)
            return
        self.seen_paths.add(node.path)

        while len(self.stack[-1].path) >= len(node.path):
            self.stack.pop()
        parent = self.stack[-1]
        parent_path = node.path[:-1]
        if parent.path != parent_path:
            if parent_path in self.seen_paths:
                self.error(
                    "SECTION_OUT_OF_ORDER",
                    line_no,
                    f"section {dotted} appears after its parent was closed",
                )
            else:
                parent_dotted = ".".join(str(s) for s in parent_path)
                self.error(
                    "ORPHAN_SECTION",
                    line_no,
                    f"section {dotted} has no parent section {parent_dotted}",
                )
            self.push(node)
            return
        if parent.children and parent.children[-1].path[-1] >= node.path[-1]:
            self.error(
                "SECTION_OUT_OF_ORDER",
                line_no,
                f"section {dotted} does not follow its siblings in order",
            )
            self.push(node)
            return
        parent.children.append(node)
        self.stack.append(node)

    def push(self, node: _Node) -> None:
        """Keep an unattachable section on the stack so its own children
        still parse without cascading errors."""
        while len(self.stack[-1].path) >= len(node.path):
            self.stack.pop()
        self.stack.append(node)

    def handle_connection(self, line_no: int, tokens: list[str]) -> None:
        current = self.current
        if current is None:
            self.error(
                "CONNECTION_BEFORE_SECTION",
                line_no,
                "Connection line before the first section heading",
            )
            return
        if len(tokens) != 2 or tokens[1].upper() not in ("AND", "OR"):
            self.error(
                "BAD_CONNECTIVE",
                line_no,
                "Connection line must read 'Connection AND' or 'Connection OR'",
            )
            return
        connective = Connective[tokens[1].upper()]
        if current.connective_declared:
            self.warn(
                "DUPLICATE_CONNECTIVE",
                line_no,
                "paragraph already declares a connective; the last one wins",
            )
        current.connective = connective
        current.connective_declared = True

    def handle_option(self, line_no: int, line: str, tokens: list[str]) -> None:
        current = self.current
        if current is None:
            self.error(
                "OPTION_BEFORE_SECTION",
                line_no,
                "option line before the first section heading",
            )
            return

        first = tokens[0]
        if _DOTTED_NUMBER_RE.match(first) and "." in first and any(c.isdigit() for c in first):
            self.warn(
                "HEADING_LIKE_OPTION",
                line_no,
                f"option starts with {first!r}, which looks like a section number",
            )

        rest = line
        label: str | None = None
        label_match = _LABEL_RE.match(rest)
        if label_match is not None:
            label = label_match.group(1)
            if label.isupper():
                self.warn(
                    "BAD_OPTION_LABEL",
                    line_no,
                    f"option label {label!r} should be lower case",
                )
                label = label.lower()
            if label in current.labels:
                self.error(
                    "DUPLICATE_OPTION_LABEL",
                    line_no,
                    f"option label {label!r} is already used in this paragraph",
                )
                return
            current.labels.add(label)
            rest = rest[label_match.end():]

        keyword: Keyword | None = None
        head, _, tail = rest.partition(" ")
        if head in _KEYWORDS:
            keyword = _KEYWORDS[head]
            rest = tail.lstrip()

        if not rest.strip():
            self.error("EMPTY_OPTION_PHRASE", line_no, "option has no phrase text")
            return
        current.options.append(PolicyOption(phrase=rest, label=label, keyword=keyword))

    def build(self, name: str) -> Policy | None:
        if any(d.severity is Severity.ERROR for d in self.diagnostics):
            return None
        return Policy(name=name, roots=tuple(self.freeze(c) for c in self.root.children))

    def freeze(self, node: _Node) -> Paragraph:
        return Paragraph(
            path=NumberPath(node.path),
            title=node.title,
            weight=node.weight,
            options=tuple(node.options),
            connective=node.connective,
            comments=tuple(node.comments),
            children=tuple(self.freeze(c) for c in node.children),
        )


def parse_policy(text: str, name: str = "policy") -> tuple[Policy | None, list[ParseDiagnostic]]:
    """Parse a policy document.

    Returns the policy and the diagnostics found along the way. When any
    diagnostic is an error the policy is None; warnings alone do not
    prevent parsing.
    """
    parser = _Parser()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        parser.feed(line_no, raw)
    return parser.build(name), parser.diagnostics


def _heading_line(paragraph: Paragraph) -> str:
    title = paragraph.title
    last_token = title.split()[-1]
    # A title ending in a bare number needs the weight spelled out, or the
    # reparse would read that number as the weight.
    ambiguous = last_token.isascii() and last_token.isdigit()
    if paragraph.weight != 1 or ambiguous:
        return f"{paragraph.path.dotted} {title} {paragraph.weight}"
    return f"{paragraph.path.dotted} {title}"


def _option_line(option: PolicyOption, label: str) -> str:
    if option.keyword is not None:
        return f"{label}) {option.keyword.name} {option.phrase}"
    return f"{label}) {option.phrase}"


def _render_paragraph(paragraph: Paragraph, out: list[str]) -> None:
    out.append(_heading_line(paragraph))
    out.extend(paragraph.comments)
    if len(paragraph.options) > len(string.ascii_lowercase):
        raise ValueError(
            f"paragraph {paragraph.path.dotted} has more options than available labels"
        )
    for index, option in enumerate(paragraph.options):
        out.append(_option_line(option, string.ascii_lowercase[index]))
    if paragraph.connective is not Connective.NONE:
        out.append(f"Connection {paragraph.connective.name}")
    for child in paragraph.children:
        _render_paragraph(child, out)


def render_policy(policy: Policy) -> str:
    """Write a policy back out in the standardized text format.

    Option labels are reassigned alphabetically, so a paragraph is limited
    to 26 options. Everything else round-trips: parsing the output yields
    a tree equal to the input up to option labels.
    """
    lines: list[str] = []
    for root in policy.roots:
        _render_paragraph(root, lines)
    return "".join(line + "\n" for line in lines)
