"""Domain model for standardized certificate policy documents.

A standardized certificate policy (CP) is a numbered outline, as laid out in
the RFC 3647 framework: main sections, nested subsections, and per-paragraph
requirement options that may carry an RFC 2119 keyword.  Everything in this
module is immutable after construction, so parsed policies and comparison
reports can be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

_DOTTED_RE = re.compile(r"^\d+(\.\d+)*$")

#: Tolerance used when a score must equal an exact value (e.g. "is 100").
SCORE_EPSILON = 1e-9


class Keyword(Enum):
    """Requirement keywords and their strength values.

    The four keywords map onto [0, 1].  MUST is an absolute requirement and
    NOT an excluded one; RECOMMENDED sits close to MUST, OPTIONAL halfway.
    The numeric spread is what lets near-agreements (MUST vs RECOMMENDED)
    score higher than outright conflicts (MUST vs NOT).
    """

    MUST = 1.0
    RECOMMENDED = 0.8
    OPTIONAL = 0.5
    NOT = 0.0


def keyword_value(keyword: Keyword) -> float:
    """Numeric strength of a requirement keyword (see :class:`Keyword`)."""
    return keyword.value


def normalize_phrase(text: str) -> str:
    """Canonical form used for option equality.

    Lowercases, strips, and collapses internal whitespace runs to single
    spaces.  Idempotent.  Label markers and keywords are removed by the
    parser before a phrase ever reaches this function.
    """
    return " ".join(text.split()).lower()


class Connective(Enum):
    """How a paragraph's options combine.

    OR means any single option satisfies the paragraph; AND means all of
    them are required.  NONE records that the paragraph declared no
    Connection line (scoring then treats the options as jointly required).
    """

    AND = "AND"
    OR = "OR"
    NONE = "NONE"


class ComparisonMode(Enum):
    """MERGE compares peers for cross-certification; ACQUIRE assesses how the
    acquired side (B) can adapt to the acquirer (A)."""

    MERGE = "merge"
    ACQUIRE = "acquire"


class MatchStatus(Enum):
    """How a paragraph pair lined up across the two policies."""

    MATCHED = "matched"
    MISSING_IN_A = "missing_in_a"
    MISSING_IN_B = "missing_in_b"
    BOTH_EMPTY = "both_empty"


@dataclass(frozen=True, order=True)
class NumberPath:
    """Hierarchical section number such as 1.3.1.1."""

    segments: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("number path needs at least one segment")
        if any(segment < 1 for segment in self.segments):
            raise ValueError(f"number path segments must be >= 1, got {self.segments}")

    @classmethod
    def parse(cls, dotted: str) -> "NumberPath":
        if not _DOTTED_RE.match(dotted):
            raise ValueError(f"not a dotted section number: {dotted!r}")
        return cls(tuple(int(part) for part in dotted.split(".")))

    @property
    def dotted(self) -> str:
        return ".".join(str(segment) for segment in self.segments)

    @property
    def depth(self) -> int:
        return len(self.segments)

    @property
    def parent(self) -> "NumberPath | None":
        return NumberPath(self.segments[:-1]) if len(self.segments) > 1 else None

    def extends(self, other: "NumberPath") -> bool:
        """True when this path is a direct child of ``other``."""
        return (
            len(self.segments) == len(other.segments) + 1
            and self.segments[:-1] == other.segments
        )

    def __str__(self) -> str:
        return self.dotted


@dataclass(frozen=True)
class PolicyOption:
    """One option line of a paragraph.

    ``label`` is the optional letter marker ("a)" in the source), ``keyword``
    the optional requirement keyword, ``phrase`` the option text itself.
    ``normalized_phrase`` is derived and is what option equality compares.
    """

    phrase: str
    label: str | None = None
    keyword: Keyword | None = None
    normalized_phrase: str = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.label is not None and not (
            len(self.label) == 1 and "a" <= self.label <= "z"
        ):
            raise ValueError(f"option label must be one lowercase letter: {self.label!r}")
        if not self.phrase.strip():
            raise ValueError("option phrase must be non-empty")
        if "\n" in self.phrase or "\r" in self.phrase:
            raise ValueError("option phrase must not contain line breaks")
        object.__setattr__(self, "normalized_phrase", normalize_phrase(self.phrase))


def option_keyword_value(option: PolicyOption) -> float:
    """Strength of an option's keyword.

    An option with no keyword is an unqualified statement, which a policy
    means as a requirement, so it counts as MUST (1.0).
    """
    return option.keyword.value if option.keyword is not None else Keyword.MUST.value


@dataclass(frozen=True)
class Paragraph:
    """One numbered section of a policy with its options and subparagraphs.

    ``comments`` holds "//" lines verbatim; they are carried through
    parsing, rendering, and merging but never scored.
    """

    path: NumberPath
    title: str
    weight: int = 1
    options: tuple[PolicyOption, ...] = ()
    connective: Connective = Connective.NONE
    comments: tuple[str, ...] = ()
    children: tuple["Paragraph", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "options", tuple(self.options))
        object.__setattr__(self, "comments", tuple(self.comments))
        object.__setattr__(self, "children", tuple(self.children))
        if not self.title or self.title != self.title.strip():
            raise ValueError(f"title must be non-empty and stripped: {self.title!r}")
        if "\n" in self.title or "\r" in self.title:
            raise ValueError("title must not contain line breaks")
        if self.weight < 1:
            raise ValueError(f"weight must be >= 1, got {self.weight}")
        labels = [opt.label for opt in self.options if opt.label is not None]
        if len(labels) != len(set(labels)):
            raise ValueError(f"duplicate option labels in paragraph {self.path}")
        for comment in self.comments:
            if not comment.startswith("//"):
                raise ValueError(f"comment must start with //: {comment!r}")
            if "\n" in comment or "\r" in comment:
                raise ValueError("comment must not contain line breaks")
        previous_segment = 0
        for child in self.children:
            if not child.path.extends(self.path):
                raise ValueError(
                    f"child {child.path} does not extend parent {self.path} by one segment"
                )
            segment = child.path.segments[-1]
            if segment <= previous_segment:
                raise ValueError(
                    f"children of {self.path} must be strictly ordered, "
                    f"got segment {segment} after {previous_segment}"
                )
            previous_segment = segment

    @property
    def depth(self) -> int:
        return self.path.depth

    def walk(self) -> Iterator["Paragraph"]:
        """This paragraph and all descendants, preorder."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class Policy:
    """A parsed standardized certificate policy: a name and its main sections."""

    name: str
    roots: tuple[Paragraph, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "roots", tuple(self.roots))
        previous_segment = 0
        for root in self.roots:
            if root.path.depth != 1:
                raise ValueError(f"root paragraph {root.path} must have depth 1")
            segment = root.path.segments[0]
            if segment <= previous_segment:
                raise ValueError(
                    f"root sections must be strictly increasing, "
                    f"got {segment} after {previous_segment}"
                )
            previous_segment = segment

    def walk(self) -> Iterator[Paragraph]:
        """All paragraphs of the policy, preorder."""
        for root in self.roots:
            yield from root.walk()

    def find(self, path: NumberPath) -> Paragraph | None:
        for paragraph in self.walk():
            if paragraph.path == path:
                return paragraph
        return None


def tree_equal(left: Policy | Paragraph, right: Policy | Paragraph) -> bool:
    """Structural equality of two policies or paragraph subtrees.

    Compares paths, titles, weights, connectives, comments, and option
    sequences by (keyword, phrase).  Option labels are presentational (the
    renderer synthesizes missing ones), so they are ignored.
    """
    if isinstance(left, Policy) != isinstance(right, Policy):
        return False
    if isinstance(left, Policy):
        left_nodes, right_nodes = left.roots, right.roots
    else:
        if not _paragraph_equal(left, right):
            return False
        left_nodes, right_nodes = left.children, right.children
    if len(left_nodes) != len(right_nodes):
        return False
    return all(tree_equal(l, r) for l, r in zip(left_nodes, right_nodes))


def _paragraph_equal(left: Paragraph, right: Paragraph) -> bool:
    return (
        left.path == right.path
        and left.title == right.title
        and left.weight == right.weight
        and left.connective == right.connective
        and left.comments == right.comments
        and len(left.options) == len(right.options)
        and all(
            lo.keyword == ro.keyword and lo.phrase == ro.phrase
            for lo, ro in zip(left.options, right.options)
        )
    )


@dataclass(frozen=True)
class ProvisionalMatch:
    """A phrase-equal option pair across two paragraphs.

    ``equality_score`` is 100 for phrase-equal options and 0 otherwise;
    ``keyword_factor`` is 1 minus the absolute strength difference of the
    two keywords, so identical keywords give 1.0 and MUST vs NOT gives 0.0.
    """

    index_a: int
    index_b: int
    equality_score: float
    keyword_factor: float

    def __post_init__(self) -> None:
        if self.equality_score not in (0.0, 100.0):
            raise ValueError(f"equality score must be 0 or 100: {self.equality_score}")
        if not 0.0 <= self.keyword_factor <= 1.0:
            raise ValueError(f"keyword factor must be in [0, 1]: {self.keyword_factor}")


@dataclass(frozen=True)
class ParagraphScore:
    """Scores for one aligned paragraph pair.

    ``own_score`` reflects the paragraph's options alone; ``child_aggregate``
    is the weighted mean of the subparagraph scores (present only when side
    A has children); ``combined_score`` folds the two together and is the
    value the overall document score and acceptance rules consume.
    """

    path: NumberPath
    own_score: float
    child_aggregate: float | None
    combined_score: float
    weight: int
    match_status: MatchStatus

    def __post_init__(self) -> None:
        for name in ("own_score", "combined_score"):
            value = getattr(self, name)
            if not 0.0 <= value <= 100.0:
                raise ValueError(f"{name} out of range [0, 100]: {value}")
        if self.child_aggregate is not None and not 0.0 <= self.child_aggregate <= 100.0:
            raise ValueError(f"child_aggregate out of range [0, 100]: {self.child_aggregate}")
        if self.weight < 1:
            raise ValueError(f"weight must be >= 1, got {self.weight}")


@dataclass(frozen=True)
class ComparisonDiagnostic:
    """Structured warning attached to a comparison report."""

    code: str
    path: NumberPath | None
    message: str


@dataclass(frozen=True)
class ComparisonReport:
    """Full outcome of comparing policy B against policy A.

    ``paragraph_scores`` has one row per aligned path at every depth.  The
    overall scores aggregate the top-level rows only; deeper paragraphs are
    already folded into their ancestors' combined scores.
    """

    mode: ComparisonMode
    policy_a_name: str
    policy_b_name: str
    paragraph_scores: tuple[ParagraphScore, ...]
    overall_weighted: float
    overall_unweighted: float
    diagnostics: tuple[ComparisonDiagnostic, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "paragraph_scores", tuple(self.paragraph_scores))
        object.__setattr__(self, "diagnostics", tuple(self.diagnostics))
        paths = [score.path for score in self.paragraph_scores]
        if len(paths) != len(set(paths)):
            raise ValueError("every aligned path may appear only once")
        top = self.top_level_scores()
        if top:
            weighted = sum(s.combined_score * s.weight for s in top) / sum(
                s.weight for s in top
            )
            unweighted = sum(s.combined_score for s in top) / len(top)
        else:
            weighted = unweighted = 100.0
        if abs(weighted - self.overall_weighted) > SCORE_EPSILON:
            raise ValueError(
                f"overall_weighted {self.overall_weighted} inconsistent with rows ({weighted})"
            )
        if abs(unweighted - self.overall_unweighted) > SCORE_EPSILON:
            raise ValueError(
                f"overall_unweighted {self.overall_unweighted} inconsistent with rows ({unweighted})"
            )

    def top_level_scores(self) -> tuple[ParagraphScore, ...]:
        return tuple(s for s in self.paragraph_scores if s.path.depth == 1)

    def find(self, path: NumberPath) -> ParagraphScore | None:
        for score in self.paragraph_scores:
            if score.path == path:
                return score
        return None
