"""Whole-policy comparison.

Paragraphs are aligned by section number. Every paragraph of policy A
produces one score row; paragraphs that exist only in policy B are
appended afterwards so the report covers both documents. A paragraph's
combined score blends its own option score with the weighted mean of its
subparagraphs' combined scores, where the subparagraph count and weights
are taken from policy A: the comparing party's structure governs.

The two overall figures aggregate the top-level rows only; deeper
paragraphs already contribute through their parents.
"""

from __future__ import annotations

import json

from .model import (
    ComparisonDiagnostic,
    ComparisonMode,
    ComparisonReport,
    Connective,
    MatchStatus,
    NumberPath,
    Paragraph,
    ParagraphScore,
    Policy,
)
from .scoring import score_option_lists, score_paragraph_options

__all__ = [
    "align",
    "compare",
    "report_to_dict",
    "report_to_json",
]


def align(
    policy_a: Policy,
    policy_b: Policy,
) -> list[tuple[Paragraph | None, Paragraph | None]]:
    """Pair up paragraphs with the same section number.

    Pairs follow policy A's document order; paragraphs found only in
    policy B are appended in B's document order.
    """
    by_path_b = {p.path: p for p in policy_b.walk()}
    pairs: list[tuple[Paragraph | None, Paragraph | None]] = []
    matched: set[NumberPath] = set()
    for paragraph_a in policy_a.walk():
        paragraph_b = by_path_b.get(paragraph_a.path)
        if paragraph_b is not None:
            matched.add(paragraph_a.path)
        pairs.append((paragraph_a, paragraph_b))
    for paragraph_b in policy_b.walk():
        if paragraph_b.path not in matched:
            pairs.append((None, paragraph_b))
    return pairs


def _normalized_title(title: str) -> str:
    return " ".join(title.split()).lower()


def _row_status(paragraph_a: Paragraph | None, paragraph_b: Paragraph | None) -> MatchStatus:
    if paragraph_a is None:
        return MatchStatus.MISSING_IN_A
    if paragraph_b is None:
        return MatchStatus.MISSING_IN_B
    if not paragraph_a.options and not paragraph_b.options:
        return MatchStatus.BOTH_EMPTY
    return MatchStatus.MATCHED


class _Comparer:
    def __init__(self, policy_b: Policy, mode: ComparisonMode) -> None:
        self.mode = mode
        self.by_path_b = {p.path: p for p in policy_b.walk()}
        self.rows: list[ParagraphScore] = []
        self.diagnostics: list[ComparisonDiagnostic] = []

    def note(self, code: str, path: NumberPath | None, message: str) -> None:
        self.diagnostics.append(ComparisonDiagnostic(code=code, path=path, message=message))

    def check_pairing(self, paragraph_a: Paragraph, paragraph_b: Paragraph) -> None:
        if _normalized_title(paragraph_a.title) != _normalized_title(paragraph_b.title):
            self.note(
                "TITLE_MISMATCH",
                paragraph_a.path,
                f"section {paragraph_a.path.dotted} is titled "
                f"{paragraph_a.title!r} in one policy and {paragraph_b.title!r} in the other",
            )
        declared = (paragraph_a.connective, paragraph_b.connective)
        if Connective.NONE not in declared and declared[0] is not declared[1]:
            self.note(
                "CONNECTIVE_MISMATCH",
                paragraph_a.path,
                f"section {paragraph_a.path.dotted} declares "
                f"{declared[0].name} in one policy and {declared[1].name} in the other; "
                f"the first policy's connective governs",
            )

    def score_a_side(self, paragraph_a: Paragraph) -> ParagraphScore:
        """Score one paragraph of policy A, recursing into its children."""
        paragraph_b = self.by_path_b.get(paragraph_a.path)
        if paragraph_b is None:
            self.note(
                "MISSING_IN_B",
                paragraph_a.path,
                f"section {paragraph_a.path.dotted} has no counterpart",
            )
            own = score_option_lists(
                paragraph_a.options, (), paragraph_a.connective, self.mode
            )
        else:
            self.check_pairing(paragraph_a, paragraph_b)
            own = score_paragraph_options(paragraph_a, paragraph_b, self.mode)

        row_index = len(self.rows)
        self.rows.append(None)  # placeholder keeps preorder row order
        child_rows = [self.score_a_side(child) for child in paragraph_a.children]

        aggregate: float | None = None
        combined = own
        if child_rows:
            weight_sum = sum(row.weight for row in child_rows)
            aggregate = (
                sum(row.combined_score * row.weight for row in child_rows) / weight_sum
            )
            n = len(child_rows)
            combined = (own + aggregate * n) / (1 + n)

        row = ParagraphScore(
            path=paragraph_a.path,
            own_score=own,
            child_aggregate=aggregate,
            combined_score=combined,
            weight=paragraph_a.weight,
            match_status=_row_status(paragraph_a, paragraph_b),
        )
        self.rows[row_index] = row
        return row

    def score_b_only(self, paragraph_b: Paragraph) -> None:
        """Add a row for a paragraph policy A does not have."""
        self.note(
            "MISSING_IN_A",
            paragraph_b.path,
            f"section {paragraph_b.path.dotted} has no counterpart",
        )
        own = score_option_lists((), paragraph_b.options, paragraph_b.connective, self.mode)
        # Policy A has no such paragraph, hence no subparagraph count to
        # blend with and no declared weight; the row stands on its own.
        self.rows.append(
            ParagraphScore(
                path=paragraph_b.path,
                own_score=own,
                child_aggregate=None,
                combined_score=own,
                weight=1,
                match_status=MatchStatus.MISSING_IN_A,
            )
        )


def compare(policy_a: Policy, policy_b: Policy, mode: ComparisonMode) -> ComparisonReport:
    """Compare two policies and report per-paragraph and overall scores."""
    comparer = _Comparer(policy_b, mode)
    for root in policy_a.roots:
        comparer.score_a_side(root)
    covered = {row.path for row in comparer.rows}
    for paragraph_b in policy_b.walk():
        if paragraph_b.path not in covered:
            comparer.score_b_only(paragraph_b)

    top_level = [row for row in comparer.rows if row.path.depth == 1]
    if top_level:
        weight_sum = sum(row.weight for row in top_level)
        weighted = sum(row.combined_score * row.weight for row in top_level) / weight_sum
        unweighted = sum(row.combined_score for row in top_level) / len(top_level)
    else:
        weighted = unweighted = 100.0

    return ComparisonReport(
        mode=mode,
        policy_a_name=policy_a.name,
        policy_b_name=policy_b.name,
        paragraph_scores=tuple(comparer.rows),
        overall_weighted=weighted,
        overall_unweighted=unweighted,
        diagnostics=tuple(comparer.diagnostics),
    )


def report_to_dict(report: ComparisonReport) -> dict:
    """Serialize a report to plain data with a stable layout."""
    return {
        "report_version": 1,
        "mode": report.mode.value,
        "policy_a_name": report.policy_a_name,
        "policy_b_name": report.policy_b_name,
        "overall_weighted": report.overall_weighted,
        "overall_unweighted": report.overall_unweighted,
        "paragraphs": [
            {
                "path": row.path.dotted,
                "own_score": row.own_score,
                "child_aggregate": row.child_aggregate,
                "combined_score": row.combined_score,
                "weight": row.weight,
                "match_status": row.match_status.value,
            }
            for row in report.paragraph_scores
        ],
        "diagnostics": [
            {
                "code": diagnostic.code,
                "path": diagnostic.path.dotted if diagnostic.path is not None else None,
                "message": diagnostic.message,
            }
            for diagnostic in report.diagnostics
        ],
    }


def report_to_json(report: ComparisonReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False)
