"""Build a unified policy prototype from two compared policies.

The merge is gated by an acceptance verdict: callers compare the two
policies, evaluate their rules, and only an accepted verdict unlocks the
merge. Under acquisition the acquirer's policy stands as-is. Under a
merger of equals the result is a union of both documents with the first
policy winning ties, annotated with ``//`` comments wherever the two
sides disagreed so a human editor can review every seam:

* matched options keep the stricter requirement keyword;
* options present on one side only stay in the list and are flagged;
* sections present on one side only are adopted whole and flagged;
* title and connective conflicts keep policy A's choice and note B's.

The output is a normal policy tree, so it can be rendered, reparsed, and
compared like any hand-written document.
"""

from __future__ import annotations

from .acceptance import Verdict
from .model import (
    ComparisonMode,
    ComparisonReport,
    Connective,
    Paragraph,
    Policy,
    PolicyOption,
    option_keyword_value,
)
from .scoring import match_options

__all__ = ["MergeRejectedError", "merge"]


class MergeRejectedError(RuntimeError):
    """Raised when a merge is attempted with a rejected verdict."""


def _strip_label(option: PolicyOption) -> PolicyOption:
    # Labels are reassigned when the merged policy is rendered.
    if option.label is None:
        return option
    return PolicyOption(phrase=option.phrase, label=None, keyword=option.keyword)


def _merge_options(
    paragraph_a: Paragraph,
    paragraph_b: Paragraph,
) -> tuple[tuple[PolicyOption, ...], list[str]]:
    """Union of two option lists plus review annotations."""
    options_a = paragraph_a.options
    options_b = paragraph_b.options
    matches = {m.index_a: m for m in match_options(options_a, options_b)}
    matched_b = {m.index_b for m in matches.values()}

    merged: list[PolicyOption] = []
    annotations: list[str] = []
    for index_a, option_a in enumerate(options_a):
        match = matches.get(index_a)
        if match is None:
            merged.append(_strip_label(option_a))
            annotations.append(f"// unmatched: from A: {option_a.phrase}")
            continue
        option_b = options_b[match.index_b]
        if option_keyword_value(option_b) > option_keyword_value(option_a):
            merged.append(_strip_label(option_b))
        else:
            merged.append(_strip_label(option_a))
    for index_b, option_b in enumerate(options_b):
        if index_b not in matched_b:
            merged.append(_strip_label(option_b))
            annotations.append(f"// unmatched: from B: {option_b.phrase}")
    return tuple(merged), annotations


def _adopt(paragraph: Paragraph, side: str) -> Paragraph:
    """Take over a one-sided subtree, flagging its root for review."""
    return Paragraph(
        path=paragraph.path,
        title=paragraph.title,
        weight=paragraph.weight,
        options=paragraph.options,
        connective=paragraph.connective,
        comments=paragraph.comments + (f"// unmatched: from {side}",),
        children=paragraph.children,
    )


def _merge_children(
    children_a: tuple[Paragraph, ...],
    children_b: tuple[Paragraph, ...],
) -> tuple[Paragraph, ...]:
    by_segment_b = {child.path.segments[-1]: child for child in children_b}
    segments_a = {child.path.segments[-1] for child in children_a}

    merged: list[Paragraph] = []
    for child_a in children_a:
        child_b = by_segment_b.get(child_a.path.segments[-1])
        if child_b is None:
            merged.append(_adopt(child_a, "A"))
        else:
            merged.append(_merge_paragraphs(child_a, child_b))
    for child_b in children_b:
        if child_b.path.segments[-1] not in segments_a:
            merged.append(_adopt(child_b, "B"))
    merged.sort(key=lambda child: child.path.segments[-1])
    return tuple(merged)


def _merge_paragraphs(paragraph_a: Paragraph, paragraph_b: Paragraph) -> Paragraph:
    options, annotations = _merge_options(paragraph_a, paragraph_b)

    title_a = " ".join(paragraph_a.title.split()).lower()
    title_b = " ".join(paragraph_b.title.split()).lower()
    if title_a != title_b:
        annotations.insert(0, f'// merged: title in B was "{paragraph_b.title}"')

    connective = paragraph_a.connective
    if connective is Connective.NONE:
        connective = paragraph_b.connective
    elif (
        paragraph_b.connective is not Connective.NONE
        and paragraph_b.connective is not connective
    ):
        annotations.insert(0, f"// merged: connective in B was {paragraph_b.connective.name}")

    comments = list(paragraph_a.comments)
    comments.extend(c for c in paragraph_b.comments if c not in paragraph_a.comments)
    comments.extend(annotations)

    return Paragraph(
        path=paragraph_a.path,
        title=paragraph_a.title,
        weight=paragraph_a.weight,
        options=options,
        connective=connective,
        comments=tuple(comments),
        children=_merge_children(paragraph_a.children, paragraph_b.children),
    )


def merge(
    policy_a: Policy,
    policy_b: Policy,
    report: ComparisonReport,
    verdict: Verdict,
    mode: ComparisonMode,
) -> Policy:
    """Produce the unified policy for an accepted comparison.

    Raises MergeRejectedError when the verdict was not accepted, and
    ValueError when the mode does not match the report's.
    """
    if mode is not report.mode:
        raise ValueError(
            f"merge mode {mode.value} does not match the report's {report.mode.value}"
        )
    if not verdict.accepted:
        failures = "; ".join(f.message for f in verdict.failures)
        raise MergeRejectedError(
            f"verdict rejected the combination of {policy_a.name!r} "
            f"and {policy_b.name!r}: {failures}"
        )
    if mode is ComparisonMode.ACQUIRE:
        return policy_a
    roots = _merge_children(policy_a.roots, policy_b.roots)
    return Policy(name=f"{policy_a.name}+{policy_b.name}", roots=roots)
