"""Compatibility scoring for policy paragraphs.

Scores are percentages in [0, 100]. Two option lists are compared by
pairing up options with equal normalized phrases, weighting each pair by
how closely the requirement keywords agree, and then combining the pair
scores according to the paragraph connective:

* ``OR``  - the best pair decides; one shared way to comply suffices.
* ``AND`` - every option matters, so pair scores are averaged over the
  full option count. Under MERGE semantics the larger list is the
  denominator (both parties keep all their requirements); under ACQUIRE
  only the acquiring side's list counts, because the acquired policy is
  superseded.

A paragraph without a Connection line is treated as AND, the stricter
reading.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .model import (
    ComparisonMode,
    Connective,
    Paragraph,
    PolicyOption,
    ProvisionalMatch,
    option_keyword_value,
)

__all__ = [
    "match_options",
    "score_option_lists",
    "score_paragraph_options",
    "combine_with_children",
    "child_aggregate",
]


def match_options(
    options_a: Sequence[PolicyOption],
    options_b: Sequence[PolicyOption],
) -> list[ProvisionalMatch]:
    """Pair options with equal normalized phrases, one-to-one.

    Options are taken in list order on the A side; each draws the first
    not-yet-paired B option with the same normalized phrase. Within a
    phrase the pairing is therefore positional, which keeps the result
    symmetric even when a phrase repeats.
    """
    matches: list[ProvisionalMatch] = []
    consumed = [False] * len(options_b)
    for index_a, option_a in enumerate(options_a):
        for index_b, option_b in enumerate(options_b):
            if consumed[index_b]:
                continue
            if option_a.normalized_phrase != option_b.normalized_phrase:
                continue
            consumed[index_b] = True
            factor = 1.0 - abs(
                option_keyword_value(option_a) - option_keyword_value(option_b)
            )
            matches.append(
                ProvisionalMatch(
                    index_a=index_a,
                    index_b=index_b,
                    equality_score=100.0,
                    keyword_factor=factor,
                )
            )
            break
    return matches


def score_option_lists(
    options_a: Sequence[PolicyOption],
    options_b: Sequence[PolicyOption],
    connective: Connective,
    mode: ComparisonMode,
) -> float:
    """Score two option lists under the given connective and mode."""
    if not options_a and not options_b:
        return 100.0
    if not options_a or not options_b:
        # One side is silent. A merger partner with no matching stance is
        # fully incompatible; an acquired policy is simply superseded.
        return 100.0 if mode is ComparisonMode.ACQUIRE else 0.0

    terms = [m.equality_score * m.keyword_factor for m in match_options(options_a, options_b)]

    if connective is Connective.OR:
        return max(terms, default=0.0)

    if mode is ComparisonMode.ACQUIRE:
        denominator = len(options_a)
    else:
        denominator = max(len(options_a), len(options_b))
    return sum(terms) / denominator


def score_paragraph_options(
    paragraph_a: Paragraph,
    paragraph_b: Paragraph,
    mode: ComparisonMode,
) -> float:
    """Score the option lists of two corresponding paragraphs.

    Paragraph A's connective governs; B's is consulted only when A does
    not declare one.
    """
    connective = paragraph_a.connective
    if connective is Connective.NONE:
        connective = paragraph_b.connective
    return score_option_lists(paragraph_a.options, paragraph_b.options, connective, mode)


def combine_with_children(
    own_score: float,
    child_score: float,
    n_children: int,
) -> float:
    """Blend a paragraph's own score with its children's aggregate.

    The aggregate carries one unit of weight per child, the paragraph's
    own options carry one unit total.
    """
    if n_children < 1:
        raise ValueError("combining requires at least one child")
    return (own_score + child_score * n_children) / (1 + n_children)


def child_aggregate(scored_children: Iterable[tuple[float, int]]) -> float:
    """Weighted mean of (score, weight) pairs for a paragraph's children."""
    total = 0.0
    weight_sum = 0
    for score, weight in scored_children:
        total += score * weight
        weight_sum += weight
    if weight_sum == 0:
        raise ValueError("child aggregate requires at least one child")
    return total / weight_sum
