"""The labeled views of the algebra.

A labeled piece is an element of Phi together with a question that supports
it; the trace view carries only the measurable part of the content, the set
the content is the closure of.  The two views are isomorphic, and both
satisfy the labeled axioms; the tests exercise all of that.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import desirability
from .algebra import QuestionSet, combine, extract, is_support
from .cones import ConeV, intersect_subspace, is_measurable, measurable_subspace
from .desirability import PhiElement, phi_top
from .spaces import Partition, PossibilitySpace, SpaceMismatch, join


@dataclass(frozen=True)
class LabeledPiece:
    content: PhiElement
    label: Partition

    @property
    def space(self) -> PossibilitySpace:
        return self.content.space


def labeled(content: PhiElement, label: Partition) -> LabeledPiece:
    """Build a labeled piece, checking that the label supports the content."""
    if content.space != label.space:
        raise SpaceMismatch("content and label live on different spaces")
    if not is_support(label, content):
        raise ValueError("the label does not support the content")
    return LabeledPiece(content, label)


def lab_combine(a: LabeledPiece, b: LabeledPiece) -> LabeledPiece:
    """Combine contents, join labels; the joined label supports the result."""
    if a.space != b.space:
        raise SpaceMismatch("pieces live on different spaces")
    return LabeledPiece(combine(a.content, b.content), join(a.label, b.label))


def transport(
    y: Partition, a: LabeledPiece, questions: QuestionSet | None = None
) -> LabeledPiece:
    """Move a piece to question y by extracting; the label becomes y."""
    if y.space != a.space:
        raise SpaceMismatch("partition and piece live on different spaces")
    if questions is not None and y not in questions.partitions:
        raise ValueError("transport target outside the declared question set")
    return LabeledPiece(extract(y, a.content), y)


def piece_equal(a: LabeledPiece, b: LabeledPiece) -> bool:
    return a.label == b.label and desirability.phi_equal(a.content, b.content)


@dataclass(frozen=True)
class TildePiece:
    space: PossibilitySpace
    trace: ConeV | None  # None marks the trace of Top: all measurable gambles
    label: Partition

    def __post_init__(self):
        if self.trace is not None:
            for g in self.trace.generators:
                if not is_measurable(g, self.label):
                    raise ValueError("trace generator not measurable for the label")


def to_tilde(a: LabeledPiece) -> TildePiece:
    """The trace view: cut the content down to its label-measurable part."""
    if a.content.is_top:
        return TildePiece(a.space, None, a.label)
    cut = intersect_subspace(a.content.cone, measurable_subspace(a.label))
    return TildePiece(a.space, cut, a.label)


def from_tilde(t: TildePiece) -> LabeledPiece:
    """Recover the labeled piece: close the trace again."""
    if t.trace is None:
        return LabeledPiece(phi_top(t.space), t.label)
    content = desirability.closure(t.space, t.trace.generators)
    return LabeledPiece(content, t.label)


def tilde_equal(a: TildePiece, b: TildePiece) -> bool:
    """Equality of traces as sets of gambles, labels included."""
    if a.label != b.label:
        return False
    if a.trace is None or b.trace is None:
        return a.trace is None and b.trace is None
    ca = desirability.closure(a.space, a.trace.generators)
    cb = desirability.closure(b.space, b.trace.generators)
    # traces are the measurable parts of their closures, so closure equality
    # plus the shared label decides set equality
    return desirability.phi_equal(ca, cb)


def tilde_combine(a: TildePiece, b: TildePiece) -> TildePiece:
    """Combine trace pieces: close both, combine, cut to the joined label."""
    if a.space != b.space:
        raise SpaceMismatch("pieces live on different spaces")
    lab = join(a.label, b.label)
    if a.trace is None or b.trace is None:
        return TildePiece(a.space, None, lab)
    both = combine(
        desirability.closure(a.space, a.trace.generators),
        desirability.closure(b.space, b.trace.generators),
    )
    if both.is_top:
        return TildePiece(a.space, None, lab)
    cut = intersect_subspace(both.cone, measurable_subspace(lab))
    return TildePiece(a.space, cut, lab)


def tilde_transport(
    y: Partition, t: TildePiece, questions: QuestionSet | None = None
) -> TildePiece:
    """Move a trace piece to question y: close, cut to y-measurables."""
    if y.space != t.space:
        raise SpaceMismatch("partition and piece live on different spaces")
    if questions is not None and y not in questions.partitions:
        raise ValueError("transport target outside the declared question set")
    if t.trace is None:
        return TildePiece(t.space, None, y)
    closed = desirability.closure(t.space, t.trace.generators)
    cut = intersect_subspace(closed.cone, measurable_subspace(y))
    return TildePiece(t.space, cut, y)
