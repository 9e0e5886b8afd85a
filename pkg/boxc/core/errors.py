"""Exception hierarchy for boxc."""

from dataclasses import dataclass

from boxc.core.diagnostic import SourceSpan


class BoxcError(Exception):
    """Base class for every error raised by boxc."""


class TaxonomyError(BoxcError):
    """Raised for failed concept lookups."""


class UnknownConcept(TaxonomyError):
    """A label segment names no concept."""

    def __init__(self, name: str, label: str | None = None) -> None:
        self.name = name
        self.label = label if label is not None else name
        super().__init__(f"unknown concept '{name}' in label '{self.label}'")


class NotADescendant(TaxonomyError):
    """A label segment is not a strict descendant of the segment before it."""

    def __init__(self, child: str, ancestor: str, label: str) -> None:
        self.child = child
        self.ancestor = ancestor
        self.label = label
        super().__init__(
            f"'{child}' is not a subconcept of '{ancestor}' in label '{label}'"
        )


class ForeignConcept(TaxonomyError):
    """A concept reference does not belong to the queried taxonomy."""

    def __init__(self, concept_id: str) -> None:
        self.concept_id = concept_id
        super().__init__(f"concept '{concept_id}' is not part of this taxonomy")


class DocumentError(BoxcError):
    """Raised for structurally invalid documents."""


@dataclass(frozen=True)
class IntegrityIssue:
    """One referential-integrity problem found by build()."""

    code: str
    element_id: str
    message: str
    span: SourceSpan | None = None


class IntegrityError(DocumentError):
    """Carries every integrity issue found while building a document."""

    def __init__(self, issues: list[IntegrityIssue]) -> None:
        self.issues = sorted(issues, key=lambda i: (i.element_id, i.code, i.message))
        summary = "; ".join(i.message for i in self.issues)
        super().__init__(f"{len(self.issues)} integrity error(s): {summary}")


class MalformedJson(DocumentError):
    """The JSON text is not a valid serialized document."""


class UnknownFrame(DocumentError):
    """A frame id does not exist in the document."""

    def __init__(self, frame_id: str) -> None:
        self.frame_id = frame_id
        super().__init__(f"unknown frame '{frame_id}'")


class PatternError(BoxcError):
    """Raised for pattern catalogue and instantiation errors."""


class BadPrefix(PatternError):
    """An instantiation prefix is not a legal identifier stem."""

    def __init__(self, prefix: str) -> None:
        self.prefix = prefix
        super().__init__(f"'{prefix}' is not a valid identifier prefix")


class UnknownPattern(PatternError):
    """No built-in pattern has the requested name."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown pattern '{name}'")


class SimulationError(BoxcError):
    """Raised when a simulation cannot run."""


class BadConfig(SimulationError):
    """A simulation config violates its invariants."""


class EmptyTeam(SimulationError):
    """A federated run was configured without team members."""


class AllPartitionsEmpty(SimulationError):
    """Every partition of a federated run is empty, so the mean is undefined."""


class UnknownSimulation(SimulationError):
    """No simulation is registered under the requested name."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown simulation '{name}'")
