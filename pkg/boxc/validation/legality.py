"""Which (source kind, edge kind, target kind) combinations the notation allows."""

from dataclasses import dataclass

from boxc.core.document import EdgeKind, Role
from boxc.core.taxonomy import NodeKind

Triple = tuple[NodeKind, EdgeKind, NodeKind]


@dataclass(frozen=True)
class LegalityTable:
    allowed: frozenset[Triple]

    def __contains__(self, triple: object) -> bool:
        return triple in self.allowed


DEFAULT_TABLE = LegalityTable(
    allowed=frozenset(
        {
            (NodeKind.INSTANCE, EdgeKind.FLOW, NodeKind.PROCESS),
            (NodeKind.MODEL, EdgeKind.FLOW, NodeKind.PROCESS),
            (NodeKind.PROCESS, EdgeKind.FLOW, NodeKind.INSTANCE),
            (NodeKind.PROCESS, EdgeKind.FLOW, NodeKind.MODEL),
            (NodeKind.ACTOR, EdgeKind.ROLE, NodeKind.PROCESS),
            (NodeKind.PROCESS, EdgeKind.INFLUENCE, NodeKind.MODEL),
            (NodeKind.ACTOR, EdgeKind.MESSAGE, NodeKind.ACTOR),
        }
    )
)


def edge_legal(
    table: LegalityTable,
    from_kind: NodeKind,
    edge_kind: EdgeKind,
    to_kind: NodeKind,
    role: Role | None = None,
) -> bool:
    """Membership test; role edges additionally need a role."""
    if edge_kind is EdgeKind.ROLE and role is None:
        return False
    return (from_kind, edge_kind, to_kind) in table
