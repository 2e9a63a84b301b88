"""Max-flow / min-cut tutoring engine."""

import json as _json

from ._core import (
    EdgelistError,
    FlowError,
    FlowNetwork,
    cut_capacity,
    find_min_cut,
    flow_value,
    layered_layout,
    parse_edgelist,
    residual_graph,
    serialize_edgelist,
    solve,
    spring_layout,
    validate_cut,
    validate_network,
)
from ._core import _Gateway

__all__ = [
    "EdgelistError",
    "FlowError",
    "FlowNetwork",
    "Gateway",
    "cut_capacity",
    "find_min_cut",
    "flow_value",
    "layered_layout",
    "parse_edgelist",
    "residual_graph",
    "serialize_edgelist",
    "solve",
    "spring_layout",
    "validate_cut",
    "validate_network",
]


class Gateway:
    """Session gateway speaking the JSON request/response protocol."""

    def __init__(self, idle_timeout_seconds=24 * 3600):
        self._impl = _Gateway(idle_timeout_seconds)

    def route(self, request):
        return _json.loads(self._impl.route_json(_json.dumps(request)))

    def create_session(self, seed=0):
        return self.route({"type": "create_session", "seed": seed})

    def act(self, session_id, action, revision=None):
        request = {"type": "action", "session_id": session_id, "action": action}
        if revision is not None:
            request["revision"] = revision
        return self.route(request)
