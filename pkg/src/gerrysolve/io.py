"""Canonical JSON documents for instances, plans, reduction sources and reports.

Canonical form: keys sorted, one record per line, trailing newline, voters by
id, edges as sorted pairs in lexicographic order, cost entries by (voter,
district).  Costs and budgets are written as exact strings such as ``"3/2"``
or ``"unmovable"``; decimal literals in input are read exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .election import (
    UNMOVABLE,
    CostMap,
    MovePlan,
    ProblemInstance,
    Variant,
    Voter,
    VoterGraph,
    WinnerMode,
    as_cost,
    plan_cost,
)
from .errors import InstanceError, PlanError
from .oracle import TwoDCPInstance, X3CInstance

INSTANCE_KEYS = {"variant", "alternatives", "voters", "districts", "graph", "costs", "budget", "target", "winner_mode"}


_ENCODER = json.JSONEncoder(sort_keys=True, ensure_ascii=False, separators=(", ", ": "))


def _compact(value) -> str:
    return _ENCODER.encode(value)


def _layout(value, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict) and value:
        body = ",\n".join(f"{inner}{_compact(key)}: {_layout(value[key], depth + 1)}" for key in sorted(value))
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, list) and value and all(isinstance(x, (dict, list)) for x in value):
        body = ",\n".join(inner + _compact(x) for x in value)
        return "[\n" + body + "\n" + pad + "]"
    return _compact(value)


def dumps(document) -> str:
    """Canonical text: objects one key per line, lists of records one record per line."""
    return _layout(document, 0) + "\n"


def loads(text: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def cost_text(cost) -> str:
    return "unmovable" if cost is UNMOVABLE else str(Fraction(cost))


def read_cost(value, where: str):
    if isinstance(value, float):
        raise InstanceError(f"{where}: binary float {value!r} is not exact")
    try:
        return as_cost(value)
    except (InstanceError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _require(doc: dict, key: str, kind, where: str = "document"):
    if key not in doc:
        raise InstanceError(f"{where}: missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InstanceError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


# -- instances ---------------------------------------------------------------


def instance_document(instance: ProblemInstance) -> dict:
    doc = {
        "variant": instance.variant.value,
        "alternatives": list(instance.alternatives),
        "voters": [
            {"id": v.id, "ranking": list(v.ranking), "district": v.home_district}
            for v in sorted(instance.voters, key=lambda v: v.id)
        ],
        "districts": instance.k,
        "budget": cost_text(instance.budget),
        "target": instance.target,
    }
    if instance.graph is not None:
        doc["graph"] = {"edges": [list(e) for e in sorted(instance.graph.edges)]}
    if not instance.variant.unit_cost:
        costs = {
            "entries": [
                {"voter": v, "district": d, "cost": cost_text(c)}
                for (v, d), c in sorted(instance.costs.entries.items())
            ]
        }
        if instance.costs.default_cost != 1:
            costs["default_cost"] = cost_text(instance.costs.default_cost)
        doc["costs"] = costs
    if instance.winner_mode is not WinnerMode.UNIQUE:
        doc["winner_mode"] = instance.winner_mode.value
    return doc


def serialize_instance(instance: ProblemInstance) -> str:
    return dumps(instance_document(instance))


def instance_from_document(doc) -> ProblemInstance:
    if not isinstance(doc, dict):
        raise InstanceError("document: expected an object")
    unknown = sorted(set(doc) - INSTANCE_KEYS)
    if unknown:
        raise InstanceError(f"document: unknown key {unknown[0]!r}")
    raw_variant = _require(doc, "variant", str)
    try:
        variant = Variant(raw_variant)
    except ValueError:
        raise InstanceError(f"document.variant: unknown variant {raw_variant!r}") from None
    alternatives = _require(doc, "alternatives", list)
    k = _require(doc, "districts", int)
    target = _require(doc, "target", str)
    if "budget" not in doc:
        raise InstanceError("document: missing key 'budget'")
    budget = read_cost(doc["budget"], "document.budget")
    if budget is UNMOVABLE:
        raise InstanceError("document.budget: budget must be finite")

    voters = []
    for i, entry in enumerate(_require(doc, "voters", list)):
        where = f"voters[{i}]"
        if not isinstance(entry, dict):
            raise InstanceError(f"{where}: expected an object")
        vid = _require(entry, "id", str, where)
        ranking = _require(entry, "ranking", list, where)
        district = _require(entry, "district", int, where)
        if sorted(map(str, ranking)) != sorted(map(str, alternatives)) or len(ranking) != len(alternatives):
            raise InstanceError(f"{where} ({vid!r}): ranking is not a permutation of the alternatives")
        voters.append(Voter(vid, tuple(ranking), district))

    graph = None
    if "graph" in doc:
        g = doc["graph"]
        if not isinstance(g, dict):
            raise InstanceError("document.graph: expected an object")
        edges = []
        for i, e in enumerate(_require(g, "edges", list, "graph")):
            if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, str) for x in e):
                raise InstanceError(f"graph.edges[{i}]: expected a pair of voter ids")
            edges.append(tuple(e))
        graph = VoterGraph(frozenset(edges))
    elif variant.has_graph:
        raise InstanceError(f"document: graph missing for variant {variant.value}")

    costs = CostMap()
    if "costs" in doc:
        c = doc["costs"]
        if not isinstance(c, dict):
            raise InstanceError("document.costs: expected an object")
        default = read_cost(c.get("default_cost", "1"), "costs.default_cost")
        entries = {}
        for i, e in enumerate(c.get("entries", [])):
            where = f"costs.entries[{i}]"
            if not isinstance(e, dict):
                raise InstanceError(f"{where}: expected an object")
            vid = _require(e, "voter", str, where)
            d = _require(e, "district", int, where)
            if "cost" not in e:
                raise InstanceError(f"{where}: missing key 'cost'")
            if (vid, d) in entries:
                raise InstanceError(f"{where}: duplicate entry for ({vid!r}, {d})")
            entries[(vid, d)] = read_cost(e["cost"], where)
        costs = CostMap(entries, default)
        if variant.unit_cost and not costs.is_uniform_one():
            raise InstanceError(f"document.costs: non-unit costs are not allowed for variant {variant.value}")

    mode = doc.get("winner_mode", "unique")
    try:
        mode = WinnerMode(mode)
    except ValueError:
        raise InstanceError(f"document.winner_mode: unknown mode {mode!r}") from None

    return ProblemInstance(
        alternatives=tuple(alternatives),
        voters=tuple(voters),
        k=k,
        costs=costs,
        budget=budget,
        target=target,
        variant=variant,
        graph=graph,
        winner_mode=mode,
    )


def parse_instance(text: str) -> ProblemInstance:
    """Validated instance, or ``InstanceError`` naming the first problem found."""
    return instance_from_document(loads(text))


# -- plans -------------------------------------------------------------------


def plan_document(plan: MovePlan, cost) -> dict:
    return {
        "cost": cost_text(cost),
        "moves": [{"district": d, "voter": v} for v, d in plan.canonical().moves],
    }


def serialize_plan(instance: ProblemInstance, plan: MovePlan) -> str:
    return dumps(plan_document(plan, plan_cost(instance, plan)))


def parse_plan(text: str, instance: Optional[ProblemInstance] = None) -> MovePlan:
    """Plan from its document; with ``instance`` the stated cost is rechecked."""
    doc = loads(text)
    if not isinstance(doc, dict):
        raise PlanError("plan: expected an object")
    moves = []
    for i, mv in enumerate(doc.get("moves", [])):
        if not isinstance(mv, dict) or not isinstance(mv.get("voter"), str) or not isinstance(mv.get("district"), int):
            raise PlanError(f"moves[{i}]: expected {{voter, district}}")
        moves.append((mv["voter"], mv["district"]))
    plan = MovePlan(tuple(moves))
    if instance is not None and "cost" in doc:
        stated = read_cost(doc["cost"], "plan.cost")
        actual = plan_cost(instance, plan)
        if stated != actual:
            raise PlanError(f"plan.cost: stated {cost_text(stated)} but the moves cost {cost_text(actual)}")
    return plan


# -- reduction sources -------------------------------------------------------


def source_document(source) -> dict:
    if isinstance(source, X3CInstance):
        return {"universe_size": source.universe_size, "sets": [sorted(s) for s in source.sets]}
    if isinstance(source, TwoDCPInstance):
        return {
            "vertices": list(source.vertices),
            "edges": [list(e) for e in sorted(source.edges)],
            "z1": sorted(source.z1),
            "z2": sorted(source.z2),
        }
    raise TypeError(f"not a reduction source: {type(source).__name__}")


def serialize_source(source) -> str:
    return dumps(source_document(source))


def parse_source(text: str):
    """An ``X3CInstance`` or ``TwoDCPInstance`` depending on the keys present."""
    doc = loads(text)
    if not isinstance(doc, dict):
        raise InstanceError("source: expected an object")
    if "universe_size" in doc:
        size = _require(doc, "universe_size", int, "source")
        sets = _require(doc, "sets", list, "source")
        return X3CInstance(size, tuple(tuple(s) for s in sets))
    if "vertices" in doc:
        vertices = _require(doc, "vertices", list, "source")
        edges = frozenset(tuple(e) for e in _require(doc, "edges", list, "source"))
        return TwoDCPInstance(tuple(vertices), edges, frozenset(_require(doc, "z1", list, "source")), frozenset(_require(doc, "z2", list, "source")))
    raise InstanceError("source: expected an X3C ('universe_size', 'sets') or 2DCP ('vertices', 'edges', 'z1', 'z2') document")
