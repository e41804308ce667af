"""JSON forms of every value the library exchanges.

Rationals print as integers when whole and as "p/q" strings otherwise;
parsing either form back yields the same canonical value, so a parse of a
print is bit-for-bit stable on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .atoms import MaximalSet, lex_new
from .cones import ConeV, Gamble, gamble, unit_indicator
from .desirability import PhiElement, generators_without_units, natural_extension, phi_top
from .labeled import LabeledPiece, TildePiece, labeled
from .multivariate import VariableSystem, variable_system
from .spaces import Partition, PossibilitySpace, partition


class ParseError(ValueError):
    """Invalid serialized value; `where` points at the offending element."""

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where


def fraction_to_json(v: Fraction) -> Any:
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def fraction_from_json(obj: Any, where: str = "$") -> Fraction:
    if isinstance(obj, bool):
        raise ParseError("expected a rational, got a boolean", where)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational {obj!r}: {e}", where) from None
    raise ParseError(f"expected a rational, got {type(obj).__name__}", where)


def gamble_to_json(g: Gamble) -> list:
    return [fraction_to_json(v) for v in g.values]


def gamble_from_json(space: PossibilitySpace, obj: Any, where: str = "$") -> Gamble:
    if not isinstance(obj, list):
        raise ParseError("a gamble is an array of rationals", where)
    vals = [fraction_from_json(v, f"{where}[{i}]") for i, v in enumerate(obj)]
    if len(vals) != space.size:
        raise ParseError(
            f"gamble has {len(vals)} entries for a {space.size}-world space", where
        )
    return gamble(space, vals)


def partition_to_json(p: Partition) -> list:
    return [list(b) for b in p.blocks]


def partition_from_json(
    space: PossibilitySpace, obj: Any, where: str = "$"
) -> Partition:
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise ParseError("a partition is an array of arrays of world indices", where)
    for i, b in enumerate(obj):
        for j, w in enumerate(b):
            if not isinstance(w, int) or isinstance(w, bool):
                raise ParseError("world indices are integers", f"{where}[{i}][{j}]")
    try:
        return partition(space, obj)
    except ValueError as e:
        raise ParseError(str(e), where) from None


def cone_to_json(c: ConeV) -> dict:
    return {"generators": [gamble_to_json(g) for g in c.generators]}


def cone_from_json(space: PossibilitySpace, obj: Any, where: str = "$") -> ConeV:
    if not isinstance(obj, dict) or "generators" not in obj:
        raise ParseError('a cone is {"generators": [...]}', where)
    gens = [
        gamble_from_json(space, g, f"{where}.generators[{i}]")
        for i, g in enumerate(obj["generators"])
    ]
    try:
        return ConeV(space, tuple(gens))
    except ValueError as e:
        raise ParseError(str(e), where) from None


def phi_to_json(p: PhiElement) -> dict:
    if p.is_top:
        return {"kind": "top"}
    return {
        "kind": "coherent",
        "generators": [gamble_to_json(g) for g in generators_without_units(p)],
    }


def phi_from_json(space: PossibilitySpace, obj: Any, where: str = "$") -> PhiElement:
    if not isinstance(obj, dict) or obj.get("kind") not in ("top", "coherent"):
        raise ParseError('an element is {"kind": "top"|"coherent", ...}', where)
    if obj["kind"] == "top":
        return phi_top(space)
    gens = [
        gamble_from_json(space, g, f"{where}.generators[{i}]")
        for i, g in enumerate(obj.get("generators", []))
    ]
    built = natural_extension(space, gens)
    if built.is_top:
        raise ParseError("generators are contradictory, not a coherent element", where)
    return built


def labeled_to_json(a: LabeledPiece) -> dict:
    return {"label": partition_to_json(a.label), "content": phi_to_json(a.content)}


def labeled_from_json(
    space: PossibilitySpace, obj: Any, where: str = "$"
) -> LabeledPiece:
    if not isinstance(obj, dict) or "label" not in obj or "content" not in obj:
        raise ParseError('a piece is {"label": blocks, "content": element}', where)
    lab = partition_from_json(space, obj["label"], f"{where}.label")
    content = phi_from_json(space, obj["content"], f"{where}.content")
    try:
        return labeled(content, lab)
    except ValueError as e:
        raise ParseError(str(e), where) from None


def tilde_to_json(t: TildePiece) -> dict:
    return {
        "label": partition_to_json(t.label),
        "trace": None if t.trace is None else cone_to_json(t.trace),
    }


def tilde_from_json(space: PossibilitySpace, obj: Any, where: str = "$") -> TildePiece:
    if not isinstance(obj, dict) or "label" not in obj or "trace" not in obj:
        raise ParseError('a trace piece is {"label": blocks, "trace": cone|null}', where)
    lab = partition_from_json(space, obj["label"], f"{where}.label")
    if obj["trace"] is None:
        return TildePiece(space, None, lab)
    cone = cone_from_json(space, obj["trace"], f"{where}.trace")
    try:
        return TildePiece(space, cone, lab)
    except ValueError as e:
        raise ParseError(str(e), where) from None


def maximal_to_json(m: MaximalSet) -> dict:
    return {"chain": [[fraction_to_json(v) for v in row] for row in m.chain]}


def maximal_from_json(
    space: PossibilitySpace, obj: Any, where: str = "$"
) -> MaximalSet:
    if not isinstance(obj, dict) or "chain" not in obj:
        raise ParseError('a maximal set is {"chain": [[...], ...]}', where)
    rows = []
    for i, row in enumerate(obj["chain"]):
        if not isinstance(row, list):
            raise ParseError("chain rows are arrays", f"{where}.chain[{i}]")
        rows.append(
            [fraction_from_json(v, f"{where}.chain[{i}][{j}]") for j, v in enumerate(row)]
        )
    try:
        return lex_new(space, rows)
    except ValueError as e:
        raise ParseError(str(e), f"{where}.chain") from None


def system_to_json(sys: VariableSystem) -> dict:
    return {"domains": list(sys.domains)}


def system_from_json(obj: Any, where: str = "$") -> VariableSystem:
    if not isinstance(obj, dict) or "domains" not in obj:
        raise ParseError('a variable system is {"domains": [...]}', where)
    doms = obj["domains"]
    if not isinstance(doms, list) or not all(
        isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in doms
    ):
        raise ParseError("domains are positive integers", f"{where}.domains")
    return variable_system(doms)
