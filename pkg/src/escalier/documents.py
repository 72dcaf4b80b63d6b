"""JSON documents for varieties, staircases and check reports.

Rationals are always written as exact ``"p/q"`` or integer strings.
"""
from __future__ import annotations

import json
import re
from typing import Any, Dict, Optional

from .algebra import Q, TermOrder, order_by_name
from .groebner import GroebnerBasis
from .planes import AffinePlane, Variety, from_general_equations
from .staircase import StandardSet


class DocumentError(ValueError):
    """Malformed document (wrong shape, bad literal)."""


def _rational(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError(f"rationals must be integers or 'p/q' strings, got {x!r}")
    try:
        return Q(x)
    except (TypeError, ValueError) as e:
        raise DocumentError(str(e)) from None


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{what} must be an integer, got {x!r}")
    return x


def plane_from_doc(n: int, comp: Dict[str, Any]) -> AffinePlane:
    """Build a plane from ``{"equations": rows}`` or ``{"canonical": {...}}``.

    Inconsistent equations raise planes.InconsistentEquations.
    """
    if not isinstance(comp, dict) or len(comp) != 1:
        raise DocumentError("a component must have exactly one of 'equations' or 'canonical'")
    if "equations" in comp:
        rows = comp["equations"]
        if not isinstance(rows, list) or any(not isinstance(r, list) or len(r) != n + 1 for r in rows):
            raise DocumentError(f"every equation row needs {n + 1} entries")
        rows = [[_rational(x) for x in r] for r in rows]
        return from_general_equations([r[:n] for r in rows], [r[n] for r in rows], n)
    if "canonical" in comp:
        can = comp["canonical"]
        try:
            J = [_int(j, "free variable") for j in can.get("J", [])]
            b = {(_int(i, "b row"), _int(j, "b column")): _rational(v) for i, j, v in can.get("b", [])}
            c = {_int(i, "c index"): _rational(v) for i, v in can.get("c", [])}
        except (TypeError, AttributeError) as e:
            raise DocumentError(f"bad canonical component: {e}") from None
        try:
            P = AffinePlane(n, J, b, c)
        except ValueError as e:
            raise DocumentError(str(e)) from None
        if P.c and from_general_equations(*P.matrix(), n) != P:
            raise DocumentError(f"J={J} is not the minimal free variable set of this plane")
        return P
    raise DocumentError("a component must have exactly one of 'equations' or 'canonical'")


def variety_from_doc(doc: Dict[str, Any]):
    """Returns ``(variety, order)``."""
    if not isinstance(doc, dict) or "n" not in doc or "components" not in doc:
        raise DocumentError("a variety document needs 'n' and 'components'")
    n = _int(doc["n"], "n")
    if n < 1:
        raise DocumentError("n must be positive")
    try:
        order = order_by_name(doc.get("order", "lex"), n)
    except ValueError as e:
        raise DocumentError(str(e)) from None
    comps = doc["components"]
    if not isinstance(comps, list) or not comps:
        raise DocumentError("'components' must be a nonempty list")
    return Variety(n, [plane_from_doc(n, c) for c in comps]), order


def variety_to_doc(V: Variety, order: Optional[TermOrder] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"n": V.n}
    if order is not None:
        doc["order"] = order.name
    doc["components"] = [{"canonical": P.to_canonical_dict()} for P in V.components]
    return doc


def staircase_from_doc(doc: Dict[str, Any]) -> StandardSet:
    if not isinstance(doc, dict) or "n" not in doc or "corners" not in doc:
        raise DocumentError("a staircase document needs 'n' and 'corners'")
    n = _int(doc["n"], "n")
    corners = doc["corners"]
    if not isinstance(corners, list):
        raise DocumentError("'corners' must be a list")
    for c in corners:
        if not isinstance(c, list) or len(c) != n or any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in c):
            raise DocumentError(f"corner {c!r} is not a vector of {n} naturals")
    D = StandardSet(n, corners)
    if len(D.corners) != len(set(map(tuple, corners))):
        raise DocumentError("corners must form an antichain (no corner divides another)")
    return D


def staircase_to_doc(D: StandardSet, basis: Optional[GroebnerBasis] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"n": D.n, "corners": [list(g) for g in sorted(D.corners)]}
    if basis is not None:
        doc["order"] = basis.order.name
        doc["basis"] = [g.to_string(order=basis.order) for g in basis]
    return doc


def is_variety_doc(doc) -> bool:
    return isinstance(doc, dict) and "components" in doc


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None


_FLAT_LIST = re.compile(r"\[[^\[\]{}]*\]")


def dumps(doc) -> str:
    """Indented JSON with innermost lists (vectors, rows) kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_LIST.sub(lambda m: json.dumps(json.loads(m.group(0))), text)
