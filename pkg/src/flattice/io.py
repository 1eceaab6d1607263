"""JSON documents for algebras, subspaces and homomorphisms.

Rationals travel as strings (``"-3"``, ``"1/2"``) so no binary float ever
enters the pipeline.  Documents are emitted canonically: sorted keys,
lowest-terms rationals, echelon basis, basis omitted for the full space.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DimensionError, ParseError, SchemaError
from .falgebra import FAlgebra, build_from_weight, table_algebra, tabulate
from .lattice import (Inf, Leaf, Lin, LinearMap, Sup, Subspace, full_space, is_sublattice,
                      make_subspace, sublattice)
from .linalg import lincomb, rank, solve, transpose

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str):
        raise SchemaError(f"{where}: rationals must be strings, got {type(text).__name__}")
    if not _RATIONAL.fullmatch(text):
        raise SchemaError(f"{where}: {text!r} is not a rational of the form -?digits(/digits)?")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise SchemaError(f"{where}: zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def emit_rational(q) -> str:
    return str(Fraction(q))


def parse_vector(items, length: int, where: str) -> tuple:
    if not isinstance(items, list):
        raise SchemaError(f"{where}: expected a list of rational strings")
    if len(items) != length:
        raise DimensionError(f"{where}: expected {length} entries, got {len(items)}")
    return tuple(parse_rational(x, f"{where}[{k}]") for k, x in enumerate(items))


def emit_vector(v) -> list:
    return [emit_rational(a) for a in v]


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


@dataclass
class Document:
    """A parsed algebra or subspace document.

    ``given`` is the basis as written (or the standard basis), ``space`` its
    canonical span; ``algebra`` is set when a multiplication was supplied.
    """

    name: str
    points: int
    given: tuple
    space: Subspace
    algebra: Optional[FAlgebra] = None

    def coords_of_canonical(self) -> list:
        """Row i expresses canonical basis vector i in the given basis."""
        cols = transpose(self.given, self.points) if self.given else []
        return [solve(cols, b, len(self.given)) for b in self.space.basis]


def _require(obj, key, where, kind=None):
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{where}.{key}: wrong type {type(val).__name__}")
    return val


def parse_document(obj, where: str = "document") -> Document:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    name = _require(obj, "name", where, str)
    points = _require(obj, "points", where, int)
    if isinstance(points, bool) or points < 1:
        raise SchemaError(f"{where}.points: must be a positive integer")
    if obj.get("basis") is None:
        given = tuple(tuple(Fraction(int(i == j)) for j in range(points)) for i in range(points))
    else:
        raw = obj["basis"]
        if not isinstance(raw, list):
            raise SchemaError(f"{where}.basis: expected a list of vectors")
        given = tuple(parse_vector(v, points, f"{where}.basis[{i}]") for i, v in enumerate(raw))
    space = make_subspace(given, points)
    doc = Document(name, points, given, space)
    mul = obj.get("multiplication")
    if mul is None:
        return doc
    if rank(given, points) != len(given):
        raise DimensionError(f"{where}.basis: vectors are linearly dependent")
    if not is_sublattice(space):
        raise SchemaError(f"{where}.basis: span is not a vector sublattice")
    if not isinstance(mul, dict):
        raise SchemaError(f"{where}.multiplication: expected an object")
    kind = _require(mul, "kind", f"{where}.multiplication", str)
    L = sublattice(space)
    if kind == "weight":
        w = parse_vector(_require(mul, "w", f"{where}.multiplication"), points,
                         f"{where}.multiplication.w")
        doc.algebra = FAlgebra(L, weight=w)
    elif kind == "table":
        prods = _require(mul, "products", f"{where}.multiplication", list)
        d = len(given)
        if len(prods) != d or any(not isinstance(r, list) or len(r) != d for r in prods):
            raise DimensionError(f"{where}.multiplication.products: expected a {d}x{d} matrix")
        P = [[parse_vector(v, points, f"{where}.multiplication.products[{i}][{j}]")
              for j, v in enumerate(row)] for i, row in enumerate(prods)]
        K = doc.coords_of_canonical()
        table = [[lincomb([K[i][a] * K[j][b] for a in range(d) for b in range(d)],
                          [P[a][b] for a in range(d) for b in range(d)], points)
                  for j in range(d)] for i in range(d)]
        doc.algebra = table_algebra(L, table)
    else:
        raise SchemaError(f"{where}.multiplication.kind: unknown kind {kind!r}")
    return doc


def emit_document(A, name: str) -> dict:
    """Canonical document for an algebra, sublattice or subspace."""
    if isinstance(A, FAlgebra):
        space = A.carrier.space
    else:
        space = A.space if hasattr(A, "space") else A
    out = {"name": name, "points": space.n}
    if space != full_space(space.n):
        out["basis"] = [emit_vector(b) for b in space.basis]
    if isinstance(A, FAlgebra):
        if A.weight is not None:
            out["multiplication"] = {"kind": "weight", "w": emit_vector(A.weight)}
        else:
            out["multiplication"] = {"kind": "table",
                                     "products": [[emit_vector(v) for v in row]
                                                  for row in tabulate(A)]}
    return out


def parse_hom(obj, docs: dict, where: str = "hom") -> tuple:
    """Returns (domain document, codomain document, LinearMap)."""
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    dom_name = _require(obj, "domain", where, str)
    cod_name = _require(obj, "codomain", where, str)
    for ref in (dom_name, cod_name):
        if ref not in docs:
            raise SchemaError(f"{where}: unknown document {ref!r}")
    dom, cod = docs[dom_name], docs[cod_name]
    rows = _require(obj, "matrix", where, list)
    if len(rows) != len(dom.given):
        raise DimensionError(f"{where}.matrix: {len(rows)} rows for a domain basis of "
                             f"{len(dom.given)} vectors")
    imgs = [parse_vector(r, cod.points, f"{where}.matrix[{i}]") for i, r in enumerate(rows)]
    if rank(dom.given, dom.points) != len(dom.given):
        raise DimensionError(f"{where}: domain basis is linearly dependent")
    K = dom.coords_of_canonical()
    images = tuple(lincomb(K[i], imgs, cod.points) for i in range(dom.space.dim))
    return dom, cod, LinearMap(dom.space, cod.points, images)


def emit_hom(T: LinearMap, domain: str, codomain: str) -> dict:
    return {"domain": domain, "codomain": codomain,
            "matrix": [emit_vector(v) for v in T.images]}


def is_hom_document(obj) -> bool:
    return isinstance(obj, dict) and "matrix" in obj and "domain" in obj


def expr_to_json(expr):
    if isinstance(expr, Leaf):
        return {"gen": expr.index}
    if isinstance(expr, Lin):
        return {"lin": [[emit_rational(c), expr_to_json(e)] for c, e in expr.terms]}
    key = "sup" if isinstance(expr, Sup) else "inf"
    return {key: [expr_to_json(e) for e in expr.args]}


def expr_from_json(obj):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemaError("expression nodes are single-key objects")
    (key, val), = obj.items()
    if key == "gen":
        if not isinstance(val, int) or val < 0:
            raise SchemaError("gen index must be a nonnegative integer")
        return Leaf(val)
    if key == "lin":
        return Lin(tuple((parse_rational(c, "lin coefficient"), expr_from_json(e))
                         for c, e in val))
    if key in ("sup", "inf"):
        if not val:
            raise SchemaError(f"{key} needs at least one argument")
        args = tuple(expr_from_json(e) for e in val)
        return Sup(args) if key == "sup" else Inf(args)
    raise SchemaError(f"unknown expression node {key!r}")


def expr_to_str(expr) -> str:
    """Infix rendering, generators written g0, g1, ..."""
    if isinstance(expr, Leaf):
        return f"g{expr.index}"
    if isinstance(expr, Lin):
        if not expr.terms:
            return "0"
        out = ""
        for k, (c, e) in enumerate(expr.terms):
            inner = expr_to_str(e)
            if isinstance(e, Lin) and len(e.terms) > 1:
                inner = f"({inner})"
            mag = "" if abs(c) == 1 else f"{emit_rational(abs(c))}*"
            sign = ("-" if c < 0 else "") if k == 0 else (" - " if c < 0 else " + ")
            out += sign + mag + inner
        return out
    key = "sup" if isinstance(expr, Sup) else "inf"
    return f"{key}(" + ", ".join(expr_to_str(e) for e in expr.args) + ")"


def algebra_from_weight_doc(name: str, points: int, w, basis=None) -> FAlgebra:
    """Convenience for tests and scripts: build and verify a weight document."""
    doc = {"name": name, "points": points,
           "multiplication": {"kind": "weight", "w": [emit_rational(a) for a in w]}}
    if basis is not None:
        doc["basis"] = [[emit_rational(a) for a in b] for b in basis]
    A = parse_document(doc).algebra
    return build_from_weight(A.carrier, A.weight)
