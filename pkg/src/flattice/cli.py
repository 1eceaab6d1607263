"""Command line front end.

Exit codes: 0 when every check passed or the construction succeeded, 1 when
a mathematical property failed (a witness is printed), 2 for invalid input.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import io
from .errors import FlatticeError, InputError, NotFAlgebra, SchemaError
from .falgebra import (extract_weight, find_identity, is_semi_prime, nilpotent_witness,
                       quotient_by_band, verify_falgebra, weight_of)
from .lattice import (check_lattice_hom, check_positive, is_sublattice, sup_witness,
                      sublattice_closure, upsilon)
from .linalg import fmt
from .morphisms import (algebra_hom, check_algebra_hom, check_multext, induced_tensor_hom,
                         verify_universal)
from .propsuite import GenConfig, PROPERTIES, REQUIRED_COVERAGE, run_suite
from .tensor import as_matrix, tensor_falgebra


class Failed(Exception):
    """A mathematical property did not hold; carries the partial result."""

    def __init__(self, result, witness):
        super().__init__("property failed")
        self.result = result
        self.witness = witness


def jsonable(x):
    if isinstance(x, Fraction):
        return io.emit_rational(x)
    if isinstance(x, tuple) and x and all(isinstance(a, Fraction) for a in x):
        return fmt(x)
    if isinstance(x, (list, tuple)):
        return [jsonable(a) for a in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    return x


def load_inputs(paths):
    docs, homs = {}, []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"{path}: {exc.strerror}") from exc
        obj = io.loads(text, path)
        items = obj if isinstance(obj, list) else [obj]
        for k, item in enumerate(items):
            where = f"{path}[{k}]" if isinstance(obj, list) else path
            if io.is_hom_document(item):
                homs.append((item, where))
                continue
            doc = io.parse_document(item, where)
            if doc.name in docs:
                raise SchemaError(f"{where}: duplicate document name {doc.name!r}")
            docs[doc.name] = doc
    parsed = [io.parse_hom(h, docs, where) + (h,) for h, where in homs]
    return docs, parsed


def _algebras(docs, need=1):
    algs = [d for d in docs.values() if d.algebra is not None]
    if len(algs) < need:
        raise SchemaError(f"expected at least {need} algebra document(s), got {len(algs)}")
    return algs


def cmd_check(docs, homs, args):
    result, witness = {}, None
    for d in docs.values():
        if d.algebra is None:
            ok = is_sublattice(d.space)
            entry = {"sublattice": ok}
            if not ok:
                a, b = sup_witness(d.space)
                entry["witness"] = [fmt(a), fmt(b)]
                witness = witness or {d.name: entry["witness"]}
        else:
            rep = verify_falgebra(d.algebra)
            entry = {c.name: c.ok for c in rep.checks}
            if not rep.ok:
                f = rep.failures[0]
                witness = witness or {d.name: {"check": f.name, "detail": f.detail}}
        result[d.name] = entry
    if witness is not None:
        raise Failed(result, witness)
    return result


def cmd_weight(docs, homs, args):
    result = {}
    for d in _algebras(docs):
        try:
            result[d.name] = {"w": io.emit_vector(extract_weight(d.algebra))}
        except NotFAlgebra as exc:
            result[d.name] = {"error": str(exc)}
            raise Failed(result, {d.name: jsonable(exc.witness)}) from exc
    return result


def cmd_closure(docs, homs, args):
    result, text = {}, []
    for d in docs.values():
        L = sublattice_closure(d.space, d.given if d.given else None, strategy=args.strategy)
        result[d.name] = {
            "was_sublattice": L.dim == d.space.dim,
            "dim": L.dim,
            "basis": [io.emit_vector(b) for b in L.basis],
            "certificates": [io.expr_to_json(e) for e in L.certificates],
        }
        text.append(f"{d.name}: dim {d.space.dim} -> {L.dim}")
        for b, e in zip(L.basis, L.certificates):
            text.append(f"  {fmt(b)} = {io.expr_to_str(e)}")
    args.text = text
    return result


def cmd_tensor(docs, homs, args):
    algs = _algebras(docs, 2)
    A, B = algs[0], algs[1]
    P = tensor_falgebra(A.algebra, B.algebra, args.strategy)
    name = f"{A.name}x{B.name}"
    return {
        "name": name,
        "points": [A.points, B.points],
        "dim": P.dim,
        "u": [io.emit_vector(r) for r in as_matrix(P.weight, B.points)],
        "algebra": io.emit_document(P, name),
    }


def cmd_semiprime(docs, homs, args):
    result, witness = {}, None
    for d in _algebras(docs):
        ok = is_semi_prime(d.algebra)
        result[d.name] = {"semi_prime": ok}
        if not ok and witness is None:
            witness = fmt(nilpotent_witness(d.algebra))
    if witness is not None:
        raise Failed(result, witness)
    return result


def cmd_identity(docs, homs, args):
    result, witness = {}, None
    for d in _algebras(docs):
        e = find_identity(d.algebra)
        result[d.name] = {"e": None if e is None else io.emit_vector(e)}
        if e is None and witness is None:
            w = weight_of(d.algebra)
            zero = [s for s in sorted(upsilon(d.algebra.carrier)) if w[s] == 0]
            witness = {d.name: f"weight vanishes at point {zero[0]}" if zero
                       else "1/w is not in the carrier"}
    if witness is not None:
        raise Failed(result, witness)
    return result


def cmd_quotient(docs, homs, args):
    result = {}
    for d in _algebras(docs):
        q = quotient_by_band(d.algebra)
        result[d.name] = {
            "points": list(q.points),
            "algebra": io.emit_document(q.algebra, f"{d.name}/N"),
            "map": [io.emit_vector(v) for v in q.map.images],
        }
    return result


def _hom_name(raw):
    return f"{raw['domain']}->{raw['codomain']}"


def cmd_hom_check(docs, homs, args):
    if not homs:
        raise SchemaError("no homomorphism documents given")
    result, witness = {}, None
    for dom, cod, T, raw in homs:
        entry = {}
        lat = check_lattice_hom(T, args.max_points)
        entry["lattice_hom"] = lat.ok
        entry["positive"] = check_positive(T).ok
        ok = lat.ok
        bad = None if lat.ok else {"lattice_hom": fmt(lat.witness)}
        if dom.algebra is not None and cod.algebra is not None:
            alg = check_algebra_hom(T, dom.algebra, cod.algebra)
            entry["algebra_hom"] = alg.ok
            # an algebra hom need not be a lattice hom; multiplicativity decides the verdict
            ok = alg.ok
            bad = None if alg.ok else {"algebra_hom": list(alg.witness)}
        result[_hom_name(raw)] = entry
        if not ok and witness is None:
            witness = {_hom_name(raw): bad}
    if witness is not None:
        raise Failed(result, witness)
    return result


def cmd_hom_extend(docs, homs, args):
    if len(homs) != 1:
        raise SchemaError("hom-extend takes exactly one homomorphism document")
    dom, cod, T, raw = homs[0]
    if dom.algebra is None or cod.algebra is None:
        raise SchemaError("hom-extend needs algebra documents on both sides")
    sub = raw.get("subspace")
    if sub is None:
        raise SchemaError("hom-extend needs a 'subspace' field naming the starting subspace")
    if sub not in docs:
        raise SchemaError(f"unknown subspace document {sub!r}")
    X = docs[sub]
    rep = check_multext(T, X.space, dom.algebra, cod.algebra, X.given, args.max_points)
    result = {"stages": {c.name: c.ok for c in rep.checks}}
    if not rep.ok:
        f = rep.failures[0]
        raise Failed(result, {f.name: [fmt(v) for v in f.witness]})
    return result


def cmd_universal(docs, homs, args):
    if len(homs) != 2:
        raise SchemaError("universal takes exactly two homomorphism documents")
    (dA, dC, TA, _), (dB, dC2, TB, _) = homs
    if dC.name != dC2.name:
        raise SchemaError("both homomorphisms must share the codomain")
    for d in (dA, dB, dC):
        if d.algebra is None:
            raise SchemaError(f"document {d.name!r} has no multiplication")
    A, B, C = dA.algebra, dB.algebra, dC.algebra
    rep = verify_universal(A, B, C, TA, TB, seed=args.seed, max_points=args.max_points)
    result = {"checks": {c.name: c.ok for c in rep.checks}}
    if not rep.ok:
        f = rep.failures[0]
        raise Failed(result, {"check": f.name, "detail": f.detail})
    S = induced_tensor_hom(algebra_hom(TA, A, C), algebra_hom(TB, B, C),
                           max_points=args.max_points).map
    result["S"] = io.emit_hom(S, f"{dA.name}x{dB.name}", dC.name)
    return result


def cmd_selftest(docs, homs, args):
    cfg = GenConfig(seed=args.seed, instance_count=args.count)
    suite = run_suite(cfg, args.property or None)
    result = {"seed": args.seed, "properties": [r.as_json() for r in suite.results]}
    missing = []
    if args.count is None:
        for r in suite.results:
            missing += [f"{r.pid}:{t}" for t in REQUIRED_COVERAGE.get(r.pid, ())
                        if not r.coverage.get(t)]
    result["missing_coverage"] = missing
    args.text = [str(suite)] + [f"[FAIL] missing coverage {m}" for m in missing]
    if not suite.ok or missing:
        bad = next((r for r in suite.results if not r.ok), None)
        raise Failed(result, bad.as_json().get("counterexample") if bad else missing)
    return result


COMMANDS = {
    "check": (cmd_check, "verify f-algebra axioms (or sublattice status) of each document"),
    "weight": (cmd_weight, "extract the weight of each algebra"),
    "closure": (cmd_closure, "generated sublattice with sup/inf certificates"),
    "tensor": (cmd_tensor, "Fremlin tensor product of the first two algebras"),
    "semiprime": (cmd_semiprime, "decide semi-primality, printing a nilpotent on failure"),
    "identity": (cmd_identity, "find the multiplicative identity"),
    "quotient": (cmd_quotient, "quotient by the band of nilpotents"),
    "hom-check": (cmd_hom_check, "lattice, positivity and multiplicativity of homomorphisms"),
    "hom-extend": (cmd_hom_extend, "run the multiplicative extension cascade"),
    "universal": (cmd_universal, "build and verify the induced map on the tensor product"),
    "selftest": (cmd_selftest, "run the randomized property suite"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="flattice",
                                     description="Finite-dimensional f-algebras over Q.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="inputs", nargs="+", default=[], metavar="FILE")
        p.add_argument("--out", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-points", type=int, default=None)
        if name in ("closure", "tensor"):
            p.add_argument("--strategy", choices=("greedy", "pointwise", "dual"),
                           default="greedy")
        if name == "selftest":
            p.add_argument("--count", type=int, default=None,
                           help="instances per property (default: the acceptance counts)")
            p.add_argument("--property", action="append", choices=list(PROPERTIES))
    return parser


def _text(result, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(result, dict):
        for k, v in result.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(result, list):
        for v in result:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(result)}")
    return lines


def _flat(v):
    return isinstance(v, list) and all(not isinstance(a, (dict, list)) for a in v)


def _inline(v):
    if isinstance(v, list):
        return "(" + ",".join(str(a) for a in v) + ")"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = COMMANDS[args.command][0]
    args.text = None
    start = time.perf_counter()
    report = {"command": args.command, "inputs": list(args.inputs)}
    code = 0
    try:
        if args.max_points is not None and args.max_points < 1:
            raise SchemaError("--max-points must be positive")
        docs, homs = load_inputs(args.inputs)
        report["result"] = jsonable(fn(docs, homs, args))
    except Failed as exc:
        report["result"] = jsonable(exc.result)
        report["witness"] = jsonable(exc.witness)
        code = 1
    except FlatticeError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if exc.witness is not None and not isinstance(exc, InputError):
            report["witness"] = jsonable(exc.witness)
        code = exc.exit_code
    report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.out == "json":
        sys.stdout.write(io.dumps(report))
    else:
        if "error" in report:
            print(f"error: {report['error']['type']}: {report['error']['message']}",
                  file=sys.stderr)
        if getattr(args, "text", None):
            print("\n".join(args.text))
        elif "result" in report:
            print("\n".join(_text(report["result"])))
        if "witness" in report:
            w = report["witness"]
            shown = json.dumps(w, sort_keys=True) if isinstance(w, dict) else _inline(w)
            print(f"witness: {shown}")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
