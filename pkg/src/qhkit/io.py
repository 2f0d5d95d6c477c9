"""JSON input files for algebras and quivers.

Two document kinds share one strict profile:

``qhkit-algebra/1``
    ``ring`` ("QQ", "ZZ", "GF(p)"), ``basis`` (labels), ``mult`` (quadruples
    ``[i, j, k, c]`` meaning b_i b_j has coefficient c at b_k), ``unit``,
    ``idempotents``, ``poset`` (``elements``, ``covers`` as [lower, upper],
    optional ``enumeration``), ``standards`` and optional ``modules``.
``qhkit-quiver/1``
    ``ring``, ``vertices``, ``arrows`` ([name, source, target]), ``relations``
    (strings such as ``"b*a - c*d"``), ``max_length``, ``poset`` on the vertices.

Scalars are integers or, over QQ, exact fraction strings "a/b".  Module blocks
are ``{"rank": n, "weights": [...], "action": {basis label: n x n rows}}``;
omitted basis labels act by zero and omitted weights are recomputed.
``"standards": "auto"`` derives Delta(l) from the projectives, which needs
``"vertex"`` (label to idempotent index) unless labels match idempotents by
position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .algebra import Algebra, AlgebraError, AModule, homogenize_structure
from .linalg import GroundRing, LinalgError, Matrix
from .poset import Poset
from .qh import standard_modules
from .quiver import Quiver, QuiverError, compile_quiver

ALGEBRA_FORMAT = "qhkit-algebra/1"
QUIVER_FORMAT = "qhkit-quiver/1"


class SpecError(ValueError):
    """A positioned parse or validation error."""

    def __init__(self, line: int, fieldname: str, reason: str):
        self.line = line
        self.field = fieldname
        self.reason = reason
        super().__init__(f"line {line}: {fieldname}: {reason}")


@dataclass
class ParsedSpec:
    algebra: Algebra
    poset: Poset
    standards: Dict
    extras: Dict = field(default_factory=dict)
    name: str = ""
    basis_change: Optional[Matrix] = None   # columns: new basis in the file's basis


def _locate(text: str, key: str) -> int:
    needle = f'"{key}"'
    for n, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return n
    return 1


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, key, reason):
        raise SpecError(_locate(self.text, key), key, reason)


def _scalar(ring: GroundRing, x, ctx, key):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        ctx.fail(key, f"scalar {x!r} must be an integer or a fraction string")
    try:
        v = Fraction(x) if isinstance(x, str) else Fraction(x)
    except (ValueError, ZeroDivisionError):
        ctx.fail(key, f"cannot read scalar {x!r}")
    if ring.kind == "ZZ" and v.denominator != 1:
        ctx.fail(key, f"{x!r} is not an integer")
    if ring.kind == "GF" and (v.denominator != 1 or not 0 <= v.numerator < ring.p):
        ctx.fail(key, f"{x!r} is outside 0..{ring.p - 1}")
    return ring.convert(v)


def _vector(ring, v, d, ctx, key):
    if not isinstance(v, list) or len(v) != d:
        ctx.fail(key, f"expected a list of {d} scalars")
    return [_scalar(ring, x, ctx, key) for x in v]


def _poset(doc, ctx) -> Poset:
    if "poset" not in doc:
        ctx.fail("poset", "missing")
    p = doc["poset"]
    try:
        elems = [str(x) for x in p["elements"]]
        covers = [(str(a), str(b)) for a, b in p.get("covers", [])]
        enum = p.get("enumeration")
        return Poset(elems, covers, [str(x) for x in enum] if enum is not None else None)
    except (KeyError, TypeError, ValueError) as exc:
        ctx.fail("poset", str(exc))


def _module(A: Algebra, block, ctx, key, name) -> AModule:
    ring = A.ring
    try:
        n = int(block["rank"])
        act = block.get("action", {})
    except (KeyError, TypeError, ValueError):
        ctx.fail(key, f"module {name!r} needs rank and action")
    index = {b: i for i, b in enumerate(A.names)}
    mats = [Matrix.zeros(ring, n, n) for _ in range(A.dim)]
    for lab, rows in act.items():
        if lab not in index:
            ctx.fail(key, f"module {name!r} acts by unknown basis label {lab!r}")
        if not isinstance(rows, list) or len(rows) != n:
            ctx.fail(key, f"module {name!r}: action of {lab} must have {n} rows")
        mats[index[lab]] = Matrix(ring, [_vector(ring, r, n, ctx, key) for r in rows], n)
    try:
        if "weights" in block:
            w = [int(x) for x in block["weights"]]
            if len(w) != n:
                ctx.fail(key, f"module {name!r}: weights must have length {n}")
            return AModule(A, mats, w, name=name)
        if n == 0:
            return AModule(A, mats, [], name=name)
        return AModule.from_action(A, mats, name=name)
    except (AlgebraError, LinalgError) as exc:
        ctx.fail(key, f"module {name!r}: {exc}")


def parse_algebra_spec(text: str) -> ParsedSpec:
    """Parse either document kind into validated objects; errors are SpecError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.lineno, "json", exc.msg) from None
    ctx = _Ctx(text)
    if not isinstance(doc, dict):
        raise SpecError(1, "json", "top level must be an object")
    fmt = doc.get("format")
    if fmt == QUIVER_FORMAT:
        return parse_algebra_spec(emit_algebra_spec_doc(compile_quiver_spec(doc, ctx)))
    if fmt != ALGEBRA_FORMAT:
        ctx.fail("format", f"expected {ALGEBRA_FORMAT!r} or {QUIVER_FORMAT!r}")
    try:
        ring = GroundRing.parse(str(doc.get("ring", "")))
    except LinalgError as exc:
        ctx.fail("ring", str(exc))
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        ctx.fail("basis", "must be a nonempty list of labels")
    basis = [str(b) for b in basis]
    if len(set(basis)) != len(basis):
        ctx.fail("basis", "duplicate labels")
    d = len(basis)
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for q in doc.get("mult", []):
        if not isinstance(q, list) or len(q) != 4:
            ctx.fail("mult", f"entry {q!r} is not [i, j, k, c]")
        i, j, k, v = q
        if not all(isinstance(t, int) and 0 <= t < d for t in (i, j, k)):
            ctx.fail("mult", f"index out of range in {q!r}")
        c[i][j][k] = _scalar(ring, v, ctx, "mult")
    unit = _vector(ring, doc.get("unit"), d, ctx, "unit")
    idems = doc.get("idempotents")
    if not isinstance(idems, list) or not idems:
        ctx.fail("idempotents", "must be a nonempty list of vectors")
    idems = [_vector(ring, e, d, ctx, "idempotents") for e in idems]
    name = str(doc.get("name", ""))
    W = None
    try:
        A = Algebra(ring, c, unit, idems, basis, check=True, name=name)
    except AlgebraError as exc:
        if "not homogeneous" in str(exc):
            A, W = _homogenized(ring, c, unit, idems, basis, name, ctx)
        else:
            ctx.fail(_error_key(exc), str(exc))
    poset = _poset(doc, ctx)
    st_doc = doc.get("standards", "auto")
    if st_doc == "auto":
        vertex = doc.get("vertex")
        if vertex is None:
            if len(poset.elements) != A.num_idempotents:
                ctx.fail("standards", "auto standards need one idempotent per label")
            vertex = {l: i for i, l in enumerate(poset.elements)}
        try:
            standards = standard_modules(A, poset, {str(k): int(v) for k, v in vertex.items()})
        except (AlgebraError, KeyError) as exc:
            ctx.fail("standards", str(exc))
    else:
        if not isinstance(st_doc, dict) or set(map(str, st_doc)) != set(poset.elements):
            ctx.fail("standards", "need exactly one block per poset label")
        if W is not None:
            ctx.fail("standards", "explicit module blocks need a homogeneous basis")
        standards = {str(l): _module(A, b, ctx, "standards", f"Delta({l})")
                     for l, b in st_doc.items()}
    extras = {}
    for nm, b in (doc.get("modules") or {}).items():
        if W is not None:
            ctx.fail("modules", "explicit module blocks need a homogeneous basis")
        extras[str(nm)] = _module(A, b, ctx, "modules", str(nm))
    return ParsedSpec(A, poset, standards, extras, name, W)


def _error_key(exc) -> str:
    msg = str(exc)
    if "idempotent" in msg:
        return "idempotents"
    return "unit" if "unit" in msg else "mult"


def _homogenized(ring, c, unit, idems, basis, name, ctx):
    try:
        c2, u2, e2, W = homogenize_structure(ring, c, unit, idems)
        names = [f"h{i}" for i in range(len(basis))]
        return Algebra(ring, c2, u2, e2, names, check=True, name=name), W
    except (AlgebraError, LinalgError) as exc:
        ctx.fail(_error_key(exc), str(exc))


def compile_quiver_spec(doc, ctx=None) -> dict:
    """A qhkit-quiver/1 document (dict or text) to qhkit-algebra/1 content."""
    if isinstance(doc, str):
        ctx = _Ctx(doc)
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(exc.lineno, "json", exc.msg) from None
    ctx = ctx or _Ctx("")
    try:
        ring = GroundRing.parse(str(doc.get("ring", "")))
    except LinalgError as exc:
        ctx.fail("ring", str(exc))
    vertices = [str(v) for v in doc.get("vertices", [])]
    try:
        arrows = [(str(a), str(s), str(t)) for a, s, t in doc.get("arrows", [])]
    except (TypeError, ValueError):
        ctx.fail("arrows", "each arrow is [name, source, target]")
    try:
        Q = Quiver(vertices, arrows)
        A, _ = compile_quiver(Q, [str(r) for r in doc.get("relations", [])], ring,
                              max_length=int(doc.get("max_length", 10)),
                              name=str(doc.get("name", "")))
    except QuiverError as exc:
        key = "relations" if "relation" in str(exc) else (
            "max_length" if "stabilize" in str(exc) else "arrows")
        ctx.fail(key, str(exc))
    poset = _poset(doc, ctx)
    if set(poset.elements) != set(vertices):
        ctx.fail("poset", "poset elements must be the quiver vertices")
    vertex = {v: i for i, v in enumerate(vertices)}
    return algebra_spec_doc(A, poset, "auto", vertex=vertex)


# ---------------------------------------------------------------------------
# emission


def _emit_scalar(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _module_block(M: AModule) -> dict:
    act = {}
    for lab, mat in zip(M.algebra.names, M.action):
        if not mat.is_zero():
            act[lab] = [[_emit_scalar(x) for x in r] for r in mat.rows]
    return {"rank": M.rank, "weights": list(M.weights), "action": act}


def algebra_spec_doc(A: Algebra, poset: Poset, standards, modules: Optional[Dict] = None,
                     vertex: Optional[Dict] = None) -> dict:
    """The qhkit-algebra/1 document as a plain dict (standards may be "auto")."""
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, v in enumerate(A.c[i][j]):
                if v:
                    mult.append([i, j, k, _emit_scalar(v)])
    doc = {
        "format": ALGEBRA_FORMAT,
        "name": A.name,
        "ring": str(A.ring),
        "basis": list(A.names),
        "mult": mult,
        "unit": [_emit_scalar(x) for x in A.unit],
        "idempotents": [[_emit_scalar(x) for x in e] for e in A.idempotents],
        "poset": {"elements": [str(x) for x in poset.elements],
                  "covers": [[str(a), str(b)] for a, b in poset.covers],
                  "enumeration": [str(x) for x in poset.enumeration]},
    }
    if standards == "auto":
        doc["standards"] = "auto"
        if vertex is not None:
            doc["vertex"] = {str(k): int(v) for k, v in vertex.items()}
    else:
        doc["standards"] = {str(l): _module_block(standards[l]) for l in poset.enumeration}
    if modules:
        doc["modules"] = {str(k): _module_block(m) for k, m in modules.items()}
    return doc


def _dump(x, indent=0) -> str:
    pad = " " * indent
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 2)}' for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        if all(isinstance(v, list) and all(not isinstance(t, (dict, list)) for t in v) for v in x) \
                and sum(len(v) for v in x) <= 24:
            return "[" + ", ".join(_dump(v) for v in x) + "]"
        items = [f"{pad}  {_dump(v, indent + 2)}" for v in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(x)


def emit_algebra_spec_doc(doc: dict) -> str:
    return _dump(doc) + "\n"


def emit_algebra_spec(A: Algebra, poset: Poset, standards, modules: Optional[Dict] = None,
                      vertex: Optional[Dict] = None) -> str:
    """Deterministic text of a qhkit-algebra/1 file."""
    return emit_algebra_spec_doc(algebra_spec_doc(A, poset, standards, modules, vertex))


def load_spec(path) -> ParsedSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_spec(fh.read())
