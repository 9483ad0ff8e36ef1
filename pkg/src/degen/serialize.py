"""JSON documents: schema checks with field paths, parse and canonical re-emission."""

from __future__ import annotations

import json

import jsonschema

from .arith import Place, PrimeContext, RationalFunction
from .degdata import (
    Boundary,
    Component,
    Critical,
    DoubleDegData,
    Edge,
    GlobalDegData,
    GlobalMarked,
    MarkedPoint,
    Node,
    PointLabel,
    PointRef,
    SimpleDegData,
    Tree,
    Vertex,
)
from .fields import field
from .poly import FF, Poly, factor
from .torsor import BoundaryType, GroupKind, TorsorRep

FORMAT_VERSION = "1.0"
PAYLOADS = ("simple", "double", "global", "cover", "fiber")


class ParseError(ValueError):
    """Malformed document; ``path`` points at the offending field."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- schema --

_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}
_KIND = {"enum": [k.value for k in GroupKind]}


def _obj(required, optional=None):
    props = dict(required)
    props.update(optional or {})
    return {"type": "object", "properties": props, "required": sorted(required), "additionalProperties": False}


_DEFS = {
    "element": {
        "oneOf": [_NAT, _obj({"deg": {"type": "integer", "minimum": 1}, "code": _NAT})],
    },
    "place": {
        "oneOf": [
            {"const": "inf"},
            _obj({"poly": {"type": "array", "items": _NAT, "minItems": 2}, "index": _NAT}),
            _obj({"at": {"$ref": "#/$defs/element"}}),
        ]
    },
    "coeffs": {"type": "array", "items": {"$ref": "#/$defs/element"}},
    "rep": _obj(
        {"kind": _KIND, "num": {"$ref": "#/$defs/coeffs"}},
        {"den": {"$ref": "#/$defs/coeffs"}, "punctures": {"type": "array", "items": {"$ref": "#/$defs/place"}}},
    ),
    "label": _obj({"m": _INT}, {"h": _INT, "location": {"$ref": "#/$defs/place"}}),
    "marked": _obj({"m": _INT, "r": _NAT}, {"h": _INT, "location": {"$ref": "#/$defs/place"}}),
    "btype": _obj({"kind": _KIND, "m": _INT}, {"h": _INT}),
    "vertex": _obj(
        {"kind": _KIND},
        {
            "delta": {"type": ["integer", "null"]},
            "genus": _NAT,
            "marked": {"type": "array", "items": {"$ref": "#/$defs/marked"}},
            "rep": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/rep"}]},
        },
    ),
    "edge": _obj(
        {"u": {"type": "string"}, "v": {"type": "string"}, "e": _INT,
         "at_u": {"$ref": "#/$defs/label"}, "at_v": {"$ref": "#/$defs/label"}}
    ),
    "boundary": _obj(
        {"vertex": {"type": "string"}, "point": {"$ref": "#/$defs/label"}, "e": _INT, "delta": _INT}
    ),
    "vertices": {"type": "object", "additionalProperties": {"$ref": "#/$defs/vertex"}, "minProperties": 1},
    "edges": {"type": "array", "items": {"$ref": "#/$defs/edge"}},
    "species": {"enum": ["nonsplit", "split"]},
    "simple": _obj(
        {
            "species": {"$ref": "#/$defs/species"},
            "r": _NAT,
            "type": {"$ref": "#/$defs/btype"},
            "vertices": {"$ref": "#/$defs/vertices"},
            "origin": {"$ref": "#/$defs/boundary"},
        },
        {"edges": {"$ref": "#/$defs/edges"}},
    ),
    "double": _obj(
        {
            "species": {"$ref": "#/$defs/species"},
            "r": _NAT,
            "types": {"type": "array", "items": {"$ref": "#/$defs/btype"}, "minItems": 2, "maxItems": 2},
            "vertices": {"$ref": "#/$defs/vertices"},
            "ends": {"type": "array", "items": {"$ref": "#/$defs/boundary"}, "minItems": 2, "maxItems": 2},
        },
        {"edges": {"$ref": "#/$defs/edges"}},
    ),
    "ref": _obj({"component": {"type": "string"}, "point": {"type": "string"}}),
    "global": _obj(
        {
            "components": {
                "type": "object",
                "minProperties": 1,
                "additionalProperties": _obj(
                    {"genus": _NAT, "kind": _KIND},
                    {
                        "delta": {"type": ["integer", "null"]},
                        "points": {"type": "object", "additionalProperties": {"$ref": "#/$defs/label"}},
                        "rep": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/rep"}]},
                        "generic": {"type": "boolean"},
                    },
                ),
            },
        },
        {
            "r": _NAT,
            "nodes": {
                "type": "object",
                "additionalProperties": _obj(
                    {"a": {"$ref": "#/$defs/ref"}, "b": {"$ref": "#/$defs/ref"}},
                    {
                        "r": _NAT,
                        "split": {"type": "boolean"},
                        "datum": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/double"}]},
                    },
                ),
            },
            "marked": {
                "type": "object",
                "additionalProperties": _obj(
                    {"at": {"$ref": "#/$defs/ref"}, "r": _NAT},
                    {"datum": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/simple"}]}},
                ),
            },
            "critical": {
                "type": "object",
                "additionalProperties": _obj(
                    {"at": {"$ref": "#/$defs/ref"}},
                    {"datum": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/simple"}]}},
                ),
            },
        },
    ),
    "cpoint": _obj({"component": {"type": "string"}, "place": {"$ref": "#/$defs/place"}}),
    "cover": _obj(
        {
            "components": {
                "type": "object",
                "minProperties": 1,
                "additionalProperties": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/rep"}]},
            }
        },
        {
            "nodes": {
                "type": "object",
                "additionalProperties": _obj({"a": {"$ref": "#/$defs/cpoint"}, "b": {"$ref": "#/$defs/cpoint"}}),
            },
            "marked": {"type": "object", "additionalProperties": {"$ref": "#/$defs/cpoint"}},
        },
    ),
    "fiber": {"type": "object"},
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "format_version": {"type": "string"},
        "prime_context": _obj({"p": {"type": "integer", "minimum": 2}, "vKp": {"type": "integer", "minimum": 1}}),
        **{k: {"$ref": f"#/$defs/{k}"} for k in PAYLOADS},
    },
    "required": ["format_version", "prime_context"],
    "additionalProperties": False,
    "minProperties": 3,
    "maxProperties": 3,
    "$defs": _DEFS,
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _jpath(parts) -> str:
    out = "$"
    for x in parts:
        out += f"[{x}]" if isinstance(x, int) else f".{x}"
    return out


def check_schema(doc) -> None:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        # the deepest error is the most specific one
        err = max(errors, key=lambda e: len(e.absolute_path))
        while err.context:
            err = max(err.context, key=lambda e: len(e.absolute_path))
        raise ParseError(err.message, _jpath(err.absolute_path))


# -- decoding --

class _Decoder:
    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        self.p = ctx.p

    def element(self, x, path) -> FF:
        if isinstance(x, int):
            if not 0 <= x < self.p:
                raise ParseError(f"prime-field element {x} not in [0, {self.p})", path)
            return FF.of(self.p, x)
        F = field(self.p, x["deg"])
        if x["code"] >= F.order:
            raise ParseError(f"code {x['code']} out of range for a field of order {F.order}", path)
        return FF(F, x["code"])

    def place(self, x, path) -> Place:
        if x == "inf":
            return Place.infinity(self.p)
        if "at" in x:
            return Place.at(self.element(x["at"], path + ".at"))
        poly = tuple(x["poly"])
        if any(c >= self.p for c in poly) or poly[-1] != 1:
            raise ParseError("place polynomial must be monic with coefficients in [0, p)", path + ".poly")
        f = Poly(field(self.p, 1), poly)
        fac = factor(f)
        if len(fac) != 1 or fac[0][1] != 1:
            raise ParseError("place polynomial is not irreducible over F_p", path + ".poly")
        try:
            return Place(self.p, poly, x["index"])
        except ValueError as exc:
            raise ParseError(str(exc), path + ".index") from None

    def poly(self, coeffs, path) -> Poly:
        if not coeffs:
            return Poly(field(self.p, 1), [])
        return Poly.from_elements([self.element(c, f"{path}[{k}]") for k, c in enumerate(coeffs)])

    def rep(self, x, path):
        if x is None:
            return None
        num = self.poly(x["num"], path + ".num")
        den = self.poly(x.get("den", [1]), path + ".den")
        if den.degree < 0:
            raise ParseError("zero denominator", path + ".den")
        kind = GroupKind(x["kind"])
        if kind is GroupKind.SPLIT:
            raise ParseError("the trivial torsor has no representative; use kind 'split' without rep", path)
        punct = [self.place(z, f"{path}.punctures[{k}]") for k, z in enumerate(x.get("punctures", []))]
        try:
            return TorsorRep(kind, RationalFunction(num, den), punct)
        except ValueError as exc:
            raise ParseError(str(exc), path) from None

    def label(self, x, path) -> PointLabel:
        loc = x.get("location")
        return PointLabel(x["m"], x.get("h", 0), None if loc is None else self.place(loc, path + ".location"))

    def marked(self, x, path) -> MarkedPoint:
        loc = x.get("location")
        return MarkedPoint(x["m"], x.get("h", 0), x["r"], None if loc is None else self.place(loc, path + ".location"))

    def btype(self, x) -> BoundaryType:
        return BoundaryType(GroupKind(x["kind"]), x["m"], x.get("h", 0))

    def tree(self, x, path) -> Tree:
        verts = {}
        for vid, v in x["vertices"].items():
            vp = f"{path}.vertices.{vid}"
            verts[vid] = Vertex(
                GroupKind(v["kind"]),
                v.get("delta"),
                v.get("genus", 0),
                tuple(self.marked(m, f"{vp}.marked[{k}]") for k, m in enumerate(v.get("marked", []))),
                self.rep(v.get("rep"), vp + ".rep"),
            )
        edges = []
        for k, e in enumerate(x.get("edges", [])):
            ep = f"{path}.edges[{k}]"
            edges.append(Edge(e["u"], e["v"], e["e"], self.label(e["at_u"], ep + ".at_u"), self.label(e["at_v"], ep + ".at_v")))
        return Tree(verts, edges)

    def boundary(self, x, path) -> Boundary:
        return Boundary(x["vertex"], self.label(x["point"], path + ".point"), x["e"], x["delta"])

    def simple(self, x, path="$.simple") -> SimpleDegData:
        return SimpleDegData(x["species"], x["r"], self.btype(x["type"]), self.tree(x, path),
                             self.boundary(x["origin"], path + ".origin"))

    def double(self, x, path="$.double") -> DoubleDegData:
        return DoubleDegData(
            x["species"], x["r"], tuple(self.btype(t) for t in x["types"]), self.tree(x, path),
            tuple(self.boundary(b, f"{path}.ends[{k}]") for k, b in enumerate(x["ends"])),
        )

    def global_(self, x, path="$.global") -> GlobalDegData:
        comps = {}
        for cid, c in x["components"].items():
            cp = f"{path}.components.{cid}"
            comps[cid] = Component(
                c["genus"], GroupKind(c["kind"]), c.get("delta"),
                {k: self.label(pl, f"{cp}.points.{k}") for k, pl in c.get("points", {}).items()},
                self.rep(c.get("rep"), cp + ".rep"), c.get("generic", False),
            )

        def ref(r):
            return PointRef(r["component"], r["point"])

        def sub(kind, d, p):
            if d is None:
                return None
            return self.double(d, p) if kind == "double" else self.simple(d, p)

        nodes = {
            k: Node(ref(n["a"]), ref(n["b"]), n.get("r", 0), sub("double", n.get("datum"), f"{path}.nodes.{k}.datum"),
                    n.get("split", False))
            for k, n in x.get("nodes", {}).items()
        }
        marked = {
            k: GlobalMarked(ref(m["at"]), m["r"], sub("simple", m.get("datum"), f"{path}.marked.{k}.datum"))
            for k, m in x.get("marked", {}).items()
        }
        critical = {
            k: Critical(ref(c["at"]), sub("simple", c.get("datum"), f"{path}.critical.{k}.datum"))
            for k, c in x.get("critical", {}).items()
        }
        g = GlobalDegData(comps, nodes, marked, critical, 0)
        return GlobalDegData(comps, nodes, marked, critical, x.get("r", g.branch_count()))

    def cover(self, x, path="$.cover"):
        from .galois import CoverDescription

        comps = {k: self.rep(T, f"{path}.components.{k}") for k, T in x["components"].items()}

        def cpoint(c, p):
            if c["component"] not in comps:
                raise ParseError(f"unknown component {c['component']!r}", p + ".component")
            return c["component"], self.place(c["place"], p + ".place")

        nodes = {k: (cpoint(n["a"], f"{path}.nodes.{k}.a"), cpoint(n["b"], f"{path}.nodes.{k}.b"))
                 for k, n in x.get("nodes", {}).items()}
        marked = {k: cpoint(m, f"{path}.marked.{k}") for k, m in x.get("marked", {}).items()}
        return CoverDescription(self.p, comps, nodes, marked)


def parse(doc) -> tuple[PrimeContext, str, object]:
    """Parse a document (dict or JSON text) into (ctx, payload kind, object)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    check_schema(doc)
    if doc["format_version"].split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise ParseError(f"unsupported format_version {doc['format_version']!r}", "$.format_version")
    pc = doc["prime_context"]
    try:
        ctx = PrimeContext(pc["p"], pc["vKp"])
    except ValueError as exc:
        raise ParseError(str(exc), "$.prime_context") from None
    kind = next(k for k in PAYLOADS if k in doc)
    dec = _Decoder(ctx)
    try:
        if kind == "simple":
            obj = dec.simple(doc[kind])
        elif kind == "double":
            obj = dec.double(doc[kind])
        elif kind == "global":
            obj = dec.global_(doc[kind])
        elif kind == "cover":
            obj = dec.cover(doc[kind])
        else:
            raise ParseError("fiber documents are output only", "$.fiber")
    except OverflowError as exc:
        raise ParseError(str(exc)) from None
    return ctx, kind, obj


# -- encoding --

def _element(a: FF):
    if a.F.n == 1:
        return a.v
    return {"deg": a.F.n, "code": a.v}


def _place(z: Place):
    if z.is_infinity:
        return "inf"
    return {"poly": list(z.poly), "index": z.index}


def _rep(T):
    if T is None:
        return None
    return {
        "kind": T.kind.value,
        "num": [_element(a) for a in T.rep.num.elements()],
        "den": [_element(a) for a in T.rep.den.elements()],
        "punctures": [_place(z) for z in T.punctures],
    }


def _label(pl: PointLabel):
    out = {"m": pl.m, "h": pl.h}
    if pl.location is not None:
        out["location"] = _place(pl.location)
    return out


def _marked(x: MarkedPoint):
    out = {"m": x.m, "h": x.h, "r": x.r}
    if x.location is not None:
        out["location"] = _place(x.location)
    return out


def _btype(t: BoundaryType):
    return {"kind": t.kind.value, "m": t.m, "h": t.h}


def _tree(t: Tree):
    return {
        "vertices": {
            vid: {
                "kind": v.kind.value,
                "delta": v.delta,
                "genus": v.genus,
                "marked": [_marked(x) for x in v.marked],
                "rep": _rep(v.rep),
            }
            for vid, v in t.vertices.items()
        },
        "edges": [
            {"u": e.u, "v": e.v, "e": e.e, "at_u": _label(e.at_u), "at_v": _label(e.at_v)} for e in t.edges
        ],
    }


def _boundary(b: Boundary):
    return {"vertex": b.vertex, "point": _label(b.point), "e": b.e, "delta": b.delta}


def to_obj(d):
    if isinstance(d, SimpleDegData):
        return {"species": d.species, "r": d.r, "type": _btype(d.boundary_type), **_tree(d.tree),
                "origin": _boundary(d.origin)}
    if isinstance(d, DoubleDegData):
        return {"species": d.species, "r": d.r, "types": [_btype(t) for t in d.boundary_types],
                **_tree(d.tree), "ends": [_boundary(b) for b in d.ends]}
    if isinstance(d, GlobalDegData):
        def ref(r):
            return {"component": r.component, "point": r.point}

        return {
            "r": d.r,
            "components": {
                cid: {
                    "genus": c.genus, "kind": c.kind.value, "delta": c.delta,
                    "points": {k: _label(pl) for k, pl in c.points.items()},
                    "rep": _rep(c.rep), "generic": c.generic,
                }
                for cid, c in d.components.items()
            },
            "nodes": {
                k: {"a": ref(n.a), "b": ref(n.b), "r": n.r, "split": n.split,
                    "datum": None if n.datum is None else to_obj(n.datum)}
                for k, n in d.nodes.items()
            },
            "marked": {
                k: {"at": ref(x.at), "r": x.r, "datum": None if x.datum is None else to_obj(x.datum)}
                for k, x in d.marked.items()
            },
            "critical": {
                k: {"at": ref(x.at), "datum": None if x.datum is None else to_obj(x.datum)}
                for k, x in d.critical.items()
            },
        }
    from .fiber import CurveFragment
    from .galois import CoverDescription

    if isinstance(d, CoverDescription):
        return {
            "components": {k: _rep(T) for k, T in d.components.items()},
            "nodes": {
                k: {"a": {"component": a, "place": _place(z)}, "b": {"component": b, "place": _place(w)}}
                for k, ((a, z), (b, w)) in d.nodes.items()
            },
            "marked": {k: {"component": c, "place": _place(z)} for k, (c, z) in d.marked.items()},
        }
    if isinstance(d, CurveFragment):
        out = {
            "components": [{"id": c.id, "genus": c.genus, "provenance": c.provenance} for c in d.components],
            "edges": [list(e) for e in d.edges],
            "b1": d.b1,
            "total_genus": d.total_genus,
        }
        if d.boundaries:
            out["boundaries"] = d.boundaries
        return out
    raise TypeError(f"cannot serialize {type(d).__name__}")


def payload_kind(d) -> str:
    from .fiber import CurveFragment
    from .galois import CoverDescription

    for cls, name in ((SimpleDegData, "simple"), (DoubleDegData, "double"), (GlobalDegData, "global"),
                      (CoverDescription, "cover"), (CurveFragment, "fiber")):
        if isinstance(d, cls):
            return name
    raise TypeError(type(d).__name__)


def document(ctx: PrimeContext, d) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "prime_context": {"p": ctx.p, "vKp": ctx.vKp},
        payload_kind(d): to_obj(d),
    }


def dumps(ctx: PrimeContext, d, indent: int | None = 2) -> str:
    sep = (",", ":") if indent is None else None
    return json.dumps(document(ctx, d), indent=indent, sort_keys=True, separators=sep)


def loads(text) -> tuple[PrimeContext, object]:
    ctx, _, obj = parse(text)
    return ctx, obj
