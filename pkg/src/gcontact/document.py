"""JSON documents: a frame plus named objects living on it.

Forms may be given canonically (list of ``{"blade", "coeff"}``) or as compact
text such as ``"e12 + e34"``, ``"-2*e35"``, ``"i*e1"``, ``"(1/2+3*i)*e13"`` or
``"1"``.  Blades with indices above 9 use dots: ``"e1.10"``, ``"e10."``.
Indices may come in any order; ``"e52"`` is ``-e25``.
"""

import json
import re

from .blades import indices_of
from .forms import Polyform, blade
from .frame import FrameAlgebra, coordinate_frame, extend_circle, parse_nil
from .poly import Poly
from .scalar import Scalar

__all__ = ["Document", "DocumentError", "format_form", "frame_from_spec", "load_document", "parse_form"]


class DocumentError(ValueError):
    """Malformed document or unresolved reference."""


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\([^)]*\)|[0-9/]+\*i|[0-9/]+|i)\s*\*?\s*)?(?P<blade>e[0-9.]+|1)?\s*"
)


def _blade_indices(tok):
    body = tok[1:]
    if "." in body:
        return tuple(int(x) for x in body.split(".") if x)
    return tuple(int(c) for c in body)


def _coef(text):
    if text in ("i", "+i"):
        return Scalar(0, 1)
    if text == "-i":
        return Scalar(0, -1)
    if text.endswith("+i") or text.endswith("-i"):
        text = text[:-1] + "1*i"
    try:
        return Scalar.decode(text)
    except ValueError:
        raise DocumentError(f"malformed coefficient {text!r}") from None


def parse_form(n, text):
    """Compact text form with constant Gaussian-rational coefficients."""
    s = text.strip()
    if not s:
        raise DocumentError("empty form text")
    if s == "0":
        return Polyform.zero(n)
    out = Polyform.zero(n)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("blade")):
            raise DocumentError(f"cannot parse form {text!r} at offset {pos}")
        coef = m.group("coef")
        if coef is None:
            c = Scalar(1)
        else:
            coef = coef.strip("()").replace(" ", "")
            c = _coef(coef)
        if m.group("sign") == "-":
            c = -c
        b = m.group("blade")
        idx = () if b in (None, "1") else _blade_indices(b)
        if any(not 1 <= i <= n for i in idx):
            raise DocumentError(f"blade {b} out of range for dimension {n}")
        out = out + blade(n, idx, c)
        pos = m.end()
    return out


def _coef_text(c):
    """``(sign, text)`` for a nonzero scalar; text is empty for a unit."""
    re_, im = c.re, c.im
    if not im:
        return ("-" if re_ < 0 else "+"), ("" if abs(re_) == 1 else str(abs(re_)))
    if not re_:
        return ("-" if im < 0 else "+"), ("i" if abs(im) == 1 else f"{abs(im)}*i")
    return "+", f"({re_}{'+' if im > 0 else '-'}{abs(im)}*i)"


def format_form(a):
    """Compact text for a constant-coefficient form; canonical encoding otherwise."""
    if not a.is_constant():
        return a.encode()
    if not a:
        return "0"
    parts = []
    for m, p in a.sorted_items():
        sign, text = _coef_text(p.const_value())
        idx = indices_of(m)
        if idx:
            b = "e" + ("".join(map(str, idx)) if max(idx) < 10 else ".".join(map(str, idx)) + ("." if len(idx) == 1 else ""))
            term = f"{text}*{b}" if text else b
        else:
            term = text or "1"
        parts.append((sign, term))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def decode_form(n, data):
    if isinstance(data, str):
        return parse_form(n, data)
    if isinstance(data, (int, float)):
        return parse_form(n, str(data))
    return Polyform.decode(n, data)


def frame_from_spec(spec):
    """``{"dim", "mode"}``, ``{"nil": "(0,0,12)"}``, optional ``"circle": curvature``."""
    if "nil" in spec:
        frame = parse_nil(spec["nil"])
    else:
        dim = int(spec["dim"])
        mode = spec.get("mode", "coordinate")
        if mode == "coordinate":
            frame = coordinate_frame(dim)
        else:
            d = {int(k): decode_form(dim, v) for k, v in spec.get("d", {}).items()}
            frame = FrameAlgebra(dim, "invariant", d)
    if "circle" in spec:
        frame = extend_circle(frame, decode_form(frame.dim, spec["circle"]))
    return frame


def _normalise_forms(n, obj, keys):
    out = dict(obj)
    for k in keys:
        if k in out and isinstance(out[k], (str, int)):
            out[k] = decode_form(n, out[k]).encode()
    return out


def _section_json(n, obj):
    obj = _normalise_forms(n, obj, ("xi",))
    obj.setdefault("X", [[] for _ in range(n)])
    if "X" in obj and isinstance(obj["X"], list) and obj["X"] and not isinstance(obj["X"][0], list):
        obj["X"] = [Poly.decode(n, c).encode() for c in obj["X"]]
    return obj


class Document:
    """Parsed document with lazily decoded, named objects."""

    KINDS = ("forms", "sections", "twists", "mixed_pairs", "quadruples", "metrics", "transforms", "cech")

    def __init__(self, raw):
        if "frame" not in raw:
            raise DocumentError("document has no 'frame'")
        try:
            self.frame = frame_from_spec(raw["frame"])
        except (KeyError, TypeError) as exc:
            raise DocumentError(f"bad frame spec: {exc}") from None
        self.raw = raw
        self.n = self.frame.dim
        self.sample_points = [
            tuple(Scalar.decode(x) if isinstance(x, str) else Scalar(x) for x in p)
            for p in raw.get("sample_points", [])
        ]
        for kind in self.KINDS:
            if kind in raw and not isinstance(raw[kind], dict):
                raise DocumentError(f"'{kind}' must be an object of named entries")

    def names(self, kind):
        return sorted(self.raw.get(kind, {}))

    def _entry(self, kind, name):
        table = self.raw.get(kind, {})
        if name not in table:
            raise DocumentError(f"missing key {kind}.{name}")
        return table[name]

    def form(self, name):
        return decode_form(self.n, self._entry("forms", name))

    def section(self, name):
        from .sections import ContactSection

        return ContactSection.decode(self.n, _section_json(self.n, self._entry("sections", name)))

    def twists(self, name):
        from .sections import Twists

        return Twists.decode(self.n, _normalise_forms(self.n, self._entry("twists", name), ("H3", "H2", "F")))

    def mixed_pair(self, name):
        from .spinor import MixedPair

        obj = _normalise_forms(self.n, self._entry("mixed_pairs", name), ("phi", "psi"))
        for e in ("e1", "e2"):
            obj[e] = _section_json(self.n, obj[e])
        return MixedPair.decode(self.n, obj)

    def quadruple(self, name):
        from .structures import SekiyaQuadruple, complex_quadruple, cosymplectic_quadruple

        obj = self._entry("quadruples", name)
        ctor = obj.get("from")
        if ctor == "cosymplectic":
            from .forms import Vector

            R = Vector(self.n, [Poly.decode(self.n, c) for c in obj["R"]])
            return cosymplectic_quadruple(decode_form(self.n, obj["theta"]), decode_form(self.n, obj["eta"]), R)
        if ctor == "complex":
            from .forms import Vector

            R = Vector(self.n, [Poly.decode(self.n, c) for c in obj["R"]])
            J = [[Scalar.decode(c) if isinstance(c, str) else Scalar(c) for c in r] for r in obj["J"]]
            return complex_quadruple(J, decode_form(self.n, obj["eta"]), R)
        obj = dict(obj)
        for e in ("e1", "e2"):
            obj[e] = _section_json(self.n, obj[e])
        obj["Phi"] = [[Poly.decode(self.n, c).encode() for c in r] for r in obj["Phi"]]
        return SekiyaQuadruple.decode(self.n, obj)

    def transform(self, name):
        from .structures import BbaTransform

        return BbaTransform.decode(self.n, _normalise_forms(self.n, self._entry("transforms", name), ("B", "b", "a")))

    def metric(self, name):
        from .structures import BbaTransform, GenContactMetric

        obj = self._entry("metrics", name)
        g = [[Poly.decode(self.n, c) for c in r] for r in obj["g"]]
        h = Poly.decode(self.n, obj.get("h", 1))
        t = obj.get("transform")
        if isinstance(t, str):
            t = self.transform(t)
        elif t is not None:
            t = BbaTransform.decode(self.n, _normalise_forms(self.n, t, ("B", "b", "a")))
        pts = obj.get("sample_points") or [[str(x) for x in p] for p in self.raw.get("sample_points", [])]
        pts = [[Scalar.decode(x) if isinstance(x, str) else Scalar(x) for x in p] for p in pts]
        return GenContactMetric.make(g, h, t, pts)

    def cech(self, name):
        from .structures import CechDatum

        obj = dict(self._entry("cech", name))
        obj["data"] = {
            k: (_normalise_forms(self.n, v, ("B", "b", "a")) if isinstance(v, dict) else self.transform(v).encode())
            for k, v in obj["data"].items()
        }
        if "overlaps" in obj:
            obj["overlaps"] = {k: _normalise_forms(self.n, v, ("B", "b", "a")) for k, v in obj["overlaps"].items()}
        return CechDatum.decode(self.n, obj)


def load_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    return Document(raw)
