"""JSON documents: named fields, bases, pp-divisors, fans, groups, actions, toric fans, homs.

The canonical form is ``json.dumps(obj, sort_keys=True, indent=2)`` plus a
trailing newline; loading and dumping a canonical document reproduces it
byte for byte.
"""

import json
from importlib import resources

from .base import BaseVariety, Plurifunction, SemilinearBaseMap
from .descent import GaloisFanAction, SemilinearFanMorphism, ToricFan
from .errors import DocumentError
from .exact import FiniteGroup, NumberField
from .fan import DivisorialFan
from .polyhedral import Cone
from .ppdivisor import FaceCertificate, PPDivisor

VERSION = 1
SECTIONS = ("fields", "bases", "ppdivisors", "fans", "groups", "actions", "toric_fans", "homs")


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class Document:
    """Named collections with cross references resolved to live objects."""

    def __init__(self):
        for s in SECTIONS:
            setattr(self, s, {})

    # -- registration -------------------------------------------------------

    def field_name(self, field):
        for name, f in self.fields.items():
            if f == field:
                return name
        name = "Q" if field.degree == 1 else f"Q_{field.generator}"
        self.fields[name] = field
        return name

    def base_name(self, base):
        for name, b in self.bases.items():
            if b == base:
                return name
        fname = self.field_name(base.field)
        name = f"{'P1' if base.is_curve() else 'pt'}_{fname}"
        if base.removed:
            name += f"_open{len(self.bases)}"
        self.bases[name] = base
        return name

    def add_ppdivisor(self, d):
        if d.name is None:
            raise DocumentError("pp-divisors must be named")
        old = self.ppdivisors.get(d.name)
        if old is not None and old != d:
            raise DocumentError(f"two different pp-divisors named {d.name!r}")
        self.base_name(d.base)
        self.ppdivisors[d.name] = d
        return d.name

    def add_fan(self, name, fan):
        for d in fan:
            self.add_ppdivisor(d)
        fan.name = name
        self.fans[name] = fan
        return name

    def add_group(self, name, group):
        self.groups[name] = group
        return name

    def add_action(self, name, fan_name, group_name, act):
        act.name = name
        self.field_name(act.field)
        self.actions[name] = (fan_name, group_name, act)
        return name

    def add_toric(self, name, sigma):
        sigma.name = name
        self.toric_fans[name] = sigma
        return name

    def add_hom(self, name, toric_name, group_name, images):
        self.homs[name] = (toric_name, group_name, dict(images))
        return name

    # -- lookup with clear errors ---------------------------------------------

    def _get(self, section, name):
        table = getattr(self, section)
        if name not in table:
            raise DocumentError(f"no {section[:-1]} named {name!r}",
                                available=sorted(table))
        return table[name]

    def ppdivisor(self, name):
        return self._get("ppdivisors", name)

    def fan(self, name):
        return self._get("fans", name)

    def group(self, name):
        return self._get("groups", name)

    def action(self, name):
        return self._get("actions", name)[2]

    def toric(self, name):
        return self._get("toric_fans", name)

    def hom(self, name):
        t, g, images = self._get("homs", name)
        return self.toric(t), self.group(g), images

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        out = {"version": VERSION}
        out["fields"] = {n: f.to_json() for n, f in self.fields.items()}
        out["bases"] = {n: b.to_json(self.field_name(b.field)) for n, b in self.bases.items()}
        out["ppdivisors"] = {n: d.to_json(self.base_name(d.base)) for n, d in self.ppdivisors.items()}
        out["fans"] = {n: _fan_to_json(f) for n, f in self.fans.items()}
        out["groups"] = {n: g.to_json() for n, g in self.groups.items()}
        out["actions"] = {n: _action_to_json(f, g, a, self.field_name(a.field))
                          for n, (f, g, a) in self.actions.items()}
        out["toric_fans"] = {n: t.to_json() for n, t in self.toric_fans.items()}
        out["homs"] = {n: {"toric": t, "group": g,
                           "images": {x: [list(r) for r in F] for x, F in images.items()}}
                       for n, (t, g, images) in self.homs.items()}
        return out

    def dumps(self):
        return canonical_dumps(self.to_json())

    def dump(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_json(cls, obj):
        try:
            return _load(obj)
        except DocumentError:
            raise
        except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
            raise DocumentError(f"malformed document: {type(exc).__name__}: {exc}") from exc

    @classmethod
    def loads(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not JSON: {exc}") from exc
        return cls.from_json(obj)

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
        return cls.loads(text)


def _fan_to_json(fan):
    edges = [{"sub": a, "super": b, "certificate": c.to_json()}
             for (a, b), c in sorted(fan.edges.items())]
    return {"members": sorted(fan.names()), "edges": edges}


def _action_to_json(fan_name, group_name, act, field_name):
    elems = {}
    for x, g in act.elements.items():
        e = dict(g.psi.to_json())
        e["F"] = [list(r) for r in g.F]
        e["plurifunction"] = g.plurifn.to_json()
        e["assignment"] = dict(sorted(g.assignment.items()))
        elems[x] = e
    return {"fan": fan_name, "group": group_name, "field": field_name, "elements": elems}


def _load(obj):
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    if obj.get("version") != VERSION:
        raise DocumentError(f"unsupported document version {obj.get('version')!r}")
    unknown = set(obj) - set(SECTIONS) - {"version"}
    if unknown:
        raise DocumentError(f"unknown sections {sorted(unknown)}")
    doc = Document()
    for n, f in obj.get("fields", {}).items():
        doc.fields[n] = NumberField.from_json(f)
    for n, b in obj.get("bases", {}).items():
        field = doc._get("fields", b["field"])
        base = BaseVariety(b["kind"], field)
        if b.get("removed"):
            from .base import point_from_json
            base = base.remove([point_from_json(p, field) for p in b["removed"]])
        doc.bases[n] = base
    for n, d in obj.get("ppdivisors", {}).items():
        if d.get("name", n) != n:
            raise DocumentError(f"pp-divisor key {n!r} differs from its name")
        doc.ppdivisors[n] = PPDivisor.from_json(dict(d, name=n), doc._get("bases", d["base"]))
    for n, f in obj.get("fans", {}).items():
        members = [doc.ppdivisor(m) for m in f["members"]]
        fan = DivisorialFan(members, name=n)
        field = fan.base.field if fan.base else None
        for e in f.get("edges", []):
            for end in (e["sub"], e["super"]):
                if end not in fan.members:
                    raise DocumentError(f"edge of fan {n!r} names unknown member {end!r}")
            fan.edges[(e["sub"], e["super"])] = FaceCertificate.from_json(e["certificate"], field)
        doc.fans[n] = fan
    for n, g in obj.get("groups", {}).items():
        doc.groups[n] = FiniteGroup.from_json(g)
    for n, t in obj.get("toric_fans", {}).items():
        rank = int(t["rank"])
        rays = [tuple(int(x) for x in r) for r in t["rays"]]
        doc.toric_fans[n] = ToricFan.from_rays(rank, rays, t["cones"], n)
    for n, a in obj.get("actions", {}).items():
        fan = doc.fan(a["fan"])
        group = doc.group(a["group"])
        field = doc._get("fields", a["field"])
        elements = {}
        for x, e in a["elements"].items():
            if x not in group.elements:
                raise DocumentError(f"action {n!r} names unknown group element {x!r}")
            psi = SemilinearBaseMap.from_json(e, field)
            F = tuple(tuple(int(v) for v in r) for r in e["F"])
            pf = Plurifunction.from_json(e.get("plurifunction", []), len(F), field)
            for k, v in e.get("assignment", {}).items():
                if k not in fan.members or v not in fan.members:
                    raise DocumentError(f"action {n!r} assigns unknown members {k!r} -> {v!r}")
            elements[x] = SemilinearFanMorphism(x, psi, F, pf, e.get("assignment", {}))
        doc.actions[n] = (a["fan"], a["group"], GaloisFanAction(group, elements, field, n))
    for n, h in obj.get("homs", {}).items():
        doc.toric(h["toric"])
        group = doc.group(h["group"])
        images = {x: tuple(tuple(int(v) for v in r) for r in F) for x, F in h["images"].items()}
        if set(images) != set(group.elements):
            raise DocumentError(f"hom {n!r} does not cover the group")
        doc.homs[n] = (h["toric"], h["group"], images)
    return doc


def library():
    """The bundled document of worked examples."""
    text = resources.files("divfan").joinpath("data/library.json").read_text(encoding="utf-8")
    return Document.loads(text)
