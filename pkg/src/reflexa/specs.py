"""JSON wire formats for rings and modules."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import ArtinianAlgebra
from .fields import Field, QQ, field_from_json
from .modules import (
    Module, ModuleError, Presentation, canonical, direct_sum, free, ideal,
    max_ideal, quotient_ring, realize, residue_field, syzygy,
)


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    field: Field
    vars: tuple
    ideal: tuple
    order: str = "grevlex"

    def to_json(self) -> dict:
        out = {"field": self.field.to_json(), "vars": list(self.vars), "ideal": list(self.ideal)}
        if self.order != "grevlex":
            out["order"] = self.order
        return out

    @classmethod
    def from_json(cls, data) -> RingSpec:
        if not isinstance(data, dict):
            raise SpecError("ring spec must be a JSON object")
        unknown = set(data) - {"field", "vars", "ideal", "order"}
        if unknown:
            raise SpecError(f"unknown ring spec keys: {sorted(unknown)}")
        try:
            fld = field_from_json(data.get("field", "Q"))
            vars_ = tuple(data["vars"])
            gens = tuple(data["ideal"])
        except (KeyError, TypeError, ValueError) as e:
            raise SpecError(f"bad ring spec: {e}") from e
        if not gens or not all(isinstance(g, str) for g in gens):
            raise SpecError("ring spec needs a nonempty list of ideal generator strings")
        return cls(fld, vars_, gens, data.get("order", "grevlex"))

    def build(self) -> ArtinianAlgebra:
        return _build_algebra(self)


@lru_cache(maxsize=64)
def _build_algebra(spec: RingSpec) -> ArtinianAlgebra:
    return ArtinianAlgebra.from_strings(list(spec.ideal), list(spec.vars), spec.field, spec.order)


BUILDERS = ("k", "m", "R", "omega", "ideal", "presentation", "syzygy", "quotient", "sum", "dual")


@dataclass(frozen=True)
class ModuleSpec:
    builder: str
    params: dict = field(default_factory=dict, hash=False, compare=True)

    def to_json(self) -> dict:
        out = {"builder": self.builder}
        for k in sorted(self.params):
            v = self.params[k]
            if isinstance(v, ModuleSpec):
                v = v.to_json()
            elif isinstance(v, list) and v and isinstance(v[0], ModuleSpec):
                v = [x.to_json() for x in v]
            out[k] = v
        return out

    @classmethod
    def from_json(cls, data) -> ModuleSpec:
        if isinstance(data, str):
            data = {"builder": data}
        if not isinstance(data, dict) or "builder" not in data:
            raise SpecError("module spec must be a builder name or an object with a 'builder' key")
        b = data["builder"]
        if b not in BUILDERS:
            raise SpecError(f"unknown module builder {b!r}; expected one of {', '.join(BUILDERS)}")
        params = {k: v for k, v in data.items() if k != "builder"}
        if "of" in params:
            of = params["of"]
            params["of"] = [cls.from_json(x) for x in of] if isinstance(of, list) else cls.from_json(of)
        return cls(b, params)

    def build(self, A: ArtinianAlgebra) -> Module:
        p = self.params
        b = self.builder
        try:
            if b == "k":
                return residue_field(A)
            if b == "m":
                return max_ideal(A)
            if b == "R":
                return free(A, int(p.get("rank", 1)))
            if b == "omega":
                return canonical(A)
            if b == "ideal":
                return ideal(A, list(p["gens"]))
            if b == "quotient":
                return quotient_ring(A, list(p["gens"]))
            if b == "presentation":
                return realize(Presentation.from_strings(A, p["matrix"]))
            if b == "syzygy":
                return syzygy(p["of"].build(A), int(p.get("index", 1)))
            if b == "sum":
                return direct_sum(*[s.build(A) for s in p["of"]])
            if b == "dual":
                from .duality import iterated_dual
                return iterated_dual(p["of"].build(A), int(p.get("times", 1)))
        except KeyError as e:
            raise SpecError(f"module builder {b!r} is missing parameter {e}") from e
        raise SpecError(f"unknown builder {b!r}")


def input_hash(*parts) -> str:
    """sha256 of the canonical JSON of the inputs."""
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


__all__ = ["RingSpec", "ModuleSpec", "SpecError", "ModuleError", "input_hash", "QQ"]
