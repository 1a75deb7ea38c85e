from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from ergm_calibration.exceptions.model import InvalidModelSpecError


class TermKind(str, Enum):
    """
    Statistic term kinds understood by the term registry.
    """

    EDGES = "edges"
    KSTAR = "kstar"
    TRIANGLES = "triangles"
    GWESP = "gwesp"
    NODEFACTOR = "nodefactor"

    def __str__(self) -> str:
        return self.value


_TERM_PATTERN = re.compile(r"^\s*(?P<kind>[A-Za-z_]+)\s*(?:\{(?P<args>[^}]*)\})?\s*$")


@dataclass(frozen=True, slots=True, kw_only=True)
class StatisticTerm:
    """
    One entry s_t(y) of the sufficient statistic vector.

    Only the fields relevant to ``kind`` are used:
    - KSTAR      → ``k`` (>= 2)
    - GWESP      → ``decay`` (finite, >= 0; fixed, non-curved)
    - NODEFACTOR → ``attribute`` and ``level``
    """

    kind: TermKind
    k: int | None = None
    decay: float | None = None
    attribute: str | None = None
    level: str | None = None
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TermKind(self.kind))

        match self.kind:
            case TermKind.KSTAR:
                if self.k is None or int(self.k) != self.k or self.k < 2:
                    raise InvalidModelSpecError(f"kstar needs an integer k >= 2, got {self.k}")
                object.__setattr__(self, "k", int(self.k))
            case TermKind.GWESP:
                if self.decay is None or not math.isfinite(self.decay) or self.decay < 0:
                    raise InvalidModelSpecError(
                        f"gwesp needs a finite decay >= 0, got {self.decay}"
                    )
                object.__setattr__(self, "decay", float(self.decay))
            case TermKind.NODEFACTOR:
                if not self.attribute or self.level is None:
                    raise InvalidModelSpecError("nodefactor needs both 'attr' and 'level'")
                object.__setattr__(self, "level", str(self.level))

        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self) -> str:
        match self.kind:
            case TermKind.KSTAR:
                return f"kstar{self.k}"
            case TermKind.GWESP:
                return f"gwesp.fixed.{self.decay:g}"
            case TermKind.NODEFACTOR:
                return f"nodefactor.{self.attribute}.{self.level}"
            case _:
                return self.kind.value

    # -------------------------
    # Parsing
    # -------------------------

    @classmethod
    def parse(cls, text: str) -> StatisticTerm:
        """
        Parse the config notation, e.g. ``edges``, ``kstar{k=2}``,
        ``gwesp{decay=1.0}``, ``nodefactor{attr=grade, level=7}``.
        """
        match = _TERM_PATTERN.match(text)
        if not match:
            raise InvalidModelSpecError(f"Cannot parse term '{text}'")
        try:
            kind = TermKind(match["kind"].lower())
        except ValueError:
            raise InvalidModelSpecError(
                f"Unknown term '{match['kind']}' (known: {[k.value for k in TermKind]})"
            ) from None

        args: dict[str, str] = {}
        if match["args"]:
            for part in match["args"].split(","):
                if not part.strip():
                    continue
                key, sep, value = part.partition("=")
                if not sep:
                    raise InvalidModelSpecError(f"Term argument '{part}' must be key=value")
                args[key.strip().lower()] = value.strip()

        fields: dict[str, Any] = {"kind": kind}
        if "label" in args:
            fields["label"] = args.pop("label")
        try:
            if kind is TermKind.KSTAR:
                fields["k"] = int(args.pop("k", "2"))
            elif kind is TermKind.GWESP:
                fields["decay"] = float(args.pop("decay", "1.0"))
            elif kind is TermKind.NODEFACTOR:
                fields["attribute"] = args.pop("attr", None) or args.pop("attribute", None)
                fields["level"] = args.pop("level", None)
        except ValueError as exc:
            raise InvalidModelSpecError(f"Bad argument in term '{text}': {exc}") from exc
        if args:
            raise InvalidModelSpecError(f"Unexpected arguments {sorted(args)} in term '{text}'")
        return cls(**fields)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "k": self.k,
            "decay": self.decay,
            "attribute": self.attribute,
            "level": self.level,
            "label": self.label,
        }


@dataclass(frozen=True, slots=True)
class ModelSpec:
    """Ordered term list; defines s(y) and the parameter dimension d."""

    terms: tuple[StatisticTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise InvalidModelSpecError("A model needs at least one term")
        labels = [t.label for t in terms]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise InvalidModelSpecError(f"Duplicate term labels: {duplicates}")

    @classmethod
    def parse(cls, terms: Iterable[str]) -> ModelSpec:
        return cls(tuple(StatisticTerm.parse(t) for t in terms))

    @property
    def d(self) -> int:
        return len(self.terms)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.terms)

    def attributes(self) -> set[str]:
        return {t.attribute for t in self.terms if t.attribute}
