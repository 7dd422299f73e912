from __future__ import annotations

from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Type

from geostream.recognition.ce_instance import CeConfig, CeInstance
from geostream.recognition.context import RecognitionContext, VesselFluents

Cell = Tuple[int, int]


class PatternScope(str, Enum):
    VESSEL = "vessel"
    PAIR = "pair"


class IPattern:
    """
    Base class of complex-event patterns. Subclasses register under their CE
    name with @IPattern.pattern_type(name). Vessel patterns look at one
    vessel's events; pair patterns look at the per-vessel fluents of all the
    vessels that visited one grid cell.
    """

    _registry: Dict[str, Type["IPattern"]] = {}

    name: str = "base"
    scope: PatternScope = PatternScope.VESSEL

    @classmethod
    def pattern_type(cls, name: str):
        def decorator(subcls: Type["IPattern"]) -> Type["IPattern"]:
            subcls.name = name
            cls._registry[name] = subcls
            return subcls

        return decorator

    @classmethod
    def registered(cls) -> List[str]:
        return sorted(cls._registry)

    @classmethod
    def create(cls, name: str) -> "IPattern":
        try:
            return cls._registry[name]()
        except KeyError:
            raise ValueError(f"unknown pattern {name!r}; known: {', '.join(cls.registered())}") from None

    @classmethod
    def create_all(cls, names: Optional[Iterable[str]] = None) -> List["IPattern"]:
        return [cls.create(n) for n in (names if names is not None else cls.registered())]

    def recognize(self, ctx: RecognitionContext, vessel: int) -> List[CeInstance]:
        return []

    def recognize_cell(self, cell: Cell, fluents: Mapping[int, VesselFluents], cfg: CeConfig, q: int) -> List[CeInstance]:
        return []

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"
