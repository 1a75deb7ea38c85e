from typing import Dict, Type

from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.model_spec import TermKind
from ergm_calibration.exceptions.model import UnsupportedTermError


class TermRegistry:
    """Registry for statistic term implementations."""

    _terms: Dict[TermKind, Type[BaseTermStatistic]] = {}
    _instances: Dict[TermKind, BaseTermStatistic] = {}

    @classmethod
    def register(cls, kind: TermKind, term_cls: Type[BaseTermStatistic]) -> None:
        cls._terms[TermKind(kind)] = term_cls
        cls._instances.pop(TermKind(kind), None)

    @classmethod
    def get(cls, kind: TermKind) -> BaseTermStatistic:
        kind = TermKind(kind)
        if kind not in cls._instances:
            term_cls = cls._terms.get(kind)
            if not term_cls:
                raise UnsupportedTermError(f"Term '{kind}' not registered")
            cls._instances[kind] = term_cls()
        return cls._instances[kind]

    @classmethod
    def list_terms(cls) -> list[str]:
        return [kind.value for kind in cls._terms]

    def __repr__(self):
        return f"TermRegistry(terms={self.list_terms()})"
