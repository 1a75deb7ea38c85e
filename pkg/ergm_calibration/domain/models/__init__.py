from .calibration_map import CalibrationMap
from .chain import GraphSample, McmcChain, ProposalSpec
from .change_stats import ChangeStatMatrix
from .graph import Dyad, Graph, GraphBuffers, NodeAttribute
from .model_spec import ModelSpec, StatisticTerm, TermKind
from .prior import GaussianPrior
from .results import (DegeneracyReport, EnumerationResult, MpleResult,
                      ParameterSummary, PosteriorGrid, RobbinsMonroResult,
                      StageTimings, SummaryTable)

__all__ = [
    "Graph",
    "Dyad",
    "NodeAttribute",
    "GraphBuffers",
    "TermKind",
    "StatisticTerm",
    "ModelSpec",
    "ChangeStatMatrix",
    "GaussianPrior",
    "ProposalSpec",
    "McmcChain",
    "GraphSample",
    "CalibrationMap",
    "MpleResult",
    "RobbinsMonroResult",
    "ParameterSummary",
    "SummaryTable",
    "DegeneracyReport",
    "EnumerationResult",
    "PosteriorGrid",
    "StageTimings",
]
