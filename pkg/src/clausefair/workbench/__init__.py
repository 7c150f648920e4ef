from clausefair.workbench.config import (
    TECHNIQUE_DISPLAY,
    TECHNIQUES,
    DataPaths,
    ExperimentConfig,
    load_config,
    parse_config,
)
from clausefair.workbench.experiments import RunRecord, run_experiment
from clausefair.workbench.reporting import report_json, report_text
from clausefair.workbench.workspace import Workspace

__all__ = [
    "DataPaths",
    "ExperimentConfig",
    "RunRecord",
    "TECHNIQUES",
    "TECHNIQUE_DISPLAY",
    "Workspace",
    "load_config",
    "parse_config",
    "report_json",
    "report_text",
    "run_experiment",
]
