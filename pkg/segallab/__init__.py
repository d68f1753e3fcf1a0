from .cofcat import CofStructure, FibStructure, WaldStructure, validate_cof, validate_wald
from .config import LabConfig
from .constants import CONFIG_FILE, TOOL_VERSION
from .fincat import FinCategory, FinFunctor, validate_category
from .fixtures import load_fixture
from .sconstr import TruncatedSimplicialSet, iso_s_dot

__all__ = [
    "CONFIG_FILE",
    "TOOL_VERSION",
    "CofStructure",
    "FibStructure",
    "FinCategory",
    "FinFunctor",
    "LabConfig",
    "TruncatedSimplicialSet",
    "WaldStructure",
    "iso_s_dot",
    "load_fixture",
    "validate_category",
    "validate_cof",
    "validate_wald",
]
