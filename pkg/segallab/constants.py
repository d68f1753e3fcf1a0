from pathlib import Path

TOOL_NAME = "segal-lab"
TOOL_VERSION = "0.1.0"

CONFIG_FILE = Path("segallab.json")
CATEGORY_FILE_HEADER = "segal-lab-category v1"

DEFAULT_MAX_OBJECTS = 64
DEFAULT_MAX_MORPHISMS = 4096
DEFAULT_MAX_LEVEL = 4
DEFAULT_POLICY = "skeletal"
DEFAULT_LANGUAGE = "en"
DEFAULT_SEED = 0

ENUMERATION_POLICIES = ("skeletal", "exhaustive")
MAX_SEED = 2**64 - 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DISCRETE_PULLBACK_NOTE = "discrete_pullback_note"
