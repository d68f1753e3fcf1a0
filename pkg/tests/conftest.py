import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from segallab.cofcat import CofStructure  # noqa: E402
from segallab.fixtures import ps_fixture  # noqa: E402


@pytest.fixture(scope="session")
def ps2() -> CofStructure:
    """Bounded PS(2), shared by the whole session."""
    return ps_fixture(2)


@pytest.fixture(scope="session")
def ps3() -> CofStructure:
    return ps_fixture(3)
