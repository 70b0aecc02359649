import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fatmod.workspace import Workspace


@pytest.fixture(scope="session")
def ws():
    """One shared in-memory workspace so expensive censuses build once."""
    return Workspace()
