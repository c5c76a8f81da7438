import os
import sys

import pytest


@pytest.fixture(scope="session")
def core():
    """The native module, from an installed package or a build tree."""
    try:
        from ordcensus import _core

        return _core
    except ImportError:
        pass
    core_dir = os.environ.get("ORDCENSUS_CORE_DIR")
    if not core_dir:
        pytest.skip("ordcensus is not installed and ORDCENSUS_CORE_DIR is unset")
    sys.path.insert(0, core_dir)
    import _core

    return _core
