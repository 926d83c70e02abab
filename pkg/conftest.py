import logging
from pathlib import Path

import pytest

from geometry_core import build_triangle, construct_scene

GOLDEN_DIR = Path(__file__).parent / "goldens"


def pytest_addoption(parser):
    parser.addoption("--update-goldens", action="store_true", default=False,
                     help="Rewrite the SVG golden files instead of comparing against them.")


@pytest.fixture
def update_goldens(request):
    return request.config.getoption("--update-goldens")


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def tri345():
    return build_triangle(3, 4)


@pytest.fixture
def scene345(tri345):
    return construct_scene(tri345)


@pytest.fixture(autouse=True)
def reset_root_handlers():
    # the CLI installs coloredlogs handlers bound to the captured stderr of one test
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
    root.setLevel(level)
