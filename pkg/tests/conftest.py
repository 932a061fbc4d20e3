import pytest

from src.core.config import reset_config
from src.core.exactmath import FunctionVector, LinearForm
from src.core.orders import CoeffOrder
from src.fusion.sgraph import build_sgraph
from src.utils.logger import get_logger


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Every test gets its own configuration directory."""
    monkeypatch.setenv("SGX_HOME", str(tmp_path / "home"))
    reset_config()
    yield tmp_path / "home"
    get_logger().disable_stderr()
    reset_config()


def fv(*coords):
    """FunctionVector from {index: coefficient} maps, e.g. fv({1: 1}, {})."""
    return FunctionVector(tuple(LinearForm.from_mapping(c) for c in coords))


@pytest.fixture
def graph_12():
    return build_sgraph(CoeffOrder((1, 2)))


@pytest.fixture
def graph_21():
    return build_sgraph(CoeffOrder((2, 1)))


@pytest.fixture
def graph_132():
    return build_sgraph(CoeffOrder((1, 3, 2)))
