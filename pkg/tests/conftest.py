import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wreathbrauer import catalog  # noqa: E402
from wreathbrauer.wreathed import build_wreathed  # noqa: E402


@functools.lru_cache(maxsize=None)
def marked(ident):
    return catalog.load(ident)


@functools.lru_cache(maxsize=None)
def wreathed(n):
    return build_wreathed(n)


@pytest.fixture(scope="session")
def W2():
    return wreathed(2)


@pytest.fixture(scope="session")
def W3():
    return wreathed(3)


@pytest.fixture(scope="session")
def affine():
    return marked("c4c4-s3")


@pytest.fixture(scope="session")
def gl25():
    return marked("gl2-5")


@functools.lru_cache(maxsize=None)
def verify_report(ident, ident2):
    from wreathbrauer.verify import verify_marked
    return verify_marked(marked(ident), marked(ident2))
