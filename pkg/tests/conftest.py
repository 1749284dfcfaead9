import pytest
from hypothesis import settings

from peff import config

settings.register_profile("desk", max_examples=40, deadline=None)
settings.load_profile("desk")


@pytest.fixture(autouse=True)
def desk_scale():
    with config.using(nat_size=8):
        yield
