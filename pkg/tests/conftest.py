from fractions import Fraction as F

import pytest
from hypothesis import settings

from biquad.pointsearch import load_registry
from biquad.reproduce import load_examples

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

# h -> printed (F, G, H) of E(h), transcribed independently of the builder
CURVES = {
    F(16): (F(-768), F(195840), F(-16646400)),
    F(39, 16): (F(-4563, 256), F(5772195, 65536), F(-2433942225, 16777216)),
    F(23): (F(-1587), F(837936), F(-147476736)),
    F(3, 17): (F(-27, 289), F(-7560, 83521), F(-705600, 24137569)),
    F(66, 25): (F(-13068, 625), F(48756708, 390625), F(-60637092516, 244140625)),
    F(77, 3): (F(-5929, 3), F(35099680, 27), F(-207790105600, 729)),
    F(10): (F(-300), F(29700), F(-980100)),
    F(21, 8): (F(-1323, 64), F(498771, 4096), F(-62678889, 262144)),
    F(-3, 2): (F(-27, 4), F(135, 16), F(-225, 64)),
    F(-63): (F(-11907), F(47246976), F(-62492000256)),
}


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def examples():
    return load_examples()
