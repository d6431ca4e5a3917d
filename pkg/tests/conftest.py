import math

import numpy as np
import pytest

from ptcorr.modules.xymodel.schemas import XYParams

# J = 4.5, gamma = 0.05, B = 1.5: the model behind the thermal and PT recipes
FIG_MODEL = XYParams(J=4.5, gamma=0.05, B=1.5)
PHIS = (math.pi / 6, math.pi / 4, math.pi / 3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def fig_model():
    return FIG_MODEL
