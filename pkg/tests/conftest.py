import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import pytest

from scw import workbench


@pytest.fixture(scope="session")
def bidouble_wb():
    return workbench.Workbench(workbench.load_bundled("inoue_bidouble.json"), seed=0)


@pytest.fixture(scope="session")
def z2z4_wb():
    return workbench.Workbench(workbench.load_bundled("inoue_z2z4.json"), seed=0)


@pytest.fixture(scope="session")
def surface_w(bidouble_wb):
    return bidouble_wb.surface("W")


@pytest.fixture(scope="session")
def surface_y(z2z4_wb):
    return z2z4_wb.surface("Y")


@pytest.fixture(scope="session")
def cover_g(bidouble_wb):
    return bidouble_wb.cover("inoue_bidouble")


@pytest.fixture(scope="session")
def cover_h(z2z4_wb):
    return z2z4_wb.cover("inoue_z2z4")
