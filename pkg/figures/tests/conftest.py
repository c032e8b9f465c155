"""Shared fixtures: input CSVs produced by the real hyplat CLI.

The plotting package only ever sees primary output through its public
command line, so the fixtures shell out to it rather than importing it.
"""

import subprocess
import sys

import pytest


def hyplat(args, out_path):
    cmd = [sys.executable, "-m", "hyplat.cli", *args, "--out", str(out_path)]
    res = subprocess.run(cmd, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    return out_path


@pytest.fixture(scope="session")
def n6_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "n6.csv"
    return hyplat(["measure", "--n", "6", "--raw-points"], path)


@pytest.fixture(scope="session")
def circle25_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "c25.csv"
    return hyplat(["measure", "--circle", "25", "--raw-points"], path)


@pytest.fixture(scope="session")
def density_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "density.csv"
    return hyplat(["density", "--grid", "1001"], path)


@pytest.fixture(scope="session")
def census_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "census.csv"
    return hyplat(["census", "--upto", "100000", "--format", "csv"], path)
