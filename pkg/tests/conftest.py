import csv
import os

import pytest

from ptchain.physics.lattice import (
    GainLoss,
    KitaevParams,
    ModelSpec,
    PotentialKind,
    SshParams,
)


@pytest.fixture(autouse=True)
def clean_ptchain_env(monkeypatch):
    """Keep user settings out of the tests."""
    for name in list(os.environ):
        if name.startswith("PTCHAIN_"):
            monkeypatch.delenv(name, raising=False)


def ssh(n=200, theta=0.0, delta=0.3, t=1.0, potential="none", gamma=0.0):
    return ModelSpec(
        SshParams(n_sites=n, t=t, delta=delta, theta=theta),
        GainLoss(PotentialKind.parse(potential), gamma),
    )


def kitaev(n=200, mu=0.0, pairing=1.0, t=1.0, potential="none", gamma=0.0):
    return ModelSpec(
        KitaevParams(n_sites=n, t=t, delta_pair=pairing, mu=mu),
        GainLoss(PotentialKind.parse(potential), gamma),
    )


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
