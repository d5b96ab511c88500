"""
SSH and Kitaev (BdG) matrices under open boundary conditions.

Both chains can carry a PT-symmetric imaginary on-site potential: end caps
(gain on the first site, loss on the last) or a staggered pattern
i*gamma*(-1)^n over the whole chain. Energies are in units of the hopping t.

Kitaev basis ordering is (particle 1..N, hole 1..N). The complex on-site term
enters the hole block with the opposite sign, so a gain of an electron is an
equal loss of a hole at the same site.
"""

import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Union

import numpy as np

from ptchain.core.constants import (
    DEFAULT_HOPPING,
    DEFAULT_KITAEV_PAIRING,
)
from ptchain.core.errors import ValidationError
from ptchain.core.validation import (
    check_even,
    check_finite,
    check_int_at_least,
    check_interval,
    check_non_negative,
    check_positive,
    raise_if_errors,
)
from ptchain.physics.numeric import ComplexMatrix, ComplexVector


class ModelKind(str, Enum):
    SSH = "ssh"
    KITAEV = "kitaev"


class PotentialKind(str, Enum):
    NONE = "none"
    END_CAPS = "u1"
    STAGGERED = "u2"

    @classmethod
    def parse(cls, name: str) -> "PotentialKind":
        """Accept 'none', 'u1'/'endcaps', 'u2'/'staggered' (case-insensitive)."""
        aliases = {
            "none": cls.NONE,
            "u1": cls.END_CAPS,
            "endcaps": cls.END_CAPS,
            "end-caps": cls.END_CAPS,
            "u2": cls.STAGGERED,
            "staggered": cls.STAGGERED,
        }
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise ValidationError(
                f"Unknown potential {name!r}; use one of none, u1, u2"
            ) from None


@dataclass(frozen=True)
class SshParams:
    """SSH chain: hoppings t(1 -/+ delta cos theta) alternating along N sites."""

    n_sites: int
    t: float = DEFAULT_HOPPING
    delta: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        raise_if_errors(
            check_int_at_least("n_sites", self.n_sites, 2)
            + check_even("n_sites", self.n_sites, "the SSH dimer pattern needs complete dimers")
            + check_positive("t", self.t)
            + check_interval("|delta|", abs(self.delta), high=1.0)
            + check_finite("theta", self.theta),
            "SSH parameters",
        )

    @property
    def kind(self) -> ModelKind:
        return ModelKind.SSH

    def hopping_pair(self) -> tuple[float, float]:
        """Return (t-, t+): intra-dimer and inter-dimer hopping."""
        dimerization = self.delta * math.cos(self.theta)
        return self.t * (1.0 - dimerization), self.t * (1.0 + dimerization)


@dataclass(frozen=True)
class KitaevParams:
    """Kitaev chain: hopping t, p-wave pairing delta_pair, chemical potential mu."""

    n_sites: int
    t: float = DEFAULT_HOPPING
    delta_pair: float = DEFAULT_KITAEV_PAIRING
    mu: float = 0.0

    def __post_init__(self):
        raise_if_errors(
            check_int_at_least("n_sites", self.n_sites, 1)
            + check_positive("t", self.t)
            + check_finite("delta_pair", self.delta_pair)
            + check_finite("mu", self.mu),
            "Kitaev parameters",
        )

    @property
    def kind(self) -> ModelKind:
        return ModelKind.KITAEV


@dataclass(frozen=True)
class GainLoss:
    """PT-symmetric imaginary potential of strength gamma."""

    kind: PotentialKind = PotentialKind.NONE
    gamma: float = 0.0

    def __post_init__(self):
        errors = check_non_negative("gamma", self.gamma)
        if self.kind is PotentialKind.NONE and not errors and self.gamma != 0.0:
            errors.append("gamma > 0 needs a potential kind (u1 or u2)")
        raise_if_errors(errors, "Gain/loss potential")

    @property
    def effective_kind(self) -> PotentialKind:
        """A zero strength behaves exactly like no potential."""
        return PotentialKind.NONE if self.gamma == 0.0 else self.kind


ChainParams = Union[SshParams, KitaevParams]


@dataclass(frozen=True)
class ModelSpec:
    """Which chain, its parameters, and the gain/loss potential (H = H0 + U)."""

    model: ChainParams
    potential: GainLoss = field(default_factory=GainLoss)

    def __post_init__(self):
        if not isinstance(self.model, (SshParams, KitaevParams)):
            raise ValidationError(f"Unsupported model parameters: {self.model!r}")
        raise_if_errors(
            _potential_errors(self.potential.kind, self.model.n_sites), "Model"
        )

    @property
    def kind(self) -> ModelKind:
        return self.model.kind

    @property
    def n_sites(self) -> int:
        return self.model.n_sites

    @property
    def dimension(self) -> int:
        """Matrix dimension: N for SSH, 2N for the Nambu-doubled Kitaev chain."""
        return self.n_sites if self.kind is ModelKind.SSH else 2 * self.n_sites

    def with_parameter(self, name: str, value: float) -> "ModelSpec":
        """
        Return a copy with one swept parameter replaced.

        Args:
            name: 'theta' (SSH only), 'mu' (Kitaev only) or 'gamma'
            value: New parameter value
        """
        if name == "gamma":
            if self.potential.kind is PotentialKind.NONE:
                raise ValidationError("A gamma axis needs a potential kind (u1 or u2)")
            return dataclasses.replace(
                self, potential=dataclasses.replace(self.potential, gamma=value)
            )
        if name == "theta" and isinstance(self.model, SshParams):
            return dataclasses.replace(
                self, model=dataclasses.replace(self.model, theta=value)
            )
        if name == "mu" and isinstance(self.model, KitaevParams):
            return dataclasses.replace(
                self, model=dataclasses.replace(self.model, mu=value)
            )
        raise ValidationError(
            f"Parameter {name!r} cannot be varied for the {self.kind.value} model"
        )

    def to_dict(self) -> Dict[str, Any]:
        """Plain representation for manifests."""
        return {
            "model": self.kind.value,
            "parameters": dataclasses.asdict(self.model),
            "potential": {
                "kind": self.potential.kind.value,
                "gamma": self.potential.gamma,
            },
        }


def _potential_errors(kind: PotentialKind, n_sites: int) -> list[str]:
    errors = []
    if kind is PotentialKind.END_CAPS and n_sites < 2:
        errors.append(f"the end-cap potential needs n_sites >= 2, got {n_sites}")
    if kind is PotentialKind.STAGGERED:
        errors += check_even(
            "n_sites", n_sites, "a staggered potential on an odd chain loses PT symmetry"
        )
    return errors


def potential_diagonal(kind: PotentialKind, gamma: float, n_sites: int) -> ComplexVector:
    """
    On-site values of the gain/loss potential.

    Args:
        kind: Potential shape
        gamma: Strength, >= 0
        n_sites: Chain length N

    Returns:
        Length-N complex vector. End caps give (+i gamma, 0, ..., 0, -i gamma);
        staggered gives i gamma (-1)^n for 1-based n, so site 1 is a loss.

    Raises:
        ValidationError: Staggered on odd N, end caps on N < 2, negative gamma
    """
    raise_if_errors(
        check_int_at_least("n_sites", n_sites, 1)
        + check_non_negative("gamma", gamma)
        + _potential_errors(kind, n_sites),
        "Potential",
    )
    d = np.zeros(n_sites, dtype=np.complex128)
    if kind is PotentialKind.END_CAPS:
        d[0] = 1j * gamma
        d[-1] = -1j * gamma
    elif kind is PotentialKind.STAGGERED:
        signs = np.where(np.arange(1, n_sites + 1) % 2 == 0, 1.0, -1.0)
        d[:] = 1j * gamma * signs
    return d


def _diagonal(spec: ModelSpec) -> ComplexVector:
    return potential_diagonal(spec.potential.effective_kind, spec.potential.gamma, spec.n_sites)


def build_ssh(spec: ModelSpec) -> ComplexMatrix:
    """
    N x N SSH matrix: off-diagonal t- on bonds (1,2), (3,4), ... and t+ on
    bonds (2,3), (4,5), ...; potential on the diagonal; no wrap-around term.
    """
    params = spec.model
    if not isinstance(params, SshParams):
        raise ValidationError("build_ssh needs an SSH model specification")

    t_minus, t_plus = params.hopping_pair()
    n = params.n_sites
    bonds = np.where(np.arange(n - 1) % 2 == 0, t_minus, t_plus).astype(np.complex128)

    m = np.diag(_diagonal(spec))
    m += np.diag(bonds, 1) + np.diag(bonds, -1)
    return m


def build_kitaev_bdg(spec: ModelSpec, pairing_sign: int = 1) -> ComplexMatrix:
    """
    2N x 2N Bogoliubov-de Gennes matrix in the (particle, hole) basis.

    Blocks: particle-particle mu + d_n on the diagonal and t between
    neighbours; hole-hole is its negative; particle-hole and hole-particle
    both carry -i delta above and +i delta below the diagonal.

    Args:
        spec: Kitaev model specification
        pairing_sign: +1, or -1 for the opposite pairing gauge
    """
    params = spec.model
    if not isinstance(params, KitaevParams):
        raise ValidationError("build_kitaev_bdg needs a Kitaev model specification")
    if pairing_sign not in (1, -1):
        raise ValidationError(f"pairing_sign must be +1 or -1, got {pairing_sign!r}")

    n = params.n_sites
    hopping = np.full(n - 1, params.t, dtype=np.complex128)
    particle = np.diag(params.mu + _diagonal(spec))
    particle += np.diag(hopping, 1) + np.diag(hopping, -1)

    pairing = np.full(n - 1, 1j * params.delta_pair * pairing_sign, dtype=np.complex128)
    anomalous = np.diag(-pairing, 1) + np.diag(pairing, -1)

    return np.block([[particle, anomalous], [anomalous, -particle]])


def build_matrix(spec: ModelSpec) -> ComplexMatrix:
    """Build the matrix for either chain."""
    if spec.kind is ModelKind.SSH:
        return build_ssh(spec)
    return build_kitaev_bdg(spec)


def parity_matrix(spec: ModelSpec) -> np.ndarray:
    """Site reversal n -> N+1-n, applied within each Nambu block for Kitaev."""
    reversal = np.eye(spec.n_sites)[::-1]
    if spec.kind is ModelKind.SSH:
        return reversal
    return np.kron(np.eye(2), reversal)


def chiral_matrix(n_sites: int) -> np.ndarray:
    """S = diag(+1, -1, +1, ...); S conj(M) S = -M for every SSH matrix."""
    return np.diag(np.where(np.arange(n_sites) % 2 == 0, 1.0, -1.0))


def nambu_exchange_matrix(n_sites: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]]; J M = -M J for every Kitaev BdG matrix."""
    identity = np.eye(n_sites)
    zero = np.zeros((n_sites, n_sites))
    return np.block([[zero, identity], [-identity, zero]])
