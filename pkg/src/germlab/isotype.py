"""Character linear system and isotype formulas.

Inputs are keyed by conjugacy class, which makes constancy on classes true
by construction; per-element input is rejected by design (there is no way to
express it).  All arithmetic is exact rational.  Integrality of the outputs
that must be integers for honest group actions is a *validation signal*: the
functions raise InconsistentDataError carrying the exact offending value
rather than rounding.

Character values here are rational, so complex conjugation in the formulas
is the identity; generic tables with irrational entries are out of scope and
rejected at load time by the table parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import IncompleteDataError, InconsistentDataError, InvalidInputError
from .symrep import CharacterTable


@dataclass(frozen=True)
class EulerOnly:
    """Per-class fixed-point datum: just the Euler characteristic."""

    euler: int


@dataclass(frozen=True)
class SingleDim:
    """Per-class datum when fixed loci have reduced homology in one dimension."""

    dim: int
    betti: int


@dataclass(frozen=True)
class IcisDatum:
    """Per-class datum for the tau-Milnor formula.

    dim is the dimension entering the sign (-1)^(d - dim); for an ICIS fixed
    locus it is its dimension, for a fixed locus that degenerated to isolated
    points feed its actual dimension 0 and mu_tilde = -beta0.  The field is a
    plain integer so callers exploring the formula may feed negative expected
    dimensions directly.
    """

    dim: int
    mu_tilde: int


HOLDS = "holds"


@dataclass(frozen=True)
class ConservationVerdict:
    status: str  # "holds" or "violated"
    difference: Fraction = Fraction(0)
    semicontinuity_ok: bool = True

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


def _check_classes(table: CharacterTable, data: Mapping[str, object]):
    for label in data:
        if label not in table.class_labels:
            raise InvalidInputError(f"datum for unknown class {label!r}")
    for label in table.class_labels:
        if label not in data:
            raise InvalidInputError(f"missing datum for class {label!r}")
    if table.class_labels[table.identity_index] not in data:
        raise InvalidInputError("identity class datum is required")


def solve_character_system(
    table: CharacterTable, b: Mapping[str, Fraction | int]
) -> dict[str, Fraction]:
    """Solve sum_tau chi_tau(sigma) x_tau = b_sigma for the x_tau.

    The solution is x_tau = (1/|G|) sum_classes size * chi_tau * b; systems
    keyed by class are always solvable, and substituting back reproduces b
    exactly (see evaluate_class_function).
    """
    _check_classes(table, b)
    out: dict[str, Fraction] = {}
    for label, row in zip(table.irrep_labels, table.values):
        acc = Fraction(0)
        for cls, size, chi in zip(table.class_labels, table.class_sizes, row):
            acc += size * chi * Fraction(b[cls])
        out[label] = acc / table.group_order
    return out


def evaluate_class_function(
    table: CharacterTable, x: Mapping[str, Fraction | int]
) -> dict[str, Fraction]:
    """Forward evaluation b_sigma = sum_tau chi_tau(sigma) x_tau per class."""
    out: dict[str, Fraction] = {}
    for j, cls in enumerate(table.class_labels):
        acc = Fraction(0)
        for label, row in zip(table.irrep_labels, table.values):
            acc += row[j] * Fraction(x[label])
        out[cls] = acc
    return out


def tau_characteristic(
    table: CharacterTable, data: Mapping[str, EulerOnly], tau: str
) -> Fraction:
    """chi_tau(M) = (1/|G|) sum size * chi_tau * chi_Top(M^sigma)."""
    _check_classes(table, data)
    row = table.row(tau)
    acc = Fraction(0)
    for cls, size, chi in zip(table.class_labels, table.class_sizes, row):
        acc += size * chi * data[cls].euler
    return acc / table.group_order


def tau_betti_single_dim(
    table: CharacterTable,
    data: Mapping[str, SingleDim],
    tau: str,
    d: int,
) -> Fraction:
    """Top tau-Betti number when every fixed locus has one homology dimension.

    beta_d^tau(M) = (1/|G|) sum size * (-1)^(d - d^sigma) * chi_tau * beta.
    Raises InconsistentDataError (with the exact value attached) when the
    result is negative or not an integer, which cannot happen for data coming
    from an honest action.
    """
    _check_classes(table, data)
    identity_label = table.class_labels[table.identity_index]
    if data[identity_label].dim != d:
        raise InvalidInputError("identity-class dimension must equal the top dimension d")
    row = table.row(tau)
    acc = Fraction(0)
    for cls, size, chi in zip(table.class_labels, table.class_sizes, row):
        datum = data[cls]
        sign = -1 if (d - datum.dim) % 2 else 1
        acc += size * sign * chi * datum.betti
    value = acc / table.group_order
    if value.denominator != 1 or value < 0:
        raise InconsistentDataError(
            f"beta_{d}^{tau} is {value}, not a non-negative integer: inconsistent input",
            value=value,
        )
    return value


def mu_tau(
    table: CharacterTable,
    data: Mapping[str, IcisDatum],
    tau: str,
    d: int,
    allow_nonintegral: bool = False,
) -> Fraction:
    """tau-Milnor number from per-class (dimension, extended-mu) data.

    mu^tau = (1/|G|) sum size * (-1)^(d - dim) * chi_tau * mu_tilde.  The
    result must be a non-negative integer for honest inputs; violations raise
    unless allow_nonintegral is set (the exact value rides on the exception
    either way).
    """
    _check_classes(table, data)
    identity_label = table.class_labels[table.identity_index]
    if data[identity_label].dim != d:
        raise InvalidInputError("identity-class dimension must equal d")
    row = table.row(tau)
    acc = Fraction(0)
    for cls, size, chi in zip(table.class_labels, table.class_sizes, row):
        datum = data[cls]
        sign = -1 if (d - datum.dim) % 2 else 1
        acc += size * sign * chi * datum.mu_tilde
    value = acc / table.group_order
    if not allow_nonintegral and (value.denominator != 1 or value < 0):
        raise InconsistentDataError(
            f"mu^{tau} is {value}, not a non-negative integer: inconsistent input",
            value=value,
        )
    return value


def check_conservation(
    mu_tau_x0: Fraction | int,
    betti_tau_xt: Fraction | int,
    local_mu_taus: Sequence[Fraction | int],
    d: int,
    beta0_tau_xt: Fraction | int | None = None,
    beta0_tau_x0: Fraction | int | None = None,
) -> ConservationVerdict:
    """Conservation of the tau-Milnor number along a family, from user data.

    d > 0:  mu^tau(X_0) = beta_d^tau(X_t) + sum_x mu^tau(X_t; x)
    d == 0: mu^tau(X_0) = beta_0^tau(X_t) + sum_x mu^tau(X_t; x) - beta_0^tau(X_0)

    Also reports whether upper semi-continuity mu^tau(X_0) >= mu^tau(X_t; x)
    holds for every supplied local value.
    """
    left = Fraction(mu_tau_x0)
    right = Fraction(betti_tau_xt) + sum(Fraction(v) for v in local_mu_taus)
    if d == 0:
        if beta0_tau_xt is None or beta0_tau_x0 is None:
            raise IncompleteDataError("d = 0 conservation needs both beta_0^tau terms")
        right = Fraction(beta0_tau_xt) + sum(Fraction(v) for v in local_mu_taus) - Fraction(
            beta0_tau_x0
        )
    elif d < 0:
        raise InvalidInputError("family dimension must be >= 0")
    semicontinuous = all(Fraction(v) <= left for v in local_mu_taus)
    if left == right:
        return ConservationVerdict(HOLDS, semicontinuity_ok=semicontinuous)
    return ConservationVerdict("violated", difference=left - right, semicontinuity_ok=semicontinuous)


# -- fixed-point data files --------------------------------------------------
#
# One record per line:   class <label> euler <chi>
#                        class <label> single <dim> <betti>
#                        class <label> icis <dim> <mu_tilde>
# plus an optional       top_dim <d>
# line.  Mixing kinds in one file is rejected.


@dataclass(frozen=True)
class FixedPointFile:
    kind: str  # "euler" | "single" | "icis"
    data: dict[str, object]
    top_dim: int | None


def fixed_point_data_from_text(text: str) -> FixedPointFile:
    kind: str | None = None
    data: dict[str, object] = {}
    top_dim: int | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "top_dim":
            top_dim = int(fields[1])
            continue
        if fields[0] != "class" or len(fields) < 4:
            raise InvalidInputError(f"bad fixed-point record: {line!r}")
        label, this_kind = fields[1], fields[2]
        if kind is None:
            kind = this_kind
        elif kind != this_kind:
            raise InvalidInputError("mixed record kinds in one fixed-point file")
        if this_kind == "euler":
            data[label] = EulerOnly(int(fields[3]))
        elif this_kind == "single":
            if len(fields) != 5:
                raise InvalidInputError(f"bad single record: {line!r}")
            data[label] = SingleDim(int(fields[3]), int(fields[4]))
        elif this_kind == "icis":
            if len(fields) != 5:
                raise InvalidInputError(f"bad icis record: {line!r}")
            data[label] = IcisDatum(int(fields[3]), int(fields[4]))
        else:
            raise InvalidInputError(f"unknown fixed-point record kind {this_kind!r}")
    if kind is None:
        raise InvalidInputError("empty fixed-point data file")
    return FixedPointFile(kind, data, top_dim)
