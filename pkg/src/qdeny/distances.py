"""Statistical and quantum distance utilities shared by all experiments.

Densities are finite probability mass functions keyed by canonical byte-string
labels and stored sorted, so every float accumulation happens in a fixed
order. Sums use compensated accumulation throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .qsim import SparseState, kahan_sum

MASS_TOL = 1e-12
NORM_TOL = 1e-9


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class Density:
    """Probability density on a finite label set.

    Labels are byte strings; masses are nonnegative and sum to 1 within
    MASS_TOL. An optional declared universe restricts which labels are legal;
    two densities can only be compared when each one's support fits inside
    the other's universe (missing labels carry mass 0).
    """

    support: tuple[bytes, ...]
    mass: tuple[float, ...]
    universe: frozenset[bytes] | None = None

    @classmethod
    def from_mapping(
        cls,
        masses: Mapping[bytes, float],
        universe: Iterable[bytes] | None = None,
    ) -> "Density":
        items = sorted(masses.items())
        labels = tuple(l for l, _ in items)
        values = tuple(float(m) for _, m in items)
        if any(m < 0.0 for m in values):
            raise DensityError("negative mass")
        if any(not math.isfinite(m) for m in values):
            raise DensityError("non-finite mass")
        total = kahan_sum(values)
        if abs(total - 1.0) > MASS_TOL:
            raise DensityError(f"masses sum to {total!r}, not 1")
        uni = frozenset(universe) if universe is not None else None
        if uni is not None and any(l not in uni for l in labels):
            raise DensityError("support label outside the declared universe")
        return cls(labels, values, uni)

    @classmethod
    def uniform(cls, labels: Iterable[bytes]) -> "Density":
        labels = sorted(set(labels))
        p = 1.0 / len(labels)
        return cls.from_mapping({l: p for l in labels})

    @classmethod
    def point(cls, label: bytes) -> "Density":
        return cls.from_mapping({label: 1.0})

    def __getitem__(self, label: bytes) -> float:
        lo, hi = 0, len(self.support)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.support[mid] < label:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.support) and self.support[lo] == label:
            return self.mass[lo]
        return 0.0

    def as_dict(self) -> dict[bytes, float]:
        return dict(zip(self.support, self.mass))


def _common_labels(f1: Density, f2: Density) -> list[bytes]:
    for a, b in ((f1, f2), (f2, f1)):
        if b.universe is not None:
            stray = [l for l in a.support if l not in b.universe]
            if stray:
                raise DensityError(f"label {stray[0]!r} cannot be unified with the other universe")
    return sorted(set(f1.support) | set(f2.support))


def hellinger_sq(f1: Density, f2: Density) -> float:
    """Squared Hellinger distance 1 - sum_x sqrt(f1(x) f2(x)), in [0, 1]."""
    labels = _common_labels(f1, f2)
    affinity = kahan_sum(math.sqrt(f1[l] * f2[l]) for l in labels)
    return min(1.0, max(0.0, 1.0 - affinity))


def tv_distance(f1: Density, f2: Density) -> float:
    """Total variation distance (1/2) sum_x |f1(x) - f2(x)|."""
    labels = _common_labels(f1, f2)
    return 0.5 * kahan_sum(abs(f1[l] - f2[l]) for l in labels)


def superposition_trace_bound(f1: Density, f2: Density) -> float:
    """Trace-distance bound sqrt(1 - (1 - H^2)^2) for amplitude encodings.

    Upper-bounds the exact trace distance between sum_x sqrt(f1(x))|x> and
    sum_x sqrt(f2(x))|x>; compare against :func:`trace_distance_pure`.
    """
    h2 = hellinger_sq(f1, f2)
    return math.sqrt(max(0.0, 1.0 - (1.0 - h2) ** 2))


def trace_distance_pure(psi1: SparseState, psi2: SparseState) -> float:
    """Exact trace distance sqrt(1 - |<psi1|psi2>|^2) between pure states."""
    from .qsim import inner

    for psi in (psi1, psi2):
        if abs(psi.norm_sq() - 1.0) > NORM_TOL:
            raise DensityError("trace_distance_pure requires normalized states")
    overlap = abs(inner(psi1, psi2)) ** 2
    return math.sqrt(max(0.0, 1.0 - min(1.0, overlap)))


def amplitude_encode(f: Density, universe: Iterable[bytes] | None = None) -> SparseState:
    """|psi_f> = sum_x sqrt(f(x)) |x> over an indexed label universe."""
    from .qsim import RegisterLayout

    labels = sorted(set(universe)) if universe is not None else list(f.support)
    width = max(1, (len(labels) - 1).bit_length())
    layout = RegisterLayout([("x", width)])
    amps = {}
    for i, l in enumerate(labels):
        m = f[l]
        if m > 0.0:
            amps[i] = complex(math.sqrt(m))
    return SparseState(layout, amps)
