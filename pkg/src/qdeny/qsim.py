"""Sparse statevector simulator for the encryption circuits.

States live over named bit registers packed into integer basis labels.
Everything is a value: operations return new states and never mutate their
inputs, so trials can run on any number of threads without sharing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .bitops import dot, mask

PRUNE_EPS = 1e-12
NORM_TOL = 1e-9
MAX_LAYOUT_BITS = 40

_SQRT_HALF = math.sqrt(0.5)


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class RegisterLayout:
    """Named bit registers with fixed offsets inside a packed basis label."""

    fields: tuple[tuple[str, int], ...]

    def __init__(self, fields: Sequence[tuple[str, int]]):
        names = [name for name, _ in fields]
        if len(set(names)) != len(names):
            raise LayoutError("duplicate register names")
        if any(width <= 0 for _, width in fields):
            raise LayoutError("register widths must be positive")
        total = sum(width for _, width in fields)
        if total > MAX_LAYOUT_BITS:
            raise LayoutError(
                f"layout is {total} bits; named registers are capped at {MAX_LAYOUT_BITS}"
            )
        object.__setattr__(self, "fields", tuple((n, int(w)) for n, w in fields))

    @property
    def total_width(self) -> int:
        return sum(width for _, width in self.fields)

    def width(self, name: str) -> int:
        for n, w in self.fields:
            if n == name:
                return w
        raise LayoutError(f"no register named {name!r}")

    def offset(self, name: str) -> int:
        off = 0
        for n, w in self.fields:
            if n == name:
                return off
            off += w
        raise LayoutError(f"no register named {name!r}")

    def pack(self, values: Mapping[str, int]) -> int:
        label = 0
        for name, value in values.items():
            w = self.width(name)
            if value >> w:
                raise LayoutError(f"value {value} does not fit register {name!r} ({w} bits)")
            label |= value << self.offset(name)
        return label

    def extract(self, label: int, name: str) -> int:
        return (label >> self.offset(name)) & mask(self.width(name))

    def set_field(self, label: int, name: str, value: int) -> int:
        off, w = self.offset(name), self.width(name)
        if value >> w:
            raise LayoutError(f"value {value} does not fit register {name!r} ({w} bits)")
        return (label & ~(mask(w) << off)) | (value << off)


def kahan_sum(values: Iterable[float]) -> float:
    """Compensated sum; used so large norm/probability sums are reproducible."""
    return math.fsum(values)


@dataclass
class SparseState:
    """Map from packed basis labels to complex amplitudes.

    Amplitudes below PRUNE_EPS in magnitude are dropped by :meth:`pruned`.
    A state is either normalized or explicitly carried sub-normalized (after
    :func:`project`); norm bookkeeping is the caller's job in the latter case.
    """

    layout: RegisterLayout
    amps: dict[int, complex] = field(default_factory=dict)

    def items_sorted(self) -> list[tuple[int, complex]]:
        return sorted(self.amps.items())

    def norm_sq(self) -> float:
        return kahan_sum(abs(a) ** 2 for _, a in self.items_sorted())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def normalized(self) -> "SparseState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return SparseState(self.layout, {l: a / n for l, a in self.amps.items()})

    def pruned(self, eps: float = PRUNE_EPS) -> "SparseState":
        return SparseState(self.layout, {l: a for l, a in self.amps.items() if abs(a) >= eps})

    def check_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm_sq() - 1.0) > tol:
            raise ValueError(f"state is not normalized: |psi|^2 = {self.norm_sq()!r}")

    def dump(self) -> list[tuple[str, float, float]]:
        """Stable dump format: (label-hex, re, im) triples sorted by label."""
        return [(format(l, "x"), a.real, a.imag) for l, a in self.items_sorted()]


def inner(psi1: SparseState, psi2: SparseState) -> complex:
    """<psi1|psi2> over the common support."""
    small, big = (psi1.amps, psi2.amps) if len(psi1.amps) <= len(psi2.amps) else (psi2.amps, psi1.amps)
    terms = []
    for label in sorted(small):
        if label in big:
            terms.append(psi1.amps[label].conjugate() * psi2.amps[label])
    re = kahan_sum(t.real for t in terms)
    im = kahan_sum(t.imag for t in terms)
    return complex(re, im)


def basis_state(layout: RegisterLayout, values: Mapping[str, int]) -> SparseState:
    return SparseState(layout, {layout.pack(values): 1.0 + 0.0j})


# ---------------------------------------------------------------------------
# Range superpositions
# ---------------------------------------------------------------------------


def standard_layout(key) -> RegisterLayout:
    """The (b, x, y) layout matching a claw-free / injective-twin key."""
    return RegisterLayout([("b", 1), ("x", key.n), ("y", key.image_bits)])


def prepare_range_superposition(key, layout: RegisterLayout | None = None) -> SparseState:
    """Equal superposition over (b, x) with the image register evaluated.

    Exact families place amplitude 1/sqrt(2 * 2^n) on every supported triple
    (b, x, eval(k, b, x)); works unchanged for both the claw-free family and
    its injective twin, which is what the injective-invariance experiments
    rely on.
    """
    from . import tcf

    if layout is None:
        layout = standard_layout(key)
    if layout.width("x") != key.n or layout.width("y") != key.image_bits:
        raise LayoutError("layout widths do not match the key")
    if key.n > 20:
        raise LayoutError("full range superposition is desk-scale only (n <= 20)")
    amp = complex(1.0 / math.sqrt(2 * (1 << key.n)))
    amps: dict[int, complex] = {}
    for b in (0, 1):
        for x in range(1 << key.n):
            y = tcf.eval_f(key, b, x)
            amps[layout.pack({"b": b, "x": x, "y": y})] = amp
    return SparseState(layout, amps)


# ---------------------------------------------------------------------------
# Gates
# ---------------------------------------------------------------------------


def _hadamard_bit(state: SparseState, bit_pos: int) -> SparseState:
    out: dict[int, complex] = {}
    flip = 1 << bit_pos
    for label, amp in state.amps.items():
        a = amp * _SQRT_HALF
        base = label & ~flip
        # new bit 0 keeps sign; new bit 1 gets (-1)^{old bit}
        out[base] = out.get(base, 0.0) + a
        sign = -a if label & flip else a
        out[base | flip] = out.get(base | flip, 0.0) + sign
    return SparseState(state.layout, out)


def hadamard_all(state: SparseState, registers: Sequence[str]) -> SparseState:
    """Hadamard every qubit of the named registers."""
    out = state
    for name in registers:
        off = state.layout.offset(name)
        for i in range(state.layout.width(name)):
            out = _hadamard_bit(out, off + i)
    return out.pruned()


def phase_query_concrete(
    state: SparseState,
    h: Sequence[int] | Callable[[int], int],
    x_register: str,
    e_register: str,
) -> SparseState:
    """Phase-oracle query against a concrete boolean function.

    Multiplies each basis amplitude by (-1)^(e * H(x)). Involution for any H.
    """
    lookup = h.__getitem__ if not callable(h) else h
    layout = state.layout
    out: dict[int, complex] = {}
    for label, amp in state.amps.items():
        e = layout.extract(label, e_register)
        x = layout.extract(label, x_register)
        out[label] = -amp if (e & lookup(x)) & 1 else amp
    return SparseState(layout, out)


def apply_dense_unitary(state: SparseState, registers: Sequence[str], matrix) -> SparseState:
    """Apply a dense unitary over the joint space of the named registers.

    The registers need not be contiguous. Basis index of the matrix is the
    concatenation of register values, first register least significant.
    Label bits outside the registers are untouched, so this works on states
    that carry extra (e.g. oracle) bits above the layout.
    """
    import numpy as np

    layout = state.layout
    offs = [(layout.offset(r), layout.width(r)) for r in registers]
    dim = 1 << sum(w for _, w in offs)
    if matrix.shape != (dim, dim):
        raise LayoutError("matrix shape does not match register widths")

    clear = 0
    for off, w in offs:
        clear |= mask(w) << off

    def split(label: int) -> tuple[int, int]:
        idx = 0
        shift = 0
        for off, w in offs:
            idx |= ((label >> off) & mask(w)) << shift
            shift += w
        return label & ~clear, idx

    def join(rest: int, idx: int) -> int:
        label = rest
        shift = 0
        for off, w in offs:
            label |= ((idx >> shift) & mask(w)) << off
            shift += w
        return label

    groups: dict[int, "np.ndarray"] = {}
    for label, amp in state.amps.items():
        rest, idx = split(label)
        vec = groups.get(rest)
        if vec is None:
            vec = np.zeros(dim, dtype=complex)
            groups[rest] = vec
        vec[idx] += amp
    out: dict[int, complex] = {}
    for rest in sorted(groups):
        new_vec = matrix @ groups[rest]
        for idx in np.nonzero(np.abs(new_vec) >= PRUNE_EPS)[0]:
            out[join(rest, int(idx))] = complex(new_vec[idx])
    return SparseState(state.layout, out)


# ---------------------------------------------------------------------------
# Measurement and projection
# ---------------------------------------------------------------------------


@dataclass
class MeasurementOutcome:
    register: str
    value: int
    probability: float
    post_state: SparseState


def project(state: SparseState, register: str, value: int) -> tuple[SparseState, float]:
    """Unnormalized projection of a register onto a value, plus its weight.

    The squared norms of the projections over all values of the register sum
    to the squared norm of the input.
    """
    layout = state.layout
    kept = {l: a for l, a in state.amps.items() if layout.extract(l, register) == value}
    sub = SparseState(layout, kept)
    return sub, sub.norm_sq()


def branch_weights(state: SparseState, register: str) -> dict[int, float]:
    layout = state.layout
    buckets: dict[int, list[float]] = {}
    for label, amp in state.items_sorted():
        buckets.setdefault(layout.extract(label, register), []).append(abs(amp) ** 2)
    return {v: kahan_sum(terms) for v, terms in sorted(buckets.items())}


def measure(state: SparseState, register: str, rng) -> MeasurementOutcome:
    """Standard basis measurement of one register with Born sampling.

    rng is a numpy Generator; the outcome is drawn from the exact marginal,
    and the post state is the renormalized projection.
    """
    state.check_normalized()
    weights = branch_weights(state, register)
    u = rng.random()
    acc = 0.0
    values = sorted(weights)
    outcome = values[-1]
    for v in values:
        acc += weights[v]
        if u < acc:
            outcome = v
            break
    sub, p = project(state, register, outcome)
    return MeasurementOutcome(register, outcome, p, sub.normalized())


def marginal_on(state: SparseState, registers: Sequence[str]) -> dict[tuple[int, ...], float]:
    """Exact joint outcome distribution of the named registers."""
    layout = state.layout
    buckets: dict[tuple[int, ...], list[float]] = {}
    for label, amp in state.items_sorted():
        key = tuple(layout.extract(label, r) for r in registers)
        buckets.setdefault(key, []).append(abs(amp) ** 2)
    return {k: kahan_sum(v) for k, v in sorted(buckets.items())}


def restrict_to(state: SparseState, registers: Sequence[str]) -> SparseState:
    """Rebuild the state over a sub-layout, keyed by the named registers only.

    Only meaningful when the discarded registers are classical (constant over
    the support); raises otherwise since tracing out entangled registers does
    not yield a pure state.
    """
    layout = state.layout
    keep = [(r, layout.width(r)) for r in registers]
    dropped = [n for n, _ in layout.fields if n not in registers]
    seen = {tuple(layout.extract(l, r) for r in dropped) for l in state.amps}
    if len(seen) > 1:
        raise ValueError("cannot restrict: discarded registers are not classical")
    new_layout = RegisterLayout(keep)
    amps: dict[int, complex] = {}
    for label, amp in state.amps.items():
        amps[new_layout.pack({r: layout.extract(label, r) for r in registers})] = amp
    return SparseState(new_layout, amps)
