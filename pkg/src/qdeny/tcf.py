"""Trapdoor claw-free interface with two toy instantiations.

ExactClawFree: f_{k,b}(x) = P(x xor b*s) for a keyed Feistel bijection P on
n bits and a hidden nonzero offset s, so f_0 and f_1 are injective with the
same range and every image has exactly one claw (x, x xor s).

InjectiveTwin: f_{k,b}(x) = P(x || b) for a Feistel bijection P on n+1 bits,
so the two ranges are disjoint and no claws exist. chk and the range
superposition accept both families through the same call signatures, which is
the interface-parity half of injective invariance.

Claw-freeness is structural, not cryptographic, at these sizes: the offset s
lives in the key payload so that evaluation stays publicly computable. No
hardness claim is made or tested anywhere in this package.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass

from .bitops import from_bytes, mask, to_bytes

MAX_N = 24
FEISTEL_ROUNDS = 4


class FamilyTag(enum.Enum):
    EXACT_CLAW_FREE = "exact-claw-free"
    INJECTIVE_TWIN = "injective-twin"
    LATTICE_NTCF = "lattice-ntcf"


class ParameterError(ValueError):
    pass


class TrapdoorMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TcfKey:
    family_tag: FamilyTag
    n: int
    payload: bytes

    @property
    def image_bits(self) -> int:
        return self.n if self.family_tag is FamilyTag.EXACT_CLAW_FREE else self.n + 1

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=8)
        h.update(self.family_tag.value.encode())
        h.update(self.n.to_bytes(2, "little"))
        h.update(self.payload)
        return h.hexdigest()


@dataclass(frozen=True)
class Trapdoor:
    key_id: str
    family_tag: FamilyTag
    n: int
    secret: bytes


@dataclass(frozen=True)
class ClawPair:
    x0: int
    x1: int
    y: int


# ---------------------------------------------------------------------------
# Keyed small-domain bijection (alternating-split Feistel)
# ---------------------------------------------------------------------------


def _round_value(seed: bytes, rnd: int, half: int, width: int) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(seed)
    h.update(bytes([rnd]))
    h.update(half.to_bytes(4, "little"))
    return from_bytes(h.digest()) & mask(width)


def feistel_permute(seed: bytes, width: int, x: int, inverse: bool = False) -> int:
    """Bijection on `width`-bit strings; alternating-split rounds handle odd widths."""
    if width < 2:
        raise ParameterError("feistel width must be at least 2")
    lw = width // 2
    rw = width - lw
    left = x & mask(lw)
    right = x >> lw
    rounds = range(FEISTEL_ROUNDS - 1, -1, -1) if inverse else range(FEISTEL_ROUNDS)
    for rnd in rounds:
        if rnd % 2 == 0:
            left ^= _round_value(seed, rnd, right, lw)
        else:
            right ^= _round_value(seed, rnd, left, rw)
    return (right << lw) | left


# ---------------------------------------------------------------------------
# Payload encoding: perm seed (16 bytes) plus, for the claw-free family, s.
# ---------------------------------------------------------------------------


def _split_payload(key_n: int, family: FamilyTag, payload: bytes) -> tuple[bytes, int]:
    seed = payload[:16]
    s = from_bytes(payload[16:]) if family is FamilyTag.EXACT_CLAW_FREE else 0
    return seed, s


def gen(family_tag: FamilyTag, n: int, rng_seed: int) -> tuple[TcfKey, Trapdoor]:
    """Deterministic key generation from an integer seed."""
    if family_tag is FamilyTag.LATTICE_NTCF:
        from . import lattice_ntcf

        return lattice_ntcf.gen_key(rng_seed)
    if not 2 <= n <= MAX_N:
        raise ParameterError(f"n must be in [2, {MAX_N}], got {n}")
    import numpy as np

    rng = np.random.Generator(np.random.Philox(key=rng_seed))
    seed = rng.bytes(16)
    if family_tag is FamilyTag.EXACT_CLAW_FREE:
        s = 0
        while s == 0:
            s = int(rng.integers(0, 1 << n))
        payload = seed + to_bytes(s, n)
        secret = payload
    elif family_tag is FamilyTag.INJECTIVE_TWIN:
        payload = seed
        secret = seed
    else:
        raise ParameterError(f"unsupported family {family_tag}")
    key = TcfKey(family_tag, n, payload)
    return key, Trapdoor(key.fingerprint(), family_tag, n, secret)


def eval_f(key: TcfKey, b: int, x: int) -> int:
    """f_{k,b}(x) as a concrete image label (exact families only)."""
    if key.family_tag is FamilyTag.LATTICE_NTCF:
        raise ParameterError("lattice keys are distributional; use lattice_ntcf")
    seed, s = _split_payload(key.n, key.family_tag, key.payload)
    if x >> key.n:
        raise ParameterError("x outside the domain")
    if key.family_tag is FamilyTag.EXACT_CLAW_FREE:
        return feistel_permute(seed, key.n, x ^ (s if b else 0))
    return feistel_permute(seed, key.n + 1, x | (b << key.n))


def _check_match(td: Trapdoor, key: TcfKey | None) -> None:
    if key is not None and td.key_id != key.fingerprint():
        raise TrapdoorMismatch("trapdoor does not belong to this key")


def invert(td: Trapdoor, b: int, y: int, key: TcfKey | None = None) -> int | None:
    """Preimage of y under f_{k,b}, or None when y is out of range."""
    _check_match(td, key)
    if td.family_tag is FamilyTag.LATTICE_NTCF:
        from . import lattice_ntcf

        lkey, ltd = lattice_ntcf.unpack_trapdoor(td)
        return lattice_ntcf.ntcf_invert(lkey, ltd, b, y)
    if td.family_tag is FamilyTag.EXACT_CLAW_FREE:
        seed, s = _split_payload(td.n, td.family_tag, td.secret)
        return feistel_permute(seed, td.n, y, inverse=True) ^ (s if b else 0)
    seed = td.secret[:16]
    pre = feistel_permute(seed, td.n + 1, y, inverse=True)
    if pre >> td.n != b:
        return None
    return pre & mask(td.n)


def invert_joint(td: Trapdoor, y: int) -> tuple[int, int]:
    """Inv_G-style joint recovery (b, x) for the injective twin family."""
    if td.family_tag is not FamilyTag.INJECTIVE_TWIN:
        raise ParameterError("joint recovery is defined for the injective twin only")
    seed = td.secret[:16]
    pre = feistel_permute(seed, td.n + 1, y, inverse=True)
    return pre >> td.n, pre & mask(td.n)


def chk(key: TcfKey, b: int, x: int, y: int) -> int:
    """Public support check: 1 iff y is in the support of f_{k,b}(x)."""
    if key.family_tag is FamilyTag.LATTICE_NTCF:
        from . import lattice_ntcf

        return lattice_ntcf.ntcf_chk(lattice_ntcf.unpack_key(key), b, x, y)
    return int(eval_f(key, b, x) == y)


def claw_of(td: Trapdoor, y: int) -> ClawPair | None:
    """The unique claw (x0, x1) with a common image y, or None.

    Always None for the injective twin: disjoint ranges have no claws.
    """
    if td.family_tag is FamilyTag.INJECTIVE_TWIN:
        return None
    if td.family_tag is FamilyTag.LATTICE_NTCF:
        from . import lattice_ntcf

        return lattice_ntcf.lattice_claw_of(td, y)
    x0 = invert(td, 0, y)
    x1 = invert(td, 1, y)
    if x0 is None or x1 is None:
        return None
    return ClawPair(x0, x1, y)


def claw_offset(td: Trapdoor) -> int:
    """x0 xor x1, constant across claws for the exact claw-free family."""
    if td.family_tag is not FamilyTag.EXACT_CLAW_FREE:
        raise ParameterError("claw offset exists only for the exact claw-free family")
    _, s = _split_payload(td.n, td.family_tag, td.secret)
    return s


# ---------------------------------------------------------------------------
# Serialization: stable JSON envelope with hex payloads.
# ---------------------------------------------------------------------------


def serialize_key(key: TcfKey) -> str:
    return json.dumps(
        {"family": key.family_tag.value, "n": key.n, "payload": key.payload.hex()},
        sort_keys=True,
    )


def deserialize_key(blob: str) -> TcfKey:
    data = json.loads(blob)
    return TcfKey(FamilyTag(data["family"]), int(data["n"]), bytes.fromhex(data["payload"]))


def serialize_trapdoor(td: Trapdoor) -> str:
    return json.dumps(
        {
            "family": td.family_tag.value,
            "n": td.n,
            "key_id": td.key_id,
            "secret": td.secret.hex(),
        },
        sort_keys=True,
    )


def deserialize_trapdoor(blob: str) -> Trapdoor:
    data = json.loads(blob)
    return Trapdoor(
        data["key_id"], FamilyTag(data["family"]), int(data["n"]), bytes.fromhex(data["secret"])
    )
