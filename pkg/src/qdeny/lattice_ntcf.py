"""Reduced-parameter noisy trapdoor claw-free family over a power-of-two ring.

The family is the usual LWE-style one: a public vector of ring elements `a`
with a gadget trapdoor, a hidden shift `s`, and

    f'_{k,b}(x) = truncated Gaussian centered at  a*x + b*u,   u = a*s + e.

Claws are the pairs (x, x - s). The ideal f_{k,b}(x) is the same Gaussian
centered at a*x + b*(a*s); the Hellinger gap between f and f' comes entirely
from the key noise e and is computed exactly, coordinate by coordinate.

Security at desk parameters is nil. The module exists to exercise the noisy
interface clauses (support checks, two-sided inversion, range densities), and
all parameters below are implementation-calibrated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tcf import ClawPair, FamilyTag, ParameterError, TcfKey, Trapdoor

EXPLICIT_SUPPORT_CAP = 1 << 18


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeParams:
    ring_n: int          # ring degree, power of two
    q: int               # odd prime modulus
    m: int               # number of ring samples, >= gadget length + 2
    b_noise: float       # width of the fresh image noise (range superposition)
    p_key: float         # per-coordinate probability of a nonzero (+-1) key-noise entry

    def __post_init__(self):
        if self.ring_n < 1 or self.ring_n & (self.ring_n - 1) or self.ring_n > 16:
            raise ParameterError("ring_n must be a power of two <= 16")
        if self.q % 2 == 0 or self.q < 3:
            raise ParameterError("q must be an odd prime")
        if self.m < self.gadget_len + 2:
            raise ParameterError(f"m must be at least ceil(log2 q)+2 = {self.gadget_len + 2}")
        if self.b_noise * math.sqrt(self.ring_n) >= self.q / 2:
            raise ParameterError("noise width too large for the modulus")
        if not 0.0 <= self.p_key < 0.5:
            raise ParameterError("p_key must be a small probability")

    @property
    def gadget_len(self) -> int:
        return (self.q - 1).bit_length()  # ceil(log2 q) for q not a power of two

    @property
    def m_bar(self) -> int:
        return self.m - self.gadget_len

    @property
    def coeff_bits(self) -> int:
        return self.gadget_len

    @property
    def x_bits(self) -> int:
        """BitDecomp length of a domain element (ring_n coefficients)."""
        return self.ring_n * self.coeff_bits

    @property
    def y_bits(self) -> int:
        return self.m * self.ring_n * self.coeff_bits


# Frozen desk parameters. q = 5 * 2^13 + 1 (prime); gadget length 16, so the
# two extra samples carry the trapdoor. b_noise is wide enough that the two
# claw branches keep near-equal amplitudes, which is what drives the >= 0.999
# correctness of the deniable scheme at these parameters.
DESK_PARAMS = LatticeParams(ring_n=8, q=40961, m=18, b_noise=150.0, p_key=1.0 / 72.0)

# Tiny parameter sets where image supports are explicitly enumerable.
TINY_PARAMS = LatticeParams(ring_n=1, q=17, m=7, b_noise=1.0, p_key=0.0)
TINY_NOISY_PARAMS = LatticeParams(ring_n=1, q=17, m=7, b_noise=1.0, p_key=0.20)

# Candidate radius around the first gadget equation. The narrow window covers
# typical combined noise by a wide margin (>= 6 sigma); the wide one covers the
# worst case and only runs when the narrow decode fails its re-encode check.
DECODE_WINDOW = 900
DECODE_WINDOW_WIDE = 2600


# ---------------------------------------------------------------------------
# Truncated discrete Gaussian
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussParams:
    n_dim: int
    q: int
    B: float

    def __post_init__(self):
        if self.n_dim < 1:
            raise ParameterError("n_dim must be positive")
        if self.q % 2 == 0 or self.q < 3:
            raise ParameterError("q must be an odd prime")
        if self.B < 0:
            raise ParameterError("B must be nonnegative")
        if self.B * math.sqrt(self.n_dim) >= self.q / 2:
            raise ParameterError("truncation radius must stay below q/2")

    @property
    def radius(self) -> int:
        return int(math.floor(self.B))


@lru_cache(maxsize=None)
def _coord_table(q: int, b: float) -> tuple[np.ndarray, np.ndarray, float]:
    """1-D offsets, unnormalized weights exp(-pi t^2 / B^2), and their sum."""
    r = int(math.floor(b))
    ts = np.arange(-r, r + 1, dtype=np.int64)
    if b == 0.0:
        w = np.array([1.0])
        ts = np.array([0], dtype=np.int64)
    else:
        w = np.exp(-math.pi * ts.astype(float) ** 2 / b**2)
    return ts, w, float(np.sum(w))


def centered(x, q: int):
    """Representatives in (-q/2, q/2]."""
    x = np.asarray(x) % q
    return np.where(x > q // 2, x - q, x).astype(np.int64)


def gauss_density(p: GaussParams, x) -> float:
    """Pointwise mass of the truncated discrete Gaussian at x in Z_q^n.

    Truncation is per coordinate (|x_i| <= B), so the support sits inside the
    Euclidean ball of radius B*sqrt(n) and the normalizer factors into 1-D
    sums.
    """
    x = centered(np.asarray(x, dtype=np.int64), p.q)
    if x.shape != (p.n_dim,):
        raise ParameterError(f"x must have {p.n_dim} coordinates")
    _, _, z1 = _coord_table(p.q, p.B)
    if np.any(np.abs(x) > p.radius):
        return 0.0
    if p.B == 0.0:
        return 1.0
    return float(np.exp(-math.pi * float(np.dot(x, x)) / p.B**2) / z1**p.n_dim)


def gauss_sample(p: GaussParams, rng) -> np.ndarray:
    ts, w, z1 = _coord_table(p.q, p.B)
    idx = rng.choice(len(ts), size=p.n_dim, p=w / z1)
    return ts[idx].astype(np.int64)


def enumerate_support(p: GaussParams):
    """All support points (tiny dimensions only)."""
    r = p.radius
    if (2 * r + 1) ** p.n_dim > EXPLICIT_SUPPORT_CAP:
        raise ParameterError("support too large to enumerate")
    grids = np.meshgrid(*[np.arange(-r, r + 1)] * p.n_dim, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1).astype(np.int64)


def coord_affinity(q: int, b: float, delta: int) -> float:
    """sum_t sqrt(D(t) D(t - delta)) for the 1-D truncated Gaussian."""
    ts, w, z1 = _coord_table(q, b)
    r = int(math.floor(b))
    total = 0.0
    for t, wt in zip(ts.tolist(), w.tolist()):
        t2 = t - delta
        if -r <= t2 <= r:
            w2 = math.exp(-math.pi * t2 * t2 / b**2) if b > 0 else 1.0
            total += math.sqrt(wt * w2)
    return total / z1


# ---------------------------------------------------------------------------
# Ring arithmetic: Z_q[X] / (X^n + 1), coefficients as int64 arrays.
# ---------------------------------------------------------------------------


def poly_mul(a: np.ndarray, b: np.ndarray, n: int, q: int) -> np.ndarray:
    if n == 1:
        return (a * b) % q
    conv = np.convolve(a, b)
    out = conv[:n].copy()
    out[: n - 1] -= conv[n:]
    return out % q


def negacyclic_matrix(a: np.ndarray, n: int, q: int) -> np.ndarray:
    """Matrix M with (a*w)[r] = sum_c M[r, c] * w[c] in Z_q[X]/(X^n+1)."""
    m = np.zeros((n, n), dtype=np.int64)
    for r in range(n):
        for c in range(n):
            d = r - c
            m[r, c] = a[d] if d >= 0 else (q - a[n + d]) % q
    return m


def vec_dot(avec: np.ndarray, s: np.ndarray, n: int, q: int) -> np.ndarray:
    """Element-wise products a_i * s for a vector of ring elements."""
    return np.stack([poly_mul(avec[i], s, n, q) for i in range(avec.shape[0])]) % q


# ---------------------------------------------------------------------------
# Keys
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeKey:
    params: LatticeParams
    a_vec: np.ndarray    # (m, ring_n)
    u_vec: np.ndarray    # (m, ring_n), a*s + e

    @property
    def family_tag(self) -> FamilyTag:
        return FamilyTag.LATTICE_NTCF

    @property
    def n(self) -> int:
        return self.params.x_bits

    @property
    def image_bits(self) -> int:
        return self.params.y_bits


@dataclass(frozen=True)
class LatticeTrapdoor:
    params: LatticeParams
    tau: np.ndarray      # (m_bar, gadget_len, ring_n) small ring elements
    s_secret: np.ndarray  # (ring_n,)
    e_key: np.ndarray    # (m, ring_n) the key noise, kept for diagnostics


def _sample_key_noise(params: LatticeParams, rng) -> np.ndarray:
    """Sparse ternary key noise: each coordinate is +-1 with probability p_key."""
    shape = (params.m, params.ring_n)
    signs = rng.choice(np.array([-1, 1], dtype=np.int64), size=shape)
    hits = rng.random(shape) < params.p_key
    return signs * hits


def gen_trap(ring_n: int, m: int, q: int, rng, b_noise: float | None = None,
             p_key: float | None = None) -> tuple[LatticeKey, LatticeTrapdoor]:
    """Gadget-trapdoor key generation.

    a = (a_bar | g_i - a_bar . r_i) so that combining samples with the small
    tau recovers 2^(i-1) * x + small noise for any x encoded as a*x + e.
    """
    params = LatticeParams(
        ring_n, q, m,
        DESK_PARAMS.b_noise if b_noise is None else b_noise,
        DESK_PARAMS.p_key if p_key is None else p_key,
    )
    n, k, m_bar = params.ring_n, params.gadget_len, params.m_bar
    a_bar = rng.integers(0, q, size=(m_bar, n), dtype=np.int64)
    # Sparse ternary tau keeps the combined decode noise well inside the
    # narrow candidate window.
    tau = rng.choice(np.array([-1, 0, 1], dtype=np.int64), size=(m_bar, k, n),
                     p=[1 / 6, 2 / 3, 1 / 6])
    a = np.zeros((m, n), dtype=np.int64)
    a[:m_bar] = a_bar
    for i in range(k):
        acc = np.zeros(n, dtype=np.int64)
        for j in range(m_bar):
            acc = (acc + poly_mul(a_bar[j], tau[j, i], n, q)) % q
        gadget = np.zeros(n, dtype=np.int64)
        gadget[0] = (1 << i) % q
        a[m_bar + i] = (gadget - acc) % q
    s = rng.integers(0, q, size=n, dtype=np.int64)
    e = _sample_key_noise(params, rng)
    u = (vec_dot(a, s, n, q) + e) % q
    return LatticeKey(params, a, u), LatticeTrapdoor(params, tau, s, e)


def gen_key(rng_seed: int, params: LatticeParams = DESK_PARAMS) -> tuple[TcfKey, Trapdoor]:
    """Envelope form of gen_trap, deterministic in the integer seed."""
    rng = np.random.Generator(np.random.Philox(key=rng_seed))
    key, td = gen_trap(params.ring_n, params.m, params.q, rng,
                       params.b_noise, params.p_key)
    env = pack_key(key)
    return env, pack_trapdoor(td, env)


# ---------------------------------------------------------------------------
# Inversion
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gadget_grid(q: int, k: int, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Precomputed (2^i * offset) mod q over the candidate window."""
    offsets = np.arange(-window, window + 1, dtype=np.int64)
    powers = (1 << np.arange(k, dtype=np.int64)) % q
    grid = (powers[:, None] * offsets[None, :]) % q  # (k, cand)
    return offsets, grid.astype(np.int32)


def _center_abs_inplace(resid: np.ndarray, q: int) -> np.ndarray:
    half = q // 2
    np.add(resid, q, out=resid, where=resid < -half)
    np.subtract(resid, q, out=resid, where=resid > half)
    return np.abs(resid, out=resid)


def _decode_window(v: np.ndarray, q: int, window: int) -> np.ndarray:
    """Nearest-codeword search for w given v_i ~ 2^i * w, per coefficient.

    Candidates live within `window` of the first equation (v_0 = w + noise);
    the score is the worst centered residual over all gadget equations.
    """
    k, n = v.shape
    offsets, grid = _gadget_grid(q, k, window)
    # Residual at candidate v_0 + off is (v_i - 2^i v_0) - 2^i * off mod q.
    powers = (1 << np.arange(k, dtype=np.int64)) % q
    a = ((v - (powers[:, None] * v[0][None, :]) % q) % q).astype(np.int32)
    resid = a[:, None, :] - grid[:, :, None]                  # (k, cand, n) in (-q, q)
    scores = np.max(_center_abs_inplace(resid, q), axis=0)    # (cand, n)
    best = np.argmin(scores, axis=0)
    return (v[0] + offsets[best]) % q


def _key_matrix(key: "LatticeKey") -> np.ndarray:
    """(m*n, n) matrix computing the flattened encoding a*w; cached on the key."""
    mat = getattr(key, "_a_matrix", None)
    if mat is None:
        p = key.params
        mat = np.concatenate(
            [negacyclic_matrix(key.a_vec[i], p.ring_n, p.q) for i in range(p.m)], axis=0
        )
        object.__setattr__(key, "_a_matrix", mat)
    return mat


def _combine_matrix(key: "LatticeKey", td: "LatticeTrapdoor") -> np.ndarray:
    """(k*n, m*n) matrix turning a flattened y into the gadget samples v."""
    mat = getattr(td, "_v_matrix", None)
    if mat is None:
        p = key.params
        n, q, k, m_bar = p.ring_n, p.q, p.gadget_len, p.m_bar
        mat = np.zeros((k * n, p.m * n), dtype=np.int64)
        eye = np.eye(n, dtype=np.int64)
        for i in range(k):
            rows = slice(i * n, (i + 1) * n)
            mat[rows, (m_bar + i) * n:(m_bar + i + 1) * n] = eye
            for j in range(m_bar):
                mat[rows, j * n:(j + 1) * n] = negacyclic_matrix(td.tau[j, i], n, q) % q
        object.__setattr__(td, "_v_matrix", mat)
    return mat


def invert_encoding(key: LatticeKey, td: LatticeTrapdoor, y: np.ndarray) -> np.ndarray | None:
    """Recover w from y = a*w + err for per-coordinate-small err.

    Combines the gadget samples with tau into noisy multiples 2^i * w, then
    runs an exact nearest-codeword search around the first gadget equation,
    retrying with the worst-case window if the cheap one fails. A re-encode
    check rejects rather than ever returning a silently wrong answer.
    """
    p = key.params
    n, q = p.ring_n, p.q
    y_flat = (np.asarray(y, dtype=np.int64) % q).reshape(p.m * n)
    v = (_combine_matrix(key, td) @ y_flat % q).reshape(p.gadget_len, n)
    bound = p.b_noise + 1
    for window in (DECODE_WINDOW, DECODE_WINDOW_WIDE):
        w = _decode_window(v, q, window)
        check = (y_flat - _key_matrix(key) @ w) % q
        check = np.where(check > q // 2, check - q, check)
        if np.max(np.abs(check)) <= bound:
            return w % q
    return None


def image_center(key: LatticeKey, b: int, x: np.ndarray) -> np.ndarray:
    p = key.params
    c = vec_dot(key.a_vec, np.asarray(x, dtype=np.int64) % p.q, p.ring_n, p.q)
    if b:
        c = (c + key.u_vec) % p.q
    return c


def ntcf_invert(key: LatticeKey, td: LatticeTrapdoor, b: int, y: int | np.ndarray) -> int | None:
    """Trapdoor inversion to the b-side preimage, as a BitDecomp'd int."""
    p = key.params
    y_arr = unpack_image(p, y) if isinstance(y, int) else np.asarray(y, dtype=np.int64)
    target = (y_arr - (key.u_vec if b else 0)) % p.q
    x = invert_encoding(key, td, target)
    if x is None:
        return None
    return bit_decomp(p, x)


def lattice_claw_of(td_env: Trapdoor, y: int) -> ClawPair | None:
    key, td = unpack_trapdoor(td_env)
    x0 = ntcf_invert(key, td, 0, y)
    x1 = ntcf_invert(key, td, 1, y)
    if x0 is None or x1 is None:
        return None
    return ClawPair(x0, x1, y)


def ntcf_chk(key: LatticeKey, b: int, x: int | np.ndarray, y: int | np.ndarray) -> int:
    """Public support membership: all noise coordinates within the box."""
    p = key.params
    x_arr = unbit_decomp(p, x) if isinstance(x, int) else np.asarray(x, dtype=np.int64)
    y_arr = unpack_image(p, y) if isinstance(y, int) else np.asarray(y, dtype=np.int64)
    off = centered(y_arr - image_center(key, b, x_arr), p.q)
    return int(np.max(np.abs(off)) <= int(math.floor(p.b_noise)))


# ---------------------------------------------------------------------------
# Image densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductGaussian:
    """Truncated Gaussian over Z_q^(m*n) in factored (per-coordinate) form.

    Total mass is 1 by construction; pointwise masses, sampling, support
    tests and Hellinger affinities are all exact and never enumerate the
    support.
    """

    q: int
    B: float
    center: np.ndarray  # flat, length m*n

    def offsets(self, y_flat: np.ndarray) -> np.ndarray:
        return centered(np.asarray(y_flat, dtype=np.int64) - self.center, self.q)

    def mass(self, y_flat) -> float:
        off = self.offsets(y_flat)
        r = int(math.floor(self.B))
        if np.any(np.abs(off) > r):
            return 0.0
        _, _, z1 = _coord_table(self.q, self.B)
        if self.B == 0.0:
            return 1.0
        return float(np.exp(-math.pi * float(np.dot(off, off)) / self.B**2)
                     / z1 ** len(self.center))

    def contains(self, y_flat) -> bool:
        return self.mass(y_flat) > 0.0

    def sample(self, rng) -> np.ndarray:
        gp = GaussParams(len(self.center), self.q, self.B)
        return (self.center + gauss_sample(gp, rng)) % self.q

    def affinity(self, other: "ProductGaussian") -> float:
        """sum_y sqrt(p1(y) p2(y)), via the per-coordinate factorization."""
        if (self.q, self.B) != (other.q, other.B):
            raise ParameterError("affinity needs matching modulus and width")
        deltas = centered(other.center - self.center, self.q)
        out = 1.0
        for d in np.abs(deltas):
            out *= coord_affinity(self.q, self.B, int(d))
            if out == 0.0:
                break
        return out

    def to_density(self):
        """Explicit Density over packed image labels (small supports only)."""
        from .distances import Density

        r = int(math.floor(self.B))
        dim = len(self.center)
        if (2 * r + 1) ** dim > EXPLICIT_SUPPORT_CAP:
            raise ParameterError("image-offset support too large to enumerate")
        gp = GaussParams(dim, self.q, self.B)
        masses = {}
        for off in enumerate_support(gp):
            y = (self.center + off) % self.q
            masses[_flat_label(y, self.q)] = self.mass(y)
        return Density.from_mapping(masses)


def _flat_label(y_flat: np.ndarray, q: int) -> bytes:
    width = (q - 1).bit_length()
    val = 0
    for i, c in enumerate(np.asarray(y_flat, dtype=np.int64) % q):
        val |= int(c) << (i * width)
    return val.to_bytes((width * len(y_flat) + 7) // 8, "little")


def ntcf_eval_density(key: LatticeKey, b: int, x: np.ndarray) -> ProductGaussian:
    """f'_{k,b}(x): the image distribution, centered at a*x + b*u."""
    p = key.params
    c = image_center(key, b, np.asarray(x, dtype=np.int64))
    return ProductGaussian(p.q, p.b_noise, c.ravel())


def ideal_eval_density(key: LatticeKey, td: LatticeTrapdoor, b: int, x: np.ndarray) -> ProductGaussian:
    """The ideal f_{k,b}(x), centered at a*x + b*(a*s) (no key noise)."""
    p = key.params
    c = vec_dot(key.a_vec, np.asarray(x, dtype=np.int64) % p.q, p.ring_n, p.q)
    if b:
        c = (c + vec_dot(key.a_vec, td.s_secret, p.ring_n, p.q)) % p.q
    return ProductGaussian(p.q, p.b_noise, c.ravel())


def hellinger_gap(key: LatticeKey, td: LatticeTrapdoor, b: int) -> float:
    """Exact E_x[H^2(f_{k,b}(x), f'_{k,b}(x))]; the shift b*e is x-independent."""
    x = np.zeros(key.params.ring_n, dtype=np.int64)
    aff = ideal_eval_density(key, td, b, x).affinity(ntcf_eval_density(key, b, x))
    return min(1.0, max(0.0, 1.0 - aff))


def ntcf_sample_image(key: LatticeKey, b: int, x: np.ndarray, rng) -> np.ndarray:
    p = key.params
    return ntcf_eval_density(key, b, x).sample(rng).reshape(p.m, p.ring_n)


# ---------------------------------------------------------------------------
# BitDecomp / packing
# ---------------------------------------------------------------------------


def bit_decomp(params: LatticeParams, x: np.ndarray) -> int:
    """Canonical little-endian bit decomposition of a ring element."""
    w = params.coeff_bits
    val = 0
    for i, c in enumerate(np.asarray(x, dtype=np.int64) % params.q):
        val |= int(c) << (i * w)
    return val


def unbit_decomp(params: LatticeParams, val: int) -> np.ndarray:
    w = params.coeff_bits
    out = np.zeros(params.ring_n, dtype=np.int64)
    for i in range(params.ring_n):
        out[i] = (val >> (i * w)) & ((1 << w) - 1)
    if np.any(out >= params.q):
        raise ParameterError("bit pattern encodes a coefficient >= q")
    return out


def pack_image(params: LatticeParams, y: np.ndarray) -> int:
    w = params.coeff_bits
    val = 0
    for i, c in enumerate(np.asarray(y, dtype=np.int64).ravel() % params.q):
        val |= int(c) << (i * w)
    return val


def unpack_image(params: LatticeParams, val: int) -> np.ndarray:
    w = params.coeff_bits
    total = params.m * params.ring_n
    flat = np.zeros(total, dtype=np.int64)
    for i in range(total):
        flat[i] = (val >> (i * w)) & ((1 << w) - 1)
    return flat.reshape(params.m, params.ring_n)


# ---------------------------------------------------------------------------
# Envelope packing (JSON bodies; hex applied by tcf serialization)
# ---------------------------------------------------------------------------


def _params_obj(p: LatticeParams) -> dict:
    return {"ring_n": p.ring_n, "q": p.q, "m": p.m, "b_noise": p.b_noise, "p_key": p.p_key}


def _params_from(obj: dict) -> LatticeParams:
    return LatticeParams(obj["ring_n"], obj["q"], obj["m"], obj["b_noise"], obj["p_key"])


def pack_key(key: LatticeKey) -> TcfKey:
    body = json.dumps(
        {
            "params": _params_obj(key.params),
            "a": key.a_vec.tolist(),
            "u": key.u_vec.tolist(),
        },
        sort_keys=True,
    ).encode()
    return TcfKey(FamilyTag.LATTICE_NTCF, key.params.x_bits, body)


def unpack_key(env: TcfKey) -> LatticeKey:
    obj = json.loads(env.payload.decode())
    p = _params_from(obj["params"])
    return LatticeKey(p, np.array(obj["a"], dtype=np.int64), np.array(obj["u"], dtype=np.int64))


def pack_trapdoor(td: LatticeTrapdoor, key_env: TcfKey) -> Trapdoor:
    """Trapdoor envelope; carries the public side too so inversion is self-contained."""
    body = json.dumps(
        {
            "params": _params_obj(td.params),
            "tau": td.tau.tolist(),
            "s": td.s_secret.tolist(),
            "e": td.e_key.tolist(),
            "key": key_env.payload.decode(),
        },
        sort_keys=True,
    ).encode()
    return Trapdoor(key_env.fingerprint(), FamilyTag.LATTICE_NTCF, td.params.x_bits, body)


_UNPACK_CACHE: dict[bytes, tuple[LatticeKey, LatticeTrapdoor]] = {}


def unpack_trapdoor(env: Trapdoor) -> tuple[LatticeKey, LatticeTrapdoor]:
    cached = _UNPACK_CACHE.get(env.secret)
    if cached is not None:
        return cached
    obj = json.loads(env.secret.decode())
    p = _params_from(obj["params"])
    td = LatticeTrapdoor(
        p,
        np.array(obj["tau"], dtype=np.int64),
        np.array(obj["s"], dtype=np.int64),
        np.array(obj["e"], dtype=np.int64),
    )
    key = unpack_key(TcfKey(FamilyTag.LATTICE_NTCF, p.x_bits, obj["key"].encode()))
    _UNPACK_CACHE[env.secret] = (key, td)
    return key, td
