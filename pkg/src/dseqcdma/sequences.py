"""Binary spreading sequences: d-sequences, LFSR m-sequences and Gold codes.

A :class:`BinarySequence` holds exactly one period of bits. Bits are stored
0-based with ``bits[j]`` holding the term of index ``j + 1``, so that sums
written from ``i = 1`` map directly onto array positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

import numpy as np

from .numtheory import check_modulus, mult_order


class Mapping(str, Enum):
    """How bits 0/1 are turned into chip amplitudes."""

    UNIPOLAR01 = "unipolar01"
    BIPOLAR1 = "bipolar1"
    BIPOLAR_HALF = "bipolarHalf"


# (level for 0, level for 1, scale): amplitude = level * scale
_MAPPING_LEVELS = {
    Mapping.UNIPOLAR01: (0, 1, Fraction(1)),
    Mapping.BIPOLAR1: (-1, 1, Fraction(1)),
    Mapping.BIPOLAR_HALF: (-1, 1, Fraction(1, 2)),
}


@dataclass(frozen=True)
class DSeqOrigin:
    modulus: int


@dataclass(frozen=True)
class LfsrSpec:
    """Fibonacci LFSR for the polynomial ``x^degree + sum(x^t for t in taps) + 1``.

    ``taps`` lists the nonzero exponents other than the constant term and must
    contain ``degree``. Bit ``j`` of ``seed`` is output term ``j`` of the
    sequence for ``j < degree``.
    """

    degree: int
    taps: tuple[int, ...]
    seed: int = 1

    def __post_init__(self):
        object.__setattr__(self, "taps", tuple(sorted(set(self.taps), reverse=True)))
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        if not self.taps or self.taps[0] != self.degree or self.taps[-1] < 1:
            raise ValueError(f"taps {self.taps} must lie in [1, {self.degree}] and include the degree")
        if self.seed == 0:
            raise ValueError("LFSR seed must be nonzero")
        if not 0 < self.seed < (1 << self.degree):
            raise ValueError(f"seed {self.seed} does not fit in {self.degree} bits")


@dataclass(frozen=True)
class GoldOrigin:
    u: LfsrSpec
    v: LfsrSpec
    shift: int


@dataclass(frozen=True)
class ExplicitOrigin:
    """Bits supplied directly, with no generator."""


Origin = Union[DSeqOrigin, LfsrSpec, GoldOrigin, ExplicitOrigin]


def _frozen(a, dtype) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BinarySequence:
    bits: np.ndarray
    origin: Origin = ExplicitOrigin()

    def __post_init__(self):
        bits = _frozen(self.bits, np.uint8)
        if bits.ndim != 1 or bits.size == 0:
            raise ValueError("a sequence needs at least one bit")
        if np.any(bits > 1):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def period(self) -> int:
        return int(self.bits.size)

    @property
    def ones(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other):
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return self.origin == other.origin and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.origin, self.bits.tobytes()))

    def __str__(self):
        return to_string(self)

    def __len__(self):
        return self.period


@dataclass(frozen=True, eq=False)
class ChipSequence:
    """Real-valued chips, kept exact as integer ``levels`` times a rational ``scale``."""

    levels: np.ndarray
    scale: Fraction = Fraction(1)
    mapping: str = Mapping.BIPOLAR1.value
    source: BinarySequence | None = None

    def __post_init__(self):
        levels = _frozen(self.levels, np.int64)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("a chip sequence needs at least one chip")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "scale", Fraction(self.scale))

    @property
    def period(self) -> int:
        return int(self.levels.size)

    @property
    def values(self) -> np.ndarray:
        return self.levels * float(self.scale)

    @property
    def peak(self) -> Fraction:
        return int(np.abs(self.levels).max()) * self.scale

    def __eq__(self, other):
        if not isinstance(other, ChipSequence):
            return NotImplemented
        return (self.mapping == other.mapping and self.scale == other.scale
                and np.array_equal(self.levels, other.levels))

    def __hash__(self):
        return hash((self.mapping, self.scale, self.levels.tobytes()))


# --- d-sequences ----------------------------------------------------------

def _powers_of_two(m: int, count: int) -> np.ndarray:
    """``2**i mod m`` for ``i = 1..count``, built by block doubling."""
    if m >= 1 << 31:
        out, x = [], 1
        for _ in range(count):
            x = x * 2 % m
            out.append(x)
        return np.array(out, dtype=object)
    arr = np.array([2 % m], dtype=np.int64)
    while arr.size < count:
        step = pow(2, int(arr.size), m)
        arr = np.concatenate((arr, arr * step % m))
    return arr[:count]


def generate_dseq(m: int) -> BinarySequence:
    """One period of ``a(i) = (2**i mod m) mod 2``, ``i = 1..ord_m(2)``.

    This is the periodic part of the binary expansion of ``1/m``. Composite
    odd moduli are accepted.
    """
    check_modulus(m)
    period = mult_order(2, m)
    bits = (_powers_of_two(m, period) % 2).astype(np.uint8)
    return BinarySequence(bits, DSeqOrigin(m))


# --- LFSR m-sequences and Gold codes ----------------------------------------

MAX_LFSR_DEGREE = 24

# Preferred pairs of primitive polynomials, as tap exponent lists.
PREFERRED_PAIRS: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {
    5: ((5, 2), (5, 4, 3, 2)),
    6: ((6, 1), (6, 5, 2, 1)),
    7: ((7, 3), (7, 3, 2, 1)),
}


def lfsr_msequence(spec: LfsrSpec) -> BinarySequence:
    """One full period of the LFSR output, i.e. until the state recurs.

    Uses the recurrence ``a(i+n) = a(i) + sum(a(i+t) for t in taps if t < n)``
    over GF(2). With a primitive polynomial the period is ``2**n - 1``.
    """
    n = spec.degree
    if n > MAX_LFSR_DEGREE:
        raise ValueError(f"degree {n} exceeds supported maximum {MAX_LFSR_DEGREE}")
    inner = [t for t in spec.taps if t < n]
    full = (1 << n) - 1
    state = spec.seed  # bit j = a(i + j)
    out = []
    for _ in range(full):
        out.append(state & 1)
        fb = state & 1
        for t in inner:
            fb ^= (state >> t) & 1
        state = (state >> 1) | (fb << (n - 1))
        if state == spec.seed:
            break
    return BinarySequence(np.array(out, dtype=np.uint8), spec)


def preferred_pair(degree: int, seed: int = 1) -> tuple[BinarySequence, BinarySequence]:
    try:
        taps_u, taps_v = PREFERRED_PAIRS[degree]
    except KeyError:
        raise ValueError(f"no preferred pair tabulated for degree {degree}; "
                         f"available: {sorted(PREFERRED_PAIRS)}") from None
    return (lfsr_msequence(LfsrSpec(degree, taps_u, seed)),
            lfsr_msequence(LfsrSpec(degree, taps_v, seed)))


def gold_code(u: BinarySequence, v: BinarySequence, shift: int) -> BinarySequence:
    """``u XOR (v rotated left by shift)``."""
    if u.period != v.period:
        raise ValueError(f"periods differ: {u.period} != {v.period}")
    if not 0 <= shift < u.period:
        raise ValueError(f"shift must lie in [0, {u.period}), got {shift}")
    bits = u.bits ^ np.roll(v.bits, -shift)
    origin = (GoldOrigin(u.origin, v.origin, shift)
              if isinstance(u.origin, LfsrSpec) and isinstance(v.origin, LfsrSpec)
              else ExplicitOrigin())
    return BinarySequence(bits, origin)


def gold_family(degree: int, seed: int = 1) -> list[BinarySequence]:
    """``u``, ``v`` and all ``2**n - 1`` shifted combinations."""
    u, v = preferred_pair(degree, seed)
    return [u, v] + [gold_code(u, v, s) for s in range(u.period)]


# --- mapping ----------------------------------------------------------------

def to_bipolar(seq: BinarySequence, convention: Mapping | str = Mapping.BIPOLAR1) -> ChipSequence:
    """Map bits to chips: unipolar01 keeps 0/1, bipolar1 gives -1/+1,
    bipolarHalf gives -0.5/+0.5."""
    convention = Mapping(convention)
    lo, hi, scale = _MAPPING_LEVELS[convention]
    levels = np.where(seq.bits == 1, hi, lo).astype(np.int64)
    return ChipSequence(levels, scale, convention.value, seq)


def constant_chips(period: int = 1, level: int = 1) -> ChipSequence:
    return ChipSequence(np.full(period, level, dtype=np.int64), Fraction(1), Mapping.BIPOLAR1.value)


# --- serialization ----------------------------------------------------------

def to_string(seq: BinarySequence) -> str:
    return "".join("1" if b else "0" for b in seq.bits)


def from_string(text: str) -> BinarySequence:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a 0/1 string: {text!r}")
    return BinarySequence(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"))


def _spec_dict(spec: LfsrSpec) -> dict:
    return {"degree": spec.degree, "taps": list(spec.taps), "seed": spec.seed}


def sequence_to_dict(seq: BinarySequence) -> dict:
    d: dict = {}
    o = seq.origin
    if isinstance(o, DSeqOrigin):
        d["modulus"] = o.modulus
    elif isinstance(o, LfsrSpec):
        d["lfsr"] = _spec_dict(o)
    elif isinstance(o, GoldOrigin):
        d["gold"] = {"u": _spec_dict(o.u), "v": _spec_dict(o.v), "shift": o.shift}
    d["period"] = seq.period
    d["bits"] = to_string(seq)
    return d


def sequence_from_dict(d: dict) -> BinarySequence:
    """Rebuild a sequence from :func:`sequence_to_dict` output.

    Generator descriptors win; a ``bits`` field alongside one must agree with
    the regenerated bits.
    """
    if "modulus" in d:
        seq = generate_dseq(int(d["modulus"]))
    elif "lfsr" in d:
        s = d["lfsr"]
        seq = lfsr_msequence(LfsrSpec(int(s["degree"]), tuple(s["taps"]), int(s.get("seed", 1))))
    elif "gold" in d:
        g = d["gold"]
        if "degree" in g:
            u, v = preferred_pair(int(g["degree"]), int(g.get("seed", 1)))
        else:
            u = sequence_from_dict({"lfsr": g["u"]})
            v = sequence_from_dict({"lfsr": g["v"]})
        seq = gold_code(u, v, int(g.get("shift", 0)))
    elif "bits" in d:
        return from_string(d["bits"])
    else:
        raise ValueError("sequence needs one of: modulus, lfsr, gold, bits")
    if "bits" in d and d["bits"] != to_string(seq):
        raise ValueError("bits field disagrees with the generator descriptor")
    if "period" in d and int(d["period"]) != seq.period:
        raise ValueError(f"period field {d['period']} != generated period {seq.period}")
    return seq
