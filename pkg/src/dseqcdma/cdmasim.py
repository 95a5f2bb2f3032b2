"""Chip-level baseband DS-CDMA link with any spreading codes.

All users start their bit streams at chip time 0 and keep bit boundaries
aligned. A user's ``chip_offset`` is the phase of its code: chip ``j`` of the
user's stream is multiplied by ``code(j + chip_offset)``, the code extended
cyclically. With this model the interference one user sees in a bit window is
exactly ``chips_per_bit * G(k)`` for a partial cross-correlation at the
relative code phase.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .numtheory import lcm_many
from .sequences import (ChipSequence, Mapping, sequence_from_dict, sequence_to_dict,
                        to_bipolar)


class ConfigError(ValueError):
    """Malformed simulation config; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class UserConfig:
    code: ChipSequence
    chips_per_bit: int
    chip_offset: int = 0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.chips_per_bit < 1:
            raise ValueError(f"chips_per_bit must be >= 1, got {self.chips_per_bit}")
        if self.chip_offset < 0:
            raise ValueError(f"chip_offset must be >= 0, got {self.chip_offset}")
        if self.amplitude < 0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")


@dataclass(frozen=True)
class SimConfig:
    users: tuple[UserConfig, ...]
    bits_per_user: int
    noise_sigma: float = 0.0
    rng_seed: int = 0
    data_source: str = "random"  # "random" | "fixed"
    data_pattern: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        object.__setattr__(self, "data_pattern", tuple(self.data_pattern))
        if not self.users:
            raise ValueError("at least one user is required")
        if self.bits_per_user < 1:
            raise ValueError("bits_per_user must be >= 1")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.data_source not in ("random", "fixed"):
            raise ValueError(f"unknown data_source {self.data_source!r}")
        if not self.data_pattern or set(self.data_pattern) - {-1, 1}:
            raise ValueError("data_pattern must be a non-empty list of +1/-1")
        span = lcm_many(u.code.period for u in self.users)
        for i, u in enumerate(self.users):
            if u.chip_offset >= span:
                raise ValueError(f"users[{i}].chip_offset {u.chip_offset} >= lcm of code periods {span}")


@dataclass(frozen=True)
class UserResult:
    bit_errors: int
    ber: float
    mean_mai: float  # mean |interference| per bit, correlator units
    peak_mai: float  # max |interference| per bit, correlator units
    ties: int  # zero correlator outputs, decided +1
    window_vs_period: str  # "shorter" | "equal" | "multiple" | "longer"


@dataclass(frozen=True)
class SimResult:
    per_user: tuple[UserResult, ...]
    total_chips: int
    bits_per_user: int


def ebn0_to_sigma(ebn0_db: float, chips_per_bit: int, amplitude: float = 1.0) -> float:
    """Per-chip noise sigma for a target Eb/N0 (dB).

    Bit energy is ``amplitude**2 * chips_per_bit`` for unit-magnitude chips;
    real baseband noise has variance ``N0 / 2`` per chip.
    """
    eb = amplitude ** 2 * chips_per_bit
    n0 = eb / (10 ** (ebn0_db / 10))
    return math.sqrt(n0 / 2)


def _code_at(code: ChipSequence, start: int, length: int) -> np.ndarray:
    idx = (np.arange(length, dtype=np.int64) + start) % code.period
    return code.values[idx]


def spread(bits, code: ChipSequence, chips_per_bit: int, chip_offset: int = 0) -> np.ndarray:
    """``m(j) = b(j // chips_per_bit) * code(j + chip_offset)``."""
    bits = np.asarray(bits, dtype=np.float64)
    if bits.size == 0:
        raise ValueError("no bits to spread")
    n = bits.size * chips_per_bit
    return np.repeat(bits, chips_per_bit) * _code_at(code, chip_offset, n)


def data_bits(config: SimConfig, rng: np.random.Generator | None = None) -> list[np.ndarray]:
    """Antipodal data for every user, drawn user by user from ``rng``
    (a fresh generator seeded with ``rng_seed`` if omitted)."""
    if config.data_source == "fixed":
        pattern = np.array(config.data_pattern, dtype=np.int8)
        reps = -(-config.bits_per_user // pattern.size)
        bits = np.tile(pattern, reps)[:config.bits_per_user]
        return [bits.copy() for _ in config.users]
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    return [(rng.integers(0, 2, config.bits_per_user) * 2 - 1).astype(np.int8)
            for _ in config.users]


def _user_streams(config: SimConfig, bits: list[np.ndarray]) -> tuple[list[np.ndarray], int]:
    streams = [u.amplitude * spread(b, u.code, u.chips_per_bit, u.chip_offset)
               for u, b in zip(config.users, bits)]
    return streams, max(s.size for s in streams)


def _superpose(streams, total: int, skip: int | None = None) -> np.ndarray:
    out = np.zeros(total)
    for i, s in enumerate(streams):
        if i != skip:
            out[:s.size] += s
    return out


def _channel(config: SimConfig):
    """Data bits, per-user streams and the noisy composite, from one seeded generator.

    Draw order is fixed: data for user 0, 1, ..., then the noise vector.
    """
    rng = np.random.default_rng(config.rng_seed)
    bits = data_bits(config, rng)
    streams, total = _user_streams(config, bits)
    composite = _superpose(streams, total)
    if config.noise_sigma > 0:
        composite += rng.normal(0.0, config.noise_sigma, total)
    return bits, streams, composite


def transmit(config: SimConfig) -> np.ndarray:
    """Sum of all users' spread streams plus seeded Gaussian noise.

    Shorter streams are zero-padded to the longest.
    """
    return _channel(config)[2]


def correlate_bits(composite: np.ndarray, user: UserConfig, bits_expected: int) -> np.ndarray:
    """Correlator output per bit: ``sum(composite(j) * code(j + offset))`` over each window."""
    n = user.chips_per_bit
    need = bits_expected * n
    composite = np.asarray(composite, dtype=np.float64)
    if composite.size < need:
        raise ValueError(f"stream has {composite.size} chips, {need} needed for {bits_expected} bits")
    prod = composite[:need] * _code_at(user.code, user.chip_offset, need)
    return prod.reshape(bits_expected, n).sum(axis=1)


def despread(composite: np.ndarray, user: UserConfig, bits_expected: int) -> np.ndarray:
    """Sign decisions per bit; a zero correlator output is decided +1."""
    sums = correlate_bits(composite, user, bits_expected)
    return np.where(sums >= 0, 1, -1).astype(np.int8)


def measure_interference(config: SimConfig) -> list[np.ndarray]:
    """Signed per-bit correlator contribution from all other users, noise excluded."""
    _, streams, composite = _channel(config)
    total = composite.size
    out = []
    for i, user in enumerate(config.users):
        others = _superpose(streams, total, skip=i)
        out.append(correlate_bits(others, user, config.bits_per_user))
    return out


def _window_relation(user: UserConfig) -> str:
    n, p = user.chips_per_bit, user.code.period
    if n < p:
        return "shorter"
    if n == p:
        return "equal"
    return "multiple" if n % p == 0 else "longer"


def run_simulation(config: SimConfig) -> SimResult:
    bits, streams, composite = _channel(config)
    total = composite.size
    results = []
    for i, user in enumerate(config.users):
        sums = correlate_bits(composite, user, config.bits_per_user)
        decided = np.where(sums >= 0, 1, -1)
        errors = int(np.count_nonzero(decided != bits[i]))
        if len(config.users) > 1:
            mai = np.abs(correlate_bits(_superpose(streams, total, skip=i), user,
                                        config.bits_per_user))
            mean_mai, peak_mai = float(mai.mean()), float(mai.max())
        else:
            mean_mai = peak_mai = 0.0
        results.append(UserResult(
            bit_errors=errors,
            ber=errors / config.bits_per_user,
            mean_mai=mean_mai,
            peak_mai=peak_mai,
            ties=int(np.count_nonzero(sums == 0)),
            window_vs_period=_window_relation(user),
        ))
    return SimResult(tuple(results), total, config.bits_per_user)


# --- JSON -------------------------------------------------------------------

def _user_to_dict(u: UserConfig) -> dict:
    if u.code.source is None:
        raise ValueError("code has no binary source and cannot be serialized")
    code = sequence_to_dict(u.code.source)
    return {
        "code": code,
        "mapping": u.code.mapping,
        "chips_per_bit": u.chips_per_bit,
        "chip_offset": u.chip_offset,
        "amplitude": u.amplitude,
    }


def config_to_dict(config: SimConfig) -> dict:
    return {
        "users": [_user_to_dict(u) for u in config.users],
        "bits_per_user": config.bits_per_user,
        "noise_sigma": config.noise_sigma,
        "rng_seed": config.rng_seed,
        "data_source": config.data_source,
        "data_pattern": list(config.data_pattern),
    }


def _field(d: dict, key: str, path: str, kind, default=None, required=False):
    if key not in d:
        if required:
            raise ConfigError(f"{path}.{key}" if path else key, "missing")
        return default
    v = d[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise ConfigError(f"{path}.{key}" if path else key, f"expected integer, got {v!r}")
    if kind is float and (isinstance(v, bool) or not isinstance(v, (int, float))):
        raise ConfigError(f"{path}.{key}" if path else key, f"expected number, got {v!r}")
    if kind is str and not isinstance(v, str):
        raise ConfigError(f"{path}.{key}" if path else key, f"expected string, got {v!r}")
    return kind(v)


def config_from_dict(doc: dict) -> SimConfig:
    """Parse a config document. A result document with a ``config`` key is
    accepted too, so emitted JSON can be fed back in."""
    if not isinstance(doc, dict):
        raise ConfigError("$", "expected a JSON object")
    if "config" in doc and "users" not in doc:
        doc = doc["config"]
    users_raw = doc.get("users")
    if not isinstance(users_raw, list) or not users_raw:
        raise ConfigError("users", "expected a non-empty list")
    users = []
    for i, ud in enumerate(users_raw):
        path = f"users[{i}]"
        if not isinstance(ud, dict):
            raise ConfigError(path, "expected an object")
        code_raw = ud.get("code")
        if not isinstance(code_raw, dict):
            raise ConfigError(f"{path}.code", "expected an object")
        try:
            seq = sequence_from_dict(code_raw)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"{path}.code", str(exc)) from None
        mapping = _field(ud, "mapping", path, str, Mapping.BIPOLAR1.value)
        try:
            code = to_bipolar(seq, mapping)
        except ValueError:
            raise ConfigError(f"{path}.mapping", f"unknown mapping {mapping!r}") from None
        try:
            users.append(UserConfig(
                code=code,
                chips_per_bit=_field(ud, "chips_per_bit", path, int, required=True),
                chip_offset=_field(ud, "chip_offset", path, int, 0),
                amplitude=_field(ud, "amplitude", path, float, 1.0),
            ))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(path, str(exc)) from None
    pattern = doc.get("data_pattern", [1])
    if not isinstance(pattern, list):
        raise ConfigError("data_pattern", "expected a list")
    try:
        return SimConfig(
            users=tuple(users),
            bits_per_user=_field(doc, "bits_per_user", "", int, required=True),
            noise_sigma=_field(doc, "noise_sigma", "", float, 0.0),
            rng_seed=_field(doc, "rng_seed", "", int, 0),
            data_source=_field(doc, "data_source", "", str, "random"),
            data_pattern=tuple(pattern),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("$", str(exc)) from None


def result_to_dict(result: SimResult, config: SimConfig | None = None) -> dict:
    doc = {
        "total_chips": result.total_chips,
        "bits_per_user": result.bits_per_user,
        "per_user": [
            {"user": i, "bit_errors": r.bit_errors, "ber": r.ber, "mean_mai": r.mean_mai,
             "peak_mai": r.peak_mai, "ties": r.ties, "window_vs_period": r.window_vs_period}
            for i, r in enumerate(result.per_user)
        ],
    }
    if config is not None:
        doc = {"config": config_to_dict(config), "result": doc}
    return doc


def result_to_json(result: SimResult, config: SimConfig | None = None) -> str:
    return json.dumps(result_to_dict(result, config), indent=2, sort_keys=True) + "\n"


def result_to_csv(result: SimResult, precision: int = 6) -> str:
    lines = ["user,ber,mean_mai,peak_mai"]
    lines += [f"{i},{r.ber:.{precision}f},{r.mean_mai:.{precision}f},{r.peak_mai:.{precision}f}"
              for i, r in enumerate(result.per_user)]
    return "\n".join(lines) + "\n"
