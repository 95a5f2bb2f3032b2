"""Full, partial and auto cross-correlation profiles.

For chip sequences ``u`` and ``c``, both extended cyclically,

    G(k) = (1/N) * sum_{i=1..N} u(i) * c(i+k)

with ``N`` the window. The full profile takes ``N = P``, the LCM of the two
periods. Sums are accumulated over integer chip levels and divided once, so
every value is available as an exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numtheory import lcm_many
from .sequences import ChipSequence

# chips per block when folding a long window
_BLOCK = 1 << 20


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    lags: np.ndarray
    sums: np.ndarray  # integer level dot products, one per lag
    window: int
    reference_period: int
    scale: Fraction  # product of the two chip scales
    mapping: str
    kind: str  # "full" | "partial" | "auto"

    @property
    def values(self) -> np.ndarray:
        return self.sums * (float(self.scale) / self.window)

    def exact(self, k: int) -> Fraction:
        """Exact ``G(k)`` for a stored lag ``k``."""
        idx = int(np.searchsorted(self.lags, k))
        if idx >= self.lags.size or self.lags[idx] != k:
            raise KeyError(f"lag {k} not in profile")
        return Fraction(int(self.sums[idx])) * self.scale / self.window

    def exact_values(self) -> list[Fraction]:
        return [Fraction(int(s)) * self.scale / self.window for s in self.sums]

    def __len__(self):
        return int(self.lags.size)


@dataclass(frozen=True)
class ProfileStats:
    max_abs: float
    argmax: int
    mean: float
    rms: float
    max_abs_exact: Fraction


def _window_folded(u: np.ndarray, n: int, pc: int) -> np.ndarray:
    """``U[r] = sum(u(i) for i < n if i % pc == r)``, u cyclically extended."""
    pu = u.size
    folded = np.zeros(pc, dtype=np.int64)
    for start in range(0, n, _BLOCK):
        i = np.arange(start, min(n, start + _BLOCK), dtype=np.int64)
        np.add.at(folded, i % pc, u[i % pu])
    return folded


def _lag_sums(u: np.ndarray, c: np.ndarray, n: int, kmax: int) -> np.ndarray:
    # G(k) depends on k only through k mod period(c)
    pc = c.size
    folded = _window_folded(u, n, pc)
    distinct = min(kmax + 1, pc)
    base = np.empty(distinct, dtype=np.int64)
    for k in range(distinct):
        base[k] = int(np.dot(folded, np.roll(c, -k)))
    return base[np.arange(kmax + 1) % pc]


def _mapping_tag(u: ChipSequence, c: ChipSequence) -> str:
    return u.mapping if u.mapping == c.mapping else f"{u.mapping}/{c.mapping}"


def reference_period(u: ChipSequence, c: ChipSequence) -> int:
    return lcm_many([u.period, c.period])


def cross_correlation_partial(u: ChipSequence, c: ChipSequence, n: int, kmax: int,
                              *, kind: str = "partial") -> CorrelationProfile:
    """Partial cross-correlation over a window of ``n`` chips, lags ``0..kmax``.

    Requires ``1 <= n <= P``.
    """
    p = reference_period(u, c)
    if not 1 <= n <= p:
        raise ValueError(f"window N={n} outside [1, {p}]")
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    sums = _lag_sums(u.levels, c.levels, n, kmax)
    return CorrelationProfile(np.arange(kmax + 1), sums, n, p, u.scale * c.scale,
                              _mapping_tag(u, c), kind)


def cross_correlation_full(u: ChipSequence, c: ChipSequence, kmax: int) -> CorrelationProfile:
    """Cross-correlation over ``P = lcm(period(u), period(c))``."""
    return cross_correlation_partial(u, c, reference_period(u, c), kmax, kind="full")


def autocorrelation(u: ChipSequence, n: int, kmax: int) -> CorrelationProfile:
    """Partial correlation of ``u`` with itself; ``n`` may exceed the period."""
    if n < 1:
        raise ValueError(f"window N={n} must be >= 1")
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    sums = _lag_sums(u.levels, u.levels, n, kmax)
    return CorrelationProfile(np.arange(kmax + 1), sums, n, u.period, u.scale * u.scale,
                              u.mapping, "auto")


def profile_stats(p: CorrelationProfile) -> ProfileStats:
    if len(p) == 0:
        raise ValueError("empty profile")
    mags = np.abs(p.sums)
    i = int(np.argmax(mags))  # first occurrence, i.e. smallest lag
    vals = p.values
    return ProfileStats(
        max_abs=float(abs(p.exact(int(p.lags[i])))),
        argmax=int(p.lags[i]),
        mean=float(vals.mean()),
        rms=float(math.sqrt(np.mean(vals * vals))),
        max_abs_exact=abs(p.exact(int(p.lags[i]))),
    )


# --- output -----------------------------------------------------------------

def profile_to_csv(p: CorrelationProfile, precision: int = 6) -> str:
    if precision < 1:
        raise ValueError("precision must be >= 1")
    rows = ["k,G"]
    rows += [f"{int(k)},{v:.{precision}f}" for k, v in zip(p.lags, p.values)]
    return "\n".join(rows) + "\n"


def profile_to_dict(p: CorrelationProfile) -> dict:
    return {
        "kind": p.kind,
        "window": p.window,
        "reference_period": p.reference_period,
        "mapping": p.mapping,
        "lags": [int(k) for k in p.lags],
        "G": [float(v) for v in p.values],
        "exact": [str(f) for f in p.exact_values()],
    }


# --- published reference tables ---------------------------------------------

# Partial cross-correlation tables printed for d-sequence pairs, keyed by
# (m1, m2, window). Lags run from 0. They do not reproduce under any of the
# supported mappings; they are kept for discrepancy reports only.
PUBLISHED_PROFILES: dict[tuple[int, int, int], list[float]] = {
    (11, 19, 80): [
        0.0125, 0.0625, 0.025, -0.0125, 0.0125, -0.05, 0.0875, 0.05, -0.075,
        0.0125, 0.025, -0.0625, 0.0625, 0.0, 0.1, 0.025, -0.0625, 0.075,
        0.1125, 0.0125, 0.0625, 0.025, -0.0125, 0.0125, 0.05, 0.0875,
    ],
    # printed with a claimed LCM of 180 and window "P - 70"; the actual LCM of
    # the periods (20, 8) is 40, so the window is undetermined
    (41, 17, 110): [
        0.0, -0.06667, 0.0, -0.03333, 0.1, 0.03333, -0.03333, 0.03333, 0.03333,
        -0.1, 0.03333, 0.1, 0.16667, 0.1, -0.03333, 0.03333, 0.1, 0.0,
        -0.06667, 0.0, -0.03333, 0.1, 0.03333, -0.03333, 0.03333, 0.03333,
        -0.1, 0.03333, 0.1, 0.16667, 0.1, -0.03333,
    ],
}


@dataclass(frozen=True)
class LagDiscrepancy:
    k: int
    computed: float
    published: float

    @property
    def diff(self) -> float:
        return self.computed - self.published


def published_for(m1: int, m2: int) -> tuple[int, list[float]] | None:
    """Published ``(window, values)`` for a modulus pair, if any."""
    for (a, b, n), vals in PUBLISHED_PROFILES.items():
        if (a, b) == (m1, m2):
            return n, vals
    return None


def compare_to_published(p: CorrelationProfile, published: list[float]) -> list[LagDiscrepancy]:
    """Lag-by-lag comparison over the lags both tables share."""
    out = []
    for k, v in zip(p.lags, p.values):
        if k < len(published):
            out.append(LagDiscrepancy(int(k), float(v), published[int(k)]))
    return out
