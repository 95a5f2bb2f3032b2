"""Prime sets with a small LCM of ``p - 1``.

If every user's d-sequence modulus comes from a set whose ``p - 1`` values
share a small LCM ``L``, then ``L`` chips per bit is a common multiple of all
code periods.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .numtheory import is_prime, lcm_many, mult_order

DEFAULT_COMBINATION_CAP = 2_000_000


@dataclass(frozen=True, order=True)
class PrimeSet:
    lcm_pm1: int
    primes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(sorted(self.primes)))


def lcm_pminus1(primes) -> int:
    """LCM of ``p - 1`` over distinct primes."""
    primes = list(primes)
    if not primes:
        raise ValueError("empty prime list")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if len(set(primes)) != len(primes):
        dup = sorted(p for p in set(primes) if primes.count(p) > 1)
        raise ValueError(f"duplicate primes: {dup}")
    return lcm_many(p - 1 for p in primes)


def lcm_periods(primes) -> int:
    """LCM of the actual d-sequence periods ``ord_p(2)``, which divide ``p - 1``."""
    primes = list(primes)
    for p in primes:
        if p == 2 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
    return lcm_many(mult_order(2, p) for p in set(primes))


def make_prime_set(primes) -> PrimeSet:
    return PrimeSet(lcm_pminus1(primes), tuple(primes))


# --- published table --------------------------------------------------------

PUBLISHED_SETS: list[tuple[tuple[int, ...], int]] = [
    ((661, 199, 397, 463, 331, 101, 61), 69300),
    ((541, 487, 379, 433, 271, 109, 163), 136800),
    ((701, 101, 11, 71, 211, 491, 631, 281), 88200),
    ((17, 31, 37, 61, 71, 541, 379, 433, 271, 109, 163), 45360),
    ((811, 487, 163), 2430),
    ((881, 89, 41, 17), 880),
    ((331, 199, 11, 31, 67, 991), 990),
    ((11, 31, 251, 31, 151, 751), 750),
]


@dataclass(frozen=True)
class TableCheck:
    row: int
    primes: tuple[int, ...]
    claimed_lcm: int
    computed_lcm: int
    period_lcm: int
    status: str  # "match" | "mismatch" | "malformed"
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "row": self.row,
            "primes": list(self.primes),
            "claimed_lcm": self.claimed_lcm,
            "computed_lcm": self.computed_lcm,
            "period_lcm": self.period_lcm,
            "status": self.status,
            "note": self.note,
        }


def verify_published_table(table=None) -> list[TableCheck]:
    """Recompute every row's LCM of ``p - 1``.

    Rows with repeated or non-prime members are de-duplicated, computed
    anyway and flagged ``malformed``; discrepancies are returned, not raised.
    """
    table = PUBLISHED_SETS if table is None else table
    records = []
    for row, (primes, claimed) in enumerate(table, start=1):
        notes = []
        dups = sorted(p for p in set(primes) if primes.count(p) > 1)
        if dups:
            notes.append(f"repeated {', '.join(map(str, dups))}")
        bad = sorted(p for p in set(primes) if not is_prime(p))
        if bad:
            notes.append(f"not prime: {', '.join(map(str, bad))}")
        members = [p for p in dict.fromkeys(primes) if is_prime(p)]
        computed = lcm_many(p - 1 for p in members)
        periods = lcm_many(mult_order(2, p) for p in members if p != 2)
        if notes:
            status = "malformed"
        else:
            status = "match" if computed == claimed else "mismatch"
        if computed != claimed:
            notes.append(f"computed {computed} != claimed {claimed}")
        records.append(TableCheck(row, tuple(primes), claimed, computed, periods, status,
                                  "; ".join(notes)))
    return records


# --- search -----------------------------------------------------------------

@dataclass
class SearchResult:
    sets: list[PrimeSet] = field(default_factory=list)
    truncated: bool = False

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def prime_tuples(self) -> set[tuple[int, ...]]:
        return {s.primes for s in self.sets}


def _odd_primes(bound: int) -> list[int]:
    if bound < 3:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(3, bound + 1) if sieve[i]]


def search_sets(set_size: int, prime_bound: int, lcm_bound: int,
                cap: int = DEFAULT_COMBINATION_CAP) -> SearchResult:
    """All sets of ``set_size`` distinct odd primes ``<= prime_bound`` whose
    LCM of ``p - 1`` is ``<= lcm_bound``, sorted by ``(lcm, primes)``.

    Works divisor-first: for each candidate ``L``, only primes with
    ``(p - 1) | L`` can appear in a set of LCM ``L``, and each set is emitted
    under its exact LCM. ``cap`` limits the number of combinations examined;
    hitting it sets ``truncated``.
    """
    if set_size < 1:
        raise ValueError("set_size must be >= 1")
    if prime_bound < 2 or lcm_bound < 2:
        raise ValueError("bounds must be >= 2")
    primes = _odd_primes(prime_bound)

    # candidates[L] = primes with (p - 1) | L, filled by stepping multiples
    candidates: dict[int, list[int]] = {}
    for p in primes:
        for mult in range(p - 1, lcm_bound + 1, p - 1):
            candidates.setdefault(mult, []).append(p)

    result = SearchResult()
    examined = 0
    for target in sorted(candidates):
        cands = candidates[target]
        if len(cands) < set_size or lcm_many(p - 1 for p in cands) != target:
            continue
        for combo in itertools.combinations(cands, set_size):
            examined += 1
            if examined > cap:
                result.truncated = True
                result.sets.sort()
                return result
            if lcm_many(p - 1 for p in combo) == target:
                result.sets.append(PrimeSet(target, combo))
    result.sets.sort()
    return result


def search_to_csv(result: SearchResult) -> str:
    lines = ["primes;lcm"]
    lines += [f"{' '.join(map(str, s.primes))};{s.lcm_pm1}" for s in result.sets]
    return "\n".join(lines) + "\n"
