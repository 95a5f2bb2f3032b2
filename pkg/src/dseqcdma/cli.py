"""Command-line front end.

Exit codes: 0 success, 1 domain or usage error, 2 internal invariant violation.
"""

from __future__ import annotations

import json
import logging
import sys

import click

from . import cdmasim, correlation, primesets, sequences
from .numtheory import is_prime

log = logging.getLogger("dseqcdma")

MAPPINGS = [m.value for m in sequences.Mapping]
FORMATS = ["csv", "json", "table"]


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        click.echo(text, nl=False)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _dseq(m: int) -> sequences.BinarySequence:
    seq = sequences.generate_dseq(m)
    if not is_prime(m):
        click.echo(f"warning: modulus {m} is not prime", err=True)
    return seq


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log defaults and progress to stderr.")
def cli(verbose):
    """Decimal-sequence spreading codes: generation, correlation, prime sets, CDMA simulation."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)


@cli.command()
@click.argument("modulus", type=int)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def gen(modulus, fmt):
    """Print one period of the binary d-sequence of MODULUS."""
    seq = _dseq(modulus)
    if fmt == "json":
        click.echo(json.dumps(sequences.sequence_to_dict(seq)))
    else:
        click.echo(sequences.to_string(seq))


def _profile_output(profile, fmt, precision, output):
    if fmt == "json":
        _emit(json.dumps(correlation.profile_to_dict(profile), indent=2) + "\n", output)
    elif fmt == "table":
        lines = [f"{'k':>5}  {'G':>{precision + 4}}  exact"]
        for k, v, e in zip(profile.lags, profile.values, profile.exact_values()):
            lines.append(f"{int(k):>5}  {v:>{precision + 4}.{precision}f}  {e}")
        _emit("\n".join(lines) + "\n", output)
    else:
        _emit(correlation.profile_to_csv(profile, precision), output)


def _summary(profile):
    st = correlation.profile_stats(profile)
    click.echo(f"# kind={profile.kind} N={profile.window} P={profile.reference_period} "
               f"mapping={profile.mapping} max_abs={st.max_abs:.6f} ({st.max_abs_exact}) "
               f"argmax={st.argmax} mean={st.mean:.6f} rms={st.rms:.6f}", err=True)


@cli.command()
@click.argument("m1", type=int)
@click.argument("m2", type=int)
@click.option("--n", "window", type=int, default=None,
              help="Correlation window N; defaults to P - 10 (or P when P <= 10).")
@click.option("--kmax", type=int, default=25, show_default=True)
@click.option("--mapping", type=click.Choice(MAPPINGS), default="bipolar1", show_default=True)
@click.option("--full", is_flag=True, help="Force N = P.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--precision", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("-o", "--output", default=None, help="Write to a file instead of stdout.")
def xcorr(m1, m2, window, kmax, mapping, full, fmt, precision, output):
    """Cross-correlation profile of the d-sequences of M1 and M2."""
    u = sequences.to_bipolar(_dseq(m1), mapping)
    c = sequences.to_bipolar(_dseq(m2), mapping)
    p = correlation.reference_period(u, c)
    if full:
        profile = correlation.cross_correlation_full(u, c, kmax)
    else:
        n = window if window is not None else (p - 10 if p > 10 else p)
        if not 1 <= n <= p:
            raise click.UsageError(f"--n must lie in [1, {p}] (P = lcm of periods), got {n}")
        profile = correlation.cross_correlation_partial(u, c, n, kmax)
    _profile_output(profile, fmt, precision, output)
    _summary(profile)
    published = correlation.published_for(m1, m2)
    if published is not None:
        pub_n, values = published
        rows = correlation.compare_to_published(profile, values)
        worst = max((abs(r.diff) for r in rows), default=0.0)
        click.echo(f"# published table for ({m1}, {m2}): stated window {pub_n}, "
                   f"this run N={profile.window}; {len(rows)} shared lags, "
                   f"max |computed - published| = {worst:.6f}", err=True)
        for r in rows:
            click.echo(f"#   k={r.k:>3} computed={r.computed:+.6f} published={r.published:+.6f} "
                       f"diff={r.diff:+.6f}", err=True)


@cli.command()
@click.argument("modulus", type=int)
@click.option("--n", "window", type=int, default=None, help="Window; defaults to the period.")
@click.option("--kmax", type=int, default=None, help="Defaults to period - 1.")
@click.option("--mapping", type=click.Choice(MAPPINGS), default="bipolar1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--precision", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("-o", "--output", default=None)
def autocorr(modulus, window, kmax, mapping, fmt, precision, output):
    """Autocorrelation profile of the d-sequence of MODULUS."""
    u = sequences.to_bipolar(_dseq(modulus), mapping)
    n = window if window is not None else u.period
    if n < 1:
        raise click.UsageError("--n must be >= 1")
    profile = correlation.autocorrelation(u, n, kmax if kmax is not None else u.period - 1)
    _profile_output(profile, fmt, precision, output)
    _summary(profile)


@cli.group()
def pn():
    """LFSR m-sequences and Gold codes."""


def _parse_taps(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise click.BadParameter(f"taps must be comma-separated integers, got {text!r}") from None


@pn.command("msequence")
@click.option("--degree", type=int, required=True)
@click.option("--taps", default=None, help="Polynomial exponents, e.g. 5,2; defaults to the tabulated pair.")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def pn_msequence(degree, taps, seed, fmt):
    """One period of an LFSR m-sequence."""
    if taps is None:
        if degree not in sequences.PREFERRED_PAIRS:
            raise click.UsageError(f"no default taps for degree {degree}; pass --taps")
        taps_t = sequences.PREFERRED_PAIRS[degree][0]
    else:
        taps_t = _parse_taps(taps)
    seq = sequences.lfsr_msequence(sequences.LfsrSpec(degree, taps_t, seed))
    if fmt == "json":
        click.echo(json.dumps(sequences.sequence_to_dict(seq)))
    else:
        click.echo(sequences.to_string(seq))


@pn.command("gold")
@click.option("--degree", type=int, required=True)
@click.option("--shift", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def pn_gold(degree, shift, fmt):
    """A Gold code from the tabulated preferred pair of the given degree."""
    u, v = sequences.preferred_pair(degree)
    seq = sequences.gold_code(u, v, shift)
    if fmt == "json":
        click.echo(json.dumps(sequences.sequence_to_dict(seq)))
    else:
        click.echo(sequences.to_string(seq))


@cli.group("primesets")
def primesets_group():
    """Prime sets with a small LCM of p - 1."""


@primesets_group.command("verify")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
def primesets_verify(fmt):
    """Recompute the published table of prime sets."""
    records = primesets.verify_published_table()
    if fmt == "json":
        click.echo(json.dumps([r.as_dict() for r in records], indent=2))
    elif fmt == "csv":
        click.echo("row,primes,claimed_lcm,computed_lcm,period_lcm,status")
        for r in records:
            click.echo(f"{r.row},{' '.join(map(str, r.primes))},{r.claimed_lcm},"
                       f"{r.computed_lcm},{r.period_lcm},{r.status}")
    else:
        for r in records:
            click.echo(f"{r.row}  {r.status:<9}  claimed={r.claimed_lcm:<7} computed={r.computed_lcm:<7} "
                       f"periods={r.period_lcm:<7} {','.join(map(str, r.primes))}"
                       + (f"  [{r.note}]" if r.note else ""))
    matched = sum(r.computed_lcm == r.claimed_lcm for r in records)
    click.echo(f"# {matched}/{len(records)} rows reproduce the claimed LCM", err=True)


@primesets_group.command("search")
@click.option("--size", type=click.IntRange(min=1), required=True)
@click.option("--max-prime", type=click.IntRange(min=2), required=True)
@click.option("--max-lcm", type=click.IntRange(min=2), required=True)
@click.option("--cap", type=click.IntRange(min=1), default=primesets.DEFAULT_COMBINATION_CAP,
              show_default=True, help="Maximum combinations examined.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def primesets_search(size, max_prime, max_lcm, cap, fmt):
    """Find sets of SIZE odd primes with LCM(p - 1) <= MAX_LCM."""
    result = primesets.search_sets(size, max_prime, max_lcm, cap=cap)
    for s in result:
        if primesets.lcm_pminus1(s.primes) != s.lcm_pm1 or s.lcm_pm1 > max_lcm:
            raise InvariantError(f"search returned an inconsistent set {s}")
    if fmt == "json":
        click.echo(json.dumps({"truncated": result.truncated,
                               "sets": [{"primes": list(s.primes), "lcm": s.lcm_pm1} for s in result]},
                              indent=2))
    else:
        click.echo(primesets.search_to_csv(result), nl=False)
    if result.truncated:
        click.echo(f"warning: search truncated after {cap} combinations", err=True)


@cli.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Override the config's rng_seed.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("-o", "--output", default=None)
def sim(config_path, seed, fmt, output):
    """Run a CDMA simulation described by a JSON config."""
    try:
        with open(config_path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{config_path}: invalid JSON ({exc})") from None
    try:
        config = cdmasim.config_from_dict(doc)
    except cdmasim.ConfigError as exc:
        raise click.UsageError(f"config error at {exc}") from None
    if seed is not None:
        config = cdmasim.SimConfig(config.users, config.bits_per_user, config.noise_sigma, seed,
                                   config.data_source, config.data_pattern)
    log.info("rng_seed=%d", config.rng_seed)
    result = cdmasim.run_simulation(config)
    for r in result.per_user:
        if r.ber != r.bit_errors / result.bits_per_user:
            raise InvariantError("ber inconsistent with bit error count")
    if fmt == "json":
        _emit(cdmasim.result_to_json(result, config), output)
    else:
        _emit(cdmasim.result_to_csv(result), output)


@cli.command()
@click.option("--moduli", default="11,19", show_default=True, help="Comma-separated d-sequence moduli.")
@click.option("--degree", type=int, default=7, show_default=True, help="Degree of the m-sequence/Gold family.")
@click.option("--n", "window", type=int, default=None,
              help="Partial window; defaults to 4/5 of each family's reference period.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "table"]), default="table")
def compare(moduli, degree, window, fmt):
    """Peak cross-correlation of d-sequences, m-sequences and Gold codes."""
    mods = [int(m) for m in moduli.split(",")]
    if len(mods) < 2:
        raise click.UsageError("--moduli needs at least two values")
    dcodes = [sequences.to_bipolar(_dseq(m)) for m in mods]
    u, v = sequences.preferred_pair(degree)
    mcodes = [sequences.to_bipolar(u), sequences.to_bipolar(v)]
    gold = [sequences.gold_code(u, v, s) for s in (1, 2)]
    gcodes = [sequences.to_bipolar(g) for g in gold]

    rows = []
    for family, codes in (("dseq", dcodes), ("msequence", mcodes), ("gold", gcodes)):
        full_peak, part_peak, n_used = 0.0, 0.0, 0
        for i in range(len(codes)):
            for j in range(i + 1, len(codes)):
                a, b = codes[i], codes[j]
                p = correlation.reference_period(a, b)
                full = correlation.cross_correlation_full(a, b, p - 1)
                n = window if window is not None else max(1, (4 * p) // 5)
                n = min(n, p)
                part = correlation.cross_correlation_partial(a, b, n, p - 1)
                full_peak = max(full_peak, correlation.profile_stats(full).max_abs)
                part_peak = max(part_peak, correlation.profile_stats(part).max_abs)
                n_used = n
        rows.append({"family": family, "full_peak": full_peak, "partial_peak": part_peak,
                     "window": n_used})
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
    elif fmt == "csv":
        click.echo("family,window,full_peak,partial_peak")
        for r in rows:
            click.echo(f"{r['family']},{r['window']},{r['full_peak']:.6f},{r['partial_peak']:.6f}")
    else:
        click.echo(f"{'family':<10} {'N':>6} {'full peak':>10} {'partial peak':>13}")
        for r in rows:
            click.echo(f"{r['family']:<10} {r['window']:>6} {r['full_peak']:>10.6f} {r['partial_peak']:>13.6f}")


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="dseqcdma", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except InvariantError as exc:
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(2)
    except (ValueError, OverflowError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
