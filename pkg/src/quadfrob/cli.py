"""Command-line front end.

Exit codes: 0 success (or probable prime under `test`), 1 composite under
`test`, 2 usage or input error, 3 invariant breach during scan/crosscheck.
Every option can also be set through QUADFROB_<COMMAND>_<OPTION> environment
variables.
"""

from __future__ import annotations

import json
import random
import sys

import click

from .bench import run_bench
from .equivalence import cross_validate
from .frobenius import PipelineConfig, is_probable_prime
from .scan import (
    MODE_FULL,
    MODE_PRESCREEN,
    free_a_scan,
    scan_range,
    write_free_a_csv,
    write_scan_csv,
)

EXIT_PRP = 0
EXIT_COMPOSITE = 1
EXIT_ERROR = 2
EXIT_BREACH = 3

COUNTEREXAMPLE_21 = (21, 6, 10, 4)
COUNTEREXAMPLE_27 = (27, 6, 1, 7)


@click.group(context_settings={"auto_envvar_prefix": "QUADFROB"})
def main() -> None:
    """Quadratic-ring probable-prime testing, scanning and benchmarking."""


@main.command("test")
@click.argument("n")
@click.option("--hybrid", is_flag=True, help="Use the x+1 base for a >= 3.")
@click.option("--prescreen", is_flag=True, help="Fermat-prescreen with base 2a+5 first.")
@click.option("--trial-division-bound", type=int, default=1000, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
def cmd_test(n: str, hybrid: bool, prescreen: bool, trial_division_bound: int, as_json: bool) -> None:
    """Test one decimal number N."""
    try:
        value = int(n, 10)
        if value < 0:
            raise ValueError("negative")
    except ValueError:
        click.echo(f"error: not a decimal natural number: {n!r}", err=True)
        sys.exit(EXIT_ERROR)
    cfg = PipelineConfig(
        trial_division_bound=trial_division_bound,
        fermat_prescreen=prescreen,
        hybrid=hybrid,
    )
    report = is_probable_prime(value, cfg)
    v = report.verdict
    if as_json:
        click.echo(
            json.dumps(
                {
                    "n": str(value),
                    "verdict": v.outcome,
                    "reason": v.reason,
                    "witness": v.witness,
                    "a": report.a,
                    "stage": report.stage,
                    "prescreen_passed": report.prescreen_passed,
                    "counters": v.counters.as_dict(),
                }
            )
        )
    else:
        click.echo(f"{value}: {v.outcome}")
        if report.a is not None:
            click.echo(f"  a = {report.a}")
        if v.reason:
            click.echo(f"  reason = {v.reason}" + (f" (witness {v.witness})" if v.witness else ""))
        c = v.counters.as_dict()
        click.echo("  counters: " + ", ".join(f"{k}={c[k]}" for k in c))
    sys.exit(EXIT_PRP if v.probable_prime else EXIT_COMPOSITE)


@main.command("scan")
@click.option("--lo", type=int, required=True)
@click.option("--hi", type=int, required=True)
@click.option(
    "--mode",
    type=click.Choice([MODE_FULL, MODE_PRESCREEN]),
    default=MODE_FULL,
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV of scan records.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--hybrid", is_flag=True)
@click.option("--prescreen", is_flag=True, help="Fermat prescreen inside the full pipeline.")
@click.option("--trial-division-bound", type=int, default=1000, show_default=True)
def cmd_scan(lo, hi, mode, out, workers, hybrid, prescreen, trial_division_bound) -> None:
    """Scan odd n in [LO, HI] against the independent oracle."""
    if lo > hi:
        click.echo("error: --lo must not exceed --hi", err=True)
        sys.exit(EXIT_ERROR)
    cfg = PipelineConfig(
        trial_division_bound=trial_division_bound,
        fermat_prescreen=prescreen,
        hybrid=hybrid,
    )
    try:
        summary = scan_range(lo, hi, mode=mode, config=cfg, workers=workers)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    if out:
        write_scan_csv(summary, out)
    click.echo(f"range [{lo}, {hi}] mode={mode}")
    click.echo(f"  tested            {summary.tested}")
    click.echo(f"  probable primes   {summary.probable_primes}")
    click.echo(f"  composites        {summary.composites}")
    if summary.prescreen_survivors is not None:
        click.echo(f"  prescreen survivors {summary.prescreen_survivors}")
    click.echo(f"  pseudoprimes      {summary.pseudoprimes}")
    click.echo(f"  false negatives   {summary.false_negatives}")
    sys.exit(EXIT_PRP if summary.clean else EXIT_BREACH)


@main.command("free-a-scan")
@click.option("--n-limit", type=int, required=True)
@click.option("--a-bound", type=int, default=None, help="Try every a < BOUND.")
@click.option(
    "--a-quarter-root",
    is_flag=True,
    default=False,
    help="Try every a < n**(1/4) (default policy when --a-bound is absent).",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--workers", type=int, default=1, show_default=True)
def cmd_free_a_scan(n_limit, a_bound, a_quarter_root, out, workers) -> None:
    """Hunt pseudoprime pairs (n, a) with free-ranging a below N_LIMIT."""
    if a_bound is not None and a_quarter_root:
        click.echo("error: choose one of --a-bound / --a-quarter-root", err=True)
        sys.exit(EXIT_ERROR)
    quarter = a_bound is None
    try:
        summary = free_a_scan(n_limit, quarter_root=quarter, a_bound=a_bound, workers=workers)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    if out:
        write_free_a_csv(summary, out)
    click.echo(f"n < {n_limit}, policy {summary.policy}")
    click.echo(f"  odd composites    {summary.composites}")
    click.echo(f"  eligible pairs    {summary.eligible_pairs}")
    click.echo(f"  pseudoprime pairs {len(summary.pairs)}")
    for p in summary.pairs:
        click.echo(f"    n={p.n} a={p.a}")
    sys.exit(EXIT_PRP)


@main.command("bench")
@click.option("--bits", type=int, default=2048, show_default=True)
@click.option("--reps", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=2024, show_default=True)
def cmd_bench(bits, reps, seed) -> None:
    """Selfridge cost accounting on random odd operands."""
    try:
        report = run_bench(bits, reps, seed)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    click.echo(f"operands: {bits} bits, {reps} reps, seed {seed}")
    ratios = report.selfridge_ratio
    for kind in report.mean_time:
        ms = report.mean_time[kind] * 1000
        c = report.counter_totals[kind]
        click.echo(
            f"  {kind:<12} {ms:9.2f} ms  {ratios[kind]:5.2f} selfridges  "
            f"(modmul {c.full_modmul}, modsq {c.full_modsquare}, iters {c.loop_iterations})"
        )
    sys.exit(EXIT_PRP)


@main.command("crosscheck")
@click.option("--sample-size", type=int, default=1000, show_default=True)
@click.option("--n-bound", type=int, default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=2024, show_default=True)
def cmd_crosscheck(sample_size, n_bound, seed) -> None:
    """Cross-validate the ring test against its reformulations."""
    breaches = 0

    def show(tag, rep):
        nonlocal breaches
        flag = "ok" if rep.consistent else "BREACH"
        click.echo(
            f"  {tag}: ring={rep.general} matrix={rep.matrix} "
            f"euler={rep.euler} z_chain={rep.z_lucas} [{flag}]"
        )
        if not rep.consistent:
            breaches += 1

    show("n=21 a=6 S=10 T=4", cross_validate(*COUNTEREXAMPLE_21))
    show("n=27 a=6 S=1 T=7", cross_validate(*COUNTEREXAMPLE_27))

    rng = random.Random(seed)
    tested = 0
    while tested < sample_size:
        rep = _random_cross_sample(rng, n_bound)
        if rep is None:
            continue
        if not rep.consistent:
            show(f"n={rep.n} params={tuple(rep.params)}", rep)
        tested += 1
    click.echo(f"random samples: {tested}, breaches: {breaches}")
    sys.exit(EXIT_PRP if breaches == 0 else EXIT_BREACH)


def _random_cross_sample(rng: random.Random, n_bound: int):
    from .arith import gcd, jacobi

    n = rng.randrange(5, n_bound) | 1
    a = rng.randrange(0, 64)
    s = rng.randrange(1, 256)
    t = rng.randrange(0, 256)
    if jacobi(a * a - 4, n) != -1:
        return None
    if gcd(s, n) != 1:
        return None
    p = (a * s + 2 * t) % n
    q = (s * s + a * s * t + t * t) % n
    if gcd(p * q, n) != 1:
        return None
    return cross_validate(n, a, s, t)


if __name__ == "__main__":
    main()
