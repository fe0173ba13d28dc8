"""Command-line surface.

Exit codes: 0 for holds-at-scale / report-only runs, 2 when a run produced
a counterexample, 1 on errors (unknown ids, malformed input, capacity).
"""

import json
import re
import sys

import click
import numpy as np

from .config import load_config
from .errors import BoolfunError
from .function import (
    BooleanFunction,
    and_f,
    dictator,
    ip,
    majority,
    mod3,
    or_f,
    parity,
    tribes,
)
from .report import load_reports, render_csv, render_markdown
from .sensitivity import sensitivity_stats
from .spectrum import fourier_stats


def parse_function(spec: str) -> BooleanFunction:
    """Constructor grammar: maj3, parity4, dict3[:i], and4, or2, mod3:5,
    ip:4, tribes:2x3, hex:<n>:<hexdigits>."""
    spec = spec.strip().lower()
    m = re.fullmatch(r"(?:maj|majority)(\d+)", spec)
    if m:
        return majority(int(m.group(1)))
    m = re.fullmatch(r"parity(\d+)", spec)
    if m:
        return parity(int(m.group(1)))
    m = re.fullmatch(r"(?:dict|dictator)(\d+)(?::(\d+))?", spec)
    if m:
        return dictator(int(m.group(1)), int(m.group(2) or 0))
    m = re.fullmatch(r"and(\d+)", spec)
    if m:
        return and_f(int(m.group(1)))
    m = re.fullmatch(r"or(\d+)", spec)
    if m:
        return or_f(int(m.group(1)))
    m = re.fullmatch(r"mod3[:-](\d+)", spec)
    if m:
        return mod3(int(m.group(1)))
    m = re.fullmatch(r"ip:?(\d+)", spec)
    if m:
        return ip(int(m.group(1)))
    m = re.fullmatch(r"tribes:(\d+)x(\d+)", spec)
    if m:
        return tribes(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"hex:(\d+):([0-9a-f]+)", spec)
    if m:
        return BooleanFunction.from_hex(int(m.group(1)), m.group(2))
    raise ValueError(f"cannot parse function spec {spec!r}")


def parse_params(pairs) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--param needs k=v, got {pair!r}")
        key, _, value = pair.partition("=")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


@click.group()
def main():
    """Exact verification and extremal search for Boolean-function problems."""


@main.command()
@click.argument("fn")
@click.option("--stats", is_flag=True, help="Fourier statistics.")
@click.option("--noise", is_flag=True, help="Noise stability profile.")
@click.option("--sens", is_flag=True, help="Sensitivity measures.")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON object.")
def analyze(fn, stats, noise, sens, as_json):
    """Print measurements of a named or hex-encoded function."""
    f = parse_function(fn)
    if not (stats or noise or sens):
        stats = True
    out = {"n": f.n, "hex": f.to_hex()}
    if stats:
        st = fourier_stats(f)
        out.update(
            {
                "Tinf": st.total_influence,
                "H": st.spectral_entropy,
                "deg": st.degree,
                "var": st.variance,
                "w1": st.w1,
                "linear_sum": st.linear_sum,
                "mean": st.mean,
                "max_coeff_sq": st.max_coeff_sq,
                "influences": list(st.influences),
            }
        )
    if noise:
        from .noise import noise_profile

        out["noise"] = [
            {"rho": rho, "stab": s, "ns": nsv}
            for rho, s, nsv in noise_profile(f, [round(0.1 * k, 1) for k in range(1, 10)])
        ]
    if sens:
        st = sensitivity_stats(f)
        out.update(
            {
                "sens": st.max_sensitivity,
                "avg_sens": float(st.avg_sensitivity),
                "bs": st.block_sensitivity,
            }
        )
    if as_json:
        click.echo(json.dumps(out, sort_keys=True))
        return
    click.echo(f"function {fn}  n={f.n}  hex={f.to_hex()}")
    for key in ("Tinf", "H", "deg", "var", "w1", "linear_sum", "mean"):
        if key in out:
            click.echo(f"  {key}={out[key]}")
    if "sens" in out:
        click.echo(f"  sens={out['sens']} avg_sens={out['avg_sens']} bs={out['bs']}")
    for row in out.get("noise", []):
        click.echo(f"  rho={row['rho']}: stab={row['stab']:.12f} ns={row['ns']:.12f}")


@main.command()
@click.argument("conjecture_id", required=False)
@click.option("--param", "params", multiple=True, help="k=v (JSON values).")
@click.option("--seed", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Append the JSONL report here.")
@click.option("--workers", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--list", "list_ids", is_flag=True, help="List registered ids.")
def verify(conjecture_id, params, seed, out_path, workers, config_path, list_ids):
    """Run a registered conjecture recipe and report its verdict."""
    from .registry import REGISTRY, run

    if list_ids or conjecture_id is None:
        for cid in sorted(REGISTRY):
            click.echo(cid)
        return
    cfg = load_config(config_path)
    seed = cfg["seed"] if seed is None else seed
    workers = workers or cfg["workers"]
    out_path = out_path or cfg["out"]
    report = run(conjecture_id, parse_params(params), seed=seed,
                 out_path=out_path, workers=workers)
    click.echo(report.to_json())
    if report.verdict == "counterexample":
        sys.exit(2)


@main.command()
@click.argument("space")
@click.argument("functional")
@click.option("--max", "direction", flag_value="max", default=True)
@click.option("--min", "direction", flag_value="min")
@click.option("--param", "params", multiple=True)
@click.option("--budget", type=int, default=None, help="Node budget.")
@click.option("--workers", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def search(space, functional, direction, params, budget, workers, config_path):
    """Extremal search: SPACE like all-n3, FUNCTIONAL like fei-ratio."""
    from .search import extremal_search
    from .spaces import parse_space

    cfg = load_config(config_path)
    out = extremal_search(
        parse_space(space),
        functional,
        direction,
        parse_params(params),
        node_budget=budget or cfg["node_budget"],
        workers=workers or cfg["workers"],
    )
    click.echo(
        json.dumps(
            {
                "space": space, "functional": functional, "direction": direction,
                "value": out.value, "witness": out.witness_hex,
                "evaluated": out.evaluated, "budgeted": out.budgeted,
            },
            sort_keys=True,
        )
    )


@main.group()
def gauss():
    """Monte Carlo estimates on Gaussian space (CSV: value,std_error,samples,seed)."""


def _parse_region(spec: str, dim: int):
    from .gaussian import (
        CenteredBall,
        Complement,
        Halfspace,
        SimplexCell,
        region_from_dict,
        simplex_vectors,
    )

    spec = spec.strip()
    if spec.startswith("json:"):
        return region_from_dict(json.loads(spec[5:]))
    if spec.startswith("complement:"):
        return Complement(_parse_region(spec[len("complement:"):], dim))
    if spec.startswith("halfspace:"):
        _, axis, theta = spec.split(":")
        v = np.zeros(dim)
        v[int(axis)] = 1.0
        return Halfspace(v, float(theta))
    if spec.startswith("ball:"):
        return CenteredBall(dim, float(spec.split(":")[1]))
    if spec.startswith("simplex:"):
        _, i, q = spec.split(":")
        return SimplexCell(int(i), simplex_vectors(int(q), dim))
    raise ValueError(f"cannot parse region {spec!r}")


@gauss.command("joint-prob")
@click.option("--dim", type=int, required=True)
@click.option("--rho", type=float, required=True)
@click.option("--a", "a_spec", required=True)
@click.option("--b", "b_spec", required=True)
@click.option("--samples", type=int, default=1_000_000)
@click.option("--seed", type=int, default=0)
@click.option("--symmetrized", is_flag=True)
def gauss_joint_prob(dim, rho, a_spec, b_spec, samples, seed, symmetrized):
    from .gaussian import joint_prob

    est = joint_prob(
        _parse_region(a_spec, dim), _parse_region(b_spec, dim), rho,
        samples=samples, seed=seed, symmetrized=symmetrized,
    )
    click.echo(est.csv_row())


@gauss.command("partition")
@click.option("--q", type=int, default=3)
@click.option("--dim", type=int, default=2)
@click.option("--rho", type=float, required=True)
@click.option("--samples", type=int, default=1_000_000)
@click.option("--seed", type=int, default=0)
def gauss_partition(q, dim, rho, samples, seed):
    from .gaussian import SimplexCell, partition_stability, simplex_vectors

    cells = [SimplexCell(i, simplex_vectors(q, dim)) for i in range(q)]
    est = partition_stability(cells, rho, samples=samples, seed=seed)
    click.echo(est.csv_row())


@gauss.command("widths")
@click.option("--vectors", "vectors_json", default=None, help="JSON matrix.")
@click.option("--coords", type=int, default=None, help="Use {e_1..e_n}.")
@click.option("--samples", type=int, default=1_000_000)
@click.option("--seed", type=int, default=0)
def gauss_widths(vectors_json, coords, samples, seed):
    from .gaussian import widths

    if vectors_json:
        T = np.asarray(json.loads(vectors_json), dtype=float)
    elif coords:
        T = np.eye(coords)
    else:
        raise click.UsageError("need --vectors or --coords")
    res = widths(T, samples=samples, seed=seed)
    b = res.b if res.b_exact else res.b.value
    click.echo(f"b,{b!r},exact={res.b_exact}")
    click.echo("g," + res.g.csv_row())


@gauss.command("ball-radius")
@click.option("--dim", type=int, required=True)
@click.option("--mu", type=float, required=True)
def gauss_ball_radius(dim, mu):
    from .gaussian import ball_radius

    click.echo(repr(ball_radius(dim, mu)))


@gauss.command("pairs")
@click.option("--dim", type=int, required=True)
@click.option("--rho", type=float, required=True)
@click.option("--samples", type=int, default=5)
@click.option("--seed", type=int, default=0)
def gauss_pairs(dim, rho, samples, seed):
    from .gaussian import correlated_pairs

    for x, y in correlated_pairs(dim, rho, samples, seed):
        click.echo(",".join(repr(float(v)) for v in x) + ","
                   + ",".join(repr(float(v)) for v in y))


@main.command("report")
@click.argument("path", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["csv", "markdown"]), default="csv")
def report_cmd(path, fmt):
    """Render a JSONL report file as a CSV or markdown table."""
    reports = load_reports(path)
    if fmt == "csv":
        click.echo(render_csv(reports), nl=False)
    else:
        click.echo(render_markdown(reports), nl=False)


def entry():
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help paths
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except SystemExit:
        raise
    except (BoolfunError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entry()
