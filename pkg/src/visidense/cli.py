"""Command-line front end emitting reproducible density and ratio reports.

Exit codes: 0 success, 2 argument error, 3 resource error.  Output is
deterministic for fixed arguments except the timestamp metadata field.
"""

import sys
from fractions import Fraction

import click

from . import lattice, ratios
from .errors import ResourceLimitError
from .freegrp import (abelian_census_free, annular_estimate,
                      visible_fraction)
from .numtheory import zeta
from .report import DENSITY_COLUMNS, Report, density_rows
from .surfgrp import sphere_enumerate


def parse_omega(spec):
    """'box:lo,hi;lo,hi' or 'ball:c1,c2,...;radius' with rational entries."""
    kind, _, body = spec.partition(":")
    if not body:
        raise click.UsageError(f"malformed omega spec {spec!r}")
    if kind == "box":
        bounds = []
        for axis in body.split(";"):
            parts = axis.split(",")
            if len(parts) != 2:
                raise click.UsageError(f"box axis needs 'lo,hi', got {axis!r}")
            bounds.append((Fraction(parts[0]), Fraction(parts[1])))
        return lattice.box_omega(*bounds)
    if kind == "ball":
        center, _, radius = body.rpartition(";")
        if not center:
            raise click.UsageError("ball spec needs 'c1,...,cr;radius'")
        return lattice.ball_omega(
            [Fraction(c) for c in center.split(",")], Fraction(radius))
    raise click.UsageError(f"omega kind must be box or ball, got {kind!r}")


def _emit(ctx, rep):
    out = rep.to_json() if ctx.obj["format"] == "json" else rep.to_csv()
    if ctx.obj["output"]:
        with open(ctx.obj["output"], "w") as fh:
            fh.write(out)
    else:
        click.echo(out, nl=False)
        if not out.endswith("\n"):
            click.echo()
    if ctx.obj["plot"]:
        from .plotting import render_density_figure
        render_density_figure(rep, ctx.obj["plot"])


def _run(ctx, build):
    try:
        rep = build()
    except ResourceLimitError as exc:
        click.echo(f"resource error: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(ctx, rep)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default="json", show_default=True)
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker count for sphere enumeration.")
@click.option("--seed", type=int, default=None,
              help="Seed recorded for randomized property checks.")
@click.option("--output", "-o", type=click.Path(), default=None,
              help="Write the report to a file instead of stdout.")
@click.option("--plot", type=click.Path(), default=None,
              help="Also render a convergence figure into this directory.")
@click.pass_context
def main(ctx, fmt, threads, seed, output, plot):
    """Visible-element densities in free-abelian, free and surface groups."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, threads=threads, seed=seed,
                   output=output, plot=plot)


@main.command("limits")
@click.option("--rank", type=int, required=True,
              help="Rank of the abelianization.")
@click.pass_context
def limits_cmd(ctx, rank):
    """Theoretical even/odd/annular density limits."""
    def build():
        bl = ratios.beta_limits(rank)
        return Report(
            "limits", {"rank": rank, "seed": ctx.obj["seed"]},
            ["rank", "even", "odd", "annular"],
            [{"rank": rank, "even": bl.even, "odd": bl.odd,
              "annular": bl.annular}],
        )
    _run(ctx, build)


@main.command("lattice")
@click.option("--rank", type=int, required=True)
@click.option("--norm", type=click.Choice([lattice.L1, lattice.L2,
                                           lattice.LINF]),
              default=lattice.LINF, show_default=True)
@click.option("--radius", type=int, required=True,
              help="Ball radius, or the scale t with --omega.")
@click.option("--t-visible", "t_visible", type=int, default=1,
              show_default=True, help="Count t-visible points.")
@click.option("--parity", is_flag=True,
              help="Add the even-length visible fraction.")
@click.option("--omega", default=None,
              help="Measure check over box:lo,hi;... or ball:c,...;r.")
@click.pass_context
def lattice_cmd(ctx, rank, norm, radius, t_visible, parity, omega):
    """Visible-point counts and densities in Z^rank."""
    def build():
        params = {"rank": rank, "norm": norm, "radius": radius,
                  "t_visible": t_visible, "parity": parity, "omega": omega,
                  "seed": ctx.obj["seed"]}
        if omega is not None:
            spec = parse_omega(omega)
            measured = lattice.measure_ratio(spec, rank, radius,
                                             gcd_class=t_visible)
            expected = (1.0 / (t_visible ** rank * zeta(rank, 1e-12))
                        * spec.lebesgue())
            return Report("lattice", params,
                          ["t", "measure", "theoretical_limit"],
                          [{"t": radius, "measure": measured,
                            "theoretical_limit": expected}])
        ball = lattice.ball_count(rank, norm, radius)
        if norm == lattice.L2:
            visible = lattice.gcd_census(rank, norm, radius).count(t_visible)
        else:
            visible = lattice.visible_count_mobius(rank, norm, radius,
                                                   t_visible)
        z = zeta(rank, 1e-12)
        row = {
            "n": radius,
            "sphere_or_ball_size": str(ball),
            "visible_count": str(visible),
            "fraction": float(Fraction(visible, ball)),
            "annular_estimate": None,
            "theoretical_even": None,
            "theoretical_odd": None,
            "theoretical_annular": 1.0 / (t_visible ** rank * z),
        }
        columns = list(DENSITY_COLUMNS)
        if parity:
            row["even_visible_fraction"] = lattice.even_visible_fraction(
                rank, norm, radius)
            row["theoretical_even"] = (
                (2 ** (rank - 1) - 1) / ((2 ** rank - 1) * z))
            columns.append("even_visible_fraction")
        return Report("lattice", params, columns, [row])
    _run(ctx, build)


@main.command("free")
@click.option("--rank", type=int, required=True)
@click.option("--max-n", type=int, required=True)
@click.pass_context
def free_cmd(ctx, rank, max_n):
    """Sphere censuses and visible densities of the free group F_rank."""
    def build():
        censuses = abelian_census_free(rank, max_n)
        rows = density_rows(censuses, ratios.beta_limits(rank),
                            visible_fraction, annular_estimate)
        return Report("free", {"rank": rank, "max_n": max_n,
                               "seed": ctx.obj["seed"]},
                      DENSITY_COLUMNS, rows)
    _run(ctx, build)


@main.command("surface")
@click.option("--genus", type=int, required=True)
@click.option("--max-n", type=int, required=True)
@click.option("--checkpoint", type=click.Path(), default=None,
              help="Spill/resume BFS levels through this file.")
@click.pass_context
def surface_cmd(ctx, genus, max_n, checkpoint):
    """Sphere censuses and visible densities of the genus-k surface group."""
    def build():
        censuses = sphere_enumerate(genus, max_n, checkpoint=checkpoint,
                                    threads=ctx.obj["threads"])
        rows = density_rows(censuses, ratios.beta_limits(2 * genus),
                            visible_fraction, annular_estimate)
        return Report("surface", {"genus": genus, "max_n": max_n,
                                  "checkpoint": checkpoint,
                                  "seed": ctx.obj["seed"]},
                      DENSITY_COLUMNS, rows)
    _run(ctx, build)


def _target_censuses(target, rank_k, genus, t, threads):
    if target == "free":
        if rank_k is None:
            raise click.UsageError("--rank-k is required for a free target")
        return abelian_census_free(rank_k, t), rank_k
    if genus is None:
        raise click.UsageError("--genus is required for a surface target")
    return sphere_enumerate(genus, t, threads=threads), 2 * genus


@main.command("ratio")
@click.option("--mode", type=click.Choice(["lattice", "sphere"]),
              required=True)
@click.option("--s", "s", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--rank-n", type=int, required=True,
              help="Source rank (lattice rank or free-group rank).")
@click.option("--rank-k", type=int, default=None,
              help="Target lattice rank / free-group rank.")
@click.option("--genus", type=int, default=None,
              help="Target surface genus (sphere mode).")
@click.option("--norm", type=click.Choice([lattice.L1, lattice.LINF]),
              default=lattice.LINF, show_default=True)
@click.option("--target", type=click.Choice(["free", "surface"]),
              default="free", show_default=True)
@click.pass_context
def ratio_cmd(ctx, mode, s, t, rank_n, rank_k, genus, norm, target):
    """Mapping ratios with their theoretical sandwich bounds."""
    def build():
        params = {"mode": mode, "s": s, "t": t, "rank_n": rank_n,
                  "rank_k": rank_k, "genus": genus, "norm": norm,
                  "target": target, "seed": ctx.obj["seed"]}
        if mode == "lattice":
            if rank_k is None:
                raise click.UsageError("--rank-k is required in lattice mode")
            value = ratios.mapping_ratio_lattice(rank_n, rank_k, norm, s, t)
            lower, upper = ratios.mapping_ratio_bounds_lattice(rank_n, rank_k)
            rows = [{"s": s, "t": t, "ratio": float(value),
                     "ratio_exact": str(value),
                     "limit_lower": lower, "limit_upper": upper}]
            return Report("ratio", params,
                          ["s", "t", "ratio", "ratio_exact",
                           "limit_lower", "limit_upper"], rows)
        source = abelian_census_free(rank_n, s)
        targets, target_rank = _target_censuses(
            target, rank_k, genus, t, ctx.obj["threads"])
        lower, upper = ratios.spherical_mapping_bounds(source[s], targets[t])
        rows = [{"s": s, "t": t, "lower": lower, "upper": upper,
                 "source_visible_fraction": visible_fraction(source[s]),
                 "target_visible_fraction": visible_fraction(targets[t]),
                 "target_rank": target_rank}]
        return Report("ratio", params,
                      ["s", "t", "lower", "upper",
                       "source_visible_fraction",
                       "target_visible_fraction", "target_rank"], rows)
    _run(ctx, build)


@main.command("equations")
@click.option("--vars", "num_vars", type=int, required=True,
              help="Number of variables on the left-hand side.")
@click.option("--s", "s", type=int, required=True,
              help="Length of the left-hand side.")
@click.option("--t", "t", type=int, required=True,
              help="Length of the right-hand side.")
@click.option("--target", type=click.Choice(["free", "surface"]),
              default="free", show_default=True)
@click.option("--rank-k", type=int, default=None,
              help="Target free-group rank.")
@click.option("--genus", type=int, default=None,
              help="Target surface genus.")
@click.pass_context
def equations_cmd(ctx, num_vars, s, t, target, rank_k, genus):
    """Solvability bounds for (s,t)-homogeneous equations."""
    def build():
        params = {"vars": num_vars, "s": s, "t": t, "target": target,
                  "rank_k": rank_k, "genus": genus,
                  "seed": ctx.obj["seed"]}
        source = abelian_census_free(num_vars, s)
        targets, target_rank = _target_censuses(
            target, rank_k, genus, t, ctx.obj["threads"])
        lower, upper = ratios.equation_ratio_bounds(source[s], targets[t])
        verdicts = ratios.verdict_fractions(source[s], targets[t])
        bl = ratios.beta_limits(target_rank)
        bn = ratios.beta_limits(num_vars)
        beta_s = bn.even if s % 2 == 0 else bn.odd
        beta_t = bl.even if t % 2 == 0 else bl.odd
        rows = [{
            "s": s, "t": t, "lower": lower, "upper": upper,
            "limit_lower": beta_s,
            "limit_upper": 1.0 - beta_t * (1.0 - beta_s),
            "solvable_fraction": float(verdicts[ratios.Verdict.SOLVABLE]),
            "unsolvable_fraction": float(verdicts[ratios.Verdict.UNSOLVABLE]),
            "unknown_fraction": float(verdicts[ratios.Verdict.UNKNOWN]),
        }]
        return Report("equations", params,
                      ["s", "t", "lower", "upper", "limit_lower",
                       "limit_upper", "solvable_fraction",
                       "unsolvable_fraction", "unknown_fraction"], rows)
    _run(ctx, build)


if __name__ == "__main__":
    main()
