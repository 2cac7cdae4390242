"""Command-line interface.

Exit codes: 0 all checks Proven, 1 something Undecided, 2 something Refuted
(or an empirical violation), 3 usage or input error.  Working precision is
set through ZETALINE_PREC_BITS.
"""

import json
import sys

import click

from . import empirical, optimizer, prop, thm1, thm2
from .pieces import catalogue
from .report import csv_lines, dumps
from .rigor import PREC, Interval, Status, iv
from .vdc import ak_bk, ck_dk

EXIT = {Status.PROVEN: 0, Status.UNDECIDED: 1, Status.REFUTED: 2}
USAGE = 3


class InputError(click.ClickException):
    exit_code = USAGE


def _load_json(path):
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _build(fn, mapping, where):
    try:
        return fn(mapping)
    except KeyError as exc:
        raise InputError(f"{where}: missing field {exc.args[0]!r}")
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}")


def _emit(text, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        try:
            with open(output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {output}: {exc.strerror}")


def _parse_t(s):
    """A t value as its log: accepts plain decimals or exp(x)."""
    s = s.strip()
    if s.startswith("exp(") and s.endswith(")"):
        return iv(s[4:-1])
    x = iv(s)
    if not x.lo > 0:
        raise InputError(f"t must be positive, got {s}")
    return x.log()


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Explicit bounds for zeta on the 1-line: certificates, scans, tables."""


@main.group()
def certify():
    """Run a certification pipeline and print its JSON certificate."""


@certify.command("thm1")
@click.option("--params", "params_path", type=click.Path(), help="JSON with eta3, h1, h2 and t0 or log_t0.")
@click.option("--target", default="1.721", show_default=True, help="Coefficient to certify A6 against ('none' to skip).")
@click.option("--output", type=click.Path(), default=None)
def certify_thm1(params_path, target, output):
    raw = _load_json(params_path)
    p = thm1.PAPER_PARAMS if raw is None else _build(thm1.Thm1Params.from_mapping, raw, "params")
    tgt = None if target.lower() == "none" else iv(target)
    cert = thm1.certify(p, target=tgt)
    st = cert.status()
    body = {"certificate": cert, "precision_bits": PREC}
    _emit(dumps("thm1", body, st), output)
    sys.exit(EXIT[st])


@certify.command("prop")
@click.option("--params", "params_path", type=click.Path(),
              help="JSON with objects part1, part2 (t1, eta, q0) and part3.")
@click.option("--output", type=click.Path(), default=None)
def certify_prop(params_path, output):
    raw = _load_json(params_path)
    if raw is None:
        a1, a2, b = prop.PAPER_A1, prop.PAPER_A2, prop.PAPER_B
    else:
        get = lambda k, fn: None if raw.get(k) is None else _build(fn, raw[k], k)
        a1 = get("part1", prop.PropParamsA.from_mapping)
        a2 = get("part2", prop.PropParamsA.from_mapping)
        b = get("part3", prop.PropParamsB.from_mapping)
    cert = prop.prop_certify(a1, a2, b)
    st = cert.status()
    _emit(dumps("prop", {"certificate": cert, "precision_bits": PREC}, st), output)
    sys.exit(EXIT[st])


@certify.command("thm2")
@click.option("--params", "params_path", type=click.Path(), help="JSON with t0, eps, C, d, d1.")
@click.option("--splice/--no-splice", default=False, show_default=True,
              help="Also run the empirical small-t splice on [3, 500].")
@click.option("--output", type=click.Path(), default=None)
def certify_thm2(params_path, splice, output):
    raw = _load_json(params_path)
    p = thm2.PAPER_PARAMS if raw is None else _build(thm2.Thm2Params.from_mapping, raw, "params")
    targets = (154, "430.5") if raw is None else (raw.get("R1"), raw.get("R2"))
    cert = thm2.thm2_certify(p, targets=targets, splice=splice)
    st = cert.status()
    _emit(dumps("thm2", {"certificate": cert, "precision_bits": PREC}, st), output)
    sys.exit(EXIT[st])


@main.command("empirical")
@click.option("--t-range", nargs=2, type=float, default=(3.0, 1e6), show_default=True)
@click.option("--grid", type=int, default=10000, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def empirical_cmd(t_range, grid, output):
    """Scan the 1-line on a log grid against the published constants."""
    if grid < 2:
        raise InputError("--grid must be >= 2")
    try:
        ts = empirical.log_grid(t_range[0], t_range[1], grid)
    except ValueError as exc:
        raise InputError(str(exc))
    checks = empirical.scan_1line(ts)
    bad = any(c.violations for c in checks)
    st = Status.REFUTED if bad else Status.PROVEN
    body = {"grade": "empirical", "t_range": [repr(t_range[0]), repr(t_range[1])], "grid": grid,
            "checks": [c.to_json() for c in checks]}
    _emit(dumps("empirical", body, st), output)
    sys.exit(EXIT[st])


@main.command("atlas")
@click.option("--t-range", nargs=2, type=str, required=True, help="Endpoints, decimals or exp(x).")
@click.option("--grid", type=int, default=64, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def atlas(t_range, grid, output):
    """CSV of the catalogue bounds on a log-spaced grid with the pointwise minimum.

    Columns: log_t, t, one column per piece, min, argmin.
    """
    if grid < 2:
        raise InputError("--grid must be >= 2")
    x0, x1 = _parse_t(t_range[0]), _parse_t(t_range[1])
    if not x0.hi < x1.lo:
        raise InputError("--t-range must be increasing")
    pieces = list(catalogue().values())
    header = ["log_t", "t"] + [p.name for p in pieces] + ["min", "argmin"]
    a, b = Interval(x0.lo), Interval(x1.hi)
    rows = []
    for i in range(grid):
        x = a + (b - a) * i / (grid - 1)
        vals = [p.value(x) for p in pieces]
        j = min(range(len(vals)), key=lambda k: (vals[k].hi, k))
        rows.append([x, x.exp()] + vals + [vals[j], pieces[j].name])
    _emit(csv_lines(header, rows), output)
    sys.exit(0)


@main.command("optimize")
@click.argument("objective", type=click.Choice(sorted(optimizer.OBJECTIVES)))
@click.option("--budget", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--space", "space_path", type=click.Path(), default=None, help="JSON search space.")
@click.option("--init/--no-init", default=False, help="Seed the search at the published parameters.")
@click.option("--output", type=click.Path(), default=None)
def optimize_cmd(objective, budget, seed, space_path, init, output):
    """Search for parameters minimizing a certified constant."""
    if budget < 1:
        raise InputError("--budget must be >= 1")
    raw = _load_json(space_path)
    space = None
    if raw is not None:
        space = _build(lambda m: optimizer.SearchSpace.from_mapping(m, optimizer.default_space(objective)),
                       raw, "space")
    start = optimizer.paper_point(objective) if init else None
    try:
        res = optimizer.optimize(objective, space, budget, seed, init=start)
    except optimizer.NoFeasiblePoint as exc:
        click.echo(str(exc), err=True)
        _emit(dumps("optimize", {"objective": objective, "violations": exc.histogram}, Status.REFUTED), output)
        sys.exit(2)
    _emit(dumps("optimize", {"result": res.to_json()}, Status.PROVEN), output)
    sys.exit(0)


@main.command("constants")
@click.option("--eta3", default="0.8410538348318537", show_default=True)
@click.option("--h", "h", default=None, help="Block ratio h (default: the value at the published parameters).")
@click.option("--kmax", type=int, default=10, show_default=True)
@click.option("--output", type=click.Path(), default=None)
def constants(eta3, h, kmax, output):
    """CSV of k, A_k, B_k, C_k, D_k (upper endpoints) for k = 3..kmax."""
    if kmax < 3:
        raise InputError("--kmax must be >= 3")
    e = iv(eta3)
    if h is None:
        p = thm1.PAPER_PARAMS
        kap = thm1.kappa(p.h2, p.log_t0)
        hv = p.h1 + p.h1 / (kap - 1)
    else:
        hv = iv(h)
    if not hv.lo > 1:
        raise InputError("--h must be > 1")
    rows = []
    for k in range(3, kmax + 1):
        kc = ak_bk(e, hv ** k, k)
        cd = ck_dk(e, hv, k)
        rows.append([k, kc.A_k, kc.B_k, cd.C_k, cd.D_k])
    _emit(csv_lines(["k", "A_k", "B_k", "C_k", "D_k"], rows), output)
    sys.exit(0)


def run(argv=None):
    """Entry point; maps click's usage errors (exit 2 by default) to 3."""
    try:
        rv = main.main(args=argv, prog_name="zetaline", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(USAGE)
    sys.exit(rv if isinstance(rv, int) else 0)


if __name__ == "__main__":
    run()
