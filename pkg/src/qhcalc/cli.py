"""Command-line front end with reproducible JSON output.

Exit codes: 0 ok/consistent, 2 mathematical contradiction found,
3 inconclusive (a hypothesis gate fired), 64 usage or input error.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import carriers as carriers_mod
from . import ladders as ladders_mod
from . import models as models_mod
from . import rings as rings_mod
from . import serialize as ser
from .qalgebra import GroundField
from .spectra import CappedOrbit, MonotoneData, augmented_action, iterate, recap

EXIT_OK = 0
EXIT_CONTRADICTION = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64


class Contradiction(click.ClickException):
    exit_code = EXIT_CONTRADICTION


class Inconclusive(click.ClickException):
    exit_code = EXIT_INCONCLUSIVE


def _emit(ctx, result, invocation: dict):
    fmt = ctx.obj.get("format", "json")
    envelope = {"invocation": invocation, "result": result}
    if fmt == "json":
        click.echo(json.dumps(envelope, indent=2, sort_keys=True))
    elif fmt == "csv":
        rows = result if isinstance(result, list) else [result]
        if rows and isinstance(rows[0], dict):
            keys = sorted(rows[0])
            click.echo(",".join(keys))
            for r in rows:
                click.echo(",".join(str(r.get(k, "")) for k in keys))
        else:
            for r in rows:
                click.echo(str(r))
    else:  # table
        rows = result if isinstance(result, list) else [result]
        for r in rows:
            if isinstance(r, dict):
                for k in sorted(r):
                    click.echo(f"{k:24} {r[k]}")
                click.echo("")
            else:
                click.echo(str(r))


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"malformed JSON in {path}: {exc}")


def _load_ring(path: str, field_spec: str = None):
    field = GroundField.from_spec(field_spec) if field_spec else None
    return ser.ring_from_json(_load_json(path), field=field)


@click.group()
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "table", "csv"]))
@click.pass_context
def cli(ctx, fmt):
    """Exact quantum cohomology and action/index calculus."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    # parallelism cap for the search commands; enumeration is sequential,
    # so the variable only bounds, never changes, results
    ctx.obj["threads"] = int(os.environ.get("LADDERS_THREADS", "1") or "1")


# ---------------------------------------------------------------------------
# ring


@cli.group()
def ring():
    """Quantum ring computations."""


@ring.command("mul")
@click.option("--ring", "ring_path", required=True)
@click.option("--a", "a_lit", required=True)
@click.option("--b", "b_lit", required=True)
@click.option("--field", "field_spec", default=None)
@click.pass_context
def ring_mul(ctx, ring_path, a_lit, b_lit, field_spec):
    r = _load_ring(ring_path, field_spec)
    a = ser.class_from_str(r, a_lit)
    b = ser.class_from_str(r, b_lit)
    out = ser.class_to_str(r.quantum_product(a, b))
    _emit(ctx, out, {"cmd": "ring mul", "ring": ring_path, "a": a_lit, "b": b_lit,
                     "field": field_spec})


@ring.command("power")
@click.option("--ring", "ring_path", required=True)
@click.option("--class", "cls_lit", required=True)
@click.option("--d", required=True, type=int)
@click.option("--field", "field_spec", default=None)
@click.pass_context
def ring_power(ctx, ring_path, cls_lit, d, field_spec):
    r = _load_ring(ring_path, field_spec)
    u = ser.class_from_str(r, cls_lit)
    out = ser.class_to_str(r.power(u, d))
    _emit(ctx, out, {"cmd": "ring power", "ring": ring_path, "class": cls_lit,
                     "d": d, "field": field_spec})


@ring.command("basis")
@click.option("--ring", "ring_path", required=True)
@click.option("--degree", required=True, type=int)
@click.option("--field", "field_spec", default=None)
@click.pass_context
def ring_basis(ctx, ring_path, degree, field_spec):
    r = _load_ring(ring_path, field_spec)
    labels = [ser.class_to_str(r.basis_class(lbl)) for lbl in r.basis(degree)]
    _emit(ctx, labels, {"cmd": "ring basis", "ring": ring_path, "degree": degree})


# ---------------------------------------------------------------------------
# ladders


@cli.group()
def ladders():
    """Product decompositions and ladders."""


@ladders.command("search")
@click.option("--ring", "ring_path", required=True)
@click.option("--ell-max", required=True, type=int)
@click.option("--nu-max", default=2, type=int)
@click.option("--out", "out_path", default=None)
@click.pass_context
def ladders_search(ctx, ring_path, ell_max, nu_max, out_path):
    r = _load_ring(ring_path)
    decs = ladders_mod.search_decompositions(r, ell_max, nu_max)
    payload = [ser.decomposition_to_json(d) for d in decs]
    if out_path:
        Path(out_path).write_text(json.dumps(payload, indent=2))
    _emit(ctx, payload, {"cmd": "ladders search", "ring": ring_path,
                         "ell_max": ell_max, "nu_max": nu_max})


@ladders.command("verify")
@click.option("--ring", "ring_path", required=True)
@click.option("--dec", "dec_path", required=True)
@click.pass_context
def ladders_verify(ctx, ring_path, dec_path):
    r = _load_ring(ring_path)
    dec = ser.decomposition_from_json(r, _load_json(dec_path))
    report = ladders_mod.verify_decomposition(r, dec)
    _emit(ctx, {"valid": report.valid, "reasons": list(report.reasons)},
          {"cmd": "ladders verify", "ring": ring_path, "dec": dec_path})
    if not report.valid:
        raise Contradiction("decomposition invalid: " + "; ".join(report.reasons))


@ladders.command("build")
@click.option("--ring", "ring_path", required=True)
@click.option("--dec", "dec_path", required=True)
@click.pass_context
def ladders_build(ctx, ring_path, dec_path):
    r = _load_ring(ring_path)
    dec = ser.decomposition_from_json(r, _load_json(dec_path))
    ladder = ladders_mod.build_ladder(r, dec)
    _emit(ctx, {
        "window": [ser.class_to_str(v) for v in ladder.window],
        "hom_degrees": list(ladder.hom_degrees),
        "nu": ladder.nu,
        "ell": ladder.ell,
    }, {"cmd": "ladders build", "ring": ring_path, "dec": dec_path})


@ladders.command("case2")
@click.option("--ring", "ring_path", required=True)
@click.option("--class", "cls_lit", default=None)
@click.option("--orbits", required=True, type=int)
@click.pass_context
def ladders_case2(ctx, ring_path, cls_lit, orbits):
    r = _load_ring(ring_path)
    u = (ser.class_from_str(r, cls_lit) if cls_lit
         else rings_mod.first_chern_generator(r))
    try:
        params = ladders_mod.case_ii_parameters(r, u, orbits)
    except ladders_mod.PowerVanishesError as exc:
        _emit(ctx, {"error": str(exc), "vanishing_exponent": exc.exponent},
              {"cmd": "ladders case2", "ring": ring_path, "orbits": orbits})
        raise Contradiction(str(exc))
    _emit(ctx, {"d": params.d, "ell": params.ell},
          {"cmd": "ladders case2", "ring": ring_path, "class": cls_lit,
           "orbits": orbits})


# ---------------------------------------------------------------------------
# spectra


@cli.group()
def spectra():
    """Action, index, and augmented-action calculus."""


def _orbit_and_md(orbit_path, n_chern, lam):
    orbit = ser.orbit_from_json(_load_json(orbit_path))
    md = MonotoneData(N=n_chern, lam=ser.frac_from_str(lam))
    return orbit, md


@spectra.command("recap")
@click.option("--orbit", "orbit_path", required=True)
@click.option("--m", required=True, type=int)
@click.option("--chern", "n_chern", required=True, type=int)
@click.option("--lam", required=True)
@click.pass_context
def spectra_recap(ctx, orbit_path, m, n_chern, lam):
    orbit, md = _orbit_and_md(orbit_path, n_chern, lam)
    out = recap(orbit, m, md)
    _emit(ctx, ser.orbit_to_json(out),
          {"cmd": "spectra recap", "orbit": orbit_path, "m": m,
           "chern": n_chern, "lambda": lam})


@spectra.command("iterate")
@click.option("--orbit", "orbit_path", required=True)
@click.option("--k", required=True, type=int)
@click.pass_context
def spectra_iterate(ctx, orbit_path, k):
    orbit = ser.orbit_from_json(_load_json(orbit_path))
    _emit(ctx, ser.orbit_to_json(iterate(orbit, k)),
          {"cmd": "spectra iterate", "orbit": orbit_path, "k": k})


@spectra.command("augmented")
@click.option("--orbit", "orbit_path", required=True)
@click.option("--chern", "n_chern", required=True, type=int)
@click.option("--lam", required=True)
@click.pass_context
def spectra_augmented(ctx, orbit_path, n_chern, lam):
    orbit, md = _orbit_and_md(orbit_path, n_chern, lam)
    _emit(ctx, ser.frac_to_str(augmented_action(orbit, md)),
          {"cmd": "spectra augmented", "orbit": orbit_path,
           "chern": n_chern, "lambda": lam})


# ---------------------------------------------------------------------------
# models


@cli.group()
def models():
    """Explicit Hamiltonian models."""


def _parse_lambdas(text):
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"bad --lambdas value {text!r}: {exc}")


def _model_report(model):
    orbits = models_mod.fixed_points(model)
    report = models_mod.verify_equal_augmented_actions(model, orbits)
    return {
        "orbits": [ser.orbit_to_json(o) for o in orbits],
        "equal_augmented_actions": report.ok,
        "common_value": ser.frac_to_str(report.common_value),
        "details": list(report.details),
    }


@models.command("cpn")
@click.option("--lambdas", required=True)
@click.option("--verify", is_flag=True, default=False)
@click.pass_context
def models_cpn(ctx, lambdas, verify):
    model = models_mod.CPnQuadraticModel(lambdas=_parse_lambdas(lambdas))
    payload = _model_report(model)
    if not verify:
        payload.pop("equal_augmented_actions")
        payload.pop("details")
    _emit(ctx, payload, {"cmd": "models cpn", "lambdas": lambdas})


@models.command("product")
@click.option("--factors", required=True,
              help="factor lambda lists separated by ';', e.g. '0,1;0,1'")
@click.pass_context
def models_product(ctx, factors):
    parts = [p for p in factors.split(";") if p.strip()]
    model = models_mod.product_model(
        [models_mod.CPnQuadraticModel(lambdas=_parse_lambdas(p)) for p in parts]
    )
    _emit(ctx, _model_report(model), {"cmd": "models product", "factors": factors})


@models.command("verify")
@click.option("--model", "model_path", required=True)
@click.pass_context
def models_verify(ctx, model_path):
    model = ser.model_from_json(_load_json(model_path))
    payload = _model_report(model)
    _emit(ctx, payload, {"cmd": "models verify", "model": model_path})
    if not payload["equal_augmented_actions"]:
        raise Contradiction("augmented actions are not all equal")


# ---------------------------------------------------------------------------
# carriers


@cli.group()
def carriers():
    """Action-selector carrier simulation."""


def _load_scenario(path):
    data = _load_json(path)
    table = ser.table_from_json(data)
    primes = [int(p) for p in data.get("primes", [])]
    ladder = None
    if "ladder" in data:
        spec = data["ladder"]
        if isinstance(spec, str):
            spec = _load_json(str(Path(path).parent / spec))
        ring = ser.ring_from_json(spec["ring"])
        dec = ser.decomposition_from_json(ring, spec["decomposition"])
        ladder = ladders_mod.build_ladder(ring, dec)
    return table, ladder, primes


@carriers.command("assignments")
@click.option("--scenario", "scenario_path", required=True)
@click.option("--k", required=True, type=int)
@click.pass_context
def carriers_assignments(ctx, scenario_path, k):
    table, ladder, _ = _load_scenario(scenario_path)
    if ladder is None:
        raise click.UsageError("scenario has no 'ladder' entry")
    assignments = carriers_mod.admissible_assignments(table, ladder, k)
    _emit(ctx, [
        {"k": a.k, "slots": [[oid, m] for oid, m in a.slots]} for a in assignments
    ], {"cmd": "carriers assignments", "scenario": scenario_path, "k": k})


@carriers.command("verify")
@click.option("--scenario", "scenario_path", required=True)
@click.pass_context
def carriers_verify(ctx, scenario_path):
    table, ladder, primes = _load_scenario(scenario_path)
    if ladder is None:
        raise click.UsageError("scenario has no 'ladder' entry")
    if not primes:
        raise click.UsageError("scenario has no 'primes' entry")
    verdict = carriers_mod.relation_verdict(table, ladder, primes)
    _emit(ctx, {
        "status": verdict.status,
        "witness": [str(w) for w in verdict.witness],
        "details": list(verdict.details),
    }, {"cmd": "carriers verify", "scenario": scenario_path})
    if verdict.status == "contradiction":
        raise Contradiction("; ".join(verdict.details) or "contradiction")


@carriers.command("negmon")
@click.option("--scenario", "scenario_path", required=True)
@click.pass_context
def carriers_negmon(ctx, scenario_path):
    table, _, primes = _load_scenario(scenario_path)
    if not primes:
        raise click.UsageError("scenario has no 'primes' entry")
    verdict = carriers_mod.neg_monotone_obstruction(table, primes)
    _emit(ctx, {
        "status": verdict.status,
        "witness": [str(w) for w in verdict.witness],
        "details": list(verdict.details),
    }, {"cmd": "carriers negmon", "scenario": scenario_path})
    if verdict.status == "contradiction":
        raise Contradiction("; ".join(verdict.details))
    if any("degenerate" in d for d in verdict.details):
        raise Inconclusive("; ".join(verdict.details))


# ---------------------------------------------------------------------------
# entry point


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
    except (Contradiction, Inconclusive) as exc:
        click.echo(exc.format_message(), err=True)
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        click.echo(exc.format_message(), err=True)
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        click.echo(exc.format_message(), err=True)
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except (ser.ParseError, ValueError, KeyError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
