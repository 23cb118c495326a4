"""
Parabolic Catalan Command-Line Application
Counts, lists and verifies R-312-avoiding permutations, their keys and
their Demazure tableau sets
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

# Load environment variables from .env file
from dotenv import load_dotenv

load_dotenv()

import click

from combinatorics.errors import InputError, ParacatError
from combinatorics.rtuples import RChain, RSet, RTuple
from combinatorics.scanning import scanning_tableau
from combinatorics.settings import Settings
from combinatorics.tableaux import Partition, Tableau, is_gapless_key, key_of_perm, row_end_list, row_end_max
from services.demazure_service import DemazureService
from services.enumeration_service import (
    OEIS_SEQUENCES,
    EnumerationService,
    OrderedPartition,
    ShapeTuple,
    chain_text,
    parse_pattern,
)
from services.oracle_factory import demazure_convexity
from services.verification_service import FAILED, VerificationSuite
from services.witness_service import convexity_witness

logger = logging.getLogger(__name__)

FAMILIES = ("r312", "gapless", "chains", "gchains", "shapes", "opart", "keys", "multiperms")


class ToolkitError(click.ClickException):
    """A domain error surfaced through click with the error's own exit code"""

    def __init__(self, error: ParacatError):
        super().__init__(str(error))
        self.exit_code = error.exit_code


class ParacatGroup(click.Group):
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ParacatError as e:
            raise ToolkitError(e) from e


@dataclass
class Command:
    name: str
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CliState:
    parse_only: bool = False
    command: Optional[Command] = None
    settings: Optional[Settings] = None


def configure_logging(settings: Settings) -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def _record(ctx: click.Context, name: str, **options) -> bool:
    """Store the validated command; True means stop before doing any work"""
    state = ctx.ensure_object(CliState)
    state.command = Command(name, options)
    return state.parse_only


def _settings(ctx: click.Context) -> Settings:
    state = ctx.ensure_object(CliState)
    if state.settings is None:
        state.settings = Settings.from_env()
    return state.settings


def _emit(as_json: bool, payload: Any, text: str) -> None:
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(text)


def _perm_for_shape(perm: str, shape: Partition) -> RTuple:
    p = RTuple.parse(perm)
    if p.rset != shape.rset:
        raise InputError(
            f"({p}) has R = {{{p.rset}}} (n={p.n}) but shape ({shape}) needs R = {{{shape.rset}}} (n={shape.n})"
        )
    return p


def _item_json(item) -> Any:
    if isinstance(item, (RTuple, RChain, ShapeTuple, OrderedPartition, Tableau)):
        return item.to_json()
    if isinstance(item, tuple) and item and isinstance(item[0], frozenset):
        return {"chain": [sorted(block) for block in item]}
    return {"word": list(item)}


def _item_text(item) -> str:
    if isinstance(item, Tableau):
        return f"{item}\n"
    if isinstance(item, tuple) and item and isinstance(item[0], frozenset):
        return chain_text(item)
    if isinstance(item, tuple):
        return "".join(str(v) for v in item)
    return str(item)


json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text")
n_option = click.option("--n", "n", type=int, required=True, help="Size of the ground set [n]")
r_option = click.option("--r", "r_text", default="", show_default=False, help='R as a comma list, e.g. "3,8"')
lambda_option = click.option("--lambda", "lambda_text", required=True, help="Partition with explicit zeros, e.g. 2,1,0")
perm_option = click.option("--perm", "perm_text", required=True, help='R-permutation, e.g. "3;1;2"')


@click.group(cls=ParacatGroup)
@click.pass_context
def cli(ctx: click.Context):
    """Parabolic Catalan combinatorics: R-312 avoidance, keys and Demazure sets."""
    state = ctx.ensure_object(CliState)
    if not state.parse_only:
        configure_logging(_settings(ctx))


@cli.command()
@n_option
@r_option
@json_option
@click.pass_context
def count(ctx, n, r_text, as_json):
    """Count R-312-avoiding R-permutations (C_n^R)."""
    rset = RSet.parse(r_text, n)
    if _record(ctx, "count", n=n, rset=rset):
        return
    total = EnumerationService(_settings(ctx)).count(rset)
    _emit(as_json, {"n": n, "r": list(rset.elements), "count": total}, f"C_{n}^{{{rset}}} = {total}")


@cli.command("count-total")
@n_option
@click.option("--formula", is_flag=True, help="Evaluate the alternating-sum formula instead of summing")
@json_option
@click.pass_context
def count_total(ctx, n, formula, as_json):
    """Total parabolic Catalan number C_n^Σ."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if _record(ctx, "count-total", n=n, formula=formula):
        return
    total = EnumerationService(_settings(ctx)).count_total(n, formula)
    method = "formula" if formula else "summation"
    _emit(as_json, {"n": n, "count": total, "method": method}, f"C_{n}^Σ = {total}")


@cli.command("list")
@click.argument("family", type=click.Choice(FAMILIES))
@n_option
@r_option
@click.option("--pattern", default="312", show_default=True, help="Pattern for opart")
@json_option
@click.pass_context
def list_family(ctx, family, n, r_text, pattern, as_json):
    """List one family counted by C_n^R (gchains lists all R at once)."""
    rset = RSet.parse(r_text, n)
    parse_pattern(pattern)
    if _record(ctx, "list", family=family, n=n, rset=rset, pattern=pattern):
        return
    service = EnumerationService(_settings(ctx))
    items: List = service.generalized_chains(n) if family == "gchains" else service.family(family, rset, pattern)
    for item in items:
        _emit(as_json, _item_json(item), _item_text(item))


@cli.command()
@click.option("--seq", "sequence_id", type=click.Choice(OEIS_SEQUENCES), required=True)
@click.option("--terms", type=int, required=True)
@json_option
@click.pass_context
def oeis(ctx, sequence_id, terms, as_json):
    """Compute a prefix of the even-R or the total sequence from scratch."""
    if terms < 1:
        raise InputError(f"Need at least one term, got {terms}")
    if _record(ctx, "oeis", sequence_id=sequence_id, terms=terms):
        return
    values = EnumerationService(_settings(ctx)).oeis(sequence_id, terms)
    _emit(as_json, {"sequence": sequence_id, "terms": values}, ", ".join(str(v) for v in values))


@cli.command()
@lambda_option
@perm_option
@json_option
@click.pass_context
def key(ctx, lambda_text, perm_text, as_json):
    """The lambda-key of a permutation with its row end list."""
    shape = Partition.parse(lambda_text)
    p = _perm_for_shape(perm_text, shape)
    y = key_of_perm(p, shape)
    if _record(ctx, "key", shape=shape, perm=p):
        return
    ends = row_end_list(y)
    gapless = is_gapless_key(y)
    payload = {"tableau": y.to_json(), "row_end_list": str(ends), "gapless": gapless}
    _emit(as_json, payload, f"{y}\nrow end list: {ends}\ngapless key: {'yes' if gapless else 'no'}")


@cli.command()
@click.option("--tableau", "source", type=click.File("r"), required=True, help="Tableau JSON file, - for stdin")
@click.option("--paths", is_flag=True, help="Also print every scanning path")
@json_option
@click.pass_context
def scan(ctx, source, paths, as_json):
    """The scanning tableau (right key) of a tableau."""
    t = Tableau.loads(source.read())
    if _record(ctx, "scan", tableau=t, paths=paths):
        return
    result = scanning_tableau(t)
    if as_json:
        payload = result.to_json() if paths else {"scanning_tableau": result.s.to_json()}
        _emit(True, payload, "")
        return
    lines = [str(result.s)]
    if paths:
        for (l, k), cells in sorted(result.paths.items()):
            lines.append(f"({l},{k}): " + " ".join(f"({j},{i})" for j, i in cells))
    click.echo("\n".join(lines))


@cli.command()
@lambda_option
@click.option("--tuple", "tuple_text", required=True, help='R-increasing upper tuple, e.g. "1,3;2,3;3"')
@json_option
@click.pass_context
def rowendmax(ctx, lambda_text, tuple_text, as_json):
    """The largest tableau with a given row end list."""
    shape = Partition.parse(lambda_text)
    alpha = RTuple.parse(tuple_text)
    if _record(ctx, "rowendmax", shape=shape, alpha=alpha):
        return
    m = row_end_max(shape, alpha)
    _emit(as_json, m.to_json(), str(m))


def _demazure_output(ctx, mode: str, shape: Partition, p: RTuple, as_json: bool) -> None:
    settings = _settings(ctx)
    service = DemazureService(settings)
    if mode == "set":
        points = service.demazure_set(p, shape)
        if as_json:
            _emit(True, points.to_json(), "")
        else:
            click.echo("\n\n".join(str(t) for t in points.tableaux()))
            click.echo(f"{len(points)} tableaux")
    elif mode == "poly":
        polynomial = service.polynomial(p, shape)
        _emit(as_json, polynomial.to_json(), str(polynomial))
    elif mode == "convexity":
        verdict = demazure_convexity(p, shape, settings)
        text = f"{verdict.label} ({verdict.method})"
        if verdict.counterexample is not None:
            text += f"\nmissing lattice point:\n{verdict.counterexample}"
        _emit(as_json, verdict.to_json(), text)
    else:
        witness = convexity_witness(p, shape)
        text = "\n".join([
            f"g={witness.g} h={witness.h} a={witness.a} b={witness.b} c={witness.c} d={witness.d}",
            f"chi_bar = {witness.chi_bar}",
            f"omega_bar = {witness.omega_bar}",
            f"X =\n{witness.x_key}",
            f"W =\n{witness.w_key}",
            f"T =\n{witness.t}",
            f"x = {witness.x}",
        ])
        _emit(as_json, witness.to_json(), text)


@cli.command()
@lambda_option
@perm_option
@click.option("--set", "mode", flag_value="set", default=True, help="List D_lambda(pi) (default)")
@click.option("--poly", "mode", flag_value="poly", help="Demazure polynomial")
@click.option("--convexity", "mode", flag_value="convexity", help="Convexity verdict")
@click.option("--witness", "mode", flag_value="witness", help="Nonconvexity witness")
@json_option
@click.pass_context
def demazure(ctx, lambda_text, perm_text, mode, as_json):
    """Demazure tableau set of a permutation and what can be said about it."""
    shape = Partition.parse(lambda_text)
    p = _perm_for_shape(perm_text, shape)
    key_of_perm(p, shape)
    if _record(ctx, "demazure", shape=shape, perm=p, mode=mode):
        return
    _demazure_output(ctx, mode, shape, p, as_json)


@cli.command()
@lambda_option
@perm_option
@json_option
@click.pass_context
def convexity(ctx, lambda_text, perm_text, as_json):
    """Decide whether D_lambda(pi) is convex."""
    shape = Partition.parse(lambda_text)
    p = _perm_for_shape(perm_text, shape)
    key_of_perm(p, shape)
    if _record(ctx, "convexity", shape=shape, perm=p):
        return
    _demazure_output(ctx, "convexity", shape, p, as_json)


@cli.command()
@lambda_option
@perm_option
@json_option
@click.pass_context
def witness(ctx, lambda_text, perm_text, as_json):
    """Explicit nonconvexity certificate for a 312-containing permutation."""
    shape = Partition.parse(lambda_text)
    p = _perm_for_shape(perm_text, shape)
    key_of_perm(p, shape)
    if _record(ctx, "witness", shape=shape, perm=p):
        return
    _demazure_output(ctx, "witness", shape, p, as_json)


@cli.command()
@click.option("--n-max", "n_max", type=int, default=4, show_default=True)
@click.option("--check", "checks", multiple=True, type=click.Choice(VerificationSuite.CHECKS))
@click.option("--timings", is_flag=True, help="Include wall-clock durations")
@json_option
@click.pass_context
def verify(ctx, n_max, checks, timings, as_json):
    """Run the exhaustive property suites up to n-max."""
    if n_max < 1:
        raise InputError(f"n-max must be positive, got {n_max}")
    if _record(ctx, "verify", n_max=n_max, checks=tuple(checks)):
        return
    report = VerificationSuite(_settings(ctx)).run(n_max, checks)
    if not timings:
        for result in report["results"]:
            result.pop("duration", None)
    if as_json:
        _emit(True, report, "")
    else:
        for result in report["results"]:
            line = f"{result['status'].upper():7} {result['check']}: {result['description']}"
            if "duration" in result:
                line += f" ({result['duration']}s)"
            click.echo(line)
            if "error" in result:
                click.echo(f"        {result['error']}")
            for total in result.get("details", {}).get("totals", []):
                click.echo(f"        {total}")
        summary = report["summary"]
        click.echo(f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped")
    if any(result["status"] == FAILED for result in report["results"]):
        ctx.exit(1)


def parse_args(argv: Sequence[str]) -> Command:
    """
    Parse and validate a command line without running it

    Raises:
        click.ClickException: exit code 2 for usage errors, 3 for invalid input
    """
    state = CliState(parse_only=True)
    cli.main(args=list(argv), prog_name="paracat", standalone_mode=False, obj=state)
    if state.command is None:
        raise click.UsageError("Missing command")
    return state.command


if __name__ == "__main__":
    cli(prog_name="paracat")
