"""Command-line interface: classify, verify, reproduce, enumerate-forms.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
from pathlib import Path

import click

from . import __version__, f2, qforms
from . import classifier as cl
from . import crossed as cr
from . import tables as tb
from .braiding import check_hexagons, solve_braidings
from .errors import CapacityError, TybraidError
from .oracle import FULL_MAX_ORDER, Stage, brute_force_braidings
from .qforms import Field
from .tydata import Case, TYData, make, parse_case

FORMATS = ["json", "csv", "markdown"]
# Aut(A_0) enumeration for pi_0 counts is skipped above this dimension
COUNT_MAX_DIM = 4


class VerificationFailed(Exception):
    """A computed result disagreed with an independent check."""


def _fail_input(msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def _tau_values(tau: str) -> list[int]:
    return {"+": [1], "-": [-1], "both": [1, -1]}[tau]


def _data(case: str, n: int, tau: int, l_blocks: int) -> TYData:
    c = parse_case(case)
    if c is Case.SPLIT_COMPLEX and l_blocks not in (0, 1, 2):
        raise click.BadParameter("--l-blocks must be 0, 1 or 2")
    return make(c, n, tau, l_blocks=l_blocks)


def _run(fn, *args):
    """Map library errors onto exit codes."""
    try:
        return fn(*args)
    except VerificationFailed as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    except (CapacityError, TybraidError, ValueError) as exc:
        _fail_input(str(exc))


# cache

CACHE_KIND = "tybraid-cache"


def _cache_header(n: int) -> dict:
    return {"kind": CACHE_KIND, "version": __version__, "N": n}


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def cache_lookup(path: Path, data: TYData, command: str):
    """A cached result for (data, command), or None if absent or stale."""
    if not path.exists():
        return None
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        return None
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        return None
    if header != _cache_header(data.n):
        return None
    for line in lines[1:]:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            continue
        if rec.get("command") != command or rec.get("checksum") != data.checksum():
            continue
        result = rec.get("result")
        if result is None or rec.get("result_sha256") != _digest(result):
            continue
        if result.get("data") != data.to_json():
            continue
        return result
    return None


def cache_store(path: Path, data: TYData, command: str, result: dict) -> None:
    header = _cache_header(data.n)
    lines = []
    if path.exists():
        lines = path.read_text(encoding="utf-8").splitlines()
        try:
            ok = bool(lines) and json.loads(lines[0]) == header
        except json.JSONDecodeError:
            ok = False
        if not ok:
            lines = []
    if not lines:
        lines = [json.dumps(header, sort_keys=True)]
    rec = {"command": command, "checksum": data.checksum(), "result": result,
           "result_sha256": _digest(result)}
    lines.append(json.dumps(rec, sort_keys=True))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# classify

def classify_result(data: TYData, count: bool | None = None) -> dict:
    if count is None:
        count = len(data.a0_basis) <= COUNT_MAX_DIM
    out = {"data": data.to_json(), "N": data.n}
    if data.case is Case.COMPLEX_COMPLEX:
        classes = cr.classify_crossed(data)
        out["crossed"] = True
        out["classes"] = [{"size": len(c["members"]),
                           "invariants": {"sgn_sigma": c["sgn_sigma"]},
                           "representative": c["representative"].to_json()} for c in classes]
        orders = []
        for c in classes:
            rep = c["representative"]
            formula = cr.crossed_pi0_by_formula(rep)
            if count and cr.crossed_pi0_by_count(rep) != formula:
                raise VerificationFailed(f"pi_0 order mismatch for {rep!r}")
            orders.append(formula)
        out["pi0_aut_br_orders"] = orders
        out["strong_equivalence_components"] = len(cr.strong_equivalence_components(data))
        return out
    classes = cl.classify(data)
    out["classes"] = [c.to_json() for c in classes]
    orders = []
    for c in classes:
        try:
            orders.append(cl.pi0_aut_br(c.representative, count=count)["order"])
        except AssertionError as exc:
            raise VerificationFailed(str(exc)) from exc
    out["pi0_aut_br_orders"] = orders
    return out


def _class_table(result: dict) -> tb.Table:
    rows = []
    for i, (c, order) in enumerate(zip(result["classes"], result["pi0_aut_br_orders"])):
        inv = c["invariants"]
        rows.append([str(i), str(c["size"]), str(inv.get("sgn_sigma")), str(inv.get("epsilon")),
                     str(inv.get("sigma_w")), str(inv.get("sigma3_1")), str(order)])
    return tb.Table("classes", f"{result['data']['case']} classes",
                    ["class", "size", "sgn σ", "ε", "σ(w)", "σ3(1)", "|π0 Aut_br|"], rows)


@click.group()
@click.version_option(__version__, prog_name="tybraid")
def main():
    """Exact braidings on Tambara-Yamagami categories."""


_case_opt = click.option("--case", "case", required=True, help="Case tag or alias, e.g. split-real, rc-id, cc.")
_n_opt = click.option("--n", "n", type=click.IntRange(0, 8), required=True,
                      help="Number of hyperbolic planes.")
_l_opt = click.option("--l-blocks", type=int, default=0, show_default=True,
                      help="Number of l-lines (split complex only).")
_fmt_opt = click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)


@main.command()
@_case_opt
@_n_opt
@click.option("--tau", type=click.Choice(["+", "-"]), default="+", show_default=True)
@_l_opt
@_fmt_opt
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="NDJSON cache file; entries are revalidated by checksum.")
@click.option("--count/--no-count", default=None,
              help="Also count pi_0 by enumerating functors (default: when |A_0| <= 16).")
def classify(case, n, tau, l_blocks, fmt, cache_path, count):
    """Equivalence classes of braidings and pi_0 Aut_br orders."""
    def go():
        data = _data(case, n, 1 if tau == "+" else -1, l_blocks)
        command = f"classify:count={count}"
        result = cache_lookup(cache_path, data, command) if cache_path else None
        if result is None:
            result = classify_result(data, count)
            if cache_path:
                cache_store(cache_path, data, command, result)
        if fmt == "json":
            click.echo(json.dumps(result, indent=2, sort_keys=True))
        else:
            click.echo(tb.render([_class_table(result)], fmt), nl=False)

    _run(go)


# verify

def verify_result(data: TYData, stage: str) -> dict:
    if stage == "auto":
        stage = Stage.FULL.value if data.order <= FULL_MAX_ORDER else Stage.STAGED.value
    report = {"data": data.to_json(), "N": data.n, "stage": stage, "violations": []}
    viol = report["violations"]
    sol = solve_braidings(data)
    for b in sol:
        for eq in check_hexagons(b):
            viol.append({"id": eq, "what": f"solver output fails {eq}"})
    if data.case is Case.COMPLEX_COMPLEX:
        if sol:
            viol.append({"id": "CC-NAT", "what": "plain braidings found on complex/complex data"})
        report["plain_braidings"] = len(sol)
        crossed, reason = cr.solve_crossed(data)
        report["crossed_reason"] = reason
        for b in crossed:
            for eq in cr.check_heptagons(b):
                viol.append({"id": eq, "what": f"crossed solver output fails {eq}"})
        found = cr.brute_force_crossed(data, stage)
        report["solver"], report["oracle"] = len(crossed), len(found)
        agree = set(found) == set(crossed)
    else:
        found = brute_force_braidings(data, stage)
        report["solver"], report["oracle"] = len(sol), len(found)
        agree = set(found) == set(sol)
        if stage == Stage.FULL.value:
            for b in found:
                if (b.s0 != b.view().X).any():
                    viol.append({"id": "H3", "what": "a full-search solution has s0 != chi"})
    if not agree:
        viol.append({"id": "oracle", "what": "solver and brute-force search disagree"})
    report["agree"] = agree
    return report


def wall_fuzz(samples: int, seed: int, max_dim: int = 6) -> dict:
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        dim = rng.randint(1, max_dim)
        alternating = dim % 2 == 0 and rng.random() < 0.25
        chi = f2.random_symmetric(rng, dim, alternating)
        bad = f2.wall_violations(chi)
        if bad:
            failures.append({"sample": i, "chi": chi.to_json(), "violations": bad})
    return {"samples": samples, "seed": seed, "failures": failures}


@main.command()
@click.option("--case", "case", default=None, help="Case tag or alias.")
@click.option("--n", "n", type=click.IntRange(0, 8), default=None)
@click.option("--tau", type=click.Choice(["+", "-", "both"]), default="both", show_default=True)
@_l_opt
@click.option("--stage", type=click.Choice(["auto", "full", "staged"]), default="auto", show_default=True)
@click.option("--wall-samples", type=click.IntRange(0), default=0,
              help="Also fuzz Wall normalization on this many random forms.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the Wall fuzzing.")
def verify(case, n, tau, l_blocks, stage, wall_samples, seed):
    """Solver against brute-force search (and optional Wall fuzzing)."""
    def go():
        reports = []
        if case is not None:
            if n is None:
                raise click.BadParameter("--n is required with --case")
            for t in _tau_values(tau):
                reports.append(verify_result(_data(case, n, t, l_blocks), stage))
        out = {"reports": reports}
        if wall_samples:
            out["wall"] = wall_fuzz(wall_samples, seed)
        if not reports and not wall_samples:
            raise click.BadParameter("nothing to verify: give --case/--n or --wall-samples")
        click.echo(json.dumps(out, indent=2, sort_keys=True))
        failed = [v for r in reports for v in r["violations"]]
        if failed or (wall_samples and out["wall"]["failures"]):
            ids = sorted({v["id"] for v in failed})
            if wall_samples and out["wall"]["failures"]:
                ids.append("wall")
            raise VerificationFailed("violated: " + ", ".join(ids))

    _run(go)


# reproduce

TABLE_SETS = {
    "intro": ["table1", "split_complex", "small", "table2"],
    "gauss": ["gauss"],
    "all": ["table1", "split_complex", "small", "table2", "gauss"],
}


def build_tables(names: list[str], n_max: int) -> list[tb.Table]:
    out = []
    for name in names:
        if name == "table1":
            out.append(tb.table1(list(range(1, max(n_max, 1) + 1))))
        elif name == "split_complex":
            out.append(tb.split_complex_table(list(range(1, min(max(n_max, 1), 2) + 1))))
        elif name == "small":
            out.append(tb.small_cases_table())
        elif name == "table2":
            out.append(tb.table2(list(range(0, n_max + 1))))
        elif name == "gauss":
            out.append(tb.gauss_table(max(n_max, 1)))
    return out


@main.command()
@click.option("--tables", "which", type=click.Choice(sorted(TABLE_SETS)), default="all", show_default=True)
@click.option("--n-max", type=click.IntRange(0, 3), default=2, show_default=True)
@_fmt_opt
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Also write each table as <name>.md into this directory.")
def reproduce(which, n_max, fmt, out_dir):
    """Regenerate the summary tables and diff them against the bundled goldens."""
    def go():
        tables = build_tables(TABLE_SETS[which], n_max)
        click.echo(tb.render(tables, fmt), nl=False)
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
            for t in tables:
                (out_dir / f"{t.name}.md").write_text(t.to_markdown(), encoding="utf-8")
        diffs = {t.name: tb.diff_against_golden(t) for t in tables}
        bad = [name for name, d in diffs.items() if d]
        for name in bad:
            click.echo("\n".join(diffs[name]), err=True)
        if bad:
            raise VerificationFailed("tables differ from goldens: " + ", ".join(bad))

    _run(go)


# enumerate-forms

@main.command("enumerate-forms")
@click.option("--h", "h_blocks", type=click.IntRange(0, 4), default=1, show_default=True)
@click.option("--l", "l_blocks", type=click.IntRange(0, 2), default=0, show_default=True)
@click.option("--field", "fld", type=click.Choice(["real", "complex"]), default="real", show_default=True)
@_fmt_opt
def enumerate_forms(h_blocks, l_blocks, fld, fmt):
    """Forms with coboundary h^h + l^l, grouped into Aut-orbits."""
    def go():
        chi = f2.normal_form(h_blocks, l_blocks)
        field_ = Field(fld)
        forms = qforms.enumerate_qforms(chi, field_)
        orbits = qforms.orbits_and_stabilizers(chi, forms) if forms else []
        result = {"chi": chi.to_json(), "field": fld, "count": len(forms), "orbits": []}
        rows = []
        for i, o in enumerate(orbits):
            g = qforms.gauss_sum(o.representative)
            entry = {"size": o.size, "stabilizer": o.stabilizer_order,
                     "gauss_sum": g.to_json(),
                     "sign": qforms.sign(o.representative) if g.is_real() and not g.is_zero() else None,
                     "representative": o.representative.to_json()}
            result["orbits"].append(entry)
            rows.append([str(i), str(o.size), str(o.stabilizer_order), repr(g), str(entry["sign"])])
        if fmt == "json":
            click.echo(json.dumps(result, indent=2, sort_keys=True))
        else:
            t = tb.Table("forms", f"Forms on h^{h_blocks} ⊕ ℓ^{l_blocks} ({fld})",
                         ["orbit", "size", "stabilizer", "Gauss sum", "sign"], rows)
            click.echo(tb.render([t], fmt), nl=False)

    _run(go)


if __name__ == "__main__":
    main()
