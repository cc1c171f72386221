"""Command-line front end: inspection, counting, reproduction, pipelines.

Exit codes: 0 success, 1 mismatch against reference data, 2 invalid input,
3 internal limit hit (group closure or dessin enumeration cap).
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from functools import wraps

import click
import numpy as np

from . import belyi as belyi_mod
from . import counting, dessins, goldens, monodromy, solids, triangles
from .geom import ClosureLimitError, InvalidInputError

EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3

_SIGNATURE = {
    "tetrahedral": (2, 3, 3),
    "octahedral": (2, 3, 4),
    "cubical": (2, 3, 4),
    "icosahedral": (2, 3, 5),
    "dodecahedral": (2, 3, 5),
}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in obj]
    return obj


def _emit(ctx, payload):
    fmt = ctx.obj["format"]
    payload = _jsonable(payload)
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        keys = sorted({k for r in rows if isinstance(r, dict) for k in r})
        click.echo(",".join(keys))
        for r in rows:
            click.echo(",".join(json.dumps(r.get(k)) for k in keys))
    else:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _handle_errors(f):
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except InvalidInputError as exc:
            click.echo(f"invalid input: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        except ClosureLimitError as exc:
            click.echo(f"internal limit: {exc}", err=True)
            sys.exit(EXIT_LIMIT)

    return wrapper


def _fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational number: {value!r}") from exc


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]),
              default="text", help="Output format.")
@click.option("--tol-geom", type=float, default=1e-9, help="Geometric tolerance.")
@click.option("--tol-group", type=float, default=1e-6, help="Group-closure tolerance.")
@click.option("--seed", type=int, default=0, help="Seed for randomized sweeps.")
@click.pass_context
def main(ctx, fmt, tol_geom, tol_group, seed):
    """Lamé equations with finite monodromy: atlas, counts, groups, dessins."""
    if tol_geom <= 0 or tol_group <= 0:
        click.echo("invalid input: tolerances must be positive", err=True)
        sys.exit(EXIT_INVALID)
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, tol_geom=tol_geom, tol_group=tol_group, seed=seed)


# -- solids -----------------------------------------------------------------


@main.group()
def solids_cmd():
    """Platonic solid data."""


main.add_command(solids_cmd, name="solids")


@solids_cmd.command("dump")
@click.option("--name", default="all",
              help="Solid name, n_gon:<k>, or 'all'.")
@click.pass_context
@_handle_errors
def solids_dump(ctx, name):
    """Vertices, edges, rotation group, and marked points of a solid."""
    names = (
        ["tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"]
        if name == "all" else [name]
    )
    out = []
    for nm in names:
        if nm.startswith("n_gon:"):
            spec = solids.build_n_gon(int(nm.split(":")[1]))
        else:
            spec = solids.build_solid(nm)
        out.append(
            {
                "name": spec.name,
                "vertices": spec.vertices,
                "edges": spec.edges,
                "rotation_order": len(spec.rotations),
                "marked_points": len(spec.q_points),
            }
        )
    _emit(ctx, out)


# -- atlas ------------------------------------------------------------------


@main.group()
def atlas():
    """Basic-triangle atlas."""


@atlas.command("enumerate")
@click.option("--solid", default="all", help="Solid name or 'all'.")
@click.pass_context
@_handle_errors
def atlas_enumerate(ctx, solid):
    """Basic triangle classes with vertices on marked configurations."""
    if solid == "all":
        rows = triangles.atlas_table()
    else:
        rows = [
            {
                "family": e.family,
                "n": e.n,
                "distances": e.distances,
                "note": e.note,
                "complement": e.complement,
            }
            for e in triangles.enumerate_basic(solid)
        ]
    _emit(ctx, rows)


# -- counting ---------------------------------------------------------------


@main.command("count")
@click.option("--n", "n_str", required=True, help="Index n (rational).")
@click.pass_context
@_handle_errors
def count_cmd(ctx, n_str):
    """Count spherical tori / equations at index n, with breakdown."""
    report = counting.total_for_n(_fraction(n_str))
    _emit(ctx, {"n": report.n, "total": report.total, "breakdown": report.breakdown})


@main.command("dahmen")
@click.option("--n", type=int, required=True, help="Integer index n.")
@click.option("--big-n", "big_n", type=int, required=True, help="Dihedral order N.")
@click.option("--projective", is_flag=True, help="Projective count.")
@click.option("--check-oracle", is_flag=True, help="Compare with the lattice oracle.")
@click.pass_context
@_handle_errors
def dahmen_cmd(ctx, n, big_n, projective, check_oracle):
    """Closed-form dihedral counting, optionally checked against brute force."""
    value = (
        counting.dahmen_projective(n, big_n)
        if projective else counting.dahmen_ordinary(n, big_n)
    )
    payload = {"n": n, "N": big_n, "projective": projective, "count": value}
    if check_oracle:
        oracle = counting.lattice_oracle(n, big_n, projective=projective)
        payload["oracle"] = oracle
        _emit(ctx, payload)
        if oracle != value:
            sys.exit(EXIT_MISMATCH)
        return
    _emit(ctx, payload)


# -- monodromy ----------------------------------------------------------------


@main.command("monodromy")
@click.option("--solid", default=None, help="Platonic solid to analyse.")
@click.option("--s", "s_str", default=None, help="Dihedral parameter s.")
@click.option("--t", "t_str", default=None, help="Dihedral parameter t.")
@click.option("--n", "n_str", default=None, help="Optional index for validation.")
@click.pass_context
@_handle_errors
def monodromy_cmd(ctx, solid, s_str, t_str, n_str):
    """Monodromy groups: numeric for a solid's atlas, exact for dihedral (s,t)."""
    if (s_str is None) != (t_str is None):
        raise InvalidInputError("--s and --t must be given together")
    if s_str is not None:
        n = int(n_str) if n_str is not None else None
        profile = monodromy.dihedral_groups_from_params(
            _fraction(s_str), _fraction(t_str), n=n
        )
        _emit(ctx, {
            "s": _fraction(s_str), "t": _fraction(t_str),
            "M": profile.m, "PM": profile.pm, "Mt": profile.mt, "PMt": profile.pmt,
            "orders": [profile.m_order, profile.pm_order,
                       profile.mt_order, profile.pmt_order],
        })
        return
    if solid is None:
        raise InvalidInputError("give either --solid or --s/--t")
    out = []
    for entry in triangles.enumerate_basic(solid):
        if entry.triangle is None:
            continue
        profile = monodromy.groups_from_triangle(
            entry.triangle, tol=ctx.obj["tol_group"]
        )
        out.append({
            "family": entry.family, "n": entry.n, "distances": entry.distances,
            "M": profile.m, "PM": profile.pm, "Mt": profile.mt, "PMt": profile.pmt,
        })
    _emit(ctx, out)


# -- dessins ------------------------------------------------------------------


@main.group()
def dessin():
    """Ramification passports and dessins."""


_FORM = click.Choice(["elliptic", "algebraic"])


@dessin.command("passport")
@click.option("--n", "n_str", required=True, help="Index n (rational).")
@click.option("--family", required=True,
              type=click.Choice(sorted(_SIGNATURE)), help="Triangle-group family.")
@click.option("--form", type=_FORM, default="algebraic")
@click.pass_context
@_handle_errors
def dessin_passport(ctx, n_str, family, form):
    """Ramification passports for an index-n equation of the given family."""
    diag: list[str] = []
    ps = dessins.passport_for(_fraction(n_str), _SIGNATURE[family], form, diag)
    _emit(ctx, {
        "n": _fraction(n_str),
        "signature": _SIGNATURE[family],
        "form": form,
        "passports": [
            {"degree": p.degree, "genus": p.genus,
             "0": p.partitions[0], "1": p.partitions[1],
             "infinity": p.partitions[2]}
            for p in ps
        ],
        "diagnostics": diag,
    })


def _passport_from_json(text: str) -> dessins.Passport:
    data = json.loads(text)
    partitions = tuple(
        tuple(sorted(data[k], reverse=True)) for k in ("0", "1", "infinity")
    )
    degree = sum(partitions[0])
    return dessins.Passport(
        signature=tuple(data.get("signature", (2, 3, 4))),
        kind=data.get("kind", "algebraic"),
        degree=degree,
        partitions=partitions,
        genus=dessins.check_riemann_hurwitz(degree, partitions),
    )


@dessin.command("enumerate")
@click.option("--passport", "passport_json", required=True,
              help="Passport JSON: {\"0\": [...], \"1\": [...], \"infinity\": [...]}.")
@click.option("--cap", type=int, default=12, help="Maximum degree to enumerate.")
@click.option("--export", "export_fmt", type=click.Choice(["json", "dot"]),
              default="json")
@click.pass_context
@_handle_errors
def dessin_enumerate(ctx, passport_json, cap, export_fmt):
    """Enumerate dessins realising a passport, up to sheet relabelling."""
    passport = _passport_from_json(passport_json)
    maps = dessins.enumerate_dessins(passport, cap=cap)
    if export_fmt == "dot":
        for i, m in enumerate(maps):
            click.echo(f"// dessin {i}")
            click.echo(dessins.export_graph(m, "dot"))
        return
    _emit(ctx, {
        "degree": passport.degree,
        "classes": len(maps),
        "dessins": [dessins.export_graph(m) for m in maps],
    })


# -- belyi --------------------------------------------------------------------


@main.group()
def belyi():
    """Numeric genus-0 Belyi maps."""


@belyi.command("solve")
@click.option("--passport", "passport_json", default=None,
              help="Passport JSON (validated against the initial configuration).")
@click.option("--initial", "initial_json", required=True,
              help="Initial configuration JSON.")
@click.option("--max-iter", type=int, default=200)
@click.option("--tol", type=float, default=belyi_mod.EPS_BELYI)
@click.pass_context
@_handle_errors
def belyi_solve(ctx, passport_json, initial_json, max_iter, tol):
    """Newton-solve a Belyi map from a user-supplied initial configuration."""
    initial = belyi_mod.Configuration.from_dict(json.loads(initial_json))
    passport = json.loads(passport_json) if passport_json else None
    result = belyi_mod.newton_solve(passport, initial, max_iter, tol)
    _emit(ctx, result.to_dict())
    if not result.converged:
        sys.exit(EXIT_MISMATCH)


@belyi.command("certify")
@click.option("--result", "result_json", required=True, help="SolveResult JSON.")
@click.pass_context
@_handle_errors
def belyi_certify(ctx, result_json):
    """Certify a solved configuration numerically."""
    result = belyi_mod.SolveResult.from_dict(json.loads(result_json))
    try:
        report = belyi_mod.certify(result)
    except belyi_mod.CertificationError as exc:
        click.echo(f"certification failed: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    _emit(ctx, report)


# -- reproduce ----------------------------------------------------------------


def _norm_row(row):
    dist = row["distances"]
    if isinstance(dist, tuple):
        dist = triangles._cyclic_min(dist)
    return (row["family"], tuple(sorted(row["n_values"])), dist, row["note"])


def _reproduce_table1():
    got = {_norm_row(r) for r in triangles.atlas_table()}
    want = {_norm_row(r) for r in goldens.triangle_table()}
    diff = {"missing": sorted(want - got), "extra": sorted(got - want)}
    return (not diff["missing"] and not diff["extra"]), \
        {"rows": len(want), "diff": diff}


def _reproduce_table2(m_max=8):
    mismatches = []
    for row in goldens.count_rows():
        if row.formula == "dihedral":
            continue
        for m in range(1, m_max + 1):
            formula = counting.count_family(row, m)
            oracle = counting.brute_force_family(row, m)
            if formula != oracle:
                mismatches.append({
                    "family": row.family, "bases": row.bases, "m": m,
                    "formula": formula, "oracle": oracle,
                })
    return not mismatches, {"checked_m": m_max, "mismatches": mismatches}


def _platonic_profile(family: str, tol: float):
    solid_of = {
        "octahedral": "octahedron", "cubical": "cube",
        "icosahedral": "icosahedron", "dodecahedral": "dodecahedron",
    }
    for entry in triangles.enumerate_basic(solid_of[family]):
        if entry.family == family and entry.triangle is not None:
            return monodromy.groups_from_triangle(entry.triangle, tol=tol)
    raise InvalidInputError(f"no geometric atlas entry for family {family}")


def _reproduce_table3(tol):
    import math

    import numpy as np

    mismatches = []
    for row in goldens.group_table():
        family = row["family"]
        if family == "dihedral":
            profile = monodromy.dihedral_groups_from_params(
                Fraction(1, 3), Fraction(1, 3)
            )
            got = (profile.m, profile.pm, profile.mt, profile.pmt)
            want = tuple(
                row[key].split("|")[0].format(k=3)
                for key in ("M", "PM", "Mt", "PMt")
            )
        elif family == "klein_four":
            tri = triangles.SphericalTriangle(
                theta=(Fraction(1, 2), Fraction(1, 1), Fraction(1, 2)),
                lengths=(math.pi, math.pi, math.pi),
                q_points=[np.eye(3)[i] for i in range(3)],
            )
            profile = monodromy.groups_from_triangle(tri, tol=tol)
            got = (profile.m, profile.pm, profile.mt, profile.pmt)
            want = (row["M"], row["PM"], row["Mt"], row["PMt"])
        else:
            profile = _platonic_profile(family, tol)
            got = (profile.m, profile.pm, profile.mt, profile.pmt)
            want = (row["M"], row["PM"], row["Mt"], row["PMt"])
        if got != want:
            mismatches.append({"family": family, "got": got, "want": want})
    return not mismatches, {"mismatches": mismatches}


def _reproduce_table4(k_values):
    mismatches = []
    for row in goldens.passport_table():
        for k in k_values:
            n, signature, degree, genus, partitions = goldens.expected_passport(row, k)
            got = dessins.passport_for(n, signature, "elliptic")
            want = tuple(
                tuple(sorted(partitions[key], reverse=True))
                for key in ("0", "1", "infinity")
            )
            ok = (
                len(got) == 1
                and got[0].degree == degree
                and got[0].genus == genus
                and got[0].partitions == want
            )
            if not ok:
                mismatches.append({
                    "n": n, "k": k,
                    "want": {"degree": degree, "partitions": want},
                    "got": [
                        {"degree": p.degree, "partitions": p.partitions}
                        for p in got
                    ],
                })
    return not mismatches, {"k": list(k_values), "mismatches": mismatches}


def _reproduce_theorem(projective: bool, n_range, big_n_range):
    mismatches = []
    for n in n_range:
        for big_n in big_n_range:
            formula = (
                counting.dahmen_projective(n, big_n)
                if projective else counting.dahmen_ordinary(n, big_n)
            )
            oracle = counting.lattice_oracle(n, big_n, projective=projective)
            if formula != oracle:
                mismatches.append({
                    "n": n, "N": big_n, "formula": formula, "oracle": oracle,
                })
    return not mismatches, {
        "n_range": [min(n_range), max(n_range)],
        "N_range": [min(big_n_range), max(big_n_range)],
        "mismatches": mismatches,
    }


def _parse_range(spec: str, default: tuple[int, int]) -> range:
    if spec is None:
        lo, hi = default
    elif ".." in spec:
        lo, hi = (int(x) for x in spec.split(".."))
    else:
        lo = hi = int(spec)
    return range(lo, hi + 1)


@main.command("reproduce")
@click.argument("table", type=click.Choice(
    ["table1", "table2", "table3", "table4", "thm13", "thm14"]))
@click.option("--k", "k_spec", default=None, help="k range for table4, e.g. 0..2.")
@click.option("--n", "n_spec", default=None, help="n range for thm13/14, e.g. 1..6.")
@click.option("--big-n", "nn_spec", default=None, help="N range, e.g. 1..12.")
@click.pass_context
@_handle_errors
def reproduce(ctx, table, k_spec, n_spec, nn_spec):
    """Recompute a reference table and diff against the bundled golden data."""
    if table == "table1":
        ok, report = _reproduce_table1()
    elif table == "table2":
        ok, report = _reproduce_table2()
    elif table == "table3":
        ok, report = _reproduce_table3(ctx.obj["tol_group"])
    elif table == "table4":
        ok, report = _reproduce_table4(list(_parse_range(k_spec, (0, 2))))
    else:
        ok, report = _reproduce_theorem(
            projective=(table == "thm13"),
            n_range=_parse_range(n_spec, (1, 6)),
            big_n_range=_parse_range(nn_spec, (1, 12)),
        )
    report["target"] = table
    report["match"] = ok
    _emit(ctx, report)
    if not ok:
        sys.exit(EXIT_MISMATCH)


# -- pipeline -----------------------------------------------------------------


@main.command("pipeline")
@click.option("--n", "n_str", required=True, help="Index n (rational).")
@click.option("--cap", type=int, default=12, help="Dessin enumeration degree cap.")
@click.pass_context
@_handle_errors
def pipeline(ctx, n_str, cap):
    """End-to-end report for index n: counts, groups, passports, dessins."""
    n = _fraction(n_str)
    if n <= 0:
        raise InvalidInputError("need n > 0")
    if n.denominator == 2:
        raise InvalidInputError(
            "half-integer indices form a one-complex-dimensional family; "
            "they have no finite count or passport list"
        )
    if n.denominator == 1:
        raise InvalidInputError(
            "integer indices belong to the dihedral families; "
            "use `dahmen` / `monodromy --s --t`"
        )
    report = counting.total_for_n(n)
    groups = {row["family"]: row for row in goldens.group_table()}
    entries = []
    families = []
    for item in report.breakdown:
        family = item["family"]
        if family not in families:
            families.append(family)
        entries.append(dict(item))
    passports = {}
    dessin_classes = {}
    for family in families:
        ps = dessins.passport_for(n, _SIGNATURE[family], "algebraic")
        passports[family] = [
            {"degree": p.degree, "genus": p.genus,
             "0": p.partitions[0], "1": p.partitions[1],
             "infinity": p.partitions[2]}
            for p in ps
        ]
        if ps and all(p.degree <= cap for p in ps):
            dessin_classes[family] = sum(
                len(dessins.enumerate_dessins(p, cap=cap)) for p in ps
            )
    _emit(ctx, {
        "n": n,
        "total": report.total,
        "entries": entries,
        "groups": {f: groups[f] for f in families if f in groups},
        "passports": passports,
        "dessin_classes": dessin_classes,
    })


if __name__ == "__main__":
    main()
