"""Command-line entry point.

Exit codes: 0 success or Yes, 1 definite negative, 2 budget or timeout,
3 precondition refusal, 4 input error.
"""
from __future__ import annotations

import functools
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click

from . import catalog
from .formats import (
    FormatError,
    format_map,
    format_poset,
    format_realizer,
    looks_like_map,
    map_to_json,
    parse_map,
    parse_poset,
    parse_realizer,
)
from .incidence import vef_poset, vf_poset
from .oracle import DEFAULT_BUDGET_NODES, DEFAULT_BUDGET_SECS, NO, TIMEOUT, YES, dim_at_most, dimension
from .pathlike import build_vef_realizer, permissible_coloring, path_structure
from .planar_map import MapError, PlanarMap, PreconditionError, dual
from .poset import PosetError, verify_realizer
from .structure import BudgetExceeded, find_subdivision, is_strongly_outerplanar, is_weakly_outerplanar
from .vfbuilder import build_vf_realizer, check_preconditions

EXIT_OK, EXIT_NO, EXIT_BUDGET, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def load_map(ref: str) -> tuple[PlanarMap, catalog.NamedInstance | None]:
    """A map from a catalog name, ``fan:<n>``, ``snake:<n>`` or a file."""
    for fam in ("fan", "snake"):
        if ref.startswith(fam + ":"):
            try:
                n = int(ref.split(":", 1)[1])
                return getattr(catalog, fam)(n), None
            except ValueError as exc:
                raise InputError(f"bad generator argument {ref!r}: {exc}") from None
    if ref in catalog.NAMES:
        inst = catalog.get(ref)
        return inst.map, inst
    path = Path(ref)
    if not path.exists():
        raise InputError(f"no such file or catalog map: {ref}")
    return parse_map(path.read_text()), None


def _read(ref: str) -> str:
    try:
        return Path(ref).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _poset_of(M: PlanarMap, kind: str):
    return (vef_poset if kind == "vef" else vf_poset)(M).poset


def guarded(fn):
    """Translate library errors into exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as exc:
            click.echo(f"refused: {exc.reason}: {exc}", err=True)
            if getattr(exc, "witness", None) is not None:
                click.echo("witness: " + json.dumps(exc.witness.to_dict()), err=True)
            sys.exit(EXIT_REFUSED)
        except (InputError, FormatError, MapError, PosetError, KeyError) as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
    return wrapper


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


budget_options = [
    click.option("--budget-nodes", type=int, default=DEFAULT_BUDGET_NODES, show_default=True),
    click.option("--budget-secs", type=float, default=DEFAULT_BUDGET_SECS, show_default=True),
]


def with_budget(fn):
    for opt in reversed(budget_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Dimension of incidence posets of planar maps."""


# -- analyze -------------------------------------------------------------------------------


@dataclass
class Fact:
    quantity: str
    relation: str
    value: int
    source: str


@dataclass
class AnalysisReport:
    name: str
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    facts: list = field(default_factory=list)
    coloring: list | None = None
    certificate: str | None = None
    realizers: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        d = dict(d)
        d["facts"] = [Fact(**f) for f in d.get("facts", [])]
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def text(self) -> str:
        out = [f"map {self.name}"]
        out += [f"  {k}: {'yes' if v else 'no'}" for k, v in self.flags.items()]
        for k, w in self.witnesses.items():
            if w:
                out.append(f"  witness {k}: branch {w['branch_vertices']}")
        for f in self.facts:
            out.append(f"  {f.quantity} {f.relation} {f.value}   [{f.source}]")
        if self.coloring:
            out.append("  coloring:")
            out += [f"    {line}" for line in self.coloring]
        if self.certificate:
            out += [f"  {line}" for line in self.certificate.splitlines()]
        out += [f"  note: {n}" for n in self.notes]
        return "\n".join(out) + "\n"


def _witness(M, pattern, report, key):
    try:
        w = find_subdivision(M, pattern)
    except BudgetExceeded as exc:
        report.notes.append(f"{key} search stopped: {exc}")
        return None
    report.witnesses[key] = w.to_dict() if w else None
    return w


def _lower_three(P, report, quantity):
    """Upgrade a realizer-backed <= 3 to = 3 when the oracle refutes 2."""
    v = dim_at_most(P, 2, budget_secs=2.0)
    if v.answer == NO:
        report.facts.append(Fact(quantity, "=", 3, "verified 3-realizer and exhausted oracle at t=2"))
    else:
        report.facts.append(Fact(quantity, "<=", 3, "verified 3-realizer"))


def analyze_map(M: PlanarMap, name: str, oracle: bool = False,
                budget_nodes: int = DEFAULT_BUDGET_NODES,
                budget_secs: float = DEFAULT_BUDGET_SECS) -> AnalysisReport:
    r = AnalysisReport(name)
    simple, conn = M.is_simple(), M.is_connected()
    bic = conn and M.vertex_count >= 3 and M.is_biconnected()
    r.flags.update(simple=simple, connected=conn, biconnected=bic)
    r.flags["weakly_outerplanar"] = is_weakly_outerplanar(M)
    r.flags["strongly_outerplanar"] = is_strongly_outerplanar(M)
    D = dual(M) if conn else None
    if D is not None:
        r.flags["dual_weakly_outerplanar"] = is_weakly_outerplanar(D)
        r.flags["dual_strongly_outerplanar"] = is_strongly_outerplanar(D)
    S = None
    if simple and bic:
        try:
            S = path_structure(M)
        except PreconditionError:
            S = None
    r.flags["path_like"] = S is not None
    r.flags["maximal_path_like"] = S is not None and all(len(M.faces[f]) == 3 for f in S.faces)

    k4 = None
    if not r.flags["weakly_outerplanar"]:
        k4 = _witness(M, "K4", r, "K4 in M")
        k23 = _witness(M, "K23", r, "K23 in M")
    else:
        k23 = None
    k4d = k23d = None
    if D is not None and not r.flags["dual_weakly_outerplanar"]:
        k4d = _witness(D, "K4", r, "K4 in dual")
        k23d = _witness(D, "K23", r, "K23 in dual")
    if k4 or k4d:
        src = "K4 subdivision in " + ("M" if k4 else "the dual") + " and the planar upper bound 4"
        r.facts.append(Fact("dim(vf)", "=", 4, src))
        r.facts.append(Fact("dim(vef)", "=", 4, src))
    elif k23 or k23d:
        src = "K2,3 subdivision in " + ("M" if k23 else "the dual") + " and the planar upper bound 4"
        r.facts.append(Fact("dim(vef)", "=", 4, src))

    if r.flags["maximal_path_like"]:
        res = build_vef_realizer(M)
        if res.dim4:
            r.certificate = res.report.certificate()
            r.facts.append(Fact("dim(vef)", "=", 4, f"no permissible colouring ({res.report.reason})"))
        else:
            r.coloring = res.report.coloring.lines(M)
            r.realizers["vef"] = res.realizer
            _lower_three(vef_poset(M).poset, r, "dim(vef)")
    if simple and bic and r.flags["weakly_outerplanar"] and r.flags.get("dual_weakly_outerplanar"):
        res = build_vf_realizer(M)
        r.realizers["vf"] = res.realizer
        _lower_three(vf_poset(M).poset, r, "dim(vf)")

    if oracle:
        for kind in ("vf", "vef"):
            d = dimension(_poset_of(M, kind), budget_nodes, budget_secs)
            if d.timed_out:
                r.notes.append(f"oracle ran out of budget on dim({kind})")
            else:
                r.facts.append(Fact(f"dim({kind})", "=", d.dimension, "exhausted oracle"))
    return r


@main.command()
@click.argument("map_ref")
@click.option("--oracle", is_flag=True, help="also run the exact oracle (slow)")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False))
@with_budget
@guarded
def analyze(map_ref, oracle, as_json, out, budget_nodes, budget_secs):
    """Structural facts and dimension bounds of a map."""
    M, _ = load_map(map_ref)
    r = analyze_map(M, map_ref, oracle, budget_nodes, budget_secs)
    _emit(r.to_json() + "\n" if as_json else r.text(), out)


# -- verify / dim ----------------------------------------------------------------------------


def _load_poset(ref: str, kind: str):
    """Poset from a poset file, or the incidence poset of a map reference.
    Returns the poset and a renaming of readable names to labels."""
    if ref in catalog.NAMES or ref.startswith(("fan:", "snake:")) or looks_like_map(_read(ref)):
        M, inst = load_map(ref)
        ren = {}
        if inst is not None:
            ren.update({x: f"v{i}" for i, x in enumerate(inst.vertex_names)})
            ren.update({x: f"f{i}" for i, x in enumerate(inst.face_names)})
        return _poset_of(M, kind), ren
    return parse_poset(_read(ref)), {}


@main.command()
@click.argument("poset_ref")
@click.argument("realizer_file")
@click.option("--poset", "kind", type=click.Choice(["vf", "vef"]), default="vf", show_default=True,
              help="incidence poset to use when the first argument is a map")
@guarded
def verify(poset_ref, realizer_file, kind):
    """Check that a realizer file realizes a poset."""
    P, ren = _load_poset(poset_ref, kind)
    R = parse_realizer(_read(realizer_file))
    labels = set(P.labels)
    if any(x not in labels for L in R for x in L):
        R = [[ren.get(x, x) for x in L] for L in R]
    check = verify_realizer(P, R)
    if check:
        click.echo(f"PASS {len(R)} extensions")
        sys.exit(EXIT_OK)
    click.echo(f"FAIL {check.kind}: {check.message}")
    sys.exit(EXIT_NO)


@main.command()
@click.argument("ref")
@click.option("--poset", "kind", type=click.Choice(["vf", "vef"]), default="vf", show_default=True)
@click.option("--t", "t", type=int, default=None, help="decide dim <= t instead of computing dim")
@with_budget
@guarded
def dim(ref, kind, t, budget_nodes, budget_secs):
    """Exact dimension (or a dim <= t decision) by the oracle."""
    P, _ = _load_poset(ref, kind)
    if t is not None:
        v = dim_at_most(P, t, budget_nodes, budget_secs)
        click.echo(f"dim <= {t}: {v.answer} (nodes {v.stats.nodes}, {v.stats.seconds:.2f}s)")
        if v.answer == YES:
            click.echo(format_realizer(v.realizer), nl=False)
        sys.exit({YES: EXIT_OK, NO: EXIT_NO, TIMEOUT: EXIT_BUDGET}[v.answer])
    d = dimension(P, budget_nodes, budget_secs)
    if d.timed_out:
        click.echo("timeout")
        sys.exit(EXIT_BUDGET)
    click.echo(f"dim = {d.dimension}")
    click.echo(format_realizer(d.realizer), nl=False)


# -- builders ---------------------------------------------------------------------------------


@main.command("realize-vef")
@click.argument("map_ref")
@click.option("--out", type=click.Path(dir_okay=False))
@guarded
def realize_vef(map_ref, out):
    """Three-realizer of vef(M) for a maximal path-like map, or a Dim4 certificate."""
    M, _ = load_map(map_ref)
    res = build_vef_realizer(M)
    if res.dim4:
        click.echo(res.report.certificate())
        sys.exit(EXIT_NO)
    _emit(format_realizer(res.realizer), out)


@main.command("realize-vf")
@click.argument("map_ref")
@click.option("--out", type=click.Path(dir_okay=False))
@guarded
def realize_vf(map_ref, out):
    """Three-realizer of vf(M) when M and its dual are weakly outerplanar."""
    M, _ = load_map(map_ref)
    check_preconditions(M)
    _emit(format_realizer(build_vf_realizer(M).realizer), out)


@main.command()
@click.argument("map_ref")
@guarded
def color(map_ref):
    """Permissible colouring of a maximal path-like map, or why none exists."""
    M, _ = load_map(map_ref)
    rep = permissible_coloring(M)
    if not rep:
        click.echo(rep.certificate())
        sys.exit(EXIT_NO)
    for line in rep.coloring.lines(M):
        click.echo(line)


# -- generators ----------------------------------------------------------------------------------


@main.command()
@click.argument("name")
@click.option("--out", type=click.Path(dir_okay=False))
@guarded
def gen(name, out):
    """Map document for a catalog name, fan:<n> or snake:<n>."""
    if name not in catalog.NAMES and not name.startswith(("fan:", "snake:")):
        raise InputError(f"unknown map {name!r}; known: {', '.join(catalog.NAMES)}, fan:<n>, snake:<n>")
    M, _ = load_map(name)
    _emit(format_map(M, name), out)


@main.command()
@click.argument("map_ref")
@click.option("--poset", "kind", type=click.Choice(["vf", "vef"]), default=None,
              help="export an incidence poset instead of the map")
@click.option("--json", "as_json", is_flag=True, help="JSON map document")
@click.option("--out", type=click.Path(dir_okay=False))
@guarded
def export(map_ref, kind, as_json, out):
    """Map in text or JSON form, or one of its incidence posets."""
    M, _ = load_map(map_ref)
    if kind:
        _emit(format_poset(_poset_of(M, kind)), out)
    elif as_json:
        _emit(map_to_json(M) + "\n", out)
    else:
        _emit(format_map(M), out)


if __name__ == "__main__":
    main()
