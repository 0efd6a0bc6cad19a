"""Cognate proximity and the initial/working ensembles around a nominal function."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .boolean import TruthTable, format_truth_table, parse_token
from .constraints import ConstraintSystem, Violation, evaluate_constraints
from .errors import DimensionError, ParseError
from .properties import PropertyReport, classify

INITIAL = "initial"
WORKING = "working"


@dataclass(frozen=True)
class CognateProximity:
    """Exact d_H(f, g) / 2^n, kept unreduced."""

    distance: int
    n: int

    @property
    def denominator(self) -> int:
        return 1 << self.n

    @property
    def value(self) -> Fraction:
        return Fraction(self.distance, self.denominator)

    def __float__(self):
        return self.distance / self.denominator

    def __str__(self):
        return f"{self.distance}/{self.denominator}"


def cognate_proximity(f: TruthTable, g: TruthTable) -> CognateProximity:
    if f.n != g.n:
        raise DimensionError(f"cannot compare n={f.n} with n={g.n}")
    return CognateProximity(f.distance(g), f.n)


@dataclass(frozen=True)
class Rejection:
    position: int
    member: TruthTable
    violations: tuple[Violation, ...]

    @property
    def binding(self) -> Violation:
        return self.violations[0]


@dataclass(frozen=True)
class CognateEnsemble:
    nominal: TruthTable
    members: tuple[TruthTable, ...]
    stage: str = INITIAL
    # (flipped index, complemented) for each member
    origins: tuple[tuple[int, bool], ...] = ()
    constraints: ConstraintSystem | None = None
    reports: tuple[PropertyReport, ...] | None = None
    rejected: tuple[Rejection, ...] = ()
    nominal_report: PropertyReport | None = None
    nominal_violations: tuple[Violation, ...] = ()

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def n(self) -> int:
        return self.nominal.n

    @property
    def nominal_passes(self) -> bool | None:
        if self.nominal_report is None:
            return None
        return not self.nominal_violations

    def diagnostics(self) -> list[str]:
        return [f"member {r.position} rejected by {r.binding}" for r in self.rejected]


def initial_ensemble(nominal: TruthTable) -> CognateEnsemble:
    """All 2^n single-entry flips of ``nominal`` and their complements.

    Order: by flipped index, the plain flip before its complement. For n = 1
    the flip of one entry complemented equals the flip of the other, so the
    formal list of four contains each of the two functions twice.
    """
    members, origins = [], []
    for x in range(1 << nominal.n):
        g = nominal.flip(x)
        members.extend((g, g.complement()))
        origins.extend(((x, False), (x, True)))
    return CognateEnsemble(nominal, tuple(members), INITIAL, tuple(origins))


def filter_ensemble(e: CognateEnsemble, cs: ConstraintSystem, workers: int | None = None) -> CognateEnsemble:
    """Strike out members failing ``cs``; keeps order and attaches reports.

    Also accepts a working ensemble, in which case filtering with the same
    system is a no-op on the member list.
    """
    cs = cs.for_n(e.n)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(classify, e.members))
    else:
        reports = [classify(g) for g in e.members]
    kept, kept_reports, kept_origins, rejected = [], [], [], []
    origins = e.origins or tuple((-1, False) for _ in e.members)
    for pos, (g, report, origin) in enumerate(zip(e.members, reports, origins)):
        violations = cs.check(report)
        if violations:
            rejected.append(Rejection(pos, g, tuple(violations)))
        else:
            kept.append(g)
            kept_reports.append(report)
            kept_origins.append(origin)
    nominal_report = classify(e.nominal)
    _, nominal_violations = evaluate_constraints(e.nominal, cs, nominal_report)
    return CognateEnsemble(
        nominal=e.nominal,
        members=tuple(kept),
        stage=WORKING,
        origins=tuple(kept_origins),
        constraints=cs,
        reports=tuple(kept_reports),
        rejected=tuple(rejected),
        nominal_report=nominal_report,
        nominal_violations=tuple(nominal_violations),
    )


# -- export format -------------------------------------------------------

def _token(f: TruthTable) -> str:
    return format_truth_table(f, hex_form=f.n >= 6)


def format_ensemble(e: CognateEnsemble, include_rejected: bool = False, header_lines=()) -> str:
    """One member token per line, tagged with its proximity to the nominal."""
    lines = [f"# nominal: {_token(e.nominal)}"]
    lines.extend(f"# {h}" for h in header_lines)
    rows = [(g, True) for g in e.members]
    if include_rejected:
        rows += [(r.member, False) for r in e.rejected]
    for g, passed in rows:
        prox = cognate_proximity(e.nominal, g)
        passed = passed if e.stage == WORKING else "unchecked"
        lines.append(f"{_token(g)}  # C_gn={prox} pass={str(passed).lower()}")
    return "\n".join(lines) + "\n"


def parse_ensemble(text: str, source=None) -> tuple[TruthTable, list[tuple[TruthTable, bool | None]]]:
    """Return (nominal, [(member, pass flag)]) from the export format."""
    nominal = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("nominal:"):
                token = body[len("nominal:"):].strip()
                nominal = parse_token(token, lineno, raw.index(token) + 1, source)
            continue
        token, _, comment = stripped.partition("#")
        token = token.strip()
        member = parse_token(token, lineno, raw.index(token) + 1, source)
        flag = None
        for part in comment.split():
            if part.startswith("pass="):
                flag = {"true": True, "false": False}.get(part[5:])
        if nominal is not None and member.n != nominal.n:
            raise ParseError(f"member has n={member.n}, nominal has n={nominal.n}", lineno, 1, source)
        rows.append((member, flag))
    if nominal is None:
        raise ParseError("missing '# nominal: <token>' header", source=source)
    return nominal, rows


def read_ensemble(path):
    with open(path, encoding="utf-8") as fh:
        return parse_ensemble(fh.read(), source=str(path))
