"""The rule set, as data, and the fixed-point driver ``apply_rules``.

Every rule is a ``DerivationRule``: an output kind, a set expression over
other kinds, an optional guard and a citation. Two meta rules (squeezing
between lattice bounds, and Fredholm-index bookkeeping over the holes of the
essential spectrum) produce proposals from code but are registered in the
same table with their own ids and citations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..errors import RuleConflict, UnsupportedConfiguration
from ..region import ClosedDisk, SpectralRegion
from ..region.primitives import _pt
from . import ops
from .expr import Acc, Bd, Expr, Guard, Int, Join, Ref
from .kinds import ETA_KINDS, SpectrumKind, sorted_kinds, subsets, supersets
from .profile import Diagnostic, Provenance, SpectraProfile

K = SpectrumKind


@dataclass(frozen=True)
class Proposal:
    kind: SpectrumKind
    region: SpectralRegion
    rule: str
    inputs: tuple[str, ...]


@dataclass(frozen=True)
class DerivationRule:
    id: str
    output: SpectrumKind | None
    expression: Expr | None
    citation: str
    guard: Guard | None = None
    dual: Expr | None = None
    meta: Callable[["SpectraProfile", "_Context"], list[Proposal]] | None = field(default=None, compare=False)

    def inputs(self) -> frozenset[SpectrumKind]:
        refs: frozenset[SpectrumKind] = frozenset()
        for part in (self.expression, self.guard):
            if part is not None:
                refs |= part.refs()
        return refs

    def describe(self) -> str:
        if self.meta is not None:
            return f"{self.id}: {self.citation}"
        text = f"σ_{self.output} = {self.expression}"
        if self.guard is not None:
            text += f"  if {self.guard}"
        return text

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "citation": self.citation}
        if self.output is not None:
            out["output"] = str(self.output)
        if self.expression is not None:
            out["expression"] = str(self.expression)
        if self.guard is not None:
            out["guard"] = str(self.guard)
        if self.dual is not None:
            out["dual"] = str(self.dual)
        return out


@dataclass(frozen=True)
class CheckRule:
    """A relation between assigned kinds that must hold; failures become diagnostics."""

    id: str
    relation: str  # "interior-equal" or "boundary-chain"
    members: tuple[SpectrumKind, ...]
    citation: str


# ---------------------------------------------------------------- rule data

_COR = (
    ("cor-W-1", K.BW_PLUS, K.TUD, (K.W_PLUS, K.BW_PLUS), "Corollary (cor-W) (1)"),
    ("cor-W-2", K.BW_MINUS, K.QPHI, (K.W_MINUS, K.BW_MINUS), "Corollary (cor-W) (2)"),
    ("cor-W-3", K.BW, K.TUD, (K.W, K.BW), "Corollary (cor-W) (3)"),
    ("cor-F-1", K.LDE, K.TUD, (K.PHI_PLUS, K.LDE), "Corollary (cor-F) (1)"),
    ("cor-F-2", K.DSCE, K.TUD, (K.PHI_MINUS, K.RDE, K.DSCE), "Corollary (cor-F) (2)"),
    ("cor-F-3", K.RDE, K.QPHI, (K.PHI_MINUS, K.RDE, K.DSCE), "Corollary (cor-F) (3)"),
    ("cor-F-4", K.BPHI, K.TUD, (K.PHI, K.BPHI), "Corollary (cor-F) (4)"),
    ("cor-Dra-1", K.LD, K.TUD, (K.P, K.AP, K.B_PLUS, K.LD), "Corollary (cor-Dra) (1)"),
    ("cor-Dra-2", K.DSC, K.TUD, (K.SU, K.CP, K.B_MINUS, K.RD, K.DSC), "Corollary (cor-Dra) (2)"),
    ("cor-Dra-3", K.RD, K.QPHI, (K.SU, K.CP, K.B_MINUS, K.RD, K.DSC), "Corollary (cor-Dra) (3)"),
    ("cor-Dra-4", K.D, K.TUD, (K.SIGMA, K.B, K.D), "Corollary (cor-Dra) (4)"),
)

_IDENTITIES = (
    (K.BPHI_PLUS, K.LDE),
    (K.BPHI_MINUS, K.RDE),
)
_IDENTITY_CITE = "definitions block: σ_LD^e = σ_BΦ+ and σ_RD^e = σ_BΦ-"

# (source whose line-containment is the guard, output equal to the base)
_LINE_TUD = (
    (K.AP, K.LD), (K.B_PLUS, K.LD), (K.LD, K.LD), (K.PHI_PLUS, K.LDE), (K.LDE, K.LDE),
    (K.DSC, K.DSC), (K.DSCE, K.DSCE), (K.W_PLUS, K.BW_PLUS), (K.BW_PLUS, K.BW_PLUS),
    (K.W, K.BW), (K.BW, K.BW), (K.PHI, K.BPHI), (K.BPHI, K.BPHI), (K.B, K.D),
    (K.SIGMA, K.D), (K.D, K.D),
)
_LINE_QPHI = (
    (K.SU, K.RD), (K.B_MINUS, K.RD), (K.RD, K.RD), (K.PHI_MINUS, K.RDE), (K.RDE, K.RDE),
    (K.W_MINUS, K.BW_MINUS), (K.BW_MINUS, K.BW_MINUS), (K.DSCE, K.RDE), (K.DSC, K.RD),
)
_COUNTABLE_OR_LINE = ((K.P, K.LD, K.TUD), (K.CP, K.DSC, K.TUD), (K.CP, K.RD, K.QPHI))
_LINE_CITE = "Remark (poslednja)"

# (guard test, guard kind, left, right, citation)
_PRAZAN = (
    ("inside-own-boundary", K.P, K.LD, K.TUD, "Corollary (prazan) (1)"),
    ("inside-own-boundary", K.CP, K.DSC, K.TUD, "Corollary (prazan) (2)"),
    ("inside-own-boundary", K.CP, K.RD, K.QPHI, "Corollary (prazan) (2)"),
    *(
        ("equals-boundary", x, x, K.TUD, "Corollary (prazan) (3)")
        for x in (K.D, K.LD, K.LDE, K.BPHI, K.BW_PLUS, K.BW)
    ),
    ("equals-boundary", K.DSC, K.DSC, K.TUD, "Corollary (prazan) (4)"),
    ("equals-boundary", K.DSC, K.RD, K.QPHI, "Corollary (prazan) (4)"),
    ("equals-boundary", K.DSCE, K.DSCE, K.TUD, "Corollary (prazan) (5)"),
    ("equals-boundary", K.DSCE, K.RDE, K.QPHI, "Corollary (prazan) (5)"),
    ("equals-boundary", K.BW_MINUS, K.BW_MINUS, K.QPHI, "Corollary (prazan) (6)"),
)

ONE_COMPONENT_KINDS = (
    K.TUD, K.QPHI, K.KT, K.BPHI, K.BW, K.LDE, K.BW_PLUS,
    K.LD, K.RDE, K.BW_MINUS, K.RD, K.DSCE, K.DSC,
)
BOUNDARY_ACC_KINDS = (
    K.W_PLUS, K.W_MINUS, K.W, K.BW_MINUS, K.PHI_PLUS, K.PHI_MINUS, K.PHI, K.RDE,
    K.AP, K.SU, K.B_PLUS, K.B_MINUS, K.B, K.RD, K.SIGMA,
)

# whole = part ∪ part, all classical decompositions of the invertibility classes
UNIONS = (
    (K.SIGMA, K.AP, K.SU, "invertible = bounded below and surjective"),
    (K.PHI, K.PHI_PLUS, K.PHI_MINUS, "Fredholm = upper and lower semi-Fredholm"),
    (K.W, K.W_PLUS, K.W_MINUS, "Weyl = upper and lower semi-Weyl"),
    (K.B, K.B_PLUS, K.B_MINUS, "Browder = upper and lower semi-Browder"),
    (K.D, K.LD, K.RD, "Drazin invertible = left and right Drazin invertible"),
    (K.BPHI, K.LDE, K.RDE, "B-Fredholm = upper and lower semi-B-Fredholm"),
    (K.BW, K.BW_PLUS, K.BW_MINUS, "B-Weyl = upper and lower semi-B-Weyl"),
)

# ∂(whole) ⊆ part: the boundary of a spectrum consists of points where
# neither one-sided property holds.
BOUNDARY_FRAGMENTS = (
    (K.PHI, K.PHI_PLUS), (K.PHI, K.PHI_MINUS),
    (K.SIGMA, K.AP), (K.SIGMA, K.SU),
)

CHECKS = (
    CheckRule("cor-W-4", "interior-equal", (K.W_PLUS, K.BW_PLUS), "Corollary (cor-W) (4)"),
    CheckRule("cor-W-4", "interior-equal", (K.W_MINUS, K.BW_MINUS), "Corollary (cor-W) (4)"),
    CheckRule("cor-W-4", "interior-equal", (K.W, K.BW), "Corollary (cor-W) (4)"),
    CheckRule("cor-W-5", "boundary-chain", (K.BW_PLUS, K.W_PLUS), "Corollary (cor-W) (5)"),
    CheckRule("cor-W-5", "boundary-chain", (K.BW_MINUS, K.W_MINUS), "Corollary (cor-W) (5)"),
    CheckRule("cor-W-5", "boundary-chain", (K.BW, K.W), "Corollary (cor-W) (5)"),
    CheckRule("cor-F-5", "interior-equal", (K.PHI_PLUS, K.LDE), "Corollary (cor-F) (5)"),
    CheckRule("cor-F-5", "interior-equal", (K.PHI_MINUS, K.RDE, K.DSCE), "Corollary (cor-F) (5)"),
    CheckRule("cor-F-5", "interior-equal", (K.PHI, K.BPHI), "Corollary (cor-F) (5)"),
    CheckRule("cor-F-6", "boundary-chain", (K.LDE, K.PHI_PLUS), "Corollary (cor-F) (6)"),
    CheckRule("cor-F-6", "boundary-chain", (K.DSCE, K.RDE, K.PHI_MINUS), "Corollary (cor-F) (6)"),
    CheckRule("cor-F-6", "boundary-chain", (K.BPHI, K.PHI), "Corollary (cor-F) (6)"),
    CheckRule("cor-Dra-5", "interior-equal", (K.AP, K.B_PLUS, K.LD), "Corollary (cor-Dra) (5)"),
    CheckRule("cor-Dra-5", "interior-equal", (K.SU, K.B_MINUS, K.RD, K.DSC), "Corollary (cor-Dra) (5)"),
    CheckRule("cor-Dra-5", "interior-equal", (K.SIGMA, K.B, K.D), "Corollary (cor-Dra) (5)"),
    CheckRule("cor-Dra-6", "boundary-chain", (K.LD, K.B_PLUS, K.AP), "Corollary (cor-Dra) (6)"),
    CheckRule("cor-Dra-6", "boundary-chain", (K.DSC, K.RD, K.B_MINUS, K.SU), "Corollary (cor-Dra) (6)"),
    CheckRule("cor-Dra-6", "boundary-chain", (K.D, K.B, K.SIGMA), "Corollary (cor-Dra) (6)"),
)


def _equality_pair(rule_id: str, guard: Guard | None, left: SpectrumKind, right: SpectrumKind, cite: str):
    """Both directions of a guarded equality ``σ_left = σ_right``."""
    out = [DerivationRule(rule_id, left, Ref(right), cite, guard)]
    if left != right:
        out.append(DerivationRule(rule_id, right, Ref(left), cite, guard))
    return out


def _build_rules() -> tuple[DerivationRule, ...]:
    rules: list[DerivationRule] = []
    for rid, out, base, sources, cite in _COR:
        for src in sources:
            rules.append(
                DerivationRule(
                    rid, out, Join(Ref(base), Acc(Ref(src))), cite, dual=Join(Ref(base), Int(Ref(src)))
                )
            )
    for a, b in _IDENTITIES:
        rules += _equality_pair("identity-rule", None, a, b, _IDENTITY_CITE)
    for family, base in ((_LINE_TUD, K.TUD), (_LINE_QPHI, K.QPHI)):
        for src, out in family:
            rules += _equality_pair("line-rule", Guard("contained-in-line", Ref(src)), out, base, _LINE_CITE)
    for src, out, base in _COUNTABLE_OR_LINE:
        rules += _equality_pair("line-rule", Guard("countable-or-in-line", Ref(src)), out, base, _LINE_CITE)
    for test, g, left, right, cite in _PRAZAN:
        rid = "prazan-" + cite.rsplit("(", 1)[1].rstrip(")")
        rules += _equality_pair(rid, Guard(test, Ref(g)), left, right, cite)
    for x in ONE_COMPONENT_KINDS:
        rules.append(
            DerivationRule(
                "one-component-rule", K.D, Ref(x), "Theorem (only one)", Guard("no-holes", Ref(x))
            )
        )
    for x in BOUNDARY_ACC_KINDS:
        rules.append(
            DerivationRule(
                "boundary-acc-rule", K.TUD, Ref(x), "Corollary (skoro)", Guard("boundary-and-acc", Ref(x))
            )
        )
    for x in ETA_KINDS:
        for y in ETA_KINDS:
            if x != y:
                rules.append(
                    DerivationRule(
                        "countable-rule",
                        y,
                        Ref(x),
                        "Theorem (eta) (2) with ηK = K for countable K",
                        Guard("countable", Ref(x)),
                    )
                )
    for whole, a, b, cite in UNIONS:
        rules.append(DerivationRule("union-rule", whole, Join(Ref(a), Ref(b)), cite))
    rules.append(
        DerivationRule(
            "fredholm-index",
            None,
            None,
            "index is constant on each hole of σ_Φ; its sign there is read off σ_ap and σ_su",
            meta=_index_rule,
        )
    )
    rules.append(
        DerivationRule(
            "squeeze",
            None,
            None,
            "a kind whose assigned lower bound equals an assigned upper bound in the inclusion lattice",
            meta=_squeeze_rule,
        )
    )
    return tuple(rules)


# ---------------------------------------------------------------- meta rules


@dataclass
class _Context:
    strict: bool

    def note(self, prof: SpectraProfile, diag: Diagnostic) -> None:
        if diag not in prof.diagnostics:
            prof.diagnostics.append(diag)


def _index_rule(prof: SpectraProfile, ctx: _Context) -> list[Proposal]:
    env = prof.assigned
    if not all(k in env for k in (K.PHI, K.AP, K.SU)):
        return []
    try:
        holes = ops.connected_hull(env[K.PHI]).holes
    except UnsupportedConfiguration as exc:
        ctx.note(prof, Diagnostic("RULE_NOT_APPLICABLE", exc.message, rule="fredholm-index"))
        return []
    signs: dict[int, list[ClosedDisk]] = {-1: [], 0: [], 1: []}
    for hole in holes:
        probe = hole.boundary.center
        if not hole.excluded.is_empty() or not hole.contains(_pt(probe)):
            ctx.note(
                prof,
                Diagnostic("RULE_NOT_APPLICABLE", "a hole of σ_Φ is not a plain open disk", rule="fredholm-index"),
            )
            return []
        in_ap, in_su = env[K.AP].contains(probe), env[K.SU].contains(probe)
        if in_ap and in_su:
            ctx.note(
                prof,
                Diagnostic(
                    "RULE_NOT_APPLICABLE",
                    f"index sign at {probe} is not determined by σ_ap and σ_su",
                    rule="fredholm-index",
                ),
            )
            return []
        sign = 1 if in_ap else (-1 if in_su else 0)
        signs[sign].append(ClosedDisk(hole.boundary.center, hole.boundary.radius))
    inputs = ("Phi", "ap", "su")
    disks = lambda *ss: SpectralRegion.from_primitives(d for s in ss for d in signs[s])  # noqa: E731
    out = [Proposal(K.W, ops.union(env[K.PHI], disks(-1, 1)), "fredholm-index", inputs)]
    if K.PHI_PLUS in env:
        out.append(Proposal(K.W_PLUS, ops.union(env[K.PHI_PLUS], disks(1)), "fredholm-index", inputs + ("Phi+",)))
    if K.PHI_MINUS in env:
        out.append(
            Proposal(K.W_MINUS, ops.union(env[K.PHI_MINUS], disks(-1)), "fredholm-index", inputs + ("Phi-",))
        )
    return out


def _lower_fragments(kind: SpectrumKind, env) -> list[tuple[str, SpectralRegion]]:
    frags: list[tuple[str, SpectralRegion]] = []
    for whole, part in BOUNDARY_FRAGMENTS:
        if part == kind and whole in env:
            try:
                frags.append((f"∂{whole}", ops.boundary(env[whole])))
            except UnsupportedConfiguration:
                pass
    for whole, a, b, _ in UNIONS:
        for part, other in ((a, b), (b, a)):
            if part == kind and whole in env and other in env:
                try:
                    frags.append((f"cl({whole}\\{other})", ops.difference_closure(env[whole], env[other])))
                except UnsupportedConfiguration:
                    pass
    for _, out, _, sources, _ in _COR:
        if out == kind:
            for src in sources:
                if src in env and src != kind:
                    frags.append((f"acc {src}", ops.accumulation(env[src])))
    return frags


def _squeeze_rule(prof: SpectraProfile, ctx: _Context) -> list[Proposal]:
    env = prof.assigned
    out = []
    for kind in SpectrumKind:
        if kind in env:
            continue
        uppers = sorted_kinds(u for u in supersets(kind) if u in env)
        if not uppers:
            continue
        lows = [(str(lo), env[lo]) for lo in sorted_kinds(subsets(kind)) if lo in env]
        lows += _lower_fragments(kind, env)
        if not lows:
            continue
        lower = ops.union_all(r for _, r in lows)
        for up in uppers:
            try:
                tight = ops.subset(env[up], lower)
            except UnsupportedConfiguration:
                continue
            if tight:
                out.append(Proposal(kind, env[up], "squeeze", (str(up),) + tuple(n for n, _ in lows)))
                break
    return out


RULES: tuple[DerivationRule, ...] = _build_rules()


def rule_ids() -> list[str]:
    return sorted({r.id for r in RULES})


# ---------------------------------------------------------------- driver


def _propose(rule: DerivationRule, prof: SpectraProfile, ctx: _Context) -> list[Proposal]:
    if rule.meta is not None:
        return rule.meta(prof, ctx)
    env = prof.assigned
    if not rule.inputs() <= env.keys():
        return []
    if rule.guard is not None:
        try:
            if not rule.guard.holds(env):
                return []
        except UnsupportedConfiguration as exc:
            ctx.note(
                prof, Diagnostic("GUARD_UNDECIDED", f"{rule.guard}: {exc.message}", str(rule.output), rule.id)
            )
            return []
    try:
        value = rule.expression.closed(env)
    except UnsupportedConfiguration as exc:
        if ctx.strict:
            raise
        ctx.note(prof, Diagnostic("UNSUPPORTED", f"{rule.describe()}: {exc.message}", str(rule.output), rule.id))
        return []
    if rule.dual is not None:
        try:
            other = rule.dual.closed(env)
        except UnsupportedConfiguration as exc:
            ctx.note(
                prof, Diagnostic("DUALITY_UNDECIDED", f"{rule.dual}: {exc.message}", str(rule.output), rule.id)
            )
        else:
            if other != value:
                ctx.note(
                    prof,
                    Diagnostic(
                        "DUALITY_MISMATCH",
                        f"acc form and int form of {rule.id} disagree",
                        str(rule.output),
                        rule.id,
                        regions=(("acc_form", value), ("int_form", other)),
                    ),
                )
    inputs = tuple(str(k) for k in sorted_kinds(rule.inputs()))
    return [Proposal(rule.output, value, rule.id, inputs)]


def _accept(prof: SpectraProfile, p: Proposal, ctx: _Context) -> bool:
    current = prof.assigned.get(p.kind)
    if current is None:
        bad = [d for d in prof.violations(p.kind, p.region) if d.code == "INCLUSION_VIOLATED"]
        if bad and ctx.strict:
            raise RuleConflict(
                f"{p.rule} derives σ_{p.kind} violating the inclusion lattice: {bad[0].message}",
                kind=str(p.kind),
                rule=p.rule,
                derived=p.region,
            )
        for d in bad:
            ctx.note(prof, Diagnostic(d.code, d.message, d.kind, p.rule, d.regions))
        prof.assigned[p.kind] = p.region
        prof.provenance[p.kind] = Provenance.derived(p.rule, p.inputs)
        return True
    if current != p.region:
        prov = prof.provenance[p.kind]
        held = "given" if prov.source == "given" else f"derived by {prov.rule}"
        message = f"{p.rule} derives a different σ_{p.kind} than the one {held}"
        if ctx.strict:
            raise RuleConflict(message, kind=str(p.kind), rule=p.rule, existing=current, derived=p.region)
        ctx.note(
            prof,
            Diagnostic(
                "RULE_CONFLICT", message, str(p.kind), p.rule, (("existing", current), ("derived", p.region))
            ),
        )
    return False


def _interiors_equal(a: SpectralRegion, b: SpectralRegion) -> bool:
    return ops.interior(a).closure() == ops.interior(b).closure()


def run_checks(prof: SpectraProfile, ctx: _Context) -> None:
    env = prof.assigned
    for chk in CHECKS:
        present = [k for k in chk.members if k in env]
        if len(present) < 2:
            continue
        try:
            if chk.relation == "interior-equal":
                ok = all(_interiors_equal(env[present[0]], env[k]) for k in present[1:])
            else:
                ok = all(
                    ops.subset(ops.boundary(env[a]), ops.boundary(env[b])) for a, b in zip(present, present[1:])
                )
        except UnsupportedConfiguration as exc:
            ctx.note(prof, Diagnostic("CHECK_UNDECIDED", f"{chk.citation}: {exc.message}", rule=chk.id))
            continue
        if not ok:
            names = ", ".join(str(k) for k in present)
            ctx.note(prof, Diagnostic("CHECK_FAILED", f"{chk.citation} fails on {names}", rule=chk.id))


def apply_rules(
    profile: SpectraProfile,
    *,
    strict: bool = True,
    rules: Sequence[DerivationRule] | None = None,
    checks: bool = True,
) -> SpectraProfile:
    """Apply ``rules`` (default: all) until nothing new is derivable.

    Strict mode raises ``RuleConflict`` when two derivations disagree or a
    derived value breaks the lattice. Lenient mode records those events as
    diagnostics and keeps the first value.
    """
    ctx = _Context(strict)
    prof = profile.copy()
    table = RULES if rules is None else tuple(rules)
    for _ in range(len(SpectrumKind) + 2):
        changed = False
        for rule in table:
            for p in _propose(rule, prof, ctx):
                changed |= _accept(prof, p, ctx)
        if not changed:
            break
    if checks:
        run_checks(prof, ctx)
    return prof


def derived_kinds(prof: SpectraProfile) -> list[SpectrumKind]:
    return [k for k in prof.kinds() if prof.provenance[k].source == "derived"]


def rules_for(kind: SpectrumKind) -> Iterable[DerivationRule]:
    return (r for r in RULES if r.output == kind)
