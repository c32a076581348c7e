"""End-to-end checks of builtin examples against their presented algebras."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import torus
from .catalog import ExampleBundle, builtin_seed
from .exgraph import enumerate_graph
from .ncalg import NCPolynomial, verify_identity
from .qscalar import qpow


@dataclass
class Check:
    kind: str
    title: str
    ok: bool
    detail: str = ""
    residue: str = ""


@dataclass
class VerificationReport:
    name: str
    diagonal: tuple
    rules: int = 0
    degree_bound: int = 0
    checks: list = field(default_factory=list)
    identified: dict = field(default_factory=dict)  # graph label -> expected label
    labels: dict = field(default_factory=dict, repr=False)  # expansion key -> expected label
    adjoined: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def of_kind(self, kind):
        return [c for c in self.checks if c.kind == kind]

    def add(self, kind, title, ok, detail="", residue=""):
        self.checks.append(Check(kind, title, ok, detail, residue))

    def format_text(self):
        lines = [
            f"example {self.name}: compatibility diagonal {self.diagonal}",
            f"rewrite system: {self.rules} rules, degree bound {self.degree_bound}",
        ]
        for a in self.adjoined:
            lines.append(f"  flagged {a}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            line = f"[{mark}] {c.kind}: {c.title}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
            if c.residue:
                lines.append(f"       residue: {c.residue}")
        passed = sum(c.ok for c in self.checks)
        lines.append(
            f"{passed}/{len(self.checks)} checks passed in {self.seconds:.2f}s: "
            + ("OK" if self.ok else "FAILED")
        )
        return "\n".join(lines)

    def to_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "diagonal": list(self.diagonal),
            "rules": self.rules,
            "degree_bound": self.degree_bound,
            "adjoined": list(self.adjoined),
            "notes": list(self.notes),
            "identified": dict(self.identified),
            "checks": [
                {"kind": c.kind, "title": c.title, "ok": c.ok, "detail": c.detail,
                 "residue": c.residue}
                for c in self.checks
            ],
            "seconds": round(self.seconds, 3),
        }


def _realize_rhs(relation, slots, one):
    total = one * 0
    for coeff, c in relation:
        term = one
        for i, e in enumerate(c):
            for _ in range(e):
                term = term * slots[i]
        total = total + term.scale(coeff)
    return total


def _format_rhs(relation, names):
    return " + ".join(
        torus._join_coeff(coeff, torus._format_monomial(c, names)) for coeff, c in relation
    )


def verify_example(example, degree_bound=8, max_vertices=10000) -> VerificationReport:
    """Re-derive every exchange relation of ``example`` and check it in its algebra."""
    bundle = example if isinstance(example, ExampleBundle) else builtin_seed(example)
    if bundle.algebra is None or bundle.realization is None:
        raise ValueError(f"example {bundle.name} has no algebra realization to verify against")
    start = time.perf_counter()
    seed = bundle.seed
    P = bundle.algebra
    diag = seed.compatibility()
    report = VerificationReport(bundle.name, diag, degree_bound=degree_bound)
    report.notes.extend(bundle.notes)
    report.adjoined.extend(str(n) for n in P.notes)
    want = bundle.expected.get("diagonal")
    if want is not None:
        report.add("compatibility", f"diagonal {diag}", tuple(want) == diag, f"expected {tuple(want)}")

    R = P.rewrite_system(degree_bound)
    report.rules = len(R.rules)
    one = P.one()

    def holds(lhs, rhs):
        ok, residue = verify_identity(lhs, rhs, R)
        return ok, "" if ok else str(residue)

    # initial cluster quasi-commutes as L prescribes
    real = [bundle.realization[n] for n in seed.names]
    for i in range(seed.m):
        for j in range(i + 1, seed.m):
            lij = seed.L[i][j]
            ok, res = holds(real[i] * real[j], (real[j] * real[i]).scale(qpow(2 * lij)))
            report.add(
                "quasi-commutation",
                f"{seed.names[i]}*{seed.names[j]} = "
                + torus._join_coeff(qpow(2 * lij), f"{seed.names[j]}*{seed.names[i]}"),
                ok, residue=res,
            )

    graph = enumerate_graph(seed, max_vertices=max_vertices)
    known = {}  # expansion key -> (expected label, polynomial)
    for i, n in enumerate(seed.names):
        known[seed.expansions[i].key()] = (n, real[i])
    candidates = dict(bundle.expected_variables)

    def identify(key, r_poly, rhs):
        used = {lab for lab, _ in known.values()}
        order = [c for c in candidates if c not in used] + [c for c in candidates if c in used]
        for lab in order:
            ok, _ = holds(r_poly * candidates[lab], rhs)
            if ok:
                known[key] = (lab, candidates[lab])
                return lab
        return None

    for v, k, t in graph.edges:
        S = graph.vertices[v]
        r = S.mutable_rows[k]
        slot_keys = [e.key() for e in S.expansions]
        labels = [known[kk][0] for kk in slot_keys]
        slots = [known[kk][1] for kk in slot_keys]
        relation = S.exchange_relation(k)
        new_key = torus.mutated_expansion(S, k).key()
        if any(p is None for p in slots):
            lab = known.setdefault(new_key, (graph.labels[new_key], None))[0]
            title = f"{labels[r]}*{lab} = {_format_rhs(relation, labels)}"
            report.add("exchange", title, False, f"vertex {v} -> {t}, direction {k}",
                       "depends on an unidentified variable")
            continue
        rhs = _realize_rhs(relation, slots, one)
        if new_key in known and known[new_key][1] is not None:
            lab = known[new_key][0]
            ok, res = holds(slots[r] * known[new_key][1], rhs)
        else:
            lab = identify(new_key, slots[r], rhs)
            ok, res = lab is not None, ""
            if lab is None:
                lab = graph.labels[new_key]
                known[new_key] = (lab, None)
                res = "no expected variable satisfies the relation"
        title = f"{labels[r]}*{lab} = {_format_rhs(relation, labels)}"
        report.add("exchange", title, ok, f"vertex {v} -> {t}, direction {k}", res)

    for key in graph.order:
        if key in known and known[key][1] is not None:
            report.identified[graph.labels[key]] = known[key][0]
            report.labels[key] = known[key][0]

    for entry in bundle.table:
        S = seed
        for p in entry.sequence[:-1]:
            S = S.mutate(S.column_for(p))
        k = S.column_for(entry.sequence[-1])
        r = S.mutable_rows[k]
        relation = S.exchange_relation(k)
        got = sorted((c.max_exponent(), c_vec) for c, c_vec in relation if c.is_unit())
        expect = sorted(
            (h, tuple(mon.get(i, 0) for i in range(S.m))) for h, mon in entry.terms
        )
        coeff_ok = got == expect and all(c == qpow(c.max_exponent()) for c, _ in relation)
        slots = [known[e.key()][1] for e in S.expansions]
        rhs = _realize_rhs(relation, slots, one)
        new_poly = candidates[entry.new]
        ok, res = holds(slots[r] * new_poly, rhs)
        new_key = torus.mutated_expansion(S, k).key()
        same = known.get(new_key, (None,))[0] == entry.new
        detail = f"new variable {entry.new}"
        if entry.note:
            detail += f"; {entry.note}"
        if not coeff_ok:
            detail += f"; engine gives {S.format_relation(k)}"
        report.add(f"table {entry.title}", entry.text, coeff_ok and ok and same, detail, res)

    for title, lhs, rhs in bundle.identities:
        ok, res = holds(lhs, rhs)
        report.add("identity", title, ok, residue=res)

    mutable_keys = graph.mutable_keys()
    found = sum(1 for kk in mutable_keys if known.get(kk, (0, None))[1] is not None)
    report.add(
        "census",
        f"{found}/{len(mutable_keys)} mutable variables identified",
        found == len(mutable_keys),
    )
    report.seconds = time.perf_counter() - start
    return report
