"""Summary tables computed from the solvers and classifiers, plus emitters."""

from __future__ import annotations

import csv
import difflib
import io
import json
from dataclasses import dataclass, field
from importlib import resources

from . import classifier as cl
from . import crossed as cr
from . import f2, qforms
from .braiding import double_braiding_invariants, sign_of, solve_braidings
from .qforms import Field
from .scalars import CycScalar
from .tydata import Case, TYData, make, split_complex_normal


@dataclass
class Table:
    name: str
    title: str
    header: list[str]
    rows: list[list[str]]
    notes: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_markdown(self) -> str:
        def line(cells):
            return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |"

        out = [f"### {self.title}", "", line(self.header),
               "|" + "|".join("---" for _ in self.header) + "|"]
        out += [line(r) for r in self.rows]
        if self.notes:
            out.append("")
            out += [f"- {n}" for n in self.notes]
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"name": self.name, "title": self.title, "header": self.header,
                "rows": self.rows, "notes": self.notes, "detail": self.detail}


def render(tables: list[Table], fmt: str) -> str:
    if fmt == "markdown":
        return "\n".join(t.to_markdown() for t in tables)
    if fmt == "csv":
        return "\n".join(f"# {t.title}\n{t.to_csv()}" for t in tables)
    if fmt == "json":
        return json.dumps([t.to_json() for t in tables], indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _yes_no(flag: bool) -> str:
    return "Yes" if flag else "No"


def _common(values: list) -> str:
    vals = sorted(set(values), key=str)
    return str(vals[0]) if len(vals) == 1 else "n-dependent: " + ", ".join(map(str, vals))


# classification summary

TABLE1_COLUMNS = [
    ("Split Real", Case.SPLIT_REAL),
    ("ℝ/ℂ, id", Case.RC_ID),
    ("ℝ/ℂ, conj", Case.RC_CONJ),
    ("ℝ/ℍ", Case.REAL_QUATERNIONIC),
    ("ℂ/ℂ*", Case.COMPLEX_COMPLEX),
]

TABLE1_ROWS = [
    "χ-admissible orbits",
    "Orbits extending to braidings",
    "Braidings per orbit",
    "Total braidings",
    "Is σ3(1) an invariant?",
]


def column_facts(data: TYData) -> dict:
    """Orbit and class counts for one instance."""
    chi0 = data.a0_chi
    admissible = qforms.orbits_and_stabilizers(chi0, qforms.enumerate_qforms(chi0, Field.REAL, data.n))
    if data.case is Case.COMPLEX_COMPLEX:
        classes = cr.classify_crossed(data)
        forms = {b.sigma for c in classes for b in c["members"]}
        orbits = qforms.orbits_and_stabilizers(data.chi, forms)
        per_orbit = []
        for o in orbits:
            keys = {q.exps for q in o.members}
            per_orbit.append(sum(1 for c in classes if c["representative"].sigma.exps in keys))
        s3_inv = all(len({int(b.s3[0]) for b in c["members"]}) == 1 for c in classes)
        total = len(classes)
    else:
        c = cl.Classifier(data)
        classes = c.classes()
        orbits = c.orbits
        per_orbit = [row["classes"] for row in c.per_orbit()]
        s3_inv = all(k.invariants["sigma3_1"] is not None for k in classes)
        total = len(classes)
    return {"admissible_orbits": len(admissible), "extending_orbits": len(orbits),
            "per_orbit": per_orbit, "total": total, "sigma3_invariant": s3_inv}


def _per_orbit_cell(per_orbit: list[int]) -> str:
    vals = set(per_orbit)
    if len(vals) == 1:
        return str(vals.pop())
    return "Varies"


def table1(n_values: list[int], taus=(1, -1), n: int | None = None) -> Table:
    header = ["Case:"] + [name for name, _ in TABLE1_COLUMNS]
    cells: dict[str, list[list[str]]] = {r: [] for r in TABLE1_ROWS}
    detail = {}
    for name, case in TABLE1_COLUMNS:
        facts = [(k, t, column_facts(make(case, k, t, n))) for k in n_values for t in taus]
        detail[name] = [{"n": k, "tau": t, **f} for k, t, f in facts]
        cells[TABLE1_ROWS[0]].append(_common([f["admissible_orbits"] for *_, f in facts]))
        cells[TABLE1_ROWS[1]].append(_common([f["extending_orbits"] for *_, f in facts]))
        cells[TABLE1_ROWS[2]].append(_common([_per_orbit_cell(f["per_orbit"]) for *_, f in facts]))
        cells[TABLE1_ROWS[3]].append(_common([f["total"] for *_, f in facts]))
        cells[TABLE1_ROWS[4]].append(_common([_yes_no(f["sigma3_invariant"]) for *_, f in facts]))
    rows = [[r] + cells[r] for r in TABLE1_ROWS]
    varies = [f"{name}: classes per orbit {sorted(d['per_orbit'])}"
              for name, _ in TABLE1_COLUMNS for d in detail[name]
              if len(set(d["per_orbit"])) > 1]
    notes = ["Orbits are Aut(A_0, χ)-orbits of σ restricted to A_0; totals count equivalence classes.",
             "The ℂ/ℂ* column counts ℤ/2-crossed braidings."] + sorted(set(varies))
    return Table("table1", "Braiding classification summary",
                 header, rows, notes, detail)


# split complex summary

SC_ROWS = ["χ-admissible orbits", "Braidings per orbit", "Total braidings"]


def split_complex_table(h_values: list[int], taus=(1, -1), n: int | None = None) -> Table:
    header = ["|ℓ|", "0", "1", "2"]
    cols = []
    detail = {}
    for l_blocks in (0, 1, 2):
        facts = []
        for h in h_values:
            for t in taus:
                c = cl.Classifier(split_complex_normal(h, l_blocks, t, n))
                per = c.per_orbit()
                facts.append({"h": h, "tau": t, "orbits": len(c.orbits),
                              "per_orbit": [r["classes"] for r in per], "total": len(c.classes())})
        detail[str(l_blocks)] = facts
        cols.append([_common([f["orbits"] for f in facts]),
                     _common([_per_orbit_cell(f["per_orbit"]) for f in facts]),
                     _common([f["total"] for f in facts])])
    rows = [[SC_ROWS[i]] + [col[i] for col in cols] for i in range(3)]
    notes = ["χ = h^n ⊕ ℓ^|ℓ|; every orbit of complex χ-admissible forms extends."]
    return Table("split_complex", "Split complex summary",
                 header, rows, notes, detail)


# small instances

SMALL_CASES = [
    ("Split Real", lambda t, n: make(Case.SPLIT_REAL, 0, t, n)),
    ("ℝ/ℍ", lambda t, n: make(Case.REAL_QUATERNIONIC, 0, t, n)),
    ("ℝ/ℂ, id", lambda t, n: make(Case.RC_ID, 0, t, n)),
    ("ℝ/ℂ, conj", lambda t, n: make(Case.RC_CONJ, 0, t, n)),
    ("Split complex, χ = ℓ", lambda t, n: split_complex_normal(0, 1, t, n)),
    ("Split complex, χ = ℓ²", lambda t, n: split_complex_normal(0, 2, t, n)),
    ("Split complex, A = *", lambda t, n: split_complex_normal(0, 0, t, n)),
    ("ℂ/ℂ* crossed", lambda t, n: make(Case.COMPLEX_COMPLEX, 0, t, n)),
]


def small_cases_table(n: int | None = None) -> Table:
    rows = []
    for name, mk in SMALL_CASES:
        row = [name]
        for t in (1, -1):
            data = mk(t, n)
            if data.case is Case.COMPLEX_COMPLEX:
                row.append(str(len(cr.classify_crossed(data))))
            else:
                row.append(str(len(cl.classify(data))))
        rows.append(row)
    return Table("small", "Equivalence classes on the smallest groups",
                 ["Case", "τ > 0", "τ < 0"], rows)


# symmetry and nondegeneracy

PREDICATES = [
    ("Always", lambda f: True),
    ("Never", lambda f: False),
    ("Only when sgn(σ) = sgn(τ)", lambda f: f["rel"] == 1),
    ("Only when sgn(σ) = -sgn(τ)", lambda f: f["rel"] == -1),
    ("Only when A_0 = *", lambda f: f["a0_trivial"]),
    ("Only when A = *", lambda f: f["a_trivial"]),
    ("Only when A = * and sgn(σ) = -sgn(τ)", lambda f: f["a_trivial"] and f["rel"] == -1),
    ("Only when A = * and sgn(σ) = sgn(τ)", lambda f: f["a_trivial"] and f["rel"] == 1),
]


def verdict(observations: list[tuple[dict, bool]]) -> str:
    """The first predicate matching every observation, or Mixed."""
    if not observations:
        return "No braidings"
    for text, pred in PREDICATES:
        if all(pred(f) == val for f, val in observations):
            return text
    return "Mixed"


def _table2_rows(n_values: list[int], n: int | None):
    def rc_id(rel):
        return ([make(Case.RC_ID, k, t, n) for k in n_values for t in (1, -1)],
                lambda f: f["rel"] == rel)

    every = lambda f: True  # noqa: E731
    return [
        ("Split Real", [make(Case.SPLIT_REAL, k, t, n) for k in n_values for t in (1, -1)], every),
        ("Real/Quaternionic",
         [make(Case.REAL_QUATERNIONIC, k, t, n) for k in n_values for t in (1, -1)], every),
        ("Real/Complex, g = id, sgn(σ) = sgn(τ)", *rc_id(1)),
        ("Real/Complex, g = id, sgn(σ) = -sgn(τ)", *rc_id(-1)),
        ("Real/Complex, g = conj", [make(Case.RC_CONJ, k, t, n) for k in n_values for t in (1, -1)],
         every),
    ] + [
        (f"Split Complex, |ℓ| = {l}",
         [split_complex_normal(k, l, t, n) for k in n_values for t in (1, -1)], every)
        for l in (0, 1, 2)
    ]


def _facts(b) -> dict:
    data = b.data
    s = sign_of(b)
    return {"rel": None if s is None else s * data.tau_sign,
            "a_trivial": data.order == 1, "a0_trivial": len(data.a0_basis) == 0}


def table2(n_values: list[int], n: int | None = None) -> Table:
    rows = []
    detail = {}
    for name, instances, select in _table2_rows(n_values, n):
        sym, nondeg = [], []
        for data in instances:
            for b in solve_braidings(data):
                f = _facts(b)
                if not select(f):
                    continue
                inv = double_braiding_invariants(b)
                sym.append((f, inv.is_symmetric))
                nondeg.append((f, inv.is_nondegenerate))
        rows.append([name, verdict(sym), verdict(nondeg)])
        detail[name] = {
            "symmetric_true": sorted({(_inst(f)) for f, v in sym if v}),
            "nondegenerate_true": sorted({(_inst(f)) for f, v in nondeg if v}),
            "braidings": len(sym),
        }
    return Table("table2", "Symmetric and nondegenerate braidings",
                 ["Case", "Symmetric?", "Nondegenerate?"], rows, detail=detail)


def _inst(f: dict) -> str:
    return f"A trivial={f['a_trivial']}, A_0 trivial={f['a0_trivial']}, sgn(σ)sgn(τ)={f['rel']}"


# Gauss sums on h^n + l^2

GAUSS_ORDER = [(1, -1, -1), (1, 1, 1), (1, -1, 1), (-1, -1, -1), (-1, 1, 1), (-1, -1, 1)]


def _label(signs) -> str:
    return "(" + "".join("+" if s > 0 else "-" for s in signs) + ")"


def render_gauss(value: CycScalar, k: int) -> str:
    """value as ±2^{n+1} or ±2^{n+1}i, with n = k; the raw value otherwise."""
    base = CycScalar.from_int(1 << (k + 1), value.n)
    q = value.n // 4
    for e, text in ((0, "2^{n+1}"), (q, "2^{n+1}i"), (2 * q, "-2^{n+1}"), (3 * q, "-2^{n+1}i")):
        if value == base * CycScalar.unit(e, value.n):
            return text
    return repr(value)


def ell2_signs(q) -> tuple[int, int, int]:
    """Class label (kappa, eps1, eps2) of a form on h^n + l^2.

    kappa is the sign on the h^n part and q(g_k) = i eps_k; swapping g_1 and
    g_2 is an isometry, so the eps pair is sorted.
    """
    k = (q.chi.dim - 2) // 2
    kappa = qforms.sign(q.restrict([1 << i for i in range(2 * k)])) if k else 1
    quarter = q.n // 4
    eps = tuple(sorted(1 if q(1 << (2 * k + j)) == quarter else -1 for j in (0, 1)))
    return (kappa, *eps)


def gauss_table(k: int = 1, n: int | None = None) -> Table:
    row_sigma, row_sum = ["(κ, ε1, ε2)"], ["Σ(σ(κ, ε1, ε2))"]
    values = {}
    for signs in GAUSS_ORDER:
        q = qforms.ell2_form(k, *signs, modulus=n)
        s = qforms.gauss_sum(q)
        values[_label(signs)] = s
        row_sigma.append(_label(signs))
        row_sum.append(render_gauss(s, k))
    swap = qforms.ell2_swap(k)
    moved = {_label(signs): _label(ell2_signs(qforms.act(swap, qforms.ell2_form(k, *signs, modulus=n))))
             for signs in GAUSS_ORDER}
    notes = [f"f maps {a} to {b}" for a, b in moved.items()]
    notes.append(f"f preserves h^n ⊕ ℓ²: {_yes_no(f2.normal_form(k, 2).preserved_by(swap))}")
    return Table("gauss", "Gauss sums on h^n ⊕ ℓ²", row_sigma,
                 [row_sum], notes, {"swap": moved, "values": {a: v.to_json() for a, v in values.items()}})


# goldens

GOLDEN_FILES = {
    "table1": "table1.md",
    "split_complex": "split_complex.md",
    "small": "small.md",
    "table2": "table2.md",
    "gauss": "gauss.md",
}


def golden_text(name: str) -> str:
    return resources.files("tybraid").joinpath("goldens", GOLDEN_FILES[name]).read_text(encoding="utf-8")


def diff_against_golden(table: Table) -> list[str]:
    """Unified diff lines between the golden and the computed markdown; empty when equal."""
    want = golden_text(table.name)
    got = table.to_markdown()
    if want == got:
        return []
    return list(difflib.unified_diff(want.splitlines(), got.splitlines(),
                                     f"golden/{GOLDEN_FILES[table.name]}", "computed", lineterm=""))
