"""Brute-force search over coefficient tuples, independent of the reduced system.

The search assigns primary unknowns one at a time.  Each equation instance
is filed under the last unknown it depends on and is checked as soon as
that unknown is set, so dead branches are cut early.  Every complete
assignment is re-checked with the vectorized checker before it is returned.

Domains: sigma_0 over +-1, sigma_1 and sigma_2 over mu_4 (sigma_1(a)^2 =
chi(a, a) forces this), sigma_3 over mu_16.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import hexagons as hx
from .errors import CapacityError
from .tydata import TYData

FULL_MAX_ORDER = 2
STAGED_MAX_ORDER = 16


class Stage(str, Enum):
    FULL = "full"
    STAGED = "staged"


@dataclass(frozen=True)
class Var:
    key: tuple
    domain: tuple[int, ...]


def mu(k: int, n: int) -> tuple[int, ...]:
    """Exponents of the k-th roots of unity inside mu_N."""
    return tuple(range(0, n, n // k))


def search(data: TYData, families: list[hx.Family], variables: list[Var],
           derive: Callable[[dict], dict], deps_of: Callable[[tuple], set]) -> list[dict]:
    """All assignments whose derived tables satisfy every family instance."""
    pos = {v.key: i for i, v in enumerate(variables)}
    buckets: list[list] = [[] for _ in variables]
    upfront = []
    for fam in families:
        for idx in hx.all_instances(data, fam):
            prim: set = set()
            for entry in hx.dependencies(data, fam, idx):
                prim |= deps_of(entry)
            if prim:
                buckets[max(pos[p] for p in prim)].append((fam, idx))
            else:
                upfront.append((fam, idx))

    values: dict = {}
    results: list[dict] = []

    def holds(items) -> bool:
        tables = derive(values)
        v = hx.View(data, tables["s0"], tables["s1"], tables["s2"], tables["s3"],
                    tables.get("ga"), tables.get("gm", 0), tables.get("kappa", 0))
        return all(hx.instance_holds(v, fam, idx) for fam, idx in items)

    if not holds(upfront):
        return []

    def rec(k: int) -> None:
        if k == len(variables):
            results.append(derive(values))
            return
        var = variables[k]
        for val in var.domain:
            values[var.key] = val
            if holds(buckets[k]):
                rec(k + 1)
        del values[var.key]

    rec(0)
    return results


def _table(values: dict, name: str, m: int) -> np.ndarray:
    return np.array([values.get((name, a), 0) for a in range(m)], dtype=np.int64)


def full_variables(data: TYData, extra: list[Var] = ()) -> list[Var]:
    n, m = data.n, data.order
    out = list(extra)
    for a in range(m):
        out.append(Var(("s1", a), mu(4, n)))
        out.append(Var(("s2", a), mu(4, n)))
        out.append(Var(("s3", a), mu(16, n)))
        for b in range(m):
            out.append(Var(("s0", a, b), mu(2, n)))
    return out


def full_derive(data: TYData) -> Callable[[dict], dict]:
    m = data.order

    def derive(values: dict) -> dict:
        s0 = np.array([[values.get(("s0", a, b), 0) for b in range(m)] for a in range(m)],
                      dtype=np.int64).reshape(m, m)
        out = {"s0": s0}
        for name in ("s1", "s2", "s3", "ga"):
            out[name] = _table(values, name, m)
        out["gm"] = values.get(("gm",), 0)
        out["kappa"] = values.get(("kappa",), 0)
        return out

    return derive


def _identity_deps(entry: tuple) -> set:
    return {entry}


def staged_variables(data: TYData, extra: list[Var] = ()) -> list[Var]:
    n = data.n
    out = list(extra)
    out += [Var(("s1", a), mu(4, n)) for a in range(data.order)]
    out.append(Var(("s",), mu(16, n)))
    return out


def staged_derive(data: TYData) -> Callable[[dict], dict]:
    """Derive s0, s2, s3 from sigma_1 and s = sigma_3(1) by single equation instances.

    split:  s0(b,a) = chi(a,b) from H3; s3(a) = s s1(a) chi(a,a) from H14 at a = b;
            s2(a) = s3(a) chi(a,a) / s from H6 at b = a.
    real/complex: s0(x,y) = chi(x,y) s1(x)^y / s1(x) from RC-H3;
            s3(x) = s / s1(x) from RC-H14 at y = 1;
            s2(x) = (s^x / s3(x))^{gx} from RC-H7 at y = 1.
    """
    x = hx.chi_table(data)
    d = hx.degree_table(data)
    diag = np.diagonal(x)
    m = data.order
    conj = hx.View.conj
    rc = data.case.is_real_complex
    g = data.g

    def derive(values: dict) -> dict:
        s1 = _table(values, "s1", m)
        s = values.get(("s",), 0)
        if rc:
            s0 = x + conj(s1[:, None], d[None, :]) - s1[:, None]
            s3 = s - s1
            s2 = conj(conj(s, d) - s3, (g + d) % 2)
        else:
            s0 = x.T.copy()
            s3 = s + s1 + diag
            s2 = s3 + diag - s
        return {"s0": s0, "s1": s1, "s2": s2, "s3": s3}

    return derive


def staged_deps(data: TYData) -> Callable[[tuple], set]:
    rc = data.case.is_real_complex

    def deps(entry: tuple) -> set:
        name = entry[0]
        if name == "s0":
            return {("s1", entry[1])} if rc else set()
        if name == "s1":
            return {("s1", entry[1])}
        if name == "s2" and not rc:
            return {("s1", entry[1])}
        return {("s1", entry[1]), ("s",)}

    return deps


def check_capacity(data: TYData, stage: Stage) -> None:
    bound = FULL_MAX_ORDER if stage is Stage.FULL else STAGED_MAX_ORDER
    if data.order > bound:
        raise CapacityError(f"{stage.value} oracle is limited to |A| <= {bound}, got {data.order}")


def brute_force_braidings(data: TYData, stage: Stage | str = Stage.STAGED) -> list:
    """Every coefficient tuple in the search domain passing all hexagon families."""
    from .braiding import Braiding, check_hexagons

    stage = Stage(stage)
    check_capacity(data, stage)
    fams = hx.families_for(data)
    if stage is Stage.FULL:
        found = search(data, fams, full_variables(data), full_derive(data), _identity_deps)
    else:
        found = search(data, fams, staged_variables(data), staged_derive(data), staged_deps(data))
    out = []
    for t in found:
        b = Braiding(data, t["s0"], t["s1"], t["s2"], t["s3"])
        if not check_hexagons(b):
            out.append(b)
    return sorted(set(out), key=Braiding.sort_key)
