"""Verification reports and the reproduction table.

A report aggregates the structural facts a researcher wants at a glance:
linearity (systems are linear by construction), a sail witness if one
exists, the degree profile, and the total deficiency n*k - 3m.  The role
check certifies an expected shape:

* extremal-3k+1: n = 3k+1, m = k^2+1, sail-free, max degree k and total
  deficiency k-3 (the structure forced at the extremal edge count);
* td: n = 3k, m = k^2, sail-free, every degree equal to k;
* truncated: n = 3k+2, m = k^2+k, sail-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import LinearTripleSystem, deficiency
from .errors import RoleShapeMismatch
from .sails import SailWitness, find_sail_fast
from .search import SearchOptions, SearchReport, max_sail_free

ROLES = ("extremal-3k+1", "td", "truncated")


@dataclass(frozen=True)
class VerificationReport:
    n: int
    m: int
    is_linear: bool
    sail_witness: Optional[SailWitness]
    degree_sequence: tuple[int, ...]
    max_degree: int
    k: int
    deficiency_total: int
    role: Optional[str]
    role_pass: Optional[bool]

    @property
    def passed(self) -> bool:
        if self.role is not None:
            return bool(self.role_pass)
        return self.sail_witness is None


def infer_k(n: int, role: Optional[str] = None) -> int:
    """k such that n = 3k+1, 3k or 3k+2, per role or from n alone."""
    residues = {"extremal-3k+1": 1, "td": 0, "truncated": 2}
    if role is not None:
        if role not in residues:
            raise RoleShapeMismatch(f"unknown role {role!r}")
        r = residues[role]
        if n % 3 != r:
            raise RoleShapeMismatch(f"role {role} needs n = 3k+{r}, got n={n}")
    return n // 3


def verify_report(
    system: LinearTripleSystem,
    role: Optional[str] = None,
    k: Optional[int] = None,
) -> VerificationReport:
    if role is not None and role not in ROLES:
        raise RoleShapeMismatch(f"unknown role {role!r}; expected one of {ROLES}")
    if k is None:
        k = infer_k(system.n, role)
    witness = find_sail_fast(system)
    degs = sorted(system.degrees())
    max_deg = degs[-1] if degs else 0
    def_total = deficiency(system, range(system.n), k)
    role_pass = None
    if role == "extremal-3k+1":
        role_pass = (
            system.n == 3 * k + 1
            and system.m == k * k + 1
            and witness is None
            and max_deg == k
            and def_total == k - 3
        )
    elif role == "td":
        role_pass = (
            system.n == 3 * k
            and system.m == k * k
            and witness is None
            and degs == [k] * system.n
        )
    elif role == "truncated":
        role_pass = (
            system.n == 3 * k + 2
            and system.m == k * k + k
            and witness is None
        )
    return VerificationReport(
        n=system.n,
        m=system.m,
        is_linear=True,
        sail_witness=witness,
        degree_sequence=tuple(degs),
        max_degree=max_deg,
        k=k,
        deficiency_total=def_total,
        role=role,
        role_pass=role_pass,
    )


def formula_value(n: int) -> tuple[Optional[int], str]:
    """The closed-form maximum for n, with a label; None when out of range.

    n = 3k gives k^2, n = 3k+2 gives k^2+k, and n = 3k+1 gives k^2+1 for
    k >= 3 (the constructions need k >= 3; smaller k degenerates).
    """
    if n % 3 == 0:
        k = n // 3
        return k * k, f"k^2 (k={k})"
    if n % 3 == 2:
        k = (n - 2) // 3
        return k * k + k, f"k^2+k (k={k})"
    k = (n - 1) // 3
    if k >= 3:
        return k * k + 1, f"k^2+1 (k={k})"
    return None, "formula out of range (k<3)"


@dataclass(frozen=True)
class TableRow:
    n: int
    max_edges: int
    exhausted: bool
    formula: Optional[int]
    formula_label: str
    verdict: str


def table(n_min: int, n_max: int, opts: SearchOptions = SearchOptions()) -> list[TableRow]:
    """One search per n with the applicable formula and a match verdict."""
    if n_min < 4:
        raise ValueError("table starts at n >= 4")
    rows = []
    for n in range(n_min, n_max + 1):
        report: SearchReport = max_sail_free(n, opts)
        value, label = formula_value(n)
        if value is None:
            verdict = "no formula"
        elif not report.exhausted:
            verdict = "not exhausted"
        elif report.max_edges == value:
            verdict = "match"
        else:
            verdict = "MISMATCH"
        rows.append(TableRow(n, report.max_edges, report.exhausted, value, label, verdict))
    return rows
