"""Parameter arrays of Leonard systems: the container, full validation,
the dihedral symmetry action, base extraction, and exhaustive enumeration.

An array of diameter d is (theta_0..theta_d, theta*_0..theta*_d;
varphi_1..varphi_d, phi_1..phi_d).  The defining conditions are

  PA1  theta injective, theta* injective
  PA2  every varphi_i and phi_i nonzero
  PA3  varphi_i = phi_1 * S_i + (theta*_i - theta*_0)(theta_{i-1} - theta_d)
  PA4  phi_i    = varphi_1 * S_i + (theta*_i - theta*_0)(theta_{d-i+1} - theta_0)
  PA5  (theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i) is independent
       of i on 2 <= i <= d-1 and agrees with the starred ratio

where S_i is the partial sum of (theta_h - theta_{d-h}) / (theta_0 - theta_d)
over 0 <= h <= i-1.  PA5 is vacuous for d < 3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceeded, LengthMismatch
from .fields import Field, FieldElement, FieldSpec, make_field, quadratic_roots


@dataclass(frozen=True)
class ParameterArray:
    field: Field
    d: int
    theta: tuple[FieldElement, ...]
    theta_star: tuple[FieldElement, ...]
    varphi: tuple[FieldElement, ...]
    phi: tuple[FieldElement, ...]

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.spec.to_json(),
            "d": self.d,
            "theta": [fmt(x) for x in self.theta],
            "theta_star": [fmt(x) for x in self.theta_star],
            "varphi": [fmt(x) for x in self.varphi],
            "phi": [fmt(x) for x in self.phi],
        }


def make_array(
    field: Field,
    theta: Sequence[FieldElement],
    theta_star: Sequence[FieldElement],
    varphi: Sequence[FieldElement],
    phi: Sequence[FieldElement],
) -> ParameterArray:
    d = len(theta) - 1
    if d < 0:
        raise LengthMismatch("theta must have at least one entry")
    if len(theta_star) != d + 1:
        raise LengthMismatch(f"theta_star needs {d + 1} entries, got {len(theta_star)}")
    if len(varphi) != d:
        raise LengthMismatch(f"varphi needs {d} entries, got {len(varphi)}")
    if len(phi) != d:
        raise LengthMismatch(f"phi needs {d} entries, got {len(phi)}")
    for x in itertools.chain(theta, theta_star, varphi, phi):
        if x.field.spec != field.spec:
            raise ValueError("entry lies in a different field")
    return ParameterArray(field, d, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi))


def array_from_json(obj: dict) -> ParameterArray:
    field = make_field(FieldSpec.from_json(obj["field"]))
    d = int(obj["d"])
    theta = tuple(field.parse(s) for s in obj["theta"])
    theta_star = tuple(field.parse(s) for s in obj["theta_star"])
    varphi = tuple(field.parse(s) for s in obj["varphi"])
    phi = tuple(field.parse(s) for s in obj["phi"])
    if len(theta) != d + 1:
        raise LengthMismatch(f"theta needs {d + 1} entries, got {len(theta)}")
    return make_array(field, theta, theta_star, varphi, phi)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    condition: str
    indices: tuple[int, ...]
    detail: str


CONDITIONS = ("PA1", "PA2", "PA3", "PA4", "PA5")


@dataclass
class ValidationReport:
    violations: dict[str, list[Violation]] = dc_field(
        default_factory=lambda: {name: [] for name in CONDITIONS}
    )

    def ok(self) -> bool:
        return not any(self.violations.values())

    def condition_ok(self, name: str) -> bool:
        return not self.violations[name]

    def add(self, condition: str, indices: tuple[int, ...], detail: str) -> None:
        self.violations[condition].append(Violation(condition, indices, detail))

    def lines(self) -> list[str]:
        out = []
        for name in CONDITIONS:
            if self.condition_ok(name):
                out.append(f"{name} pass")
            else:
                for v in self.violations[name]:
                    out.append(f"{name} fail at {list(v.indices)}: {v.detail}")
        return out


def _pa34_sums(p: ParameterArray) -> Optional[list[FieldElement]]:
    """S_1..S_d, or None when theta_0 = theta_d makes them undefined."""
    den = p.theta[0] - p.theta[p.d]
    if not den:
        return None
    inv = den.inverse()
    sums = []
    acc = p.field.zero()
    for h in range(p.d):
        acc = acc + (p.theta[h] - p.theta[p.d - h]) * inv
        sums.append(acc)
    return sums


def validate(p: ParameterArray) -> ValidationReport:
    """Check PA1 through PA5, reporting every violation with witnesses."""
    rep = ValidationReport()
    d = p.d
    for name, seq in (("theta", p.theta), ("theta*", p.theta_star)):
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if seq[i] == seq[j]:
                    rep.add("PA1", (i, j), f"{name}_{i} = {name}_{j} = {seq[i]}")
    for i in range(1, d + 1):
        if not p.varphi[i - 1]:
            rep.add("PA2", (i,), f"varphi_{i} = 0")
        if not p.phi[i - 1]:
            rep.add("PA2", (i,), f"phi_{i} = 0")
    if d >= 1:
        sums = _pa34_sums(p)
        if sums is None:
            rep.add("PA3", (0, d), "theta_0 = theta_d leaves the sum undefined")
            rep.add("PA4", (0, d), "theta_0 = theta_d leaves the sum undefined")
        else:
            for i in range(1, d + 1):
                want = p.phi[0] * sums[i - 1] + (
                    (p.theta_star[i] - p.theta_star[0]) * (p.theta[i - 1] - p.theta[d])
                )
                if p.varphi[i - 1] != want:
                    rep.add("PA3", (i,), f"varphi_{i} = {p.varphi[i-1]}, expected {want}")
                want = p.varphi[0] * sums[i - 1] + (
                    (p.theta_star[i] - p.theta_star[0]) * (p.theta[d - i + 1] - p.theta[0])
                )
                if p.phi[i - 1] != want:
                    rep.add("PA4", (i,), f"phi_{i} = {p.phi[i-1]}, expected {want}")
    if d >= 3:
        ratios: list[Optional[FieldElement]] = []
        for i in range(2, d):
            den = p.theta[i - 1] - p.theta[i]
            den_s = p.theta_star[i - 1] - p.theta_star[i]
            if not den or not den_s:
                rep.add("PA5", (i,), "zero denominator (theta repeats)")
                ratios.append(None)
                continue
            r = (p.theta[i - 2] - p.theta[i + 1]) / den
            r_s = (p.theta_star[i - 2] - p.theta_star[i + 1]) / den_s
            if r != r_s:
                rep.add("PA5", (i,), f"theta ratio {r} != theta* ratio {r_s}")
            ratios.append(r)
        for i in range(len(ratios) - 1):
            a, b = ratios[i], ratios[i + 1]
            if a is not None and b is not None and a != b:
                rep.add("PA5", (i + 2, i + 3), f"ratio changes: {a} then {b}")
    return rep


# ---------------------------------------------------------------------------
# dihedral symmetry

D4_GENERATORS = ("star", "down", "ddown")


def _star(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray(
        p.field,
        d,
        p.theta_star,
        p.theta,
        p.varphi,
        tuple(p.phi[d - j] for j in range(1, d + 1)),
    )


def _down(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray(
        p.field,
        d,
        p.theta,
        tuple(p.theta_star[d - i] for i in range(d + 1)),
        tuple(p.phi[d - j] for j in range(1, d + 1)),
        tuple(p.varphi[d - j] for j in range(1, d + 1)),
    )


def _ddown(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray(
        p.field,
        d,
        tuple(p.theta[d - i] for i in range(d + 1)),
        p.theta_star,
        p.phi,
        p.varphi,
    )


_D4_MAP = {"star": _star, "down": _down, "ddown": _ddown}


def d4_apply(p: ParameterArray, word: Sequence[str]) -> ParameterArray:
    """Apply a word over {star, down, ddown} left to right."""
    for gen in word:
        try:
            p = _D4_MAP[gen](p)
        except KeyError:
            raise ValueError(f"unknown generator {gen!r}") from None
    return p


# ---------------------------------------------------------------------------
# base extraction


def beta_plus_one(p: ParameterArray) -> Optional[FieldElement]:
    """The common value (theta_{i-2}-theta_{i+1})/(theta_{i-1}-theta_i), or
    None for d < 3 where every scalar is a base."""
    if p.d < 3:
        return None
    return (p.theta[0] - p.theta[3]) / (p.theta[1] - p.theta[2])


@dataclass(frozen=True)
class BaseCandidates:
    """Solutions q of q^2 - beta*q + 1 = 0.

    kind is "any" (d < 3), "in_field" (roots attached, a double root listed
    twice) or "quadratic_only" (monic coefficients attached, low degree
    first, so a caller can build the extension)."""

    kind: str
    roots: Optional[tuple[FieldElement, FieldElement]] = None
    quadratic: Optional[tuple[FieldElement, FieldElement, FieldElement]] = None


def base_candidates(p: ParameterArray) -> BaseCandidates:
    bp1 = beta_plus_one(p)
    if bp1 is None:
        return BaseCandidates("any")
    beta = bp1 - 1
    roots = quadratic_roots(p.field, -beta, p.field.one())
    if roots is not None:
        return BaseCandidates("in_field", roots=roots)
    return BaseCandidates(
        "quadratic_only", quadratic=(p.field.one(), -beta, p.field.one())
    )


# ---------------------------------------------------------------------------
# completion and enumeration


def complete_from_theta(
    field: Field,
    theta: Sequence[FieldElement],
    theta_star: Sequence[FieldElement],
    phi_1: FieldElement,
) -> Optional[ParameterArray]:
    """The unique candidate array with the given eigenvalue sequences and
    phi_1, or None when no valid array exists.

    theta and theta* must already be injective with theta_0 != theta_d.
    varphi falls out of PA3 with phi_1 prescribed; phi then falls out of PA4
    with the computed varphi_1.  The candidate survives only if PA4 at i=1
    reproduces phi_1 and PA2 and PA5 hold.
    """
    d = len(theta) - 1
    if d < 1 or len(theta_star) != d + 1:
        raise LengthMismatch("need matching theta and theta* with d >= 1")
    inv = (theta[0] - theta[d]).inverse()
    ts0 = theta_star[0]
    varphi = []
    phi = []
    acc = field.zero()
    for i in range(1, d + 1):
        acc = acc + (theta[i - 1] - theta[d - i + 1]) * inv
        varphi.append(phi_1 * acc + (theta_star[i] - ts0) * (theta[i - 1] - theta[d]))
    varphi_1 = varphi[0]
    if not varphi_1:
        return None
    acc = field.zero()
    for i in range(1, d + 1):
        acc = acc + (theta[i - 1] - theta[d - i + 1]) * inv
        phi.append(varphi_1 * acc + (theta_star[i] - ts0) * (theta[d - i + 1] - theta[0]))
    if phi[0] != phi_1:
        return None
    for x in varphi:
        if not x:
            return None
    for x in phi:
        if not x:
            return None
    if d >= 3:
        first = None
        for i in range(2, d):
            r = (theta[i - 2] - theta[i + 1]) / (theta[i - 1] - theta[i])
            r_s = (theta_star[i - 2] - theta_star[i + 1]) / (
                theta_star[i - 1] - theta_star[i]
            )
            if r != r_s:
                return None
            if first is None:
                first = r
            elif r != first:
                return None
    return ParameterArray(
        field, d, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi)
    )


def enumerate_arrays(
    field: Field,
    d: int,
    budget: Optional[int] = 10_000_000,
    shard: Optional[tuple[int, int]] = None,
) -> Iterator[ParameterArray]:
    """Every valid parameter array of diameter d over a finite field, each
    exactly once, in lexicographic order of (theta tuple, theta* tuple,
    phi_1) under the field's element order.

    Each (theta, theta*, phi_1) triple tried counts one kernel call against
    the budget.  shard=(index, count) keeps only theta tuples whose position
    is congruent to index mod count, so shards partition the output.
    """
    if not field.is_finite():
        raise TypeError("enumeration requires a finite field")
    if d < 1:
        raise ValueError("enumeration requires d >= 1")
    order = field.order()
    if order < d + 1:
        return
    elems = list(field.elements())
    nonzero = elems[1:] if not elems[0] else [e for e in elems if e]
    calls = 0
    for pos, theta in enumerate(itertools.permutations(elems, d + 1)):
        if shard is not None and pos % shard[1] != shard[0]:
            continue
        for theta_star in itertools.permutations(elems, d + 1):
            for phi_1 in nonzero:
                calls += 1
                if budget is not None and calls > budget:
                    raise BudgetExceeded(
                        f"enumeration budget {budget} exhausted at d={d} over {field}"
                    )
                arr = complete_from_theta(field, theta, theta_star, phi_1)
                if arr is not None:
                    yield arr
