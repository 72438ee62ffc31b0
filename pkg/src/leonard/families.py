"""Named parameter-array families and their terminating series forms.

Each family turns a short list of scalars into a full parameter array.  The
preconditions on the scalars are exactly what the formulas need: products
that appear in phi or varphi must not vanish, and the eigenvalue sequences
must stay injective.  Violations are reported by name, not silently fixed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (
    CharacteristicMismatch,
    DenominatorPoleBeforeTermination,
    IdentityViolated,
    PreconditionViolated,
    SeriesDoesNotTerminate,
)
from .fields import Field, FieldElement, make_field, FieldSpec
from .parray import ParameterArray, beta_plus_one, make_array, validate
from .report import CheckReport

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "q-racah": ("q", "h", "hstar", "s", "sstar", "r1", "r2"),
    "q-hahn": ("q", "h", "hstar", "sstar", "r"),
    "dual-q-hahn": ("q", "h", "hstar", "s", "r"),
    "quantum-q-krawtchouk": ("q", "hstar", "s", "r"),
    "q-krawtchouk": ("q", "h", "hstar", "sstar"),
    "affine-q-krawtchouk": ("q", "h", "hstar", "r"),
    "dual-q-krawtchouk": ("q", "h", "hstar", "s"),
    "racah": ("h", "hstar", "s", "sstar", "r1", "r2"),
    "hahn": ("hstar", "s", "sstar", "r"),
    "dual-hahn": ("h", "s", "sstar", "r"),
    "krawtchouk": ("r", "s", "sstar"),
    "bannai-ito": ("h", "hstar", "s", "sstar", "r1", "r2"),
    "orphan": ("h", "hstar", "s", "sstar", "r"),
}

# Every family also takes the two affine offsets.
COMMON_PARAMS = ("theta0", "thetastar0")

Q_FAMILIES = ("q-racah", "q-hahn", "dual-q-hahn", "quantum-q-krawtchouk",
              "q-krawtchouk", "affine-q-krawtchouk", "dual-q-krawtchouk")
ORDINARY_FAMILIES = ("racah", "hahn", "dual-hahn", "krawtchouk")

# Families whose polynomials have a terminating series display.
CLOSED_FORM_FAMILIES = Q_FAMILIES + ORDINARY_FAMILIES


def list_families() -> list[str]:
    return list(FAMILY_PARAMS)


def family_param_names(family: str) -> tuple[str, ...]:
    if family not in FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}")
    return FAMILY_PARAMS[family] + COMMON_PARAMS


@dataclass(frozen=True)
class FamilyParams:
    family: str
    d: int
    values: dict[str, FieldElement]

    @property
    def field(self) -> Field:
        return next(iter(self.values.values())).field

    def to_json(self) -> dict:
        F = self.field
        return {
            "family": self.family,
            "d": self.d,
            "field": F.spec.to_json(),
            "values": {k: F.format(v) for k, v in self.values.items()},
        }

    @staticmethod
    def from_json(obj: dict) -> "FamilyParams":
        field = make_field(FieldSpec.from_json(obj["field"]))
        family = obj["family"]
        names = family_param_names(family)
        given = obj["values"]
        if set(given) != set(names):
            raise ValueError(
                f"{family} takes parameters {sorted(names)}, got {sorted(given)}")
        values = {k: field.parse(v) for k, v in given.items()}
        return FamilyParams(family=family, d=int(obj["d"]), values=values)


def characteristic_admissible(family: str, d: int, field: Field) -> bool:
    """Whether the field characteristic allows the family at diameter d."""
    char = field.characteristic()
    if family in ORDINARY_FAMILIES:
        return char == 0 or char > d
    if family == "bannai-ito":
        return char == 0 or (char > 2 and 2 * char > d)
    if family == "orphan":
        return char == 2 and d == 3
    # q-families: need a scalar of multiplicative order above d
    if field.is_finite():
        return field.order() - 1 > d
    return True


def _require(cond: bool, family: str, message: str) -> None:
    if not cond:
        raise PreconditionViolated(f"{family}: requires {message}")


def _check_char(family: str, d: int, field: Field) -> None:
    char = field.characteristic()
    if family in ORDINARY_FAMILIES and not (char == 0 or char > d):
        raise CharacteristicMismatch(
            f"{family} needs characteristic 0 or above {d}, field has {char}")
    if family == "bannai-ito" and not (char == 0 or (char > 2 and 2 * char > d)):
        raise CharacteristicMismatch(
            f"bannai-ito needs characteristic 0 or an odd prime above {d}/2, "
            f"field has {char}")
    if family == "orphan" and char != 2:
        raise CharacteristicMismatch(
            f"orphan needs characteristic 2, field has {char}")


class _QPowers:
    """Cached integer powers of a fixed nonzero scalar."""

    def __init__(self, q: FieldElement):
        self.q = q
        self._pos = [q.field.one()]
        self._neg = [q.field.one()]

    def __call__(self, n: int) -> FieldElement:
        cache, step = (self._pos, self.q) if n >= 0 else (self._neg, self.q.inverse())
        while len(cache) <= abs(n):
            cache.append(cache[-1] * step)
        return cache[abs(n)]


def _build_q_racah(field, d, v):
    q, h, hs, s, ss = v["q"], v["h"], v["hstar"], v["s"], v["sstar"]
    r1, r2 = v["r1"], v["r2"]
    fam = "q-racah"
    for name in ("q", "h", "hstar", "s", "sstar", "r1", "r2"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    _require(r1 * r2 == s * ss * qq(d + 1), fam, "r1 r2 = s s* q^(d+1)")
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
        _require(r1 * qq(i) != 1, fam, f"r1 q^{i} != 1")
        _require(r2 * qq(i) != 1, fam, f"r2 q^{i} != 1")
        _require(ss * qq(i) != r1, fam, f"s* q^{i} / r1 != 1")
        _require(ss * qq(i) != r2, fam, f"s* q^{i} / r2 != 1")
    for i in range(2, 2 * d + 1):
        _require(s * qq(i) != 1, fam, f"s q^{i} != 1")
        _require(ss * qq(i) != 1, fam, f"s* q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * (1 - s * qq(i + 1)) * qq(-i)
             for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * (1 - ss * qq(i + 1)) * qq(-i)
              for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              * (1 - r1 * qq(i)) * (1 - r2 * qq(i))
              for i in range(1, d + 1)]
    phi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           * (r1 - ss * qq(i)) * (r2 - ss * qq(i)) / ss
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_q_hahn(field, d, v):
    q, h, hs, ss, r = v["q"], v["h"], v["hstar"], v["sstar"], v["r"]
    fam = "q-hahn"
    for name in ("q", "h", "hstar", "sstar", "r"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
        _require(r * qq(i) != 1, fam, f"r q^{i} != 1")
        _require(ss * qq(i) != r, fam, f"s* q^{i} / r != 1")
    for i in range(2, 2 * d + 1):
        _require(ss * qq(i) != 1, fam, f"s* q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * (1 - ss * qq(i + 1)) * qq(-i)
              for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              * (1 - r * qq(i)) for i in range(1, d + 1)]
    phi = [-(h * hs) * qq(1 - i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           * (r - ss * qq(i)) for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_dual_q_hahn(field, d, v):
    q, h, hs, s, r = v["q"], v["h"], v["hstar"], v["s"], v["r"]
    fam = "dual-q-hahn"
    for name in ("q", "h", "hstar", "s", "r"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
        _require(r * qq(i) != 1, fam, f"r q^{i} != 1")
        _require(s * qq(i) != r, fam, f"s q^{i} / r != 1")
    for i in range(2, 2 * d + 1):
        _require(s * qq(i) != 1, fam, f"s q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * (1 - s * qq(i + 1)) * qq(-i)
             for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              * (1 - r * qq(i)) for i in range(1, d + 1)]
    phi = [h * hs * qq(d + 2 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           * (s - r * qq(i - d - 1)) for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_quantum_q_krawtchouk(field, d, v):
    q, hs, s, r = v["q"], v["hstar"], v["s"], v["r"]
    fam = "quantum-q-krawtchouk"
    for name in ("q", "hstar", "s", "r"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
        _require(s * qq(i) != r, fam, f"s q^{i} / r != 1")
    theta = [v["theta0"] - s * q * (1 - qq(i)) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    varphi = [-(r * hs) * qq(1 - i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              for i in range(1, d + 1)]
    phi = [hs * qq(d + 2 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           * (s - r * qq(i - d - 1)) for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_q_krawtchouk(field, d, v):
    q, h, hs, ss = v["q"], v["h"], v["hstar"], v["sstar"]
    fam = "q-krawtchouk"
    for name in ("q", "h", "hstar", "sstar"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
    for i in range(2, 2 * d + 1):
        _require(ss * qq(i) != 1, fam, f"s* q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * (1 - ss * qq(i + 1)) * qq(-i)
              for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              for i in range(1, d + 1)]
    phi = [h * hs * ss * q * (1 - qq(i)) * (1 - qq(i - d - 1))
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_affine_q_krawtchouk(field, d, v):
    q, h, hs, r = v["q"], v["h"], v["hstar"], v["r"]
    fam = "affine-q-krawtchouk"
    for name in ("q", "h", "hstar", "r"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
        _require(r * qq(i) != 1, fam, f"r q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              * (1 - r * qq(i)) for i in range(1, d + 1)]
    phi = [-(h * hs * r) * qq(1 - i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_dual_q_krawtchouk(field, d, v):
    q, h, hs, s = v["q"], v["h"], v["hstar"], v["s"]
    fam = "dual-q-krawtchouk"
    for name in ("q", "h", "hstar", "s"):
        _require(bool(v[name]), fam, f"{name} != 0")
    qq = _QPowers(q)
    for i in range(1, d + 1):
        _require(qq(i) != 1, fam, f"q^{i} != 1")
    for i in range(2, 2 * d + 1):
        _require(s * qq(i) != 1, fam, f"s q^{i} != 1")
    theta = [v["theta0"] + h * (1 - qq(i)) * (1 - s * qq(i + 1)) * qq(-i)
             for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * (1 - qq(i)) * qq(-i) for i in range(d + 1)]
    varphi = [h * hs * qq(1 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
              for i in range(1, d + 1)]
    phi = [h * hs * s * qq(d + 2 - 2 * i) * (1 - qq(i)) * (1 - qq(i - d - 1))
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_racah(field, d, v):
    h, hs, s, ss, r1, r2 = (v["h"], v["hstar"], v["s"], v["sstar"],
                            v["r1"], v["r2"])
    fam = "racah"
    N = field.from_int
    _require(bool(h), fam, "h != 0")
    _require(bool(hs), fam, "hstar != 0")
    _require(r1 + r2 == s + ss + N(d + 1), fam, "r1 + r2 = s + s* + d + 1")
    for i in range(1, d + 1):
        _require(r1 != -N(i), fam, f"r1 != -{i}")
        _require(r2 != -N(i), fam, f"r2 != -{i}")
        _require(ss - r1 != -N(i), fam, f"s* - r1 != -{i}")
        _require(ss - r2 != -N(i), fam, f"s* - r2 != -{i}")
    for i in range(2, 2 * d + 1):
        _require(s != -N(i), fam, f"s != -{i}")
        _require(ss != -N(i), fam, f"s* != -{i}")
    theta = [v["theta0"] + h * N(i) * (N(i + 1) + s) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * N(i) * (N(i + 1) + ss) for i in range(d + 1)]
    varphi = [h * hs * N(i) * (N(i) - N(d + 1)) * (N(i) + r1) * (N(i) + r2)
              for i in range(1, d + 1)]
    phi = [h * hs * N(i) * (N(i) - N(d + 1)) * (N(i) + ss - r1) * (N(i) + ss - r2)
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_hahn(field, d, v):
    hs, s, ss, r = v["hstar"], v["s"], v["sstar"], v["r"]
    fam = "hahn"
    N = field.from_int
    _require(bool(hs), fam, "hstar != 0")
    _require(bool(s), fam, "s != 0")
    for i in range(1, d + 1):
        _require(r != -N(i), fam, f"r != -{i}")
        _require(ss - r != -N(i), fam, f"s* - r != -{i}")
    for i in range(2, 2 * d + 1):
        _require(ss != -N(i), fam, f"s* != -{i}")
    theta = [v["theta0"] + s * N(i) for i in range(d + 1)]
    thetas = [v["thetastar0"] + hs * N(i) * (N(i + 1) + ss) for i in range(d + 1)]
    varphi = [hs * s * N(i) * (N(i) - N(d + 1)) * (N(i) + r)
              for i in range(1, d + 1)]
    phi = [-(hs * s) * N(i) * (N(i) - N(d + 1)) * (N(i) + ss - r)
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_dual_hahn(field, d, v):
    h, s, ss, r = v["h"], v["s"], v["sstar"], v["r"]
    fam = "dual-hahn"
    N = field.from_int
    _require(bool(h), fam, "h != 0")
    _require(bool(ss), fam, "sstar != 0")
    for i in range(1, d + 1):
        _require(r != -N(i), fam, f"r != -{i}")
        _require(r - s - N(d + 1) != -N(i), fam, f"r - s - d - 1 != -{i}")
    for i in range(2, 2 * d + 1):
        _require(s != -N(i), fam, f"s != -{i}")
    theta = [v["theta0"] + h * N(i) * (N(i + 1) + s) for i in range(d + 1)]
    thetas = [v["thetastar0"] + ss * N(i) for i in range(d + 1)]
    varphi = [h * ss * N(i) * (N(i) - N(d + 1)) * (N(i) + r)
              for i in range(1, d + 1)]
    phi = [h * ss * N(i) * (N(i) - N(d + 1)) * (N(i) + r - s - N(d + 1))
           for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_krawtchouk(field, d, v):
    r, s, ss = v["r"], v["s"], v["sstar"]
    fam = "krawtchouk"
    N = field.from_int
    _require(bool(r), fam, "r != 0")
    _require(bool(s), fam, "s != 0")
    _require(bool(ss), fam, "sstar != 0")
    _require(r != s * ss, fam, "r != s s*")
    theta = [v["theta0"] + s * N(i) for i in range(d + 1)]
    thetas = [v["thetastar0"] + ss * N(i) for i in range(d + 1)]
    varphi = [r * N(i) * (N(i) - N(d + 1)) for i in range(1, d + 1)]
    phi = [(r - s * ss) * N(i) * (N(i) - N(d + 1)) for i in range(1, d + 1)]
    return theta, thetas, varphi, phi


def _build_bannai_ito(field, d, v):
    h, hs, s, ss, r1, r2 = (v["h"], v["hstar"], v["s"], v["sstar"],
                            v["r1"], v["r2"])
    fam = "bannai-ito"
    N = field.from_int
    _require(bool(h), fam, "h != 0")
    _require(bool(hs), fam, "hstar != 0")
    _require(r1 + r2 == -s - ss + N(d + 1), fam, "r1 + r2 = -s - s* + d + 1")
    for i in range(1, d + 1):
        _require(s != N(2 * i), fam, f"s != {2 * i}")
        _require(ss != N(2 * i), fam, f"s* != {2 * i}")
    if d % 2 == 0:
        for i in range(2, d + 1, 2):
            _require(r1 != -N(i), fam, f"r1 != -{i}")
            _require(N(i) - ss - r1 != 0, fam, f"-s* - r1 != -{i}")
        for i in range(1, d + 1, 2):
            _require(r2 != -N(i), fam, f"r2 != -{i}")
            _require(N(i) - ss - r2 != 0, fam, f"-s* - r2 != -{i}")
    else:
        for i in range(1, d + 1, 2):
            _require(r1 != -N(i), fam, f"r1 != -{i}")
            _require(r2 != -N(i), fam, f"r2 != -{i}")
            _require(N(i) - ss - r1 != 0, fam, f"-s* - r1 != -{i}")
            _require(N(i) - ss - r2 != 0, fam, f"-s* - r2 != -{i}")

    theta, thetas = [], []
    for i in range(d + 1):
        sign = field.one() if i % 2 == 0 else -field.one()
        theta.append(v["theta0"] + h * (s - 1 + (1 - s + N(2 * i)) * sign))
        thetas.append(v["thetastar0"] + hs * (ss - 1 + (1 - ss + N(2 * i)) * sign))

    four = N(4) * h * hs
    varphi, phi = [], []
    for i in range(1, d + 1):
        if d % 2 == 0:
            if i % 2 == 0:
                varphi.append(-four * N(i) * (N(i) + r1))
                phi.append(four * N(i) * (N(i) - ss - r1))
            else:
                varphi.append(-four * (N(i) - N(d + 1)) * (N(i) + r2))
                phi.append(four * (N(i) - N(d + 1)) * (N(i) - ss - r2))
        else:
            if i % 2 == 0:
                varphi.append(-four * N(i) * (N(i) - N(d + 1)))
                phi.append(-four * N(i) * (N(i) - N(d + 1)))
            else:
                varphi.append(-four * (N(i) + r1) * (N(i) + r2))
                phi.append(-four * (N(i) - ss - r1) * (N(i) - ss - r2))
    return theta, thetas, varphi, phi


def _build_orphan(field, d, v):
    h, hs, s, ss, r = v["h"], v["hstar"], v["s"], v["sstar"], v["r"]
    fam = "orphan"
    _require(d == 3, fam, "diameter 3")
    one = field.one()
    for name in ("h", "hstar", "s", "sstar", "r"):
        _require(bool(v[name]), fam, f"{name} != 0")
    _require(s != one, fam, "s != 1")
    _require(ss != one, fam, "s* != 1")
    _require(r != s + ss, fam, "r != s + s*")
    _require(r != s * (one + ss), fam, "r != s(1 + s*)")
    _require(r != ss * (one + s), fam, "r != s*(1 + s)")
    gamma = (field.zero(), one, one, field.zero())
    N = field.from_int
    theta = [v["theta0"] + h * (s * N(i) + gamma[i]) for i in range(4)]
    thetas = [v["thetastar0"] + hs * (ss * N(i) + gamma[i]) for i in range(4)]
    hh = h * hs
    varphi = [hh * r, hh, hh * (r + s + ss)]
    phi = [hh * (r + s * (one + ss)), hh, hh * (r + ss * (one + s))]
    return theta, thetas, varphi, phi


_BUILDERS: dict[str, Callable] = {
    "q-racah": _build_q_racah,
    "q-hahn": _build_q_hahn,
    "dual-q-hahn": _build_dual_q_hahn,
    "quantum-q-krawtchouk": _build_quantum_q_krawtchouk,
    "q-krawtchouk": _build_q_krawtchouk,
    "affine-q-krawtchouk": _build_affine_q_krawtchouk,
    "dual-q-krawtchouk": _build_dual_q_krawtchouk,
    "racah": _build_racah,
    "hahn": _build_hahn,
    "dual-hahn": _build_dual_hahn,
    "krawtchouk": _build_krawtchouk,
    "bannai-ito": _build_bannai_ito,
    "orphan": _build_orphan,
}


def family_base(fp: FamilyParams, field: Field) -> FieldElement:
    """The scalar whose powers structure the family's eigenvalues."""
    if fp.family in Q_FAMILIES:
        return fp.values["q"]
    if fp.family == "bannai-ito":
        return -field.one()
    return field.one()


def generate(fp: FamilyParams, field: Field) -> ParameterArray:
    """Instantiate a family; raises PreconditionViolated or
    CharacteristicMismatch when the scalars do not fit the field."""
    if fp.family not in _BUILDERS:
        raise ValueError(f"unknown family {fp.family!r}")
    if fp.d < 1:
        raise ValueError("diameter must be at least 1")
    names = family_param_names(fp.family)
    if set(fp.values) != set(names):
        raise ValueError(
            f"{fp.family} takes parameters {sorted(names)}, got {sorted(fp.values)}")
    for name, value in fp.values.items():
        if value.field != field:
            raise ValueError(f"parameter {name} lives in {value.field}, not {field}")
    _check_char(fp.family, fp.d, field)

    theta, thetas, varphi, phi = _BUILDERS[fp.family](field, fp.d, fp.values)
    p = make_array(field, theta, thetas, varphi, phi)
    rep = validate(p)
    if not rep.ok():
        raise IdentityViolated(
            "family output failed validation: " + "; ".join(rep.lines()))
    if fp.d >= 3:
        base = family_base(fp, field)
        if base + base.inverse() + 1 != beta_plus_one(p):
            raise IdentityViolated("family output has the wrong eigenvalue ratio")
    return p


@dataclass(frozen=True)
class HypergeomSpec:
    """A terminating series: 'basic' uses q-shifted factorials, 'ordinary'
    uses rising factorials."""

    kind: str
    numerator: tuple[FieldElement, ...]
    denominator: tuple[FieldElement, ...]
    z: FieldElement
    q: Optional[FieldElement] = None


def hypergeom_sum(spec: HypergeomSpec, terms: int) -> FieldElement:
    """Sum the series until a numerator factor kills it.

    Raises DenominatorPoleBeforeTermination if a denominator factor vanishes
    first, SeriesDoesNotTerminate if no numerator factor vanishes within
    the given number of terms.
    """
    if spec.kind not in ("basic", "ordinary"):
        raise ValueError(f"unknown series kind {spec.kind!r}")
    some = spec.numerator[0] if spec.numerator else spec.z
    field = some.field
    one = field.one()
    acc = one
    term = one
    # Basic series carry the standard balancing factor when the parameter
    # counts are unequal.
    imbalance = 1 + len(spec.denominator) - len(spec.numerator)
    for n in range(1, terms + 1):
        if spec.kind == "basic":
            q = spec.q
            qn1 = q ** (n - 1)
            num_factors = [one - a * qn1 for a in spec.numerator]
            den_factors = [one - b * qn1 for b in spec.denominator]
            den_factors.append(one - q ** n)
            extra = ((-one) * qn1) ** imbalance if imbalance else one
        else:
            shift = field.from_int(n - 1)
            num_factors = [a + shift for a in spec.numerator]
            den_factors = [b + shift for b in spec.denominator]
            den_factors.append(field.from_int(n))
            extra = one
        if any(f == field.zero() for f in num_factors):
            return acc
        for f in den_factors:
            if f == field.zero():
                raise DenominatorPoleBeforeTermination(
                    f"denominator factor vanishes at term {n}")
        step = extra * spec.z
        for f in num_factors:
            step = step * f
        for f in den_factors:
            step = step * f.inverse()
        term = term * step
        acc = acc + term
    raise SeriesDoesNotTerminate(f"no numerator factor vanished in {terms} terms")


def closed_form_spec(fp: FamilyParams, i: int, j: int) -> HypergeomSpec:
    """The terminating series equal to f_i(theta_j) for display families."""
    family, v = fp.family, fp.values
    if family not in CLOSED_FORM_FAMILIES:
        raise ValueError(f"{family} has no terminating series display")
    F = fp.field
    d = fp.d
    if family in Q_FAMILIES:
        q = v["q"]
        qq = _QPowers(q)
        qi, qj, qd = qq(-i), qq(-j), qq(-d)
        if family == "q-racah":
            return HypergeomSpec("basic",
                                 (qi, v["sstar"] * qq(i + 1), qj, v["s"] * qq(j + 1)),
                                 (v["r1"] * q, v["r2"] * q, qd), q, q)
        if family == "q-hahn":
            return HypergeomSpec("basic",
                                 (qi, v["sstar"] * qq(i + 1), qj),
                                 (v["r"] * q, qd), q, q)
        if family == "dual-q-hahn":
            return HypergeomSpec("basic",
                                 (qi, qj, v["s"] * qq(j + 1)),
                                 (v["r"] * q, qd), q, q)
        if family == "quantum-q-krawtchouk":
            z = v["s"] * v["r"].inverse() * qq(j + 1)
            return HypergeomSpec("basic", (qi, qj), (qd,), z, q)
        if family == "q-krawtchouk":
            return HypergeomSpec("basic",
                                 (qi, v["sstar"] * qq(i + 1), qj),
                                 (F.zero(), qd), q, q)
        if family == "affine-q-krawtchouk":
            return HypergeomSpec("basic",
                                 (qi, F.zero(), qj),
                                 (v["r"] * q, qd), q, q)
        # dual-q-krawtchouk
        return HypergeomSpec("basic",
                             (qi, qj, v["s"] * qq(j + 1)),
                             (F.zero(), qd), q, q)
    N = F.from_int
    one = F.one()
    if family == "racah":
        return HypergeomSpec("ordinary",
                             (N(-i), N(i + 1) + v["sstar"], N(-j), N(j + 1) + v["s"]),
                             (v["r1"] + one, v["r2"] + one, N(-d)), one)
    if family == "hahn":
        return HypergeomSpec("ordinary",
                             (N(-i), N(i + 1) + v["sstar"], N(-j)),
                             (v["r"] + one, N(-d)), one)
    if family == "dual-hahn":
        return HypergeomSpec("ordinary",
                             (N(-i), N(-j), N(j + 1) + v["s"]),
                             (v["r"] + one, N(-d)), one)
    # krawtchouk
    z = v["s"] * v["sstar"] * v["r"].inverse()
    return HypergeomSpec("ordinary", (N(-i), N(-j)), (N(-d),), z)


def verify_closed_form(p: ParameterArray, fp: FamilyParams) -> CheckReport:
    """Evaluate the terminating series against f_i(theta_j) for all i, j."""
    from .polys import corresponding_polys

    report = CheckReport("closed-form")
    table = corresponding_polys(p)
    d = p.d
    for i in range(d + 1):
        for j in range(d + 1):
            spec = closed_form_spec(fp, i, j)
            got = hypergeom_sum(spec, d + 2)
            want = table.P.rows[j][i]
            if got != want:
                report.add(f"series value differs from f_{i}(theta_{j})")
    return report


def _random_nonzero(field: Field, rng: random.Random,
                    exclude: Sequence[FieldElement] = ()) -> FieldElement:
    while True:
        x = field.random_element(rng)
        if x and all(x != e for e in exclude):
            return x


def sample_params(family: str, d: int, field: Field, rng: random.Random,
                  max_tries: int = 400) -> Optional[FamilyParams]:
    """Rejection-sample admissible parameters; None when the field cannot
    host the family at this diameter (or the sampler runs out of tries)."""
    if family not in FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}")
    if not characteristic_admissible(family, d, field):
        return None
    one = field.one()
    N = field.from_int
    for _ in range(max_tries):
        values: dict[str, FieldElement] = {
            "theta0": field.random_element(rng),
            "thetastar0": field.random_element(rng),
        }
        try:
            if family in Q_FAMILIES:
                values["q"] = _random_nonzero(field, rng, exclude=(one, -one))
            for name in FAMILY_PARAMS[family]:
                if name in values or name == "r2":
                    continue
                values[name] = _random_nonzero(field, rng)
            if family == "q-racah":
                qq = _QPowers(values["q"])
                values["r2"] = (values["s"] * values["sstar"] * qq(d + 1)
                                / values["r1"])
            elif family == "racah":
                values["r2"] = values["s"] + values["sstar"] + N(d + 1) - values["r1"]
            elif family == "bannai-ito":
                values["r2"] = N(d + 1) - values["s"] - values["sstar"] - values["r1"]
            fp = FamilyParams(family=family, d=d, values=values)
            generate(fp, field)
            return fp
        except PreconditionViolated:
            continue
    return None
