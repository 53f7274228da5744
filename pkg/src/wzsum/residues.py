"""Arithmetic in Z_n, unit / zero-divisor classification and weight sets."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Union


class ModulusMismatch(ValueError):
    """Raised when residues of different moduli are combined."""


class WeightSetError(ValueError):
    pass


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {n!r}")
    return n


class ResidueKind(enum.Enum):
    ZERO = "zero"
    UNIT = "unit"
    ZERO_DIVISOR = "zero-divisor"


@dataclass(frozen=True, order=True)
class Residue:
    """An element of Z_n stored reduced to ``[0, n-1]``."""

    value: int
    n: int

    def __post_init__(self) -> None:
        check_modulus(self.n)
        object.__setattr__(self, "value", self.value % self.n)

    def _other(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if other.n != self.n:
                raise ModulusMismatch(f"cannot combine residues mod {self.n} and mod {other.n}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._other(other), self.n)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._other(other), self.n)

    def __rsub__(self, other):
        return Residue(self._other(other) - self.value, self.n)

    def __mul__(self, other):
        return Residue(self.value * self._other(other), self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.n)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.n})"


def classify(x: Union[Residue, int], n: int | None = None) -> ResidueKind:
    """Classify ``x`` as zero, unit or zero-divisor of Z_n.

    Accepts either a :class:`Residue` or a plain integer together with ``n``.
    """
    if isinstance(x, Residue):
        if n is not None and n != x.n:
            raise ModulusMismatch(f"residue mod {x.n} classified mod {n}")
        value, n = x.value, x.n
    else:
        if n is None:
            raise TypeError("n is required when classifying a plain integer")
        check_modulus(n)
        value = x % n
    if value == 0:
        return ResidueKind.ZERO
    if gcd(value, n) == 1:
        return ResidueKind.UNIT
    return ResidueKind.ZERO_DIVISOR


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    check_modulus(n)
    return tuple(x for x in range(1, n) if gcd(x, n) == 1)


@lru_cache(maxsize=None)
def zero_divisors(n: int) -> tuple[int, ...]:
    check_modulus(n)
    return tuple(x for x in range(1, n) if gcd(x, n) > 1)


def is_unit(x: int, n: int) -> bool:
    return gcd(x % n, n) == 1


def inverse(x: int, n: int) -> int:
    return pow(x % n, -1, n)


class Preset(enum.Enum):
    ONE = "one"
    ZERO = "zero"
    ALL_NONZERO = "all-nonzero"
    UNITS = "units"
    MINUS_ONE = "minus-one"
    CUSTOM = "custom"


def _preset_members(preset: Preset, n: int) -> frozenset[int]:
    if preset is Preset.ONE:
        return frozenset({1})
    if preset is Preset.ZERO:
        return frozenset({0})
    if preset is Preset.ALL_NONZERO:
        return frozenset(range(1, n))
    if preset is Preset.UNITS:
        return frozenset(units(n))
    if preset is Preset.MINUS_ONE:
        return frozenset({n - 1})
    raise WeightSetError("custom weight sets need explicit members")


@dataclass(frozen=True)
class WeightSet:
    """A non-empty subset of Z_n, remembering which preset (if any) built it."""

    n: int
    members: tuple[int, ...]
    preset: Preset = Preset.CUSTOM

    def __post_init__(self) -> None:
        check_modulus(self.n)
        reduced = tuple(sorted({int(m) % self.n for m in self.members}))
        if not reduced:
            raise WeightSetError("weight set must be non-empty")
        object.__setattr__(self, "members", reduced)

    @classmethod
    def of(cls, preset: Preset, n: int) -> "WeightSet":
        return cls(n, tuple(_preset_members(preset, n)), preset)

    def __contains__(self, x: int) -> bool:
        return x % self.n in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def issubset(self, other: Union["WeightSet", Iterable[int]]) -> bool:
        return set(self.members) <= set(other)

    @property
    def within_units(self) -> bool:
        return all(is_unit(m, self.n) for m in self.members)

    @property
    def within_nonzero(self) -> bool:
        return 0 not in self.members

    @property
    def is_one(self) -> bool:
        return self.members == (1,)

    @property
    def spec(self) -> str:
        """Canonical textual form; round-trips through :func:`resolve_weight_set`."""
        if self.preset is not Preset.CUSTOM:
            return self.preset.value
        return "{" + ",".join(map(str, self.members)) + "}"

    def __str__(self) -> str:
        return self.spec


_LITERAL = re.compile(r"^\{?\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\}?$")


def resolve_weight_set(spec: Union[str, Preset, WeightSet, Iterable[int]], n: int) -> WeightSet:
    """Build a :class:`WeightSet` from a preset, a preset name, ``{c1,c2,...}`` or a list.

    Explicit entries are reduced mod ``n``; negative literals are allowed.
    """
    check_modulus(n)
    if isinstance(spec, WeightSet):
        if spec.n != n:
            raise ModulusMismatch(f"weight set mod {spec.n} used mod {n}")
        return spec
    if isinstance(spec, Preset):
        return WeightSet.of(spec, n)
    if isinstance(spec, str):
        text = spec.strip().lower().replace("_", "-")
        for preset in Preset:
            if preset is not Preset.CUSTOM and text == preset.value:
                return WeightSet.of(preset, n)
        if not _LITERAL.match(text):
            raise WeightSetError(f"unrecognised weight set {spec!r}")
        body = text.strip("{} ")
        entries = [int(tok) for tok in body.split(",")] if body else []
    else:
        entries = [int(x) for x in spec]
    if not entries:
        raise WeightSetError("weight set must be non-empty")
    return WeightSet(n, tuple(entries))
