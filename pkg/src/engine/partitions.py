"""Colored partitions into residue classes, counted by generating function and by enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .series import LatticeSeries
from .theta import PochhammerSpec, pm_specs, pochhammer_quotient


class PartSpecError(ValueError):
    pass


class UnknownPartSpecError(KeyError):
    pass


@dataclass(frozen=True)
class PartClass:
    """Parts congruent to ``±residue`` modulo the spec modulus, each in ``colors`` copies."""

    residue: int
    colors: int = 1


@dataclass(frozen=True)
class PartSpec:
    modulus: int
    classes: tuple[PartClass, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise PartSpecError(f"Modulus must be positive, got {self.modulus}.")
        seen: set[int] = set()
        for part in self.classes:
            if not 0 < part.residue < self.modulus:
                raise PartSpecError(
                    f"Residue {part.residue} outside (0, {self.modulus}) in {self.name or 'spec'}."
                )
            if part.colors < 1:
                raise PartSpecError(f"Residue {part.residue} needs at least one color.")
            pair = {part.residue, self.modulus - part.residue}
            if pair & seen:
                raise PartSpecError(f"Residue ±{part.residue} listed twice in {self.name or 'spec'}.")
            seen |= pair

    def with_class(self, part: PartClass) -> "PartSpec":
        return PartSpec(self.modulus, self.classes + (part,), self.name)

    def residues(self) -> Iterator[tuple[int, int]]:
        """``(residue, copies)`` per residue; the self-paired class yields its residue twice."""
        for part in self.classes:
            yield part.residue, part.colors
            yield self.modulus - part.residue, part.colors


def gf_expand(spec: PartSpec, order: int) -> LatticeSeries:
    """``1 / prod (q^±a; q^M)^colors``; the coefficient of ``q^n`` counts partitions of n."""
    denominators: list[PochhammerSpec] = []
    for part in spec.classes:
        denominators.extend(pm_specs(part.residue, spec.modulus, part.colors))
    return pochhammer_quotient((), denominators, 1, order)


def enumerate_counts(spec: PartSpec, limit: int) -> list[int]:
    """Partition counts for ``0..limit`` by bounded knapsack over explicit colored parts."""
    if limit < 0:
        return []
    counts = [0] * (limit + 1)
    counts[0] = 1
    for residue, copies in spec.residues():
        for size in range(residue, limit + 1, spec.modulus):
            for _ in range(copies):
                for total in range(size, limit + 1):
                    counts[total] += counts[total - size]
    return counts


def enumerate_count(spec: PartSpec, n: int) -> int:
    if n < 0:
        return 0
    return enumerate_counts(spec, n)[n]


@dataclass(frozen=True)
class CountTriple:
    """``first(n) - second(n - shift) - third(n) = 0`` for every n."""

    name: str
    first: PartSpec
    second: PartSpec
    third: PartSpec
    shift: int

    def __post_init__(self) -> None:
        if self.shift < 0:
            raise PartSpecError("Shift must be non-negative.")

    @property
    def specs(self) -> tuple[PartSpec, PartSpec, PartSpec]:
        return self.first, self.second, self.third


def theorem_residual(triple: CountTriple, order: int) -> list[int]:
    first = gf_expand(triple.first, order)
    second = gf_expand(triple.second, order)
    third = gf_expand(triple.third, order)
    residual = []
    for n in range(order + 1):
        lagged = second.at(n - triple.shift) if n >= triple.shift else 0
        residual.append(first.at(n) - lagged - third.at(n))
    return residual


def _spec(name: str, modulus: int, *classes: tuple[int, int]) -> PartSpec:
    return PartSpec(modulus, tuple(PartClass(a, colors) for a, colors in classes), name)


PART_SPECS: dict[str, PartSpec] = {
    spec.name: spec
    for spec in (
        _spec("T35.X1", 36, (3, 1), (6, 2), (15, 1), (18, 2)),
        _spec("T35.X2", 36, (3, 1), (12, 2), (15, 1), (18, 2)),
        _spec("T35.X3", 36, (6, 2), (9, 2), (12, 2)),
        _spec("T36.Y1", 52, (1, 1), (12, 2), (25, 1), (26, 2)),
        _spec("T36.Y2", 52, (1, 1), (14, 2), (25, 1), (26, 2)),
        _spec("T36.Y3", 52, (12, 2), (13, 2), (14, 2)),
        _spec("T37.Z1", 60, (1, 1), (14, 2), (29, 1), (30, 2)),
        _spec("T37.Z2", 60, (1, 1), (16, 2), (29, 1), (30, 2)),
        _spec("T37.Z3", 60, (14, 2), (15, 2), (16, 2)),
    )
}

TRIPLES: dict[str, CountTriple] = {
    "T35": CountTriple("T35", PART_SPECS["T35.X1"], PART_SPECS["T35.X2"], PART_SPECS["T35.X3"], 3),
    "T36": CountTriple("T36", PART_SPECS["T36.Y1"], PART_SPECS["T36.Y2"], PART_SPECS["T36.Y3"], 1),
    "T37": CountTriple("T37", PART_SPECS["T37.Z1"], PART_SPECS["T37.Z2"], PART_SPECS["T37.Z3"], 1),
}

# Worked examples printed beside the theorems: spec key -> (n, count).
TABLES: dict[str, tuple[int, int]] = {
    "T35.X1": (9, 3),
    "T35.X2": (6, 1),
    "T35.X3": (9, 2),
    "T36.Y1": (12, 3),
    "T36.Y2": (11, 1),
    "T36.Y3": (12, 2),
    "T37.Z1": (16, 3),
    "T37.Z2": (15, 1),
    "T37.Z3": (16, 2),
}


def lookup_part_spec(key: str) -> PartSpec:
    try:
        return PART_SPECS[key]
    except KeyError as exc:
        raise UnknownPartSpecError(key) from exc


__all__ = [
    "CountTriple",
    "PART_SPECS",
    "PartClass",
    "PartSpec",
    "PartSpecError",
    "TABLES",
    "TRIPLES",
    "UnknownPartSpecError",
    "enumerate_count",
    "enumerate_counts",
    "gf_expand",
    "lookup_part_spec",
    "theorem_residual",
]
