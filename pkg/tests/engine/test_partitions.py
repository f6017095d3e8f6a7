from __future__ import annotations

import pytest

from src.engine.partitions import (
    PART_SPECS,
    TABLES,
    TRIPLES,
    CountTriple,
    PartClass,
    PartSpec,
    PartSpecError,
    UnknownPartSpecError,
    enumerate_count,
    enumerate_counts,
    gf_expand,
    lookup_part_spec,
    theorem_residual,
)

ROGERS_RAMANUJAN_G = [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9, 10, 12]


def test_parts_one_and_four_mod_five() -> None:
    spec = PartSpec(5, (PartClass(1),))
    assert enumerate_counts(spec, 14) == ROGERS_RAMANUJAN_G
    assert gf_expand(spec, 14).dense(0, 14) == ROGERS_RAMANUJAN_G


@pytest.mark.parametrize("key", sorted(PART_SPECS))
def test_generating_function_matches_enumeration(key: str) -> None:
    spec = PART_SPECS[key]
    assert gf_expand(spec, 150).dense(0, 150) == enumerate_counts(spec, 150)


@pytest.mark.parametrize(("key", "row"), sorted(TABLES.items()))
def test_worked_examples(key: str, row: tuple[int, int]) -> None:
    n, count = row
    assert enumerate_count(lookup_part_spec(key), n) == count


@pytest.mark.parametrize("name", sorted(TRIPLES))
def test_count_identities(name: str) -> None:
    assert not any(theorem_residual(TRIPLES[name], 300))


def test_first_nontrivial_count_identity() -> None:
    x1, x2, x3 = TRIPLES["T35"].specs
    assert enumerate_count(x1, 9) - enumerate_count(x2, 6) - enumerate_count(x3, 9) == 0


def test_self_paired_residue_counts_twice() -> None:
    spec = PartSpec(4, (PartClass(2, colors=1),))
    assert list(spec.residues()) == [(2, 1), (2, 1)]
    assert enumerate_counts(spec, 4) == [1, 0, 2, 0, 3]
    assert gf_expand(spec, 4).dense(0, 4) == [1, 0, 2, 0, 3]


def test_spec_validation() -> None:
    with pytest.raises(PartSpecError):
        PartSpec(0, ())
    with pytest.raises(PartSpecError):
        PartSpec(6, (PartClass(6),))
    with pytest.raises(PartSpecError):
        PartSpec(6, (PartClass(1, colors=0),))
    with pytest.raises(PartSpecError):
        PartSpec(6, (PartClass(1), PartClass(5)))
    with pytest.raises(PartSpecError):
        PartSpec(6, (PartClass(1),)).with_class(PartClass(1))
    with pytest.raises(PartSpecError):
        CountTriple("bad", *TRIPLES["T36"].specs, shift=-1)


def test_edge_counts() -> None:
    spec = PART_SPECS["T37.Z3"]
    assert enumerate_counts(spec, -1) == []
    assert enumerate_count(spec, -2) == 0
    assert enumerate_count(spec, 0) == 1
    assert gf_expand(PartSpec(7, ()), 5).dense(0, 5) == [1, 0, 0, 0, 0, 0]


def test_lookup_part_spec() -> None:
    assert lookup_part_spec("T36.Y2").modulus == 52
    with pytest.raises(UnknownPartSpecError):
        lookup_part_spec("T38.W1")


@pytest.mark.parametrize("key", sorted(PART_SPECS))
def test_adding_a_class_never_lowers_counts(key: str) -> None:
    spec = PART_SPECS[key]
    used = {residue for residue, _ in spec.residues()}
    free = next(a for a in range(1, spec.modulus) if a not in used)
    extended = spec.with_class(PartClass(free, colors=2))
    before = enumerate_counts(spec, 60)
    after = enumerate_counts(extended, 60)
    assert all(more >= fewer for more, fewer in zip(after, before))
    assert after[free] > before[free]
    assert gf_expand(extended, 60).dense(0, 60) == after
