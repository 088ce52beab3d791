import numpy as np
import pytest

import cstarconv as cc


@pytest.mark.parametrize("name", ["zn:1", "zn:2", "zn:5", "zn:12", "s3", "d4", "q8"])
def test_builtin_tables_are_groups(name):
    table, irreps = cc.builtin_group(name)
    assert table.is_group
    irreps.validate(table)
    assert sum(d * d for d in irreps.dims) == table.order


def test_s3_structure(s3):
    assert s3.order == 6
    assert not s3.is_abelian
    assert cc.cyclic_group(4).is_abelian
    # parity is multiplicative
    sign = cc.s3_sign()
    for g in range(6):
        for h in range(6):
            assert sign[s3.table[g, h]] == sign[g] * sign[h]


def test_irrep_dimension_counts(s3_irreps):
    assert s3_irreps.dims == (1, 1, 2)
    assert cc.d4_irreps().dims == (1, 1, 1, 1, 2)
    assert cc.q8_irreps().dims == (1, 1, 1, 1, 2)


def test_semigroup_table_rejects_bad_structures():
    with pytest.raises(cc.ConstructionError):
        cc.SemigroupTable(np.array([[1, 0], [0, 1]]), 0)  # declared identity is not a unit
    # identity holds but (1*1)*1 = 1 while 1*(1*1) = 2
    bad_assoc = np.array([[0, 1, 2], [1, 2, 2], [2, 1, 2]])
    with pytest.raises(cc.ConstructionError):
        cc.SemigroupTable(bad_assoc, 0)
    with pytest.raises(cc.ConstructionError):
        cc.SemigroupTable(np.array([[0, 1], [1, 5]]), 0)  # entry out of range


def test_truncated_monoid_is_valid_non_group():
    # {e, a, a^2} with a^3 = a^2: associative, unital, not a group
    table = np.array([[0, 1, 2], [1, 2, 2], [2, 2, 2]])
    monoid = cc.SemigroupTable(table, 0)
    assert not monoid.is_group
    assert monoid.inverses is None


def test_incomplete_irreps_rejected(s3):
    partial = cc.IrrepTable(cc.s3_irreps().matrices[:2])
    with pytest.raises(cc.ConstructionError):
        partial.validate(s3)


def test_irreps_without_trivial_rejected():
    z2 = cc.cyclic_group(2)
    sign_only = cc.IrrepTable(
        (cc.cyclic_irreps(2).matrices[1], cc.cyclic_irreps(2).matrices[1])
    )
    with pytest.raises(cc.ConstructionError):
        sign_only.validate(z2)
