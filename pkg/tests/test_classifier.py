from triquad import GroupType, classify, factor_squarefree, is_squarefree, rank2_case, rank3_case


def test_rank_case_assignments():
    rank2 = {33: 1, 209: 1, 65: 2, 21: 3, 35: 4, 17: 5, 89: 5}
    rank3 = {113: 1, 161: 2, 51: 3, 187: 3, 85: 4, 493: 4, 165: 5, 195: 6}
    for d, case in rank2.items():
        rc = rank2_case(factor_squarefree(d))
        assert rc is not None and (rc.rank, rc.case_id) == (2, case), d
        assert rank3_case(factor_squarefree(d)) is None, d
    for d, case in rank3.items():
        rc = rank3_case(factor_squarefree(d))
        assert rc is not None and (rc.rank, rc.case_id) == (3, case), d
        assert rank2_case(factor_squarefree(d)) is None, d


def test_out_of_scope():
    for d in (3, 5, 7, 11, 15, 105):
        assert rank2_case(factor_squarefree(d)) is None, d
        assert rank3_case(factor_squarefree(d)) is None, d
        assert classify(d).group_type is GroupType.OUT_OF_SCOPE, d


def test_type_24_verdicts():
    for d in (33, 57, 89, 129, 209, 233, 249):
        v = classify(d)
        assert v.group_type is GroupType.TYPE_2_4, (d, v)
        assert v.h2.value == 8


def test_type_222_verdicts():
    for d in (51, 85, 123, 187, 493):
        v = classify(d)
        assert v.group_type is GroupType.TYPE_2_2_2, (d, v)
        assert v.h2.value == 8


def test_not_of_target_type():
    for d in (17, 41, 65, 73, 113, 161, 177):
        v = classify(d)
        assert v.group_type is GroupType.NOT_OF_TARGET_TYPE, (d, v)
        if v.h2.kind == "exact":
            assert v.h2.value != 8, d


def test_verdict_consistency_sweep():
    # h2 = 8 exactly on the two target types; the types come from their own
    # rank cases only; symbols logged for every non-trivial verdict
    for d in range(3, 400, 2):
        if not is_squarefree(d):
            continue
        v = classify(d)
        target = v.group_type in (GroupType.TYPE_2_4, GroupType.TYPE_2_2_2)
        if v.rank_case is not None and v.h2.kind == "exact":
            assert (v.h2.value == 8) == target, (d, v)
        if v.rank_case is None:
            assert not target, (d, v)
        if v.group_type is GroupType.TYPE_2_4:
            assert v.rank_case.rank == 2
        if v.group_type is GroupType.TYPE_2_2_2:
            assert v.rank_case.rank == 3


def test_annotations():
    v = classify(41)
    assert any("4-rank" in a for a in v.annotations)
    assert any("8-rank" in a for a in v.annotations)
    v = classify(33)
    assert any("h2(-66)" in a for a in v.annotations)
