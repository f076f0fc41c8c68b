from mtlfilter.timeset import Piece, TimeSet


def test_normalization_merges_touching_pieces():
    s = TimeSet([Piece(0, 1, True, True), Piece(1, 2, False, False)], 5)
    assert s.pieces == (Piece(0, 2, True, False),)
    gap = TimeSet([Piece(0, 1, True, False), Piece(1, 2, False, False)], 5)
    assert len(gap.pieces) == 2 and not gap.contains(1)


def test_complement_and_points():
    s = TimeSet([Piece(1, 1, True, True), Piece(2, 3, True, False)], 5)
    c = s.complement()
    assert not c.contains(1) and c.contains(1.5) and not c.contains(2) and c.contains(3)
    assert s.split_cadlag() == ([(2, 3)], [1], [])


def test_dilate_is_minkowski_sum():
    s = TimeSet.from_cadlag([(2, 6)], 12)
    assert s.dilate(2, 3) == TimeSet.from_cadlag([(4, 9)], 12)
    pt = TimeSet([Piece(3, 3, True, True)], 12)
    assert pt.dilate(-1, 0) == TimeSet([Piece(2, 3, True, True)], 12)


def test_meets_and_components():
    s = TimeSet.from_cadlag([(2, 4)], 10)
    assert s.meets(Piece(4, 5, False, True)) is False
    assert s.meets(Piece(3.9, 5, True, True))
    assert s.component_at_right(2) == Piece(2, 4, True, False)
    assert s.component_at_right(4) is None


def test_split_reports_open_left_ends():
    s = TimeSet([Piece(1, 2, False, False)], 5)
    assert s.split_cadlag() == ([(1, 2)], [], [1])
