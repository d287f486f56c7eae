"""Geometry tests, including the worked splitting fixtures.

The two splitting fixtures are five- and four-layer stacks over a full cycle
of the n=4 pattern: a staircase one (pre2) admitting four distinct maximal
split results, and a short one (pre1) admitting exactly two single splits.
"""
import pytest

from dnwalls.errors import DomainError, IntegrityError
from dnwalls.geometry import (
    E,
    HS,
    HWL,
    HWU,
    TL,
    TU,
    Layer,
    Slice,
    add_block,
    cell_at,
    is_preslice,
    layer_plus_delta,
    remove_block,
    render_slice,
    shift_all,
    slice_minus_delta,
    slice_plus_delta,
    split,
    split_all,
    splittable_classes,
    unsplit_duals,
    validate_slice,
)

# four layers on a high-dual-cell base: lone rear block, complete dual cell,
# one full cycle more, full cycle plus lone rear block
PRE1 = Slice(4, "A", (Layer(2, TU), Layer(3, E), Layer(6, E), Layer(6, TU)))

# five-layer staircase from the cycle base
PRE2 = Slice(
    4, "A", (Layer(1, E), Layer(2, E), Layer(3, E), Layer(4, E), Layer(5, E))
)


def test_cell_schedule_examples():
    assert cell_at(4, 0).kind == "zo"
    assert cell_at(4, 2).kind == "nn"
    assert cell_at(4, 4).kind == "zo"  # period 2n-4
    assert cell_at(4, 1) == cell_at(4, 1)
    assert (cell_at(4, 1).color, cell_at(4, 1).role) == (2, "sup")
    assert (cell_at(4, 3).color, cell_at(4, 3).role) == (2, "cov")
    assert (cell_at(5, 1).color, cell_at(5, 1).role) == (2, "sup")
    assert (cell_at(5, 2).color, cell_at(5, 2).role) == (3, "sup")
    assert (cell_at(5, 4).color, cell_at(5, 4).role) == (3, "cov")
    assert (cell_at(5, 5).color, cell_at(5, 5).role) == (2, "cov")


def test_add_block_examples():
    empty = Layer(0, E)
    with_front = add_block(4, "A", empty, 0)
    assert with_front == Layer(0, TL)
    assert add_block(4, "A", with_front, 1) == Layer(1, E)
    assert add_block(4, "A", Layer(1, E), 3) is None
    assert add_block(4, "A", Layer(1, E), 2) == Layer(2, E)
    # pattern B swaps the triangle colors
    assert add_block(4, "B", empty, 0) == Layer(0, TU)


def test_remove_block_inverts_add():
    for pattern in ("A", "B"):
        for layer in (Layer(0, E), Layer(0, TL), Layer(1, E), Layer(2, E), Layer(3, E)):
            for color in range(5):
                added = add_block(4, pattern, layer, color)
                if added is not None:
                    assert remove_block(4, pattern, added, color) == layer


def test_preslice_fixtures_are_preslices():
    assert is_preslice(PRE1)
    assert is_preslice(PRE2)
    assert not is_preslice(Slice(4, "A", (Layer(1, E), Layer(0, E))))


def test_split_fixture_one_admits_exactly_two_moves():
    moves = {}
    for cls in ("zo", 2, "nn"):
        for mirror in (False, True):
            result = split(PRE1, cls, mirror)
            if result is not None:
                moves[(cls, mirror)] = result
    assert set(moves) == {("nn", False), (2, True)}
    assert moves[("nn", False)].layers == (
        Layer(2, TU),
        Layer(2, HWL),
        Layer(6, HWU),
        Layer(6, TU),
    )
    assert moves[(2, True)].layers == (
        Layer(2, TU),
        Layer(3, HS),
        Layer(5, HS),
        Layer(6, TU),
    )


def test_split_fixture_two_has_four_split_forms():
    form1 = split(split(PRE2, 2), "nn")
    form2 = split(split(PRE2, 2, mirror=True), 2)
    form3 = split(split(PRE2, "zo"), "nn")
    form4 = split(split(PRE2, "zo"), 2, mirror=True)
    forms = {form1.layers, form2.layers, form3.layers, form4.layers}
    assert len(forms) == 4
    for form in (form1, form2, form3, form4):
        assert splittable_classes(form) == []
        validate_slice(form)
    assert form1.layers == (
        Layer(1, HS),
        Layer(2, HWU),
        Layer(2, HWL),
        Layer(3, HS),
        Layer(5, E),
    )
    assert form3.layers == (
        Layer(1, E),
        Layer(2, HWU),
        Layer(2, HWL),
        Layer(4, HWU),
        Layer(4, HWL),
    )


def test_split_all_is_canonical_and_idempotent():
    form = split_all(PRE2)
    # dual classes have priority, so the zo+nn form is the canonical one
    assert form == split(split(PRE2, "zo"), "nn")
    assert split_all(form) == form
    # a pre-slice with nothing to split is its own split form
    assert split_all(PRE1) != PRE1  # PRE1 does admit splits
    quiet = Slice(4, "A", (Layer(0, TL), Layer(0, TL)))
    assert split_all(quiet) == quiet


def test_split_needs_two_layers():
    single = Slice(4, "A", (Layer(2, E),))
    for cls in ("zo", 2, "nn"):
        for mirror in (False, True):
            assert split(single, cls, mirror) is None


def test_incorrect_dual_split_is_not_chosen():
    # breaking the lower block instead of the higher one is not the defined move
    wrong = (Layer(0, HWL), Layer(2, E), Layer(3, E), Layer(4, HWU), Layer(5, E))
    good = split(PRE2, "zo")
    assert good.layers != wrong
    assert good.layers[4] == Layer(4, HWL)  # donor is the rear layer at the top
    assert good.layers[0] == Layer(1, E)  # the low whole block is untouched


def test_split_preserves_volume():
    for cls, mirror in (("zo", False), ("nn", False), (2, False), (2, True)):
        result = split(PRE2, cls, mirror)
        if result is not None:
            assert result.volume() == PRE2.volume()


def test_unsplit_roundtrip():
    lowpair = Slice(4, "A", (Layer(0, E), Layer(1, E)))
    broken = split(lowpair, "zo")
    assert broken.layers == (Layer(0, HWU), Layer(0, HWL))
    assert unsplit_duals(broken) == lowpair
    assert unsplit_duals(lowpair) == lowpair


def test_unsplit_detects_unpairable_halves():
    with pytest.raises(IntegrityError):
        unsplit_duals(Slice(4, "A", (Layer(0, HWU), Layer(1, E))))


def test_delta_shift_examples():
    c1, c2 = Layer(0, TL), Layer(1, E)
    s = Slice(4, "A", (c1, c2))
    assert slice_plus_delta(s).layers == (c2, Layer(4, TL))
    assert slice_minus_delta(slice_plus_delta(s)) == s
    assert slice_minus_delta(s) is None
    # a lone rear half-depth block plus one cycle tops out above the next cycle
    assert layer_plus_delta(4, Layer(0, TU)) == Layer(4, TU)


def test_volume_additivity():
    assert slice_plus_delta(PRE1).volume() == PRE1.volume() + 8
    assert shift_all(PRE2, 1).volume() == PRE2.volume() + 5 * 8


def test_validate_slice_rejects_bad_stacks():
    with pytest.raises(DomainError):
        validate_slice(Slice(4, "A", (Layer(2, E), Layer(1, E))))
    with pytest.raises(DomainError):
        validate_slice(Slice(4, "A", (Layer(0, E), Layer(9, E))))
    with pytest.raises(DomainError):
        validate_slice(Slice(4, "A", (Layer(1, TL),)))  # triangle on a unit cell
    with pytest.raises(DomainError):
        validate_slice(Slice(4, "A", (Layer(0, HS),)))  # half-slab on a dual cell


def test_renderer_shows_halves_and_triangles():
    text = render_slice(Slice(4, "A", (Layer(0, TL), Layer(1, HS), Layer(2, E))))
    lines = text.splitlines()
    assert lines[-1] == "##/"
    assert any("-" in line for line in lines)
    assert set("".join(lines)) <= set("#/\\-.")
