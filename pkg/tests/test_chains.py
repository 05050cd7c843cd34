import pytest
from hypothesis import given
from hypothesis import strategies as st

from calculus.chains import (
    Cell,
    ChainShape,
    extract_chain,
    invert_shape,
    iter_shapes,
    shape_string,
    theorem1_check,
)
from calculus.errors import InvalidShapeError, NotOddError

BA, B = Cell.BA, Cell.B


@pytest.mark.parametrize("seed, cells, final", [
    (9, (BA, B, BA), 11),
    (11, (BA, BA, B), 13),
    (13, (BA, B, B), 5),
    (15, (BA, BA, BA), 53),
])
def test_extract_chain_n3(seed, cells, final):
    trace = extract_chain(seed, 3)
    assert trace.shape.cells == cells
    assert trace.final == final
    assert trace.alpha == sum(c is BA for c in cells)


def test_trace_values():
    trace = extract_chain(9, 3)
    assert trace.boundary_values == (14, 7, 11)
    assert trace.entering_values() == (9, 14, 7)
    assert trace.post_a_values() == [28, 22]
    assert trace.to_dict()["shape"] == "BABBA"


@pytest.mark.parametrize("n", range(3, 15))
def test_chain_prefixes_and_affine_final_value(n):
    for L in range((1 << n) + 1, 1 << (n + 1), 2):
        trace = extract_chain(L, n)
        for m in range(1, n):
            head = extract_chain(L, m)
            assert head.shape == trace.shape.prefix(m)
            assert head.boundary_values == trace.boundary_values[:m]
        scale = 3 ** trace.alpha
        c = trace.final * (1 << n) - scale * L
        assert 0 <= c < scale * (1 << n), L


def test_extract_chain_rejects_even_seed():
    with pytest.raises(NotOddError):
        extract_chain(10, 3)


def test_shape_validation():
    with pytest.raises(InvalidShapeError):
        ChainShape(())
    with pytest.raises(InvalidShapeError):
        ChainShape((B, BA))


def test_shape_string_is_composition_order():
    shape = ChainShape((BA, BA, B))
    assert shape_string(shape) == "BBABA"
    assert str(shape) == "BBABA"
    assert ChainShape.from_string("BBABA") == shape


def test_shape_code_round_trip_and_prefixes():
    shape = ChainShape((BA, B, BA, BA))
    assert shape.code == 0b110
    assert ChainShape.from_code(0b110, 4) == shape
    assert shape.alpha_prefixes() == [1, 1, 2, 3]
    assert shape.prefix(2) == ChainShape((BA, B))
    with pytest.raises(InvalidShapeError):
        ChainShape.from_code(8, 4)


def test_iter_shapes_counts():
    shapes = list(iter_shapes(5))
    assert len(shapes) == 16
    assert len(set(shapes)) == 16


@pytest.mark.parametrize("cells, seed", [
    ((BA, B, B), 13),
    ((BA, BA, BA), 15),
    ((BA, B, BA), 9),
    ((BA, BA, B), 11),
])
def test_invert_shape_n3(cells, seed):
    assert invert_shape(ChainShape(cells), 3) == seed


def test_invert_shape_length_mismatch():
    with pytest.raises(InvalidShapeError):
        invert_shape(ChainShape((BA, B)), 3)


@given(st.integers(1, 24).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n - 1)) - 1))))
def test_invert_shape_realises_every_code(case):
    n, code = case
    seed = invert_shape(ChainShape.from_code(code, n), n)
    assert seed % 2 == 1
    assert (1 << n) < seed <= (1 << (n + 1))
    assert extract_chain(seed, n).shape.code == code


def test_theorem1_smallest_case():
    result = theorem1_check(1, 1)
    assert result.passed
    assert result.witnesses["difference"] == 3


@given(st.integers(1, 40).flatmap(lambda z: st.tuples(st.just(z), st.integers(0, (1 << (z - 1)) - 1))))
def test_theorem1_periodicity(case):
    z, k = case
    result = theorem1_check(2 * k + 1, z)
    assert result.shape_match and result.diff_ok and result.parity_flip


def test_theorem1_preconditions():
    with pytest.raises(NotOddError):
        theorem1_check(4, 3)
    with pytest.raises(ValueError):
        theorem1_check(9, 3)
