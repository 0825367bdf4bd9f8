import itertools

import pytest

from logiclab.logic import ONE, X, Z, ZERO, LogicValue, resolve, resolve_all, v_and, v_not, v_or, v_xor

ALL = list(LogicValue)


def test_identity_z():
    for v in ALL:
        assert resolve(Z, v) is v
        assert resolve(v, Z) is v


def test_conflict():
    assert resolve(ZERO, ONE) is X
    assert resolve(ONE, ZERO) is X


def test_idempotent():
    for v in ALL:
        assert resolve(v, v) is v


def test_commutative_exhaustive():
    for a, b in itertools.product(ALL, repeat=2):
        assert resolve(a, b) is resolve(b, a)


def test_associative_exhaustive():
    for a, b, c in itertools.product(ALL, repeat=3):
        assert resolve(resolve(a, b), c) is resolve(a, resolve(b, c))


def test_x_absorbs_everything_but_z():
    for v in (ZERO, ONE, X):
        assert resolve(X, v) is X
    assert resolve(X, Z) is X


def test_fold_is_permutation_invariant():
    values = [ZERO, Z, ZERO]
    results = {resolve_all(p) for p in itertools.permutations(values)}
    assert results == {ZERO}
    for combo in itertools.product(ALL, repeat=3):
        expected = resolve_all(combo)
        for perm in itertools.permutations(combo):
            assert resolve_all(perm) is expected


def test_gate_helpers_dominant_values():
    assert v_and(ZERO, X) is ZERO
    assert v_or(ONE, X) is ONE
    assert v_not(X) is X
    assert v_xor(ONE, X) is X
    assert v_xor(ONE, ZERO) is ONE


def test_from_str_roundtrip():
    for v in ALL:
        assert LogicValue.from_str(str(v)) is v
    with pytest.raises(ValueError):
        LogicValue.from_str("q")
