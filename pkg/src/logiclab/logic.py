"""Four-valued signal logic: 0, 1, X (unknown/conflict) and Z (undriven).

The value system is deliberately small.  Z only ever appears on nets
nobody drives; as soon as a value enters a component it degrades to X,
which is what a floating TTL input looks like to the rest of the design.
"""

from __future__ import annotations

from enum import Enum


class LogicValue(Enum):
    ZERO = "0"
    ONE = "1"
    X = "X"
    Z = "Z"

    def __str__(self) -> str:
        return self.value

    @property
    def is_known(self) -> bool:
        return self in (LogicValue.ZERO, LogicValue.ONE)

    @classmethod
    def from_str(cls, s: str) -> "LogicValue":
        try:
            return _FROM_STR[s.upper()]
        except KeyError:
            raise ValueError(f"not a logic value: {s!r}") from None


ZERO = LogicValue.ZERO
ONE = LogicValue.ONE
X = LogicValue.X
Z = LogicValue.Z

_FROM_STR = {"0": ZERO, "1": ONE, "X": X, "Z": Z}


def resolve(a: LogicValue, b: LogicValue) -> LogicValue:
    """Combine two drivers of one net.

    Commutative and associative with identity Z.  Equal drivers agree;
    0 against 1 is a conflict and yields X; X absorbs everything.
    """
    if a is Z:
        return b
    if b is Z:
        return a
    if a is b:
        return a
    return X


def resolve_all(values) -> LogicValue:
    """Fold :func:`resolve` over an iterable; Z for an empty one."""
    out = Z
    for v in values:
        out = resolve(out, v)
        if out is X:
            return X
    return out


def v_not(a: LogicValue) -> LogicValue:
    if a is ZERO:
        return ONE
    if a is ONE:
        return ZERO
    return X


def v_and(a: LogicValue, b: LogicValue) -> LogicValue:
    if a is ZERO or b is ZERO:
        return ZERO
    if a is ONE and b is ONE:
        return ONE
    return X


def v_or(a: LogicValue, b: LogicValue) -> LogicValue:
    if a is ONE or b is ONE:
        return ONE
    if a is ZERO and b is ZERO:
        return ZERO
    return X


def v_xor(a: LogicValue, b: LogicValue) -> LogicValue:
    if a.is_known and b.is_known:
        return ONE if a is not b else ZERO
    return X
