"""Prime field arithmetic.

Everything downstream stores coefficients as plain ``int`` residues for speed;
:class:`Fp` is the user-facing element type and the reference the kernels are
tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

MAX_PRIME = 2**31 - 1


class FieldMismatch(ValueError):
    """Raised when elements of different prime fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Prime:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"prime must be an int, got {self.p!r}")
        if not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"prime out of range [2, 2^31-1]: {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self):
        return self.p

    def __call__(self, value: int) -> "Fp":
        return Fp(value, self.p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]


def _modulus(p) -> int:
    return p.p if isinstance(p, Prime) else Prime(p).p


class Fp:
    """Element of F_p. Immutable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p):
        p = _modulus(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def _new(self, v: int) -> "Fp":
        return Fp(v, self.p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inv(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return self._new(pow(self.value, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self._new(o).inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inv() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return self._new(pow(self.value, k, self.p))

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def inv(a: Fp) -> Fp:
    return a.inv()


def inv_mod(a: int, p: int) -> int:
    """Inverse of a nonzero residue, on raw ints."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{p}")
    return pow(a, -1, p)
