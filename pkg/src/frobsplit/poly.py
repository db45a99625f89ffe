"""Sparse multivariate polynomials over F_p.

Terms live in a ``dict`` from packed exponent vectors to residues; see
``_pykernels`` for the packing. Monomial orders only matter for leading terms
and Groebner work, so a :class:`Poly` carries no order of its own.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from . import kernels
from .ffield import Fp, Prime, inv_mod

DEFAULT_BITS = 16


class RegistryMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


class PolyRing:
    """Variable registry plus coefficient field: the ring F_p[names].

    Index order is the tie-break order everywhere (``names[0]`` is the largest
    variable in lex and grevlex).
    """

    def __init__(self, names: Sequence[str], p, bits: int = DEFAULT_BITS):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not _IDENT.fullmatch(nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.nvars = len(names)
        self.p = Prime(int(p)).p
        self.bits = bits
        self.fmask = (1 << bits) - 1
        self.max_degree = (1 << (bits - 1)) - 1
        self.guard = sum(1 << (i * bits + bits - 1) for i in range(self.nvars))
        self.ones = sum(1 << (i * bits) for i in range(self.nvars))
        self.index = {nm: i for i, nm in enumerate(names)}

    def __repr__(self):
        return f"PolyRing({list(self.names)}, p={self.p})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.p == other.p
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.names, self.p, self.bits))

    # packing

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        e = 0
        for i, a in enumerate(exps):
            if not 0 <= a <= self.max_degree:
                raise OverflowError(f"exponent {a} out of range")
            e |= a << (i * self.bits)
        return e

    def unpack(self, e: int) -> tuple:
        b, m = self.bits, self.fmask
        return tuple((e >> (i * b)) & m for i in range(self.nvars))

    def mono_degree(self, e: int) -> int:
        if self.nvars == 0:
            return 0
        return ((e * self.ones) >> ((self.nvars - 1) * self.bits)) & self.fmask

    # constructors

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def const(self, c) -> "Poly":
        c = int(c) % self.p
        return Poly(self, {0: c} if c else {})

    def var(self, name: str) -> "Poly":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        return Poly(self, {1 << (i * self.bits): 1})

    def gens(self) -> list:
        return [self.var(nm) for nm in self.names]

    def from_dict(self, terms: Mapping[tuple, int]) -> "Poly":
        out = {}
        for exps, c in terms.items():
            c = int(c) % self.p
            if c:
                e = self.pack(exps)
                out[e] = (out.get(e, 0) + c) % self.p
                if not out[e]:
                    del out[e]
        return Poly(self, out)

    def monomial(self, exps: Sequence[int], c=1) -> "Poly":
        return self.from_dict({tuple(exps): c})

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        """Ring with ``extra`` variables appended; packed terms embed unchanged."""
        return PolyRing(self.names + tuple(extra), self.p, self.bits)

    def parse(self, text: str, bindings: Mapping[str, "Poly"] | None = None) -> "Poly":
        return _Parser(self, text, bindings or {}).parse()


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or ``elim`` (eliminate the last ``k`` variables).

    ``elim`` compares the trailing block of ``k`` variables by grevlex first and
    breaks ties by grevlex on the remaining variables, so any monomial touching
    the trailing block beats every monomial that does not.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination order needs k >= 1")

    def blocks(self, ring: PolyRing) -> tuple:
        return _blocks(self.kind, self.k, ring.nvars, ring.bits)

    def key(self, ring: PolyRing, e: int) -> int:
        return kernels.order_key(e, self.blocks(ring))

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")

_BLOCK_CACHE: dict = {}


def _grevlex_block(lo, hi, bits, outshift):
    n = hi - lo
    width = (1 << (n * bits)) - 1
    mult = sum(1 << (k * bits) for k in range(n))
    return (lo * bits, width, mult, width, outshift)


def _blocks(kind, k, nvars, bits):
    key = (kind, k, nvars, bits)
    if key in _BLOCK_CACHE:
        return _BLOCK_CACHE[key]
    if nvars == 0:
        blocks = ()
    elif kind == "lex":
        fm = (1 << bits) - 1
        blocks = tuple((i * bits, fm, 1, fm, (nvars - 1 - i) * bits) for i in range(nvars))
    elif kind == "grevlex":
        blocks = (_grevlex_block(0, nvars, bits, 0),)
    else:
        if k > nvars:
            raise ValueError(f"cannot eliminate {k} of {nvars} variables")
        rest = nvars - k
        blocks = (_grevlex_block(rest, nvars, bits, rest * bits),)
        if rest:
            blocks += (_grevlex_block(0, rest, bits, 0),)
    _BLOCK_CACHE[key] = blocks
    return blocks


def as_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    if isinstance(order, str):
        m = re.fullmatch(r"elim\((\d+)\)", order)
        if m:
            return MonomialOrder("elim", int(m.group(1)))
        return MonomialOrder(order)
    raise TypeError(f"not a monomial order: {order!r}")


class Poly:
    """Immutable polynomial. Coefficients are stored as ints in ``[1, p)``."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(0, 0)

    @cached_property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(e) for e in self.terms)

    def variables(self) -> set:
        used = 0
        for e in self.terms:
            used |= e
        b = self.ring.bits
        return {nm for i, nm in enumerate(self.ring.names) if (used >> (i * b)) & self.ring.fmask}

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(self.ring.pack(exps), 0)

    def as_dict(self) -> dict:
        return {self.ring.unpack(e): c for e, c in self.terms.items()}

    # arithmetic

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RegistryMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fp)):
            if isinstance(other, Fp) and other.p != self.ring.p:
                raise RegistryMismatch(f"F_{other.p} scalar in ring over F_{self.ring.p}")
            return self.ring.const(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernels.axpy(self.terms, other.terms, 1, 0, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernels.axpy(self.terms, other.terms, self.ring.p - 1, 0, self.ring.p))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fp)):
            return self.scale(int(other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        if self.degree + other.degree > self.ring.max_degree:
            raise OverflowError("product degree exceeds packed exponent range")
        return Poly(self.ring, kernels.mul(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c = int(c) % p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, e: int, c: int = 1) -> "Poly":
        p = self.ring.p
        return Poly(self.ring, {t + e: v * c % p for t, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fp)):
            other = self.ring.const(int(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # order-dependent

    def leading(self, order=GREVLEX) -> tuple:
        """``(packed_exponent, coefficient)`` of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        blocks = as_order(order).blocks(self.ring)
        ok = kernels.order_key
        e = max(self.terms, key=lambda t: ok(t, blocks))
        return e, self.terms[e]

    def monic(self, order=GREVLEX) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self.scale(inv_mod(c, self.ring.p))

    def sorted_terms(self, order=GREVLEX) -> list:
        blocks = as_order(order).blocks(self.ring)
        ok = kernels.order_key
        return sorted(self.terms.items(), key=lambda t: ok(t[0], blocks), reverse=True)

    # Frobenius and Cartier

    def frobenius_power(self, e: int = 1) -> "Poly":
        """``f^(p^e)``: exponents scale by ``p^e``, coefficients are fixed by Frobenius."""
        q = self.ring.p**e
        if self.terms and self.degree * q > self.ring.max_degree:
            raise OverflowError("Frobenius power exceeds packed exponent range")
        return Poly(self.ring, {t * q: c for t, c in self.terms.items()})

    def cartier(self, e: int = 1) -> "Poly":
        """Degree-``e`` Cartier operator.

        ``x^a -> x^((a - (q-1)) / q)`` when every ``a_i = q-1 mod q`` (``q = p^e``),
        otherwise the term is dropped. Coefficients pass through unchanged
        because ``c^(1/q) = c`` in F_p.
        """
        if e < 1:
            raise ValueError("Cartier degree must be >= 1")
        r = self.ring
        return Poly(r, kernels.cartier(self.terms, r.p**e, r.nvars, r.bits))

    # substitution and evaluation

    def substitute(self, images: Mapping, target: PolyRing | None = None) -> "Poly":
        """Ring map sending each variable to its image.

        ``images`` is keyed by variable name; variables of ``self`` without an
        image raise ``KeyError``. Images must live in ``target`` (defaults to the
        ring of the first image, else ``self.ring``).
        """
        imgs = {}
        for k, v in images.items():
            name = k if isinstance(k, str) else self.ring.names[k]
            imgs[name] = v
        if target is None:
            target = next((v.ring for v in imgs.values() if isinstance(v, Poly)), self.ring)
        for k, v in list(imgs.items()):
            if not isinstance(v, Poly):
                imgs[k] = target.const(int(v))
            elif v.ring != target:
                raise RegistryMismatch(f"image of {k} lives in {v.ring}, expected {target}")
        missing = self.variables() - set(imgs)
        if missing:
            raise KeyError(f"no image for variables {sorted(missing)}")
        r = self.ring
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = imgs[r.names[i]] ** a
            return powers[key]

        acc = {}
        p = target.p
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(r.unpack(e)):
                if a:
                    term = term * power(i, a)
            acc = kernels.axpy(acc, term.terms, 1, 0, p)
        return Poly(target, acc)

    def evaluate(self, values) -> int:
        """Value at a point; ``values`` is a sequence in registry order or a name map."""
        r = self.ring
        if isinstance(values, Mapping):
            vals = [int(values[nm]) if nm in values else None for nm in r.names]
        else:
            vals = [int(v) for v in values]
            if len(vals) != r.nvars:
                raise ValueError(f"expected {r.nvars} values, got {len(vals)}")
        p = r.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(r.unpack(e)):
                if a:
                    if vals[i] is None:
                        raise KeyError(f"no value for {r.names[i]}")
                    v = v * pow(vals[i], a, p) % p
            total += v
        return total % p

    def to_ring(self, target: PolyRing) -> "Poly":
        """Move into a ring whose variable list extends (or is extended by) ours.

        Fails if a variable in use does not exist in ``target``.
        """
        if target == self.ring:
            return self
        src = self.ring
        if target.bits != src.bits or target.p != src.p:
            raise RegistryMismatch("rings differ in packing or characteristic")
        k = min(src.nvars, target.nvars)
        if src.names[:k] != target.names[:k]:
            raise RegistryMismatch("variable lists are not prefix-compatible")
        if src.nvars > target.nvars:
            limit = 1 << (target.nvars * src.bits)
            if any(e >= limit for e in self.terms):
                raise RegistryMismatch("polynomial uses variables missing from target ring")
        return Poly(target, dict(self.terms))

    # division

    def divmod_single(self, g: "Poly", order=GREVLEX) -> tuple:
        """Quotient and remainder of division by a single polynomial."""
        g = self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        r = self.ring
        lt, lc = g.leading(order)
        ginv = inv_mod(lc, r.p)
        tail = {e: c * ginv % r.p for e, c in g.terms.items() if e != lt}
        blocks = as_order(order).blocks(r)
        rem = {}
        quo = {}
        f = dict(self.terms)
        ok = kernels.order_key
        while f:
            e = max(f, key=lambda t: ok(t, blocks))
            c = f.pop(e)
            if ((e | r.guard) - lt) & r.guard == r.guard:
                m = e - lt
                q = c * ginv % r.p
                quo[m] = (quo.get(m, 0) + q) % r.p
                f = kernels.axpy(f, tail, (r.p - c) % r.p, m, r.p)
            else:
                rem[e] = c
        return Poly(r, {e: c for e, c in quo.items() if c}), Poly(r, rem)

    def divide_exact(self, g: "Poly") -> "Poly":
        q, rem = self.divmod_single(g)
        if rem:
            raise ValueError("polynomial is not divisible")
        return q

    def divides(self, h: "Poly") -> bool:
        _, rem = h.divmod_single(self)
        return rem.is_zero()

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        r = self.ring
        parts = []
        for e, c in self.sorted_terms(GREVLEX):
            factors = []
            for i, a in enumerate(r.unpack(e)):
                if a == 1:
                    factors.append(r.names[i])
                elif a:
                    factors.append(f"{r.names[i]}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r}, p={self.ring.p})"


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def substitute(f: Poly, images: Mapping, target: PolyRing | None = None) -> Poly:
    return f.substitute(images, target)


def cartier(f: Poly, e: int = 1) -> Poly:
    return f.cartier(e)


def frobenius_power(f: Poly, e: int = 1) -> Poly:
    return f.frobenius_power(e)


# text grammar

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring, text, bindings):
        self.ring = ring
        self.text = text
        self.bindings = bindings
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        out = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r} at {i}")
            num, name, op = m.groups()
            if num is not None:
                out.append(("num", int(num)))
            elif name is not None:
                out.append(("name", name))
            else:
                out.append(("op", "^" if op == "**" else op))
            i = m.end()
        if not out:
            raise ParseError("empty expression")
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        f = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return f

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        f = self.term()
        if sign < 0:
            f = -f
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            f = f * self.power()
        return f

    def power(self):
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            f = f**val
        return f

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val in self.bindings:
                return self.bindings[val]
            if val in self.ring.index:
                return self.ring.var(val)
            raise ParseError(f"unknown variable {val!r}")
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return f
        if kind is None:
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected token {val!r}")


def parse(ring: PolyRing, text: str, bindings=None) -> Poly:
    return ring.parse(text, bindings)
