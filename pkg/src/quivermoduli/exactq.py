"""Exact polynomials and rational functions in one variable ``q`` over Q.

``RatFuncQ`` stores numerator and denominator as integer coefficient tuples
(constant term first) in lowest terms: polynomial gcd 1, joint content 1,
denominator with positive leading coefficient.  ``PolyQ`` is the public
polynomial type with rational coefficients.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class IntegralityError(ArithmeticError):
    """A rational function expected to be an integer polynomial is not one."""


# --- integer polynomial kernels (tuples, little endian, no trailing zeros) ---

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, x in enumerate(b):
        out[k] += x
    return _trim(out)


def _neg(a):
    return tuple(-x for x in a)


def _scale(a, s):
    if s == 0:
        return ()
    return tuple(x * s for x in a)


def _mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _scale(b, a[0])
    if len(b) == 1:
        return _scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _primitive(a):
    if not a:
        return ()
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return tuple(x // g for x in a) if g != 1 else a


def _prem(a, b):
    """Pseudo-remainder of a by b."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for k, y in enumerate(b):
            a[k + shift] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _gcd(a, b):
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    if not a:
        return _primitive(b)
    if not b:
        return _primitive(a)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return a


def _exquo(a, b):
    """Exact quotient a / b; raises if b does not divide a over Z."""
    if len(b) == 1:
        if any(x % b[0] for x in a):
            raise ArithmeticError("inexact division")
        return tuple(x // b[0] for x in a)
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact division")
        return ()
    out = [0] * (len(a) - db)
    for shift in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[shift + db], lb)
        if r:
            raise ArithmeticError("inexact division")
        out[shift] = c
        if c:
            for k, y in enumerate(b):
                a[k + shift] -= c * y
    if any(a):
        raise ArithmeticError("inexact division")
    return tuple(out)


def _eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _spread(a, k):
    """a(q^k)."""
    if k == 1 or not a:
        return a
    out = [0] * ((len(a) - 1) * k + 1)
    for i, x in enumerate(a):
        out[i * k] = x
    return tuple(out)


def _shift_one(coeffs: Sequence) -> list:
    """Coefficients of p(1 + s) in s."""
    n = len(coeffs)
    out = [0] * n
    for i, c in enumerate(coeffs):
        if c:
            for k in range(i + 1):
                out[k] += c * math.comb(i, k)
    return out


# --- polynomials with rational coefficients ---

class PolyQ:
    """Dense polynomial in ``q`` with rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def q(cls) -> "PolyQ":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise IntegralityError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, RatFuncQ) else RatFuncQ(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyQ((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PolyQ(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return PolyQ(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "RatFuncQ":
        """Multiply by q^k; only powers of q can cancel, so no gcd is needed."""
        if not self.num or k == 0:
            return self
        num, den = self.num, self.den
        if k > 0:
            z = min(k, _lowval(den))
            num, den = (0,) * (k - z) + num, den[z:]
        else:
            z = min(-k, _lowval(num))
            num, den = num[z:], (0,) * (-k - z) + den
        return RatFuncQ._make(num, den)

    def __pow__(self, k: int):
        out = PolyQ((1,))
        for _ in range(k):
            out = out * self
        return out

    def in_qminus1(self) -> list[Fraction]:
        """Coefficients of the polynomial rewritten in the variable ``q - 1``."""
        return [Fraction(x) for x in _shift_one(self.coeffs)]

    def __repr__(self):
        return f"PolyQ({self.pretty()})"

    def pretty(self) -> str:
        return _pretty(self.coeffs)

    def to_json(self) -> dict:
        return {"var": "q", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "PolyQ":
        return cls(Fraction(c) for c in obj["coeffs"])


def _as_poly(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ((x,))
    raise TypeError(f"cannot coerce {type(x).__name__} to PolyQ")


def _pretty(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# --- rational functions ---

class RatFuncQ:
    """Element of Q(q) in canonical lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, _raw=False):
        if _raw:
            self.num, self.den = num, den
            return
        if isinstance(num, RatFuncQ) and den is None:
            self.num, self.den = num.num, num.den
            return
        n, dn = _int_parts(num)
        if den is None:
            d, dd = (1,), 1
        else:
            d, dd = _int_parts(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        # num/den = (n/dn) / (d/dd) = (n*dd) / (d*dn)
        self.num, self.den = _reduce(_scale(n, dd), _scale(d, dn))

    @classmethod
    def q(cls) -> "RatFuncQ":
        return cls._make((0, 1), (1,))

    @classmethod
    def qpow(cls, k: int) -> "RatFuncQ":
        if k >= 0:
            return cls._make((0,) * k + (1,), (1,))
        return cls._make((1,), (0,) * (-k) + (1,))

    @classmethod
    def _make(cls, num, den) -> "RatFuncQ":
        return cls(num, den, _raw=True)

    @property
    def numerator(self) -> PolyQ:
        return PolyQ(self.num)

    @property
    def denominator(self) -> PolyQ:
        return PolyQ(self.den)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFuncQ):
            try:
                other = RatFuncQ(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFuncQ._make(_neg(self.num), self.den)

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFuncQ._make(*_reduce(_add(a, c), b))
        if len(b) == 1 and len(d) == 1:
            return RatFuncQ._make(*_reduce(_add(_scale(a, d[0]), _scale(c, b[0])), (b[0] * d[0],)))
        g = _gcd(b, d)
        if g == (1,):
            num = _add(_mul(a, d), _mul(c, b))
            return RatFuncQ._make(*_finish(num, _mul(b, d)))
        bg, dg = _exquo(b, g), _exquo(d, g)
        num = _add(_mul(a, dg), _mul(c, bg))
        den = _mul(b, dg)
        return RatFuncQ._make(*_reduce(num, den))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_rat(other) - self

    def __mul__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = _gcd(a, d) if len(d) > 1 and len(a) > 1 else (1,)
        g2 = _gcd(c, b) if len(b) > 1 and len(c) > 1 else (1,)
        if g1 != (1,):
            a, d = _exquo(a, g1), _exquo(d, g1)
        if g2 != (1,):
            c, b = _exquo(c, g2), _exquo(b, g2)
        return RatFuncQ._make(*_finish(_mul(a, c), _mul(b, d)))

    __rmul__ = __mul__

    def shift(self, k: int) -> "RatFuncQ":
        """Multiply by q^k; only powers of q can cancel, so no gcd is needed."""
        if not self.num or k == 0:
            return self
        num, den = self.num, self.den
        if k > 0:
            z = min(k, _lowval(den))
            num, den = (0,) * (k - z) + num, den[z:]
        else:
            z = min(-k, _lowval(num))
            num, den = num[z:], (0,) * (-k - z) + den
        return RatFuncQ._make(num, den)

    def inverse(self) -> "RatFuncQ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFuncQ._make(*_finish(self.den, self.num))

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_rat(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        num, den = (1,), (1,)
        for _ in range(k):
            num, den = _mul(num, self.num), _mul(den, self.den)
        return RatFuncQ._make(*_finish(num, den))

    def psi(self, k: int) -> "RatFuncQ":
        """Substitute q -> q^k."""
        if k == 1:
            return self
        return RatFuncQ._make(*_finish(_spread(self.num, k), _spread(self.den, k)))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        dv = _eval_frac(self.den, x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at q = {x}")
        return _eval_frac(self.num, x) / dv

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def as_poly(self) -> PolyQ:
        if len(self.den) != 1:
            raise IntegralityError(f"{self} is not a polynomial")
        return PolyQ(Fraction(c, self.den[0]) for c in self.num)

    def __repr__(self):
        return f"RatFuncQ({self.pretty()})"

    def pretty(self) -> str:
        if len(self.den) == 1 and self.den[0] == 1:
            return _pretty(self.num)
        return f"({_pretty(self.num)})/({_pretty(self.den)})"

    def to_json(self) -> dict:
        return {"var": "q", "num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}


def _eval_frac(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _int_parts(x):
    """Return (integer coefficient tuple, positive integer divisor) for x."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return ((x,) if x else ()), 1
    if isinstance(x, Fraction):
        return ((x.numerator,) if x else ()), x.denominator
    if isinstance(x, PolyQ):
        return _clear(x.coeffs)
    if isinstance(x, RatFuncQ):
        raise TypeError("use RatFuncQ arithmetic for rational function operands")
    if isinstance(x, (tuple, list)):
        return _clear([Fraction(c) for c in x])
    raise TypeError(f"cannot build RatFuncQ from {type(x).__name__}")


def _clear(coeffs):
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _trim(int(c * lcm) for c in coeffs), lcm


def _lowval(a) -> int:
    k = 0
    while not a[k]:
        k += 1
    return k


def _finish(num, den):
    """Normalize content and sign for coprime num/den."""
    if not num:
        return (), (1,)
    g = math.gcd(_content(num), _content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = tuple(x // g for x in num)
        den = tuple(x // g for x in den)
    return num, den


def _reduce(num, den):
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = _gcd(num, den)
        if g != (1,):
            num, den = _exquo(num, g), _exquo(den, g)
    return _finish(num, den)


def _as_rat(x):
    if isinstance(x, RatFuncQ):
        return x
    if isinstance(x, (int, Fraction, PolyQ)):
        return RatFuncQ(x)
    return None


ZERO = RatFuncQ(0)
ONE = RatFuncQ(1)


def as_integer_polynomial(f: RatFuncQ) -> PolyQ:
    """Return f as an integer-coefficient polynomial or raise IntegralityError."""
    f = _as_rat(f)
    if len(f.den) != 1:
        raise IntegralityError(f"not a polynomial: {f.pretty()}")
    c = f.den[0]
    if any(x % c for x in f.num):
        raise IntegralityError(f"non-integer coefficients: {f.pretty()}")
    return PolyQ(x // c for x in f.num)


def expand_at_one(f, order: int) -> list[Fraction]:
    """Taylor coefficients c_0..c_order of f(1 + s)."""
    f = _as_rat(f)
    num = _shift_one(f.num) + [0] * (order + 1)
    den = _shift_one(f.den)
    if den[0] == 0:
        raise ZeroDivisionError("pole at q = 1")
    den = den + [0] * (order + 1)
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = Fraction(num[k]) - sum(out[j] * den[k - j] for j in range(k))
        out.append(acc / den[0])
    return out


def is_positive_in_qminus1(p) -> bool:
    if isinstance(p, RatFuncQ):
        p = as_integer_polynomial(p)
    return all(c >= 0 for c in _as_poly(p).in_qminus1())


def q_integer(n: int) -> RatFuncQ:
    """1 + q + ... + q^(n-1)."""
    return RatFuncQ._make((1,) * n if n > 0 else (), (1,))
