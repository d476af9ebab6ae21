"""Exact truncated Laurent/power series over the rationals.

The basic carrier is :class:`PowerSeries`: a finite window of a Laurent
series sum c_n x^n with n running from ``val`` up to (but not including)
``order``; exponents >= ``order`` are unknown and must never be read.
:class:`LogSeries` layers a polynomial-in-log(x) structure on top of it,
and :class:`HJet` is the truncated jet ring Q[H]/(H^r) used by the
Frobenius construction.

All coefficients are arbitrary-precision rationals (gmpy2.mpq when
available, fractions.Fraction otherwise), always kept in lowest terms
with positive denominator, so integrality checks reduce to
``denominator == 1``.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is normally present
    from fractions import Fraction as Q

#: Sentinel truncation order for series that are known exactly (e.g. the
#: implicit zero parts of a LogSeries).
BIG_ORDER = 1 << 30

ZERO = Q(0)
ONE = Q(1)


class TruncationError(Exception):
    """A coefficient beyond the known truncation order was requested."""


class VariableMismatch(Exception):
    """Arithmetic between series in different formal variables."""


def rat(x) -> Q:
    """Coerce ints, strings like '3/4', and rationals to the coefficient type."""
    if isinstance(x, Q):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to coerce float to exact rational")
    return Q(x)


def rat_str(x) -> str:
    return str(rat(x))


class PowerSeries:
    __slots__ = ("var", "val", "coeffs", "order")

    def __init__(self, var, val, coeffs, order):
        cs = [rat(c) for c in coeffs]
        if val + len(cs) > order:
            cs = cs[: order - val]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        val += lo
        cs = cs[lo:]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            val = order
        self.var = var
        self.val = val
        self.coeffs = tuple(cs)
        self.order = order

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var, order=BIG_ORDER):
        return cls(var, order, (), order)

    @classmethod
    def one(cls, var, order=BIG_ORDER):
        return cls(var, 0, (ONE,), order)

    @classmethod
    def identity(cls, var, order=BIG_ORDER):
        return cls(var, 1, (ONE,), order)

    @classmethod
    def monomial(cls, var, exponent, coefficient=1, order=BIG_ORDER):
        return cls(var, exponent, (rat(coefficient),), order)

    @classmethod
    def from_coeffs(cls, var, coeffs, order=None, val=0):
        """Series from a dense coefficient list starting at exponent ``val``."""
        if order is None:
            order = val + len(coeffs)
        return cls(var, val, coeffs, order)

    # -- inspection --------------------------------------------------------

    def coeff(self, n):
        """Exact coefficient of x^n; raises past the truncation order."""
        if n >= self.order:
            raise TruncationError(
                f"coefficient of {self.var}^{n} unknown (order {self.order})")
        if n < self.val or n >= self.val + len(self.coeffs):
            return ZERO
        return self.coeffs[n - self.val]

    def known_coeffs(self):
        """Iterate (exponent, coefficient) over the stored support."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.val + i, c

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        """Coefficient-wise equality on the common known window."""
        if isinstance(other, (int, Q)):
            other = PowerSeries(self.var, 0, (rat(other),), self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if self.var != other.var:
            return False
        n0 = min(self.val, other.val)
        n1 = min(self.order, other.order)
        return all(self.coeff(n) == other.coeff(n) for n in range(n0, n1))

    __hash__ = None

    def __repr__(self):
        terms = []
        for n, c in self.known_coeffs():
            terms.append(f"{c}*{self.var}^{n}")
            if len(terms) >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O({self.var}^{self.order})>"

    # -- ring operations ---------------------------------------------------

    def _check_var(self, other):
        if self.var != other.var:
            raise VariableMismatch(f"{self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if isinstance(other, (int, Q)):
            other = PowerSeries(self.var, 0, (rat(other),), BIG_ORDER)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_var(other)
        order = min(self.order, other.order)
        val = min(self.val, other.val, order)
        ends = [s.val + len(s.coeffs) for s in (self, other) if s.coeffs]
        hi = min(order, max(ends, default=val))
        hi = max(hi, val)
        cs = [ZERO] * (hi - val)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                n = s.val + i
                if n < order:
                    cs[n - val] += c
        return PowerSeries(self.var, val, cs, order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.var, self.val, [-c for c in self.coeffs],
                           self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            c = rat(other)
            if c == 0:
                return PowerSeries.zero(self.var, self.order)
            return PowerSeries(self.var, self.val,
                               [c * a for a in self.coeffs], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_var(other)
        order = min(self.order + other.val, other.order + self.val)
        val = self.val + other.val
        cs = [ZERO] * max(min(order - val,
                              len(self.coeffs) + len(other.coeffs) - 1), 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(cs):
                    break
                if b != 0:
                    cs[k] += a * b
        return PowerSeries(self.var, val, cs, order)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; the lowest known coefficient must be nonzero."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero-to-order series")
        L = self.order - self.val
        u = list(self.coeffs) + [ZERO] * (L - len(self.coeffs))
        w = [ZERO] * L
        w[0] = 1 / u[0]
        for n in range(1, L):
            acc = ZERO
            for k in range(1, n + 1):
                if u[k] != 0 and w[n - k] != 0:
                    acc += u[k] * w[n - k]
            w[n] = -acc / u[0]
        return PowerSeries(self.var, -self.val, w, L - self.val)

    def __truediv__(self, other):
        if isinstance(other, (int, Q)):
            return self * (1 / rat(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PowerSeries.one(self.var, self.order - self.val)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order):
        if order >= self.order:
            return self
        return PowerSeries(self.var, self.val, self.coeffs, order)

    def shift(self, m):
        """Multiply by x^m (exact)."""
        if m == 0:
            return self
        return PowerSeries(self.var, self.val + m, self.coeffs, self.order + m)

    def relabel(self, var):
        return PowerSeries(var, self.val, self.coeffs, self.order)

    # -- derivations -------------------------------------------------------

    def euler(self, repeat=1):
        """Apply the Euler derivation x d/dx ``repeat`` times."""
        cs = [rat(self.val + i) ** repeat * c for i, c in enumerate(self.coeffs)]
        return PowerSeries(self.var, self.val, cs, self.order)

    def deriv(self):
        """Plain d/dx; the truncation order drops by one."""
        cs = [rat(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return PowerSeries(self.var, self.val - 1, cs, self.order - 1)

    # -- composition, reversion, exp/log ----------------------------------

    def compose(self, inner):
        """self(inner); inner must have valuation >= 1."""
        v = inner.val
        if inner.is_zero():
            v = inner.order
        if v < 1:
            raise ValueError("composition requires inner valuation >= 1")
        bounds = [self.order * v, inner.order]
        if self.val < 0:
            bounds.append(inner.order + (self.val - 1) * v)
        N = min(bounds)
        var = inner.var
        total = PowerSeries.zero(var, N)
        inner_t = inner.truncate(N)
        if self.val + len(self.coeffs) > 0:
            p = PowerSeries.one(var, N)
            for k in range(0, self.val + len(self.coeffs)):
                if k >= self.val:
                    c = self.coeffs[k - self.val]
                    if c != 0:
                        total = total + c * p
                p = (p * inner_t).truncate(N)
        if self.val < 0:
            j = inner_t.inverse().truncate(N)
            p = PowerSeries.one(var, N)
            for k in range(1, -self.val + 1):
                p = (p * j).truncate(N)
                c = self.coeff(-k)
                if c != 0:
                    total = total + c * p
        return total.truncate(N)

    def revert(self, new_var="q"):
        """Compositional inverse of a series with valuation exactly 1."""
        if self.val != 1:
            raise ValueError("reversion requires valuation exactly 1")
        N = self.order
        a1 = self.coeffs[0]
        ident = PowerSeries.identity(new_var, N)
        g = PowerSeries(new_var, 1, (1 / a1,), 2)
        fp = self.deriv()
        for _ in range(80):
            prec = min(2 * (g.order), N)
            g = PowerSeries(new_var, g.val, g.coeffs, prec)
            resid = self.compose(g) - ident.truncate(prec)
            if prec >= N and resid.is_zero():
                return g
            g = g - resid / fp.compose(g)
        raise RuntimeError("series reversion did not converge")

    def exp(self):
        """Series exponential; requires valuation >= 1."""
        if not self.is_zero() and self.val < 1:
            raise ValueError("exp requires zero constant term")
        N = self.order
        e = [ONE] + [ZERO] * (N - 1)
        for n in range(1, N):
            acc = ZERO
            for k in range(1, n + 1):
                fk = self.coeff(k) if k < N else ZERO
                if fk != 0 and e[n - k] != 0:
                    acc += rat(k) * fk * e[n - k]
            e[n] = acc / n
        return PowerSeries(self.var, 0, e, N)

    def log(self):
        """Series logarithm; requires constant term 1."""
        if self.val != 0 or self.coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        g = self.euler() / self
        N = g.order
        cs = [ZERO] * N
        for n, c in g.known_coeffs():
            if 0 < n < N:
                cs[n] = c / n
        return PowerSeries(self.var, 0, cs, N)


class LogSeries:
    """Sum over j of parts[j](x) * log(x)^j / j!.

    The 1/j! normalisation makes the Euler derivation act triangularly:
    delta(p * log^j/j!) = (delta p) * log^j/j! + p * log^{j-1}/(j-1)!.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise ValueError("LogSeries needs at least one part")
        var = parts[0].var
        for p in parts:
            if p.var != var:
                raise VariableMismatch("mixed variables in LogSeries parts")
        while len(parts) > 1 and parts[-1].is_zero() \
                and parts[-1].order >= BIG_ORDER:
            parts.pop()
        self.parts = tuple(parts)

    @classmethod
    def from_power(cls, p):
        return cls((p,))

    @property
    def var(self):
        return self.parts[0].var

    @property
    def log_degree(self):
        return len(self.parts) - 1

    @property
    def order(self):
        return min(p.order for p in self.parts)

    def part(self, j):
        if j < len(self.parts):
            return self.parts[j]
        return PowerSeries.zero(self.var, BIG_ORDER)

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def power_part(self):
        """The log-free content; raises if any log part survives to order."""
        for p in self.parts[1:]:
            if not p.is_zero():
                raise ValueError("series carries genuine log terms")
        return self.parts[0]

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            other = LogSeries.from_power(other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(repr(p) for p in self.parts)
        return f"LogSeries[{inner}]"

    def __add__(self, other):
        if isinstance(other, (int, Q, PowerSeries)):
            other = LogSeries.from_power(
                other if isinstance(other, PowerSeries)
                else PowerSeries(self.var, 0, (rat(other),), BIG_ORDER))
        d = max(len(self.parts), len(other.parts))
        return LogSeries([self.part(j) + other.part(j) for j in range(d)])

    __radd__ = __add__

    def __neg__(self):
        return LogSeries([-p for p in self.parts])

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            other = LogSeries.from_power(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            return LogSeries([p * other for p in self.parts])
        if isinstance(other, PowerSeries):
            return LogSeries([p * other for p in self.parts])
        if not isinstance(other, LogSeries):
            return NotImplemented
        d = self.log_degree + other.log_degree
        acc = [PowerSeries.zero(self.var, BIG_ORDER) for _ in range(d + 1)]
        from math import comb
        for a, pa in enumerate(self.parts):
            if pa.is_zero() and pa.order >= BIG_ORDER:
                continue
            for b, pb in enumerate(other.parts):
                acc[a + b] = acc[a + b] + comb(a + b, a) * (pa * pb)
        return LogSeries(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Q)):
            return self * (1 / rat(other))
        if isinstance(other, LogSeries):
            other = other.power_part()
        inv = other.inverse()
        return LogSeries([p * inv for p in self.parts])

    def truncate(self, order):
        return LogSeries([p.truncate(order) for p in self.parts])

    def euler(self, repeat=1):
        cur = self
        for _ in range(repeat):
            parts = [cur.part(j).euler() + cur.part(j + 1)
                     for j in range(len(cur.parts))]
            cur = LogSeries(parts)
        return cur

    def deriv(self):
        """d/dx: differentiates both the parts and the logs."""
        parts = [self.part(j).deriv() + self.part(j + 1).shift(-1)
                 for j in range(len(self.parts))]
        return LogSeries(parts)


class HJet:
    """Truncated polynomial ring Q[H]/(H^r)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, r=None):
        cs = [rat(c) for c in coeffs]
        if r is not None:
            cs = (cs + [ZERO] * r)[:r]
        if not cs:
            raise ValueError("empty jet")
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c, r):
        return cls([c], r)

    @classmethod
    def linear(cls, a, b, r):
        """The jet a + b*H."""
        return cls([a, b], r)

    @property
    def r(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        return isinstance(other, HJet) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"HJet{list(map(str, self.coeffs))}"

    def __add__(self, other):
        if not isinstance(other, HJet):
            other = HJet.constant(other, self.r)
        return HJet([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, HJet):
            other = HJet.constant(other, self.r)
        return HJet([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if not isinstance(other, HJet):
            return HJet([rat(other) * a for a in self.coeffs])
        r = self.r
        cs = [ZERO] * r
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= r:
                    break
                cs[i + j] += a * b
        return HJet(cs)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("jet with zero constant term")
        r = self.r
        w = [ZERO] * r
        w[0] = 1 / c0
        for n in range(1, r):
            acc = ZERO
            for k in range(1, n + 1):
                acc += self.coeffs[k] * w[n - k]
            w[n] = -acc / c0
        return HJet(w)

    def __truediv__(self, other):
        if not isinstance(other, HJet):
            return self * (1 / rat(other))
        return self * other.inverse()

    def __pow__(self, n):
        result = HJet.constant(1, self.r)
        for _ in range(n):
            result = result * self
        return result


# -- serialization ---------------------------------------------------------

def series_to_record(f: PowerSeries) -> dict:
    """Shared exact wire format: coefficients as 'p/q' strings."""
    n = min(f.order, f.val + len(f.coeffs))
    val = min(f.val, n)
    return {
        "variable": f.var,
        "valuation": int(val),
        "order": int(f.order) if f.order < BIG_ORDER else None,
        "coeffs": [str(f.coeff(k)) for k in range(val, n)],
    }


def series_from_record(rec: dict) -> PowerSeries:
    order = rec.get("order")
    val = rec["valuation"]
    coeffs = [rat(c) for c in rec["coeffs"]]
    if order is None:
        order = BIG_ORDER
    return PowerSeries(rec["variable"], val, coeffs, order)
