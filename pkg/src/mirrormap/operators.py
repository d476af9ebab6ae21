"""Hypergeometric delta-operators, Frobenius bases, and normal forms.

Operators are stored as polynomials in the Euler derivation delta = z d/dz
with polynomial-in-z coefficients, and converted to d/dz form on demand
via z^k (d/dz)^k = delta(delta-1)...(delta-k+1).
"""

from __future__ import annotations

from math import comb

from .series import (BIG_ORDER, HJet, LogSeries, PowerSeries, Q, ZERO, ONE,
                     rat)


class Poly:
    """Dense univariate polynomial over the rationals (variable z)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c])

    zero_ = None  # set below

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def val(self):
        """Lowest exponent with nonzero coefficient (0 for the zero poly)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def coeff(self, n):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ZERO

    def __eq__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"Poly{[str(c) for c in self.coeffs]}"

    def __add__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Q)):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q)):
            return Poly([rat(other) * c for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly([])
        cs = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                cs[i + j] += a * b
        return Poly(cs)

    __rmul__ = __mul__

    def shift(self, m):
        """Multiply by z^m, m >= 0."""
        return Poly([ZERO] * m + list(self.coeffs))

    def deriv(self):
        return Poly([rat(i) * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lead
            q[i - d] = f
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= f * b
        return Poly(q), Poly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.coeffs[-1])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def eval_series(self, s: PowerSeries) -> PowerSeries:
        """Horner evaluation at a power series (exact to s's implied order)."""
        acc = PowerSeries.zero(s.var, BIG_ORDER)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def eval_at(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_record(self):
        return {"coeffs": [str(c) for c in self.coeffs]}


class RationalFunction:
    """Reduced quotient of two polynomials in z."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, Poly):
            num = Poly([num]) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den]) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        if num.is_zero():
            den = Poly([1])
        lead = den.coeffs[-1]
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Q, Poly)):
            other = RationalFunction(other if isinstance(other, Poly)
                                     else Poly([other]))
        return (isinstance(other, RationalFunction)
                and (self.num * other.den) == (other.num * self.den))

    __hash__ = None

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def deriv(self):
        return RationalFunction(
            self.num.deriv() * self.den - self.num * self.den.deriv(),
            self.den * self.den)

    def series(self, var="z", order=32) -> PowerSeries:
        """Laurent expansion about z = 0 valid through the given order."""
        vd = self.den.val()
        slack = order + 2 * vd + 1
        num_s = PowerSeries(var, 0, self.num.coeffs, slack)
        den_s = PowerSeries(var, 0, self.den.coeffs, slack)
        return (num_s / den_s).truncate(order)

    def eval_series(self, s: PowerSeries) -> PowerSeries:
        """Evaluate at a power series argument (Laurent division allowed)."""
        return self.num.eval_series(s) / self.den.eval_series(s)


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    return RationalFunction(Poly([x]))


class DeltaOperator:
    """sum_k c_k(z) * delta^k with polynomial coefficients c_k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("zero operator")
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"DeltaOperator{list(self.coeffs)}"

    def apply(self, f):
        """Apply to a LogSeries (or PowerSeries); returns a LogSeries."""
        if isinstance(f, PowerSeries):
            f = LogSeries.from_power(f)
        acc = None
        dk = f
        for k, c in enumerate(self.coeffs):
            if k > 0:
                dk = dk.euler()
            if c.is_zero():
                continue
            term = None
            for m, cm in enumerate(c.coeffs):
                if cm == 0:
                    continue
                piece = LogSeries([cm * p.shift(m) for p in dk.parts])
                term = piece if term is None else term + piece
            acc = term if acc is None else acc + term
        return acc

    def to_dz(self):
        """Coefficients b_j of sum_j b_j(z) z^j-free (d/dz)^j form.

        Returns the list [b_0, ..., b_m] with the operator equal to
        sum_j b_j(z) (d/dz)^j, using delta^k = sum_j S(k,j) z^j (d/dz)^j.
        """
        m = self.degree
        b = [Poly([]) for _ in range(m + 1)]
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j in range(0, k + 1):
                s = stirling2(k, j)
                if s:
                    b[j] = b[j] + (c * s).shift(j)
        return b

    def to_record(self):
        return {"order": self.degree,
                "coeffs": [c.to_record() for c in self.coeffs]}


def stirling2(n, k):
    """Stirling numbers of the second kind."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    total = 0
    for j in range(k + 1):
        total += (-1) ** (k - j) * comb(k, j) * j ** n
    return total // _factorial(k)


def _factorial(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def _product_factors(s):
    """Expand prod_{k=1}^{s-1} (s*delta + k) as a dense delta-polynomial."""
    poly = [1]
    for k in range(1, s):
        nxt = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i] += a * k
            nxt[i + 1] += a * s
        poly = nxt
    return poly


def mirror_operator(s: int) -> DeltaOperator:
    """delta^{s-1} - s*z*(s delta + 1)...(s delta + s - 1)."""
    if s < 3:
        raise ValueError("mirror operators need s >= 3")
    prod = _product_factors(s)
    coeffs = [Poly([0, -s * a]) for a in prod]
    while len(coeffs) < s:
        coeffs.append(Poly([]))
    coeffs[s - 1] = coeffs[s - 1] + 1
    return DeltaOperator(coeffs)


def eighth_operator() -> DeltaOperator:
    """delta^2 - 4z(8 delta + 1)(8 delta + 3): the square root of the s=4 case."""
    # (8d+1)(8d+3) = 64 d^2 + 32 d + 3
    return DeltaOperator([Poly([0, -12]),
                          Poly([0, -128]),
                          Poly([1, -256])])


def build_operator(kind: str, s: int | None = None) -> DeltaOperator:
    """Named operators: mirror(s), eq1 = mirror(3), eq4 = mirror(4),
    eq20 = mirror(5), and the second-order 'eighth' operator."""
    kind = kind.lower()
    if kind == "mirror":
        if s is None:
            raise ValueError("mirror operator needs s")
        return mirror_operator(s)
    named = {"eq1": 3, "eq4": 4, "eq20": 5}
    if kind in named:
        return mirror_operator(named[kind])
    if kind == "eighth":
        return eighth_operator()
    raise ValueError(f"unknown operator kind {kind!r}")


def frobenius_basis(s: int, order: int):
    """Fundamental solutions f_0..f_{s-2} of the mirror operator at z=0.

    Built from the H-jet of the deformed coefficient ratio
    prod_{k<=s*l}(sH+k) / prod_{k<=l}(H+k)^s mod H^{s-1}; the jet
    component g_m gives f_j = sum_m g_m log^{j-m} z/(j-m)!.
    """
    if s < 3:
        raise ValueError("s >= 3 required")
    r = s - 1
    g = [[ZERO] * order for _ in range(r)]
    a = HJet.constant(1, r)
    g_row = a.coeffs
    for m in range(r):
        g[m][0] = g_row[m]
    for l in range(1, order):
        for k in range(s * (l - 1) + 1, s * l + 1):
            a = a * HJet.linear(k, s, r)
        inv = HJet.linear(l, 1, r).inverse()
        for _ in range(s):
            a = a * inv
        for m in range(r):
            g[m][l] = a.coeffs[m]
    gs = [PowerSeries("z", 0, g[m], order) for m in range(r)]
    basis = []
    for j in range(r):
        parts = [gs[j - k] for k in range(j + 1)]
        basis.append(LogSeries(parts))
    return basis


def g_functions(s: int, order: int):
    """The analytic components g_0..g_{s-2} of the Frobenius basis."""
    basis = frobenius_basis(s, order)
    top = basis[-1]
    return [top.part(s - 2 - m) for m in range(s - 1)]


def pfq_series(upper, lower, scale, order: int, var: str = "z") -> PowerSeries:
    """Generalized hypergeometric series sum_l (prod (a)_l / prod (b)_l) (c z)^l / l!."""
    upper = [rat(a) for a in upper]
    lower = [rat(b) for b in lower]
    scale = rat(scale)
    for b in lower:
        if b.denominator == 1 and b <= 0:
            raise ValueError("nonpositive integer lower parameter")
    cs = [ZERO] * order
    term = ONE
    for l in range(order):
        cs[l] = term
        num = ONE
        for a in upper:
            num *= a + l
        den = ONE
        for b in lower:
            den *= b + l
        term = term * num * scale / (den * (l + 1))
    return PowerSeries(var, 0, cs, order)


def symmetric_square_check(order: int) -> PowerSeries:
    """Residual of: analytic s=4 solution minus (2F1(1/8,3/8;1;256z))^2."""
    f0 = g_functions(4, order)[0]
    h = pfq_series([Q(1, 8), Q(3, 8)], [1], 256, order)
    return f0 - h * h


def second_order_normal_form(op: DeltaOperator) -> RationalFunction:
    """Normal-form potential of a second-order operator.

    Writing the operator as y'' + p y' + r y = 0 in d/dz form, returns
    Q = r - p^2/4 - p'/2, so the ratio of any two solutions t satisfies
    the Schwarzian relation {t, z} = 2Q(z).
    """
    if op.degree != 2:
        raise ValueError("second-order operator required")
    b = op.to_dz()
    lead = RationalFunction(b[2])
    p = RationalFunction(b[1]) / lead
    r = RationalFunction(b[0]) / lead
    return r - p * p * Q(1, 4) - p.deriv() * Q(1, 2)


def fourth_order_normal_form(op: DeltaOperator):
    """Reduce a fourth-order operator to y'''' + Q2 y'' + Q2' y' + Q0 y.

    Conjugates away the third-derivative term by y -> w y with
    w'/w = -a1/4; returns (Q2, Q0). The first-derivative coefficient of
    the reduced form equals dQ2/dz, which is checked here.
    """
    if op.degree != 4:
        raise ValueError("fourth-order operator required")
    b = op.to_dz()
    lead = RationalFunction(b[4])
    a1 = RationalFunction(b[3]) / lead
    a2 = RationalFunction(b[2]) / lead
    a3 = RationalFunction(b[1]) / lead
    a4 = RationalFunction(b[0]) / lead
    u = a1 * Q(-1, 4)
    u1 = u.deriv()
    u2 = u1.deriv()
    u3 = u2.deriv()
    q2 = 6 * u1 + 6 * u * u + 3 * a1 * u + a2
    q1 = (4 * u2 + 12 * u * u1 + 4 * u * u * u
          + a1 * (3 * u1 + 3 * u * u) + 2 * a2 * u + a3)
    q0 = (u3 + 4 * u * u2 + 3 * u1 * u1 + 6 * u * u * u1 + u * u * u * u
          + a1 * (u2 + 3 * u * u1 + u * u * u)
          + a2 * (u1 + u * u) + a3 * u + a4)
    if not (q1 == q2.deriv()):
        raise ArithmeticError(
            "reduction did not produce the self-adjoint-like shape")
    return q2, q0
