"""Yukawa coupling, instanton numbers, prepotential and t-functions (s=5)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .mirror import mirror_data
from .series import BIG_ORDER, LogSeries, PowerSeries, Q, ZERO, rat


class TPolyQSeries:
    """Polynomial in t with q-series coefficients, under t = log q.

    d/dt therefore acts as delta_q on each coefficient plus the ordinary
    polynomial derivative in t.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            terms = [PowerSeries.zero("q")]
        while len(terms) > 1 and terms[-1].is_zero() \
                and terms[-1].order >= BIG_ORDER:
            terms.pop()
        self.terms = tuple(terms)

    @classmethod
    def from_q(cls, p: PowerSeries):
        return cls([p])

    @classmethod
    def t_power(cls, k: int, coefficient=1):
        terms = [PowerSeries.zero("q") for _ in range(k)]
        terms.append(PowerSeries.monomial("q", 0, coefficient))
        return cls(terms)

    @property
    def t_degree(self):
        return len(self.terms) - 1

    @property
    def order(self):
        return min(p.order for p in self.terms)

    def term(self, k):
        if k < len(self.terms):
            return self.terms[k]
        return PowerSeries.zero("q")

    def is_zero(self):
        return all(p.is_zero() for p in self.terms)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            other = TPolyQSeries.from_q(other)
        if not isinstance(other, TPolyQSeries):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return "TPolyQSeries[" + ", ".join(repr(p) for p in self.terms) + "]"

    def __add__(self, other):
        if isinstance(other, (int, Q, PowerSeries)):
            other = TPolyQSeries.from_q(
                other if isinstance(other, PowerSeries)
                else PowerSeries.monomial("q", 0, other))
        d = max(len(self.terms), len(other.terms))
        return TPolyQSeries([self.term(k) + other.term(k) for k in range(d)])

    __radd__ = __add__

    def __neg__(self):
        return TPolyQSeries([-p for p in self.terms])

    def __sub__(self, other):
        if isinstance(other, (PowerSeries, int, Q)):
            return self + (-TPolyQSeries.from_q(
                other if isinstance(other, PowerSeries)
                else PowerSeries.monomial("q", 0, other)))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Q, PowerSeries)):
            return TPolyQSeries([p * other for p in self.terms])
        if not isinstance(other, TPolyQSeries):
            return NotImplemented
        d = self.t_degree + other.t_degree
        acc = [PowerSeries.zero("q") for _ in range(d + 1)]
        for a, pa in enumerate(self.terms):
            for b, pb in enumerate(other.terms):
                acc[a + b] = acc[a + b] + pa * pb
        return TPolyQSeries(acc)

    __rmul__ = __mul__

    def dt(self):
        """d/dt = delta_q on coefficients + polynomial derivative in t."""
        d = len(self.terms)
        return TPolyQSeries(
            [self.term(k).euler() + (k + 1) * self.term(k + 1)
             for k in range(d)])

    def truncate(self, order):
        return TPolyQSeries([p.truncate(order) for p in self.terms])


@dataclass(frozen=True)
class InstantonTable:
    """Lambert-inverted instanton numbers n_l and the sums N_l = [q^l] F."""
    n: tuple
    N: tuple


def yukawa_from_definition(order: int) -> PowerSeries:
    """K(q) = 5 (delta_q z/z)^3 / ((1 - 5^5 z(q)) f0~^2); K(0) = 5."""
    md = mirror_data(5, order + 2)
    z = md.z_of_q
    dz_over_z = z.euler() / z
    f0t = md.f0_tilde
    k = 5 * dz_over_z ** 3 * ((1 - 5 ** 5 * z) * f0t * f0t).inverse()
    return k.truncate(order)


@lru_cache(maxsize=8)
def yukawa_coupling(order: int) -> PowerSeries:
    return yukawa_from_definition(order)


def verify_yukawa_identity(order: int) -> PowerSeries:
    """Residual of f0~^2 = (delta_q z/z)^3 / (1 - 5^5 z) * 5/K."""
    md = mirror_data(5, order + 2)
    K = yukawa_coupling(order + 2)
    z = md.z_of_q
    rhs = (z.euler() / z) ** 3 * (1 - 5 ** 5 * z).inverse() * 5 * K.inverse()
    return (md.f0_tilde * md.f0_tilde - rhs).truncate(order)


def instanton_numbers(K: PowerSeries, count: int) -> InstantonTable:
    """Divisor-sum inversion of K = 5 + sum n_l l^3 q^l/(1-q^l).

    A non-integral n_m signals a corrupted K and raises.
    """
    if K.coeff(0) != 5:
        raise ValueError("Yukawa coupling must have constant term 5")
    n = [ZERO] * (count + 1)
    for m in range(1, count + 1):
        acc = K.coeff(m)
        for l in range(1, m):
            if m % l == 0:
                acc -= n[l] * l ** 3
        nm = acc / m ** 3
        if nm.denominator != 1:
            raise ArithmeticError(f"non-integral instanton number at l={m}: {nm}")
        n[m] = nm
    big_n = [ZERO] * (count + 1)
    for m in range(1, count + 1):
        s = ZERO
        for k in range(1, m + 1):
            if m % k == 0:
                s += n[m // k] / rat(k) ** 3
        big_n[m] = s
    return InstantonTable(n=tuple(n[1:]), N=tuple(big_n[1:]))


def lambert_expand(n, order: int, constant=5) -> PowerSeries:
    """Re-expand constant + sum n_l l^3 q^l/(1-q^l) through the order."""
    cs = [rat(constant)] + [ZERO] * (order - 1)
    for l in range(1, order):
        nl = n[l - 1] if l - 1 < len(n) else ZERO
        if nl == 0:
            continue
        for m in range(l, order, l):
            cs[m] += nl * l ** 3
    return PowerSeries("q", 0, cs, order)


def prepotential(order: int) -> TPolyQSeries:
    """F(t) = (5/6) t^3 + sum N_l q^l, with d^3F/dt^3 = K(q)."""
    K = yukawa_coupling(order)
    table = instanton_numbers(K, order - 1)
    qpart = PowerSeries("q", 1, table.N, order)
    return TPolyQSeries.t_power(3, Q(5, 6)) + qpart


def t_functions(order: int):
    """t_0 = 1, t_1 = t, t_2 = (1/5) F', t_3 = (1/5) t F' - (2/5) F."""
    F = prepotential(order)
    Fp = F.dt()
    t = TPolyQSeries.t_power(1)
    t0 = TPolyQSeries.from_q(PowerSeries.monomial("q", 0, 1, order))
    t1 = t + PowerSeries.zero("q", order)
    t2 = Q(1, 5) * Fp
    t3 = Q(1, 5) * (t * Fp) - Q(2, 5) * F
    return [t0, t1, t2, t3]


def verify_pandharipande(order: int):
    """Residuals of d^2/dt^2 (1/K) d^2/dt^2 t_j for j = 0..3."""
    K = yukawa_coupling(order)
    kinv = K.inverse()
    out = []
    for tj in t_functions(order):
        inner = tj.dt().dt() * kinv
        out.append(inner.dt().dt())
    return out


def pullback_logseries(ls: LogSeries, zq: PowerSeries, order: int) -> TPolyQSeries:
    """Carry a log-series in z through z = z(q), log z = t - g1/g0(z(q)).

    Used to check that f_j/f_0 really equals the t-functions after the
    change of variable t = log q.
    """
    shift = (zq / PowerSeries.identity("q", order + 1)).log()
    result = TPolyQSeries.from_q(PowerSeries.zero("q", order))
    for k in range(ls.log_degree + 1):
        pk = ls.part(k).compose(zq)
        if pk.is_zero() and pk.order >= BIG_ORDER:
            continue
        # (t + shift)^k / k! as a polynomial in t
        binom = TPolyQSeries.from_q(PowerSeries.monomial("q", 0, 1, order))
        for i in range(k):
            binom = binom * (TPolyQSeries.t_power(1) + shift)
        result = result + Q(1, math.factorial(k)) * binom * pk
    return result


def eisenstein_analog(order: int):
    """K0 = 1 + 240 sum sigma_3(n) q^n and F0 = t^3/6 + 240 sum sum q^{kl}/k^3."""
    K0 = lambert_expand([rat(240)] * order, order, constant=1)
    big_n = [ZERO] * order
    for m in range(1, order):
        s = ZERO
        for k in range(1, m + 1):
            if m % k == 0:
                s += Q(240) / rat(k) ** 3
        big_n[m] = s
    F0 = TPolyQSeries.t_power(3, Q(1, 6)) + PowerSeries("q", 0, big_n, order)
    return K0, F0


def evaluate_F0_at(t_value: float, order: int = 12) -> float:
    """Float evaluation of the truncated F0 at q = e^t; needs e^t < 1.

    The q-coefficients are bounded by 240*zeta(3) < 289, so the dropped
    tail is below 289 * q^order / (1-q); at t = -2pi and order 12 that is
    under 1e-30, far below double rounding error.
    """
    qv = math.exp(t_value)
    if not qv < 1:
        raise ValueError("q = e^t must lie inside the unit disc")
    _, F0 = eisenstein_analog(order)
    total = 0.0
    for k, term in enumerate(F0.terms):
        acc = 0.0
        for n, c in term.known_coeffs():
            acc += float(c.numerator) / float(c.denominator) * qv ** n
        total += acc * t_value ** k
    return total
