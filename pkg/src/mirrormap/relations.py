"""Coupled nonlinear identities linking z(q) and K(q), and the
quasi-homogeneous differential-polynomial relation search."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .linalg import nullspace
from .mirror import mirror_data
from .operators import (Poly, RationalFunction, eighth_operator,
                        fourth_order_normal_form, mirror_operator,
                        second_order_normal_form)
from .series import PowerSeries, Q, rat
from .wronskian import DiffPolynomial, schwarzian
from .yukawa import yukawa_coupling

C5 = 5 ** 5  # the natural scale of the quintic family's singular point


def rational_q() -> RationalFunction:
    """The double-pole potential of the second-order normal form:
    (5^8/4)(25 - 34(5^5 z) + 24(5^5 z)^2) / ((5^5 z)^2 (1-5^5 z)^2)."""
    num = Poly([rat(25), rat(-34 * C5), rat(24) * C5 ** 2]) * Q(5 ** 8, 4)
    den = Poly([0, 0, rat(C5) ** 2]) * (Poly([1, -C5]) * Poly([1, -C5]))
    return RationalFunction(num, den)


def rational_q_tilde() -> RationalFunction:
    """The fourth-order counterpart:
    -(5750z + 63671875z^2 + 19531250000z^3) / (1-5^5 z)^4.

    The numerator is pinned empirically: it is exactly cubic when fitted
    from the Yukawa side (higher coefficients vanish through z^7)."""
    num = Poly([0, rat(-5750), rat(-63671875), rat(-19531250000)])
    one = Poly([1, -C5])
    den = one * one * one * one
    return RationalFunction(num, den)


@lru_cache(maxsize=1)
def quintic_normal_form():
    """(Q2, Q0) of the reduced fourth-order shape; Q2 = 10 * rational_q()."""
    return fourth_order_normal_form(mirror_operator(5))


def log_yukawa_derivs(K: PowerSeries, count: int):
    """[u', u'', ...] for u = log K with ' = delta_q.

    u itself is never materialized (its constant term log K(0) is not
    rational); only the derivatives, starting from u' = K'/K, are.
    """
    out = [K.euler() / K]
    for _ in range(count - 1):
        out.append(out[-1].euler())
    return out


def b_quantities(u_derivs):
    """B2 = 2u'' - u'^2/2 and B4 = u''''/2 + u''^2/4 - u''u'^2/2 + u'^4/16."""
    u1, u2, _, u4 = u_derivs[:4]
    b2 = 2 * u2 - Q(1, 2) * u1 * u1
    b4 = (Q(1, 2) * u4 + Q(1, 4) * u2 * u2
          - Q(1, 2) * u2 * u1 * u1 + Q(1, 16) * u1 ** 4)
    return b2, b4


def a_quantities(z: PowerSeries, q2: RationalFunction, q0: RationalFunction):
    """A2 = Q2(z)z'^2 + 5{z,t} and the fourth-order companion A4,
    with ' = d/dt = delta_q acting on a series z(q) of valuation 1."""
    z1 = z.euler()
    z2 = z1.euler()
    z3 = z2.euler()
    z4 = z3.euler()
    z5 = z4.euler()
    a2 = q2.eval_series(z) * z1 * z1 + 5 * schwarzian(z)
    dq2 = q2.deriv()
    a4 = (q0.eval_series(z) * z1 ** 4
          + Q(3, 2) * dq2.eval_series(z) * z1 * z1 * z2
          - Q(3, 4) * q2.eval_series(z) * z2 * z2
          + Q(3, 2) * q2.eval_series(z) * z1 * z3
          # the (z''/z')^4 constant is pinned empirically as -135/16: it
          # is the unique value making A4 agree with B4(log K) on the
          # actual mirror map (checked to high order, nullity-one fit)
          - Q(135, 16) * (z2 / z1) ** 4
          + Q(75, 4) * z2 * z2 * z3 / z1 ** 3
          - Q(15, 4) * (z3 / z1) ** 2
          - Q(15, 2) * z2 * z4 / (z1 * z1)
          + Q(3, 2) * z5 / z1)
    return a2, a4


@dataclass(frozen=True)
class ABQuantities:
    """The dual second/fourth-order invariants of one truncation order:
    the A's from the mirror map, the B's from the log-Yukawa coupling."""
    order: int
    A2: PowerSeries
    A4: PowerSeries
    B2: PowerSeries
    B4: PowerSeries


def ab_quantities(order: int) -> ABQuantities:
    slack = order + 6
    z = mirror_data(5, slack).z_of_q
    K = yukawa_coupling(slack)
    q2, q0 = quintic_normal_form()
    a2, a4 = a_quantities(z, q2, q0)
    b2, b4 = b_quantities(log_yukawa_derivs(K, 4))
    return ABQuantities(order=order,
                        A2=a2.truncate(order), A4=a4.truncate(order),
                        B2=b2.truncate(order), B4=b4.truncate(order))


def verify_duality(order: int):
    """Residuals A2 - B2 and A4 - B4 on the actual mirror map / Yukawa pair;
    both vanish, which is the mirror-map side of the coupled identities."""
    ab = ab_quantities(order)
    return ab.A2 - ab.B2, ab.A4 - ab.B4


def verify_eq_schwarzian(s: int, order: int) -> PowerSeries:
    """Residual of 2Q(z)(dz/dt)^2 + {z,t} = 0 in the modular cases.

    For s = 3 the operator is already second order; for s = 4 its
    third-order equation is the symmetric square of a second-order one,
    whose normal form supplies Q (the ratio t only rescales, which the
    Schwarzian equation tolerates).
    """
    if s == 3:
        op = mirror_operator(3)
    elif s == 4:
        op = eighth_operator()
    else:
        raise ValueError("the Schwarzian case needs s in {3, 4}")
    q_rf = second_order_normal_form(op)
    z = mirror_data(s, order + 6).z_of_q
    z1 = z.euler()
    res = 2 * q_rf.eval_series(z) * z1 * z1 + schwarzian(z)
    return res.truncate(order)


def verify_eq_second(order: int) -> PowerSeries:
    """Residual of 2Q(z)(dz/dt)^2 + {z,t} = (2/5)u'' - (1/10)u'^2,
    u = log K; the Laurent principal parts on the left cancel exactly."""
    slack = order + 6
    z = mirror_data(5, slack).z_of_q
    K = yukawa_coupling(slack)
    u1, u2 = log_yukawa_derivs(K, 2)
    z1 = z.euler()
    lhs = 2 * rational_q().eval_series(z) * z1 * z1 + schwarzian(z)
    rhs = Q(2, 5) * u2 - Q(1, 10) * u1 * u1
    return (lhs - rhs).truncate(order)


def verify_eq_fourth(order: int) -> PowerSeries:
    """Residual of Qtilde(z)(z'/z)^4 =
    (175K'^4 - 280KK'^2K'' + 49K^2K''^2 + 70K^2K'K''' - 10K^3K'''')/K^4."""
    slack = order + 6
    z = mirror_data(5, slack).z_of_q
    K = yukawa_coupling(slack)
    k1 = K.euler()
    k2 = k1.euler()
    k3 = k2.euler()
    k4 = k3.euler()
    lhs = rational_q_tilde().eval_series(z) * (z.euler() / z) ** 4
    num = (175 * k1 ** 4 - 280 * K * k1 * k1 * k2
           + 49 * K * K * k2 * k2 + 70 * K * K * k1 * k3
           - 10 * K ** 3 * k4)
    rhs = num / K ** 4
    return (lhs - rhs).truncate(order)


# ---------------------------------------------------------------------------
# relation search

P2_SYMBOLS = ("B2", "B2'", "B2''", "B2'''", "B2''''", "B2'''''",
              "B4", "B4'", "B4''", "B4'''")
P1_SYMBOLS = ("A2", "A2'", "A2''", "A2'''", "A2''''", "A2'''''",
              "A4", "A4'", "A4''", "A4'''")
SEARCH_WEIGHTS = (2, 3, 4, 5, 6, 7, 4, 5, 6, 7)


@dataclass
class RelationSearchResult:
    mode: str
    found: bool
    weight: int | None
    polynomial: DiffPolynomial | None
    stratum_size: int | None
    degree_set: tuple | None
    verified_fresh: bool
    verified_dual: bool
    weights_scanned: tuple
    seed: int
    elapsed: float

    def summary(self):
        out = {
            "mode": self.mode,
            "found": self.found,
            "weights_scanned": list(self.weights_scanned),
            "seed": self.seed,
            "elapsed_seconds": round(self.elapsed, 3),
        }
        if self.found:
            out.update({
                "quasi_weight": self.weight,
                "stratum_size": self.stratum_size,
                "monomial_degrees": list(self.degree_set),
                "term_count": len(self.polynomial.terms),
                "verified_fresh": self.verified_fresh,
                "verified_dual": self.verified_dual,
                "relation": self.polynomial.to_records(),
            })
        return out


def _monomials(weights, target):
    """All exponent vectors with sum(w_i e_i) == target, excluding 1."""
    out = []

    def rec(i, remaining, exps):
        if i == len(weights):
            if remaining == 0 and any(exps):
                out.append(tuple(exps))
            return
        w = weights[i]
        for e in range(remaining // w + 1):
            exps[i] = e
            rec(i + 1, remaining - e * w, exps)
        exps[i] = 0

    rec(0, target, [0] * len(weights))
    return out


def _random_u(rng: random.Random, order: int) -> PowerSeries:
    coeffs = [rat(rng.randint(-9, 9)) for _ in range(order - 1)]
    return PowerSeries("q", 1, coeffs, order)


def _random_z(rng: random.Random, order: int) -> PowerSeries:
    coeffs = [rat(rng.choice([c for c in range(-9, 10) if c]))]
    coeffs += [rat(rng.randint(-9, 9)) for _ in range(order - 2)]
    return PowerSeries("q", 1, coeffs, order)


def _symbol_values(mode: str, fn: PowerSeries):
    """The ten series the symbols stand for, on one concrete input."""
    if mode == "p2":
        u1 = fn.euler()
        u_derivs = [u1]
        for _ in range(3):
            u_derivs.append(u_derivs[-1].euler())
        base2, base4 = b_quantities(u_derivs)
    elif mode == "p1":
        q2, q0 = quintic_normal_form()
        base2, base4 = a_quantities(fn, q2, q0)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    values = [base2]
    for _ in range(5):
        values.append(values[-1].euler())
    values.append(base4)
    for _ in range(3):
        values.append(values[-1].euler())
    return values


def _stack_rows(monos, value_sets):
    rows = []
    for values in value_sets:
        evals = []
        lo, hi = None, None
        for exps in monos:
            acc = PowerSeries.monomial("q", 0, 1)
            for v, e in zip(values, exps):
                for _ in range(e):
                    acc = acc * v
            evals.append(acc)
            lo = acc.val if lo is None else min(lo, acc.val)
            hi = acc.order if hi is None else min(hi, acc.order)
        for n in range(lo, hi):
            rows.append([s.coeff(n) if s.val <= n < s.order else rat(0)
                         for s in evals])
    return rows


def _integerize(vec):
    mult = 1
    for x in vec:
        d = int(x.denominator)
        mult = mult // gcd(mult, d) * d
    ints = [int(x.numerator) * (mult // int(x.denominator)) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return [rat(v // g) for v in ints] if g else [rat(v) for v in ints]


def relation_search(mode: str = "p2", weight_bound: int = 12,
                    order: int = 40, trials: int = 2,
                    seed: int = 0) -> RelationSearchResult:
    """Scan quasi-weight strata for a differential polynomial in the ten
    symbols that vanishes identically on its native side (arbitrary u for
    mode p2, arbitrary z for mode p1), then certify it on fresh random
    inputs and on the actual mirror-map data of the dual side.

    Deterministic for a fixed seed; the candidate matrix is extended with
    extra random inputs until it has comfortably more rows than columns.
    """
    start = time.time()
    rng = random.Random(seed)
    symbols = P2_SYMBOLS if mode == "p2" else P1_SYMBOLS
    make_input = _random_u if mode == "p2" else _random_z
    value_sets = [_symbol_values(mode, make_input(rng, order))
                  for _ in range(trials)]
    scanned = []
    for weight in range(2, weight_bound + 1):
        monos = _monomials(SEARCH_WEIGHTS, weight)
        if not monos:
            continue
        scanned.append(weight)
        while len(value_sets) * (order - 1) < len(monos) + 10:
            value_sets.append(_symbol_values(mode, make_input(rng, order)))
        rows = _stack_rows(monos, value_sets)
        basis = nullspace(rows, len(monos))
        if not basis:
            continue
        coeffs = _integerize(basis[0])
        poly = DiffPolynomial(symbols, SEARCH_WEIGHTS,
                              dict(zip(monos, coeffs)))
        fresh = all(
            poly.evaluate(_symbol_values(mode, make_input(rng, order)))
            .is_zero()
            for _ in range(2))
        dual = _verify_dual(mode, poly, max(16, order // 2))
        return RelationSearchResult(
            mode=mode, found=True, weight=weight, polynomial=poly,
            stratum_size=len(monos),
            degree_set=tuple(poly.degree_set()),
            verified_fresh=fresh, verified_dual=dual,
            weights_scanned=tuple(scanned), seed=seed,
            elapsed=time.time() - start)
    return RelationSearchResult(
        mode=mode, found=False, weight=None, polynomial=None,
        stratum_size=None, degree_set=None, verified_fresh=False,
        verified_dual=False, weights_scanned=tuple(scanned), seed=seed,
        elapsed=time.time() - start)


def _verify_dual(mode: str, poly: DiffPolynomial, order: int) -> bool:
    """A p2 relation must also kill the A-quantities of the actual mirror
    map (and a p1 relation the B-quantities of the actual log K): that is
    the coupled-equation content, not a formal consequence of the search."""
    slack = order + 6
    if mode == "p2":
        z = mirror_data(5, slack).z_of_q
        q2, q0 = quintic_normal_form()
        base2, base4 = a_quantities(z, q2, q0)
    else:
        K = yukawa_coupling(slack)
        base2, base4 = b_quantities(log_yukawa_derivs(K, 4))
    values = [base2]
    for _ in range(5):
        values.append(values[-1].euler())
    values.append(base4)
    for _ in range(3):
        values.append(values[-1].euler())
    res = poly.evaluate([v.truncate(order) for v in values])
    return res.is_zero()
