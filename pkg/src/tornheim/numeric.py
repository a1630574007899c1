"""High-precision numeric summation engines.

Two independent substrates:

q-side (q > 1).  With [n] = (q^n - 1)/(q - 1), every series handled here has
terms bounded by K * q^(-n) where K collects the exponent-dependent constants
(1/[n]^x <= q^x q^(-nx) for x >= 0 and <= (q-1)^x q^(-nx) for x < 0), so a
truncation point with a proven geometric tail bound is computed up front:

    q_zeta1(s, sign, q)            sum_n sign^n q^((s-1)n) / [n]^s
    q_zeta2(s1, g1, s2, g2, q)     sum_{m>n} g1^m g2^n q^((s1-1)m+(s2-1)n)
                                       / ([m]^s1 [n]^s2), O(N) prefix scheme
    phi_q(s, sign, q)              sum_n (n-1) sign^n q^((s-1)n) / [n]^s
    tornheim_q(r, s, t, sg, tg, q) sum_{u,v} sg^u tg^v q^((r+t-1)u+(s+t-1)v)
                                       / ([u]^r [v]^s [u+v]^t)

classical side.  Euler-Maclaurin summation for plain tails and Boole
summation (Euler polynomial values E_k(0)) for alternating tails, both with
log-factor variants, give

    classical_zeta(s, sign)        zeta(s; sign), EM / Boole with remainder
                                   bounded by the first omitted term
    classical_double_euler(a, b)   zeta(s1, s2; g1, g2) = sum_{m>n>=1} ...,
                                   prefix sum to N plus tail corrections from
                                   the asymptotic expansion of the inner
                                   prefix (harmonic, EM, or Boole form)

All mpf results are computed at digits + 15 working precision.  A float64
vectorized kernel backs tornheim_q when the requested tail goal is coarse
(>= 1e-10), where the arbitrary-precision loop would be needlessly slow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from mpmath import mp, mpf

from .errors import DivergenceError, DomainError, PrecisionError
from .exact import SignedIndex, bernoulli

__all__ = [
    "PrecisionConfig",
    "QParam",
    "SumInfo",
    "q_int",
    "q_zeta1",
    "q_zeta1_info",
    "q_zeta2",
    "q_zeta2_info",
    "phi_q",
    "phi_q_info",
    "tornheim_q",
    "tornheim_q_info",
    "classical_zeta",
    "classical_double_euler",
    "tornheim_classical",
    "tornheim_classical_naive",
    "evaluate_reduction",
]

FLOAT64_GOAL_CUTOFF = 1e-10  # coarser goals than this use the vectorized kernel


@dataclass(frozen=True)
class PrecisionConfig:
    """Requested precision: output digits, term budget, and tail goal.

    tail_goal is the absolute truncation-error target; None means
    10^-(digits+5).  Working precision is digits + 15.
    """
    digits: int = 30
    max_terms: int = 2_000_000
    tail_goal: float | None = None

    def __post_init__(self) -> None:
        if self.digits < 10:
            raise DomainError(f"PrecisionConfig: digits must be >= 10, got {self.digits}")
        if self.max_terms < 100:
            raise DomainError(f"PrecisionConfig: max_terms must be >= 100, got {self.max_terms}")
        if self.tail_goal is not None and not self.tail_goal > 0:
            raise DomainError("PrecisionConfig: tail_goal must be positive")

    @property
    def working_dps(self) -> int:
        return self.digits + 15

    def goal(self) -> mpf:
        if self.tail_goal is not None:
            return mpf(self.tail_goal)
        return mpf(10) ** (-(self.digits + 5))

    def goal_float(self) -> float:
        return self.tail_goal if self.tail_goal is not None else 10.0 ** (-(self.digits + 5))


@dataclass(frozen=True)
class QParam:
    """The deformation parameter; only q > 1 is admitted."""
    value: Fraction | int | float

    def __post_init__(self) -> None:
        if not self.value > 1:
            raise DomainError(f"QParam: q must be > 1, got {self.value}")

    def to_mpf(self) -> mpf:
        if isinstance(self.value, Fraction):
            return mpf(self.value.numerator) / self.value.denominator
        return mpf(self.value)

    def to_float(self) -> float:
        return float(self.value)

    def squared(self) -> "QParam":
        return QParam(self.value * self.value)

    def __str__(self) -> str:
        return str(self.value)


class SumInfo(NamedTuple):
    """A summation result with its proven tail bound and term count."""
    value: mpf
    tail_bound: mpf
    terms: int


def _as_q(q) -> QParam:
    if isinstance(q, QParam):
        return q
    if isinstance(q, str):
        return QParam(Fraction(q))
    return QParam(q)


def _as_prec(prec) -> PrecisionConfig:
    return prec if prec is not None else PrecisionConfig()


def _xm(x) -> mpf:
    """Exact-as-possible mpf conversion for int / Fraction / float exponents."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _pow(base: mpf, expo) -> mpf:
    if isinstance(expo, int) or (isinstance(expo, Fraction) and expo.denominator == 1):
        return base ** int(expo)
    return mp.power(base, _xm(expo))


def _sign_ok(sign: int) -> int:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    return sign


# ----------------------------------------------------------------------
# q-side
# ----------------------------------------------------------------------

def q_int(n: int, q, prec: PrecisionConfig | None = None) -> mpf:
    """The q-integer [n] = (q^n - 1)/(q - 1)."""
    if n < 0:
        raise DomainError(f"q_int: n must be >= 0, got {n}")
    qp = _as_q(q)
    prec = _as_prec(prec)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        return (qm ** n - 1) / (qm - 1)


def _kbound(x, qm: mpf) -> mpf:
    """K(x) with 1/[n]^x <= K(x) q^(-n x) for all n >= 1."""
    xf = _xm(x)
    if xf >= 0:
        return mp.power(qm, xf)
    return mp.power(qm - 1, xf)


def _geometric_n(c: mpf, qm: mpf, goal: mpf) -> int:
    """Smallest N >= 1 with c * q^(-N) <= goal."""
    if c <= goal:
        return 1
    return max(1, int(mp.ceil(mp.log(c / goal) / mp.log(qm))))


def _budget(n_terms: int, prec: PrecisionConfig, what: str) -> None:
    if n_terms > prec.max_terms:
        raise PrecisionError(
            f"{what}: tail goal needs {n_terms} terms, exceeding max_terms={prec.max_terms}"
        )


def q_zeta1_info(s, sign: int = 1, q=None, prec: PrecisionConfig | None = None) -> SumInfo:
    """zeta_q[s; sign] = sum_{n>=1} sign^n q^((s-1)n) / [n]^s, with tail bound."""
    _sign_ok(sign)
    qp = _as_q(q)
    prec = _as_prec(prec)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        goal = prec.goal()
        k = _kbound(s, qm)
        n_terms = _geometric_n(k / (qm - 1), qm, goal)
        _budget(n_terms, prec, "q_zeta1")
        sm1 = _xm(s) - 1
        num_step = mp.power(qm, sm1)  # q^(s-1)
        num = mpf(1)
        qpow = mpf(1)  # q^n accumulator for [n]
        total = mpf(0)
        sgn = 1
        for n in range(1, n_terms + 1):
            num *= num_step
            qpow *= qm
            sgn *= sign
            qint = (qpow - 1) / (qm - 1)
            total += sgn * num / _pow(qint, s)
        return SumInfo(total, k / (qm - 1) * qm ** (-n_terms), n_terms)


def q_zeta1(s, sign: int = 1, q=None, prec: PrecisionConfig | None = None) -> mpf:
    return q_zeta1_info(s, sign, q, prec).value


def q_zeta2_info(
    s1, sign1: int, s2, sign2: int, q=None, prec: PrecisionConfig | None = None
) -> SumInfo:
    """zeta_q[s1, s2; sign1, sign2] = sum_{m>n>=1} of the depth-2 q-series.

    Evaluated as an O(N) prefix scheme: the inner sum over n < m is a running
    prefix updated once per m.
    """
    _sign_ok(sign1), _sign_ok(sign2)
    qp = _as_q(q)
    prec = _as_prec(prec)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        goal = prec.goal()
        k = _kbound(s1, qm) * _kbound(s2, qm)
        n_terms = _geometric_n(k / (qm - 1) ** 2, qm, goal)
        _budget(n_terms, prec, "q_zeta2")
        step1 = mp.power(qm, _xm(s1) - 1)
        step2 = mp.power(qm, _xm(s2) - 1)
        num1 = mpf(1)
        num2 = mpf(1)
        qpow = mpf(1)
        prefix = mpf(0)
        total = mpf(0)
        sg1 = 1
        sg2 = 1
        for m in range(1, n_terms + 1):
            num1 *= step1
            num2 *= step2
            qpow *= qm
            sg1 *= sign1
            sg2 *= sign2
            qint = (qpow - 1) / (qm - 1)
            if m >= 2:
                total += sg1 * num1 / _pow(qint, s1) * prefix
            prefix += sg2 * num2 / _pow(qint, s2)
        return SumInfo(total, k / (qm - 1) ** 2 * qm ** (-n_terms), n_terms)


def q_zeta2(s1, sign1: int, s2, sign2: int, q=None, prec: PrecisionConfig | None = None) -> mpf:
    return q_zeta2_info(s1, sign1, s2, sign2, q, prec).value


def _linear_geometric_tail(k: mpf, x: mpf, n: int) -> mpf:
    """k * sum_{m>n} m x^m = k * x^(n+1) ((n+1) - n x) / (1-x)^2 for 0<x<1."""
    return k * x ** (n + 1) * ((n + 1) - n * x) / (1 - x) ** 2


def phi_q_info(s, sign: int = 1, q=None, prec: PrecisionConfig | None = None) -> SumInfo:
    """phi[s; sign] = sum_{n>=1} (n-1) sign^n q^((s-1)n) / [n]^s, with bound."""
    _sign_ok(sign)
    qp = _as_q(q)
    prec = _as_prec(prec)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        goal = prec.goal()
        k = _kbound(s, qm)
        x = 1 / qm
        n_terms = _geometric_n(k / (qm - 1), qm, goal)  # ignores the linear factor
        while _linear_geometric_tail(k, x, n_terms) > goal:
            n_terms += max(1, n_terms // 8)
            _budget(n_terms, prec, "phi_q")
        _budget(n_terms, prec, "phi_q")
        step = mp.power(qm, _xm(s) - 1)
        num = mpf(1)
        qpow = mpf(1)
        total = mpf(0)
        sgn = 1
        for n in range(1, n_terms + 1):
            num *= step
            qpow *= qm
            sgn *= sign
            if n == 1:
                continue  # (n-1) factor vanishes
            qint = (qpow - 1) / (qm - 1)
            total += (n - 1) * sgn * num / _pow(qint, s)
        return SumInfo(total, _linear_geometric_tail(k, x, n_terms), n_terms)


def phi_q(s, sign: int = 1, q=None, prec: PrecisionConfig | None = None) -> mpf:
    return phi_q_info(s, sign, q, prec).value


def _orient(r, s, sigma, tau):
    """Canonical orientation: swapping (r, sigma) <-> (s, tau) together with
    u <-> v is a term-level bijection, so both orders denote the same sum.
    Sorting the slot pair makes the swapped call run the identical
    computation, hence return the identical float."""
    if (float(_xm(s)), tau) < (float(_xm(r)), sigma):
        return s, r, tau, sigma
    return r, s, sigma, tau


def tornheim_q_info(
    r, s, t, sigma: int = 1, tau: int = 1, q=None,
    prec: PrecisionConfig | None = None, window: str = "square",
) -> SumInfo:
    """T[r,s,t; sigma,tau] = sum_{u,v>=1} sigma^u tau^v q^((r+t-1)u + (s+t-1)v)
    / ([u]^r [v]^s [u+v]^t), with a proven geometric tail bound.

    window='square' truncates to u, v <= N; 'triangle' to u + v <= W.
    """
    _sign_ok(sigma), _sign_ok(tau)
    if window not in ("square", "triangle"):
        raise DomainError(f"tornheim_q: unknown window {window!r}")
    qp = _as_q(q)
    prec = _as_prec(prec)
    r, s, sigma, tau = _orient(r, s, sigma, tau)
    if prec.goal_float() >= FLOAT64_GOAL_CUTOFF:
        return _tornheim_q_float64(r, s, t, sigma, tau, qp, prec, window)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        goal = prec.goal()
        k = _kbound(r, qm) * _kbound(s, qm) * _kbound(t, qm)
        if window == "square":
            n = _geometric_n(2 * k / (qm - 1) ** 2, qm, goal)
            _budget(n * n, prec, "tornheim_q")
            bound = 2 * k / (qm - 1) ** 2 * qm ** (-n)
            umax, wmax, count = n, 2 * n, n * n
        else:
            x = 1 / qm
            n = _geometric_n(2 * k / (qm - 1) ** 2, qm, goal)
            while _linear_geometric_tail(k, x, n) > goal:
                n += max(1, n // 8)
                _budget(n * (n - 1) // 2, prec, "tornheim_q")
            _budget(n * (n - 1) // 2, prec, "tornheim_q")
            bound = _linear_geometric_tail(k, x, n)
            umax, wmax, count = n - 1, n, n * (n - 1) // 2
        # a_u = sigma^u q^((r+t-1)u) / [u]^r ; b_v likewise with (s, tau);
        # the diagonal sum over u+v = w is weighted by 1/[w]^t.
        qints: list[mpf] = [mpf(0)] * (wmax + 1)
        qpow = mpf(1)
        for i in range(1, wmax + 1):
            qpow *= qm
            qints[i] = (qpow - 1) / (qm - 1)
        a = [mpf(0)] * (umax + 1)
        b = [mpf(0)] * (umax + 1)
        step_a = mp.power(qm, _xm(r) + _xm(t) - 1)
        step_b = mp.power(qm, _xm(s) + _xm(t) - 1)
        na = mpf(1)
        nb = mpf(1)
        sga = 1
        sgb = 1
        for u in range(1, umax + 1):
            na *= step_a
            nb *= step_b
            sga *= sigma
            sgb *= tau
            a[u] = sga * na / _pow(qints[u], r)
            b[u] = sgb * nb / _pow(qints[u], s)
        total = mpf(0)
        for w in range(2, wmax + 1):
            lo = max(1, w - umax)
            hi = min(umax, w - 1)
            diag = mpf(0)
            for u in range(lo, hi + 1):
                diag += a[u] * b[w - u]
            total += diag / _pow(qints[w], t)
        return SumInfo(total, bound, count)


def _tornheim_q_float64(r, s, t, sigma, tau, qp: QParam, prec: PrecisionConfig, window: str) -> SumInfo:
    """Vectorized float64 kernel: same windows, coarse tail goals only."""
    qf = qp.to_float()
    lnq = math.log(qf)
    goal = prec.goal_float()
    rf, sf, tf = float(_xm(r)), float(_xm(s)), float(_xm(t))
    kb = lambda x: qf ** x if x >= 0 else (qf - 1) ** x
    k = kb(rf) * kb(sf) * kb(tf)
    x = 1.0 / qf
    if window == "square":
        n = max(1, math.ceil(math.log(2 * k / (qf - 1) ** 2 / goal) / lnq))
        _budget(n * n, prec, "tornheim_q")
        bound = 2 * k / (qf - 1) ** 2 * qf ** (-n)
        umax, wmax, count = n, 2 * n, n * n
    else:
        n = max(2, math.ceil(math.log(2 * k / (qf - 1) ** 2 / goal) / lnq))
        while k * x ** (n + 1) * ((n + 1) - n * x) / (1 - x) ** 2 > goal:
            n += max(1, n // 8)
            _budget(n * (n - 1) // 2, prec, "tornheim_q")
        _budget(n * (n - 1) // 2, prec, "tornheim_q")
        bound = k * x ** (n + 1) * ((n + 1) - n * x) / (1 - x) ** 2
        umax, wmax, count = n - 1, n, n * (n - 1) // 2
    # Rescaled split: a_u = q^(ru)/[u]^r and b_v = q^(sv)/[v]^s stay O(1),
    # while the shifted factor q^((t-1)(u+v)) joins the diagonal weight,
    # keeping the fft inputs balanced (raw arrays can grow like q^((t-1)u),
    # which would sink small convolution bins in rounding noise).
    u = np.arange(1, umax + 1, dtype=np.float64)
    log_qint_u = np.log(np.expm1(u * lnq)) - math.log(qf - 1)
    a = np.exp(rf * (u * lnq - log_qint_u))
    b = np.exp(sf * (u * lnq - log_qint_u))
    if sigma == -1:
        a[::2] = -a[::2]  # odd u get the minus sign (index 0 is u=1)
    if tau == -1:
        b[::2] = -b[::2]
    m = 2 * umax
    conv = np.fft.irfft(np.fft.rfft(a, m) * np.fft.rfft(b, m), m)[: 2 * umax - 1]
    # conv[i] collects the diagonal u + v = i + 2
    wvals = np.arange(2, 2 * umax + 1, dtype=np.float64)
    log_qint_w = np.log(np.expm1(wvals * lnq)) - math.log(qf - 1)
    cw = np.exp((tf - 1) * wvals * lnq - tf * log_qint_w)
    keep = wvals <= wmax
    value = float(np.sum(conv[keep] * cw[keep]))
    with mp.workdps(prec.working_dps):
        return SumInfo(mpf(value), mpf(bound), count)


def tornheim_q(
    r, s, t, sigma: int = 1, tau: int = 1, q=None,
    prec: PrecisionConfig | None = None, window: str = "square",
) -> mpf:
    return tornheim_q_info(r, s, t, sigma, tau, q, prec, window).value


# ----------------------------------------------------------------------
# classical side: Euler-Maclaurin / Boole tail machinery
# ----------------------------------------------------------------------

class _TailDiverged(Exception):
    """Asymptotic tail series failed to reach the target at this N."""


@lru_cache(maxsize=None)
def _euler_at_zero(k: int) -> Fraction:
    """Euler polynomial value E_k(0): 1 for k=0, else -2(2^(k+1)-1)B_(k+1)/(k+1)."""
    if k == 0:
        return Fraction(1)
    return -Fraction(2) * (2 ** (k + 1) - 1) * bernoulli(k + 1) / (k + 1)


def _frac_mpf(f: Fraction) -> mpf:
    return mpf(f.numerator) / f.denominator


class _LogDeriv:
    """Derivatives of f(x) = x^(-w) (A log x + B) by the exact recurrence
    (A, B) -> (-(w+j) A, A - (w+j) B); f^(j)(x) = x^(-w-j)(A_j log x + B_j)."""

    def __init__(self, w: mpf, log_factor: bool) -> None:
        self.w = w
        self.order = 0
        self.a = mpf(1) if log_factor else mpf(0)
        self.b = mpf(0) if log_factor else mpf(1)

    def advance_to(self, order: int) -> None:
        while self.order < order:
            wj = self.w + self.order
            self.a, self.b = -wj * self.a, self.a - wj * self.b
            self.order += 1

    def eval_at(self, xa: mpf, log_xa: mpf) -> mpf:
        return xa ** (-self.w - self.order) * (self.a * log_xa + self.b)


def _tail_plain(w, n: int, log_factor: bool = False, eps: mpf | None = None) -> mpf:
    """sum_{m>n} m^(-w) (log m)^[0 or 1] by Euler-Maclaurin at a = n+1.

    Requires w > 1.  For the pure power case the remainder is bounded by the
    first omitted term (derivatives of x^(-w) alternate in a fixed pattern);
    the log variant is validated against direct summation in the tests.
    """
    wm = _xm(w)
    if not wm > 1:
        raise DomainError(f"_tail_plain: requires w > 1, got {w}")
    eps = eps if eps is not None else mpf(10) ** (-(mp.dps - 2))
    a = mpf(n + 1)
    log_a = mp.log(a)
    if log_factor:
        integral = a ** (1 - wm) * (log_a / (wm - 1) + 1 / (wm - 1) ** 2)
    else:
        integral = a ** (1 - wm) / (wm - 1)
    d = _LogDeriv(wm, log_factor)
    total = integral + d.eval_at(a, log_a) / 2
    prev = None
    for k in range(1, 300):
        d.advance_to(2 * k - 1)
        term = -_frac_mpf(bernoulli(2 * k)) / mp.factorial(2 * k) * d.eval_at(a, log_a)
        total += term
        mag = abs(term)
        if mag <= eps:
            return total
        if prev is not None and mag > 4 * prev:
            raise _TailDiverged
        prev = mag
    raise _TailDiverged


def _tail_alt(w, n: int, log_factor: bool = False, eps: mpf | None = None) -> mpf:
    """sum_{m>n} (-1)^m m^(-w) (log m)^[0 or 1] by Boole summation at a = n+1:
    (-1)^a / 2 * sum_k E_k(0)/k! f^(k)(a).  Requires w > 0."""
    wm = _xm(w)
    if not wm > 0:
        raise DomainError(f"_tail_alt: requires w > 0, got {w}")
    eps = eps if eps is not None else mpf(10) ** (-(mp.dps - 2))
    a = mpf(n + 1)
    log_a = mp.log(a)
    d = _LogDeriv(wm, log_factor)
    total = mpf(0)
    prev = None
    for k in range(0, 400):
        e = _euler_at_zero(k)
        if e == 0:
            continue
        d.advance_to(k)
        term = _frac_mpf(e) / mp.factorial(k) * d.eval_at(a, log_a)
        total += term
        mag = abs(term)
        if mag <= eps and k >= 3:
            break
        if prev is not None and mag > 4 * prev and k > 8:
            raise _TailDiverged
        prev = mag
    else:
        raise _TailDiverged
    return mpf(-1) ** (n + 1) / 2 * total


_zeta_cache: dict = {}


def classical_zeta(s, sign: int = 1, prec: PrecisionConfig | None = None) -> mpf:
    """zeta(s; sign) = sum_{n>=1} sign^n / n^s  (note: the sign=-1 case is the
    negated eta function).

    sign=+1 needs s > 1; sign=-1 needs s >= 1, with zeta(1; -1) = -log 2.
    """
    _sign_ok(sign)
    prec = _as_prec(prec)
    s_key = s if isinstance(s, (int, Fraction)) else float(s)
    key = (s_key, sign, prec.digits, prec.tail_goal)
    if key in _zeta_cache:
        return _zeta_cache[key]
    with mp.workdps(prec.working_dps):
        sm = _xm(s)
        if sign == 1 and not sm > 1:
            raise DivergenceError(f"classical_zeta: zeta(s) needs s > 1, got {s}")
        if sign == -1 and not sm >= 1:
            raise DomainError(f"classical_zeta: zeta(s; -1) needs s >= 1, got {s}")
        goal = prec.goal()
        n = max(16, int(0.6 * prec.working_dps) + 8)
        for _ in range(6):
            _budget(n, prec, "classical_zeta")
            try:
                partial = mpf(0)
                for m in range(1, n + 1):
                    term = mpf(m) ** (-s) if isinstance(s, int) else mp.power(mpf(m), -sm)
                    partial += term if (sign == 1 or m % 2 == 0) else -term
                tail = (_tail_plain if sign == 1 else _tail_alt)(sm, n, eps=goal / 4)
                value = partial + tail
                _zeta_cache[key] = value
                return value
            except _TailDiverged:
                n *= 2
    raise PrecisionError(f"classical_zeta: no convergence for s={s}, sign={sign}")


def _as_signed(x) -> SignedIndex:
    if isinstance(x, SignedIndex):
        return x
    if isinstance(x, tuple):
        return SignedIndex(x[0], x[1])
    return SignedIndex(x, 1)


_double_cache: dict = {}


def classical_double_euler(first, second, prec: PrecisionConfig | None = None) -> mpf:
    """zeta(s1, s2; g1, g2) = sum_{m>n>=1} g1^m g2^n / (m^s1 n^s2).

    Arguments are SignedIndex (or plain ints, meaning sign +1).  Convergence
    preconditions: s1 >= 2 when g1 = +1, s1 >= 1 when g1 = -1, s2 >= 1.

    Algorithm: exact prefix sum for m <= N, then sum_{m>N} g1^m m^(-s1) P(m-1)
    with the inner prefix P replaced by its asymptotic expansion:
      g2=+1, s2=1:  P(m-1) = log m + euler_gamma - 1/(2m) - sum B_2j/(2j) m^(-2j)
      g2=+1, s2>1:  P(m-1) = zeta(s2) - EM-expansion of sum_{n>=m} n^(-s2)
      g2=-1:        P(m-1) = zeta(s2;-1) - (-1)^m * Boole expansion W(m)
    Each expansion term lands on a plain/alternating (log-)power tail handled
    by Euler-Maclaurin or Boole summation.
    """
    s1 = _as_signed(first)
    s2 = _as_signed(second)
    prec = _as_prec(prec)
    if not isinstance(s1.value, int) or not isinstance(s2.value, int):
        raise DomainError("classical_double_euler: indices must be integers")
    g1, g2 = s1.sign, s2.sign
    a1, a2 = s1.value, s2.value
    if g1 == 1 and a1 < 2:
        raise DivergenceError(f"classical_double_euler: outer plain slot needs s1 >= 2, got {a1}")
    if g1 == -1 and a1 < 1:
        raise DivergenceError(f"classical_double_euler: outer slot needs s1 >= 1, got {a1}")
    if a2 < 1:
        raise DivergenceError(f"classical_double_euler: inner slot needs s2 >= 1, got {a2}")
    key = (a1, g1, a2, g2, prec.digits, prec.tail_goal)
    if key in _double_cache:
        return _double_cache[key]
    with mp.workdps(prec.working_dps):
        goal = prec.goal()
        n = max(64, int(2.2 * prec.working_dps))
        for _ in range(4):
            _budget(n, prec, "classical_double_euler")
            try:
                value = _double_euler_at(a1, g1, a2, g2, n, goal)
                _double_cache[key] = value
                return value
            except _TailDiverged:
                n *= 2
    raise PrecisionError(f"classical_double_euler: no convergence for {s1}, {s2}")


def _double_euler_at(a1: int, g1: int, a2: int, g2: int, n: int, goal: mpf) -> mpf:
    eps = goal / 8
    ts = lambda w, logf=False: (_tail_plain if g1 == 1 else _tail_alt)(w, n, logf, eps=eps)
    prefix = mpf(0)
    main = mpf(0)
    for m in range(1, n + 1):
        sg1 = 1 if (g1 == 1 or m % 2 == 0) else -1
        sg2 = 1 if (g2 == 1 or m % 2 == 0) else -1
        if m >= 2:
            main += sg1 * mpf(m) ** (-a1) * prefix
        prefix += sg2 * mpf(m) ** (-a2)
    if g2 == 1 and a2 == 1:
        tail = ts(a1, True) + mp.euler * ts(a1) - ts(a1 + 1) / 2
        for j in range(1, 200):
            c = bernoulli(2 * j) / (2 * j)
            term = _frac_mpf(c) * ts(a1 + 2 * j)
            tail -= term
            if abs(term) <= eps:
                break
        else:
            raise _TailDiverged
    elif g2 == 1:
        tail = classical_zeta_cached_inner(a2, 1, goal) * ts(a1)
        tail -= ts(a1 + a2 - 1) / (a2 - 1)
        tail -= ts(a1 + a2) / 2
        for j in range(1, 200):
            c = _frac_mpf(bernoulli(2 * j)) / mp.factorial(2 * j) * mp.rf(a2, 2 * j - 1)
            term = c * ts(a1 + a2 + 2 * j - 1)
            tail -= term
            if abs(term) <= eps:
                break
        else:
            raise _TailDiverged
    else:
        tail = classical_zeta_cached_inner(a2, -1, goal) * ts(a1)
        # the (-1)^m in the inner expansion flips the outer parity
        tx = lambda w: (_tail_plain if g1 == -1 else _tail_alt)(w, n, eps=eps)
        for k in range(0, 300):
            e = _euler_at_zero(k)
            if e == 0:
                continue
            c = _frac_mpf(e) / mp.factorial(k) * mpf(-1) ** k * mp.rf(a2, k) / 2
            term = c * tx(a1 + a2 + k)
            tail -= term
            if abs(term) <= eps and k >= 3:
                break
        else:
            raise _TailDiverged
    return main + tail


def classical_zeta_cached_inner(k: int, sign: int, goal: mpf) -> mpf:
    """zeta(k; sign) at the current working precision (helper for the tails)."""
    if sign == -1 and k == 1:
        return -mp.log(2)
    partial = mpf(0)
    n = max(16, int(0.6 * mp.dps) + 8)
    for _ in range(5):
        try:
            partial = mpf(0)
            for m in range(1, n + 1):
                term = mpf(m) ** (-k)
                partial += term if (sign == 1 or m % 2 == 0) else -term
            tail = (_tail_plain if sign == 1 else _tail_alt)(k, n, eps=goal / 8)
            return partial + tail
        except _TailDiverged:
            n *= 2
    raise _TailDiverged


# ----------------------------------------------------------------------
# classical Tornheim values
# ----------------------------------------------------------------------

def tornheim_classical(r: int, s: int, t: int, variant: str = "T",
                       prec: PrecisionConfig | None = None) -> mpf:
    """Numeric value of the classical series T/S/R(r,s,t) via its depth-2
    reduction (the production route; the raw double sum converges too slowly)."""
    from .reduction import corollary1_reduce

    prec = _as_prec(prec)
    terms = corollary1_reduce(r, s, t, variant)
    with mp.workdps(prec.working_dps):
        total = mpf(0)
        for coeff, outer, inner in terms:
            total += _frac_mpf(coeff) * classical_double_euler(outer, inner, prec)
        return total


_VARIANT_SIGNS = {"T": (1, 1), "S": (-1, -1), "R": (1, -1)}


def tornheim_classical_naive(r: int, s: int, t: int, variant: str = "T",
                             window: int = 200_000) -> float:
    """Direct triangular-window double sum in float64 (fft convolution).

    Low-precision sanity oracle only: truncation error decays slowly
    (roughly log(W)/W at weight 3), so expect ~1e-4 at the default window.
    """
    if variant not in _VARIANT_SIGNS:
        raise DomainError(f"unknown variant {variant!r}")
    sigma, tau = _VARIANT_SIGNS[variant]
    u = np.arange(1, window, dtype=np.float64)
    a = u ** (-float(r))
    b = u ** (-float(s))
    if sigma == -1:
        a[::2] = -a[::2]
    if tau == -1:
        b[::2] = -b[::2]
    m = 2 * len(a)
    conv = np.fft.irfft(np.fft.rfft(a, m) * np.fft.rfft(b, m), m)[: 2 * len(a) - 1]
    w = np.arange(2, 2 * len(a) + 1, dtype=np.float64)
    keep = w <= window
    return float(np.sum(conv[keep] * w[keep] ** (-float(t))))


# ----------------------------------------------------------------------
# reduction evaluation
# ----------------------------------------------------------------------

_qterm_cache: dict = {}


def evaluate_reduction(reduction, q, prec: PrecisionConfig | None = None) -> mpf:
    """Numeric value of a Reduction's right-hand side at a given q."""
    from .reduction import DoubleQZeta, PhiTerm, QSquaredZeta

    qp = _as_q(q)
    prec = _as_prec(prec)
    with mp.workdps(prec.working_dps):
        qm = qp.to_mpf()
        total = mpf(0)
        for coeff, kind in reduction.terms:
            ckey = (kind, qp.value, prec.digits, prec.tail_goal)
            if ckey in _qterm_cache:
                val = _qterm_cache[ckey]
            elif isinstance(kind, DoubleQZeta):
                val = q_zeta2(kind.outer.value, kind.outer.sign,
                              kind.inner.value, kind.inner.sign, qp, prec)
                val *= (1 - qm) ** kind.one_minus_q_pow
                _qterm_cache[ckey] = val
            elif isinstance(kind, PhiTerm):
                val = phi_q(kind.index.value, kind.index.sign, qp, prec)
                val *= (1 - qm) ** kind.one_minus_q_pow
                _qterm_cache[ckey] = val
            elif isinstance(kind, QSquaredZeta):
                val = q_zeta1(kind.index, 1, qp.squared(), prec)
                val *= (1 - qm) ** kind.one_minus_q_pow
                val *= _pow(1 + qm, kind.one_plus_q_pow)
                _qterm_cache[ckey] = val
            else:
                raise DomainError(f"evaluate_reduction: unknown term kind {kind!r}")
            total += _frac_mpf(coeff) * val
        return total
