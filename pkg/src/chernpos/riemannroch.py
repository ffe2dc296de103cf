"""Hirzebruch-Riemann-Roch: Todd classes, Euler characteristics, Hilbert polynomials.

Polynomials in the twisting parameter m are handled by expanding
exp(m D) = sum_k m^k D^k / k!, so each m-coefficient is an ordinary
integral; geometric truncation never touches the m-degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import bundlecalc as bc
from .bundlecalc import FormalBundle
from .chowring import GradedClass, RingPresentation, integrate, make_projective_bundle, xi
from .errors import PreconditionFailed, RankNotIntegral


# -- power series helpers (lists of Fractions, index = degree) ------------------------


def _series_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _series_inverse(a: list[Fraction], n: int) -> list[Fraction]:
    inv = [Fraction(1) / a[0]] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = sum((a[i] * inv[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        inv[k] = -acc / a[0]
    return inv


@lru_cache(maxsize=None)
def todd_root_series(n: int) -> tuple[Fraction, ...]:
    """Coefficients of x / (1 - e^(-x)) up to x^n."""
    denom = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]  # (1 - e^-x)/x
    return tuple(_series_inverse(denom, n))


@lru_cache(maxsize=None)
def log_todd_series(n: int) -> tuple[Fraction, ...]:
    """Coefficients a_k of log(x / (1 - e^(-x))) = sum a_k x^k, k = 0..n."""
    f = list(todd_root_series(n))
    u = [Fraction(0)] + f[1:]  # f = 1 + u
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for j in range(1, n + 1):
        power = _series_mul(power, u, n)
        for k in range(n + 1):
            out[k] += Fraction((-1) ** (j + 1), j) * power[k]
    return tuple(out)


# -- Todd classes --------------------------------------------------------------------------


def todd_of_bundle(E: FormalBundle) -> GradedClass:
    """td(E) = exp(sum_k a_k p_k) with p_k = k! ch_k the power sums of the roots."""
    if E.is_formal_twist or E.rank.denominator != 1:
        raise RankNotIntegral("Todd class needs an honest integer rank")
    ring = E.ring
    n = ring.dimension
    chd = bc.ch(E)
    coeffs = log_todd_series(n)
    log_td = ring.zero()
    for k in range(1, n + 1):
        log_td = log_td + chd[k] * (coeffs[k] * factorial(k))
    return bc.exp_class(log_td)


def todd_pn(n: int, ring: RingPresentation | None = None) -> GradedClass:
    """(h / (1 - e^(-h)))^(n+1) truncated at degree n."""
    from .chowring import make_projective_space

    ring = make_projective_space(n) if ring is None else ring
    f = list(todd_root_series(n))
    power = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(n + 1):
        power = _series_mul(power, f, n)
    h = ring.gen(0)
    return sum((h ** k * c for k, c in enumerate(power) if c), ring.zero())


def relative_tangent(P: RingPresentation) -> FormalBundle:
    """T_pi on P(E) from 0 -> O -> pi^*E^dual (1) -> T_pi -> 0."""
    if P.kind != "projective_bundle":
        raise PreconditionFailed("relative tangent needs a projective bundle ring")
    E = bc.pullback(P.construction["bundle"], P)
    O1 = bc.line_bundle(P, xi(P))
    middle = bc.tensor(bc.dual(E), O1)
    return bc.FormalBundle(P, middle.rank - 1, middle.chern)


def tangent_bundle(ring: RingPresentation) -> FormalBundle:
    """Tangent bundle of the variety modeled by ``ring`` (P^n, products, P(E))."""
    if ring.kind == "projective_space":
        return bc.tangent_pn(ring)
    if ring.kind == "product":
        a, b = ring.construction["factors"]
        return bc.dsum(bc.pullback(tangent_bundle(a), ring), bc.pullback(tangent_bundle(b), ring))
    if ring.kind == "projective_bundle":
        base = bc.pullback(tangent_bundle(ring.construction["base"]), ring)
        return bc.dsum(base, relative_tangent(ring))
    raise PreconditionFailed(f"no tangent bundle model for {ring!r}")


def todd_class(ring: RingPresentation) -> GradedClass:
    if ring.kind == "projective_space":
        return todd_pn(ring.construction["n"], ring)
    if ring.kind == "projective_bundle":
        return todd_projective_bundle(ring)
    return todd_of_bundle(tangent_bundle(ring))


def todd_projective_bundle(P: RingPresentation, base_todd: GradedClass | None = None) -> GradedClass:
    """pi^* td(base) * td(T_pi).  ``base_todd`` overrides the base model (formal bases)."""
    base = P.construction["base"]
    if base_todd is None:
        base_todd = todd_class(base)
    return P.pullback(base_todd) * todd_of_bundle(relative_tangent(P))


# -- Euler characteristics -------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in m; ``coefficients[k]`` multiplies m^k."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    def __call__(self, m) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * m + c
        return total

    def scaled(self, t) -> HilbertPolynomial:
        return HilbertPolynomial(tuple(c * Fraction(t) for c in self.coefficients))


def euler_char(E: FormalBundle, todd: GradedClass | None = None) -> Fraction:
    """chi(E) = integral of ch(E) td(X)."""
    td = todd_class(E.ring) if todd is None else todd
    return integrate(bc.ch(E).total() * td)


def hilbert_polynomial(E: FormalBundle, H: GradedClass, todd: GradedClass | None = None) -> HilbertPolynomial:
    """chi(E(mH)) as a polynomial in m."""
    ring = E.ring
    td = todd_class(ring) if todd is None else todd
    base = bc.ch(E).total() * td
    coeffs = []
    power = ring.one()
    for k in range(ring.dimension + 1):
        coeffs.append(integrate(base * power) / factorial(k))
        power = power * H
    return HilbertPolynomial(tuple(coeffs))


def normalized_hilbert_equal(E: FormalBundle, H: GradedClass, todd: GradedClass | None = None) -> bool:
    if E.is_formal_twist or E.rank.denominator != 1:
        raise RankNotIntegral("normalized Hilbert polynomial needs an honest rank")
    ring = E.ring
    td = todd_class(ring) if todd is None else todd
    mine = hilbert_polynomial(E, H, td).scaled(1 / E.rank)
    return mine == hilbert_polynomial(bc.trivial(ring), H, td)


# -- projective bundles -----------------------------------------------------------------------


def _m_coefficient_classes(E: FormalBundle, L: GradedClass | None, base_todd: GradedClass | None):
    P = make_projective_bundle(E.ring, E)
    td = todd_projective_bundle(P, base_todd)
    xi_ = xi(P)
    twist = P.one() if L is None else bc.exp_class(P.pullback(L))
    base = twist * td
    classes = []
    power = P.one()
    for k in range(P.dimension + 2):
        classes.append(base * power * Fraction(1, factorial(k)))
        power = power * xi_
    return P, classes


def projective_bundle_chi(E: FormalBundle, L: GradedClass | None = None) -> HilbertPolynomial:
    """integral over P(E) of exp(m xi + pi^* L) td(P(E)), as a polynomial in m."""
    P, classes = _m_coefficient_classes(E, L, None)
    return HilbertPolynomial(tuple(integrate(c) for c in classes))


def asymptotic_coefficient_classes(
    E: FormalBundle, L: GradedClass | None, base_todd: GradedClass
) -> list[GradedClass]:
    """Top-degree parts of the m^k coefficient classes, k = 0..dim P(E)+1.

    Needs no degree functional, so it works over formal bases where only
    vanishing as classes can be certified.
    """
    P, classes = _m_coefficient_classes(E, L, base_todd)
    return [c.degree_part(P.dimension) for c in classes]


@dataclass(frozen=True)
class AsymptoticReport:
    rank: int
    polynomial: HilbertPolynomial | None
    top_coefficients: tuple  # values (integrated) or classes (symbolic) at m^(r+1), m^r
    verdict: bool


def _check_precondition(E: FormalBundle) -> int:
    if E.is_formal_twist or E.rank.denominator != 1:
        raise RankNotIntegral("asymptotic check needs an honest rank")
    if not (E.c(1).is_zero() and E.c(2).is_zero()):
        raise PreconditionFailed("asymptotic check needs c1 = c2 = 0")
    return int(E.rank)


def check_asymptotic_vanishing(E: FormalBundle, L: GradedClass | None = None) -> AsymptoticReport:
    """Coefficients of m^(r+1) and m^r vanish when c1 = c2 = 0 on a surface."""
    r = _check_precondition(E)
    poly = projective_bundle_chi(E, L)
    top = (poly.coefficient(r + 1), poly.coefficient(r))
    return AsymptoticReport(r, poly, top, all(t == 0 for t in top))


def check_asymptotic_vanishing_symbolic(
    E: FormalBundle, L: GradedClass | None, base_todd: GradedClass
) -> AsymptoticReport:
    r = _check_precondition(E)
    classes = asymptotic_coefficient_classes(E, L, base_todd)
    top = (classes[r + 1], classes[r])
    return AsymptoticReport(r, None, top, all(t.is_zero() for t in top))


def formal_surface(rank_names: str = "l") -> tuple[RingPresentation, GradedClass, GradedClass]:
    """Generic surface: degree-1 class l, tangent Chern classes t1, t2.

    Returns the ring, the class l and the Todd class 1 + t1/2 + (t1^2 + t2)/12.
    """
    from .chowring import make_formal_base

    ring = make_formal_base(2, [(rank_names, 1), ("t1", 1), ("t2", 2)])
    T = bc.FormalBundle(ring, 2, ring.one() + ring.gen("t1") + ring.gen("t2"))
    return ring, ring.gen(rank_names), todd_of_bundle(T)
