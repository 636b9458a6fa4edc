"""Reduction of moduli-space integral data to Hilbert-scheme data.

Integrals of tautological classes against exp(mu(L) + u*mu(point)) over a
2n-dimensional moduli space of sheaves depend only on a short list of
Mukai-lattice pairings.  Matching that list against its specialisation to
the Hilbert scheme of n points pins down the target invariants:

    rk(beta)   = rk(alpha) / rho,
    v2(beta)   = rho * v2(alpha),
    c1(beta)^2 = c1(alpha)^2,
    c1(beta).L = c1(alpha).L,
    u'         = rho * u.

This module works with the numeric invariants only; universality guarantees
the integrals see nothing else.  The two-dimensional case has a closed-form
evaluation, which doubles as an independent consistency check against the
coefficient-extraction route at n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .segre_verlinde import SegreParams, segre_number


class DimensionMismatch(ValueError):
    """The closed-form evaluation only covers half-dimension one."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class KClassInvariants:
    """Numeric fingerprint of a K-theory class: rank, c1^2, c1.L, v2."""

    rank: Fraction
    c1sq: Fraction
    c1L: Fraction
    v2: Fraction

    def __post_init__(self):
        for name in ("rank", "c1sq", "c1L", "v2"):
            object.__setattr__(self, name, _frac(getattr(self, name)))


@dataclass(frozen=True)
class ModuliData:
    """One moduli-side integrand: rho = rk(v), n = half the dimension."""

    rho: int
    n: int
    alpha: KClassInvariants
    Lsq: Fraction
    u: Fraction

    def __post_init__(self):
        if self.rho < 1:
            raise ValueError("rho must be a positive integer")
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "Lsq", _frac(self.Lsq))
        object.__setattr__(self, "u", _frac(self.u))


@dataclass(frozen=True)
class ReductionTarget:
    """Hilbert-scheme-side data produced by the reduction."""

    n: int
    beta: KClassInvariants
    Lsq: Fraction
    u_prime: Fraction
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "Lsq", _frac(self.Lsq))
        object.__setattr__(self, "u_prime", _frac(self.u_prime))
        object.__setattr__(self, "warnings", tuple(self.warnings))


@dataclass(frozen=True)
class PairingList:
    """The pairings the integrals depend on.

    alpha_v, alpha_p, alpha_alpha are the pairings of the normalised class
    built from alpha against the moduli vector, the (scaled) point class and
    itself; L_pairs collects (v.L, alpha.L, L.L)-type entries, whose first
    component is identically zero; u_pairs are the point-class pairings
    scaled by the exponential weight.
    """

    alpha_v: Fraction
    alpha_p: Fraction
    alpha_alpha: Fraction
    L_pairs: tuple[Fraction, Fraction, Fraction]
    u_pairs: tuple[Fraction, Fraction, Fraction]


def _is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def reduce_to_hilbert(m: ModuliData) -> ReductionTarget:
    """Map moduli-side data (rho, alpha, L, u) to Hilbert-scheme data.

    When rho does not divide rk(alpha), or c1(alpha)^2 is not an even
    integer, no integral K-theory class realises the target invariants; the
    formal reduction is still returned, with a warning recorded.
    """
    rho = m.rho
    beta = KClassInvariants(
        rank=m.alpha.rank / rho,
        c1sq=m.alpha.c1sq,
        c1L=m.alpha.c1L,
        v2=rho * m.alpha.v2,
    )
    warnings = []
    if not _is_integer(beta.rank):
        warnings.append(
            f"rank {beta.rank} is not an integer; no integral class realises these invariants"
        )
    if not (_is_integer(beta.c1sq) and beta.c1sq.numerator % 2 == 0):
        warnings.append(
            f"c1^2 = {beta.c1sq} is not an even integer; no integral class realises these invariants"
        )
    return ReductionTarget(
        n=m.n, beta=beta, Lsq=m.Lsq, u_prime=rho * m.u, warnings=tuple(warnings)
    )


def dependence_pairings(m: ModuliData) -> PairingList:
    """The moduli-side pairing list, in closed form.

    With vv = 2n - 2:
      alpha_v     = -v2(alpha)*rho + (rk(alpha)/rho) * vv / 2
      alpha_p     = -rk(alpha)/rho
      alpha_alpha = c1(alpha)^2 - 2 rk(alpha) v2(alpha)
      L_pairs     = (0, -c1(alpha).L, L^2)
      u_pairs     = u*rho * (-1, -rk(alpha)/rho, 0)
    """
    a = m.alpha
    rho = Fraction(m.rho)
    vv = Fraction(2 * m.n - 2)
    alpha_p = -a.rank / rho
    return PairingList(
        alpha_v=-a.v2 * rho + Fraction(1, 2) * (a.rank / rho) * vv,
        alpha_p=alpha_p,
        alpha_alpha=a.c1sq - 2 * a.rank * a.v2,
        L_pairs=(Fraction(0), -a.c1L, m.Lsq),
        u_pairs=(-m.u * rho, m.u * rho * alpha_p, Fraction(0)),
    )


def hilbert_pairings(t: ReductionTarget) -> PairingList:
    """The same pairing list computed on the Hilbert-scheme side."""
    b = t.beta
    vv = Fraction(2 * t.n - 2)
    return PairingList(
        alpha_v=-b.v2 + Fraction(1, 2) * b.rank * vv,
        alpha_p=-b.rank,
        alpha_alpha=b.c1sq - 2 * b.rank * b.v2,
        L_pairs=(Fraction(0), -b.c1L, t.Lsq),
        u_pairs=(-t.u_prime, -t.u_prime * b.rank, Fraction(0)),
    )


def c2_from_v2(rank: Fraction, c1sq: Fraction, v2: Fraction) -> Fraction:
    """Invert v2 = rank + c1^2/2 - c2."""
    return rank + c1sq / 2 - v2


def v2_from_c2(rank: Fraction, c1sq: Fraction, c2: Fraction) -> Fraction:
    return rank + c1sq / 2 - c2


def dim2_evaluate(m: ModuliData) -> Fraction:
    """Closed form for the n = 1 integral.

    A two-dimensional moduli space is again a K3 surface, and the integral
    reduces to an honest surface integral of c(beta) exp(L + u*rho*point):

        c2(beta) + c1(beta).L + L^2/2 + u*rho.
    """
    if m.n != 1:
        raise DimensionMismatch(f"closed form needs n = 1, got n = {m.n}")
    beta = reduce_to_hilbert(m).beta
    c2 = c2_from_v2(beta.rank, beta.c1sq, beta.v2)
    return c2 + beta.c1L + m.Lsq / 2 + m.u * m.rho


def segre_cross_check(rho: int, s: int, c2: int, c1sq: int) -> bool:
    """Compare the n = 1 coefficient extraction with the closed form.

    alpha is reconstructed from (s, c1sq, c2) through v2 = s + c1sq/2 - c2,
    with L = 0 and u = 0 on both sides.
    """
    value_series = segre_number(SegreParams(rho=rho, s=Fraction(s), c2=c2, c1sq=c1sq, n=1))
    alpha = KClassInvariants(
        rank=Fraction(s),
        c1sq=Fraction(c1sq),
        c1L=Fraction(0),
        v2=v2_from_c2(Fraction(s), Fraction(c1sq), Fraction(c2)),
    )
    value_closed = dim2_evaluate(ModuliData(rho=rho, n=1, alpha=alpha, Lsq=0, u=0))
    return value_series == value_closed


# -- JSON encoding --------------------------------------------------------------


def k_class_to_json(k: KClassInvariants) -> dict:
    return {
        "rank": str(k.rank),
        "c1sq": str(k.c1sq),
        "c1L": str(k.c1L),
        "v2": str(k.v2),
    }


def k_class_from_json(obj: dict) -> KClassInvariants:
    return KClassInvariants(
        rank=Fraction(obj["rank"]),
        c1sq=Fraction(obj["c1sq"]),
        c1L=Fraction(obj["c1L"]),
        v2=Fraction(obj["v2"]),
    )


def moduli_data_to_json(m: ModuliData) -> dict:
    return {
        "rho": m.rho,
        "n": m.n,
        "alpha": k_class_to_json(m.alpha),
        "Lsq": str(m.Lsq),
        "u": str(m.u),
    }


def moduli_data_from_json(obj: dict) -> ModuliData:
    return ModuliData(
        rho=int(obj["rho"]),
        n=int(obj["n"]),
        alpha=k_class_from_json(obj["alpha"]),
        Lsq=Fraction(obj["Lsq"]),
        u=Fraction(obj["u"]),
    )


def reduction_target_to_json(t: ReductionTarget) -> dict:
    return {
        "n": t.n,
        "beta": k_class_to_json(t.beta),
        "Lsq": str(t.Lsq),
        "u_prime": str(t.u_prime),
        "warnings": list(t.warnings),
    }


def reduction_target_from_json(obj: dict) -> ReductionTarget:
    return ReductionTarget(
        n=int(obj["n"]),
        beta=k_class_from_json(obj["beta"]),
        Lsq=Fraction(obj["Lsq"]),
        u_prime=Fraction(obj["u_prime"]),
        warnings=tuple(obj.get("warnings", ())),
    )
