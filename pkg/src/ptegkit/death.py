"""First token death: the smallest horizon k whose constraint system is
infeasible, found by binary search below the certificate's bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .periodic import build_block, build_periodic
from .pteg import CharacteristicMatrices
from .tropical import PathWitness, gamma_check
from .wc import conservative_bound, verify_wc


class IsWeaklyConsistent(ValueError):
    """No token death exists at any horizon; the net is weakly consistent."""


@dataclass(frozen=True)
class DeathReport:
    """k_star is the first infeasible horizon (None when no death was found
    below the bound); max_firings counts the valid firings per transition,
    which equals k_star: horizons 0..k_star-1 are feasible, so k_star dater
    vectors x(0..k_star-1) exist."""

    k_star: Optional[int]
    horizon_bound: int
    max_firings: Optional[int]
    witness: Optional[PathWitness]


def first_death(mats: CharacteristicMatrices, bound: Optional[int] = None) -> DeathReport:
    """Locate min{k : G(M_k) has a positive circuit} by binary search.

    Infeasibility is upward-closed in k (each horizon's graph embeds in the
    next), so bisection against one known-infeasible upper end is exact.
    """
    verdict = verify_wc(mats)
    if verdict.weakly_consistent:
        if bound is None:
            raise IsWeaklyConsistent("the net is weakly consistent; no horizon is infeasible")
        cert = None
        candidates = [bound]
        reported = bound
    else:
        cert = verdict.certificate
        if bound is not None:
            candidates = [bound]
            reported = bound
        else:
            # the certificate guarantees a death at or below one of these
            loose = conservative_bound(cert.y, cert.pair_i.t, cert.y2,
                                       cert.pair_j.t, mats.n)
            candidates = sorted({cert.k_hat, max(cert.k_hat, loose)})
            reported = cert.k_hat
    sys = build_periodic(mats)

    def infeasible(k: int):
        return gamma_check(build_block(sys, k).m)

    hi = None
    hi_verdict = None
    for cand in candidates:
        v = infeasible(cand)
        if not v.in_gamma:
            hi, hi_verdict = cand, v
            break
    if hi is None:
        if cert is not None and bound is None:
            raise RuntimeError("certificate promised a death below the bound")
        return DeathReport(None, reported, None, None)
    lo = 0
    wit = hi_verdict.witness
    while lo < hi:
        mid = (lo + hi) // 2
        v = infeasible(mid)
        if not v.in_gamma:
            hi, wit = mid, v.witness
        else:
            lo = mid + 1
    return DeathReport(hi, reported, hi, wit)
