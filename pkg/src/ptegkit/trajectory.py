"""Finite schedule synthesis: stacked daters x(0..K) as the star of the
horizon matrix applied to any finite seed vector."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .periodic import build_block, build_periodic
from .pteg import CharacteristicMatrices, TrajectoryWindow
from .tropical import NotInGamma, ShapeError, as_value, gamma_check, star_apply


class HorizonInfeasible(ValueError):
    """The requested horizon admits no consistent trajectory."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def synthesize(mats: CharacteristicMatrices, k: int,
               u: Optional[Sequence] = None) -> TrajectoryWindow:
    """Build a consistent trajectory x(0..k) from seed u (zeros by default).

    Every output of this function satisfies all window constraints, since
    the star maps any seed into the feasible set.
    """
    if k < 0:
        raise ValueError("horizon must be non-negative")
    n = mats.n
    size = n * (k + 1)
    if u is None:
        u = [Fraction(0)] * size
    else:
        u = [as_value(v) for v in u]
        if len(u) != size:
            raise ShapeError(f"seed vector must have length n(k+1) = {size}")
        if not all(isinstance(v, Fraction) for v in u):
            raise ValueError("seed vector must be finite")
    block = build_block(build_periodic(mats), k)
    try:
        xs = star_apply(block.m, u)
    except NotInGamma as exc:
        witness = exc.witness or gamma_check(block.m).witness
        raise HorizonInfeasible(
            f"horizon {k} is infeasible: the constraint graph has a positive "
            "circuit (run the death search for the exact first failure)",
            witness,
        ) from None
    daters = tuple(tuple(xs[z * n : (z + 1) * n]) for z in range(k + 1))
    return TrajectoryWindow(daters)
