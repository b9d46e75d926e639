import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..expr.core import Expr, canonicalize
from .derive import DeterminingSystem, differential_closure
from .linear import span_contains

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MembershipReport:
    """Two-way span comparison of a claimed constraint set with a derived one."""

    matched_claimed: Tuple[Expr, ...] = ()
    unmatched_claimed: Tuple[Expr, ...] = ()
    matched_derived: Tuple[Expr, ...] = ()
    unmatched_derived: Tuple[Expr, ...] = ()
    inconclusive: Tuple[Expr, ...] = field(default_factory=tuple)

    @property
    def claimed_contained(self) -> bool:
        return not self.unmatched_claimed and not self.inconclusive

    @property
    def equivalent(self) -> bool:
        return self.claimed_contained and not self.unmatched_derived

    @property
    def complete(self) -> bool:
        """Every constraint on both sides has been classified."""
        return not self.inconclusive


def _classify(
    candidates: Sequence[Expr],
    basis: Sequence[Expr],
    zeros: Sequence[Expr],
    names: Sequence[str],
    seed: int,
) -> Tuple[List[Expr], List[Expr], List[Expr]]:
    matched, unmatched, inconclusive = [], [], []
    for candidate in candidates:
        verdict: Optional[bool] = span_contains(basis, candidate, names, zeros, seed=seed)
        if verdict is None:
            inconclusive.append(candidate)
        elif verdict:
            matched.append(candidate)
        else:
            unmatched.append(candidate)
    return matched, unmatched, inconclusive


def check_membership(
    claimed: Sequence[Expr], derived: DeterminingSystem, seed: int = 0
) -> MembershipReport:
    """
    Each claimed constraint is tested against the span of the derived system, and
    each derived constraint against the span of the claimed set (closed the same way
    as a derived system). Textual equality is not required.
    """
    names = derived.names
    claimed = [canonicalize(c) for c in claimed]
    matched_claimed, unmatched_claimed, inconclusive = _classify(
        claimed, derived.constraints, derived.zeros, names, seed
    )
    if claimed:
        claimed_basis, claimed_zeros = differential_closure(claimed, names, derived.ansatz.arguments, seed=seed)
    else:
        claimed_basis, claimed_zeros = [], []
    matched_derived, unmatched_derived, inconclusive_derived = _classify(
        derived.constraints, claimed_basis, claimed_zeros, names, seed
    )
    report = MembershipReport(
        matched_claimed=tuple(matched_claimed),
        unmatched_claimed=tuple(unmatched_claimed),
        matched_derived=tuple(matched_derived),
        unmatched_derived=tuple(unmatched_derived),
        inconclusive=tuple(inconclusive + inconclusive_derived),
    )
    logger.info(
        f"Membership: {len(matched_claimed)}/{len(claimed)} claimed in span, "
        f"{len(unmatched_derived)} derived constraints outside the claimed span"
    )
    return report
