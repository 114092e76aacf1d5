"""Fat faces, containers, full faces and expanding faces of a cochain.

Starting from an i-cochain W with fatness constant eta in (0, 1), the fat
cascade marks faces level by level downward: a j-face is fat when the
faces one level up that are already marked carry, inside its link, norm at
least ``eta ** 2**(i-j-1)``.  Full j-faces are those whose (j-1)-faces are
all fat.  Expanding (i+1)-faces contain both a member and a non-member of
W; they coincide with the container minus the full (i+1)-faces.

All comparisons are exact rational comparisons, so the threshold boundary
case is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import Cochain, SimplicialComplex, link_norm_at
from .errors import BadFatness, LevelOutOfRange, TopDimension


@dataclass(frozen=True)
class FatCascade:
    """Fat-face levels S^j(W) for j = i down to -1."""

    base: Cochain
    fatness: Fraction
    levels: dict  # j -> Cochain

    def level(self, j):
        return self.levels[j]


@dataclass(frozen=True)
class FullLevels:
    """Full-face levels F^j(W) for j = 0 up to i+1."""

    base: Cochain
    fatness: Fraction
    levels: dict  # j -> Cochain

    def level(self, j):
        return self.levels[j]


def _check_eta(eta):
    eta = Fraction(eta)
    if not 0 < eta < 1:
        raise BadFatness(f"fatness {eta} outside (0, 1)")
    return eta


def fat_cascade(x, w, eta):
    """Mark fat faces of every dimension below the base cochain.

    A face ``sigma`` of dimension ``j < i`` enters ``S^j`` when the norm of
    the localization of ``S^(j+1)`` to its link is at least
    ``eta ** 2**(i-j-1)`` (compared exactly).  ``S^i`` is W itself.
    """
    eta = _check_eta(eta)
    i = w.dimension
    if i < 0:
        raise LevelOutOfRange("fat cascade needs a cochain of dimension >= 0")
    levels = {i: w}
    for j in range(i - 1, -2, -1):
        threshold = eta ** (2 ** (i - j - 1))
        above = levels[j + 1]
        fat = [
            sigma
            for sigma in x.faces(j)
            if link_norm_at(x, above, sigma) >= threshold
        ]
        levels[j] = x.cochain(j, fat)
    return FatCascade(w, eta, levels)


def container(x, w):
    """The (i+1)-faces containing at least one member of W."""
    i = w.dimension
    if i >= x.dimension:
        raise TopDimension("container undefined at the top dimension")
    hit = set()
    for sigma in w.members:
        hit.update(x.cofaces(sigma))
    return x.cochain(i + 1, hit)


def full_levels(x, w, eta):
    """Full faces F^j for 0 <= j <= i+1: all (j-1)-subfaces fat.

    At j = 0 the only (-1)-subface is the empty face, so F^0 is all
    vertices when the empty face is fat and empty otherwise.
    """
    i = w.dimension
    if i >= x.dimension:
        raise TopDimension("full faces need dimension below the top")
    cascade = fat_cascade(x, w, eta)
    levels = {}
    for j in range(0, i + 2):
        below = cascade.level(j - 1).members
        full = [
            tau
            for tau in x.faces(j)
            if all(sub in below for sub in combinations(tau, j))
        ]
        levels[j] = x.cochain(j, full)
    return FullLevels(w, cascade.fatness, levels)


def expanding_faces(x, w):
    """The (i+1)-faces containing both a member and a non-member of W.

    Also re-derives the same set as container minus full-(i+1) (the full
    level at i+1 depends only on W, not on the fatness constant) and
    insists the two computations agree.
    """
    i = w.dimension
    if i >= x.dimension:
        raise TopDimension("expanding faces undefined at the top dimension")
    members = w.members
    out = []
    for tau in x.faces(i + 1):
        subs = list(combinations(tau, i + 1))
        inside = sum(1 for s in subs if s in members)
        if 0 < inside < len(subs):
            out.append(tau)
    psi = x.cochain(i + 1, out)

    gamma = container(x, w).members
    all_in = {
        tau
        for tau in x.faces(i + 1)
        if all(s in members for s in combinations(tau, i + 1))
    }
    if psi.members != gamma - all_in:
        raise RuntimeError("expanding-face identity failed; complex corrupt")
    return psi
