"""Pure simplicial complexes: faces, degrees, links, cochains, exact norms.

Faces are strictly increasing tuples of dense vertex indices; the empty
face ``()`` has dimension -1 and is always present.  All probabilities and
norms are exact ``fractions.Fraction`` values; floating point never enters
this module.

The descending face chain is the random sequence obtained by drawing a
top-dimensional face uniformly and deleting one uniformly random vertex at
a time.  Its marginal at level ``k`` weights a face by its degree:
``Pr[chain hits sigma at level k] = deg(sigma) / (C(d+1, k+1) * #top)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateVertexInFace,
    EmptyInput,
    FaceNotInComplex,
    InvalidComplex,
    LevelOutOfRange,
    MixedDimension,
)

Face = tuple  # strictly increasing tuple of vertex indices


class SimplicialComplex:
    """Pure d-dimensional complex with degree and coface bookkeeping.

    Instances are immutable after construction; any number of readers may
    share one.  Use :func:`build_complex` (or a generator) to create one.
    """

    __slots__ = (
        "dimension",
        "vertex_labels",
        "_levels",
        "_degree",
        "_cofaces",
        "_deg_sums",
        "_face_set",
    )

    def __init__(self, dimension, levels, degree, cofaces, vertex_labels):
        self.dimension = dimension
        self._levels = levels          # dict: i -> tuple of faces, lex sorted
        self._degree = degree          # dict: face -> number of containing top faces
        self._cofaces = cofaces        # dict: face -> tuple of codim-1 cofaces
        self.vertex_labels = vertex_labels
        self._deg_sums = {
            i: sum(degree[f] for f in faces) for i, faces in levels.items()
        }
        self._face_set = frozenset(degree)

    # -- basic queries -------------------------------------------------

    def faces(self, i):
        """All i-faces, lexicographically sorted. ``faces(-1) == ((),)``."""
        if not -1 <= i <= self.dimension:
            raise LevelOutOfRange(f"level {i} outside [-1, {self.dimension}]")
        return self._levels[i]

    def degree(self, face):
        """Number of top-dimensional faces containing ``face``."""
        try:
            return self._degree[face]
        except KeyError:
            raise FaceNotInComplex(f"{face!r} is not a face") from None

    def degree_sum(self, i):
        """Sum of degrees over all i-faces (norm denominator)."""
        if not -1 <= i <= self.dimension:
            raise LevelOutOfRange(f"level {i} outside [-1, {self.dimension}]")
        return self._deg_sums[i]

    def cofaces(self, face):
        """Codim-1 cofaces: faces one dimension up containing ``face``."""
        try:
            return self._cofaces[face]
        except KeyError:
            raise FaceNotInComplex(f"{face!r} is not a face") from None

    def __contains__(self, face):
        return face in self._face_set

    def num_vertices(self):
        return len(self._levels.get(0, ()))

    def top_count(self):
        return len(self._levels[self.dimension])

    def __repr__(self):
        sizes = ",".join(str(len(self._levels[i])) for i in range(self.dimension + 1))
        return f"SimplicialComplex(d={self.dimension}, sizes=[{sizes}])"

    # -- labels -----------------------------------------------------------

    def face_label(self, face):
        """Face as its sorted vertex labels joined by commas."""
        return ",".join(self.vertex_labels[v] for v in face)

    def face_from_labels(self, labels):
        """Face from an iterable of vertex labels; FaceNotInComplex if absent."""
        index = {lab: v for v, lab in enumerate(self.vertex_labels)}
        try:
            face = tuple(sorted(index[lab] for lab in labels))
        except KeyError as exc:
            raise FaceNotInComplex(f"unknown vertex label {exc}") from None
        if face not in self._face_set:
            raise FaceNotInComplex(f"{tuple(labels)} is not a face")
        return face

    # -- derived complexes ---------------------------------------------

    def link(self, sigma):
        """The link: faces containing ``sigma``, with ``sigma`` removed.

        The result is a pure complex of dimension ``d - len(sigma)`` whose
        vertex labels are inherited; the degree of ``tau`` in the link
        equals the degree of ``tau | sigma`` here.
        """
        if sigma not in self._face_set:
            raise FaceNotInComplex(f"{sigma!r} is not a face")
        if not sigma:
            return self
        s = set(sigma)
        tops = [
            tuple(v for v in top if v not in s)
            for top in self._levels[self.dimension]
            if s.issubset(top)
        ]
        old = sorted({v for t in tops for v in t})
        remap = {v: k for k, v in enumerate(old)}
        labels = tuple(self.vertex_labels[v] for v in old)
        tops = [tuple(remap[v] for v in t) for t in tops]
        return _from_top_faces(tops, labels)

    def cochain(self, i, members):
        """An i-cochain (a validated set of i-faces of this complex)."""
        return Cochain(self, i, frozenset(members))


@dataclass(frozen=True)
class Cochain:
    """A set of i-faces of a fixed dimension in a host complex."""

    complex: SimplicialComplex
    dimension: int
    members: frozenset

    def __post_init__(self):
        d = self.complex.dimension
        if not -1 <= self.dimension <= d:
            raise LevelOutOfRange(f"cochain level {self.dimension} outside [-1, {d}]")
        for f in self.members:
            if len(f) != self.dimension + 1:
                raise DimensionMismatch(
                    f"{f!r} is not a {self.dimension}-face"
                )
            if f not in self.complex:
                raise FaceNotInComplex(f"{f!r} is not a face")

    def __contains__(self, face):
        return face in self.members

    def __len__(self):
        return len(self.members)

    def sorted_members(self):
        return tuple(sorted(self.members))


# ---------------------------------------------------------------------------
# construction


def _close_down(top_faces):
    """Downward closure of index-tuple top faces, with degree counts."""
    d = len(top_faces[0]) - 1
    degree = {}
    for top in top_faces:
        for k in range(d + 2):
            for sub in combinations(top, k):
                degree[sub] = degree.get(sub, 0) + 1
    levels = {}
    for i in range(-1, d + 1):
        levels[i] = tuple(sorted(f for f in degree if len(f) == i + 1))
    cofaces = {f: [] for f in degree}
    for i in range(0, d + 1):
        for f in levels[i]:
            for k in range(len(f)):
                cofaces[f[:k] + f[k + 1:]].append(f)
    cofaces = {f: tuple(sorted(set(c))) for f, c in cofaces.items()}
    return d, levels, degree, cofaces


def _from_top_faces(top_faces, labels):
    tops = sorted(set(top_faces))
    d, levels, degree, cofaces = _close_down(tops)
    return SimplicialComplex(d, levels, degree, cofaces, labels)


def build_complex(maximal_faces):
    """Build the downward closure of equal-size maximal faces.

    Parameters
    ----------
    maximal_faces : iterable of iterables of str
        Each inner iterable is one maximal face given by vertex labels.
        All maximal faces must have the same cardinality (purity is
        enforced at input rather than repaired).

    Returns
    -------
    SimplicialComplex
        Labels are mapped to dense indices in sorted label order; faces
        are stored lexicographically on indices.
    """
    raw = [tuple(f) for f in maximal_faces]
    if not raw:
        raise EmptyInput("no maximal faces supplied")
    for f in raw:
        if len(set(f)) != len(f):
            raise DuplicateVertexInFace(f"face {f} repeats a label")
    sizes = {len(f) for f in raw}
    if len(sizes) != 1:
        raise MixedDimension(f"maximal faces of sizes {sorted(sizes)}")
    if sizes == {0}:
        raise EmptyInput("maximal faces must contain at least one vertex")
    labels = tuple(sorted({lab for f in raw for lab in f}))
    index = {lab: v for v, lab in enumerate(labels)}
    tops = [tuple(sorted(index[lab] for lab in f)) for f in raw]
    return _from_top_faces(tops, labels)


def validate_complex(x):
    """Re-check every structural invariant; raise InvalidComplex on failure.

    Checks: strictly sorted faces, downward closure, purity, degree map
    equal to a recount, and the degree-sum identity
    ``sum_{sigma in X(i)} deg(sigma) = C(d+1, i+1) * #top`` at every level.
    """
    d = x.dimension
    tops = x.faces(d)
    for i in range(-1, d + 1):
        for f in x.faces(i):
            if list(f) != sorted(set(f)):
                raise InvalidComplex(f"face {f!r} not strictly sorted")
            if i > -1:
                for k in range(len(f)):
                    if f[:k] + f[k + 1:] not in x:
                        raise InvalidComplex(f"closure fails below {f!r}")
            recount = sum(1 for t in tops if set(f).issubset(t))
            if recount != x.degree(f):
                raise InvalidComplex(
                    f"degree of {f!r}: stored {x.degree(f)}, recount {recount}"
                )
            if recount == 0:
                raise InvalidComplex(f"purity fails at {f!r}")
        if x.degree_sum(i) != comb(d + 1, i + 1) * len(tops):
            raise InvalidComplex(f"degree-sum identity fails at level {i}")
    return True


# ---------------------------------------------------------------------------
# norms and chain probabilities


def norm(w):
    """Degree-weighted norm of a cochain, exact in [0, 1].

    ``norm(W) = sum_{sigma in W} deg(sigma) / sum_{tau in X(i)} deg(tau)``;
    this equals the probability that the descending face chain passes
    through ``W`` at level i.
    """
    x = w.complex
    if not w.members:
        return Fraction(0)
    num = sum(x.degree(f) for f in w.members)
    return Fraction(num, x.degree_sum(w.dimension))


def localize(w, sigma):
    """Restrict a cochain to the link of ``sigma``.

    Returns the cochain ``{tau in X_sigma | tau + sigma in W}`` living in
    ``link(sigma)``, of dimension ``dim(W) - len(sigma)``.
    """
    x = w.complex
    if sigma not in x:
        raise FaceNotInComplex(f"{sigma!r} is not a face")
    if len(sigma) - 1 >= w.dimension:
        raise DimensionMismatch(
            f"dim(sigma)={len(sigma)-1} must be below dim(W)={w.dimension}"
        )
    lk = x.link(sigma)
    if not sigma:
        return lk.cochain(w.dimension, w.members)
    # link() remaps surviving vertices by sorted original index; rebuild that map
    label_to_new = {lab: k for k, lab in enumerate(lk.vertex_labels)}
    s = set(sigma)
    members = []
    for f in w.members:
        if s.issubset(f):
            members.append(
                tuple(label_to_new[x.vertex_labels[v]] for v in f if v not in s)
            )
    return lk.cochain(w.dimension - len(sigma), members)


def link_norm_at(x, upper, sigma):
    """Exact ``norm`` of ``upper`` localized to the link of ``sigma``.

    ``upper`` must be a cochain one level above ``sigma``; computed
    directly from coface degree sums, without materializing the link.
    """
    if upper.dimension != len(sigma):
        raise DimensionMismatch("upper cochain must sit one level above sigma")
    num = 0
    den = 0
    for rho in x.cofaces(sigma):
        dg = x.degree(rho)
        den += dg
        if rho in upper.members:
            num += dg
    return Fraction(num, den)


def chain_joint_prob(x, upper_level, upper_pred, lower_level, lower_pred):
    """Exact joint probability of two events along the descending chain.

    Computes ``Pr[upper_pred(P_k) and lower_pred(P_m)]`` for levels
    ``m < k``, using the marginal ``Pr[P_k = sigma] = deg(sigma) /
    (C(d+1,k+1) * #top)`` and, conditioned on ``P_k = sigma``, the uniform
    distribution of ``P_m`` over the m-faces inside ``sigma``.

    Parameters
    ----------
    x : SimplicialComplex
    upper_level, lower_level : int
        Levels ``k`` and ``m`` with ``-1 <= m < k <= d``.
    upper_pred, lower_pred : callable
        Predicates on k-faces and m-faces respectively.
    """
    d = x.dimension
    k, m = upper_level, lower_level
    if not (-1 <= m < k <= d):
        raise LevelOutOfRange(f"need -1 <= m < k <= {d}, got m={m} k={k}")
    marginal_den = comb(d + 1, k + 1) * x.top_count()
    sub_total = comb(k + 1, m + 1)
    total = Fraction(0)
    for sigma in x.faces(k):
        if not upper_pred(sigma):
            continue
        hits = sum(1 for rho in combinations(sigma, m + 1) if lower_pred(rho))
        if hits:
            total += Fraction(x.degree(sigma) * hits, marginal_den * sub_total)
    return total


def level_prob(x, w):
    """``Pr[P_i in W]`` for a cochain; identical to :func:`norm`."""
    return norm(w)


# ---------------------------------------------------------------------------
# .cplx text format

_WS = b" \t\r\x0b\x0c"


def parse_cplx(data: bytes):
    """Parse the ``.cplx`` text format into a complex.

    One maximal face per line, whitespace-separated vertex labels; lines
    beginning ``#`` are comments; blank lines ignored.  Labels are
    arbitrary non-whitespace byte sequences, decoded latin-1 so that any
    byte round-trips.
    """
    faces = []
    for line in data.split(b"\n"):
        stripped = line.strip(_WS)
        if not stripped or stripped.startswith(b"#"):
            continue
        faces.append([tok.decode("latin-1") for tok in stripped.split()])
    return build_complex(faces)


def read_cplx(path):
    """Read a complex from a ``.cplx`` file."""
    with open(path, "rb") as fh:
        return parse_cplx(fh.read())


def format_cplx(x, comment=None):
    """Serialize the top faces of a complex in ``.cplx`` format."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for top in x.faces(x.dimension):
        lines.append(" ".join(x.vertex_labels[v] for v in top))
    return "\n".join(lines) + "\n"


def write_cplx(x, path, comment=None):
    with open(path, "wb") as fh:
        fh.write(format_cplx(x, comment).encode("latin-1"))
