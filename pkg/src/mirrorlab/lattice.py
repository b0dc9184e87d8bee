"""Directions on Z^d and the admissible mirror matchings.

A direction is encoded as an integer code in ``[0, 2d)``:

    code 2*j   -> +e_{j+1}      code 2*j+1 -> -e_{j+1}

so negation is ``code ^ 1``.  A matching is a permutation ``m`` of the 2d
direction codes, stored as a tuple of length 2d, subject to

* bijection on the codes,
* reversibility   m(-m(v)) = -v  for every v,
* no head-on      m(v) != -v     for every v.

The set of all such matchings in dimension d has size (2d-1)!!.  The
identity is always a member; a site holding the identity matching is
transparent to the walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, CouplingInvariantError
from .rng import Stream

MIN_DIMENSION = 2
MAX_DIMENSION = 8


def negate(code: int) -> int:
    return code ^ 1

def axis_of(code: int) -> int:
    return code >> 1

def sign_of(code: int) -> int:
    return 1 - ((code & 1) << 1)


def direction_vector(code: int, d: int) -> tuple:
    """Unit vector of a direction code, as a length-d tuple."""
    v = [0] * d
    v[code >> 1] = 1 - ((code & 1) << 1)
    return tuple(v)


def identity_table(d: int) -> tuple:
    return tuple(range(2 * d))


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def validate_matching(table) -> bool:
    """True iff ``table`` encodes a valid matching; False on malformed input."""
    try:
        entries = [int(x) for x in table]
    except (TypeError, ValueError):
        return False
    n = len(entries)
    if n < 4 or n % 2:
        return False
    if any(not 0 <= x < n for x in entries):
        return False
    if len(set(entries)) != n:
        return False
    for v in range(n):
        if entries[v] == v ^ 1:                 # head-on
            return False
        if entries[entries[v] ^ 1] != v ^ 1:    # reversibility m(-m(v)) = -v
            return False
    return True


def apply_matching(table, code: int) -> int:
    """Image of a direction code under a matching table."""
    return table[code]


@dataclass(frozen=True)
class MirrorFamily:
    """All matchings of one dimension, in canonical (lexicographic) order.

    Immutable after construction; safe to share between threads.  The
    numpy view ``table_array`` (shape ``(size, 2d)``, int64) backs the
    vectorized walk ensembles.
    """

    dimension: int
    members: tuple
    identity_index: int
    index_of: dict = field(repr=False)
    table_array: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def sample_index(self, stream: Stream) -> int:
        return stream.uniform_index(len(self.members))


def enumerate_matchings(d: int) -> MirrorFamily:
    """Enumerate the full matching family of dimension d.

    Backtracking with constraint propagation: repeatedly assign the
    lowest unassigned direction v to some admissible image w (w != -v),
    which forces m(-w) = -v by reversibility; abandon branches breaking
    bijectivity.  The result is sorted lexicographically by table.
    """
    if not MIN_DIMENSION <= d <= MAX_DIMENSION:
        raise ConfigurationError(f"dimension must be in [{MIN_DIMENSION}, {MAX_DIMENSION}], got {d}")
    n = 2 * d
    members = []
    table = [-1] * n
    used = [False] * n

    def extend():
        v = -1
        for c in range(n):
            if table[c] < 0:
                v = c
                break
        if v < 0:
            members.append(tuple(table))
            return
        for w in range(n):
            if used[w] or w == v ^ 1:
                continue
            wN, vN = w ^ 1, v ^ 1
            forced_pair = wN != v  # unless the forced slot is v itself
            if forced_pair and table[wN] >= 0:
                if table[wN] != vN:
                    continue
                table[v] = w
                used[w] = True
                extend()
                used[w] = False
                table[v] = -1
            else:
                if forced_pair and used[vN]:
                    continue
                table[v] = w
                used[w] = True
                if forced_pair:
                    table[wN] = vN
                    used[vN] = True
                extend()
                if forced_pair:
                    used[vN] = False
                    table[wN] = -1
                used[w] = False
                table[v] = -1
        return

    extend()
    members.sort()
    members = tuple(members)
    expected = double_factorial(2 * d - 1)
    assert len(members) == expected, (len(members), expected)
    index_of = {m: i for i, m in enumerate(members)}
    return MirrorFamily(
        dimension=d,
        members=members,
        identity_index=index_of[identity_table(d)],
        index_of=index_of,
        table_array=np.array(members, dtype=np.int64),
    )


def sample_matching(family: MirrorFamily, stream: Stream):
    """Uniform member of the family (uniform index, rejection-free)."""
    return family.members[stream.uniform_index(family.size)]


def matchings_avoiding(family: MirrorFamily, e: int, e_tilde: int):
    """The admissible set for rule (4): members m with m(e_tilde) != -e."""
    ne = e ^ 1
    return [m for m in family.members if m[e_tilde] != ne]


def rule4_transform(m_tilde, e: int, e_tilde: int):
    """Coupling rule (4): swap the roles of e and e_tilde in a matching.

    Given m with m(e_tilde) != -e, returns the unique matching m' with

        m'(e) = m(e_tilde),   m'(e_tilde) = m(e),

    completed by reversibility (m'(-m(e_tilde)) = -e and
    m'(-m(e)) = -e_tilde) and agreeing with m outside the two disturbed
    reversibility pairs {e, -m(e)} and {e_tilde, -m(e_tilde)}.  The map
    is an involution on the admissible set, and the images under m' of
    e and of e_tilde under m coincide, which is what re-couples the
    walk velocities.
    """
    if e == e_tilde:
        raise CouplingInvariantError("rule-4 transform needs two distinct directions")
    a = m_tilde[e]
    b = m_tilde[e_tilde]
    if b == e ^ 1:
        raise CouplingInvariantError("matching outside the admissible set for rule (4)")
    out = list(m_tilde)
    out[e] = b
    out[e_tilde] = a
    out[b ^ 1] = e ^ 1
    out[a ^ 1] = e_tilde ^ 1
    return tuple(out)
