"""Twisted involutions of a Coxeter system.

Work happens in the extended group: pairs (x, alpha) with x in W and alpha a
diagram automorphism, multiplied by (x, alpha)(y, beta) = (x * alpha(y),
alpha o beta).  For an involutive automorphism theta, the twisted
involutions are the elements w = (x, theta) with w^2 = (e, id), i.e.
theta(x) = x^{-1}.  They carry:

* an action of the generators,  s |*| w  (written ``kappa`` here): with
  w = (x, theta), if s*x != x*theta(s) then s |*| w = (s*x*theta(s), theta),
  otherwise s |*| w = (s*x, theta);
* a rank function rho with rho(s |*| w) = rho(w) + 1 exactly when
  l(s*x) = l(x) + 1 (each step changes l(x) by 1 if s*x = x*theta(s),
  else by 2);
* Bruhat order inherited from W on the x-component.

A ``TwistedBlock`` enumerates one theta's worth of twisted involutions by
breadth-first search from the identity and precomputes, for every generator
s and element index i, the triple (target index, commutes flag, rank-up
flag) that all module arithmetic downstream consumes.

>>> W = parse_system("A2")
>>> blk = TwistedBlock(W, (0, 1))
>>> [len(x) for x in blk.elements]
[0, 1, 1, 3]
>>> blk.rho
[0, 1, 1, 2]
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .coxeter import CoxeterSystem, Word, parse_system

Perm = tuple[int, ...]
GroupElt = tuple[Word, Perm]  # element (x, alpha) of the extended group


class NotAnInvolution(ValueError):
    """theta is not an involutive diagram automorphism, or w is not twisted-involutive."""


# ----------------------------------------------------------------------
# the extended group W x| Aut(W, S)

def check_automorphism(system: CoxeterSystem, perm: Sequence[int]) -> Perm:
    p = tuple(perm)
    if sorted(p) != list(range(system.rank)):
        raise ValueError(f"not a permutation of range({system.rank}): {p}")
    for a in range(system.rank):
        for b in range(a + 1, system.rank):
            if system.matrix[p[a]][p[b]] != system.matrix[a][b]:
                raise ValueError(f"permutation {p} does not preserve the Coxeter matrix")
    return p


def compose_perms(alpha: Perm, beta: Perm) -> Perm:
    """alpha o beta (apply beta first)."""
    return tuple(alpha[b] for b in beta)


def invert_perm(alpha: Perm) -> Perm:
    out = [0] * len(alpha)
    for i, a in enumerate(alpha):
        out[a] = i
    return tuple(out)


def mult_plus(system: CoxeterSystem, a: GroupElt, b: GroupElt) -> GroupElt:
    """(x, alpha)(y, beta) = (x * alpha(y), alpha o beta)."""
    (x, alpha), (y, beta) = a, b
    word = system.multiply(x, system.apply_automorphism(alpha, y))
    return (word, compose_perms(alpha, beta))


def inverse_plus(system: CoxeterSystem, a: GroupElt) -> GroupElt:
    (x, alpha) = a
    ai = invert_perm(alpha)
    return (system.apply_automorphism(ai, system.inverse(x)), ai)


def is_twisted_involution(system: CoxeterSystem, theta: Sequence[int], word: Iterable[int]) -> bool:
    """True iff theta^2 = id and theta(x) = x^{-1}."""
    t = check_automorphism(system, theta)
    if compose_perms(t, t) != system.identity_perm():
        return False
    x = system.reduce(word)
    return system.apply_automorphism(t, x) == system.inverse(x)


def involutive_automorphisms(system: CoxeterSystem) -> list[Perm]:
    """All involutive diagram automorphisms, identity first."""
    ident = system.identity_perm()
    out = [p for p in system.automorphisms() if compose_perms(p, p) == ident]
    out.sort(key=lambda p: (p != ident, p))
    return out


def parse_theta(system: CoxeterSystem, text: str) -> Perm:
    """Parse a theta argument: 'id' or a comma-separated permutation like '1,0'."""
    text = text.strip()
    if text == "id":
        return system.identity_perm()
    try:
        perm = tuple(int(p.strip()) for p in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse theta {text!r}: expected 'id' or e.g. '1,0'") from exc
    return check_automorphism(system, perm)


# ----------------------------------------------------------------------
# the |*| action and the rank function

def kappa(system: CoxeterSystem, theta: Sequence[int], s: int, word: Iterable[int]) -> Word:
    """x-component of s |*| (x, theta)."""
    x = system.reduce(word)
    sx = system.left_mult(s, x)
    if sx == system.right_mult(x, theta[s]):
        return sx
    return system.right_mult(sx, theta[s])


def rho_recursive(system: CoxeterSystem, theta: Sequence[int], word: Iterable[int]) -> int:
    """Rank of a twisted involution, computed by descending one step at a time.

    Independent of any enumeration: uses only that the first letter of the
    normal form is a length-lowering generator.
    """
    x = system.reduce(word)
    if not x:
        return 0
    s = x[0]
    return 1 + rho_recursive(system, theta, kappa(system, theta, s, x))


# ----------------------------------------------------------------------

class TwistedBlock:
    """All twisted involutions for one involutive theta, with action tables.

    ``elements`` is sorted by (length, ShortLex word) -- a linear extension
    of Bruhat order.  ``cross[s][i] = (j, commutes, up)`` describes
    s |*| elements[i] = elements[j]; ``commutes`` is the s*x = x*theta(s)
    flag and ``up`` says rho goes up.
    """

    def __init__(self, system: CoxeterSystem, theta: Sequence[int]) -> None:
        self.system = system
        self.theta = check_automorphism(system, theta)
        if compose_perms(self.theta, self.theta) != system.identity_perm():
            raise NotAnInvolution(f"theta = {self.theta} is not involutive")
        rank = system.rank

        rho_of: dict[Word, int] = {(): 0}
        frontier: list[Word] = [()]
        while frontier:
            nxt: list[Word] = []
            for x in frontier:
                r = rho_of[x]
                for s in range(rank):
                    y = kappa(system, self.theta, s, x)
                    up = len(y) > len(x)
                    if y in rho_of:
                        expected = r + 1 if up else r - 1
                        if rho_of[y] != expected:
                            raise RuntimeError(
                                f"inconsistent rank at {y}: {rho_of[y]} vs {expected}"
                            )
                    elif up:
                        rho_of[y] = r + 1
                        nxt.append(y)
            frontier = nxt

        self.elements: list[Word] = sorted(rho_of, key=lambda w: (len(w), w))
        self.index: dict[Word, int] = {w: i for i, w in enumerate(self.elements)}
        self.rho: list[int] = [rho_of[w] for w in self.elements]
        self.cross: list[list[tuple[int, bool, bool]]] = []
        for s in range(rank):
            row = []
            for x in self.elements:
                sx = system.left_mult(s, x)
                commutes = sx == system.right_mult(x, self.theta[s])
                y = sx if commutes else system.right_mult(sx, self.theta[s])
                row.append((self.index[y], commutes, len(y) > len(x)))
            self.cross.append(row)
        self._lower: dict[int, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"TwistedBlock({self.system!r}, theta={self.theta}, size={len(self)})"

    def leq(self, i: int, j: int) -> bool:
        """Bruhat order on the block (same theta, order on x-components)."""
        return self.system.bruhat_leq(self.elements[i], self.elements[j])

    def lower_indices(self, j: int) -> tuple[int, ...]:
        """Indices of all elements <= elements[j], ascending."""
        cached = self._lower.get(j)
        if cached is None:
            cached = tuple(
                i for i in range(j + 1) if self.leq(i, j)
            )  # elements are sorted by length, so i > j cannot be <= j
            self._lower[j] = cached
        return cached

    def length(self, i: int) -> int:
        return len(self.elements[i])


def twisted_involutions(system: CoxeterSystem, theta: Sequence[int]) -> list[Word]:
    """The twisted involutions for theta, sorted by (length, ShortLex)."""
    return TwistedBlock(system, theta).elements


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
