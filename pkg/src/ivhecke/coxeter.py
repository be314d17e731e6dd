"""Coxeter systems with exact word arithmetic.

A system is given by its Coxeter matrix (symmetric, 1 on the diagonal,
off-diagonal entries >= 2, with 0 standing for infinity).  Group elements
are represented as plain tuples of generator indices in ShortLex-minimal
reduced form: among all reduced words for an element, the lexicographically
smallest.  The empty tuple is the identity.

Normal forms are computed by Tits' solution to the word problem: a word is
reduced iff no word in its braid-move closure contains an adjacent equal
pair, and two reduced words represent the same element iff they are
connected by braid moves alone.  The closure search memoizes every word it
visits, so once a finite group has been enumerated all products reduce to
table lookups.

Bruhat order uses the lifting property: for s a left descent of w,
x <= w iff (sx <= sw if sx < x else x <= sw).

>>> W = parse_system("A2")
>>> W.reduce((0, 1, 0, 1))
(1, 0)
>>> W.bruhat_leq((0,), (1, 0))
True
>>> [len(w) for w in W.elements()]
[0, 1, 1, 2, 2, 3]
"""

from __future__ import annotations

import itertools
import json
import os
import re
from collections import deque
from typing import Iterable, Optional, Sequence, Union

Word = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_WORD_CAP = int(os.environ.get("IVHECKE_WORD_CAP", "64"))
DEFAULT_MAX_ELEMENTS = int(os.environ.get("IVHECKE_MAX_ELEMENTS", "200000"))


class InfiniteOrTooLarge(RuntimeError):
    """Enumeration exceeded the configured element bound."""


class WordLengthExceeded(ValueError):
    """An input word is longer than the configured cap."""


class InvalidCoxeterMatrix(ValueError):
    pass


def _validate_matrix(matrix: Sequence[Sequence[int]]) -> Matrix:
    n = len(matrix)
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != n for row in m):
        raise InvalidCoxeterMatrix("matrix is not square")
    for i in range(n):
        if m[i][i] != 1:
            raise InvalidCoxeterMatrix(f"diagonal entry m[{i}][{i}] = {m[i][i]} != 1")
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise InvalidCoxeterMatrix(f"matrix not symmetric at ({i},{j})")
            if i != j and m[i][j] != 0 and m[i][j] < 2:
                raise InvalidCoxeterMatrix(
                    f"off-diagonal entry m[{i}][{j}] = {m[i][j]} must be >= 2 or 0 (= infinity)"
                )
    return m


# ----------------------------------------------------------------------
# named systems

def _chain(n: int, bonds: dict[tuple[int, int], int]) -> list[list[int]]:
    mat = [[2] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 1
    for (a, b), m in bonds.items():
        mat[a][b] = m
        mat[b][a] = m
    return mat


def coxeter_matrix_from_name(name: str) -> Matrix:
    """Coxeter matrix for a named finite-type system: A3, B2, D4, E6, F4, H3, I2(7)...

    For I2(m), m = 0 means the infinite dihedral group.
    """
    name = name.strip()
    m2 = re.fullmatch(r"I2\((\d+)\)", name)
    if m2:
        m = int(m2.group(1))
        if m == 1:
            raise InvalidCoxeterMatrix("I2(1) is not a Coxeter system; use I2(0) for infinity")
        return _validate_matrix(_chain(2, {(0, 1): m}))
    m1 = re.fullmatch(r"([ABDEFH])(\d+)", name)
    if not m1:
        raise InvalidCoxeterMatrix(f"unrecognized system name: {name!r}")
    letter, n = m1.group(1), int(m1.group(2))
    bonds = {(i, i + 1): 3 for i in range(n - 1)}
    if letter == "A":
        if n < 1:
            raise InvalidCoxeterMatrix("A_n needs n >= 1")
    elif letter == "B":
        if n < 2:
            raise InvalidCoxeterMatrix("B_n needs n >= 2")
        bonds[(n - 2, n - 1)] = 4
    elif letter == "D":
        if n < 3:
            raise InvalidCoxeterMatrix("D_n needs n >= 3")
        bonds = {(i, i + 1): 3 for i in range(n - 2)}
        bonds[(n - 3, n - 1)] = 3
    elif letter == "E":
        if n not in (6, 7, 8):
            raise InvalidCoxeterMatrix("E_n needs n in {6, 7, 8}")
        # chain 0-1-...-(n-2) with node n-1 attached to node 2
        bonds = {(i, i + 1): 3 for i in range(n - 2)}
        bonds[(2, n - 1)] = 3
    elif letter == "F":
        if n != 4:
            raise InvalidCoxeterMatrix("only F4 exists")
        bonds[(1, 2)] = 4
    elif letter == "H":
        if n not in (3, 4):
            raise InvalidCoxeterMatrix("H_n needs n in {3, 4}")
        bonds[(0, 1)] = 5
    return _validate_matrix(_chain(n, bonds))


def parse_system(spec: Union[str, dict], **kwargs) -> "CoxeterSystem":
    """Build a CoxeterSystem from a name ("B3", "I2(7)"), a JSON string, or a dict.

    The JSON/dict form is {"rank": n, "matrix": [[...]]} with 0 = infinity.
    """
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            try:
                data = json.loads(s)
            except json.JSONDecodeError as exc:
                raise InvalidCoxeterMatrix(f"bad JSON system: {exc}") from exc
            return parse_system(data, **kwargs)
        return CoxeterSystem(coxeter_matrix_from_name(s), name=s, **kwargs)
    if isinstance(spec, dict):
        if "matrix" not in spec:
            raise InvalidCoxeterMatrix("JSON system needs a 'matrix' field")
        mat = spec["matrix"]
        if "rank" in spec and int(spec["rank"]) != len(mat):
            raise InvalidCoxeterMatrix("declared rank does not match matrix size")
        return CoxeterSystem(mat, name=spec.get("name"), **kwargs)
    raise InvalidCoxeterMatrix(f"cannot parse system from {type(spec).__name__}")


# ----------------------------------------------------------------------

class CoxeterSystem:
    """A Coxeter system (W, S) with S = range(rank).

    The instance memoizes braid-closure computations, so it should be
    shared and reused; all words returned by its methods are ShortLex
    normal forms.
    """

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        name: Optional[str] = None,
        max_word_length: int = DEFAULT_WORD_CAP,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
    ) -> None:
        self.matrix = _validate_matrix(matrix)
        self.rank = len(self.matrix)
        self.name = name
        self.max_word_length = max_word_length
        self.max_elements = max_elements
        self._nf: dict[Word, Word] = {(): ()}
        for s in range(self.rank):
            self._nf[(s,)] = (s,)
        self._elements: Optional[list[Word]] = None
        self._index: dict[Word, int] = {}
        self._right: list[list[int]] = []
        self._left: list[list[int]] = []
        self._inv: list[int] = []
        self._bruhat: dict[tuple[Word, Word], bool] = {}

    def __repr__(self) -> str:
        label = self.name or f"rank-{self.rank}"
        return f"CoxeterSystem({label})"

    def bond(self, s: int, t: int) -> int:
        """m(s, t); 0 means infinity."""
        return self.matrix[s][t]

    def system_json(self) -> Union[str, dict]:
        """The form used in serialized tables: the name if there is one."""
        if self.name:
            return self.name
        return {"rank": self.rank, "matrix": [list(r) for r in self.matrix]}

    # ------------------------------------------------------------------
    # the word problem

    def check_word(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        if len(w) > self.max_word_length:
            raise WordLengthExceeded(
                f"word of length {len(w)} exceeds the cap {self.max_word_length}"
            )
        for c in w:
            if not (0 <= c < self.rank):
                raise ValueError(f"letter {c} out of range for rank {self.rank}")
        return w

    def reduce(self, word: Iterable[int]) -> Word:
        """ShortLex normal form of the element represented by ``word``."""
        return self._reduce(self.check_word(word))

    def _reduce(self, word: Word) -> Word:
        nf = self._nf.get(word)
        if nf is not None:
            return nf
        matrix = self.matrix
        seen = {word}
        queue = deque((word,))
        while queue:
            w = queue.popleft()
            n = len(w)
            for i in range(n - 1):
                a, b = w[i], w[i + 1]
                if a == b:
                    # not reduced: cancel the pair and restart two letters down
                    res = self._reduce(w[:i] + w[i + 2 :])
                    for u in seen:
                        self._nf[u] = res
                    return res
                m = matrix[a][b]
                if m and i + m <= n:
                    run_ok = True
                    for k in range(2, m):
                        if w[i + k] != (a if k % 2 == 0 else b):
                            run_ok = False
                            break
                    if not run_ok:
                        continue
                    flipped = tuple(b if k % 2 == 0 else a for k in range(m))
                    new = w[: i] + flipped + w[i + m :]
                    if new in seen:
                        continue
                    hit = self._nf.get(new)
                    if hit is not None:
                        for u in seen:
                            self._nf[u] = hit
                        return hit
                    seen.add(new)
                    queue.append(new)
        # no adjacent pair anywhere in the braid closure: the word is reduced,
        # and `seen` is the complete set of its reduced expressions
        nf = min(seen)
        for u in seen:
            self._nf[u] = nf
        return nf

    def length(self, word: Iterable[int]) -> int:
        return len(self.reduce(word))

    def multiply(self, a: Iterable[int], b: Iterable[int]) -> Word:
        """Normal form of the product a * b."""
        a = self.reduce(a)
        b = self.reduce(b)
        if self._elements is not None:
            i = self._index[a]
            right = self._right
            for s in b:
                i = right[i][s]
            return self._elements[i]
        return self._reduce(a + b)

    def inverse(self, a: Iterable[int]) -> Word:
        a = self.reduce(a)
        if self._elements is not None:
            return self._elements[self._inv[self._index[a]]]
        return self._reduce(tuple(reversed(a)))

    def left_mult(self, s: int, a: Word) -> Word:
        """Normal form of s * a, for a already in normal form."""
        if self._elements is not None:
            return self._elements[self._left[self._index[a]][s]]
        return self._reduce((s,) + a)

    def right_mult(self, a: Word, s: int) -> Word:
        """Normal form of a * s, for a already in normal form."""
        if self._elements is not None:
            return self._elements[self._right[self._index[a]][s]]
        return self._reduce(a + (s,))

    def is_descent(self, s: int, word: Iterable[int], side: str = "left") -> bool:
        """True iff multiplying by s on the given side shortens the element."""
        w = self.reduce(word)
        if side == "left":
            return len(self.left_mult(s, w)) < len(w)
        if side == "right":
            return len(self.right_mult(w, s)) < len(w)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def left_descents(self, word: Iterable[int]) -> list[int]:
        w = self.reduce(word)
        return [s for s in range(self.rank) if self.is_descent(s, w, "left")]

    def right_descents(self, word: Iterable[int]) -> list[int]:
        w = self.reduce(word)
        return [s for s in range(self.rank) if self.is_descent(s, w, "right")]

    # ------------------------------------------------------------------
    # Bruhat order

    def bruhat_leq(self, x: Iterable[int], w: Iterable[int]) -> bool:
        """x <= w in Bruhat order (via the lifting property)."""
        return self._bruhat_leq(self.reduce(x), self.reduce(w))

    def _bruhat_leq(self, x: Word, w: Word) -> bool:
        if not x:
            return True
        if len(x) > len(w):
            return False
        if x == w:
            return True
        key = (x, w)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        s = w[0]  # a left descent of w
        sw = w[1:] if self._elements is None else self._elements[self._left[self._index[w]][s]]
        if self._elements is None:
            sw = self._reduce(sw)
        sx = self.left_mult(s, x)
        if len(sx) < len(x):
            res = self._bruhat_leq(sx, sw)
        else:
            res = self._bruhat_leq(x, sw)
        self._bruhat[key] = res
        return res

    # ------------------------------------------------------------------
    # enumeration

    def _ensure_tables(self) -> None:
        if self._elements is not None:
            return
        cap = self.max_elements
        found: set[Word] = {()}
        frontier: list[Word] = [()]
        while frontier:
            nxt: set[Word] = set()
            for u in frontier:
                for s in range(self.rank):
                    w = self._reduce(u + (s,))
                    if len(w) > len(u) and w not in found:
                        if len(w) > self.max_word_length:
                            raise InfiniteOrTooLarge(
                                f"element longer than the word cap {self.max_word_length}"
                            )
                        found.add(w)
                        nxt.add(w)
                        if len(found) > cap:
                            raise InfiniteOrTooLarge(
                                f"more than {cap} elements; raise max_elements if intended"
                            )
            frontier = sorted(nxt)
        elements = sorted(found, key=lambda w: (len(w), w))
        index = {w: i for i, w in enumerate(elements)}
        self._elements = elements
        self._index = index
        # with every element's braid closure memoized, these are all O(len) lookups
        self._right = [
            [index[self._reduce(w + (s,))] for s in range(self.rank)] for w in elements
        ]
        self._left = [
            [index[self._reduce((s,) + w)] for s in range(self.rank)] for w in elements
        ]
        self._inv = [index[self._reduce(tuple(reversed(w)))] for w in elements]

    def elements(self) -> list[Word]:
        """All elements, sorted by (length, ShortLex word).  Finite systems only."""
        self._ensure_tables()
        assert self._elements is not None
        return self._elements

    def element_index(self, word: Iterable[int]) -> int:
        self._ensure_tables()
        return self._index[self.reduce(word)]

    def order(self) -> int:
        return len(self.elements())

    def enumerate(self, max_length: Optional[int] = None) -> list[Word]:
        """Elements of length <= max_length (all of them if None)."""
        if max_length is None:
            return self.elements()
        # breadth-first without requiring the group to be finite
        found: set[Word] = {()}
        frontier: list[Word] = [()]
        while frontier:
            nxt: set[Word] = set()
            for u in frontier:
                if len(u) >= max_length:
                    continue
                for s in range(self.rank):
                    w = self._reduce(u + (s,))
                    if len(w) > len(u) and w not in found:
                        found.add(w)
                        nxt.add(w)
                        if len(found) > self.max_elements:
                            raise InfiniteOrTooLarge(
                                f"more than {self.max_elements} elements of length <= {max_length}"
                            )
            frontier = sorted(nxt)
        return sorted(found, key=lambda w: (len(w), w))

    def longest_element(self) -> Word:
        """The longest element w0.  Raises InfiniteOrTooLarge on infinite systems."""
        els = self.elements()
        w0 = els[-1]
        if len(els) > 1 and len(els[-2]) == len(w0):
            raise RuntimeError("no unique longest element; enumeration is inconsistent")
        return w0

    # ------------------------------------------------------------------
    # diagram automorphisms

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All permutations of S preserving the Coxeter matrix, sorted."""
        out = []
        for perm in itertools.permutations(range(self.rank)):
            if all(
                self.matrix[perm[a]][perm[b]] == self.matrix[a][b]
                for a in range(self.rank)
                for b in range(a + 1, self.rank)
            ):
                out.append(perm)
        return sorted(out)

    def apply_automorphism(self, perm: Sequence[int], word: Iterable[int]) -> Word:
        """Image of the element under the diagram automorphism s_i -> s_perm[i]."""
        w = self.reduce(word)
        return self._reduce(tuple(perm[c] for c in w))

    def identity_perm(self) -> tuple[int, ...]:
        return tuple(range(self.rank))


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
