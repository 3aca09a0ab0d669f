"""Permutations of the punctures and a deterministic Schreier-Sims engine.

Points are 1-based in every public function (cycle notation, ``apply``,
``canonical_r``); a :class:`Perm` stores its images 0-based.
Products compose right-to-left: ``(p * q)(i) == p(q(i))``.
"""

from dataclasses import dataclass
from itertools import combinations
from math import factorial


class SearchBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Perm:
    images: tuple

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images, base=0):
        imgs = tuple(int(x) - base for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection: {images}")
        return cls(imgs)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from 1-based cycles, e.g. ``Perm.from_cycles(5, [(1, 5), (2, 4)])``."""
        img = list(range(n))
        for cyc in cycles:
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                img[x - 1] = y - 1
        return cls.from_images(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1] + 1

    def __mul__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def is_involution(self):
        return (self * self).is_identity()

    def fixed_points(self):
        return [i + 1 for i, j in enumerate(self.images) if i == j]

    def cycles(self):
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i + 1]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def is_even(self):
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def canonical_r(b, which):
    """The puncture involutions r1, r2, r3 on {1..b}.

    r1: i -> b+1-i;  r2: i -> b-i with b fixed;  r3: fixes 1 and b,
    i -> b+1-i on 2..b-1.  For b <= 1 all three are the identity.
    """
    if b < 0:
        raise ValueError("b must be >= 0")
    if b <= 1:
        return Perm.identity(b)
    img = list(range(1, b + 1))
    if which == "r1":
        img = [b + 1 - i for i in range(1, b + 1)]
    elif which == "r2":
        img = [b - i for i in range(1, b)] + [b]
    elif which == "r3":
        img = [1] + [b + 1 - i for i in range(2, b)] + [b]
    else:
        raise ValueError(f"unknown involution {which!r}")
    return Perm.from_images(img, base=1)


def pairing_involution(b, fixed=0):
    """(1,2)(3,4)... on the first b - fixed points, fixing the last ``fixed``."""
    if (b - fixed) % 2 or fixed > b:
        raise ValueError(f"cannot pair {b - fixed} points")
    cycles = [(i, i + 1) for i in range(1, b - fixed, 2)]
    return Perm.from_cycles(b, cycles)


# --- Schreier-Sims ----------------------------------------------------------

def _mul(p, q):
    return tuple(p[j] for j in q)


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class PermGroup:
    """Base and strong generating set for a permutation group.

    Deterministic: the base is extended with the smallest moved point, and
    Schreier generators are processed in a fixed order.
    """

    def __init__(self, gens, degree):
        self.degree = degree
        self.generators = [g if isinstance(g, Perm) else Perm.from_images(g) for g in gens]
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self._ident = tuple(range(degree))
        self.base = []
        self.strong = []
        self._build()

    # orbit of base[i] under level-i strong generators, with coset reps
    def _transversal(self, i):
        pt = self.base[i]
        gens = self._level_gens(i)
        reps = {pt: self._ident}
        queue = [pt]
        for x in queue:
            ux = reps[x]
            for s in gens:
                y = s[x]
                if y not in reps:
                    reps[y] = _mul(s, ux)
                    queue.append(y)
        return reps

    def _level_gens(self, i):
        prefix = self.base[:i]
        return [s for s in self.strong if all(s[p] == p for p in prefix)]

    def _strip(self, g):
        for i, pt in enumerate(self.base):
            y = g[pt]
            rep = self._reps[i].get(y)
            if rep is None:
                return g, i
            g = _mul(_inv(rep), g)
        return g, len(self.base)

    def _moved_point(self, g):
        return next(i for i in range(self.degree) if g[i] != i)

    def _build(self):
        for gen in self.generators:
            g = gen.images
            if g == self._ident or g in self.strong:
                continue
            self.strong.append(g)
            if all(g[p] == p for p in self.base):
                self.base.append(self._moved_point(g))
        self._reps = [self._transversal(i) for i in range(len(self.base))]
        i = len(self.base) - 1
        while i >= 0:
            restart = None
            gens = self._level_gens(i)
            reps = self._reps[i]
            for x in sorted(reps):
                ux = reps[x]
                for s in gens:
                    sx = _mul(s, ux)
                    y = sx[self.base[i]]
                    schreier = _mul(_inv(reps[y]), sx)
                    if schreier == self._ident:
                        continue
                    h, j = self._strip(schreier)
                    if h != self._ident:
                        if j == len(self.base):
                            self.base.append(self._moved_point(h))
                            self._reps.append(None)
                        self.strong.append(h)
                        for lvl in range(i + 1, j + 1):
                            self._reps[lvl] = self._transversal(lvl)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    def order(self):
        n = 1
        for reps in self._reps:
            n *= len(reps)
        return n

    def __contains__(self, perm):
        g = perm.images if isinstance(perm, Perm) else tuple(perm)
        if len(g) != self.degree:
            return False
        h, j = self._strip(g)
        return h == self._ident and j == len(self.base)

    def is_symmetric(self):
        return self.order() == factorial(self.degree)


def schreier_sims(gens, b):
    return PermGroup(gens, b)


def involutions_with_fixed_points(b, fixed_points):
    """Yield every involution of {1..b} with exactly ``fixed_points`` fixed points."""
    if (b - fixed_points) % 2 or fixed_points > b or fixed_points < 0:
        return
    for fix in combinations(range(b), fixed_points):
        rest = [i for i in range(b) if i not in fix]
        for matching in _perfect_matchings(rest):
            img = list(range(b))
            for x, y in matching:
                img[x], img[y] = y, x
            yield Perm(tuple(img))


def _perfect_matchings(points):
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points)):
        partner = points[k]
        rest = points[1:k] + points[k + 1:]
        for m in _perfect_matchings(rest):
            yield [(first, partner)] + m


def complement_search(b, fixed_points, limit=11):
    """First involution s (in generation order) with ``<r1, r2, s> = Sym_b``.

    Returns ``None`` when the exhaustive search over all involutions with the
    given number of fixed points finds nothing.
    """
    if b > limit:
        raise SearchBudgetExceeded(f"exhaustive search is bounded to b <= {limit}")
    r1, r2 = canonical_r(b, "r1"), canonical_r(b, "r2")
    target = factorial(b)
    for s in involutions_with_fixed_points(b, fixed_points):
        if PermGroup([r1, r2, s], b).order() == target:
            return s
    return None
