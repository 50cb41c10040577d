"""
Enumeration of the Gamma_G-classes of Q(D, N) and the group law carried over
from I(O, N)/P_G(O, N).

Within the SL2(Z)-class of a reduced form R, the forms are R^gamma and
R^gamma = R^(alpha*gamma) for alpha in Aut(R). Gamma_G-classes therefore
correspond to primitive first columns (p, r) of gamma mod N, up to the left
action of Aut(R) and scaling by G. A class meets Q(D, N) iff R(p, r) is prime
to N.
"""

import logging
from itertools import product
from math import gcd
from threading import Lock

import gmpy2

from orders.ideals import ideal_conj, ideal_from_form, ideal_inv, ideal_mul
from orders.residues import expected_class_count, in_PG
from quadforms.forms import UniMat, apply, automorphs, in_level_set, reduce, reduced_reps
from utils.errors import AmbiguousClass, IncompatibleLevels, NotInLevelSet, VerificationFailed

logger = logging.getLogger(__name__)


def _orbit(vector, auts, L):
    v0, v1 = vector
    N = L.N
    return {
        ((alpha.p * v0 + alpha.q * v1) * t % N, (alpha.r * v0 + alpha.s * v1) * t % N)
        for alpha in auts
        for t in L.G
    }


def _best_lift(R, orbit, N):
    """The form of least (a, |b|, b) over small coprime lifts of the orbit's first columns."""
    box = 2
    while True:
        best = None
        for v0, v1 in sorted(orbit):
            for k, l in product(range(-box, box + 1), repeat=2):
                p, r = v0 + k * N, v1 + l * N
                if gcd(p, r) != 1:
                    continue
                _, u, w = gmpy2.gcdext(p, r)
                gamma = UniMat(p, -int(w), r, int(u))
                form = apply(R, gamma)
                shift = (form.a - form.b) // (2 * form.a)
                form = apply(form, UniMat.translation(shift))
                key = (form.a, abs(form.b), form.b)
                if best is None or key < best[0]:
                    best = (key, form)
        if best is not None:
            return best[1]
        box *= 2


class FormClassGroup:
    """The classes C_{Gamma_G}(D, N) with reps[0] the principal form."""

    def __init__(self, order, level):
        self.order = order
        self.level = level
        self.reps = []
        self._index = {}
        self._auts = {}
        self._enumerate()
        self._ideals = [ideal_from_form(Q, order) for Q in self.reps]
        self._table = {}
        self._inverses = {}
        self._conjugates = {}
        self.lock = Lock()

    def __len__(self):
        return len(self.reps)

    @property
    def disc(self):
        return self.order.D

    @property
    def N(self):
        return self.level.N

    def _key(self, R, vector):
        return min(_orbit(vector, self._auts[R], self.level))

    def _enumerate(self):
        N = self.level.N
        for R in reduced_reps(self.order.D):
            self._auts[R] = automorphs(R)
            seen = set()
            # the identity column first, so the principal form lands at index 0
            vectors = sorted(product(range(N), repeat=2), key=lambda v: v != (1 % N, 0))
            for vector in vectors:
                if gcd(gcd(vector[0], vector[1]), N) != 1:
                    continue
                key = self._key(R, vector)
                if key in seen:
                    continue
                seen.add(key)
                if gcd(R(*vector), N) != 1:
                    continue
                orbit = _orbit(vector, self._auts[R], self.level)
                self._index[(R, key)] = len(self.reps)
                self.reps.append(_best_lift(R, orbit, N))
        principal = self.order.principal_form()
        if not self.reps or self.reps[0] != principal:
            raise VerificationFailed(f"principal form {principal} did not come first")
        logger.info("✅ D=%d N=%d G=%s: %d classes", self.order.D, N, list(self.level.G), len(self.reps))

    def class_of(self, Q):
        if not in_level_set(Q, self.order.D, self.level.N):
            raise NotInLevelSet(f"{Q} is not in Q({self.order.D}, {self.level.N})")
        R, gamma = reduce(Q)
        inv = gamma.inverse()
        key = self._key(R, (inv.p % self.level.N, inv.r % self.level.N))
        return self._index[(R, key)]

    def ideal(self, i):
        return self._ideals[i]

    def class_of_ideal(self, x):
        """The unique class whose ideal is P_G-equivalent to x."""
        O, L = self.order, self.level
        hits = [k for k, y in enumerate(self._ideals) if in_PG(ideal_mul(x, ideal_inv(y, O), O), L.N, L.G, O)]
        if len(hits) != 1:
            raise AmbiguousClass(f"ideal {x} matched classes {hits}")
        return hits[0]

    def identity(self):
        return 0

    def compose(self, i, j):
        if i > j:
            i, j = j, i
        with self.lock:
            cached = self._table.get((i, j))
        if cached is not None:
            return cached
        k = self.class_of_ideal(ideal_mul(self._ideals[i], self._ideals[j], self.order))
        with self.lock:
            self._table[(i, j)] = k
        return k

    def inverse(self, i):
        with self.lock:
            cached = self._inverses.get(i)
        if cached is not None:
            return cached
        k = self.class_of_ideal(ideal_inv(self._ideals[i], self.order))
        with self.lock:
            self._inverses[i] = k
        return k

    def conjugate(self, i):
        """The class of the conjugate ideal; differs from the inverse when some norms fall outside G."""
        with self.lock:
            cached = self._conjugates.get(i)
        if cached is not None:
            return cached
        k = self.class_of_ideal(ideal_conj(self._ideals[i]))
        with self.lock:
            self._conjugates[i] = k
        return k

    def power(self, i, n):
        if n < 0:
            return self.power(self.inverse(i), -n)
        out = 0
        for _ in range(n):
            out = self.compose(out, i)
        return out

    def table(self):
        n = len(self)
        return [[self.compose(i, j) for j in range(n)] for i in range(n)]

    def expected_count(self):
        return expected_class_count(self.order, self.level.N, self.level.G)

    def to_json(self, with_table=False):
        payload = {
            "disc": self.order.D,
            "N": self.level.N,
            "G": list(self.level.G),
            "classes": [Q.to_json() for Q in self.reps],
        }
        if with_table:
            payload["table"] = self.table()
        return payload


def enumerate_classes(O, L):
    return FormClassGroup(O, L)


class SignedClassGroup:
    """C^+- as pairs (class, sign); (i, -1) stands for [i] followed by complex conjugation,
    which acts on the classes through conjugate ideals."""

    def __init__(self, base):
        self.base = base
        self.elements = [(i, s) for s in (1, -1) for i in range(len(base))]

    def __len__(self):
        return len(self.elements)

    def identity(self):
        return (0, 1)

    def conjugation(self):
        return (0, -1)

    def compose(self, x, y):
        (i, s), (j, t) = x, y
        j = j if s == 1 else self.base.conjugate(j)
        return (self.base.compose(i, j), s * t)

    def class_of(self, signed_form):
        return (self.base.class_of(signed_form.form), signed_form.sign)


def signed_classes(CG):
    return SignedClassGroup(CG)


def natural_surjection(CG1, CG2):
    """Index map C_{Gamma_G1} -> C_{Gamma_G2} for G1 inside G2."""
    if CG1.order.D != CG2.order.D or not CG1.level.is_subgroup_of(CG2.level):
        raise IncompatibleLevels(
            f"cannot map D={CG1.order.D} {CG1.level.to_json()} onto D={CG2.order.D} {CG2.level.to_json()}"
        )
    return [CG2.class_of(Q) for Q in CG1.reps]
