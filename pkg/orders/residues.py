"""
The finite group (O/NO)^x and membership in P_G(O, N).
"""

import logging
from functools import lru_cache
from math import gcd

import gmpy2

from orders.ideals import IdealLat, principal_gen, unit_group
from quadforms.forms import reduced_reps
from utils.errors import NotPrimeToN

logger = logging.getLogger(__name__)


def _mul_mod(O, u, v, N):
    yy = u[1] * v[1]
    return ((u[0] * v[0] - O.cO * yy) % N, (u[0] * v[1] + u[1] * v[0] - O.bO * yy) % N)


def unit_residues(O, N):
    """(O/NO)^x as residue pairs (x mod N, y mod N); x + y*tau is a unit iff its norm is prime to N."""
    return [
        (x, y)
        for x in range(N)
        for y in range(N)
        if gcd(x * x - O.bO * x * y + O.cO * y * y, N) == 1
    ]


@lru_cache(maxsize=128)
def residue_subgroup(O, N, G):
    """The subgroup of (O/NO)^x generated by the rational residues in G and the units of O."""
    gens = {(t % N, 0) for t in G}
    gens |= {(u.x % N, u.y % N) for u in unit_group(O)}
    one = (1 % N, 0)
    members = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = _mul_mod(O, h, g, N)
                if k not in members:
                    members.add(k)
                    nxt.append(k)
        frontier = nxt
    return frozenset(members)


def residue_of(x, N, O):
    """The class in (O/NO)^x attached to x = (u/v) * nu0 * O, or None when x is not principal."""
    u, v = x.scale.numerator, x.scale.denominator
    if gcd(u * v * x.a, N) != 1:
        raise NotPrimeToN(f"ideal {x} is not prime to {N}")
    gen = principal_gen(IdealLat(1, x.a, x.b), O)
    if gen is None:
        return None
    k = u * int(gmpy2.invert(v, N)) % N if N > 1 else 0
    return ((gen.nu.x * k) % N, (gen.nu.y * k) % N)


def in_PG(x, N, G, O):
    residue = residue_of(x, N, O)
    if residue is None:
        return False
    return residue in residue_subgroup(O, N, tuple(sorted(G)))


def expected_class_count(O, N, G):
    """h(D) * |(O/NO)^x| / |H| with H generated by G and the units of O."""
    h = len(reduced_reps(O.D))
    units = len(unit_residues(O, N))
    sub = len(residue_subgroup(O, N, tuple(sorted(G))))
    count, rem = divmod(h * units, sub)
    if rem:
        logger.warning("⚠️ class count %d * %d not divisible by %d", h, units, sub)
    return count
