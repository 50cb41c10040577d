"""
Level structures (N, G) with G a subgroup of (Z/NZ)^x, and the group Gamma_G.
"""

from dataclasses import dataclass
from math import gcd

from utils.errors import InvalidInput
from utils.helpers import parse_subgroup, unit_residues


@dataclass(frozen=True)
class LevelStructure:
    """A level N together with a subgroup G of (Z/NZ)^x, stored sorted."""

    N: int
    G: tuple

    def __post_init__(self):
        N = self.N
        if not isinstance(N, int) or N < 1:
            raise InvalidInput(f"level must be a positive integer, got {N}")
        G = tuple(sorted({t % N for t in self.G}))
        if not G:
            raise InvalidInput("subgroup is empty")
        bad = [t for t in G if gcd(t, N) != 1]
        if bad:
            raise InvalidInput(f"{bad} not in (Z/{N}Z)^x")
        if 1 % N not in G:
            raise InvalidInput(f"subgroup {list(G)} does not contain 1")
        members = set(G)
        for s in G:
            for t in G:
                if s * t % N not in members:
                    raise InvalidInput(f"subgroup {list(G)} is not closed: {s}*{t} = {s * t % N} mod {N}")
        object.__setattr__(self, "G", G)

    @classmethod
    def parse(cls, N, text):
        return cls(N, tuple(parse_subgroup(text, N)))

    @classmethod
    def trivial(cls, N):
        return cls(N, (1 % N,))

    @classmethod
    def full(cls, N):
        return cls(N, tuple(unit_residues(N)))

    def contains(self, t):
        return t % self.N in self.G

    def is_full(self):
        return len(self.G) == len(unit_residues(self.N))

    def is_subgroup_of(self, other):
        return self.N == other.N and set(self.G) <= set(other.G)

    def to_json(self):
        return {"N": self.N, "G": list(self.G)}

    def tag(self):
        return "-".join(str(t) for t in self.G)


def gamma_g_contains(gamma, L):
    """gamma = [[t, *], [0, *]] mod N with t in G."""
    return gamma.r % L.N == 0 and L.contains(gamma.p)
