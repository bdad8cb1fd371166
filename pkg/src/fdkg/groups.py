"""Prime-order group abstraction.

Two interchangeable backends:

- MultiplicativeGroup: subgroup of Z_p* of prime order q.  A small instance
  (TEST_GROUP) keeps exhaustive tests and brute-force oracles feasible.
- CurveGroup: prime-order elliptic-curve subgroup (secp256k1 by default),
  the production configuration.

Scalars are plain Python ints reduced mod the group order q.  Every group
exposes a coordinate map chi(element) -> scalar used by the PKE layer; the
only requirement on chi is determinism.
"""

from __future__ import annotations

from dataclasses import dataclass


class GroupError(Exception):
    """Invalid group element or parameter."""


def scalar_byte_width(q: int) -> int:
    return (q.bit_length() + 7) // 8


def scalar_to_bytes(value: int, q: int) -> bytes:
    return (value % q).to_bytes(scalar_byte_width(q), "big")


class Group:
    """Interface shared by all group backends.

    Elements are opaque values; use only the methods below to combine them.
    Canonical encodings are injective and stable across versions: they feed
    Fiat-Shamir transcripts and on-disk ceremony transcripts.
    """

    name: str
    order: int  # prime q

    def generator(self):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def exp(self, a, e: int):
        raise NotImplementedError

    def encode(self, a) -> bytes:
        raise NotImplementedError

    def decode(self, data: bytes):
        raise NotImplementedError

    def chi(self, a) -> int:
        """Deterministic coordinate map GroupElement -> Z_q."""
        raise NotImplementedError

    def scalar_bytes(self, value: int) -> bytes:
        return scalar_to_bytes(value, self.order)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def base_exp(self, e: int):
        return self.exp(self.generator(), e)


@dataclass(frozen=True)
class MultiplicativeGroup(Group):
    """Order-q subgroup of Z_p*, elements stored as canonical ints in [1, p)."""

    p: int
    q: int
    g: int
    name: str = "modp"

    def __post_init__(self):
        if pow(self.g, self.q, self.p) != 1 or self.g == 1:
            raise GroupError("generator does not have order q")

    @property
    def order(self) -> int:
        return self.q

    def generator(self) -> int:
        return self.g

    def identity(self) -> int:
        return 1

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def exp(self, a: int, e: int) -> int:
        return pow(a, e % self.q, self.p)

    def encode(self, a: int) -> bytes:
        width = (self.p.bit_length() + 7) // 8
        return a.to_bytes(width, "big")

    def decode(self, data: bytes) -> int:
        a = int.from_bytes(data, "big")
        if not 1 <= a < self.p or pow(a, self.q, self.p) != 1:
            raise GroupError("not a subgroup element")
        return a

    def chi(self, a: int) -> int:
        return a % self.q


# Affine point; None is the point at infinity.
Point = "tuple[int, int] | None"


@dataclass(frozen=True)
class CurveGroup(Group):
    """Short-Weierstrass curve y^2 = x^3 + ax + b over F_p with prime order q."""

    p: int
    a: int
    b: int
    q: int
    gx: int
    gy: int
    name: str = "curve"

    @property
    def order(self) -> int:
        return self.q

    def generator(self):
        return (self.gx, self.gy)

    def identity(self):
        return None

    def mul(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        p = self.p
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            lam = (3 * x1 * x1 + self.a) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        y3 = (lam * (x1 - x3) - y1) % p
        return (x3, y3)

    def inv(self, P):
        if P is None:
            return None
        x, y = P
        return (x, (-y) % self.p)

    def exp(self, P, e: int):
        e %= self.q
        result = None
        addend = P
        while e:
            if e & 1:
                result = self.mul(result, addend)
            addend = self.mul(addend, addend)
            e >>= 1
        return result

    def encode(self, P) -> bytes:
        width = (self.p.bit_length() + 7) // 8
        if P is None:
            return b"\x00" * (width + 1)
        x, y = P
        prefix = b"\x03" if y & 1 else b"\x02"
        return prefix + x.to_bytes(width, "big")

    def decode(self, data: bytes):
        width = (self.p.bit_length() + 7) // 8
        if len(data) != width + 1:
            raise GroupError("bad point encoding length")
        if data[0] == 0:
            return None
        if data[0] not in (2, 3):
            raise GroupError("bad point prefix")
        x = int.from_bytes(data[1:], "big")
        p = self.p
        rhs = (x * x * x + self.a * x + self.b) % p
        y = pow(rhs, (p + 1) // 4, p)  # p = 3 mod 4 for supported curves
        if y * y % p != rhs:
            raise GroupError("x not on curve")
        if (y & 1) != (data[0] & 1):
            y = p - y
        return (x, y)

    def chi(self, P) -> int:
        if P is None:
            return 0
        return P[0] % self.q


# Small safe-prime subgroup: p = 2q + 1, generator 4 = 2^2 has order q.
TEST_GROUP = MultiplicativeGroup(p=2027, q=1013, g=4, name="modp-2027")

SECP256K1 = CurveGroup(
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F,
    a=0,
    b=7,
    q=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141,
    gx=0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
    gy=0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8,
    name="secp256k1",
)

GROUPS = {g.name: g for g in (TEST_GROUP, SECP256K1)}
