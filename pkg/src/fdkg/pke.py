"""ElGamal-variant encryption used to deliver shares to guardians.

The plaintext is a scalar, masked by the coordinate of a random point M:
    C1 = G^k,  M = G^r,  C2 = pk^k * M,  delta = chi(M) - m  (mod q)
Decryption recomputes M = C2 * (C1^sk)^-1 exactly, so the two-to-one
behaviour of chi on curves never causes ambiguity.  Integrity is enforced
by proofs, not by the ciphertext itself.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PkeKeyPair:
    sk: int
    pk: object  # group element, pk = G^sk


@dataclass(frozen=True)
class PkeCiphertext:
    c1: object
    c2: object
    delta: int

    def to_bytes(self, group) -> bytes:
        return group.encode(self.c1) + group.encode(self.c2) + group.scalar_bytes(self.delta)


@dataclass(frozen=True)
class EncRandomness:
    k: int
    r: int


def pke_keygen(group, rng) -> PkeKeyPair:
    sk = rng.randrange(1, group.order)
    return PkeKeyPair(sk, group.base_exp(sk))


def sample_enc_randomness(group, rng) -> EncRandomness:
    # zero randomness is mathematically valid but insecure; never sample it
    return EncRandomness(rng.randrange(1, group.order), rng.randrange(1, group.order))


def pke_encrypt(group, pk, m: int, rand: EncRandomness) -> PkeCiphertext:
    c1 = group.base_exp(rand.k)
    mask = group.base_exp(rand.r)
    c2 = group.mul(group.exp(pk, rand.k), mask)
    delta = (group.chi(mask) - m) % group.order
    return PkeCiphertext(c1, c2, delta)


def pke_decrypt(group, sk: int, ct: PkeCiphertext) -> int:
    mask = group.div(ct.c2, group.exp(ct.c1, sk))
    return (group.chi(mask) - ct.delta) % group.order
