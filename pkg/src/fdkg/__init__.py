"""Federated distributed key generation toolkit.

Subpackages: group/Shamir algebra, the share-delivery encryption channel,
sigma-protocol proofs, the two-round protocol state machine, a broadcast
harness with fault injection, a Monte-Carlo liveness simulator, a
threshold-decryption election pipeline, and a communication cost model.
"""

from .groups import GROUPS, SECP256K1, TEST_GROUP
from .protocol import Params

__all__ = ["GROUPS", "SECP256K1", "TEST_GROUP", "Params"]

__version__ = "0.1.0"
