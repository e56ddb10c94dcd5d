"""Generators, the independent verifier, brute-force oracles and audits."""

from .verify import Verdict, certified_tree_connected, verify, verify_family

__all__ = ["Verdict", "certified_tree_connected", "verify", "verify_family"]
