"""Exception hierarchy shared by every nilring module."""

from __future__ import annotations


class NilringError(Exception):
    """Base class for all engine errors."""


class InvalidParameter(NilringError, ValueError):
    pass


class AxiomViolation(NilringError):
    """Tables fail a ring axiom; ``witness`` is the offending element tuple."""

    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{axiom} fails at {self.witness}")


class CapExceeded(NilringError):
    pass


class SidednessError(NilringError):
    pass


class MixedRing(NilringError):
    pass


class MixedSidedness(NilringError):
    pass


class NotCommutative(NilringError):
    pass


class ZeroIdealNotCovered(NilringError):
    pass


class InternalInconsistency(NilringError):
    pass


class NotMono(NilringError):
    pass


class ZeroInClosure(NilringError):
    """Zero is reachable as a product of seed elements.

    ``chain`` lists the successive partial products ending in zero.
    """

    def __init__(self, chain: list[str]):
        self.chain = list(chain)
        super().__init__("0 lies in the multiplicative closure: " + " -> ".join(self.chain))


class CorpusParseError(NilringError):
    pass


class BudgetExhausted(NilringError):
    pass
