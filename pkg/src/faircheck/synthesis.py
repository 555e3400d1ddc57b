"""Synthesis of fair finite-state implementations.

A system that satisfies a property within fairness can be turned into one
that satisfies it outright.  Take a reduced Buchi automaton for the
conforming computations, keep its transition structure as the new system,
and remember the former accepting states as fairness marks: the runs that
visit a mark infinitely often are declared the fair computations, and every
one of them conforms.  Because the system satisfied the property within
fairness to begin with, dropping the acceptance condition loses no
behaviors, so the marked structure is a faithful implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    BuchiAutomaton,
    FinAutomaton,
    LassoWord,
    accepting_lasso,
    canonicalize,
    language_equal,
    lasso_membership,
    limit,
    prefix_automaton,
    product,
    reduce_buchi,
)
from .relprops import PropertySpec, Verdict, is_relative_liveness

__all__ = [
    "FairLts",
    "PreconditionFailedError",
    "enumerate_fair_lassos",
    "synthesize_fair_impl",
    "verify_fair_impl",
]


class PreconditionFailedError(Exception):
    """The construction's hypothesis does not hold for the given inputs."""

    def __init__(self, message: str, verdict: Verdict | None = None) -> None:
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class FairLts:
    """A labelled transition system with strong-fairness marks.

    The underlying automaton carries no acceptance distinction (every state
    accepts, so its language is prefix closed); fairness lives entirely in
    the marks.  Fair computations are the runs visiting a mark infinitely
    often, i.e. the language of as_buchi().
    """

    underlying: FinAutomaton
    fairness_marks: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fairness_marks", frozenset(self.fairness_marks))
        states = range(self.underlying.n_states)
        if not self.fairness_marks <= set(states):
            raise ValueError("fairness marks must be states of the underlying LTS")
        if self.underlying.accepting != frozenset(states):
            raise ValueError("the underlying LTS must accept at every state")

    def as_buchi(self) -> BuchiAutomaton:
        """The fair computations, as a Buchi automaton over the marks."""
        return BuchiAutomaton(
            self.underlying.alphabet,
            self.underlying.n_states,
            self.underlying.initial,
            self.fairness_marks,
            self.underlying.transitions,
        )


def synthesize_fair_impl(system: FinAutomaton, p: PropertySpec) -> FairLts:
    """Build a marked LTS whose fair computations all conform to p.

    Requires the system to satisfy p within fairness; under that hypothesis
    the conforming computations have the same prefixes as the system, so the
    reduced automaton for them, with acceptance demoted to marks, implements
    the system exactly.
    """
    behavior = limit(canonicalize(system))
    verdict = is_relative_liveness(behavior, p)
    if not verdict:
        raise PreconditionFailedError(
            "the system does not satisfy the property within fairness; "
            f"prefix {verdict.witness!r} has no conforming continuation",
            verdict,
        )
    conforming = reduce_buchi(product(behavior, p.positive))
    underlying = FinAutomaton(
        conforming.alphabet,
        conforming.n_states,
        conforming.initial,
        frozenset(range(conforming.n_states)),
        conforming.transitions,
    )
    return FairLts(underlying, conforming.accepting)


def verify_fair_impl(impl: FairLts, system: FinAutomaton, p: PropertySpec) -> Verdict:
    """Check that a marked LTS implements the system fairly w.r.t. p.

    Two obligations: the unmarked structure must have exactly the system's
    behaviors (compared on the prefixes of both limits), and every fair
    computation must conform to p.  The witness is a finite behavior on a
    language mismatch, or a violating fair lasso.
    """
    impl_prefixes = prefix_automaton(limit(impl.underlying))
    system_prefixes = prefix_automaton(limit(canonicalize(system)))
    same, word = language_equal(impl_prefixes, system_prefixes)
    if not same:
        return Verdict(False, word)
    violating = accepting_lasso(product(impl.as_buchi(), p.complement))
    if violating is not None:
        return Verdict(False, violating)
    return Verdict(True)


def enumerate_fair_lassos(impl: FairLts, max_len: int) -> list[LassoWord]:
    """All fair lassos with stem plus cycle at most max_len letters.

    Only canonical representatives are reported (each ultimately periodic
    word once), ordered by total length, then stem length, then letters.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    fair = impl.as_buchi()
    aut = impl.underlying
    symbols = aut.alphabet.symbols
    step: dict[tuple[int, str], set[int]] = {}
    for (src, sym, dst) in aut.transitions:
        step.setdefault((src, sym), set()).add(dst)

    found: list[LassoWord] = []

    def extend(word: tuple[str, ...], states: frozenset[int]) -> None:
        for split in range(len(word)):
            x = LassoWord(word[:split], word[split:])
            if x.normalize() == x and lasso_membership(x, fair):
                found.append(x)
        if len(word) == max_len:
            return
        for sym in symbols:
            nxt = frozenset(q for s in states for q in step.get((s, sym), ()))
            if nxt:
                extend(word + (sym,), nxt)

    if aut.initial:
        extend((), frozenset(aut.initial))
    found.sort(key=lambda x: (len(x.stem) + len(x.cycle), len(x.stem), x.stem, x.cycle))
    return found
