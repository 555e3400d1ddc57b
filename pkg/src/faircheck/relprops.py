"""Decision procedures for temporal properties under the fairness reading.

A system satisfies a property within fairness when restricting the system to
the property-conforming computations loses no finite behavior: every prefix
the system can produce still extends to a conforming computation.  The dual
notion, relative safety, confines violations to computations that are limits
of conforming prefixes.  Together they are equivalent to plain satisfaction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    Alphabet,
    AlphabetMismatchError,
    BuchiAutomaton,
    LassoWord,
    accepting_lasso,
    language_equal,
    language_subset,
    lasso_membership,
    limit,
    prefix_automaton,
    product,
    sample_accepted_lassos,
)
from .pltl import Formula, Labeling, to_buchi


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure, with a counterexample when it fails.

    The witness is a finite word (tuple of symbols) for prefix-level checks
    and a LassoWord for computation-level checks.
    """

    holds: bool
    witness: tuple[str, ...] | LassoWord | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class PropertySpec:
    """A linear-time property packaged as a complementary automaton pair.

    positive accepts the property's computations, complement accepts exactly
    the rest.  Formula-built specs carry their origin for reporting.
    """

    positive: BuchiAutomaton
    complement: BuchiAutomaton
    formula: Formula | None = None
    labeling: Labeling | None = None

    def __post_init__(self) -> None:
        if self.positive.alphabet != self.complement.alphabet:
            raise AlphabetMismatchError(
                "property automata disagree on the alphabet: "
                f"{self.positive.alphabet.symbols} vs {self.complement.alphabet.symbols}"
            )

    @property
    def alphabet(self) -> Alphabet:
        return self.positive.alphabet

    @classmethod
    def from_formula(
        cls,
        formula: Formula,
        alphabet: Alphabet,
        labeling: Labeling | None = None,
    ) -> "PropertySpec":
        if labeling is None:
            labeling = Labeling.canonical(alphabet)
        pos, neg = to_buchi(formula, alphabet, labeling)
        return cls(pos, neg, formula, labeling)

    @classmethod
    def from_automata(
        cls, positive: BuchiAutomaton, complement: BuchiAutomaton
    ) -> "PropertySpec":
        """Package a pre-built pair, spot-checking that it is complementary.

        Exact complementation is out of reach without a complement
        construction, so sampled lassos from each side are tested against the
        other; a shared lasso or a lasso rejected by both raises ValueError.
        """
        spec = cls(positive, complement)
        for x in sample_accepted_lassos(positive):
            if lasso_membership(x, complement):
                raise ValueError(
                    f"automata are not complementary: both accept {x.as_text()}"
                )
        for x in sample_accepted_lassos(complement):
            if lasso_membership(x, positive):
                raise ValueError(
                    f"automata are not complementary: both accept {x.as_text()}"
                )
        return spec


def _check_alphabet(system: BuchiAutomaton, p: PropertySpec) -> None:
    if system.alphabet != p.alphabet:
        raise AlphabetMismatchError(
            "system and property disagree on the alphabet: "
            f"{system.alphabet.symbols} vs {p.alphabet.symbols}"
        )


def is_relative_liveness(system: BuchiAutomaton, p: PropertySpec) -> Verdict:
    """Does the system satisfy the property within fairness?

    Holds when every finite behavior of the system is a prefix of some
    conforming computation, i.e. the conforming part of the system has the
    same prefixes as the whole system.  The witness on failure is a shortest
    system prefix with no conforming continuation.
    """
    _check_alphabet(system, p)
    all_prefixes = prefix_automaton(system)
    good_prefixes = prefix_automaton(product(system, p.positive))
    equal, witness = language_equal(all_prefixes, good_prefixes)
    if equal:
        return Verdict(True)
    return Verdict(False, witness)


satisfies_within_fairness = is_relative_liveness


def is_relative_safety(system: BuchiAutomaton, p: PropertySpec) -> Verdict:
    """Is the property safe relative to the system?

    Holds when every system computation that is a limit of conforming
    prefixes actually conforms.  The witness on failure is such a limit
    computation outside the property.
    """
    _check_alphabet(system, p)
    good_prefixes = prefix_automaton(product(system, p.positive))
    boundary = limit(good_prefixes)
    bad = product(product(system, boundary), p.complement)
    x = accepting_lasso(bad)
    if x is None:
        return Verdict(True)
    return Verdict(False, x)


def satisfies(system: BuchiAutomaton, p: PropertySpec) -> Verdict:
    """Plain satisfaction: every system computation conforms."""
    _check_alphabet(system, p)
    x = accepting_lasso(product(system, p.complement))
    if x is None:
        return Verdict(True)
    return Verdict(False, x)


def is_machine_closed(system: BuchiAutomaton, sub: BuchiAutomaton) -> Verdict:
    """Does every finite behavior of the system extend into the sublanguage?

    The caller promises the sublanguage is contained in the system; that
    inclusion is only spot-checked on sampled lassos.
    """
    if system.alphabet != sub.alphabet:
        raise AlphabetMismatchError(
            "system and sublanguage disagree on the alphabet: "
            f"{system.alphabet.symbols} vs {sub.alphabet.symbols}"
        )
    for x in sample_accepted_lassos(sub):
        if not lasso_membership(x, system):
            raise ValueError(
                f"sublanguage is not contained in the system: {x.as_text()}"
            )
    ok, witness = language_subset(prefix_automaton(system), prefix_automaton(sub))
    if ok:
        return Verdict(True)
    return Verdict(False, witness)


def is_safety_property(p: PropertySpec, alphabet: Alphabet) -> bool:
    """Is the property closed under limits of its own prefixes?"""
    if alphabet != p.alphabet:
        raise AlphabetMismatchError(
            "property alphabet mismatch: "
            f"{alphabet.symbols} vs {p.alphabet.symbols}"
        )
    boundary = limit(prefix_automaton(p.positive))
    return accepting_lasso(product(boundary, p.complement)) is None
