"""Alphabet abstractions: letter hiding and renaming as homomorphisms.

An abstraction maps each concrete letter to an abstract letter or erases it.
Images of finite words simply drop the erased letters; the image of an
infinite word is undefined when only finitely many visible letters remain.
This module constructs image and inverse-image automata, decides weak
continuation-closure (the condition under which satisfaction within fairness
transfers across the abstraction boundary), pads dead-end futures with the
reserved letter ``#``, and runs the two-sided preservation check that ties
an abstract formula to its retransformed concrete counterpart.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .automata import (
    EPS_TOKEN,
    HASH_TOKEN,
    Alphabet,
    AlphabetMismatchError,
    BuchiAutomaton,
    FinAutomaton,
    LassoWord,
    NotPrefixClosedError,
    canonicalize,
    is_prefix_closed,
    limit,
    product,
    reduce_buchi,
)
from .pltl import (
    Formula,
    Labeling,
    NotNormalFormError,
    check_normal_form,
    format_formula,
    substitute_atom,
    transform,
)
from .relprops import PropertySpec, Verdict, is_relative_liveness


class Undefined:
    """Marker for erased omega-word images.

    When an abstraction hides every letter of a lasso's cycle, the image is a
    finite word and therefore not an omega-word at all.  The single instance
    of this class stands in for that outcome; it is falsy so callers can
    branch on the result directly.
    """

    _instance: "Undefined | None" = None

    def __new__(cls) -> "Undefined":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = Undefined()


@dataclass(frozen=True)
class Homomorphism:
    """Total map from source letters to target letters or the invisible step.

    ``entries`` pairs every source letter with its image; the image is either
    a target letter (renaming) or ``eps`` (hiding).  The target alphabet may
    contain letters no source letter maps to.
    """

    source: Alphabet
    target: Alphabet
    entries: tuple[tuple[str, str], ...]

    def __post_init__(self):
        norm = tuple(sorted(tuple(e) for e in self.entries))
        object.__setattr__(self, "entries", norm)
        if tuple(sym for sym, _ in norm) != self.source.symbols:
            raise ValueError("mapping must cover every source letter exactly once")
        for sym, img in norm:
            if img != EPS_TOKEN and img not in self.target:
                raise ValueError(f"image {img!r} of {sym!r} is not a target letter")

    @classmethod
    def from_map(
        cls, source: Alphabet, target: Alphabet, mapping: dict[str, str]
    ) -> "Homomorphism":
        return cls(source, target, tuple(mapping.items()))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Homomorphism":
        return cls(alphabet, alphabet, tuple((a, a) for a in alphabet))

    @classmethod
    def hiding(cls, alphabet: Alphabet, hidden: set[str] | frozenset[str]) -> "Homomorphism":
        """Identity on all letters except the hidden ones, which are erased.

        At least one letter must stay visible, because alphabets are nonempty.
        """
        extra = set(hidden) - set(alphabet.symbols)
        if extra:
            raise ValueError(f"hidden letters {sorted(extra)} are not in the alphabet")
        target = Alphabet(tuple(a for a in alphabet if a not in hidden))
        return cls(
            alphabet,
            target,
            tuple((a, EPS_TOKEN if a in hidden else a) for a in alphabet),
        )

    @property
    def _map(self) -> dict[str, str]:
        d = self.__dict__.get("_map_cache")
        if d is None:
            d = dict(self.entries)
            object.__setattr__(self, "_map_cache", d)
        return d

    def image(self, letter: str) -> str:
        """The image of one letter; ``eps`` when the letter is hidden."""
        try:
            return self._map[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} is not in the source alphabet") from None

    @property
    def hidden(self) -> frozenset[str]:
        return frozenset(sym for sym, img in self.entries if img == EPS_TOKEN)

    def lift_hash(self) -> "Homomorphism":
        """The lifted map on #-extended alphabets; the padding letter is kept visible."""
        if HASH_TOKEN in self.source:
            return self
        return Homomorphism(
            self.source.with_hash(),
            self.target.with_hash(),
            self.entries + ((HASH_TOKEN, HASH_TOKEN),),
        )

    def labeling(self) -> Labeling:
        """Labeling that tags each source letter with its image letter.

        Hidden letters are tagged ``eps``.  Evaluating an abstract formula on
        concrete words goes through exactly this labeling.
        """
        return Labeling(tuple((sym, frozenset({img})) for sym, img in self.entries))


def _check_source(h: Homomorphism, a) -> None:
    if a.alphabet != h.source:
        raise AlphabetMismatchError(
            f"automaton alphabet {a.alphabet.symbols} differs from the "
            f"source alphabet {h.source.symbols}"
        )


def apply_hom_lasso(h: Homomorphism, x: LassoWord) -> "LassoWord | Undefined":
    """Image of a lasso word, with hidden letters dropped.

    Returns the UNDEFINED marker when the entire cycle is hidden: only
    finitely many visible letters remain, so there is no omega-image.  That
    outcome is a value rather than an exception because callers routinely
    case-split on it.
    """
    bad = x.letters() - set(h.source.symbols)
    if bad:
        raise AlphabetMismatchError(
            f"lasso letters {sorted(bad)} are not in the source alphabet"
        )
    stem = tuple(h.image(c) for c in x.stem if h.image(c) != EPS_TOKEN)
    cycle = tuple(h.image(c) for c in x.cycle if h.image(c) != EPS_TOKEN)
    if not cycle:
        return UNDEFINED
    return LassoWord(stem, cycle).normalize()


def image_automaton(h: Homomorphism, a: FinAutomaton) -> FinAutomaton:
    """Canonical automaton for the image of a finitary language.

    Hidden letters become silent moves, eliminated by forward closure before
    determinization.  Prefix-closedness is preserved: the image of a prefix
    is a prefix of the image.
    """
    _check_source(h, a)
    silent: list[set[int]] = [set() for _ in range(a.n_states)]
    for p, c, q in a.transitions:
        if h.image(c) == EPS_TOKEN:
            silent[p].add(q)
    closure: list[frozenset[int]] = []
    for p in range(a.n_states):
        seen = {p}
        stack = [p]
        while stack:
            u = stack.pop()
            for v in silent[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        closure.append(frozenset(seen))
    visible: list[list[tuple[str, int]]] = [[] for _ in range(a.n_states)]
    for p, c, q in a.transitions:
        img = h.image(c)
        if img != EPS_TOKEN:
            visible[p].append((img, q))
    transitions: set[tuple[int, str, int]] = set()
    for p in range(a.n_states):
        for p1 in closure[p]:
            for img, q in visible[p1]:
                transitions.add((p, img, q))
    accepting = frozenset(
        p for p in range(a.n_states) if closure[p] & a.accepting
    )
    return canonicalize(
        FinAutomaton(h.target, a.n_states, a.initial, accepting, transitions)
    )


def inverse_image_automaton(h: Homomorphism, a):
    """Automaton over the source alphabet for the inverse image.

    Each source letter acts like its image; hidden letters stutter in place.
    The finitary result accepts exactly the words whose image is accepted.
    The Buchi result additionally rejects words whose tail is erased forever,
    because their omega-image is undefined: a two-state component demands
    infinitely many visible letters.
    """
    if a.alphabet != h.target:
        raise AlphabetMismatchError(
            f"automaton alphabet {a.alphabet.symbols} differs from the "
            f"target alphabet {h.target.symbols}"
        )
    by_symbol: dict[str, list[tuple[int, int]]] = {}
    for p, s, q in a.transitions:
        by_symbol.setdefault(s, []).append((p, q))
    transitions: set[tuple[int, str, int]] = set()
    for c in h.source:
        img = h.image(c)
        if img == EPS_TOKEN:
            transitions |= {(q, c, q) for q in range(a.n_states)}
        else:
            transitions |= {(p, c, q) for p, q in by_symbol.get(img, ())}
    if isinstance(a, FinAutomaton):
        return canonicalize(
            FinAutomaton(h.source, a.n_states, a.initial, a.accepting, transitions)
        )
    stuttering = BuchiAutomaton(
        h.source, a.n_states, a.initial, a.accepting, transitions
    )
    # state 1 is entered by exactly the visible letters
    visible_often = BuchiAutomaton(
        h.source,
        2,
        frozenset({0}),
        frozenset({1}),
        frozenset(
            (p, c, 0 if h.image(c) == EPS_TOKEN else 1)
            for p in (0, 1)
            for c in h.source
        ),
    )
    return reduce_buchi(product(stuttering, visible_often))


def abstract_behavior(L: FinAutomaton, h: Homomorphism) -> BuchiAutomaton:
    """Buchi automaton for the abstract computations of a prefix-closed system.

    Computed as the limit of the finitary image; for prefix-closed languages
    the limit and the image commute, which is what makes this construction
    the abstract behavior.  Non-prefix-closed input is rejected outright
    since the commutation can fail there even when the image itself happens
    to be prefix-closed.
    """
    _check_source(h, L)
    if not is_prefix_closed(L):
        raise NotPrefixClosedError(
            "the abstract behavior is defined over prefix-closed languages"
        )
    return limit(image_automaton(h, L))


@dataclass(frozen=True)
class WccReport:
    """Outcome of the weak-continuation-closure decision.

    Each violation is a triple (system state, abstract state, word): the word
    drives the canonicalized system to the first state while its image drives
    the canonical image automaton to the second, and no abstract continuation
    reconciles the two quotient languages from there.
    """

    closed: bool
    violations: tuple[tuple[int, int, tuple[str, ...]], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "violations", tuple(tuple([q, d, tuple(w)]) for q, d, w in self.violations)
        )
        if self.closed != (not self.violations):
            raise ValueError("closed exactly when there are no violations")

    def __bool__(self) -> bool:
        return self.closed


def _rebased(a: FinAutomaton, q: int) -> FinAutomaton:
    return replace(a, initial=frozenset({q}))


def _step_table(a: FinAutomaton) -> dict[tuple[int, str], int]:
    # deterministic automata only; the table drops missing edges
    return {(p, c): q for p, c, q in a.transitions}


def _equal_residual_pairs(da: FinAutomaton, db: FinAutomaton) -> set[tuple[int, int]]:
    """State pairs of two deterministic automata with equal residual languages.

    Moore partition refinement over the disjoint union, with one shared
    implicit dead sink for missing edges.
    """
    symbols = da.alphabet.symbols
    na, nb = da.n_states, db.n_states
    sink = na + nb
    step = [[sink] * len(symbols) for _ in range(sink + 1)]
    for i, c in enumerate(symbols):
        for p, s, q in da.transitions:
            if s == c:
                step[p][i] = q
        for p, s, q in db.transitions:
            if s == c:
                step[na + p][i] = na + q
    block = [0] * (sink + 1)
    for p in da.accepting:
        block[p] = 1
    for p in db.accepting:
        block[na + p] = 1
    while True:
        signatures = [
            (block[s], tuple(block[t] for t in step[s])) for s in range(sink + 1)
        ]
        renumber: dict[tuple, int] = {}
        new_block = []
        for sig in signatures:
            if sig not in renumber:
                renumber[sig] = len(renumber)
            new_block.append(renumber[sig])
        if new_block == block:
            break
        block = new_block
    return {
        (p, q)
        for p in range(na)
        for q in range(nb)
        if block[p] == block[na + q]
    }


def _pair_is_closed(
    d_aut: FinAutomaton,
    d: int,
    y_aut: FinAutomaton,
    equal: set[tuple[int, int]],
    d_step: dict[tuple[int, str], int],
) -> bool:
    # look for a continuation u after which the two residuals coincide;
    # branches where the image of the concrete quotient dies are hopeless
    # because the abstract quotient is prefix-closed and never empty
    if y_aut.n_states == 0:
        return False
    y_step = _step_table(y_aut)
    start = (d, next(iter(y_aut.initial)))
    seen = {start}
    queue = deque([start])
    while queue:
        d1, y1 = queue.popleft()
        if (d1, y1) in equal:
            return True
        for c in d_aut.alphabet:
            d2 = d_step.get((d1, c))
            if d2 is None:
                continue
            y2 = y_step.get((y1, c))
            if y2 is None:
                continue
            if (d2, y2) not in seen:
                seen.add((d2, y2))
                queue.append((d2, y2))
    return False


def is_weakly_continuation_closed(L: FinAutomaton, h: Homomorphism) -> WccReport:
    """Decide whether the abstraction is weakly continuation-closed on L.

    For every word w of the (prefix-closed) language there must be an
    abstract continuation u of the image of w such that, beyond u, the
    continuations of the image coincide with the images of the continuations
    of w.  Only finitely many cases matter: the concrete quotient depends
    only on the state reached by w and the abstract quotient only on the
    image-automaton state reached by the image of w, so the check walks the
    synchronized pair graph once and decides each pair by a product search
    with residual-language equivalence as the target.
    """
    _check_source(h, L)
    A = canonicalize(L)
    if not is_prefix_closed(A):
        raise NotPrefixClosedError(
            "weak continuation-closure is checked over prefix-closed languages"
        )
    D = canonicalize(image_automaton(h, A))
    if A.n_states == 0:
        return WccReport(True, ())
    a_step = _step_table(A)
    d_step = _step_table(D)
    first = (next(iter(A.initial)), next(iter(D.initial)))
    words: dict[tuple[int, int], tuple[str, ...]] = {first: ()}
    order = [first]
    queue = deque([first])
    while queue:
        q, d = queue.popleft()
        w = words[(q, d)]
        for c in A.alphabet:
            q2 = a_step.get((q, c))
            if q2 is None:
                continue
            img = h.image(c)
            d2 = d if img == EPS_TOKEN else d_step[(d, img)]
            if (q2, d2) not in words:
                words[(q2, d2)] = w + (c,)
                order.append((q2, d2))
                queue.append((q2, d2))
    quotient_images: dict[int, FinAutomaton] = {}
    equal_cache: dict[int, set[tuple[int, int]]] = {}
    violations: list[tuple[int, int, tuple[str, ...]]] = []
    for q, d in order:
        if q not in quotient_images:
            quotient_images[q] = canonicalize(image_automaton(h, _rebased(A, q)))
            equal_cache[q] = _equal_residual_pairs(D, quotient_images[q])
        if not _pair_is_closed(D, d, quotient_images[q], equal_cache[q], d_step):
            violations.append((q, d, words[(q, d)]))
    return WccReport(not violations, tuple(violations))


def _accepts_only_epsilon(a: FinAutomaton) -> bool:
    # canonical form of the language {empty word}
    return a.n_states == 1 and not a.transitions and bool(a.accepting)


def compute_xtd(L: FinAutomaton, hom: Homomorphism | None = None) -> FinAutomaton:
    """Pad dead-end futures with the letter ``#`` so the limit keeps them.

    The plain variant loops ``#`` at every state whose residual language is
    just the empty word, i.e. after a maximal word.  The relative variant
    (``hom`` given) loops ``#`` at every state whose residual language is
    erased to the empty word by the abstraction, i.e. whose entire future is
    hidden.  The alphabet is extended by ``#`` in both variants, whether or
    not any loop was added.
    """
    A = canonicalize(L)
    if hom is not None:
        _check_source(hom, A)
    extended = A.alphabet.with_hash()
    has_out = {p for p, _, _ in A.transitions}
    loops: set[int] = set()
    for q in sorted(A.accepting):
        if hom is None:
            if q not in has_out:
                loops.add(q)
        elif _accepts_only_epsilon(canonicalize(image_automaton(hom, _rebased(A, q)))):
            loops.add(q)
    transitions = set(A.transitions) | {(q, HASH_TOKEN, q) for q in loops}
    return canonicalize(
        FinAutomaton(extended, A.n_states, A.initial, A.accepting, transitions)
    )


def within_fairness_finitary(L: FinAutomaton, labeling: Labeling, f: Formula) -> Verdict:
    """Does the finitary language satisfy the formula within fairness?

    Maximal words are padded with ``#`` (labeled as invisible steps) so the
    limit loses no information about terminating computations; the padded
    limit is then checked for relative liveness against the formula.
    """
    padded = compute_xtd(L)
    spec = PropertySpec.from_formula(f, padded.alphabet, labeling.eps_extension())
    return is_relative_liveness(limit(padded), spec)


@dataclass(frozen=True)
class PreserveReport:
    """Two-sided outcome of the abstraction preservation pipeline.

    The abstract verdict concerns the formula on the image behavior, the
    concrete verdict its retransformation on the original behavior.  The two
    are interchangeable exactly when the abstraction is weakly
    continuation-closed; otherwise ``note`` records which single direction,
    if any, still transfers.
    """

    wcc: WccReport
    abstract_holds: bool
    concrete_holds: bool
    equivalence_certified: bool
    note: str | None = None


def preserve_check(L: FinAutomaton, h: Homomorphism, f: Formula) -> PreserveReport:
    """Check one property across the abstraction boundary, in both readings.

    The formula is stated over the target alphabet in extended normal form
    (the reserved atom eps only under Always).  Abstractly it is checked
    within fairness on the image language.  Concretely, eps is renamed to the
    padding letter, the formula is retransformed, and the result is checked
    within fairness on the source language padded relative to the
    abstraction, with the lifted map keeping the padding letter visible.
    """
    _check_source(h, L)
    A = canonicalize(L)
    if not is_prefix_closed(A):
        raise NotPrefixClosedError(
            "the preservation check is defined over prefix-closed languages"
        )
    if not check_normal_form(f, h.target, "extended_sigma"):
        raise NotNormalFormError(
            "formula must be in extended normal form over the target alphabet: "
            + format_formula(f)
        )
    wcc = is_weakly_continuation_closed(A, h)
    image = image_automaton(h, A)
    abstract = within_fairness_finitary(image, Labeling.canonical(h.target), f)

    lifted = h.lift_hash()
    padded = compute_xtd(A, hom=h)
    retransformed = transform(substitute_atom(f, EPS_TOKEN, HASH_TOKEN), "R")
    concrete = is_relative_liveness(
        limit(padded),
        PropertySpec.from_formula(retransformed, padded.alphabet, lifted.labeling()),
    )

    note = None
    if not wcc.closed:
        with_out = {p for p, _, _ in image.transitions}
        if all(p in with_out for p in image.accepting):
            note = (
                "not closed: only the concrete verdict transfers to the "
                "abstract level (the image language has no maximal words)"
            )
        else:
            note = "not closed: the verdicts are not transferable"
    return PreserveReport(wcc, bool(abstract), bool(concrete), wcc.closed, note)
