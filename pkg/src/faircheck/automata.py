"""Finite-word and omega-word automata with the graph algebra used everywhere else.

States are integers ``0..n_states-1`` and every value is immutable: operations
return fresh automata.  The empty language is represented by a distinguished
0-state automaton which all operations accept.  Constructions that must be
reproducible (canonical forms, products, witnesses) iterate letters in sorted
order and number states in breadth-first discovery order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from math import lcm
from typing import Iterable

Rational = Fraction

EPS_TOKEN = "eps"
HASH_TOKEN = "#"


class AlphabetMismatchError(ValueError):
    """An operation combined automata or words over different alphabets."""


class NotPrefixClosedError(ValueError):
    """A construction that needs a prefix-closed finitary language got something else."""


@dataclass(frozen=True)
class Alphabet:
    """Sorted set of letter tokens.

    ``eps`` is reserved as the invisible-step proposition and can never be a
    letter; ``#`` is the padding letter that extension constructions append.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        syms = tuple(sorted(self.symbols))
        if not syms:
            raise ValueError("alphabet must not be empty")
        seen: set[str] = set()
        for s in syms:
            if not isinstance(s, str) or not s:
                raise ValueError("alphabet letters must be non-empty strings")
            if s == EPS_TOKEN:
                raise ValueError("'eps' is reserved and cannot be an alphabet letter")
            if s in seen:
                raise ValueError(f"duplicate letter {s!r}")
            seen.add(s)
        object.__setattr__(self, "symbols", syms)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, letter: object) -> bool:
        return letter in self.symbols

    def with_hash(self) -> "Alphabet":
        """This alphabet extended by the padding letter ``#`` (idempotent)."""
        if HASH_TOKEN in self.symbols:
            return self
        return Alphabet(self.symbols + (HASH_TOKEN,))


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word ``stem . cycle^omega``.

    Two lasso words denote the same omega-word exactly when their
    ``normalize()`` forms are equal.
    """

    stem: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")
        for letter in self.stem + self.cycle:
            if not isinstance(letter, str) or not letter:
                raise ValueError("lasso letters must be non-empty strings")

    def letter_at(self, i: int) -> str:
        if i < len(self.stem):
            return self.stem[i]
        return self.cycle[(i - len(self.stem)) % len(self.cycle)]

    def letters(self) -> frozenset[str]:
        return frozenset(self.stem) | frozenset(self.cycle)

    def normalize(self) -> "LassoWord":
        """Canonical form: shortest stem with a primitive cycle.

        The cycle is reduced to its primitive root, then trailing stem letters
        equal to the last cycle letter are absorbed into the cycle (rotating
        it right).  That pins the stem at the word's minimal preperiod and the
        cycle at its minimal period, so the result is the unique
        representative: two lassos denote the same omega-word exactly when
        they normalize identically.
        """
        cycle = list(self.cycle)
        root = _primitive_root_length(cycle)
        cycle = cycle[:root]
        stem = list(self.stem)
        while stem and stem[-1] == cycle[-1]:
            stem.pop()
            cycle = [cycle[-1]] + cycle[:-1]
        return LassoWord(tuple(stem), tuple(cycle))

    def as_text(self) -> str:
        return " ".join(self.stem) + ";" + " ".join(self.cycle)


def _primitive_root_length(cycle: list[str]) -> int:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and all(cycle[i] == cycle[i % p] for i in range(n)):
            return p
    return n


def _mask(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Graph:
    """Shared cached views over (n_states, transitions); mixin for both kinds."""

    @cached_property
    def _sorted_transitions(self) -> tuple[tuple[int, str, int], ...]:
        return tuple(sorted(self.transitions))

    @cached_property
    def _move(self) -> dict[str, tuple[int, ...]]:
        move: dict[str, list[int]] = {s: [0] * self.n_states for s in self.alphabet}
        for p, s, q in self.transitions:
            move[s][p] |= 1 << q
        return {s: tuple(v) for s, v in move.items()}

    @cached_property
    def _succ(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        out: list[list[tuple[str, int]]] = [[] for _ in range(self.n_states)]
        for p, s, q in self._sorted_transitions:
            out[p].append((s, q))
        return tuple(tuple(x) for x in out)

    @cached_property
    def _initial_mask(self) -> int:
        return _mask(self.initial)

    @cached_property
    def _accepting_mask(self) -> int:
        return _mask(self.accepting)

    @property
    def states(self) -> range:
        return range(self.n_states)

    def successors(self, state: int, symbol: str) -> tuple[int, ...]:
        return tuple(_bit_indices(self._move[symbol][state]))

    def step_mask(self, mask: int, symbol: str) -> int:
        row = self._move[symbol]
        out = 0
        for q in _bit_indices(mask):
            out |= row[q]
        return out


def _validate_graph(a) -> None:
    if a.n_states < 0:
        raise ValueError("n_states must be >= 0")
    for q in a.initial | a.accepting:
        if not 0 <= q < a.n_states:
            raise ValueError(f"state {q} out of range")
    for p, s, q in a.transitions:
        if not (0 <= p < a.n_states and 0 <= q < a.n_states):
            raise ValueError(f"transition endpoint out of range: {(p, s, q)}")
        if s not in a.alphabet:
            raise ValueError(f"transition letter {s!r} not in alphabet")


@dataclass(frozen=True)
class FinAutomaton(_Graph):
    """Automaton over finite words (nondeterministic in general)."""

    alphabet: Alphabet
    n_states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        _validate_graph(self)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "FinAutomaton":
        """The distinguished 0-state automaton for the empty language."""
        return cls(alphabet, 0, frozenset(), frozenset(), frozenset())

    @cached_property
    def deterministic(self) -> bool:
        """One initial state and at most one successor per (state, letter)."""
        if self.n_states == 0:
            return True
        if len(self.initial) != 1:
            return False
        seen: set[tuple[int, str]] = set()
        for p, s, _ in self.transitions:
            if (p, s) in seen:
                return False
            seen.add((p, s))
        return True


@dataclass(frozen=True)
class BuchiAutomaton(_Graph):
    """Automaton over omega-words; a run accepts when it visits accepting states infinitely often."""

    alphabet: Alphabet
    n_states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        _validate_graph(self)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "BuchiAutomaton":
        return cls(alphabet, 0, frozenset(), frozenset(), frozenset())


def accepts(a: FinAutomaton, word: Iterable[str]) -> bool:
    """Finite-word membership by subset simulation."""
    mask = a._initial_mask
    for letter in word:
        if letter not in a.alphabet:
            raise AlphabetMismatchError(f"letter {letter!r} not in alphabet")
        mask = a.step_mask(mask, letter)
        if not mask:
            return False
    return bool(mask & a._accepting_mask)


def _check_same_alphabet(a, b) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {a.alphabet.symbols} vs {b.alphabet.symbols}"
        )


def _forward_reachable(n_states: int, succ, starts: Iterable[int]) -> set[int]:
    seen = set(starts)
    queue = deque(sorted(seen))
    while queue:
        u = queue.popleft()
        for _, v in succ[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def _predecessors(a) -> list[list[int]]:
    pred: list[list[int]] = [[] for _ in range(a.n_states)]
    for p, _, q in a._sorted_transitions:
        pred[q].append(p)
    return pred


def canonicalize(a: FinAutomaton) -> FinAutomaton:
    """Minimal trimmed deterministic automaton for the same finitary language.

    Subset construction over the trimmed input, removal of states that cannot
    reach acceptance, Moore minimization with an implicit dead sink, then
    breadth-first renumbering over sorted letters.  Idempotent; the empty
    language collapses to the 0-state automaton.
    """
    symbols = a.alphabet.symbols
    # trim the input so subset states only mention useful parts
    reach = _forward_reachable(a.n_states, a._succ, a.initial)
    pred = _predecessors(a)
    co = set(a.accepting)
    queue = deque(sorted(co))
    while queue:
        u = queue.popleft()
        for p in pred[u]:
            if p not in co:
                co.add(p)
                queue.append(p)
    keep = reach & co
    if not keep:
        return FinAutomaton.empty(a.alphabet)
    keep_mask = _mask(keep)

    init = a._initial_mask & keep_mask
    if not init:
        return FinAutomaton.empty(a.alphabet)
    index: dict[int, int] = {init: 0}
    order: list[int] = [init]
    dtrans: dict[tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        mask = order[i]
        for s in symbols:
            nm = a.step_mask(mask, s) & keep_mask
            if not nm:
                continue
            if nm not in index:
                index[nm] = len(order)
                order.append(nm)
            dtrans[(index[mask], s)] = index[nm]
        i += 1
    n = len(order)
    acc = {i for i, mask in enumerate(order) if mask & a._accepting_mask}

    # distilled co-reachability on the subset automaton
    dpred: list[list[int]] = [[] for _ in range(n)]
    for (p, _s), q in dtrans.items():
        dpred[q].append(p)
    alive = set(acc)
    queue = deque(sorted(alive))
    while queue:
        u = queue.popleft()
        for p in dpred[u]:
            if p not in alive:
                alive.add(p)
                queue.append(p)
    if 0 not in alive:
        return FinAutomaton.empty(a.alphabet)

    # Moore refinement; missing or dead successors map to the sink class -1
    cls = {q: (1 if q in acc else 0) for q in alive}
    while True:
        sig = {}
        for q in alive:
            row = tuple(
                cls.get(dtrans.get((q, s), -1), -1) for s in symbols
            )
            sig[q] = (cls[q], row)
        ids = {v: i for i, v in enumerate(sorted(set(sig.values())))}
        new_cls = {q: ids[sig[q]] for q in alive}
        if len(ids) == len(set(cls.values())):
            cls = new_cls
            break
        cls = new_cls

    # representative successor map per class
    cdelta: dict[tuple[int, str], int] = {}
    cacc: set[int] = set()
    for q in alive:
        c = cls[q]
        if q in acc:
            cacc.add(c)
        for s in symbols:
            t = dtrans.get((q, s), -1)
            if t in cls:
                cdelta[(c, s)] = cls[t]

    # breadth-first renumbering from the initial class
    start = cls[0]
    number = {start: 0}
    seq = [start]
    i = 0
    while i < len(seq):
        c = seq[i]
        for s in symbols:
            t = cdelta.get((c, s))
            if t is not None and t not in number:
                number[t] = len(seq)
                seq.append(t)
        i += 1
    transitions = frozenset(
        (number[c], s, number[t])
        for (c, s), t in cdelta.items()
        if c in number and t in number
    )
    accepting = frozenset(number[c] for c in cacc if c in number)
    return FinAutomaton(a.alphabet, len(seq), frozenset({0}), accepting, transitions)


def language_subset(
    a: FinAutomaton, b: FinAutomaton
) -> tuple[bool, tuple[str, ...] | None]:
    """Is L(a) a subset of L(b)?  On failure also return a shortest witness word.

    Breadth-first search over pairs of on-the-fly subset states; letters are
    explored in sorted order, so the witness is the least shortest one.
    """
    _check_same_alphabet(a, b)
    return _pair_search(a, b, subset_only=True)


def language_equal(
    a: FinAutomaton, b: FinAutomaton
) -> tuple[bool, tuple[str, ...] | None]:
    """Language equality with a shortest distinguishing word on failure."""
    _check_same_alphabet(a, b)
    return _pair_search(a, b, subset_only=False)


def _pair_search(a, b, subset_only: bool):
    start = (a._initial_mask, b._initial_mask)
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([start])
    symbols = a.alphabet.symbols
    while queue:
        pair = queue.popleft()
        ma, mb = pair
        acc_a = bool(ma & a._accepting_mask)
        acc_b = bool(mb & b._accepting_mask)
        bad = (acc_a and not acc_b) if subset_only else (acc_a != acc_b)
        if bad:
            word: list[str] = []
            cur = pair
            while parent[cur] is not None:
                cur, s = parent[cur]
                word.append(s)
            return False, tuple(reversed(word))
        for s in symbols:
            na = a.step_mask(ma, s)
            nb = b.step_mask(mb, s)
            if subset_only and not na:
                continue
            if not na and not nb:
                continue
            nxt = (na, nb)
            if nxt not in parent:
                parent[nxt] = (pair, s)
                queue.append(nxt)
    return True, None


def left_quotient(a: FinAutomaton, word: Iterable[str]) -> FinAutomaton:
    """Canonical automaton for ``word \\ L(a)``, the continuations of ``word``."""
    c = canonicalize(a)
    if c.n_states == 0:
        return c
    state = 0
    for letter in word:
        if letter not in c.alphabet:
            raise AlphabetMismatchError(f"letter {letter!r} not in alphabet")
        nxt = c.successors(state, letter)
        if not nxt:
            return FinAutomaton.empty(c.alphabet)
        state = nxt[0]
    rebased = FinAutomaton(
        c.alphabet, c.n_states, frozenset({state}), c.accepting, c.transitions
    )
    return canonicalize(rebased)


def _nontrivial_scc_states(n_states: int, succ) -> set[int]:
    """States lying on some cycle: members of an SCC with >1 state or a self-loop."""
    # Kosaraju: finish order on the graph, then components on the reverse graph.
    visited = [False] * n_states
    finish: list[int] = []
    for root in range(n_states):
        if visited[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        visited[root] = True
        while stack:
            u, ei = stack[-1]
            if ei < len(succ[u]):
                stack[-1] = (u, ei + 1)
                v = succ[u][ei][1]
                if not visited[v]:
                    visited[v] = True
                    stack.append((v, 0))
            else:
                stack.pop()
                finish.append(u)
    rev: list[list[int]] = [[] for _ in range(n_states)]
    for u in range(n_states):
        for _, v in succ[u]:
            rev[v].append(u)
    comp = [-1] * n_states
    c = -1
    for u in reversed(finish):
        if comp[u] != -1:
            continue
        c += 1
        stack2 = [u]
        comp[u] = c
        members = [u]
        while stack2:
            x = stack2.pop()
            for y in rev[x]:
                if comp[y] == -1:
                    comp[y] = c
                    stack2.append(y)
                    members.append(y)
    sizes: dict[int, int] = {}
    for u in range(n_states):
        sizes[comp[u]] = sizes.get(comp[u], 0) + 1
    loops = {u for u in range(n_states) for _, v in succ[u] if v == u}
    return {
        u
        for u in range(n_states)
        if sizes[comp[u]] > 1 or u in loops
    }


def _core_states(b: BuchiAutomaton) -> set[int]:
    """Accepting states that lie on a cycle (anchors of accepted omega-words)."""
    return set(b.accepting) & _nontrivial_scc_states(b.n_states, b._succ)


def reduce_buchi(b: BuchiAutomaton) -> BuchiAutomaton:
    """Drop every state from which no omega-word can be accepted.

    Keeps exactly the states that can reach an accepting cycle; surviving
    states are compacted in increasing order, so an already-reduced automaton
    comes back identical.
    """
    cores = _core_states(b)
    pred = _predecessors(b)
    keep = set(cores)
    queue = deque(sorted(keep))
    while queue:
        u = queue.popleft()
        for p in pred[u]:
            if p not in keep:
                keep.add(p)
                queue.append(p)
    if len(keep) == b.n_states:
        return b
    if not keep:
        return BuchiAutomaton.empty(b.alphabet)
    number = {q: i for i, q in enumerate(sorted(keep))}
    return BuchiAutomaton(
        b.alphabet,
        len(keep),
        frozenset(number[q] for q in b.initial if q in keep),
        frozenset(number[q] for q in b.accepting if q in keep),
        frozenset(
            (number[p], s, number[q])
            for p, s, q in b.transitions
            if p in keep and q in keep
        ),
    )


def prefix_automaton(b: BuchiAutomaton) -> FinAutomaton:
    """Finitary automaton for the prefixes of the accepted omega-words.

    After reduction every remaining state starts some accepted omega-word, so
    marking all states accepting yields exactly the prefix language.
    """
    r = reduce_buchi(b)
    if not r.initial:
        return FinAutomaton.empty(b.alphabet)
    return FinAutomaton(
        r.alphabet,
        r.n_states,
        r.initial,
        frozenset(range(r.n_states)),
        r.transitions,
    )


def limit(a: FinAutomaton) -> BuchiAutomaton:
    """Omega-words all of whose prefixes stay in the given prefix-closed language.

    The input is canonicalized and must come out with every state accepting
    (the shape canonical prefix-closed automata always have); otherwise
    NotPrefixClosedError is raised rather than guessing a semantics.
    """
    c = canonicalize(a)
    if len(c.accepting) != c.n_states:
        raise NotPrefixClosedError("limit requires a prefix-closed language")
    return BuchiAutomaton(
        c.alphabet, c.n_states, c.initial, frozenset(range(c.n_states)), c.transitions
    )


def is_prefix_closed(a: FinAutomaton) -> bool:
    c = canonicalize(a)
    return len(c.accepting) == c.n_states


def product_fin(a: FinAutomaton, b: FinAutomaton) -> FinAutomaton:
    """Synchronous product for finite words: accepts the intersection."""
    _check_same_alphabet(a, b)
    symbols = a.alphabet.symbols
    starts = sorted((p, q) for p in a.initial for q in b.initial)
    index = {pq: i for i, pq in enumerate(starts)}
    order = list(starts)
    transitions: set[tuple[int, str, int]] = set()
    i = 0
    while i < len(order):
        p, q = order[i]
        for s in symbols:
            for p2 in a.successors(p, s):
                for q2 in b.successors(q, s):
                    t = (p2, q2)
                    if t not in index:
                        index[t] = len(order)
                        order.append(t)
                    transitions.add((i, s, index[t]))
        i += 1
    accepting = frozenset(
        i for i, (p, q) in enumerate(order) if p in a.accepting and q in b.accepting
    )
    return FinAutomaton(
        a.alphabet,
        len(order),
        frozenset(range(len(starts))),
        accepting,
        frozenset(transitions),
    )


def product(a: BuchiAutomaton, b: BuchiAutomaton) -> BuchiAutomaton:
    """Intersection of omega-languages via the two-phase counter construction.

    Phase 0 hunts an accepting state of ``a``, phase 1 one of ``b``; the
    product accepts when phase-1 states whose second component is accepting
    recur forever, which forces both components to accept infinitely often.
    """
    _check_same_alphabet(a, b)
    symbols = a.alphabet.symbols
    starts = sorted((p, q, 0) for p in a.initial for q in b.initial)
    index = {t: i for i, t in enumerate(starts)}
    order = list(starts)
    transitions: set[tuple[int, str, int]] = set()
    i = 0
    while i < len(order):
        p, q, phase = order[i]
        if phase == 0:
            nphase = 1 if p in a.accepting else 0
        else:
            nphase = 0 if q in b.accepting else 1
        for s in symbols:
            for p2 in a.successors(p, s):
                for q2 in b.successors(q, s):
                    t = (p2, q2, nphase)
                    if t not in index:
                        index[t] = len(order)
                        order.append(t)
                    transitions.add((i, s, index[t]))
        i += 1
    accepting = frozenset(
        i for i, (p, q, phase) in enumerate(order) if phase == 1 and q in b.accepting
    )
    return BuchiAutomaton(
        a.alphabet,
        len(order),
        frozenset(range(len(starts))),
        accepting,
        frozenset(transitions),
    )


def _bfs_tree(succ, starts: Iterable[int]):
    """Shortest-path tree; (parent state, letter) per reached state, FIFO over sorted edges."""
    parent: dict[int, tuple[int, str] | None] = {}
    queue: deque[int] = deque()
    for s in sorted(set(starts)):
        parent[s] = None
        queue.append(s)
    while queue:
        u = queue.popleft()
        for sym, v in succ[u]:
            if v not in parent:
                parent[v] = (u, sym)
                queue.append(v)
    return parent


def _path_from(parent, state: int) -> tuple[str, ...]:
    word: list[str] = []
    cur = state
    while parent[cur] is not None:
        cur, sym = parent[cur]
        word.append(sym)
    return tuple(reversed(word))


def _shortest_cycle(succ, f: int) -> tuple[str, ...] | None:
    """Shortest non-empty word labelling a cycle through ``f``, or None."""
    parent: dict[int, tuple[int, str]] = {}
    queue: deque[int] = deque()
    for sym, v in succ[f]:
        if v == f:
            return (sym,)
        if v not in parent:
            parent[v] = (f, sym)
            queue.append(v)
    while queue:
        u = queue.popleft()
        for sym, v in succ[u]:
            if v == f:
                word = [sym]
                cur = u
                while cur != f:
                    cur, s2 = parent[cur]
                    word.append(s2)
                return tuple(reversed(word))
            if v not in parent:
                parent[v] = (u, sym)
                queue.append(v)
    return None


def _cycle_pass(b: BuchiAutomaton, m0: int, m1: int, cycle) -> tuple[int, int]:
    """One whole-cycle step of the (state, seen-accepting) pair relation."""
    acc = b._accepting_mask
    for s in cycle:
        n0 = b.step_mask(m0, s)
        n1 = b.step_mask(m1, s)
        m0 = n0 & ~acc
        m1 = n1 | (n0 & acc)
    return m0, m1


def _accepts_periodic_from(b: BuchiAutomaton, start_mask: int, cycle) -> bool:
    """Does ``b`` accept cycle^omega from some state in the mask?

    Closes the mask under whole-cycle steps, then looks for a boundary state
    that returns to itself through an accepting state in one or more passes.
    """
    reach = 0
    frontier = start_mask
    while frontier & ~reach:
        reach |= frontier
        m0, m1 = _cycle_pass(b, frontier, 0, cycle)
        frontier = m0 | m1
    for q in _bit_indices(reach):
        bit = 1 << q
        seen0 = seen1 = 0
        m0, m1 = bit, 0
        while True:
            n0, n1 = _cycle_pass(b, m0, m1, cycle)
            if seen1 & bit or n1 & bit:
                return True
            m0, m1 = n0 & ~seen0, n1 & ~seen1
            if not (m0 | m1):
                break
            seen0 |= n0
            seen1 |= n1
    return False


def _stems_by_subset(b: BuchiAutomaton, max_len: int):
    """Stems in (length, lex) order, one per distinct reachable state set."""
    start = b._initial_mask
    out: list[list[tuple[tuple[str, ...], int]]] = [[((), start)]]
    seen = {start}
    frontier = [((), start)]
    for _ in range(max_len):
        nxt: list[tuple[tuple[str, ...], int]] = []
        for stem, mask in frontier:
            for s in b.alphabet.symbols:
                m2 = b.step_mask(mask, s)
                if m2 and m2 not in seen:
                    seen.add(m2)
                    nxt.append((stem + (s,), m2))
        out.append(nxt)
        frontier = nxt
    return out


def _denotation_minimal_lasso(
    b: BuchiAutomaton, baseline: LassoWord, budget: int = 3000
) -> LassoWord:
    """Smallest accepted lasso by (stem length, cycle length, stem, cycle).

    Candidates are normalized forms only; acceptance of each is decided by
    the whole-cycle pair relation.  The baseline (always a valid witness)
    bounds the search and is returned when the budget runs out, so the
    result is exact at ordinary sizes and never worse than the baseline.
    """
    m_cap = len(baseline.stem)
    p_base = len(baseline.cycle)
    stems = _stems_by_subset(b, m_cap)
    syms = b.alphabet.symbols
    for m in range(m_cap + 1):
        p_cap = p_base if m == m_cap else max(p_base, 8)
        for p in range(1, p_cap + 1):
            for stem, mask in stems[m]:
                for cycle in iproduct(syms, repeat=p):
                    cand = LassoWord(stem, cycle)
                    if cand.normalize() != cand:
                        continue
                    budget -= 1
                    if budget < 0:
                        return baseline
                    if _accepts_periodic_from(b, mask, cycle):
                        if (m, p, stem, cycle) < (
                            m_cap,
                            p_base,
                            baseline.stem,
                            baseline.cycle,
                        ):
                            return cand
                        return baseline
    return baseline


def _accepting_lasso_from(b: BuchiAutomaton, starts: Iterable[int]) -> LassoWord | None:
    starts = set(starts)
    if not starts:
        return None
    reachable = _forward_reachable(b.n_states, b._succ, starts)
    candidates = sorted(_core_states(b) & reachable)
    if not candidates:
        return None
    stems = _bfs_tree(b._succ, starts)
    best: tuple[int, int, tuple[str, ...], tuple[str, ...]] | None = None
    for f in candidates:
        if f not in stems:
            continue
        stem = _path_from(stems, f)
        cyc = _shortest_cycle(b._succ, f)
        if cyc is None:
            continue
        key = (len(stem), len(cyc), stem, cyc)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return LassoWord(best[2], best[3]).normalize()


def accepting_lasso(b: BuchiAutomaton) -> LassoWord | None:
    """A smallest accepted lasso (stem length, then cycle length, then lex), or None.

    A graph-level witness is found first; a bounded refinement then searches
    for the minimal normalized form, which a run-level search alone can miss
    when tracking states forces a longer cycle than the word itself needs.
    """
    baseline = _accepting_lasso_from(b, b.initial)
    if baseline is None:
        return None
    return _denotation_minimal_lasso(b, baseline)


def is_empty(b: BuchiAutomaton) -> bool:
    reachable = _forward_reachable(b.n_states, b._succ, b.initial)
    return not (_core_states(b) & reachable)


def lasso_automaton(x: LassoWord, alphabet: Alphabet) -> BuchiAutomaton:
    """Single-lasso automaton accepting exactly ``{x}``."""
    for letter in x.stem + x.cycle:
        if letter not in alphabet:
            raise AlphabetMismatchError(f"lasso letter {letter!r} not in alphabet")
    n = len(x.stem) + len(x.cycle)
    transitions = set()
    for i in range(n):
        target = i + 1 if i + 1 < n else len(x.stem)
        transitions.add((i, x.letter_at(i), target))
    return BuchiAutomaton(
        alphabet,
        n,
        frozenset({0}),
        frozenset(range(len(x.stem), n)),
        frozenset(transitions),
    )


def lasso_membership(x: LassoWord, b: BuchiAutomaton) -> bool:
    """Does ``b`` accept the omega-word of ``x``?  Product plus emptiness."""
    return not is_empty(product(lasso_automaton(x, b.alphabet), b))


def _shortest_path_word(succ, start: int, goal: int) -> tuple[str, ...] | None:
    """Shortest word labelling a path start -> goal (empty when equal)."""
    if start == goal:
        return ()
    parent: dict[int, tuple[int, str]] = {start: (-1, "")}
    queue: deque[int] = deque([start])
    while queue:
        u = queue.popleft()
        for sym, v in succ[u]:
            if v not in parent:
                parent[v] = (u, sym)
                if v == goal:
                    word = []
                    cur = v
                    while cur != start:
                        cur, s2 = parent[cur]
                        word.append(s2)
                    return tuple(reversed(word))
                queue.append(v)
    return None


def sample_accepted_lassos(b: BuchiAutomaton, max_count: int = 8) -> list[LassoWord]:
    """A small deterministic sample of accepted lassos.

    One lasso per (accepting cycle anchor, first cycle letter), so cycles
    through different branches of an anchor all appear; used for the sampled
    spot-checks of complementation and containment preconditions.
    """
    out: list[LassoWord] = []
    seen: set[LassoWord] = set()
    reachable = _forward_reachable(b.n_states, b._succ, b.initial)
    stems = _bfs_tree(b._succ, b.initial)
    for f in sorted(_core_states(b) & reachable):
        if f not in stems:
            continue
        stem = _path_from(stems, f)
        cycles = []
        first_steps = sorted({(s, v) for s, v in b._succ[f]})
        for sym, v in first_steps:
            back = _shortest_path_word(b._succ, v, f)
            if back is not None:
                cycles.append((sym,) + back)
        for cyc in sorted(cycles, key=lambda c: (len(c), c)):
            x = LassoWord(stem, cyc).normalize()
            if x not in seen:
                seen.add(x)
                out.append(x)
            if len(out) >= max_count:
                return out
    return out


def cantor_distance(x: LassoWord, y: LassoWord) -> Fraction:
    """1/(length of common prefix + 1); zero exactly on equal omega-words."""
    nx = x.normalize()
    ny = y.normalize()
    if nx == ny:
        return Fraction(0)
    bound = max(len(nx.stem), len(ny.stem)) + lcm(len(nx.cycle), len(ny.cycle))
    for i in range(bound + 1):
        if nx.letter_at(i) != ny.letter_at(i):
            return Fraction(1, i + 1)
    raise AssertionError("distinct normal forms must differ within the period bound")
