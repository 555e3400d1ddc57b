"""Line-oriented text formats for automata and letter homomorphisms.

An `.aut` file names an automaton:

    # full-line comments start with '#'
    alphabet: request result reject
    acceptance: buchi        # absent for finitary automata
    states: s0 s1
    initial: s0
    accepting: s0            # absent finitary line means every state accepts
    trans: s0 request s1
    trans: s1 result s0

A `.hom` file maps every source letter to a target letter or to `eps`:

    lock -> eps
    request -> request

Parsers report 1-based line numbers; printers emit files the parsers map
back to the same object.
"""

from __future__ import annotations

from .automata import Alphabet, BuchiAutomaton, FinAutomaton
from .abstraction import Homomorphism
from .pltl import EPS_TOKEN

__all__ = [
    "AutFormatError",
    "HomFormatError",
    "format_automaton",
    "format_homomorphism",
    "parse_automaton",
    "parse_homomorphism",
]


class AutFormatError(ValueError):
    """Malformed automaton text; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class HomFormatError(ValueError):
    """Malformed homomorphism text; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, line


def parse_automaton(text: str) -> FinAutomaton | BuchiAutomaton:
    """Read an `.aut` file body into an automaton.

    Directive order is free except that `trans:` lines need `alphabet:` and
    `states:` before them.  A finitary file without an `accepting:` line is
    an LTS: every state accepts and the language is prefix closed.
    """
    alphabet: Alphabet | None = None
    acceptance_buchi = False
    names: list[str] | None = None
    index: dict[str, int] = {}
    initial: set[int] | None = None
    accepting: set[int] | None = None
    transitions: set[tuple[int, str, int]] = set()
    seen: set[str] = set()
    last_line = 0

    def resolve(token: str, line_no: int) -> int:
        if names is None:
            raise AutFormatError(line_no, "states: must come before this line")
        if token not in index:
            raise AutFormatError(line_no, f"unknown state name {token!r}")
        return index[token]

    for line_no, line in _content_lines(text):
        last_line = line_no
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise AutFormatError(line_no, "expected 'directive: arguments'")
        fields = rest.split()
        if key in seen:
            raise AutFormatError(line_no, f"duplicate {key}: line")
        if key == "alphabet":
            seen.add(key)
            if EPS_TOKEN in fields:
                raise AutFormatError(
                    line_no, "'eps' is reserved and cannot be an alphabet letter"
                )
            try:
                alphabet = Alphabet(tuple(fields))
            except ValueError as exc:
                raise AutFormatError(line_no, str(exc)) from None
        elif key == "acceptance":
            seen.add(key)
            if fields != ["buchi"]:
                raise AutFormatError(line_no, "only 'acceptance: buchi' is known")
            acceptance_buchi = True
        elif key == "states":
            seen.add(key)
            if len(set(fields)) != len(fields):
                raise AutFormatError(line_no, "duplicate state name")
            names = fields
            index = {name: i for i, name in enumerate(names)}
        elif key == "initial":
            seen.add(key)
            initial = {resolve(tok, line_no) for tok in fields}
        elif key == "accepting":
            seen.add(key)
            accepting = {resolve(tok, line_no) for tok in fields}
        elif key == "trans":
            if len(fields) != 3:
                raise AutFormatError(line_no, "expected 'trans: src letter dst'")
            src, sym, dst = fields
            if alphabet is None:
                raise AutFormatError(line_no, "alphabet: must come before trans:")
            if sym not in alphabet:
                raise AutFormatError(line_no, f"letter {sym!r} not in the alphabet")
            transitions.add((resolve(src, line_no), sym, resolve(dst, line_no)))
        else:
            raise AutFormatError(line_no, f"unknown directive {key!r}")

    missing_at = last_line + 1
    if alphabet is None:
        raise AutFormatError(missing_at, "missing alphabet: line")
    if names is None:
        raise AutFormatError(missing_at, "missing states: line")
    if initial is None:
        raise AutFormatError(missing_at, "missing initial: line")
    if accepting is None:
        if acceptance_buchi:
            raise AutFormatError(missing_at, "buchi automata need an accepting: line")
        accepting = set(range(len(names)))
    cls = BuchiAutomaton if acceptance_buchi else FinAutomaton
    return cls(
        alphabet,
        len(names),
        frozenset(initial),
        frozenset(accepting),
        frozenset(transitions),
    )


def format_automaton(a: FinAutomaton | BuchiAutomaton) -> str:
    """Render an automaton as `.aut` text with states named s0, s1, ...

    The `accepting:` line is left out exactly when a finitary automaton
    accepts everywhere, so LTS files stay in LTS form; parsing the output
    reproduces the input automaton.
    """
    lines = ["alphabet: " + " ".join(a.alphabet.symbols)]
    if isinstance(a, BuchiAutomaton):
        lines.append("acceptance: buchi")
    lines.append("states: " + " ".join(f"s{i}" for i in range(a.n_states)))
    lines.append("initial: " + " ".join(f"s{i}" for i in sorted(a.initial)))
    all_states = frozenset(range(a.n_states))
    if isinstance(a, BuchiAutomaton) or a.accepting != all_states:
        lines.append(
            "accepting: " + " ".join(f"s{i}" for i in sorted(a.accepting))
        )
    for src, sym, dst in sorted(a.transitions):
        lines.append(f"trans: s{src} {sym} s{dst}")
    return "\n".join(lines) + "\n"


def parse_homomorphism(text: str, alphabet: Alphabet | None = None) -> Homomorphism:
    """Read a `.hom` file body into a letter homomorphism.

    The source alphabet is the set of left-hand letters (or the given one,
    against which totality is then checked); the target alphabet collects
    the non-eps images.
    """
    mapping: dict[str, str] = {}
    for line_no, line in _content_lines(text):
        parts = line.split("->")
        if len(parts) != 2:
            raise HomFormatError(line_no, "expected 'letter -> letter' or 'letter -> eps'")
        src, dst = parts[0].strip(), parts[1].strip()
        if not src or " " in src or not dst or " " in dst:
            raise HomFormatError(line_no, "letters must be single whitespace-free tokens")
        if src == EPS_TOKEN:
            raise HomFormatError(line_no, "'eps' cannot be a source letter")
        if src in mapping:
            raise HomFormatError(line_no, f"letter {src!r} mapped twice")
        mapping[src] = dst
    if not mapping:
        raise HomFormatError(1, "empty homomorphism")
    if alphabet is None:
        try:
            alphabet = Alphabet(tuple(mapping))
        except ValueError as exc:
            raise HomFormatError(1, str(exc)) from None
    else:
        missing = set(alphabet.symbols) - set(mapping)
        extra = set(mapping) - set(alphabet.symbols)
        if missing:
            raise HomFormatError(
                1, f"not total: no image for {sorted(missing)!r}"
            )
        if extra:
            raise HomFormatError(
                1, f"letters {sorted(extra)!r} are not in the alphabet"
            )
    images = sorted(set(mapping.values()) - {EPS_TOKEN})
    if not images:
        raise HomFormatError(1, "all letters are hidden; target alphabet would be empty")
    target = Alphabet(tuple(images))
    return Homomorphism.from_map(alphabet, target, mapping)


def format_homomorphism(h: Homomorphism) -> str:
    return "".join(f"{a} -> {img}\n" for a, img in h.entries)
