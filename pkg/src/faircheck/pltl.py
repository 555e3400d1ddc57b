"""Linear temporal logic over finite alphabets: syntax, semantics, transformations.

Formulas are immutable trees.  Semantics is 1-indexed in spirit (the Until
operator includes the present) and is evaluated either directly on ultimately
periodic words or via translation to a pair of Buchi automata, one for the
formula and one for its negation.  The N/T/R rewrites relate a formula over a
visible alphabet to one over a concrete alphabet whose hidden letters carry
the reserved proposition ``eps``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .automata import (
    Alphabet,
    BuchiAutomaton,
    EPS_TOKEN,
    HASH_TOKEN,
    LassoWord,
    reduce_buchi,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotNormalFormError(ValueError):
    """The formula does not have the normal-form shape the operation requires."""


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueFormula(Formula):
    def __repr__(self) -> str:
        return "TrueFormula()"


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Before(Formula):
    """(xi) B (zeta): no zeta strictly before the first xi fails; dual of Until."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    operand: Formula


@dataclass(frozen=True)
class Always(Formula):
    operand: Formula


TRUE = TrueFormula()
EPS = Atom(EPS_TOKEN)

_UNARY = (Not, Next, Eventually, Always)
_BINARY = (And, Or, Implies, Iff, Until, Before)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, _UNARY):
        return (f.operand,)
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    return ()


def _rebuild(f: Formula, parts: tuple[Formula, ...]) -> Formula:
    if isinstance(f, _UNARY):
        return type(f)(parts[0])
    if isinstance(f, _BINARY):
        return type(f)(parts[0], parts[1])
    return f


def atoms_of(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset({f.name})
    out: frozenset[str] = frozenset()
    for c in children(f):
        out |= atoms_of(c)
    return out


def substitute_atom(f: Formula, old: str, new: str) -> Formula:
    if isinstance(f, Atom):
        return Atom(new) if f.name == old else f
    parts = tuple(substitute_atom(c, old, new) for c in children(f))
    return _rebuild(f, parts)


def is_pure_boolean(f: Formula) -> bool:
    """No temporal operator anywhere; true and negations count as Boolean."""
    if isinstance(f, (Next, Until, Before, Eventually, Always)):
        return False
    return all(is_pure_boolean(c) for c in children(f))


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN_RE = re.compile(r"<->|->|[()!&|#]|[A-Za-z_][A-Za-z0-9_]*")
_WS_RE = re.compile(r"\s*")

_KEYWORDS = {"true", "X", "U", "B", "F", "G"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        i = _WS_RE.match(text, i).end()
        if i >= len(text):
            break
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", i)
        tokens.append((m.group(), i))
        i = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.here())
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise FormulaSyntaxError(f"expected {tok!r}", self.here())
        self.pos += 1

    # precedence, loosest binding first
    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected token {self.peek()!r}", self.here())
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.until()
        while self.peek() == "&":
            self.take()
            f = And(f, self.until())
        return f

    def until(self) -> Formula:
        left = self.unary()
        tok = self.peek()
        if tok == "U":
            self.take()
            return Until(left, self.until())
        if tok == "B":
            self.take()
            return Before(left, self.until())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "X":
            self.take()
            return Next(self.unary())
        if tok == "F":
            self.take()
            return Eventually(self.unary())
        if tok == "G":
            self.take()
            return Always(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.iff()
            self.expect(")")
            return f
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.here())
        if tok == "true":
            self.take()
            return TRUE
        if tok in _KEYWORDS or not re.fullmatch(r"#|[A-Za-z_][A-Za-z0-9_]*", tok):
            raise FormulaSyntaxError(f"unexpected token {tok!r}", self.here())
        self.take()
        return Atom(tok)


def parse_formula(text: str) -> Formula:
    """Parse the surface syntax: true, atoms, ! & | -> <->, X U B F G, parentheses."""
    return _Parser(text).parse()


_PREC_ATOM = 7
_PREC_UNARY = 6
_PREC_UNTIL = 5
_PREC_AND = 4
_PREC_OR = 3
_PREC_IMPLIES = 2
_PREC_IFF = 1


def _prec(f: Formula) -> int:
    if isinstance(f, (Atom, TrueFormula)):
        return _PREC_ATOM
    if isinstance(f, _UNARY):
        return _PREC_UNARY
    if isinstance(f, (Until, Before)):
        return _PREC_UNTIL
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    return _PREC_IFF


def format_formula(f: Formula) -> str:
    """Minimal-parentheses rendering; parse_formula inverts it exactly."""
    if isinstance(f, TrueFormula):
        return "true"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, _UNARY):
        sub = format_formula(f.operand)
        if _prec(f.operand) < _PREC_UNARY:
            sub = f"({sub})"
        if isinstance(f, Not):
            return f"!{sub}"
        op = {Next: "X", Eventually: "F", Always: "G"}[type(f)]
        return f"{op} {sub}"
    op = {And: "&", Or: "|", Implies: "->", Iff: "<->", Until: "U", Before: "B"}[type(f)]
    me = _prec(f)
    right_assoc = isinstance(f, (Until, Before, Implies, Iff))
    lt = format_formula(f.left)
    rt = format_formula(f.right)
    if _prec(f.left) < me or (right_assoc and _prec(f.left) == me):
        lt = f"({lt})"
    if _prec(f.right) < me or (not right_assoc and _prec(f.right) == me):
        rt = f"({rt})"
    return f"{lt} {op} {rt}"


# ---------------------------------------------------------------------------
# normal forms

def to_positive_normal_form(f: Formula) -> Formula:
    """Push negations down to atoms (and the constant true) via the dualities."""
    if isinstance(f, Not):
        return _negated_pnf(f.operand)
    parts = tuple(to_positive_normal_form(c) for c in children(f))
    return _rebuild(f, parts)


def _negated_pnf(f: Formula) -> Formula:
    if isinstance(f, (TrueFormula, Atom)):
        return Not(f)
    if isinstance(f, Not):
        return to_positive_normal_form(f.operand)
    if isinstance(f, And):
        return Or(_negated_pnf(f.left), _negated_pnf(f.right))
    if isinstance(f, Or):
        return And(_negated_pnf(f.left), _negated_pnf(f.right))
    if isinstance(f, Implies):
        return And(to_positive_normal_form(f.left), _negated_pnf(f.right))
    if isinstance(f, Iff):
        return Or(
            And(to_positive_normal_form(f.left), _negated_pnf(f.right)),
            And(_negated_pnf(f.left), to_positive_normal_form(f.right)),
        )
    if isinstance(f, Next):
        return Next(_negated_pnf(f.operand))
    if isinstance(f, Eventually):
        return Always(_negated_pnf(f.operand))
    if isinstance(f, Always):
        return Eventually(_negated_pnf(f.operand))
    if isinstance(f, Until):
        return Before(_negated_pnf(f.left), to_positive_normal_form(f.right))
    if isinstance(f, Before):
        return Until(_negated_pnf(f.left), to_positive_normal_form(f.right))
    raise TypeError(f"unknown formula node {f!r}")


def _pnf_shaped(f: Formula) -> bool:
    if isinstance(f, Not):
        return isinstance(f.operand, (Atom, TrueFormula))
    return all(_pnf_shaped(c) for c in children(f))


def _eps_only_under_always(f: Formula) -> bool:
    if f == EPS:
        return False
    if isinstance(f, Always) and f.operand == EPS:
        return True
    return all(_eps_only_under_always(c) for c in children(f))


def check_normal_form(f: Formula, alphabet: Alphabet, mode: str) -> bool:
    """Shape test for the transformation pipeline.

    sigma: positive normal form with atoms drawn from the alphabet.
    extended_sigma: additionally permits the reserved atom eps, but only as
    the immediate operand of Always.
    """
    if mode not in ("sigma", "extended_sigma"):
        raise ValueError(f"unknown normal-form mode {mode!r}")
    if not _pnf_shaped(f):
        return False
    atoms = atoms_of(f)
    if mode == "sigma":
        return all(a in alphabet for a in atoms)
    if not all(a in alphabet or a == EPS_TOKEN for a in atoms):
        return False
    return _eps_only_under_always(f)


def _require_transformable(f: Formula) -> None:
    if not _pnf_shaped(f):
        raise NotNormalFormError(
            "transformation input must be in positive normal form: "
            f"{format_formula(f)}"
        )
    if not _eps_only_under_always(f):
        raise NotNormalFormError(
            "the reserved atom eps may only occur as G eps: " f"{format_formula(f)}"
        )


def _n(f: Formula) -> Formula:
    # negated atoms also demand a visible step
    if isinstance(f, Not) and isinstance(f.operand, Atom) and f.operand != EPS:
        return And(f, Not(EPS))
    parts = tuple(_n(c) for c in children(f))
    return _rebuild(f, parts)


def _t(f: Formula) -> Formula:
    if isinstance(f, (TrueFormula, Atom)):
        return f
    if isinstance(f, Not):
        if isinstance(f.operand, TrueFormula):
            return f
        return And(f, Not(EPS))
    if isinstance(f, (And, Or, Implies, Iff)):
        return _rebuild(f, (_t(f.left), _t(f.right)))
    if isinstance(f, Until):
        return Until(Or(EPS, _t(f.left)), _t(f.right))
    if isinstance(f, Before):
        return Before(_t(f.left), _t(f.right))
    if isinstance(f, Eventually):
        return Eventually(_t(f.operand))
    if isinstance(f, Always):
        return Always(Or(EPS, _t(f.operand)))
    if isinstance(f, Next):
        return Until(EPS, And(Not(EPS), Next(Until(EPS, _t(f.operand)))))
    raise TypeError(f"unknown formula node {f!r}")


def _r(f: Formula) -> Formula:
    if isinstance(f, Always) and f.operand == EPS:
        # the T route for G eps, with eps carried through unchanged
        return Always(Or(EPS, EPS))
    if is_pure_boolean(f):
        return Until(EPS, _n(f))
    if isinstance(f, (And, Or, Implies, Iff)):
        return _rebuild(f, (_r(f.left), _r(f.right)))
    if isinstance(f, Until):
        return Until(Or(EPS, _r(f.left)), _r(f.right))
    if isinstance(f, Before):
        return Before(_r(f.left), _r(f.right))
    if isinstance(f, Eventually):
        return Eventually(_r(f.operand))
    if isinstance(f, Always):
        return Always(Or(EPS, _r(f.operand)))
    if isinstance(f, Next):
        return Until(EPS, And(Not(EPS), Next(Until(EPS, _r(f.operand)))))
    raise TypeError(f"unknown formula node {f!r}")


def transform(f: Formula, mode: str) -> Formula:
    """The abstraction-boundary rewrites.

    N tightens each negated atom with "and not eps" so invisible steps cannot
    discharge it.  T re-times temporal operators so that runs may take
    invisible steps between visible ones.  R is T with every maximal purely
    Boolean subformula b replaced by ``eps U N(b)``: the property is judged at
    the next visible position.
    """
    if mode not in ("N", "T", "R"):
        raise ValueError(f"unknown transformation mode {mode!r}")
    _require_transformable(f)
    if mode == "N":
        return _n(f)
    if mode == "T":
        return _t(f)
    return _r(f)


# ---------------------------------------------------------------------------
# labelings and semantics

@dataclass(frozen=True)
class Labeling:
    """Total map from alphabet letters to the sets of propositions they satisfy."""

    entries: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        norm = tuple(
            sorted((sym, frozenset(props)) for sym, props in self.entries)
        )
        seen: set[str] = set()
        for sym, _ in norm:
            if sym in seen:
                raise ValueError(f"duplicate labeling entry for {sym!r}")
            seen.add(sym)
        object.__setattr__(self, "entries", norm)

    @classmethod
    def canonical(cls, alphabet: Alphabet) -> "Labeling":
        """Every letter names itself: lambda(a) = {a}."""
        return cls(tuple((a, frozenset({a})) for a in alphabet))

    @classmethod
    def from_map(cls, mapping: dict[str, frozenset[str] | set[str]]) -> "Labeling":
        return cls(tuple((k, frozenset(v)) for k, v in mapping.items()))

    def props(self, symbol: str) -> frozenset[str]:
        try:
            return self._map[symbol]
        except KeyError:
            raise ValueError(f"letter {symbol!r} not covered by the labeling") from None

    @property
    def _map(self) -> dict[str, frozenset[str]]:
        d = self.__dict__.get("_map_cache")
        if d is None:
            d = dict(self.entries)
            object.__setattr__(self, "_map_cache", d)
        return d

    def domain(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.entries)

    def proposition_set(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for _, props in self.entries:
            out |= props
        return out

    def _with_entry(self, symbol: str, props: frozenset[str]) -> "Labeling":
        rest = tuple((s, p) for s, p in self.entries if s != symbol)
        return Labeling(rest + ((symbol, props),))

    def eps_extension(self) -> "Labeling":
        """Padding letter # counts as an invisible step."""
        return self._with_entry(HASH_TOKEN, frozenset({EPS_TOKEN}))

    def hash_extension(self) -> "Labeling":
        """Padding letter # names itself."""
        return self._with_entry(HASH_TOKEN, frozenset({HASH_TOKEN}))


def evaluate_lasso(x: LassoWord, labeling: Labeling, f: Formula) -> bool:
    """Truth of the formula on stem.cycle^omega, by per-subformula fixpoints.

    Positions are the stem letters followed by one copy of the cycle, whose
    last position loops back to the cycle start.
    """
    n = len(x.stem) + len(x.cycle)
    nxt = [i + 1 for i in range(n)]
    nxt[n - 1] = len(x.stem)
    props = [labeling.props(x.letter_at(i)) for i in range(n)]
    memo: dict[Formula, list[bool]] = {}

    def arr(g: Formula) -> list[bool]:
        got = memo.get(g)
        if got is not None:
            return got
        if isinstance(g, TrueFormula):
            v = [True] * n
        elif isinstance(g, Atom):
            v = [g.name in props[i] for i in range(n)]
        elif isinstance(g, Not):
            v = [not b for b in arr(g.operand)]
        elif isinstance(g, And):
            l, r = arr(g.left), arr(g.right)
            v = [l[i] and r[i] for i in range(n)]
        elif isinstance(g, Or):
            l, r = arr(g.left), arr(g.right)
            v = [l[i] or r[i] for i in range(n)]
        elif isinstance(g, Implies):
            l, r = arr(g.left), arr(g.right)
            v = [(not l[i]) or r[i] for i in range(n)]
        elif isinstance(g, Iff):
            l, r = arr(g.left), arr(g.right)
            v = [l[i] == r[i] for i in range(n)]
        elif isinstance(g, Next):
            s = arr(g.operand)
            v = [s[nxt[i]] for i in range(n)]
        elif isinstance(g, Eventually):
            s = arr(g.operand)
            v = _lfp(n, nxt, lambda i, cur: s[i] or cur[nxt[i]], [False] * n)
        elif isinstance(g, Always):
            s = arr(g.operand)
            v = _lfp(n, nxt, lambda i, cur: s[i] and cur[nxt[i]], [True] * n)
        elif isinstance(g, Until):
            l, r = arr(g.left), arr(g.right)
            v = _lfp(n, nxt, lambda i, cur: r[i] or (l[i] and cur[nxt[i]]), [False] * n)
        elif isinstance(g, Before):
            v = [not b for b in arr(Until(Not(g.left), g.right))]
        else:
            raise TypeError(f"unknown formula node {g!r}")
        memo[g] = v
        return v

    return arr(f)[0]


def _lfp(n, nxt, step, start):
    v = list(start)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1, -1, -1):
            new = step(i, v)
            if new != v[i]:
                v[i] = new
                changed = True
    return v


# ---------------------------------------------------------------------------
# translation to Buchi automata (closure tableau)

def _desugar(f: Formula) -> Formula:
    """Rewrite into the core {true, atom, not, and, or, X, U}."""
    if isinstance(f, (TrueFormula, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_desugar(f.operand))
    if isinstance(f, And):
        return And(_desugar(f.left), _desugar(f.right))
    if isinstance(f, Or):
        return Or(_desugar(f.left), _desugar(f.right))
    if isinstance(f, Implies):
        return Or(Not(_desugar(f.left)), _desugar(f.right))
    if isinstance(f, Iff):
        l, r = _desugar(f.left), _desugar(f.right)
        return And(Or(Not(l), r), Or(Not(r), l))
    if isinstance(f, Next):
        return Next(_desugar(f.operand))
    if isinstance(f, Until):
        return Until(_desugar(f.left), _desugar(f.right))
    if isinstance(f, Before):
        return Not(Until(Not(_desugar(f.left)), _desugar(f.right)))
    if isinstance(f, Eventually):
        return Until(TRUE, _desugar(f.operand))
    if isinstance(f, Always):
        return Not(Until(TRUE, Not(_desugar(f.operand))))
    raise TypeError(f"unknown formula node {f!r}")


def _strip_not(f: Formula) -> tuple[Formula, bool]:
    neg = False
    while isinstance(f, Not):
        f = f.operand
        neg = not neg
    return f, neg


def _closure(core: Formula) -> list[Formula]:
    seen: set[Formula] = set()

    def walk(g: Formula) -> None:
        pos, _ = _strip_not(g)
        if pos not in seen:
            seen.add(pos)
        for c in children(g):
            walk(c)

    walk(core)
    return sorted(seen, key=format_formula)


class _Tableau:
    """Consistent-valuation states of the closure of one core formula."""

    def __init__(self, core: Formula, alphabet: Alphabet, labeling: Labeling):
        self.core = core
        self.alphabet = alphabet
        closure = _closure(core)
        self.atoms = [g for g in closure if isinstance(g, Atom)]
        self.nexts = [g for g in closure if isinstance(g, Next)]
        self.untils = [g for g in closure if isinstance(g, Until)]
        free = self.atoms + self.nexts + self.untils
        self.states: list[dict[Formula, bool]] = []
        for bits in range(1 << len(free)):
            assign = {g: bool(bits >> i & 1) for i, g in enumerate(free)}
            vals: dict[Formula, bool] = {}
            for g in closure:
                self._eval(g, assign, vals)
            ok = True
            for u in self.untils:
                vu = vals[u]
                vb = self._lookup(u.right, vals)
                va = self._lookup(u.left, vals)
                if (vb and not vu) or (vu and not vb and not va):
                    ok = False
                    break
            if ok:
                self.states.append(vals)
        # successor candidates share the X-target values their sources demand
        self.xtargets = [g.operand for g in self.nexts]
        buckets: dict[tuple[bool, ...], list[int]] = {}
        for i, vals in enumerate(self.states):
            key = tuple(self._lookup(t, vals) for t in self.xtargets)
            buckets.setdefault(key, []).append(i)
        self.succ: list[list[int]] = []
        for vals in self.states:
            key = tuple(vals[g] for g in self.nexts)
            forced = [
                (u, vals[u])
                for u in self.untils
                if not self._lookup(u.right, vals) and self._lookup(u.left, vals)
            ]
            cands = buckets.get(key, [])
            self.succ.append(
                [
                    j
                    for j in cands
                    if all(self.states[j][u] == want for u, want in forced)
                ]
            )
        self.letters: list[list[str]] = []
        for vals in self.states:
            self.letters.append(
                [
                    a
                    for a in alphabet
                    if all(vals[p] == (p.name in labeling.props(a)) for p in self.atoms)
                ]
            )

    def _eval(self, g: Formula, assign, vals) -> bool:
        got = vals.get(g)
        if got is not None:
            return got
        if isinstance(g, TrueFormula):
            v = True
        elif isinstance(g, (Atom, Next, Until)):
            v = assign[g]
        elif isinstance(g, And):
            v = self._eval_signed(g.left, assign, vals) and self._eval_signed(
                g.right, assign, vals
            )
        elif isinstance(g, Or):
            v = self._eval_signed(g.left, assign, vals) or self._eval_signed(
                g.right, assign, vals
            )
        else:
            raise TypeError(f"unexpected closure element {g!r}")
        vals[g] = v
        return v

    def _eval_signed(self, g: Formula, assign, vals) -> bool:
        pos, neg = _strip_not(g)
        return self._eval(pos, assign, vals) != neg

    def _lookup(self, g: Formula, vals) -> bool:
        pos, neg = _strip_not(g)
        return vals[pos] != neg

    def automaton(self, polarity: bool) -> BuchiAutomaton:
        """Reduced Buchi automaton for the words whose suffix valuation of the
        core formula at position 0 equals the polarity."""
        m = len(self.untils)
        init = [
            i for i, vals in enumerate(self.states)
            if self._lookup(self.core, vals) == polarity
        ]
        index: dict[tuple[int, int], int] = {}
        order: list[tuple[int, int]] = []
        for i in init:
            node = (i, 0)
            if node not in index:
                index[node] = len(order)
                order.append(node)
        transitions: set[tuple[int, str, int]] = set()
        pos = 0
        while pos < len(order):
            i, k = order[pos]
            vals = self.states[i]
            if m:
                u = self.untils[k]
                hit = (not vals[u]) or self._lookup(u.right, vals)
                k2 = (k + 1) % m if hit else k
            else:
                k2 = 0
            for j in self.succ[i]:
                node = (j, k2)
                if node not in index:
                    index[node] = len(order)
                    order.append(node)
                for a in self.letters[i]:
                    transitions.add((pos, a, index[node]))
            pos += 1
        if m:
            accepting = set()
            for node, idx in index.items():
                i, k = node
                vals = self.states[i]
                u = self.untils[m - 1]
                if k == m - 1 and ((not vals[u]) or self._lookup(u.right, vals)):
                    accepting.add(idx)
        else:
            accepting = set(range(len(order)))
        raw = BuchiAutomaton(
            self.alphabet,
            len(order),
            frozenset(range(len(init))),
            frozenset(accepting),
            frozenset(transitions),
        )
        return reduce_buchi(raw)


@lru_cache(maxsize=512)
def _to_buchi_cached(f: Formula, alphabet: Alphabet, labeling: Labeling):
    tab = _Tableau(_desugar(f), alphabet, labeling)
    return tab.automaton(True), tab.automaton(False)


def to_buchi(
    f: Formula, alphabet: Alphabet, labeling: Labeling | None = None
) -> tuple[BuchiAutomaton, BuchiAutomaton]:
    """Buchi automata for the formula and for its negation, both reduced.

    The pair partitions the omega-words over the alphabet, which is what lets
    callers avoid complementation entirely.
    """
    if labeling is None:
        labeling = Labeling.canonical(alphabet)
    return _to_buchi_cached(f, alphabet, labeling)
