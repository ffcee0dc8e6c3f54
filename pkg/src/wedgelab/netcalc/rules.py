"""Rewriting of net terms and label-level verification of net identities.

Every rewrite carries one of the tags in :data:`RULE_TAGS`. The strategy is
fixed (pre-order, first applicable rule at a node wins), which makes the
normal form deterministic:

* group elements are pushed down to the base subspaces (covariance),
  composing on the way and vanishing when central (central-fix);
* complements are pushed inside twists and direct sums, double complements
  cancel (complement-transform, dsum-distribute);
* the twist Z swaps the summands of a direct sum (twist-swap);
* net symbols defined through other nets are unfolded (eq-prime,
  dsum-distribute);
* wedge words are reduced: adjacent rotations merge, angles are taken
  modulo 2 pi because r(2 pi) = -1 acts trivially, central symbols are
  erased, and an element stabilizing the base wedge is dropped when it acts
  first (stabilizer-fix).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import dsmink
from .cosets import CosetNet, coset_equal
from .terms import (PRIME_SYMBOL, Apply, Base, Complement, DirectSum, Tensor, Term, Twist, Wedge,
                    map_wedges, print_term, print_wedge, rotation_symbol, symbol_kind)

RULE_TAGS = (
    "covariance", "stabilizer-fix", "complement-transform", "eq-prime",
    "central-fix", "twist-swap", "dsum-distribute",
)

JUSTIFICATION = {
    "covariance": "U(g)H(W) = H(gW); U(g)U(h) = U(gh)",
    "stabilizer-fix": "elements of the stabilizer of a wedge fix its subspace",
    "complement-transform": "(UH)' = UH' for unitary U; H'' = H",
    "eq-prime": "net-specific prime relation between subspaces of W and W'",
    "central-fix": "r(2pi) = -1 lies in every wedge stabilizer and fixes every net subspace",
    "twist-swap": "Z = [[0,1],[1,0]] swaps summands and commutes with U(g) + U(g)",
    "dsum-distribute": "operations act summand-wise on direct sums",
}

MAX_STEPS = 10_000


class UnknownSymbol(KeyError):
    pass


class NormalizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    tag: str
    rule: str
    before: str
    after: str

    def to_json(self) -> dict:
        return {"tag": self.tag, "rule": self.rule, "justification": JUSTIFICATION[self.tag],
                "before": self.before, "after": self.after}


@dataclass
class NetContext:
    """Nets, group symbols and base wedges for label-level computations.

    ``nets`` maps a net name to its kind: "primitive", "haag-dual" (a
    primitive net with H(W') = H(W)'), "prime-of" (K(W) = N(W')' for the
    primitive named in ``partner``), "dual-of" (Nd(W) = N(W)'), or "sum"
    (H~(W) = N(W) + K(W)).
    """
    name: str
    nets: dict[str, str]
    partner: dict[str, tuple[str, ...]] = field(default_factory=dict)
    symbols: dict[str, np.ndarray] = field(default_factory=dict)
    bases: dict[str, np.ndarray] = field(default_factory=lambda: {
        "W": dsmink.SIGMA1, "W1": dsmink.SIGMA1, "W2": dsmink.SIGMA2})
    main_net: str = "N"
    twisted: bool = False
    _cosets: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _stab: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def matrix(self, sym: str) -> np.ndarray:
        kind, val = symbol_kind(sym)
        if kind == "rot":
            return dsmink.r(float(val) * np.pi)
        if kind == "boost":
            return dsmink.boost(1, float(val))
        if kind == "central":
            return val * np.eye(2)
        if sym not in self.symbols:
            raise UnknownSymbol(f"unknown group symbol {sym!r} in context {self.name}")
        return self.symbols[sym]

    def word_matrix(self, word) -> np.ndarray:
        g = np.eye(2)
        for s in word:
            g = g @ self.matrix(s)
        return g

    def base_euler(self, base: str) -> np.ndarray:
        if base not in self.bases:
            raise UnknownSymbol(f"unknown base wedge {base!r} in context {self.name}")
        return self.bases[base]

    def coset_net(self, base: str) -> CosetNet:
        k = self.base_euler(base)
        net = self._cosets.get(base)
        if net is None or not np.array_equal(net.euler, k):
            net = CosetNet(group="SL2(R)", base=base, euler=k, algebra_basis=(k,),
                           discrete_generators=(-np.eye(2),))
            self._cosets[base] = net
        return net

    def stabilizes(self, base: str, sym: str) -> bool:
        """Whether the symbol lies in the stabilizer of the base wedge (memoized)."""
        key = (base, sym)
        if key not in self._stab:
            self._stab[key] = coset_equal(self.coset_net(base), self.matrix(sym), np.eye(2))
        return self._stab[key]


def ds2_symbols() -> dict[str, np.ndarray]:
    g = np.array([[1.0, 0.5], [0.25, 1.125]])  # det 1, a generic element
    return {"g": g, "h": np.array([[2.0, 1.0], [1.0, 1.0]])}


def make_context(name: str) -> NetContext:
    """Built-in contexts: ds2-twisted, bgl, dual."""
    if name == "ds2-twisted":
        return NetContext(name, {"N": "primitive", "K": "prime-of", "Htilde": "sum"},
                          partner={"K": ("N",), "Htilde": ("N", "K")},
                          symbols=ds2_symbols(), main_net="Htilde", twisted=True)
    if name == "bgl":
        return NetContext(name, {"N": "haag-dual"}, symbols=ds2_symbols(), main_net="N")
    if name == "dual":
        return NetContext(name, {"N": "haag-dual", "Nd": "dual-of"}, partner={"Nd": ("N",)},
                          symbols=ds2_symbols(), main_net="Nd")
    raise UnknownSymbol(f"unknown context {name!r}; choose ds2-twisted, bgl or dual")


CONTEXTS = ("ds2-twisted", "bgl", "dual")


# -- word reduction ---------------------------------------------------------------

def _is_central(ctx: NetContext, sym: str) -> bool:
    kind, val = symbol_kind(sym)
    if kind == "central":
        return True
    if kind == "rot":
        return val % 2 == 0
    if kind == "boost":
        return val == 0
    return False


def _reduce_word_once(ctx: NetContext, word: tuple[str, ...], base: str | None):
    """One reduction step on a group word; None if irreducible."""
    for i, s in enumerate(word):
        kind, val = symbol_kind(s)
        if kind == "named":
            ctx.matrix(s)
        if kind == "rot" and not 0 <= val < 2:
            # r(theta + 2 pi) = -r(theta), and -1 acts trivially
            new = rotation_symbol(val % 2)
            return word[:i] + (new,) + word[i + 1:], "central-fix", "r(theta) = -r(theta - 2pi)"
        if _is_central(ctx, s):
            g = ctx.matrix(s)
            assert np.allclose(np.abs(g), np.eye(2)), "central-fix fired on a non-central element"
            return word[:i] + word[i + 1:], "central-fix", f"{s} is central"
        if i + 1 < len(word):
            k2, v2 = symbol_kind(word[i + 1])
            if kind == "rot" and k2 == "rot":
                return word[:i] + (rotation_symbol(val + v2),) + word[i + 2:], "covariance", \
                    "r(a) r(b) = r(a + b)"
            if kind == "boost" and k2 == "boost":
                return word[:i] + (f"b({val + v2})",) + word[i + 2:], "covariance", \
                    "b(s) b(t) = b(s + t)"
    if base is not None and word:
        last = word[-1]
        if ctx.stabilizes(base, last):
            return word[:-1], "stabilizer-fix", f"{last} stabilizes {base}"
    return None


# -- rewriting --------------------------------------------------------------------

def _net_rule(ctx: NetContext, t: Base):
    kind = ctx.nets.get(t.net)
    if kind is None:
        raise UnknownSymbol(f"unknown net {t.net!r} in context {ctx.name}")
    w = t.wedge
    if kind == "sum":
        a, b = ctx.partner[t.net]
        return DirectSum(Base(a, w), Base(b, w)), "dsum-distribute", f"{t.net}(W) = {a}(W) (+) {b}(W)"
    if kind == "prime-of":
        (a,) = ctx.partner[t.net]
        return Complement(Base(a, w.prime())), "eq-prime", f"{t.net}(W) = {a}(W')'"
    if kind == "dual-of":
        (a,) = ctx.partner[t.net]
        return Complement(Base(a, w)), "eq-prime", f"{t.net}(W) = {a}(W)'"
    if kind == "haag-dual" and w.word:
        k, q = symbol_kind(w.word[-1])
        if k == "rot" and 1 <= q < 2:
            rest = w.word[:-1] + ((rotation_symbol(q - 1),) if q != 1 else ())
            return Complement(Base(t.net, Wedge(w.base, rest))), "eq-prime", f"{t.net}(W') = {t.net}(W)'"
    return None


def _rewrite_here(ctx: NetContext, t: Term):
    if isinstance(t, Base):
        red = _reduce_word_once(ctx, t.wedge.word, t.wedge.base)
        if red:
            word, tag, rule = red
            return Base(t.net, Wedge(t.wedge.base, word)), tag, rule
        return _net_rule(ctx, t)
    if isinstance(t, Apply):
        red = _reduce_word_once(ctx, t.word, None)
        if red:
            word, tag, rule = red
            if not word:
                return t.body, tag, rule
            return Apply(word, t.body), tag, rule
        b = t.body
        if isinstance(b, Apply):
            return Apply(t.word + b.word, b.body), "covariance", "U(g)U(h) = U(gh)"
        if isinstance(b, Twist):
            return Twist(Apply(t.word, b.body)), "twist-swap", "Z commutes with U(g) + U(g)"
        if isinstance(b, DirectSum):
            return DirectSum(Apply(t.word, b.left), Apply(t.word, b.right)), "dsum-distribute", \
                "U(g)(A (+) B) = U(g)A (+) U(g)B"
        if isinstance(b, Tensor):
            return Tensor(Apply(t.word, b.left), Apply(t.word, b.right)), "covariance", \
                "U(g) = V(g) (x) U0(g) acts factor-wise"
        if isinstance(b, Complement):
            return Complement(Apply(t.word, b.body)), "complement-transform", "U(g)(H') = (U(g)H)'"
        if isinstance(b, Base):
            return Base(b.net, b.wedge.moved(t.word)), "covariance", "U(g)H(W) = H(gW)"
        return None
    if isinstance(t, Complement):
        b = t.body
        if isinstance(b, Complement):
            return b.body, "complement-transform", "H'' = H"
        if isinstance(b, Twist):
            return Twist(Complement(b.body)), "complement-transform", "(ZH)' = ZH' (Z unitary)"
        if isinstance(b, DirectSum):
            return DirectSum(Complement(b.left), Complement(b.right)), "dsum-distribute", \
                "(A (+) B)' = A' (+) B'"
        return None
    if isinstance(t, Twist):
        b = t.body
        if isinstance(b, Twist):
            return b.body, "twist-swap", "Z^2 = 1"
        if isinstance(b, DirectSum):
            return DirectSum(b.right, b.left), "twist-swap", "Z(A (+) B) = B (+) A"
        return None
    return None


def _rewrite(ctx: NetContext, t: Term):
    here = _rewrite_here(ctx, t)
    if here:
        return here
    if isinstance(t, (Apply, Complement, Twist)):
        r = _rewrite(ctx, t.body)
        if r:
            return type(t)(*((t.word,) if isinstance(t, Apply) else ()), r[0]), r[1], r[2]
        return None
    if isinstance(t, (DirectSum, Tensor)):
        r = _rewrite(ctx, t.left)
        if r:
            return type(t)(r[0], t.right), r[1], r[2]
        r = _rewrite(ctx, t.right)
        if r:
            return type(t)(t.left, r[0]), r[1], r[2]
    return None


def normalize(term: Term, ctx: NetContext, max_steps: int = MAX_STEPS) -> tuple[Term, list[Step]]:
    steps: list[Step] = []
    t = term
    for _ in range(max_steps):
        r = _rewrite(ctx, t)
        if r is None:
            return t, steps
        new, tag, rule = r
        steps.append(Step(tag, rule, print_term(t), print_term(new)))
        t = new
    raise NormalizationError(f"no normal form within {max_steps} steps")


# -- identities --------------------------------------------------------------------

def _literals_equal(ctx: NetContext, a: Term, b: Term) -> bool:
    """Structural equality, comparing base wedges by their cosets."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Base):
        if a.net != b.net or a.wedge.base != b.wedge.base:
            return False
        if a.wedge == b.wedge:
            return True
        net = ctx.coset_net(a.wedge.base)
        return coset_equal(net, ctx.word_matrix(a.wedge.word), ctx.word_matrix(b.wedge.word))
    if isinstance(a, Apply):
        return a.word == b.word and _literals_equal(ctx, a.body, b.body)
    if isinstance(a, (Complement, Twist)):
        return _literals_equal(ctx, a.body, b.body)
    return _literals_equal(ctx, a.left, b.left) and _literals_equal(ctx, a.right, b.right)


@dataclass
class IdentityResult:
    proved: bool
    lhs: str
    rhs: str
    lhs_normal: str
    rhs_normal: str
    lhs_steps: list[Step]
    rhs_steps: list[Step]

    @property
    def tags(self) -> set[str]:
        return {s.tag for s in self.lhs_steps + self.rhs_steps}

    @property
    def transcript(self) -> list[Step]:
        return self.lhs_steps + self.rhs_steps

    def to_json(self) -> dict:
        out = {
            "identity": f"{self.lhs} = {self.rhs}",
            "proved": self.proved,
            "lhs_normal_form": self.lhs_normal,
            "rhs_normal_form": self.rhs_normal,
            "lhs_transcript": [s.to_json() for s in self.lhs_steps],
            "rhs_transcript": [s.to_json() for s in self.rhs_steps],
            "tags": sorted(self.tags),
        }
        if not self.proved:
            out["counterexample"] = {"lhs": self.lhs_normal, "rhs": self.rhs_normal}
        return out


def verify_identity(lhs: Term, rhs: Term, ctx: NetContext) -> IdentityResult:
    ln, ls = normalize(lhs, ctx)
    rn, rs = normalize(rhs, ctx)
    return IdentityResult(_literals_equal(ctx, ln, rn), print_term(lhs), print_term(rhs),
                          print_term(ln), print_term(rn), ls, rs)


def duality_identity(ctx: NetContext, wedge: Wedge, twist: bool) -> tuple[Term, Term]:
    """X(W') = [Z·]X(W)' for the main net X of the context."""
    x = ctx.main_net
    rhs: Term = Complement(Base(x, wedge))
    if twist:
        rhs = Twist(rhs)
    return Base(x, wedge.prime()), rhs


def covariance_closure(lhs: Term, rhs: Term, ctx: NetContext, words) -> list[IdentityResult]:
    """Verify the identity transported to g.W for each group word g."""
    out = []
    for word in words:
        def move(w, word=tuple(word)):
            return w.moved(word)
        out.append(verify_identity(map_wedges(lhs, move), map_wedges(rhs, move), ctx))
    return out


ROTATION_ORBIT = tuple(rotation_symbol(Fraction(k, 2)) for k in range(4))


def check_duality(context: str | NetContext, twist: bool | None = None, base: str = "W") -> dict:
    """Label-level (twisted) Haag duality over the rotation orbit of the base wedge."""
    ctx = make_context(context) if isinstance(context, str) else context
    twist = ctx.twisted if twist is None else twist
    rows = []
    for sym in ROTATION_ORBIT:
        w = Wedge(base, (sym,) if sym != "r(0)" else ())
        lhs, rhs = duality_identity(ctx, w, twist)
        res = verify_identity(lhs, rhs, ctx)
        rows.append({"wedge": print_wedge(w), "identity": f"{print_term(lhs)} = {print_term(rhs)}",
                     "holds": res.proved, "lhs_normal_form": res.lhs_normal,
                     "rhs_normal_form": res.rhs_normal})
    return {"context": ctx.name, "net": ctx.main_net, "twist": twist,
            "dual": all(r["holds"] for r in rows), "wedges": rows}


__all__ = [
    "RULE_TAGS", "JUSTIFICATION", "UnknownSymbol", "NormalizationError", "Step", "NetContext",
    "make_context", "CONTEXTS", "normalize", "verify_identity", "IdentityResult",
    "duality_identity", "covariance_closure", "check_duality", "ROTATION_ORBIT", "PRIME_SYMBOL",
]
