"""Parser and printer for ``.qdx`` fixture files.

A file is a sequence of bindings ``KIND NAME = EXPR``; a binding may span
several lines while brackets are open.  ``#`` starts a comment.  See the
README for the grammar with examples.  ``dumps(parse(text))`` re-parses to
an equal environment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import grpcat as gc
from .assemble import AlgebraicSide, Fixture, PairSpec, Restriction
from .cohmodel import ElementaryAbelian, LinearWAction, Presented, SeriesOnly
from .errors import (BadPermutation, DuplicateName, FixtureSyntaxError, ParseError,
                     UnknownReference)
from .monalg import GradedModule, MonIdeal, MonPrime, MonRingMap, WeightedRing
from .series import SeriesExpr, format_rational

KINDS = ("ring", "ideal", "module", "map", "group", "gset", "model", "fixture")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<comment>\#[^\n]*) | (?P<nl>\n)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<arrow>->)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<punct>[{}\[\]()<>=,;@+*^/:])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class RingIdeal:
    ring: WeightedRing
    ideal: MonIdeal


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-")
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FixtureSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            out.append(Token("nl", s, line, col))
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0
        self.env: dict[str, tuple[str, Any]] = {}
        self.declared_later: set[str] = set()
        self._prescan()

    def _prescan(self):
        at_start = True
        for k, t in enumerate(self.toks):
            if t.kind == "nl":
                at_start = True
                continue
            if at_start and t.kind == "name" and t.text in KINDS:
                nxt = self.toks[k + 1] if k + 1 < len(self.toks) else None
                if nxt is not None and nxt.kind == "name":
                    self.declared_later.add(nxt.text)
            at_start = False

    # -- token helpers --------------------------------------------------
    def peek(self) -> Token:
        j = self.i
        if self.depth:
            while self.toks[j].kind == "nl":
                j += 1
        return self.toks[j]

    def next(self) -> Token:
        if self.depth:
            while self.toks[self.i].kind == "nl":
                self.i += 1
        t = self.toks[self.i]
        self.i += 1
        if t.text in "([{<" and t.kind == "punct":
            self.depth += 1
        elif t.text in ")]}>" and t.kind == "punct":
            self.depth = max(0, self.depth - 1)
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        where = "end of input" if tok.kind == "eof" else repr(tok.text) if tok.kind != "nl" else "end of line"
        raise FixtureSyntaxError(f"{msg} (found {where})", tok.line, tok.col)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind in ("string",):
            self.error(f"expected {text!r}")
        return self.next()

    def accept(self, text: str) -> bool:
        t = self.peek()
        if t.text == text and t.kind != "string":
            self.next()
            return True
        return False

    def name(self) -> Token:
        t = self.peek()
        if t.kind != "name":
            self.error("expected a name")
        return self.next()

    def integer(self) -> int:
        t = self.peek()
        if t.kind != "int":
            self.error("expected an integer")
        return int(self.next().text)

    def string(self) -> str:
        t = self.peek()
        if t.kind != "string":
            self.error("expected a string")
        s = self.next().text[1:-1]
        return re.sub(r"\\(.)", r"\1", s)

    def rational(self) -> Fraction:
        a = self.integer()
        if self.accept("/"):
            b = self.integer()
            if b == 0:
                self.error("zero denominator")
            return Fraction(a, b)
        return Fraction(a)

    def ref(self, kind: str | tuple[str, ...]):
        t = self.name()
        kinds = (kind,) if isinstance(kind, str) else kind
        if t.text not in self.env:
            what = "forward reference to" if t.text in self.declared_later else "unknown name"
            raise UnknownReference(f"{what} {t.text!r}", t.line, t.col)
        k, v = self.env[t.text]
        if k not in kinds:
            raise UnknownReference(f"{t.text!r} is a {k}, expected {' or '.join(kinds)}",
                                   t.line, t.col)
        return k, v

    def end_statement(self):
        t = self.peek()
        if t.kind == "punct" and t.text == ";":
            self.next()
            t = self.peek()
        if t.kind not in ("nl", "eof"):
            self.error("expected end of statement")

    def last(self, kind: str):
        for k, v in reversed(list(self.env.values())):
            if k == kind:
                return v
        return None

    # -- statements -----------------------------------------------------
    def parse(self) -> dict[str, tuple[str, Any]]:
        while True:
            t = self.peek()
            if t.kind == "eof":
                return self.env
            if t.kind == "nl":
                self.next()
                continue
            self.statement()

    def statement(self):
        kt = self.name()
        if kt.text not in KINDS:
            raise FixtureSyntaxError(f"unknown declaration kind {kt.text!r}", kt.line, kt.col)
        nt = self.name()
        if nt.text in self.env:
            raise DuplicateName(f"name {nt.text!r} is already bound", nt.line, nt.col)
        kind = kt.text
        if kind == "fixture":
            value = self.fixture_body(nt.text)
        else:
            self.expect("=")
            value = getattr(self, f"{kind}_expr")()
        self.end_statement()
        self.env[nt.text] = (kind, value)

    # -- rings and ideals ---------------------------------------------------
    def ring_expr(self) -> WeightedRing:
        if self.peek().kind == "name" and self.peek().text != "ring":
            return self.ref("ring")[1]
        self.expect("ring")
        self.expect("{")
        fields: dict[str, Any] = {}
        while not self.accept("}"):
            key = self.name()
            self.expect("=")
            if key.text == "vars":
                fields["vars"] = self.name_list()
            elif key.text == "weights":
                fields["weights"] = self.int_list()
            elif key.text == "p":
                fields["p"] = self.integer()
            else:
                self.error(f"unknown ring field {key.text!r}", key)
            if not self.accept(";") and self.peek().text != "}":
                self.error("expected ';' or '}'")
        names = fields.get("vars", [])
        weights = fields.get("weights", [1] * len(names))
        if len(weights) != len(names):
            self.error("vars and weights differ in length")
        try:
            return WeightedRing(tuple(weights), fields.get("p", 2), tuple(names))
        except ValueError as exc:
            self.error(str(exc))

    def name_list(self) -> list[str]:
        self.expect("[")
        out = []
        while not self.accept("]"):
            out.append(self.name().text)
            if not self.accept(",") and self.peek().text != "]":
                self.error("expected ',' or ']'")
        return out

    def int_list(self) -> list[int]:
        self.expect("[")
        out = []
        while not self.accept("]"):
            out.append(self.integer())
            if not self.accept(",") and self.peek().text != "]":
                self.error("expected ',' or ']'")
        return out

    def string_list(self) -> list[str]:
        self.expect("[")
        out = []
        while not self.accept("]"):
            out.append(self.string())
            if not self.accept(",") and self.peek().text != "]":
                self.error("expected ',' or ']'")
        return out

    def monomials(self, ring: WeightedRing, strs: list[str], tok: Token) -> MonIdeal:
        try:
            return MonIdeal.parse(ring, strs)
        except ValueError as exc:
            raise FixtureSyntaxError(str(exc), tok.line, tok.col) from None

    def ideal_expr(self) -> RingIdeal:
        tok = self.peek()
        if tok.kind == "name" and tok.text != "ideal":
            return self.ref("ideal")[1]
        self.accept("ideal")
        strs = self.string_list()
        ring = self.over_ring(tok)
        return RingIdeal(ring, self.monomials(ring, strs, tok))

    def over_ring(self, tok: Token) -> WeightedRing:
        if self.accept("over"):
            return self.ring_expr()
        ring = self.last("ring")
        if ring is None:
            self.error("no ring declared and no 'over' clause", tok)
        return ring

    def module_expr(self) -> GradedModule:
        tok = self.peek()
        terms = []
        while True:
            t = self.peek()
            if t.kind == "name" and t.text != "ideal":
                k, v = self.ref(("ideal", "model", "module"))
                if k == "model":
                    if not isinstance(v, Presented):
                        raise UnknownReference(f"model {t.text!r} is not presented", t.line, t.col)
                    v = RingIdeal(v.ring, v.ideal)
                if k == "module":
                    terms.append(("module", v, 0))
                else:
                    terms.append(("ideal", v, self.shift_suffix()))
            else:
                self.accept("ideal")
                strs = self.string_list()
                terms.append(("strs", (strs, t), self.shift_suffix()))
            if not self.accept("+"):
                break
        rings = {v.ring for k, v, _ in terms if k in ("ideal", "module")}
        if any(k == "strs" for k, _, _ in terms) or self.peek().text == "over":
            ring = self.over_ring(tok)
            rings.add(ring)
        if len(rings) != 1:
            self.error("module summands live over different rings", tok)
        ring = rings.pop()
        summands = []
        for k, v, s in terms:
            if k == "module":
                summands.extend(v.summands)
            elif k == "ideal":
                summands.append((s, v.ideal))
            else:
                summands.append((s, self.monomials(ring, v[0], v[1])))
        return GradedModule(ring, tuple(summands))

    def shift_suffix(self) -> int:
        if self.peek().text == "(" and self.peek().kind == "punct":
            self.next()
            s = self.integer()
            self.expect(")")
            return s
        return 0

    def map_expr(self) -> MonRingMap:
        tok = self.peek()
        src = self.ring_expr()
        self.expect("->")
        tgt = self.ring_expr()
        self.expect("{")
        images: dict[int, Any] = {}
        while not self.accept("}"):
            u = self.name()
            if u.text not in src.names:
                self.error(f"{u.text!r} is not a variable of the source ring", u)
            self.expect("->")
            images[src.names.index(u.text)] = self.image(tgt)
            if not self.accept(";") and self.peek().text != "}":
                self.error("expected ';' or '}'")
        if len(images) != src.n:
            self.error("every source variable needs an image", tok)
        try:
            return MonRingMap(src, tgt, tuple(images[i] for i in range(src.n)))
        except ValueError as exc:
            raise FixtureSyntaxError(str(exc), tok.line, tok.col) from None

    def image(self, tgt: WeightedRing):
        t = self.peek()
        if t.kind == "string":
            text = self.string()
        else:
            parts = []
            while self.peek().kind in ("name", "int") or self.peek().text in ("*", "^"):
                parts.append(self.next().text)
            text = "".join(parts)
        if text.strip() == "0":
            return None
        try:
            return tgt.monomial(text)
        except ValueError as exc:
            raise FixtureSyntaxError(str(exc), t.line, t.col) from None

    # -- groups and G-sets --------------------------------------------------
    def perm_list(self, degree: int | None = None) -> list[tuple[Token, str]]:
        self.expect("<")
        out = []
        while not self.accept(">"):
            t = self.peek()
            if t.text != "(":
                self.error("expected a permutation in cycle notation")
            parts = []
            while self.peek().text == "(":
                self.next()
                nums = []
                while not self.accept(")"):
                    if self.peek().kind != "int":
                        raise BadPermutation(f"expected a point, found {self.peek().text!r}",
                                             self.peek().line, self.peek().col)
                    nums.append(self.next().text)
                    self.accept(",")
                parts.append("(" + " ".join(nums) + ")")
            out.append((t, "".join(parts)))
            if not self.accept(",") and self.peek().text != ">":
                self.error("expected ',' or '>'")
        return out

    def perms(self, raw, degree: int | None) -> tuple[gc.Perm, ...]:
        out = []
        for tok, text in raw:
            try:
                out.append(gc.parse_cycles(text, degree))
            except BadPermutation as exc:
                raise BadPermutation(str(exc), tok.line, tok.col) from None
        return tuple(out)

    def group_expr(self) -> gc.PermGroup:
        t = self.peek()
        if t.kind == "name":
            return self.ref("group")[1]
        raw = self.perm_list()
        degree = None
        if self.accept("on"):
            degree = self.integer()
        if degree is None:
            degree = max((len(gc.parse_cycles(s)) for tok, s in raw
                          if re.search(r"\d", s)), default=1)
        return gc.PermGroup(degree, self.perms(raw, degree))

    def subgroup_gens(self, G: gc.PermGroup) -> tuple[gc.Perm, ...]:
        tok = self.peek()
        gens = self.perms(self.perm_list(), G.degree)
        if not set(gens) <= G.elements:
            raise BadPermutation("subgroup generator is not an element of the group",
                                 tok.line, tok.col)
        return gens

    def gset_expr(self, group: gc.PermGroup | None = None) -> gc.GSet:
        tok = self.peek()
        if tok.kind == "name" and tok.text in self.env and self.env[tok.text][0] == "gset":
            return self.ref("gset")[1]
        terms = []
        while True:
            t = self.name()
            if t.text == "pt":
                terms.append(("pt", None, None))
            elif t.text == "free":
                self.expect("(")
                G = None
                if self.peek().kind == "name":
                    G = self.group_expr()
                    self.expect(",")
                k = self.integer()
                self.expect(")")
                terms.append(("free", G, k))
            elif t.text == "cosets":
                self.expect("(")
                G = self.group_expr()
                self.expect(",")
                gens = self.subgroup_gens(G)
                self.expect(")")
                terms.append(("cosets", G, gens))
            elif t.text == "action":
                self.expect("(")
                G = self.group_expr()
                self.expect(",")
                tables = self.nested_ints()
                self.expect(")")
                terms.append(("action", G, tables))
            else:
                self.error("expected pt, free(...), cosets(...) or action(...)", t)
            if not self.accept("+"):
                break
        if self.accept("over"):
            group = self.group_expr()
        groups = {G for _, G, _ in terms if G is not None}
        if group is not None:
            groups.add(group)
        if len(groups) != 1:
            self.error("cannot determine a single group for this G-set", tok)
        G = groups.pop()
        X = None
        for kind, _, arg in terms:
            if kind == "pt":
                piece = gc.point(G)
            elif kind == "free":
                piece = gc.free_orbits(G, arg)
            elif kind == "cosets":
                piece = gc.coset_space(G, gc.generated(G, arg))
            else:
                size = len(arg[0]) if arg else 0
                try:
                    piece = gc.GSet(G, size, tuple(tuple(r) for r in arg))
                except BadPermutation as exc:
                    raise BadPermutation(str(exc), tok.line, tok.col) from None
            X = piece if X is None else X + piece
        return X

    def nested_ints(self):
        t = self.peek()
        if t.kind == "int":
            return self.integer()
        self.expect("[")
        out = []
        while not self.accept("]"):
            out.append(self.nested_ints())
            if not self.accept(",") and self.peek().text != "]":
                self.error("expected ',' or ']'")
        return out

    # -- models ---------------------------------------------------------------
    def model_expr(self):
        t = self.name()
        if t.text in self.env:
            self.i -= 1
            return self.ref("model")[1]
        if t.text not in ("elemab", "presented", "series"):
            self.error("expected elemab(...), presented(...) or series(...)", t)
        self.expect("(")
        if t.text == "presented":
            ring = self.ring_expr()
            self.expect(",")
            itok = self.peek()
            if itok.kind == "name" and itok.text != "ideal":
                ri = self.ref("ideal")[1]
                if ri.ring != ring:
                    self.error("ideal belongs to a different ring", itok)
                ideal = ri.ideal
            else:
                self.accept("ideal")
                ideal = self.monomials(ring, self.string_list(), itok)
            self.expect(")")
            return Presented(ring, ideal)
        kw = {}
        while not self.accept(")"):
            key = self.name()
            self.expect("=")
            if key.text in ("num", "den"):
                kw[key.text] = self.int_list()
            elif key.text in ("rank", "p", "dim"):
                kw[key.text] = self.integer()
            elif key.text in ("note", "convention"):
                kw[key.text] = self.string()
            elif key.text == "action":
                kw["action"] = self.nested_ints()
            else:
                self.error(f"unknown model field {key.text!r}", key)
            if not self.accept(",") and self.peek().text != ")":
                self.error("expected ',' or ')'")
        try:
            if t.text == "elemab":
                return ElementaryAbelian(kw["rank"], kw["p"])
            action = None
            if "action" in kw:
                mats = kw["action"]
                depth = 0
                probe = mats
                while isinstance(probe, list) and probe:
                    depth += 1
                    probe = probe[0]
                if depth == 2:
                    mats = [mats]
                action = LinearWAction(kw["p"], tuple(tuple(tuple(r) for r in m) for m in mats))
            return SeriesOnly(SeriesExpr(tuple(kw.get("num", [1])), tuple(kw.get("den", []))),
                              kw["dim"], kw.get("note", ""), action, kw.get("convention", "full"))
        except KeyError as exc:
            raise FixtureSyntaxError(f"missing field {exc.args[0]!r}", t.line, t.col) from None
        except ValueError as exc:
            raise FixtureSyntaxError(str(exc), t.line, t.col) from None

    # -- fixtures -------------------------------------------------------------
    def pair_spec(self, G: gc.PermGroup) -> PairSpec:
        gens = self.subgroup_gens(G)
        self.expect("@")
        return PairSpec(gens, self.integer())

    def prime(self, ring: WeightedRing) -> MonPrime:
        self.expect("(")
        vs = []
        while not self.accept(")"):
            t = self.next()
            if t.kind == "int" and t.text == "0":
                pass
            elif t.kind == "name" and t.text in ring.names:
                vs.append(ring.names.index(t.text))
            else:
                self.error(f"{t.text!r} is not a variable of the ring", t)
            self.accept(",")
        return MonPrime(tuple(vs))

    def fixture_body(self, name: str) -> Fixture:
        start = self.expect("{")
        f: dict[str, Any] = {"stab": [], "central": [], "primes": [], "restrict": []}
        while True:
            t = self.peek()
            if t.text == "}" and t.kind == "punct":
                self.next()
                break
            if t.text == ";":
                self.next()
                continue
            key = self.name()
            G = f.get("group")
            if key.text in ("X", "stab", "central", "prime", "restrict") and G is None:
                self.error("declare 'group' before this field", key)
            if key.text == "group":
                self.expect("=")
                f["group"] = self.group_expr()
            elif key.text == "p":
                self.expect("=")
                f["p"] = self.integer()
            elif key.text == "X":
                self.expect("=")
                f["X"] = self.gset_expr(G)
                if f["X"].group != G:
                    self.error("G-set is over a different group", key)
            elif key.text == "global":
                self.expect("=")
                f["global"] = self.model_expr()
            elif key.text == "stab":
                gens = self.subgroup_gens(G)
                self.expect("=")
                f["stab"].append((gens, self.model_expr()))
            elif key.text == "central":
                spec = self.pair_spec(G)
                self.expect("=")
                f["central"].append((spec, self.model_expr()))
            elif key.text == "algebraic":
                self.expect("=")
                f["algebraic"] = self.module_expr()
            elif key.text == "prime":
                if "algebraic" not in f:
                    self.error("declare 'algebraic' before 'prime'", key)
                spec = self.pair_spec(G)
                self.expect("->")
                f["primes"].append((spec, self.prime(f["algebraic"].ring)))
            elif key.text == "restrict":
                spec = self.pair_spec(G)
                self.expect("via")
                fmap = self.map_expr_or_ref()
                self.expect("->")
                f["restrict"].append(Restriction(spec, fmap, self.prime(fmap.target)))
            elif key.text == "expect":
                side = self.name()
                if side.text not in ("lhs", "rhs"):
                    self.error("expected 'lhs' or 'rhs'", side)
                self.expect("=")
                f[f"expect_{side.text}"] = self.rational()
            elif key.text == "note":
                self.expect("=")
                f["note"] = self.string()
            else:
                self.error(f"unknown fixture field {key.text!r}", key)
            nt = self.peek()
            if nt.text == ";":
                self.next()
        for req in ("group", "p"):
            if req not in f:
                raise FixtureSyntaxError(f"fixture {name!r} lacks {req!r}", start.line, start.col)
        X = f.get("X") or gc.point(f["group"])
        alg = None
        if "algebraic" in f:
            M = f["algebraic"]
            alg = AlgebraicSide(M.ring, M, tuple(f["primes"]), tuple(f["restrict"]))
        return Fixture(name, f["group"], f["p"], X, tuple(f["stab"]), tuple(f["central"]),
                       f.get("global"), alg, f.get("expect_lhs"), f.get("expect_rhs"),
                       f.get("note", ""))

    def map_expr_or_ref(self) -> MonRingMap:
        t = self.peek()
        if t.kind == "name" and t.text in self.env and self.env[t.text][0] == "map":
            return self.ref("map")[1]
        return self.map_expr()


def parse(text: str) -> dict[str, tuple[str, Any]]:
    """Parse fixture text into an ordered environment ``name -> (kind, value)``."""
    try:
        return Parser(text).parse()
    except ParseError:
        raise
    except (ValueError, KeyError) as exc:
        raise FixtureSyntaxError(str(exc)) from None


def load(path) -> dict[str, tuple[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- printing ----------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


class Printer:
    def __init__(self):
        self.named: list[tuple[str, str, Any]] = []

    def lookup(self, kind, value):
        for n, k, v in self.named:
            if k == kind and v == value:
                return n
        return None

    def ring(self, R: WeightedRing) -> str:
        n = self.lookup("ring", R)
        if n:
            return n
        return (f"ring {{ vars=[{', '.join(R.names)}]; "
                f"weights=[{', '.join(map(str, R.weights))}]; p={R.p} }}")

    def ideal_list(self, R: WeightedRing, I: MonIdeal) -> str:
        return "[" + ", ".join(_q(R.format_monomial(g)) for g in I.gens) + "]"

    def ideal(self, ri: RingIdeal) -> str:
        return f"{self.ideal_list(ri.ring, ri.ideal)} over {self.ring(ri.ring)}"

    def module(self, M: GradedModule) -> str:
        if not M.summands:
            raise ValueError("cannot print the empty module")
        terms = []
        for s, I in M.summands:
            terms.append(self.ideal_list(M.ring, I) + (f"({s})" if s else ""))
        return " + ".join(terms) + f" over {self.ring(M.ring)}"

    def map(self, f: MonRingMap) -> str:
        return self.lookup("map", f) or self._inline_map(f)

    def perms(self, gens) -> str:
        return "<" + ", ".join(gc.format_cycles(g) for g in gens) + ">"

    def group(self, G: gc.PermGroup) -> str:
        n = self.lookup("group", G)
        if n:
            return n
        return self.perms(G.generators) + f" on {G.degree}"

    def gset(self, X: gc.GSet) -> str:
        n = self.lookup("gset", X)
        if n:
            return n
        rows = ", ".join("[" + ", ".join(map(str, a)) + "]" for a in X.action)
        return f"action({self.group(X.group)}, [{rows}])"

    def model(self, m) -> str:
        n = self.lookup("model", m)
        if n:
            return n
        if isinstance(m, ElementaryAbelian):
            return f"elemab(rank={m.rank}, p={m.p})"
        if isinstance(m, Presented):
            return f"presented({self.ring(m.ring)}, {self.ideal_list(m.ring, m.ideal)})"
        s = m.series
        parts = [f"num=[{', '.join(map(str, s.numerator))}]",
                 f"den=[{', '.join(map(str, s.denom_weights))}]", f"dim={m.declared_dim}"]
        if m.note:
            parts.append(f"note={_q(m.note)}")
        if m.convention != "full":
            parts.append(f"convention={_q(m.convention)}")
        if m.action is not None:
            mats = ", ".join("[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in mat) + "]"
                             for mat in m.action.matrices)
            parts.append(f"p={m.action.p}")
            parts.append(f"action=[{mats}]")
        return f"series({', '.join(parts)})"

    def prime(self, R: WeightedRing, q: MonPrime) -> str:
        return "(" + ", ".join(R.names[v] for v in q.vars) + ")" if q.vars else "(0)"

    def pair(self, spec: PairSpec) -> str:
        return f"{self.perms(spec.gens)} @ {spec.c}"

    def fixture(self, f: Fixture) -> str:
        lines = [f"group = {self.group(f.group)}", f"p = {f.p}", f"X = {self.gset(f.X)}"]
        if f.global_model is not None:
            lines.append(f"global = {self.model(f.global_model)}")
        for gens, m in f.stabilizer_models:
            lines.append(f"stab {self.perms(gens)} = {self.model(m)}")
        for spec, m in f.centralizer_models:
            lines.append(f"central {self.pair(spec)} = {self.model(m)}")
        if f.algebraic is not None:
            a = f.algebraic
            lines.append(f"algebraic = {self.module(a.module)}")
            for spec, q in a.class_primes:
                lines.append(f"prime {self.pair(spec)} -> {self.prime(a.ring, q)}")
            for r in a.restrictions:
                lines.append(f"restrict {self.pair(r.pair)} via {self.map(r.map)} -> "
                             f"{self.prime(r.map.target, r.target_prime)}")
        if f.expected_lhs is not None:
            lines.append(f"expect lhs = {format_rational(f.expected_lhs)}")
        if f.expected_rhs is not None:
            lines.append(f"expect rhs = {format_rational(f.expected_rhs)}")
        if f.note:
            lines.append(f"note = {_q(f.note)}")
        return "{\n" + "".join(f"  {ln}\n" for ln in lines) + "}"

    def binding(self, name: str, kind: str, value) -> str:
        if kind == "ring":
            body = (f"ring {{ vars=[{', '.join(value.names)}]; "
                    f"weights=[{', '.join(map(str, value.weights))}]; p={value.p} }}")
        elif kind == "ideal":
            body = self.ideal(value)
        elif kind == "module":
            body = self.module(value)
        elif kind == "map":
            body = self._inline_map(value)
        elif kind == "group":
            body = self.perms(value.generators) + f" on {value.degree}"
        elif kind == "gset":
            rows = ", ".join("[" + ", ".join(map(str, a)) + "]" for a in value.action)
            body = f"action({self.group(value.group)}, [{rows}])"
        elif kind == "model":
            saved = self.named
            self.named = [x for x in saved if x[1] != "model"]
            body = self.model(value)
            self.named = saved
        else:
            return f"fixture {name} {self.fixture(value)}"
        return f"{kind} {name} = {body}"

    def _inline_map(self, f: MonRingMap) -> str:
        imgs = "; ".join(f"{u} -> {'0' if m is None else f.target.format_monomial(m)}"
                         for u, m in zip(f.source.names, f.images))
        return f"{self.ring(f.source)} -> {self.ring(f.target)} {{ {imgs} }}"


def dumps(env: dict[str, tuple[str, Any]]) -> str:
    p = Printer()
    out = []
    for name, (kind, value) in env.items():
        out.append(p.binding(name, kind, value))
        p.named.append((name, kind, value))
    return "\n".join(out) + "\n"
