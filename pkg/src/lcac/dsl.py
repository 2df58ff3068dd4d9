"""The ``.lca`` document language.

A document is a sequence of declarations::

    param a, b;
    algebra W {
      gen L, Y;
      bracket L L = (d + 2x) L;
      bracket L Y = (d + a*x + b) Y;
    }
    module M over W { basis v; act L v = (d + x) v; }
    module C over W { torsion 1; del [[u]]; act L = [[0]]; }
    cocycle K { Q2 = x^3; }
    morphism F: M1 -> M0 { map v = (d + b) w; }
    extension E of H by M with K;
    task check_jacobi W;
    task reduce E shift=-B degree=12 expect=no-reduction;

``d``, ``x``, ``y``, ``z`` are the reserved variables; every other
identifier in an expression must be a declared parameter or, where a
vector is expected, a generator or basis name.  Names are resolved when
they are read, so references must point backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple, Union

from .core import AlgebraPresentation, InvalidPresentation, PresentationMismatch
from .expr import DSLSyntaxError, ExpressionParser, Token, TokenStream, tokenize
from .extensions import CocycleData, SettingMismatch, build_extension
from .modules import FreeModulePresentation, ModuleMorphism, TorsionModule
from .polyring import RESERVED, ZERO, Poly, render

TASK_KINDS = (
    "check_skew",
    "check_jacobi",
    "check_algebra",
    "check_module",
    "check_morphism",
    "check_cocycle",
    "check_rep",
    "classify",
    "reduce",
    "center",
    "annihilation",
)
TASK_OPTIONS = ("degree", "max_index", "shift", "ideal", "expect")
COCYCLE_SLOTS = ("Q1", "Q2", "Q3")

Terms = Tuple[Tuple[str, Poly], ...]
Matrix = Tuple[Tuple[Poly, ...], ...]


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class ParamDecl:
    names: Tuple[str, ...]


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    generators: Tuple[str, ...]
    brackets: Tuple[Tuple[str, str, Terms], ...]


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    algebra: str
    basis: Tuple[str, ...]
    acts: Tuple[Tuple[str, str, Terms], ...]


@dataclass(frozen=True)
class TorsionDecl:
    name: str
    algebra: str
    dimension: int
    del_action: Matrix
    acts: Tuple[Tuple[str, Matrix], ...]


@dataclass(frozen=True)
class CocycleDecl:
    name: str
    slots: Tuple[Tuple[str, Poly], ...]


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    maps: Tuple[Tuple[str, Terms], ...]


@dataclass(frozen=True)
class ExtensionDecl:
    name: str
    algebra: str
    module: str
    cocycle: str


@dataclass(frozen=True)
class TaskDecl:
    kind: str
    target: str
    options: Tuple[Tuple[str, str], ...] = ()

    @property
    def label(self) -> str:
        return f"{self.kind} {self.target}"

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)

    def bindings(self) -> Dict[str, str]:
        return {k: v for k, v in self.options if k not in TASK_OPTIONS}


Declaration = Union[ParamDecl, AlgebraDecl, ModuleDecl, TorsionDecl, CocycleDecl, MorphismDecl, ExtensionDecl, TaskDecl]


@dataclass(frozen=True)
class Document:
    declarations: Tuple[Declaration, ...] = ()

    @property
    def tasks(self) -> Tuple[TaskDecl, ...]:
        return tuple(d for d in self.declarations if isinstance(d, TaskDecl))

    @property
    def parameters(self) -> Tuple[str, ...]:
        return tuple(n for d in self.declarations if isinstance(d, ParamDecl) for n in d.names)


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        tokens = tokenize(text)
        _check_balance(tokens)
        self.s = TokenStream(tokens)
        self.params: list[str] = []
        self.decls: dict[str, Declaration] = {}
        self.out: list[Declaration] = []

    # helpers
    def _fresh(self, tok: Token, what: str) -> str:
        name = tok.text
        if name in RESERVED:
            raise DSLSyntaxError(f"{what} name {name!r} clashes with a reserved variable", tok.line, tok.column)
        if name in self.params or name in self.decls:
            raise DSLSyntaxError(f"{what} name {name!r} is already declared", tok.line, tok.column)
        return name

    def _ref(self, kinds: tuple, what: str) -> Declaration:
        tok = self.s.expect_ident(f"{what} name")
        decl = self.decls.get(tok.text)
        if decl is None:
            raise DSLSyntaxError(f"unresolved {what} {tok.text!r}", tok.line, tok.column)
        if not isinstance(decl, kinds):
            raise DSLSyntaxError(f"{tok.text!r} is not a {what}", tok.line, tok.column)
        return decl

    def _names(self, what: str, taken: Iterable[str] = ()) -> Tuple[str, ...]:
        names = []
        taken = set(taken)
        while True:
            tok = self.s.expect_ident(what)
            if tok.text in RESERVED:
                raise DSLSyntaxError(f"{what} name {tok.text!r} clashes with a reserved variable", tok.line, tok.column)
            if tok.text in self.params:
                raise DSLSyntaxError(f"{what} name {tok.text!r} clashes with a parameter", tok.line, tok.column)
            if tok.text in names or tok.text in taken:
                raise DSLSyntaxError(f"duplicate {what} {tok.text!r}", tok.line, tok.column)
            names.append(tok.text)
            if not self.s.accept(","):
                return tuple(names)

    def _member(self, allowed: Tuple[str, ...], what: str) -> str:
        tok = self.s.expect_ident(what)
        if tok.text not in allowed:
            raise DSLSyntaxError(f"unknown {what} {tok.text!r}", tok.line, tok.column)
        return tok.text

    def _poly(self) -> Poly:
        return ExpressionParser(self.s, self.params).parse_poly()

    def _vector(self, basis: Tuple[str, ...]) -> Terms:
        vec = ExpressionParser(self.s, self.params, basis).parse_vector()
        return tuple((b, vec.coeffs[b]) for b in basis if b in vec.coeffs)

    def _matrix(self, n: int | None = None) -> Matrix:
        start = self.s.expect("[")
        rows = []
        while True:
            self.s.expect("[")
            row = [self._poly()]
            while self.s.accept(","):
                row.append(self._poly())
            self.s.expect("]")
            rows.append(tuple(row))
            if not self.s.accept(","):
                break
        self.s.expect("]")
        size = n if n is not None else len(rows)
        if len(rows) != size or any(len(r) != size for r in rows):
            raise DSLSyntaxError(f"expected a {size}x{size} matrix", start.line, start.column)
        return tuple(rows)

    def _end(self):
        self.s.expect(";")

    def _declare(self, name: str, decl: Declaration):
        self.decls[name] = decl
        self.out.append(decl)

    # declarations
    def parse(self) -> Document:
        while self.s.peek.kind != "eof":
            tok = self.s.peek
            keyword = tok.text if tok.kind == "ident" else ""
            handler = getattr(self, f"_decl_{keyword}", None)
            if handler is None:
                raise self.s.error(f"expected a declaration, found {tok.text!r}")
            self.s.next()
            handler()
        return Document(tuple(self.out))

    def _decl_param(self):
        names = []
        while True:
            tok = self.s.expect_ident("parameter")
            names.append(self._fresh(tok, "parameter"))
            self.params.append(tok.text)
            if not self.s.accept(","):
                break
        self._end()
        self.out.append(ParamDecl(tuple(names)))

    def _decl_algebra(self):
        name = self._fresh(self.s.expect_ident("algebra name"), "algebra")
        self.s.expect("{")
        self.s.expect("gen")
        gens = self._names("generator")
        self._end()
        brackets, seen = [], set()
        while not self.s.accept("}"):
            kw = self.s.expect("bracket")
            a = self._member(gens, "generator")
            b = self._member(gens, "generator")
            if (a, b) in seen:
                raise DSLSyntaxError(f"bracket {a} {b} given twice", kw.line, kw.column)
            seen.add((a, b))
            self.s.expect("=")
            brackets.append((a, b, self._vector(gens)))
            self._end()
        self._declare(name, AlgebraDecl(name, gens, tuple(brackets)))

    def _decl_module(self):
        name = self._fresh(self.s.expect_ident("module name"), "module")
        self.s.expect("over")
        alg = self._ref((AlgebraDecl, ExtensionDecl), "algebra")
        gens = _generators(alg, self.decls)
        self.s.expect("{")
        if self.s.accept("torsion"):
            tok = self.s.peek
            if tok.kind != "num" or int(tok.text) < 1:
                raise self.s.error("torsion dimension must be a positive integer")
            self.s.next()
            n = int(tok.text)
            self._end()
            self.s.expect("del")
            dmat = self._matrix(n)
            self._end()
            acts, seen = [], set()
            while not self.s.accept("}"):
                kw = self.s.expect("act")
                g = self._member(gens, "generator")
                if g in seen:
                    raise DSLSyntaxError(f"action of {g} given twice", kw.line, kw.column)
                seen.add(g)
                self.s.expect("=")
                acts.append((g, self._matrix(n)))
                self._end()
            self._declare(name, TorsionDecl(name, alg.name, n, dmat, tuple(acts)))
            return
        self.s.expect("basis")
        basis = self._names("basis element", gens)
        self._end()
        acts, seen = [], set()
        while not self.s.accept("}"):
            kw = self.s.expect("act")
            g = self._member(gens, "generator")
            v = self._member(basis, "basis element")
            if (g, v) in seen:
                raise DSLSyntaxError(f"action of {g} on {v} given twice", kw.line, kw.column)
            seen.add((g, v))
            self.s.expect("=")
            acts.append((g, v, self._vector(basis)))
            self._end()
        self._declare(name, ModuleDecl(name, alg.name, basis, tuple(acts)))

    def _decl_cocycle(self):
        name = self._fresh(self.s.expect_ident("cocycle name"), "cocycle")
        self.s.expect("{")
        slots, seen = [], set()
        while not self.s.accept("}"):
            tok = self.s.peek
            slot = self._member(COCYCLE_SLOTS, "cocycle component")
            if slot in seen:
                raise DSLSyntaxError(f"{slot} given twice", tok.line, tok.column)
            seen.add(slot)
            self.s.expect("=")
            slots.append((slot, self._poly()))
            self._end()
        self._declare(name, CocycleDecl(name, tuple(slots)))

    def _decl_morphism(self):
        name = self._fresh(self.s.expect_ident("morphism name"), "morphism")
        self.s.expect(":")
        src = self._ref((ModuleDecl,), "module")
        self.s.expect("->")
        tgt = self._ref((ModuleDecl,), "module")
        self.s.expect("{")
        maps, seen = [], set()
        while not self.s.accept("}"):
            kw = self.s.expect("map")
            v = self._member(src.basis, "basis element")
            if v in seen:
                raise DSLSyntaxError(f"image of {v} given twice", kw.line, kw.column)
            seen.add(v)
            self.s.expect("=")
            maps.append((v, self._vector(tgt.basis)))
            self._end()
        self._declare(name, MorphismDecl(name, src.name, tgt.name, tuple(maps)))

    def _decl_extension(self):
        name = self._fresh(self.s.expect_ident("extension name"), "extension")
        self.s.expect("of")
        alg = self._ref((AlgebraDecl,), "algebra")
        self.s.expect("by")
        mod = self._ref((ModuleDecl,), "module")
        self.s.expect("with")
        coc = self._ref((CocycleDecl,), "cocycle")
        self._end()
        self._declare(name, ExtensionDecl(name, alg.name, mod.name, coc.name))

    def _decl_task(self):
        tok = self.s.expect_ident("task kind")
        if tok.text not in TASK_KINDS:
            raise DSLSyntaxError(f"unknown task kind {tok.text!r}", tok.line, tok.column)
        target = self._ref(tuple(_DECL_KINDS), "declaration").name
        options, seen = [], set()
        while not self.s.at(";"):
            key = self.s.expect_ident("option")
            if key.text not in TASK_OPTIONS and key.text not in self.params:
                raise DSLSyntaxError(f"unknown option {key.text!r}", key.line, key.column)
            if key.text in seen:
                raise DSLSyntaxError(f"option {key.text!r} given twice", key.line, key.column)
            seen.add(key.text)
            self.s.expect("=")
            options.append((key.text, self._option_value()))
        self._end()
        self.out.append(TaskDecl(tok.text, target, tuple(options)))

    def _option_value(self) -> str:
        sign = ""
        if self.s.at("-") or self.s.at("+"):
            sign = self.s.next().text
        tok = self.s.peek
        if tok.kind == "ident":
            self.s.next()
            if tok.text in ("no", "solution") and self.s.accept("-"):
                rest = self.s.expect_ident("option value").text
                return f"{sign}{tok.text}-{rest}"
            return sign + tok.text
        if tok.kind == "num":
            self.s.next()
            value = tok.text
            if self.s.accept("/"):
                den = self.s.peek
                if den.kind != "num":
                    raise self.s.error("expected a denominator")
                self.s.next()
                value = f"{value}/{den.text}"
            return sign + value
        raise self.s.error("expected an option value")


_CLOSERS = {")": "(", "]": "["}


def _check_balance(tokens: list[Token]) -> None:
    """Report unmatched brackets at the bracket itself; a statement end
    closes nothing, so an open bracket there is unbalanced."""
    stack: list[Token] = []
    for tok in tokens:
        if tok.kind != "op" and tok.kind != "eof":
            continue
        if tok.text in ("(", "["):
            stack.append(tok)
        elif tok.text in _CLOSERS:
            if not stack or stack[-1].text != _CLOSERS[tok.text]:
                raise DSLSyntaxError(f"unbalanced {tok.text!r}", tok.line, tok.column)
            stack.pop()
        elif (tok.text in (";", "{", "}") or tok.kind == "eof") and stack:
            open_tok = stack[-1]
            raise DSLSyntaxError(f"unbalanced {open_tok.text!r}", open_tok.line, open_tok.column)


_DECL_KINDS = (AlgebraDecl, ModuleDecl, TorsionDecl, CocycleDecl, MorphismDecl, ExtensionDecl)


def _generators(decl, decls) -> Tuple[str, ...]:
    if isinstance(decl, AlgebraDecl):
        return decl.generators
    alg = decls[decl.algebra]
    return alg.generators + decls[decl.module].basis


def parse_document(text: str) -> Document:
    """Parse ``.lca`` source; the first error is raised as :class:`DSLSyntaxError`."""
    return _Parser(text).parse()


# -- serialization ---------------------------------------------------------


def _render_terms(terms: Terms) -> str:
    if not terms:
        return "0"
    return " + ".join(f"({render(c)}) {b}" for b, c in terms)


def _render_matrix(mat: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(render(p) for p in row) + "]" for row in mat) + "]"


def serialize(doc: Document) -> str:
    """Canonical source text; ``parse_document(serialize(doc)) == doc``."""
    lines = []
    for decl in doc.declarations:
        if isinstance(decl, ParamDecl):
            lines.append(f"param {', '.join(decl.names)};")
        elif isinstance(decl, AlgebraDecl):
            lines.append(f"algebra {decl.name} {{")
            lines.append(f"  gen {', '.join(decl.generators)};")
            for a, b, terms in decl.brackets:
                lines.append(f"  bracket {a} {b} = {_render_terms(terms)};")
            lines.append("}")
        elif isinstance(decl, ModuleDecl):
            lines.append(f"module {decl.name} over {decl.algebra} {{")
            lines.append(f"  basis {', '.join(decl.basis)};")
            for g, v, terms in decl.acts:
                lines.append(f"  act {g} {v} = {_render_terms(terms)};")
            lines.append("}")
        elif isinstance(decl, TorsionDecl):
            lines.append(f"module {decl.name} over {decl.algebra} {{")
            lines.append(f"  torsion {decl.dimension};")
            lines.append(f"  del {_render_matrix(decl.del_action)};")
            for g, mat in decl.acts:
                lines.append(f"  act {g} = {_render_matrix(mat)};")
            lines.append("}")
        elif isinstance(decl, CocycleDecl):
            lines.append(f"cocycle {decl.name} {{")
            for slot, p in decl.slots:
                lines.append(f"  {slot} = {render(p)};")
            lines.append("}")
        elif isinstance(decl, MorphismDecl):
            lines.append(f"morphism {decl.name}: {decl.source} -> {decl.target} {{")
            for v, terms in decl.maps:
                lines.append(f"  map {v} = {_render_terms(terms)};")
            lines.append("}")
        elif isinstance(decl, ExtensionDecl):
            lines.append(f"extension {decl.name} of {decl.algebra} by {decl.module} with {decl.cocycle};")
        elif isinstance(decl, TaskDecl):
            opts = "".join(f" {k}={v}" for k, v in decl.options)
            lines.append(f"task {decl.kind} {decl.target}{opts};")
    return "\n".join(lines) + "\n" if lines else ""


# -- building --------------------------------------------------------------


class BuildError(ValueError):
    """A declaration parsed but does not describe a valid object."""


@dataclass
class Workspace:
    """Objects built from a document, keyed by declaration name."""

    document: Document
    objects: Dict[str, object] = field(default_factory=dict)
    extension_parts: Dict[str, tuple] = field(default_factory=dict)

    def get(self, name: str):
        return self.objects[name]


def _terms_dict(terms: Terms) -> dict:
    return dict(terms)


def build(doc: Document) -> Workspace:
    ws = Workspace(doc)
    objs = ws.objects
    for decl in doc.declarations:
        try:
            if isinstance(decl, AlgebraDecl):
                brackets = {(a, b): _terms_dict(t) for a, b, t in decl.brackets}
                objs[decl.name] = AlgebraPresentation.from_names(decl.generators, brackets, decl.name)
            elif isinstance(decl, ModuleDecl):
                acts = {(g, v): _terms_dict(t) for g, v, t in decl.acts}
                objs[decl.name] = FreeModulePresentation.from_names(objs[decl.algebra], decl.basis, acts, decl.name)
            elif isinstance(decl, TorsionDecl):
                objs[decl.name] = TorsionModule(objs[decl.algebra], decl.dimension, decl.del_action, dict(decl.acts), decl.name)
            elif isinstance(decl, CocycleDecl):
                objs[decl.name] = CocycleData(**dict(decl.slots))
            elif isinstance(decl, MorphismDecl):
                src, tgt = objs[decl.source], objs[decl.target]
                images = dict(decl.maps)
                matrix = [[dict(images.get(v, ())).get(w, ZERO) for w in tgt.basis] for v in src.basis]
                objs[decl.name] = ModuleMorphism(src, tgt, matrix)
            elif isinstance(decl, ExtensionDecl):
                P, M, C = objs[decl.algebra], objs[decl.module], objs[decl.cocycle]
                objs[decl.name] = build_extension(P, M, C, decl.name)
                ws.extension_parts[decl.name] = (P, M, C)
        except (InvalidPresentation, PresentationMismatch, SettingMismatch, ValueError, KeyError) as exc:
            name = getattr(decl, "name", "?")
            raise BuildError(f"{name}: {exc}") from exc
    return ws


def load(text: str) -> Workspace:
    return build(parse_document(text))
