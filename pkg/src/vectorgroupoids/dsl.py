"""A small line-oriented definition language for groupoid experiments.

Grammar (one statement per line, '#' starts a comment):

    field <id> = Zp(<prime>)
    space <id> = <field-id>^<dim>
    subspace <id> of <space-id> = span{ (c,...), ... }
    groupoid <id> = pair(<space>) | null(<space>) | single_unit(<space>)
                  | vpq(<space>, p=<int>, q=<int>) | v3(<space>)
                  | tvg(<space>, <subspace>) | product(<gid>, <gid>)
                  | whitney(<gid>, <gid>) | sg(<n>)
    morphism <id> : <gid> -> <gid> = anchor | sgn_sharp | proj1 | proj2
                                   | table{ <elem> -> <elem>, ... }
    check <gid> brandt | calculus | vector | consequences | transitive
    check <mid> morphism | homomorphism | vector_morphism

Identifiers must be declared before use and may not be redeclared.  Parsing
and elaboration failures are reported as positioned diagnostics; they never
raise.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field

from . import catalog as cat
from .errors import GroupoidError
from .fields import Subspace, _is_prime, make_field
from .groupoid import FiniteGroupoid, verify_brandt, verify_calculus
from .morphisms import (
    GroupoidMorphism,
    build_morphism,
    verify_homomorphism,
    verify_morphism,
    verify_vector_morphism,
)
from .report import DEFAULT_WITNESS_CAP, AxiomReport, LawCheck, LawCollector, Witness
from .spaces import CoordSpace
from .vgroupoid import (
    VectorGroupoid,
    verify_structural_consequences,
    verify_vector_axioms,
)

TOOL_VERSION = "0.1.0"

GROUPOID_CHECKS = ("brandt", "calculus", "vector", "consequences", "transitive")
MORPHISM_CHECKS = ("morphism", "homomorphism", "vector_morphism")


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    line: int
    column: int
    token: str = ""

    def render(self) -> str:
        tok = f" near {self.token!r}" if self.token else ""
        return f"{self.severity}: {self.message} (line {self.line}, column {self.column}){tok}"


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    text: str


@dataclass(frozen=True)
class FieldDecl:
    name: str
    prime: int
    span: Span


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    field_name: str
    dim: int
    span: Span


@dataclass(frozen=True)
class SubspaceDecl:
    name: str
    space_name: str
    vectors: tuple
    span: Span


@dataclass(frozen=True)
class GroupoidDecl:
    name: str
    kind: str
    args: tuple          # identifier strings and/or ints in positional order
    scalars: tuple       # (p, q) for vpq, else ()
    span: Span


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    body: str            # "anchor" | "sgn_sharp" | "proj1" | "proj2" | "table"
    entries: tuple       # ((elem, elem), ...) for table bodies
    span: Span


@dataclass(frozen=True)
class CheckDirective:
    target: str
    check: str
    span: Span


@dataclass
class SpecAst:
    statements: list


_ID = r"[A-Za-z_][A-Za-z_0-9]*"
_RE_FIELD = re.compile(rf"^field\s+({_ID})\s*=\s*Zp\(\s*(\d+)\s*\)$")
_RE_SPACE = re.compile(rf"^space\s+({_ID})\s*=\s*({_ID})\^(\d+)$")
_RE_SUBSPACE = re.compile(rf"^subspace\s+({_ID})\s+of\s+({_ID})\s*=\s*span\{{(.*)\}}$")
_RE_GROUPOID = re.compile(rf"^groupoid\s+({_ID})\s*=\s*({_ID})\((.*)\)$")
_RE_MORPHISM = re.compile(
    rf"^morphism\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})\s*=\s*(.+)$"
)
_RE_CHECK = re.compile(rf"^check\s+({_ID})\s+([a-z_]+)$")

_KIND_ARITY = {
    "pair": ("space",),
    "null": ("space",),
    "single_unit": ("space",),
    "v3": ("space",),
    "vpq": ("space", "scalar", "scalar"),
    "tvg": ("space", "subspace"),
    "product": ("groupoid", "groupoid"),
    "whitney": ("groupoid", "groupoid"),
    "sg": ("int",),
}


def _split_top(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _parse_elem(text: str):
    """Parse a (possibly nested) parenthesized integer tuple; returns the
    value or raises ValueError with a character offset in args[1]."""

    def walk(i: int):
        if i >= len(text) or text[i] != "(":
            raise ValueError(i)
        i += 1
        items = []
        while True:
            while i < len(text) and text[i] == " ":
                i += 1
            if i < len(text) and text[i] == "(":
                v, i = walk(i)
                items.append(v)
            else:
                m = re.match(r"-?\d+", text[i:])
                if not m:
                    raise ValueError(i)
                items.append(int(m.group()))
                i += len(m.group())
            while i < len(text) and text[i] == " ":
                i += 1
            if i < len(text) and text[i] == ",":
                i += 1
                continue
            if i < len(text) and text[i] == ")":
                return tuple(items), i + 1
            raise ValueError(i)

    v, i = walk(0)
    while i < len(text) and text[i] == " ":
        i += 1
    if i != len(text):
        raise ValueError(i)
    return v


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.diags: list[Diagnostic] = []
        self.symbols: dict[str, str] = {}  # name -> kind
        self.statements: list = []

    def error(self, message: str, line: int, column: int, token: str = ""):
        self.diags.append(Diagnostic("error", message, line, column, token))

    def col_of(self, line_text: str, token: str, lineno: int) -> int:
        pos = line_text.find(token)
        return pos + 1 if pos >= 0 else 1

    def declare(self, name: str, kind: str, lineno: int, line_text: str) -> bool:
        if name in self.symbols:
            self.error(
                f"redeclaration of {name!r}",
                lineno,
                self.col_of(line_text, name, lineno),
                name,
            )
            return False
        self.symbols[name] = kind
        return True

    def resolve(self, name: str, kinds, lineno: int, line_text: str) -> bool:
        got = self.symbols.get(name)
        if got is None:
            self.error(
                f"undeclared identifier {name!r}",
                lineno,
                self.col_of(line_text, name, lineno),
                name,
            )
            return False
        if got not in kinds:
            self.error(
                f"{name!r} is a {got}, expected {' or '.join(kinds)}",
                lineno,
                self.col_of(line_text, name, lineno),
                name,
            )
            return False
        return True

    def parse(self) -> SpecAst:
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            stripped = body.strip()
            if not stripped:
                continue
            col = body.index(stripped[0]) + 1
            span = Span(lineno, col, stripped)
            keyword = stripped.split(None, 1)[0]
            handler = getattr(self, f"_stmt_{keyword}", None)
            if handler is None:
                self.error(
                    f"unknown keyword {keyword!r}", lineno, col, keyword
                )
                continue
            handler(stripped, span)
        return SpecAst(self.statements)

    def _syntax(self, span: Span, what: str):
        self.error(f"malformed {what} statement", span.line, span.column, span.text)

    def _stmt_field(self, s: str, span: Span):
        m = _RE_FIELD.match(s)
        if not m:
            return self._syntax(span, "field")
        name, prime = m.group(1), int(m.group(2))
        if not _is_prime(prime):
            self.error(
                f"{prime} is not prime",
                span.line,
                self.col_of(s, m.group(2), span.line) + span.column - 1,
                m.group(2),
            )
            return
        if self.declare(name, "field", span.line, s):
            self.statements.append(FieldDecl(name, prime, span))

    def _stmt_space(self, s: str, span: Span):
        m = _RE_SPACE.match(s)
        if not m:
            return self._syntax(span, "space")
        name, fname, dim = m.group(1), m.group(2), int(m.group(3))
        if not self.resolve(fname, ("field",), span.line, s):
            return
        if dim < 1:
            self.error("dimension must be >= 1", span.line, span.column, m.group(3))
            return
        if self.declare(name, "space", span.line, s):
            self.statements.append(SpaceDecl(name, fname, dim, span))

    def _stmt_subspace(self, s: str, span: Span):
        m = _RE_SUBSPACE.match(s)
        if not m:
            return self._syntax(span, "subspace")
        name, sname, inner = m.group(1), m.group(2), m.group(3).strip()
        if not self.resolve(sname, ("space",), span.line, s):
            return
        vectors = []
        for part in _split_top(inner):
            if not part:
                self.error("empty vector in span", span.line, span.column, inner)
                return
            try:
                v = _parse_elem(part)
            except ValueError:
                self.error(
                    f"malformed vector literal {part!r}",
                    span.line,
                    self.col_of(s, part, span.line) + span.column - 1,
                    part,
                )
                return
            vectors.append(v)
        if self.declare(name, "subspace", span.line, s):
            self.statements.append(SubspaceDecl(name, sname, tuple(vectors), span))

    def _stmt_groupoid(self, s: str, span: Span):
        m = _RE_GROUPOID.match(s)
        if not m:
            return self._syntax(span, "groupoid")
        name, kind, inner = m.group(1), m.group(2), m.group(3).strip()
        sig = _KIND_ARITY.get(kind)
        if sig is None:
            self.error(
                f"unknown construction {kind!r}",
                span.line,
                self.col_of(s, kind, span.line) + span.column - 1,
                kind,
            )
            return
        parts = _split_top(inner) if inner else []
        if len(parts) != len(sig):
            self.error(
                f"{kind} expects {len(sig)} argument(s), got {len(parts)}",
                span.line,
                span.column,
                inner,
            )
            return
        args: list = []
        scalars: list = []
        for want, part in zip(sig, parts):
            if want == "int":
                if not re.fullmatch(r"\d+", part):
                    self.error(
                        f"expected an integer, got {part!r}",
                        span.line,
                        self.col_of(s, part, span.line) + span.column - 1,
                        part,
                    )
                    return
                args.append(int(part))
            elif want == "scalar":
                sm = re.fullmatch(r"([pq])\s*=\s*(\d+)", part)
                if not sm:
                    self.error(
                        f"expected p=<int> or q=<int>, got {part!r}",
                        span.line,
                        self.col_of(s, part, span.line) + span.column - 1,
                        part,
                    )
                    return
                scalars.append(int(sm.group(2)))
            else:
                if not self.resolve(part, (want,), span.line, s):
                    return
                args.append(part)
        if self.declare(name, "groupoid", span.line, s):
            self.statements.append(
                GroupoidDecl(name, kind, tuple(args), tuple(scalars), span)
            )

    def _stmt_morphism(self, s: str, span: Span):
        m = _RE_MORPHISM.match(s)
        if not m:
            return self._syntax(span, "morphism")
        name, src, dst, body = m.groups()
        if not self.resolve(src, ("groupoid",), span.line, s):
            return
        if not self.resolve(dst, ("groupoid",), span.line, s):
            return
        body = body.strip()
        entries: tuple = ()
        if body in ("anchor", "sgn_sharp", "proj1", "proj2"):
            kind = body
        elif body.startswith("table{") and body.endswith("}"):
            kind = "table"
            inner = body[len("table{"):-1].strip()
            pairs = []
            for part in _split_top(inner) if inner else []:
                halves = part.split("->")
                if len(halves) != 2:
                    self.error(
                        f"malformed table entry {part!r}",
                        span.line,
                        self.col_of(s, part, span.line) + span.column - 1,
                        part,
                    )
                    return
                try:
                    k = _parse_elem(halves[0].strip())
                    v = _parse_elem(halves[1].strip())
                except ValueError:
                    self.error(
                        f"malformed element literal in {part!r}",
                        span.line,
                        self.col_of(s, part, span.line) + span.column - 1,
                        part,
                    )
                    return
                pairs.append((k, v))
            entries = tuple(pairs)
        else:
            self.error(
                f"unknown morphism body {body!r}",
                span.line,
                self.col_of(s, body, span.line) + span.column - 1,
                body,
            )
            return
        if self.declare(name, "morphism", span.line, s):
            self.statements.append(MorphismDecl(name, src, dst, kind, entries, span))

    def _stmt_check(self, s: str, span: Span):
        m = _RE_CHECK.match(s)
        if not m:
            return self._syntax(span, "check")
        target, check = m.group(1), m.group(2)
        got = self.symbols.get(target)
        if got is None:
            self.error(
                f"undeclared identifier {target!r}",
                span.line,
                self.col_of(s, target, span.line) + span.column - 1,
                target,
            )
            return
        if check in GROUPOID_CHECKS:
            want = "groupoid"
        elif check in MORPHISM_CHECKS:
            want = "morphism"
        else:
            self.error(
                f"unknown check {check!r}",
                span.line,
                self.col_of(s, check, span.line) + span.column - 1,
                check,
            )
            return
        if got != want:
            self.error(
                f"check {check!r} applies to a {want}, but {target!r} is a {got}",
                span.line,
                self.col_of(s, target, span.line) + span.column - 1,
                target,
            )
            return
        self.statements.append(CheckDirective(target, check, span))


def parse(text: str) -> tuple[SpecAst, list[Diagnostic]]:
    """Parse definition-language source; returns the AST and diagnostics.
    The AST is usable only when no error diagnostics were produced."""
    p = _Parser(text)
    ast = p.parse()
    return ast, p.diags


def _render_elem(e) -> str:
    if isinstance(e, tuple):
        return "(" + ",".join(_render_elem(c) for c in e) + ")"
    return str(e)


def render(ast: SpecAst) -> str:
    """Canonical text of an AST; parse(render(ast)) is structurally equal."""
    out = []
    for st in ast.statements:
        if isinstance(st, FieldDecl):
            out.append(f"field {st.name} = Zp({st.prime})")
        elif isinstance(st, SpaceDecl):
            out.append(f"space {st.name} = {st.field_name}^{st.dim}")
        elif isinstance(st, SubspaceDecl):
            vecs = ", ".join(_render_elem(v) for v in st.vectors)
            out.append(f"subspace {st.name} of {st.space_name} = span{{{vecs}}}")
        elif isinstance(st, GroupoidDecl):
            if st.kind == "vpq":
                args = f"{st.args[0]}, p={st.scalars[0]}, q={st.scalars[1]}"
            else:
                args = ", ".join(str(a) for a in st.args)
            out.append(f"groupoid {st.name} = {st.kind}({args})")
        elif isinstance(st, MorphismDecl):
            if st.body == "table":
                inner = ", ".join(
                    f"{_render_elem(k)} -> {_render_elem(v)}" for k, v in st.entries
                )
                body = f"table{{{inner}}}"
            else:
                body = st.body
            out.append(f"morphism {st.name} : {st.source} -> {st.target} = {body}")
        elif isinstance(st, CheckDirective):
            out.append(f"check {st.target} {st.check}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class Entry:
    kind: str          # field | space | subspace | groupoid | morphism
    value: object
    decl: object

    @property
    def construction(self) -> str:
        return getattr(self.decl, "kind", "")


@dataclass
class Workspace:
    entries: dict

    def __getitem__(self, name: str) -> Entry:
        return self.entries[name]


def evaluate(
    ast: SpecAst, max_carrier: int = cat.DEFAULT_MAX_CARRIER
) -> tuple[Workspace, list[Diagnostic]]:
    """Build every declared object; construction failures become positioned
    diagnostics on the declaring statement."""
    env: dict[str, Entry] = {}
    diags: list[Diagnostic] = []

    def fail(st, message: str):
        diags.append(Diagnostic("error", message, st.span.line, st.span.column, st.span.text))

    for st in ast.statements:
        try:
            if isinstance(st, FieldDecl):
                env[st.name] = Entry("field", make_field(st.prime), st)
            elif isinstance(st, SpaceDecl):
                env[st.name] = Entry(
                    "space", CoordSpace(env[st.field_name].value, st.dim), st
                )
            elif isinstance(st, SubspaceDecl):
                space = env[st.space_name].value
                for v in st.vectors:
                    if len(v) != space.dim or not all(isinstance(c, int) for c in v):
                        fail(st, f"vector {_render_elem(v)} does not live in {st.space_name}")
                        break
                else:
                    env[st.name] = Entry(
                        "subspace",
                        Subspace.from_vectors(space.field, space.dim, st.vectors),
                        st,
                    )
            elif isinstance(st, GroupoidDecl):
                env[st.name] = Entry(
                    "groupoid", _build_groupoid_decl(st, env, max_carrier), st
                )
            elif isinstance(st, MorphismDecl):
                built = _build_morphism_decl(st, env, max_carrier, diags)
                if built is not None:
                    env[st.name] = Entry("morphism", built, st)
        except GroupoidError as exc:
            fail(st, f"{type(exc).__name__}: {exc}")
    return Workspace(env), diags


def _build_groupoid_decl(st: GroupoidDecl, env: dict, max_carrier: int):
    if st.kind == "sg":
        return cat.symmetry_groupoid(st.args[0])
    if st.kind == "vpq":
        return cat.vpq(
            env[st.args[0]].value, st.scalars[0], st.scalars[1], max_carrier=max_carrier
        )
    params = tuple(env[a].value for a in st.args)
    return cat.ConstructionSpec(st.kind, params).build(max_carrier=max_carrier)


def _vg_of(entry: Entry):
    v = entry.value
    return v if isinstance(v, VectorGroupoid) else None


def _groupoid_of(entry: Entry) -> FiniteGroupoid:
    v = entry.value
    return v.groupoid if isinstance(v, VectorGroupoid) else v


def _build_morphism_decl(st: MorphismDecl, env: dict, max_carrier: int, diags: list):
    def fail(message: str):
        diags.append(
            Diagnostic("error", message, st.span.line, st.span.column, st.span.text)
        )

    src_e, dst_e = env[st.source], env[st.target]
    src_g, dst_g = _groupoid_of(src_e), _groupoid_of(dst_e)

    if st.body == "anchor":
        src_v = _vg_of(src_e)
        if src_v is None:
            fail("anchor requires a vector groupoid source")
            return None
        f = {x: (src_v.groupoid.alpha[x], src_v.groupoid.beta[x]) for x in src_g.carrier}
        if dst_e.construction != "pair" or tuple(dst_g.carrier) != tuple(
            (a, b) for a in src_v.base.elements for b in src_v.base.elements
        ):
            fail("anchor target must be the pair groupoid over the source base")
            return None
        return build_morphism(src_g, dst_g, f, target_vg=_vg_of(dst_e))

    if st.body == "sgn_sharp":
        if src_e.construction != "sg":
            fail("sgn_sharp requires a symmetry-groupoid source")
            return None
        dst_v = _vg_of(dst_e)
        if (
            dst_e.construction != "single_unit"
            or dst_g.n != 2
            or dst_v.field.modulus != 2
        ):
            fail("sgn_sharp target must be single_unit over a 2-element Z2 space")
            return None
        plus, minus = dst_v.space.zero, dst_v.space.elements[1]
        f = {x: plus if x.sign() == 1 else minus for x in src_g.carrier}
        return build_morphism(src_g, dst_g, f, target_vg=dst_v)

    if st.body in ("proj1", "proj2"):
        if src_e.construction not in ("whitney", "product"):
            fail(f"{st.body} requires a whitney or product source")
            return None
        operand = src_e.decl.args[0 if st.body == "proj1" else 1]
        if operand != st.target:
            fail(
                f"{st.body} of {st.source!r} must target its operand {operand!r}"
            )
            return None
        i = 0 if st.body == "proj1" else 1
        return build_morphism(
            src_g, dst_g, {e: e[i] for e in src_g.carrier}, target_vg=_vg_of(dst_e)
        )

    # table body
    table = dict(st.entries)
    try:
        return build_morphism(src_g, dst_g, table)
    except GroupoidError as exc:
        fail(f"{type(exc).__name__}: {exc}")
        return None


# ---------------------------------------------------------------------------
# check execution and report emission


@dataclass
class DirectiveResult:
    target: str
    check: str
    report: AxiomReport

    @property
    def status(self) -> str:
        return "pass" if self.report.passed else "fail"


@dataclass
class RunReport:
    directives: list
    version: str
    input_digest: str
    elapsed: float = 0.0
    warnings: list = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if all(d.status == "pass" for d in self.directives) else "fail"


def _check_transitive(g: FiniteGroupoid, witness_cap: int) -> AxiomReport:
    ix = g._ix()
    lc = LawCollector("transitive", witness_cap)
    lc.count(len(ix.unit_idx) ** 2)
    seen = set(zip(ix.alpha.tolist(), ix.beta.tolist()))
    for a in ix.unit_idx:
        for b in ix.unit_idx:
            if (int(a), int(b)) not in seen and not lc.full:
                lc.add((ix.elem(a), ix.elem(b)))
    return AxiomReport([lc.check])


def run_checks(
    ws: Workspace,
    ast: SpecAst,
    source_text: str,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> RunReport:
    """Execute every check directive in order and aggregate the reports."""
    t0 = time.perf_counter()
    results: list[DirectiveResult] = []
    warnings: list[str] = []
    for st in ast.statements:
        if not isinstance(st, CheckDirective):
            continue
        entry = ws[st.target]
        if st.check in GROUPOID_CHECKS:
            g = _groupoid_of(entry)
            v = _vg_of(entry)
            if st.check == "brandt":
                rep = verify_brandt(g, witness_cap)
            elif st.check == "calculus":
                rep = verify_calculus(g, witness_cap)
            elif st.check == "transitive":
                rep = _check_transitive(g, witness_cap)
            elif v is None:
                rep = AxiomReport(
                    [
                        LawCheck(
                            st.check,
                            witnesses=[
                                Witness(st.check, (st.target,), None, "no vector structure")
                            ],
                            note="not a vector groupoid",
                        )
                    ]
                )
            elif st.check == "vector":
                rep = verify_vector_axioms(v, witness_cap)
            else:
                rep = verify_structural_consequences(v, witness_cap)
        else:
            m: GroupoidMorphism = entry.value
            if st.check == "morphism":
                rep = verify_morphism(m, witness_cap)
            elif st.check == "homomorphism":
                rep = verify_homomorphism(m, witness_cap)
            else:
                src_v = _vg_of(ws[entry.decl.source])
                dst_v = m.target_vg or _vg_of(ws[entry.decl.target])
                rep = verify_vector_morphism(m, src_v, dst_v, witness_cap)
        results.append(DirectiveResult(st.target, st.check, rep))
    if not results:
        warnings.append("no check directives in input")
    digest = hashlib.sha256(source_text.encode("utf-8")).hexdigest()
    return RunReport(
        results, TOOL_VERSION, digest, time.perf_counter() - t0, warnings
    )


def emit_report(r: RunReport, fmt: str = "text") -> str:
    """Serialize a run report; the json form is deterministic (no timing)."""
    if fmt == "json":
        payload = {
            "status": r.overall,
            "directives": [
                {
                    "target": d.target,
                    "check": d.check,
                    "status": d.status,
                    "examined": int(d.report.examined),
                    "witnesses": [w.as_dict() for w in d.report.all_witnesses()],
                }
                for d in r.directives
            ],
            "version": r.version,
            "input_digest": r.input_digest,
        }
        return json.dumps(payload, separators=(",", ":")) + "\n"
    lines = []
    for w in r.warnings:
        lines.append(f"warning: {w}")
    for d in r.directives:
        lines.append(f"check {d.target} {d.check}: {d.status}")
        for lc in d.report.laws:
            status = "pass" if lc.passed else "FAIL"
            lines.append(f"  {lc.law}: {status} (examined {lc.examined})")
            for w in lc.witnesses:
                lines.append("    witness " + json.dumps(w.as_dict()))
    lines.append(f"overall: {r.overall}")
    lines.append(f"elapsed: {r.elapsed:.3f}s")
    lines.append(f"version: {r.version}")
    lines.append(f"input digest: {r.input_digest}")
    return "\n".join(lines) + "\n"
