"""
Command-line front end.

Input files are line-oriented.  A header of ``key: value`` lines is followed
by ``[section]`` blocks whose lines are whitespace-separated tokens; ``#``
starts a comment.  Four kinds are understood::

    kind: mixed                 kind: dga               kind: free-model      kind: builtin
    [basis]                     unit: 1                 [generators]          builtin: sphere(3)
    0: x                        augmented: yes          a 2
    1: y                        [degrees]               b 3
    [delta]                     1 0                     [differential]
    x y 1/2                     v 3                     b a*a 1
    [D]                         [product]
    y x 2                       v v z 1     (v*v = 1 z)
                                [differential]
                                a b 1

Map entries are ``source target coefficient`` triples with integer or
``p/q`` coefficients.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclic import corollary_cyccochain_check, to_mixed, validate_relations
from .dga import (DgaSpec, InvalidDga, NotAugmented, hochschild, normalized_cyc_hom_check,
                  normalized_mixed, reduced_cyc_identities, reduced_mixed, reduced_precyclic,
                  splitting_check, validate_dga)
from .dual import cyclic_dual_check, double_dual_check, duality_check, pairing_check
from .mixed import (Flavour, InvalidComplex, InvalidWindow, MixedComplex, Window, WindowTooSmall,
                    flavour_homology, validate_mixed)
from .models import (FreeGCASpec, InvalidModel, LoopModel, NotSimplyConnected, UnknownName,
                     builtin, equivariant_loop_table, free_sphere_model, validate_model)
from .report import Report
from .sequences import GYSIN_VARIANTS, gysin_check

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3

KINDS = ("mixed", "dga", "free-model", "builtin")
_SECTIONS = {
    "mixed": ("basis", "delta", "D"),
    "dga": ("degrees", "product", "differential"),
    "free-model": ("generators", "differential"),
    "builtin": (),
}
_HEADERS = {
    "mixed": ("name",),
    "dga": ("name", "unit", "augmented"),
    "free-model": ("name",),
    "builtin": ("builtin",),
}
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?$")


class SpecParseError(ValueError):
    def __init__(self, line, col, message):
        super().__init__("line %d, column %d: %s" % (line, col, message))
        self.line, self.col, self.message = line, col, message


class SpecValidationError(ValueError):
    pass


@dataclass
class SpecDoc:
    """A parsed input file: its kind, header values and section rows (token tuples)."""

    kind: str
    header: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing

def _tokens(line):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _rational(tok, lineno, col):
    if not _RATIONAL.match(tok):
        raise SpecParseError(lineno, col, "expected an integer or p/q, got %r" % tok)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise SpecParseError(lineno, col, "zero denominator") from None


def _integer(tok, lineno, col):
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise SpecParseError(lineno, col, "expected an integer, got %r" % tok)
    return int(tok)


def _row_shape(kind, section):
    """Token types of a row: ``l`` label, ``i`` integer, ``q`` rational, ``m`` monomial."""
    return {
        ("mixed", "delta"): "llq", ("mixed", "D"): "llq",
        ("dga", "degrees"): "li", ("dga", "product"): "lllq", ("dga", "differential"): "llq",
        ("free-model", "generators"): "li", ("free-model", "differential"): "lmq",
    }.get((kind, section))


def parse_spec(text):
    """Parse an input file into a :class:`SpecDoc`, checking labels and literals."""
    header, sections, positions = {}, {}, {}
    current = None
    kind = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.sub(r"(^|\s)#.*$", "", raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = len(line) - len(line.lstrip()) + 1
        sec = re.fullmatch(r"\[([^\]]+)\]", stripped)
        if sec:
            current = sec.group(1).strip()
            if kind is None:
                raise SpecParseError(lineno, col0, "section before the 'kind:' header")
            if current not in _SECTIONS[kind]:
                raise SpecParseError(lineno, col0 + 1, "unknown section [%s] for kind %s"
                                     % (current, kind))
            if current in sections:
                raise SpecParseError(lineno, col0 + 1, "section [%s] repeated" % current)
            sections[current] = []
            continue
        if current is None:
            m = re.fullmatch(r"([A-Za-z-]+)\s*:\s*(.*)", stripped)
            if not m:
                raise SpecParseError(lineno, col0, "expected 'key: value'")
            key, value = m.group(1), m.group(2).strip()
            if key == "kind":
                if value not in KINDS:
                    raise SpecParseError(lineno, line.index(value) + 1 if value else col0,
                                         "unknown kind %r" % value)
                kind = value
            elif kind is None:
                raise SpecParseError(lineno, col0, "the first header must be 'kind:'")
            elif key not in _HEADERS[kind]:
                raise SpecParseError(lineno, col0, "unknown header %r for kind %s" % (key, kind))
            else:
                header[key] = value
            continue
        toks = _tokens(line)
        if kind == "mixed" and current == "basis":
            first, c = toks[0]
            if not first.endswith(":"):
                raise SpecParseError(lineno, c, "expected 'degree: labels'")
            deg = _integer(first[:-1], lineno, c)
            row = (deg,) + tuple(t for t, _ in toks[1:])
            for t, c in toks[1:]:
                positions.setdefault(t, (lineno, c))
            sections[current].append(row)
            continue
        shape = _row_shape(kind, current)
        if len(toks) != len(shape):
            c = toks[min(len(toks), len(shape)) - 1][1] if toks else col0
            raise SpecParseError(lineno, c, "expected %d fields, got %d" % (len(shape), len(toks)))
        row = []
        for (t, c), s in zip(toks, shape):
            if s == "i":
                row.append(_integer(t, lineno, c))
            elif s == "q":
                row.append(_rational(t, lineno, c))
            elif s == "m":
                row.append(_monomial(t, lineno, c))
            else:
                row.append(t)
        sections[current].append(tuple(row))
        positions[(current, len(sections[current]) - 1)] = (lineno, toks)
    if kind is None:
        raise SpecParseError(1, 1, "missing 'kind:' header")
    doc = SpecDoc(kind, header, sections)
    _check_labels(doc, positions)
    return doc


def _monomial(tok, lineno, col):
    if tok == "1":
        return ()
    out = []
    for part in tok.split("*"):
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(\^(\d+))?", part)
        if not m:
            raise SpecParseError(lineno, col, "bad monomial %r" % tok)
        out += [m.group(1)] * int(m.group(3) or 1)
    return tuple(out)


def _check_labels(doc, positions):
    kind, secs = doc.kind, doc.sections

    def where(section, i, field_no):
        lineno, toks = positions[(section, i)]
        return lineno, toks[field_no][1]

    if kind == "builtin":
        if "builtin" not in doc.header:
            raise SpecParseError(1, 1, "missing 'builtin:' header")
        return
    if kind == "mixed":
        declared = {l for row in secs.get("basis", []) for l in row[1:]}
        label_fields = {"delta": (0, 1), "D": (0, 1)}
    elif kind == "dga":
        if "unit" not in doc.header:
            raise SpecParseError(1, 1, "missing 'unit:' header")
        declared = {row[0] for row in secs.get("degrees", [])}
        if doc.header["unit"] not in declared:
            raise SpecParseError(1, 1, "unit %r is not in [degrees]" % doc.header["unit"])
        if doc.header.get("augmented", "yes") not in ("yes", "no"):
            raise SpecParseError(1, 1, "augmented must be yes or no")
        label_fields = {"product": (0, 1, 2), "differential": (0, 1)}
    else:
        declared = {row[0] for row in secs.get("generators", [])}
        label_fields = {"differential": (0,)}
        for i, row in enumerate(secs.get("differential", [])):
            for g in row[1]:
                if g not in declared:
                    lineno, c = where("differential", i, 1)
                    raise SpecParseError(lineno, c, "undeclared generator %r" % g)
    for section, fields in label_fields.items():
        for i, row in enumerate(secs.get(section, [])):
            for f in fields:
                if row[f] not in declared:
                    lineno, c = where(section, i, f)
                    raise SpecParseError(lineno, c, "undeclared label %r" % row[f])


def _fmt_q(q):
    return str(Fraction(q))


def format_spec(doc):
    """Canonical text of a :class:`SpecDoc`; ``parse_spec(format_spec(d)) == d``."""
    lines = ["kind: %s" % doc.kind]
    for key in _HEADERS[doc.kind]:
        if key in doc.header:
            lines.append("%s: %s" % (key, doc.header[key]))
    for sec in _SECTIONS[doc.kind]:
        if sec not in doc.sections:
            continue
        lines.append("[%s]" % sec)
        for row in doc.sections[sec]:
            if doc.kind == "mixed" and sec == "basis":
                lines.append(" ".join(["%d:" % row[0]] + list(row[1:])))
                continue
            out = []
            for x in row:
                if isinstance(x, tuple):
                    out.append("*".join(x) or "1")
                elif isinstance(x, Fraction):
                    out.append(_fmt_q(x))
                else:
                    out.append(str(x))
            lines.append(" ".join(out))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# building objects

def build(doc):
    """The object a document describes: a mixed complex, dga, free model or builtin fixture."""
    name = doc.header.get("name", "")
    if doc.kind == "builtin":
        return builtin(doc.header["builtin"])
    if doc.kind == "mixed":
        basis = {}
        for row in doc.sections.get("basis", []):
            basis.setdefault(row[0], []).extend(row[1:])
        maps = {"delta": {}, "D": {}}
        for sec, images in maps.items():
            for src, tgt, c in doc.sections.get(sec, []):
                images.setdefault(src, {})[tgt] = images.get(src, {}).get(tgt, 0) + c
        try:
            return MixedComplex.from_images(basis, maps["delta"], maps["D"], name=name)
        except (InvalidComplex, ValueError) as e:
            raise SpecValidationError(str(e)) from None
    if doc.kind == "dga":
        degrees = {l: d for l, d in doc.sections.get("degrees", [])}
        mult, d = {}, {}
        for a, b, c, q in doc.sections.get("product", []):
            mult.setdefault((a, b), {})[c] = mult.get((a, b), {}).get(c, 0) + q
        for a, b, q in doc.sections.get("differential", []):
            d.setdefault(a, {})[b] = d.get(a, {}).get(b, 0) + q
        return DgaSpec(degrees, doc.header["unit"], mult, d,
                       augmented=doc.header.get("augmented", "yes") == "yes", name=name)
    gens = {g: deg for g, deg in doc.sections.get("generators", [])}
    d = {}
    for g, mono, q in doc.sections.get("differential", []):
        d.setdefault(g, {})[mono] = d.get(g, {}).get(mono, 0) + q
    return FreeGCASpec(gens, d, name=name)


def load(args):
    """Resolve the positional spec arguments: a path, ``-`` for stdin, or ``builtin NAME``."""
    if args.spec == "builtin":
        if not args.name:
            raise SpecParseError(1, 1, "'builtin' needs a fixture name")
        return builtin(args.name)
    text = sys.stdin.read() if args.spec == "-" else open(args.spec, encoding="utf-8").read()
    return build(parse_spec(text))


def validate_object(obj):
    if isinstance(obj, MixedComplex):
        return validate_mixed(obj)
    if isinstance(obj, DgaSpec):
        return validate_dga(obj)
    if isinstance(obj, FreeGCASpec):
        return validate_model(obj)
    return Report("fixture")


def mixed_for(obj, complex_kind="auto", convention="loday"):
    """The mixed complex a command works on, plus a short description of the choice."""
    if isinstance(obj, MixedComplex):
        return obj, "mixed complex"
    if isinstance(obj, FreeGCASpec):
        return LoopModel(obj, 8).mixed, "free loop model"
    if complex_kind == "auto":
        complex_kind = "full" if hochschild(obj).degree_finite or not obj.augmented \
            else "reduced"
    if complex_kind == "full":
        return to_mixed(hochschild(obj), convention), "Hochschild complex"
    if complex_kind == "normalized":
        return normalized_mixed(obj, convention), "normalized complex"
    return reduced_mixed(obj, convention), "reduced complex"


# ---------------------------------------------------------------------------
# reports

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "cyclichom report record (one JSON object per line)",
    "oneOf": [
        {"type": "object", "required": ["record", "command", "object", "window"],
         "properties": {"record": {"const": "meta"}, "command": {"type": "string"},
                        "object": {"type": "string"}, "flavour": {"type": "string"},
                        "window": {"type": "object"}}},
        {"type": "object", "required": ["record", "degree", "dimension", "u_rank", "trust"],
         "properties": {"record": {"const": "row"}, "degree": {"type": "integer"},
                        "dimension": {"type": "integer"}, "u_rank": {"type": "integer"},
                        "trust": {"enum": ["exact", "stabilized", "truncated"]}}},
        {"type": "object", "required": ["record", "suite", "name", "passed", "detail"],
         "properties": {"record": {"const": "check"}, "suite": {"type": "string"},
                        "name": {"type": "string"}, "passed": {"type": "boolean"},
                        "detail": {"type": "string"}}},
        {"type": "object", "required": ["record", "passed"],
         "properties": {"record": {"const": "summary"}, "passed": {"type": "boolean"}}},
    ],
}


def _window_record(w):
    return {"degree_lo": w.degree_lo, "degree_hi": w.degree_hi, "margin": w.margin,
            "upower_lo": w.upower_lo, "upower_hi": w.upower_hi, "cap": w.cap}


def table_records(table, command, obj_name):
    yield {"record": "meta", "command": command, "object": obj_name,
           "flavour": str(table.flavour), "window": _window_record(table.window)}
    for rec in table.to_records():
        rec = dict(rec)
        rec.pop("flavour")
        yield dict(record="row", **rec)


def table_text(table, command, obj_name):
    w = table.window
    head = "%s of %s, flavour %s, degrees %d..%d, u-powers %d..%d%s" % (
        command, obj_name, table.flavour, w.degree_lo, w.degree_hi, w.upower_lo, w.upower_hi,
        "" if w.cap is None else ", cap %d" % w.cap)
    return head + "\n" + str(table)


def records_from_text(text):
    """Rows recovered from the text form, for comparing with the machine form."""
    rows = []
    for line in text.splitlines():
        m = re.fullmatch(r"\s+(-?\d+)\s+(\d+)\s+(\d+)\s+(\w+)", line)
        if m:
            rows.append({"record": "row", "degree": int(m.group(1)),
                         "dimension": int(m.group(2)), "u_rank": int(m.group(3)),
                         "trust": m.group(4)})
    return rows


def _emit(records, text, fmt, out):
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# verification suites

SUITES = ("axioms", "gysin", "corollary", "normalized", "duality")


def _suite_axioms(obj, w, conv):
    if isinstance(obj, MixedComplex):
        m = obj.ensure(w.degree_lo - 1, w.degree_hi + 1)
        yield validate_mixed(m, range(w.degree_lo, w.degree_hi + 1))
    elif isinstance(obj, DgaSpec):
        rep = validate_dga(obj)
        yield rep
        if rep.passed:
            yield validate_relations(hochschild(obj), conv)
    elif isinstance(obj, FreeGCASpec):
        rep = validate_model(obj)
        yield rep
        if rep.passed:
            yield LoopModel(obj, w.degree_hi).check(min(w.degree_hi, 8))


def _suite_gysin(obj, w, conv):
    m, _ = mixed_for(obj, "auto", conv)
    for variant in GYSIN_VARIANTS:
        yield gysin_check(m, variant, w)


def _suite_corollary(obj, w, conv):
    if not isinstance(obj, DgaSpec):
        return
    cc = hochschild(obj)
    if cc.degree_finite:
        yield corollary_cyccochain_check(cc, w, conv)
    if obj.augmented:
        pre = reduced_precyclic(obj)
        yield corollary_cyccochain_check(pre, w, conv, mixed=reduced_mixed(obj, conv))
        yield reduced_cyc_identities(obj, w, conv)


def _suite_normalized(obj, w, conv):
    if not isinstance(obj, DgaSpec):
        return
    if hochschild(obj).degree_finite:
        small = Window(max(w.degree_lo, 0), min(w.degree_hi, 3), w.margin, w.upower_lo,
                       w.upower_hi, w.cap)
    else:
        # C(A) is infinite in each degree and its slices grow exponentially in
        # the u-power box, so stay inside the small box the check defaults to
        small = Window(max(w.degree_lo, 0), min(w.degree_hi, 3), 2, max(w.upower_lo, -3),
                       min(w.upower_hi, 3), 2 if w.cap is None else w.cap)
    yield normalized_cyc_hom_check(obj, small, conv)
    if obj.augmented:
        yield splitting_check(obj, w, conv)


def _suite_duality(obj, w, conv):
    if isinstance(obj, MixedComplex):
        if obj.degree_finite:
            yield duality_check(obj, w)
            yield pairing_check(obj, w)
            yield double_dual_check(obj, w)
    elif isinstance(obj, DgaSpec):
        cc = hochschild(obj)
        if cc.degree_finite:
            m = to_mixed(cc, conv)
            yield duality_check(m, w)
            yield cyclic_dual_check(cc, w, conv)
        if obj.augmented:
            red = reduced_mixed(obj, conv)
            if red.degree_finite:
                yield duality_check(red, w)
                yield cyclic_dual_check(reduced_precyclic(obj), w, conv, mixed=red)


_SUITE_FNS = {"axioms": _suite_axioms, "gysin": _suite_gysin, "corollary": _suite_corollary,
              "normalized": _suite_normalized, "duality": _suite_duality}


def run_suites(obj, suites, w, conv="loday"):
    """``[(suite, report)]`` for every requested suite that applies to ``obj``."""
    out = []
    for s in suites:
        for rep in _SUITE_FNS[s](obj, w, conv):
            out.append((s, rep))
    return out


# ---------------------------------------------------------------------------
# commands

def _range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError("expected lo..hi, got %r" % text)
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range %r" % text)
    return lo, hi


def _window(args):
    lo, hi = args.degrees
    ulo, uhi = args.upow
    return Window(lo, hi, args.margin, ulo, uhi, args.cap)


def _name(obj):
    return getattr(obj, "name", "") or type(obj).__name__


def cmd_homology(args, out):
    obj = load(args)
    if isinstance(obj, FreeGCASpec):
        raise SpecValidationError("a free model has no flavour table; use the loop command")
    rep = validate_object(obj)
    if not rep.passed:
        raise SpecValidationError(str(rep))
    try:
        flavour = Flavour.parse(args.flavour)
    except ValueError as e:
        raise SpecParseError(1, 1, "--flavour: %s" % e) from None
    m, what = mixed_for(obj, args.complex, args.convention)
    table = flavour_homology(m, flavour, _window(args))
    label = "%s (%s)" % (_name(obj), what)
    _emit(table_records(table, "homology", label), table_text(table, "homology", label),
          args.format, out)
    return EXIT_OK


def cmd_loop(args, out):
    if args.spec == "builtin" and args.name and re.fullmatch(r"\s*sphere\s*\(\s*\d+\s*\)\s*",
                                                              args.name):
        n = int(re.search(r"\d+", args.name).group())
        obj = free_sphere_model(n)
    else:
        obj = load(args)
    if not isinstance(obj, FreeGCASpec):
        raise SpecValidationError("the loop command needs a free model")
    rep = validate_model(obj)
    if not rep.passed:
        raise SpecValidationError(str(rep))
    table = equivariant_loop_table(obj, _window(args), relative=args.relative)
    label = "L%s%s" % (_name(obj), " relative to the constant loops" if args.relative else "")
    _emit(table_records(table, "loop", label), table_text(table, "loop", label), args.format, out)
    return EXIT_OK


def cmd_verify(args, out):
    obj = load(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = run_suites(obj, suites, _window(args), args.convention)
    if not results:
        raise SpecValidationError("suite %s does not apply to %s" % (args.suite, _name(obj)))
    passed = all(r.passed for _, r in results)
    if args.format == "json":
        out.write(json.dumps({"record": "meta", "command": "verify", "object": _name(obj),
                              "window": _window_record(_window(args))}, sort_keys=True) + "\n")
        for suite, rep in results:
            for c in rep.checks:
                out.write(json.dumps({"record": "check", "suite": suite,
                                      "name": "%s: %s" % (rep.title, c.name),
                                      "passed": c.passed, "detail": c.detail},
                                     sort_keys=True) + "\n")
        out.write(json.dumps({"record": "summary", "passed": passed}) + "\n")
    else:
        for suite, rep in results:
            out.write("[%s] %s\n" % (suite, rep))
        out.write("verify: %s\n" % ("PASS" if passed else "FAIL"))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_schema(args, out):
    out.write(json.dumps(REPORT_SCHEMA, indent=2) + "\n")
    return EXIT_OK


def make_parser():
    p = argparse.ArgumentParser(prog="cyclichom",
                                description="Cyclic homology flavours of mixed complexes and dgas.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_degrees=(0, 8)):
        sp.add_argument("spec", help="input file, '-' for stdin, or 'builtin'")
        sp.add_argument("name", nargs="?", help="fixture name after 'builtin'")
        sp.add_argument("--degrees", type=_range, default=default_degrees, metavar="LO..HI")
        sp.add_argument("--upow", type=_range, default=(-8, 8), metavar="LO..HI")
        sp.add_argument("--margin", type=int, default=2)
        sp.add_argument("--cap", type=int, default=None)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--convention", choices=("loday", "paper"), default="loday")

    h = sub.add_parser("homology", help="flavour table of a complex")
    common(h)
    h.add_argument("--flavour", default="[[u]]")
    h.add_argument("--complex", choices=("auto", "full", "normalized", "reduced"), default="auto",
                   help="which complex of a dga to use")
    h.set_defaults(fn=cmd_homology)

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.set_defaults(fn=cmd_verify)

    lp = sub.add_parser("loop", help="equivariant cohomology of the free loop space")
    common(lp)
    lp.add_argument("--relative", action="store_true")
    lp.set_defaults(fn=cmd_loop)

    s = sub.add_parser("schema", help="print the JSON schema of report records")
    s.set_defaults(fn=cmd_schema)
    return p


_VALIDATION_ERRORS = (SpecValidationError, InvalidComplex, InvalidDga, InvalidModel, NotAugmented,
                      NotSimplyConnected, WindowTooSmall, InvalidWindow)


def _attach_ranges(argv):
    # argparse reads "-3..3" as an option, so glue range values to their flag
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--degrees", "--upow") and i + 1 < len(argv) and \
                re.fullmatch(r"-\d+\.\.-?\d+", argv[i + 1]):
            out.append("%s=%s" % (a, argv[i + 1]))
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(_attach_ranges(argv))
    try:
        return args.fn(args, out)
    except SpecParseError as e:
        err.write("parse error: %s\n" % e)
        return EXIT_PARSE
    except (OSError, UnknownName) as e:
        err.write("input error: %s\n" % (e.args[0] if e.args else e))
        return EXIT_PARSE
    except _VALIDATION_ERRORS as e:
        err.write("validation error: %s\n" % e)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
