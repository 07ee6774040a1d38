"""Command-line front end.

Exit status: 0 success, 1 validation or law failure, 2 malformed input.
Documents are JSON on files or standard input ("-"); results are written as
canonical JSON (sorted keys, two-space indent) so identical runs give
identical bytes.
"""
from __future__ import annotations

import argparse
import sys

from . import cob, prof, serialize as ser
from .axioms import check_traced_axioms
from .cob import LabelSet
from .errors import CobError, IndexOutOfRange, LawViolation, NotCompact, TypeMismatch
from .intcat import int_compose
from .matrix import MatrixInstance, matrix_eval_oracle
from .operad import wd_substitute, wd_to_cobordism
from .traced import action


class Failure(Exception):
    """Checks ran but something did not hold; carries report lines."""

    def __init__(self, lines):
        super().__init__("\n".join(lines))
        self.lines = lines


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise ser.DocumentError(f"cannot read {path}: {e}") from None
    return ser.loads(text)


def parse_dims(text: str) -> dict[str, int]:
    dims = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        if not sep or not name.strip():
            raise ser.DocumentError(f"bad dims entry {part!r}; expected label=int")
        try:
            dims[name.strip()] = int(value)
        except ValueError:
            raise ser.DocumentError(f"bad dimension {value!r}") from None
        if dims[name.strip()] < 1:
            raise ser.DocumentError("dimensions must be positive")
    if not dims:
        raise ser.DocumentError("no dimensions given")
    return dims


def _cobs(paths):
    docs = [_read(p) for p in paths]
    labels = ser.infer_labels(*docs)
    return [ser.cobordism_from_doc(d, labels) for d in docs]


# -- commands ---------------------------------------------------------------


def cmd_normalize(args):
    (phi,) = _cobs([args.file])
    return ser.cobordism_to_doc(cob.canonicalize(phi))


def cmd_compose(args):
    return ser.cobordism_to_doc(cob.compose_all(*_cobs(args.files)))


def cmd_tensor(args):
    phis = _cobs(args.files)
    return ser.cobordism_to_doc(cob.tensor_all(phis[0].labels, *phis))


def cmd_trace(args):
    (phi,) = _cobs([args.file])
    return ser.cobordism_to_doc(cob.trace_cob(phi, args.over))


def cmd_relabel(args):
    kdoc = _read(args.map)
    doc = _read(args.file)
    # labels the map mentions but the cobordism does not are still part of the source
    keys = kdoc.get("map", {}) if isinstance(kdoc, dict) else {}
    kappa = ser.kleisli_from_doc(kdoc, source=ser.infer_labels(doc, extra=keys if isinstance(keys, dict) else ()))
    phi = ser.cobordism_from_doc(doc, kappa.source)
    return ser.cobordism_to_doc(cob.relabel(phi, kappa))


def cmd_decompose(args):
    (phi,) = _cobs([args.file])
    return ser.decomposition_to_doc(cob.decompose(phi))


def cmd_wd_flatten(args):
    W = ser.wiring_from_doc(_read(args.file))
    return ser.cobordism_to_doc(wd_to_cobordism(W))


def cmd_wd_subst(args):
    outer_doc, inner_doc = _read(args.outer), _read(args.inner)
    labels = ser.infer_labels(outer_doc, inner_doc)
    outer = ser.wiring_from_doc(outer_doc, labels)
    inner = ser.wiring_from_doc(inner_doc, labels)
    if args.slot < 1:
        raise IndexOutOfRange(f"slot {args.slot} out of range")
    return ser.wiring_to_doc(wd_substitute(outer, args.slot - 1, inner))


def _instance(dims, semiring, labels: LabelSet) -> MatrixInstance:
    missing = [a for a in labels if a not in dims]
    if missing:
        raise ser.DocumentError(f"no dimension for labels {missing}")
    names = sorted(set(dims) | set(labels))
    return MatrixInstance(LabelSet(names), dims, semiring)


def cmd_eval(args):
    dims = parse_dims(args.dims)
    doc = _read(args.file)
    labels = ser.infer_labels(doc, extra=dims)
    phi = ser.cobordism_from_doc(doc, labels)
    T = _instance(dims, args.semiring, labels)
    phi = cob.canonicalize(phi)
    if args.oracle:
        M = matrix_eval_oracle(phi, T.dims, T.sr)
        return {
            "dims": dict(T.dims),
            "semiring": T.sr.name,
            "dom": ser.signed_set_to_doc(phi.dom),
            "cod": ser.signed_set_to_doc(phi.cod),
            "entries": ser.matrix_to_list(M, T.sr),
        }
    if args.input is not None:
        _, f = ser.morphism_from_doc(_read(args.input), T)
    elif not phi.dom:
        f = T.identity(())
    else:
        raise ser.DocumentError("a cobordism with nonempty domain needs --input")
    return ser.morphism_to_doc(T, action(T, phi, f))


def cmd_int_compose(args):
    d1, d2 = _read(args.f), _read(args.g)
    T, f = ser.int_morphism_from_doc(d1)
    T2 = ser.instance_from_doc(d2)
    if T2.dims != T.dims or T2.sr != T.sr:
        raise TypeMismatch("the two morphisms live in different matrix instances")
    _, g = ser.int_morphism_from_doc(d2, T)
    return ser.int_morphism_to_doc(T, int_compose(T, f, g))


def cmd_check_axioms(args):
    dims = parse_dims(args.dims)
    T = MatrixInstance(LabelSet(sorted(dims)), dims, args.semiring)
    report = check_traced_axioms(T, cases=args.cases, seed=args.seed, max_len=args.max_len, max_points=args.max_points)
    if not report.passed:
        raise Failure(report.lines())
    return report.lines()


def cmd_check_prof(args):
    lines = prof_report(args.instance)
    if any(line.startswith("FAIL") for line in lines):
        raise Failure(lines)
    return lines


def _line(name, violations) -> str:
    if not violations:
        return f"PASS {name}"
    v = violations[0]
    return f"FAIL {name}: {len(violations)} violations, first {v.law} {v.witness!r}"


def prof_report(instance: str) -> list[str]:
    if instance in prof.BUILTIN_CATEGORIES:
        C = prof.BUILTIN_CATEGORIES[instance]()
        monoid_doc = None
    else:
        doc = _read(instance)
        cat_doc = doc.get("category", doc) if isinstance(doc, dict) else doc
        C = ser.category_from_doc(cat_doc)
        monoid_doc = doc.get("monoid") if isinstance(doc, dict) else None
    lines = [_line("category laws", prof.category_violations(C))]
    if C.monoidal is not None:
        lines.append(_line("monoidal laws", prof.monoidal_violations(C)))
    if C.compact is not None:
        lines.append(_line("compact laws", prof.compact_violations(C)))
    if monoid_doc is not None:
        N = ser.monoid_from_doc(monoid_doc, C)
        v = prof.monoid_violations(N)
        lines.append(_line("monoid laws", v))
        if not v:
            try:
                prof.collapse(N)
                lines.append("PASS collapse")
            except LawViolation as e:
                lines.append(_line("collapse", [e]))
    if C.compact is not None and not any(x.startswith("FAIL") for x in lines):
        H = prof.hom_monoid(C)
        lines.append(_line("hom monoid laws", prof.monoid_violations(H)))
        derived = prof.derive_mult(prof.forget_mult(H))
        same = [] if derived.mult == H.mult else [LawViolation("forget then derive", None)]
        lines.append(_line("forget then derive", same))
        lines.append(_line("hom shift", prof.shift_iso_violations(H)))
        U = prof.monoid_to_copresheaf(H)
        back = prof.monoid_to_copresheaf(prof.copresheaf_to_monoid(U))
        lines.append(_line("copresheaf round trip", [] if prof.copresheaf_equal(U, back) else [LawViolation("U F", None)]))
    return lines


# -- parser -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cobtrace", description="Oriented 1-cobordisms as executable string diagrams.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", help="canonical form of a cobordism")
    s.add_argument("file")
    s.set_defaults(run=cmd_normalize)

    s = sub.add_parser("compose", help="compose cobordisms left to right")
    s.add_argument("files", nargs="+")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("tensor", help="tensor cobordisms")
    s.add_argument("files", nargs="+")
    s.set_defaults(run=cmd_tensor)

    s = sub.add_parser("trace", help="close the first K points of dom onto cod")
    s.add_argument("file")
    s.add_argument("--over", type=int, required=True, metavar="K")
    s.set_defaults(run=cmd_trace)

    s = sub.add_parser("relabel", help="relabel along a Kleisli map")
    s.add_argument("file")
    s.add_argument("--map", required=True, metavar="F")
    s.set_defaults(run=cmd_relabel)

    s = sub.add_parser("decompose", help="standard A/B/C/D/E decomposition")
    s.add_argument("file")
    s.set_defaults(run=cmd_decompose)

    wd = sub.add_parser("wd", help="wiring diagrams")
    wsub = wd.add_subparsers(dest="wd_command", required=True, parser_class=_Parser)
    s = wsub.add_parser("flatten")
    s.add_argument("file")
    s.set_defaults(run=cmd_wd_flatten)
    s = wsub.add_parser("subst")
    s.add_argument("outer")
    s.add_argument("inner")
    s.add_argument("--slot", type=int, required=True, metavar="N", help="1-based box number")
    s.set_defaults(run=cmd_wd_subst)

    s = sub.add_parser("eval", help="evaluate a cobordism in a matrix instance")
    s.add_argument("file")
    s.add_argument("--dims", required=True)
    s.add_argument("--semiring", choices=["nat", "bool", "float"], default="nat")
    s.add_argument("--input", help="morphism document in hom(inp dom, outp dom)")
    s.add_argument("--oracle", action="store_true", help="print the contraction matrix of the cobordism itself")
    s.set_defaults(run=cmd_eval)

    it = sub.add_parser("int", help="Int construction")
    isub = it.add_subparsers(dest="int_command", required=True, parser_class=_Parser)
    s = isub.add_parser("compose")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(run=cmd_int_compose)

    ck = sub.add_parser("check", help="law checks")
    csub = ck.add_subparsers(dest="check_command", required=True, parser_class=_Parser)
    s = csub.add_parser("axioms")
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--max-points", type=int, default=None)
    s.add_argument("--max-len", type=int, default=2)
    s.add_argument("--dims", default="a=2,b=2")
    s.add_argument("--semiring", choices=["nat", "bool", "float"], default="nat")
    s.set_defaults(run=cmd_check_axioms)
    s = csub.add_parser("prof")
    s.add_argument("instance", help="instance file, or one of Z2, Z3, FinRel01")
    s.set_defaults(run=cmd_check_prof)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.run(args)
    except ser.DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Failure as e:
        sys.stderr.write("\n".join(e.lines) + "\n")
        return 1
    except (CobError, TypeMismatch, LawViolation, NotCompact, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if isinstance(result, list):
        sys.stdout.write("".join(line + "\n" for line in result))
    else:
        sys.stdout.write(ser.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
