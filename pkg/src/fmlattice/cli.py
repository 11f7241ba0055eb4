"""Command-line interface.

All commands are deterministic: the same definitions and argv produce
byte-identical output.  Exit codes: 0 on success, 1 for mathematically
negative results (not free, no solution, a failed check) when --strict is
set, 2 for input errors of any kind.

Vectors are written inline as  r,c1,..,cd;ch2  (the degree-4 part may be
a fraction like 1/2), or named after a catalog vector.  Matrices use the
definitions-format literal [a,b;c,d].  Additional definitions files are
loaded with --defs, repeatable, on top of the built-in catalog.
"""

from __future__ import annotations

import argparse
import random
import shlex
import sys
from fractions import Fraction

from .averaging import random_rep, verify_ker_im
from .catalog import EXAMPLE_IDS, Catalog, builtin_catalog, reproduce
from .covers import chi_adjunction_check, pullback_ch, pushforward_ch, validate_cover
from .defsio import DefsError, load_definitions, parse_matrix_text
from .descent import divisibility_obstruction, freeness_gcd
from .surfaces import MukaiVector, euler_pairing, moduli_dim_expectation, mukai_pairing, mukai_vector
from .transport import (
    LatticeIsometry,
    LiftFamily,
    check_equivariant,
    descend_isometry,
    lift_isometry,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--defs", action="append", default=[], metavar="FILE",
                        help="load extra definitions (repeatable)")
    common.add_argument("--records", action="store_true",
                        help="emit machine-readable key<TAB>value lines")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 on mathematically negative results")
    common.add_argument("--allow-invalid", action="store_true",
                        help="accept covers in --defs files that fail the transfer axioms")

    parser = _Parser(prog="fmlat", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("surface", parents=[common], help="surface catalog queries")
    ssub = p.add_subparsers(dest="surface_command", metavar="show")
    q = ssub.add_parser("show", parents=[common], help="print a surface's data")
    q.add_argument("id")

    p = sub.add_parser("chi", parents=[common], help="Euler pairing of two classes")
    p.add_argument("--surface", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--f", required=True)

    p = sub.add_parser("pairing", parents=[common], help="Mukai pairing of two Mukai vectors")
    p.add_argument("--surface", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("mukai", parents=[common], help="Mukai vector of a Chern character")
    p.add_argument("--surface", required=True)
    p.add_argument("--e", required=True)

    p = sub.add_parser("moduli-dim", parents=[common],
                       help="expected moduli dimension 2 - chi(e,e)")
    p.add_argument("--surface", required=True)
    p.add_argument("--e", required=True)

    p = sub.add_parser("cover", parents=[common], help="cover transfer queries")
    csub = p.add_subparsers(dest="cover_command", metavar="validate")
    q = csub.add_parser("validate", parents=[common], help="run the five transfer axioms")
    q.add_argument("id")

    p = sub.add_parser("push", parents=[common], help="pushforward of a class on the cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--e", required=True)

    p = sub.add_parser("pull", parents=[common], help="pullback of a class on the base")
    p.add_argument("--cover", required=True)
    p.add_argument("--f", required=True)

    p = sub.add_parser("adjunction", parents=[common],
                       help="compare chi(pull f, e) with chi(f, push e)")
    p.add_argument("--cover", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--e", required=True)

    p = sub.add_parser("free", parents=[common], help="descent gcd certificate")
    p.add_argument("--cover", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--vector", help="catalog vector id on the covering surface")
    group.add_argument("--e", help="inline class on the covering surface")

    p = sub.add_parser("obstruction", parents=[common],
                       help="orbit-length divisibility obstruction")
    p.add_argument("--cover", required=True)
    p.add_argument("--e", required=True)
    p.add_argument("--m", required=True, type=int)

    p = sub.add_parser("descend-map", parents=[common],
                       help="descend an isometry of cover lattices")
    p.add_argument("--cover-y", required=True)
    p.add_argument("--cover-x", required=True)
    p.add_argument("--mat", required=True, help="extended-lattice matrix [..;..]")

    p = sub.add_parser("lift-map", parents=[common],
                       help="lift an isometry of base lattices")
    p.add_argument("--cover-y", required=True)
    p.add_argument("--cover-x", required=True)
    p.add_argument("--mat", required=True, help="extended-lattice matrix [..;..]")

    p = sub.add_parser("equivariant", parents=[common],
                       help="find the automorphism making an isometry equivariant")
    p.add_argument("--action-y", required=True)
    p.add_argument("--action-x", required=True)
    p.add_argument("--mat", required=True, help="extended-lattice matrix [..;..]")

    p = sub.add_parser("avg", parents=[common], help="averaging-identity verification")
    asub = p.add_subparsers(dest="avg_command", metavar="verify")
    q = asub.add_parser("verify", parents=[common],
                        help="randomized ker(norm) = im(difference) suite")
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--max-order", type=int, default=12)
    q.add_argument("--max-dim", type=int, default=20)

    p = sub.add_parser("reproduce", parents=[common],
                       help="scripted reproduction of a classical example")
    p.add_argument("id", choices=EXAMPLE_IDS)

    return parser


def _load_catalog(ns) -> Catalog:
    cat = builtin_catalog()
    for path in ns.defs:
        try:
            text = open(path, "r", encoding="utf-8").read()
        except OSError as exc:
            raise DefsError(f"cannot read {path}: {exc.strerror}") from None
        entries = load_definitions(text, allow_invalid=ns.allow_invalid,
                                   registry=cat.registry())
        cat = cat.extend(entries)
    return cat


def _fmt_scalar(x) -> str:
    return str(x)


def _fmt_triple(r, c, s) -> str:
    return f"{r},{','.join(str(x) for x in c)};{s}"


def _fmt_matrix(m) -> str:
    return "[" + ";".join(",".join(str(x) for x in row) for row in m.entries) + "]"


def _parse_inline_triple(text: str, dim: int, what: str):
    try:
        left, _, right = text.partition(";")
        if not right:
            raise ValueError
        head = [int(x) for x in left.split(",")]
        tail = Fraction(right)
    except (ValueError, ZeroDivisionError):
        raise DefsError(
            f"bad {what} {text!r}; expected r,c1,..,cd;ch2") from None
    if len(head) != dim + 1:
        raise DefsError(
            f"{what} {text!r} has {len(head) - 1} divisor coordinates, lattice rank is {dim}")
    return head[0], tuple(head[1:]), tail


def _chern_arg(text: str, surface, catalog):
    entry = catalog.vectors.get(text)
    if entry is not None:
        if entry.surface != surface:
            raise DefsError(
                f"vector {text!r} lives on {entry.surface.name}, not on {surface.name}")
        return entry.chern
    r, c, ch2 = _parse_inline_triple(text, surface.dim, "class")
    return surface.character(r, c, ch2)


def _mukai_arg(text: str, surface):
    r, c, s = _parse_inline_triple(text, surface.dim, "Mukai vector")
    return MukaiVector(r, c, s)


def _get(named: dict, key: str, kind: str):
    value = named.get(key)
    if value is None:
        raise DefsError(f"unknown {kind} {key!r}")
    return value


def _emit(ns, records_lines, plain_lines):
    return records_lines if ns.records else plain_lines


def _cmd_surface(ns, catalog):
    if ns.surface_command != "show":
        raise _UsageError("usage: surface show ID")
    s = _get(catalog.surfaces, ns.id, "surface")
    plain = [
        f"surface {s.name}",
        f"rank {s.dim}",
        f"intersection {_fmt_matrix(s.num.gram)}",
        f"chi_o {s.chi_o}",
        f"canonical_order {s.canonical_order}",
    ]
    records = [
        f"surface\t{s.name}",
        f"rank\t{s.dim}",
        f"intersection\t{_fmt_matrix(s.num.gram)}",
        f"chi_o\t{s.chi_o}",
        f"canonical_order\t{s.canonical_order}",
    ]
    return OK, _emit(ns, records, plain)


def _cmd_chi(ns, catalog):
    s = _get(catalog.surfaces, ns.surface, "surface")
    e = _chern_arg(ns.e, s, catalog)
    f = _chern_arg(ns.f, s, catalog)
    value = euler_pairing(s, e, f)
    return OK, _emit(ns, [f"chi\t{value}"], [str(value)])


def _cmd_pairing(ns, catalog):
    s = _get(catalog.surfaces, ns.surface, "surface")
    v = _mukai_arg(ns.v, s)
    w = _mukai_arg(ns.w, s)
    value = mukai_pairing(s, v, w)
    return OK, _emit(ns, [f"pairing\t{value}"], [str(value)])


def _cmd_mukai(ns, catalog):
    s = _get(catalog.surfaces, ns.surface, "surface")
    e = _chern_arg(ns.e, s, catalog)
    v = mukai_vector(s, e)
    text = _fmt_triple(v.r, v.c, v.s)
    return OK, _emit(ns, [f"mukai\t{text}"], [text])


def _cmd_moduli_dim(ns, catalog):
    s = _get(catalog.surfaces, ns.surface, "surface")
    e = _chern_arg(ns.e, s, catalog)
    value = moduli_dim_expectation(s, e)
    return OK, _emit(ns, [f"moduli_dim\t{value}"], [str(value)])


def _cmd_cover(ns, catalog):
    if ns.cover_command != "validate":
        raise _UsageError("usage: cover validate ID")
    t = _get(catalog.covers, ns.id, "cover")
    report = validate_cover(t)
    plain, records = [], []
    for check in report.checks:
        verdict = "PASS" if check.passed else "FAIL"
        plain.append(f"{verdict} {check.name}" + ("" if check.passed else f": {check.detail}"))
        records.append(f"check.{check.name}\t{'pass' if check.passed else 'fail'}")
    code = OK if report.passed else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


def _cmd_push(ns, catalog):
    t = _get(catalog.covers, ns.cover, "cover")
    e = _chern_arg(ns.e, t.cover, catalog)
    v = pushforward_ch(t, e)
    text = _fmt_triple(v.r, v.c, v.s)
    return OK, _emit(ns, [f"push\t{text}"], [text])


def _cmd_pull(ns, catalog):
    t = _get(catalog.covers, ns.cover, "cover")
    f = _chern_arg(ns.f, t.base, catalog)
    v = pullback_ch(t, f)
    text = _fmt_triple(v.r, v.c, v.s)
    return OK, _emit(ns, [f"pull\t{text}"], [text])


def _cmd_adjunction(ns, catalog):
    t = _get(catalog.covers, ns.cover, "cover")
    f = _chern_arg(ns.f, t.base, catalog)
    e = _chern_arg(ns.e, t.cover, catalog)
    lhs, rhs, equal = chi_adjunction_check(t, f, e)
    plain = [f"lhs {lhs}", f"rhs {rhs}", f"equal {str(equal).lower()}"]
    records = [f"lhs\t{lhs}", f"rhs\t{rhs}", f"equal\t{str(equal).lower()}"]
    code = OK if equal else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


def _cmd_free(ns, catalog):
    t = _get(catalog.covers, ns.cover, "cover")
    e = _chern_arg(ns.vector if ns.vector else ns.e, t.cover, catalog)
    cert = freeness_gcd(t, e)
    plain = [f"{label} {value}" for label, value in cert.values]
    plain.append(f"gcd {cert.gcd}")
    plain.append(f"free {str(cert.free).lower()}")
    records = [f"value.{label}\t{value}" for label, value in cert.values]
    records.append(f"gcd\t{cert.gcd}")
    records.append(f"free\t{str(cert.free).lower()}")
    code = OK if cert.free else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


def _cmd_obstruction(ns, catalog):
    t = _get(catalog.covers, ns.cover, "cover")
    e = _chern_arg(ns.e, t.cover, catalog)
    report = divisibility_obstruction(t, e, ns.m)
    if not report.applicable:
        plain = ["applicable false", f"reason {report.reason}"]
        records = ["applicable\tfalse", f"reason\t{report.reason}"]
        code = NEGATIVE if ns.strict else OK
        return code, _emit(ns, records, plain)
    plain = ["applicable true", f"divisor {report.divisor}",
             f"all_divisible {str(report.all_divisible).lower()}"]
    records = ["applicable\ttrue", f"divisor\t{report.divisor}",
               f"all_divisible\t{str(report.all_divisible).lower()}"]
    return OK, _emit(ns, records, plain)


def _isometry_arg(text, source, target):
    mat = parse_matrix_text(text)
    return LatticeIsometry(source, target, mat)


def _cmd_descend_map(ns, catalog):
    t_y = _get(catalog.covers, ns.cover_y, "cover")
    t_x = _get(catalog.covers, ns.cover_x, "cover")
    phi_t = _isometry_arg(ns.mat, t_y.cover, t_x.cover)
    outcome = descend_isometry(phi_t, t_y, t_x)
    if outcome:
        text = _fmt_matrix(outcome.isometry.mat)
        return OK, _emit(ns, ["descends\ttrue", f"map\t{text}"],
                         ["descends true", f"map {text}"])
    plain = ["descends false", f"reason {outcome.failure}"]
    records = ["descends\tfalse", f"reason\t{outcome.failure}"]
    if outcome.witness:
        src, dst = outcome.witness
        src_text = ",".join(str(x) for x in src)
        dst_text = ",".join(str(x) for x in dst)
        plain.append(f"witness ({src_text}) -> ({dst_text})")
        records.append(f"witness.source\t{src_text}")
        records.append(f"witness.image\t{dst_text}")
    code = NEGATIVE if ns.strict else OK
    return code, _emit(ns, records, plain)


def _cmd_lift_map(ns, catalog):
    t_y = _get(catalog.covers, ns.cover_y, "cover")
    t_x = _get(catalog.covers, ns.cover_x, "cover")
    phi = _isometry_arg(ns.mat, t_y.base, t_x.base)
    result = lift_isometry(phi, t_y, t_x)
    if isinstance(result, LiftFamily):
        plain = ["lifts family",
                 f"particular {_fmt_matrix(result.particular)}"]
        records = ["lifts\tfamily",
                   f"family.particular\t{_fmt_matrix(result.particular)}"]
        for i, direction in enumerate(result.directions, 1):
            plain.append(f"direction.{i} {_fmt_matrix(direction)}")
            records.append(f"family.direction.{i}\t{_fmt_matrix(direction)}")
        return OK, _emit(ns, records, plain)
    plain = [f"lifts {len(result)}"]
    records = [f"lifts\t{len(result)}"]
    for i, iso in enumerate(result, 1):
        plain.append(f"lift.{i} {_fmt_matrix(iso.mat)}")
        records.append(f"lift.{i}\t{_fmt_matrix(iso.mat)}")
    code = OK if result else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


def _cmd_equivariant(ns, catalog):
    a_y = _get(catalog.actions, ns.action_y, "action")
    a_x = _get(catalog.actions, ns.action_x, "action")
    phi = _isometry_arg(ns.mat, a_y.surface, a_x.surface)
    exponents = check_equivariant(phi, a_y, a_x)
    if exponents is None:
        code = NEGATIVE if ns.strict else OK
        return code, _emit(ns, ["equivariant\tfalse"], ["equivariant false"])
    text = ",".join(str(k) for k in exponents)
    return OK, _emit(ns, ["equivariant\ttrue", f"mu\t{text}"],
                     ["equivariant true", f"mu {text}"])


def _cmd_avg(ns, catalog):
    if ns.avg_command != "verify":
        raise _UsageError("usage: avg verify [--trials N --seed S ...]")
    if ns.trials < 1:
        raise DefsError("--trials must be positive")
    rng = random.Random(ns.seed)
    failures = 0
    for _ in range(ns.trials):
        rep = random_rep(rng, max_order=ns.max_order, max_dim=ns.max_dim)
        report = verify_ker_im(rep)
        if not report.holds:
            failures += 1
    plain = [f"trials {ns.trials}", f"failures {failures}",
             f"all_hold {str(failures == 0).lower()}"]
    records = [f"trials\t{ns.trials}", f"failures\t{failures}",
               f"all_hold\t{str(failures == 0).lower()}"]
    code = OK if failures == 0 else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


def _cmd_reproduce(ns, catalog):
    report = reproduce(ns.id, catalog)
    plain, records = [], []
    for check in report.checks:
        verdict = "PASS" if check.passed else "FAIL"
        plain.append(f"{verdict} {check.name}: computed {check.computed}, "
                     f"expected {check.expected}")
        records.append(f"check.{check.name}\t{'pass' if check.passed else 'fail'}")
        records.append(f"computed.{check.name}\t{check.computed}")
    plain.append(f"result {'PASS' if report.passed else 'FAIL'}")
    records.append(f"result\t{'pass' if report.passed else 'fail'}")
    code = OK if report.passed else (NEGATIVE if ns.strict else OK)
    return code, _emit(ns, records, plain)


_HANDLERS = {
    "surface": _cmd_surface,
    "chi": _cmd_chi,
    "pairing": _cmd_pairing,
    "mukai": _cmd_mukai,
    "moduli-dim": _cmd_moduli_dim,
    "cover": _cmd_cover,
    "push": _cmd_push,
    "pull": _cmd_pull,
    "adjunction": _cmd_adjunction,
    "free": _cmd_free,
    "obstruction": _cmd_obstruction,
    "descend-map": _cmd_descend_map,
    "lift-map": _cmd_lift_map,
    "equivariant": _cmd_equivariant,
    "avg": _cmd_avg,
    "reproduce": _cmd_reproduce,
}


def run_cli(argv) -> tuple:
    """Run one command; returns (exit_code, output_text)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
        if ns.command is None:
            return INPUT_ERROR, parser.format_usage() + "error: a command is required\n"
        handler = _HANDLERS[ns.command]
        code, lines = handler(ns, _load_catalog(ns))
        return code, "".join(line + "\n" for line in lines)
    except _UsageError as exc:
        return INPUT_ERROR, parser.format_usage() + f"error: {exc}\n"
    except (DefsError, ValueError, TypeError) as exc:
        return INPUT_ERROR, f"error: {exc}\n"


def run_script(text: str) -> tuple:
    """Replay a session script: one command line per row, '#' comments.

    Returns (exit_code, output); the code is the maximum over the
    commands, and output concatenates each command's output after an
    echo of the command itself.  Replaying the same script is guaranteed
    to produce byte-identical output.
    """
    code = OK
    chunks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        chunks.append(f"$ {line}\n")
        step_code, out = run_cli(shlex.split(line))
        chunks.append(out)
        code = max(code, step_code)
    return code, "".join(chunks)


def main() -> None:
    code, output = run_cli(sys.argv[1:])
    sys.stdout.write(output)
    sys.exit(code)
