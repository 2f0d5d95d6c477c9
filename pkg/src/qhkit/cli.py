"""Command-line driver: ``qhkit COMMAND FILE [options]``.

Exit codes: 0 when the property holds or the computation succeeds, 1 when it
is refuted (a witness is printed), 2 when the input is invalid.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from typing import List, Optional, Sequence

from .algebra import AModule, dual_module, regular_module
from .base_change import (
    fiberwise_filtration_check, hom_base_change_check, prime_sample, reduce_mod_p,
    reduce_tilting_check,
)
from .filtrations import (
    InconsistencyError, has_delta_filtration, has_nabla_filtration, try_delta_filtration,
    try_nabla_filtration,
)
from .io import SpecError, emit_algebra_spec, load_spec
from .linalg import LinalgError
from .qh import NotQuasiHereditary, ext_orthogonality_table, verify_split_qh
from .ringel import (
    cartan_delta_matrix, double_dual_invariants, ringel_dual, self_duality_probe,
)
from .tilting import build_characteristic_tilting, verify_tilting

COMMANDS = ("check", "costandard", "ext-table", "filtration", "tilt", "ringel",
            "double-dual", "self-dual", "reduce", "report")


class InputError(Exception):
    pass


def format_table(headers: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    rows = [[_cell(x) for x in r] for r in rows]
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        out = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
        out += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(out) + "\n"
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(headers)] + [line(r) for r in rows]) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(_cell(t) for t in x) + ")"
    return str(x)


def _matrix_text(M) -> str:
    return "\n".join("  [" + " ".join(str(x) for x in r) + "]" for r in M.rows)


class Session:
    """Lazily computed objects for one algebra file."""

    def __init__(self, path):
        self.spec = load_spec(path)
        self._qh = None
        self._tilting = None

    @property
    def qh(self):
        if self._qh is None:
            s = self.spec
            self._qh = verify_split_qh(s.algebra, s.poset, s.standards)
        return self._qh

    @property
    def tilting(self):
        if self._tilting is None:
            self._tilting = build_characteristic_tilting(self.qh)
        return self._tilting

    def label(self, text):
        if text is None:
            return None
        if text not in self.spec.poset.elements:
            raise InputError(f"unknown label {text!r}; labels are {list(self.spec.poset.elements)}")
        return text

    def module(self, name: str) -> AModule:
        """Named extras, or A, DA, T, P(l), Delta(l), nabla(l), T(l)."""
        if name in self.spec.extras:
            return self.spec.extras[name]
        A = self.spec.algebra
        if name == "A":
            return regular_module(A)
        if name == "DA":
            return dual_module(regular_module(A.opposite()), name="DA")
        if name == "T":
            return self.tilting.module
        if "(" in name and name.endswith(")"):
            kind, lab = name[:-1].split("(", 1)
            lab = self.label(lab)
            if kind == "P":
                return self.qh.projective(lab)
            if kind == "Delta":
                return self.qh.standards[lab]
            if kind == "nabla":
                return self.qh.costandard(lab)
            if kind == "T":
                return self.tilting.summand(lab)
        raise InputError(f"unknown module {name!r}")

    def pool(self) -> List[AModule]:
        qh = self.qh
        A = qh.algebra
        mods = [regular_module(A), dual_module(regular_module(A.opposite()), name="DA")]
        for l in qh.labels:
            mods += [qh.standards[l], qh.costandard(l), self.tilting.summand(l)]
        mods += list(self.spec.extras.values())
        return mods


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text)


def cmd_check(s: Session, args):
    qh = s.qh
    out = [f"algebra {s.spec.name or '(unnamed)'} over {qh.ring}, rank {qh.algebra.dim}",
           f"labels (increasing): {', '.join(qh.labels)}",
           f"heredity chain ranks: {_cell(qh.chain_ranks())}"]
    rows = [(l, qh.standards[l].rank, qh.layers[l].layer_rank) for l in qh.poset.decreasing()]
    out.append(format_table(("label", "rank Delta", "layer rank"), rows, args.format).rstrip())
    out.append("split quasi-hereditary: yes")
    return 0, "\n".join(out) + "\n"


def cmd_costandard(s: Session, args):
    qh = s.qh
    labels = [s.label(args.lam)] if args.lam else list(qh.labels)
    if args.format != "text":
        rows = [(l, qh.costandard(l).rank, qh.costandard(l).dimension_vector()) for l in labels]
        return 0, format_table(("label", "rank", "dims"), rows, args.format)
    out = []
    for l in labels:
        N = qh.costandard(l)
        out.append(f"nabla({l}): rank {N.rank}, weights {list(N.weights)}")
        for nm, M in zip(qh.algebra.names, N.action):
            if not M.is_zero():
                out.append(f" {nm}:")
                out.append(_matrix_text(M))
    return 0, "\n".join(out) + "\n"


def cmd_ext_table(s: Session, args):
    T = ext_orthogonality_table(s.qh, args.max_degree)
    rows = [(lam, beta, i, free, tors or "-", "yes" if ok else "NO")
            for lam, beta, i, free, tors, ok in T.cells]
    text = format_table(("delta", "nabla", "degree", "free rank", "torsion", "ok"), rows,
                        args.format)
    return (0 if T.passed else 1), text


def cmd_filtration(s: Session, args):
    if not args.module:
        raise InputError("filtration needs --module NAME")
    M = s.module(args.module)
    qh = s.qh
    out = []
    code = 0
    for kind, fn in (("delta", try_delta_filtration), ("nabla", try_nabla_filtration)):
        if args.kind not in (kind, "both"):
            continue
        cert, reason = fn(M, qh)
        if cert is None:
            out.append(f"{kind} filtration of {args.module}: none ({reason})")
            code = 1
            continue
        rows = [(k + 1, l, m) for k, (l, m) in enumerate(zip(cert.labels, cert.multiplicities))]
        out.append(f"{kind} filtration of {args.module} (bottom layer first), "
                   f"replay {'ok' if cert.replay() else 'FAILED'}:")
        out.append(format_table(("layer", "label", "multiplicity"), rows, args.format).rstrip())
        if not cert.replay():
            code = 1
    return code, "\n".join(out) + "\n"


def cmd_tilt(s: Session, args):
    qh = s.qh
    T = s.tilting
    labels = [s.label(args.lam)] if args.lam else list(qh.labels)
    rows, ok = [], True
    for l in labels:
        d = T.part(l)
        good = verify_tilting(d, qh)
        ok &= good
        steps = ";".join(f"{mu}x{k}" for mu, k in d.steps) or "-"
        rows.append((l, qh.standards[l].rank, d.module.rank, steps, d.cokernel.rank,
                     d.kernel.rank, good))
    text = format_table(("label", "rank Delta", "rank T", "extensions", "rank X", "rank Y",
                         "verified"), rows, args.format)
    if not args.lam:
        whole = verify_tilting(T, qh)
        ok &= whole
        text += f"characteristic tilting module rank {T.module.rank}, " \
                f"Ext^1(T,T) = Ext^2(T,T) = 0: {'yes' if whole else 'no'}\n"
    return (0 if ok else 1), text


def cmd_ringel(s: Session, args):
    R = ringel_dual(s.qh, s.tilting)
    B = R.qh
    out = [f"Ringel dual over {B.ring}, rank {B.algebra.dim}",
           f"labels (increasing for the reversed order): {', '.join(B.labels)}",
           f"heredity chain ranks: {_cell(B.chain_ranks())}"]
    rows = [(l, B.standards[l].rank) for l in B.labels]
    out.append(format_table(("label", "rank standard"), rows, args.format).rstrip())
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(emit_algebra_spec(B.algebra, B.poset, B.standards))
        out.append(f"wrote {args.emit}")
    return 0, "\n".join(out) + "\n"


def cmd_double_dual(s: Session, args):
    rep = double_dual_invariants(s.qh)
    labels = s.qh.labels
    rows = [(k, v) for k, v in rep.equal.items()]
    text = format_table(("invariant", "equal"), rows, args.format)
    text += "[P:Delta] of A:      " + _cell(rep.multiplicities[0]) + "\n"
    text += "[P:Delta] of R(R(A)): " + _cell(rep.multiplicities[1]) + "\n"
    text += f"label order: {', '.join(labels)}\n"
    return (0 if rep.all_equal else 1), text


def cmd_self_dual(s: Session, args):
    rep = self_duality_probe(s.qh, ringel_dual(s.qh, s.tilting))
    text = f"verdict: {rep.verdict}\n"
    if rep.witness:
        text += f"witness: {rep.witness}\n"
    text += "necessary conditions only; a positive verdict is not a proof\n"
    return (0 if rep.witness is None else 1), text


def _reduce_rows(s: Session, primes):
    qh = s.qh
    if qh.ring.kind != "ZZ":
        raise InputError("reduce needs an algebra over ZZ")
    pool = s.pool()
    sample = prime_sample(qh, primes, modules=list(s.spec.extras.values()))
    ok = True
    rows = []
    for p in sample:
        fq = reduce_mod_p(qh, p)
        tilt_ok = reduce_tilting_check(s.tilting, qh, p)
        ok &= tilt_ok
        rows.append(("fiber", p, sample.provenance[p], "verified; nabla and T match", tilt_ok))
    deltas = [M for M in pool if has_delta_filtration(M, qh)]
    nablas = [N for N in pool if has_nabla_filtration(N, qh)]
    bad_pairs = 0
    for M in deltas:
        for N in nablas:
            rep = hom_base_change_check(M, N, sample)
            if not rep.ok:
                bad_pairs += 1
    ok &= bad_pairs == 0
    rows.append(("hom", "all", "-", f"{len(deltas) * len(nablas)} pairs, {bad_pairs} differ",
                 bad_pairs == 0))
    for name, M in sorted(s.spec.extras.items()):
        rep = fiberwise_filtration_check(M, qh, sample)
        fails = ",".join(map(str, rep.failing_primes)) or "-"
        ok &= rep.contract_holds
        rows.append(("filtration", name, f"criterion {'yes' if rep.ext_criterion else 'no'}",
                     f"fibers failing at {fails}", rep.contract_holds))
    return ok, rows


def cmd_reduce(s: Session, args):
    ok, rows = _reduce_rows(s, args.primes)
    text = format_table(("check", "prime/module", "detail", "result", "ok"), rows, args.format)
    return (0 if ok else 1), text


def cmd_report(s: Session, args):
    qh = s.qh
    md = "md"
    parts = [f"# Report: {s.spec.name or 'algebra'} over {qh.ring}", ""]
    parts += ["## Axioms", "", f"Verified split quasi-hereditary. Labels in increasing order: "
              f"{', '.join(qh.labels)}. Heredity chain ranks {_cell(qh.chain_ranks())}.", ""]
    T = ext_orthogonality_table(qh, 2)
    rows = [(a, b, i, f, t or "-", ok) for a, b, i, f, t, ok in T.cells]
    parts += ["## Ext table", "",
              format_table(("delta", "nabla", "degree", "free rank", "torsion", "ok"), rows, md)]
    rows = [(l, qh.standards[l].rank, qh.costandard(l).rank, s.tilting.summand(l).rank)
            for l in qh.labels]
    parts += ["## Standard, costandard and tilting ranks", "",
              format_table(("label", "Delta", "nabla", "T"), rows, md)]
    R = ringel_dual(qh, s.tilting)
    parts += ["## Ringel dual", "",
              f"Rank {R.algebra.dim}, chain ranks {_cell(R.qh.chain_ranks())}, "
              f"[P:Delta] matrix {_cell(cartan_delta_matrix(qh))}.", ""]
    ok = T.passed and verify_tilting(s.tilting, qh)
    if qh.ring.kind == "ZZ":
        good, rows = _reduce_rows(s, args.primes)
        ok &= good
        parts += ["## Base change", "",
                  format_table(("check", "prime/module", "detail", "result", "ok"), rows, md)]
    return (0 if ok else 1), "\n".join(parts).rstrip() + "\n"


HANDLERS = {
    "check": cmd_check, "costandard": cmd_costandard, "ext-table": cmd_ext_table,
    "filtration": cmd_filtration, "tilt": cmd_tilt, "ringel": cmd_ringel,
    "double-dual": cmd_double_dual, "self-dual": cmd_self_dual, "reduce": cmd_reduce,
    "report": cmd_report,
}


def _primes(text: str):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhkit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("spec", metavar="FILE", help="qhkit-algebra/1 or qhkit-quiver/1 JSON file")
    ap.add_argument("--module", help="module name for filtration: an extra module of the file, "
                    "A, DA, T, P(l), Delta(l), nabla(l) or T(l)")
    ap.add_argument("--lambda", dest="lam", help="restrict to one label")
    ap.add_argument("--primes", type=_primes, default=[], help="comma separated primes")
    ap.add_argument("--emit", help="ringel: write the dual as an algebra file")
    ap.add_argument("--format", choices=("text", "csv", "md"), default="text")
    ap.add_argument("--kind", choices=("delta", "nabla", "both"), default="both",
                    help="filtration kind")
    ap.add_argument("--max-degree", type=int, default=2, help="ext-table degree bound")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        s = Session(args.spec)
        code, text = HANDLERS[args.command](s, args)
    except NotQuasiHereditary as exc:
        sys.stdout.write(f"not split quasi-hereditary: {exc}\n")
        if exc.witness is not None:
            sys.stdout.write(f"witness: {exc.witness}\n")
        return 1
    except (SpecError, InputError, OSError, LinalgError, ValueError) as exc:
        sys.stderr.write(f"qhkit: invalid input: {exc}\n")
        return 2
    except InconsistencyError as exc:
        sys.stderr.write(f"qhkit: internal inconsistency: {exc}\n")
        return 3
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
