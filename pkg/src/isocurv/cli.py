"""Command-line front end.

Subcommands: gen | classify | diagnose | identities | fuzz.
Exit codes: 0 success / consistent verdict, 1 inconsistency or I/O failure,
2 usage error.  ``--json PATH`` writes a machine-readable copy of the
report next to the human-readable table on stdout.  The environment
variable ISOCURV_THREADS caps internal parallelism (the current
implementation is single-threaded, so any cap is honored trivially).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .canonical import (
    build_conformally_flat,
    build_constant_curvature,
    build_space_form,
    theorem6_identities,
)
from .diagnostics import (
    TheoremId,
    einstein_check,
    equivalence_check,
    flatness_norms,
    fuzz,
)
from .docio import TensorDocument, load_document, save_document
from .errors import IsocurvError
from .model import ModelPoint, Tolerance, hermitian_model, standard_complex_structure
from .planes import (
    Plane,
    PlaneClass,
    classify_holomorphy,
    classify_plane,
    sectional_curvature,
)

USAGE_ERROR = 2


def _parse_vec(text: str, dim: int) -> np.ndarray:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != dim:
        raise IsocurvError(f"expected {dim} components, got {len(parts)}")
    return np.array([float(p) for p in parts])


def _write_json(args, payload) -> None:
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _common(sub):
    sub.add_argument("--tol", type=float, default=1e-9, help="relative tolerance")
    sub.add_argument("--seed", type=int, default=0, help="sampling seed")
    sub.add_argument("--json", metavar="PATH", help="also write a JSON report to PATH")


def cmd_gen(args) -> int:
    name = args.name
    if args.kind == "const-curv":
        if args.dim is None or args.index is None or args.c is None:
            raise SystemExit("gen const-curv needs --dim, --index and --c")
        model = ModelPoint(args.dim, args.index)
        tensor = build_constant_curvature(model, args.c)
    elif args.kind == "conf-flat":
        if args.dim is None or args.index is None:
            raise SystemExit("gen conf-flat needs --dim and --index")
        model = ModelPoint(args.dim, args.index)
        if args.lam is not None:
            S = args.lam * model.metric
        else:
            rng = np.random.default_rng(args.seed)
            S = rng.uniform(-1.0, 1.0, (args.dim, args.dim))
            S = (S + S.T) / 2.0
        tensor = build_conformally_flat(model, S)
    elif args.kind == "space-form":
        if args.n is not None:
            dim, index = 2 * args.n, 2 * (args.s or 0)
        else:
            if args.dim is None or args.index is None:
                raise SystemExit("gen space-form needs --n/--s or --dim/--index")
            dim, index = args.dim, args.index
        if dim % 2 or index % 2:
            raise SystemExit("space forms need even dimension and even index")
        if args.mu is None or args.nu is None:
            raise SystemExit("gen space-form needs --mu and --nu")
        model = hermitian_model(dim, index)
        tensor = build_space_form(model, args.nu, args.mu)
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown kind {args.kind}")

    doc = TensorDocument(model, {name: tensor}, meta={"generator": args.kind})
    save_document(doc, args.out)
    print(f"wrote {args.out} ({args.kind}, dim={model.dim}, index={model.index})")
    return 0


def cmd_classify(args) -> int:
    doc = load_document(args.path)
    model = doc.model
    u = _parse_vec(args.u, model.dim)
    v = _parse_vec(args.v, model.dim)
    plane = Plane(u, v)
    tol = Tolerance(args.tol)
    cls = classify_plane(model, plane, tol)
    lines = [f"plane: {cls.value}"]
    payload = {"plane": cls.value}
    if model.has_cplx:
        hol = classify_holomorphy(model, plane, tol)
        lines.append(f"holomorphy: {hol.value}")
        payload["holomorphy"] = hol.value
    if args.tensor:
        if cls is PlaneClass.NONDEGENERATE:
            k = sectional_curvature(model, doc.tensor(args.tensor), plane, tol)
            lines.append(f"K[{args.tensor}]: {k!r}")
            payload["sectional_curvature"] = k
        else:
            lines.append(f"K[{args.tensor}]: undefined (degenerate plane)")
    print("\n".join(lines))
    _write_json(args, payload)
    return 0


def _print_report(rep) -> None:
    for note in rep.side_notes:
        print(f"  {note}")
    print(f"samples: {rep.samples_used}  max residual: {rep.max_residual:.6e}")
    print(f"verdict: {'consistent' if rep.verdict else 'INCONSISTENT'}")


def cmd_diagnose(args) -> int:
    doc = load_document(args.path)
    model = doc.model
    R = doc.tensor(args.tensor)
    tol = Tolerance(args.tol)
    if args.theorem == "flatness":
        norms = flatness_norms(model, R)
        payload = {k: v for k, v in vars(norms).items()}
        for k, v in payload.items():
            print(f"{k}: {v if v is None else format(v, '.6e')}")
        _write_json(args, payload)
        return 0
    tid = TheoremId(args.theorem)
    if tid is TheoremId.EINSTEIN_FROM_ISOTROPIC_RICCI:
        rep = einstein_check(model, R, args.samples, args.seed, tol)
    else:
        rep = equivalence_check(model, R, tid, args.samples, args.seed, tol)
    print(f"theorem: {args.theorem}")
    _print_report(rep)
    payload = {
        "theorem": args.theorem,
        "max_residual": rep.max_residual,
        "samples_used": rep.samples_used,
        "verdict": rep.verdict,
        "notes": rep.side_notes,
    }
    _write_json(args, payload)
    return 0 if rep.verdict else 1


def cmd_identities(args) -> int:
    doc = load_document(args.path)
    rep = theorem6_identities(doc.model, doc.tensor(args.tensor), args.samples,
                              args.seed, Tolerance(args.tol),
                              include_k_mixed=args.include_k_mixed)
    print(f"basis holomorphic-curvature sum residual: {rep.basis_sum_residual:.6e}")
    print(f"holomorphic K identity residual:          {rep.holomorphic_k_residual:.6e}")
    print(f"mixed-pair identity residual:             {rep.mixed_pair_residual:.6e}")
    if rep.optional_k_mixed_residual is not None:
        print(f"optional mixed-K identity residual:       {rep.optional_k_mixed_residual:.6e}")
    print(f"verdict: {'pass' if rep.verdict else 'fail'}")
    payload = {
        "basis_sum_residual": rep.basis_sum_residual,
        "holomorphic_k_residual": rep.holomorphic_k_residual,
        "mixed_pair_residual": rep.mixed_pair_residual,
        "optional_k_mixed_residual": rep.optional_k_mixed_residual,
        "samples_used": rep.samples_used,
        "verdict": rep.verdict,
    }
    _write_json(args, payload)
    return 0 if rep.verdict else 1


def cmd_fuzz(args) -> int:
    cplx = standard_complex_structure(args.dim, args.index) if args.complex else None
    model = ModelPoint(args.dim, args.index, cplx=cplx)
    summary = fuzz(model, args.trials, args.seed, args.samples, Tolerance(args.tol))
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if not summary["inconsistencies"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isocurv",
        description="Curvature algebra and isotropic-plane diagnostics for indefinite metrics.")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a model tensor document")
    gen.add_argument("kind", choices=["const-curv", "conf-flat", "space-form"])
    gen.add_argument("--dim", type=int)
    gen.add_argument("--index", type=int)
    gen.add_argument("--n", type=int, help="complex dimension (space-form)")
    gen.add_argument("--s", type=int, help="complex index (space-form)")
    gen.add_argument("--c", type=float, help="sectional curvature (const-curv)")
    gen.add_argument("--lam", type=float, help="Ricci = lam * g (conf-flat)")
    gen.add_argument("--mu", type=float, help="holomorphic curvature (space-form)")
    gen.add_argument("--nu", type=float, help="antiholomorphic curvature (space-form)")
    gen.add_argument("--name", default="R", help="tensor name in the document")
    gen.add_argument("--out", required=True)
    _common(gen)
    gen.set_defaults(func=cmd_gen)

    cls = subs.add_parser("classify", help="classify a 2-plane from a document's model")
    cls.add_argument("path")
    cls.add_argument("--u", required=True, help="first basis vector, comma separated")
    cls.add_argument("--v", required=True, help="second basis vector, comma separated")
    cls.add_argument("--tensor", help="also print sectional curvature of this tensor")
    _common(cls)
    cls.set_defaults(func=cmd_classify)

    diag = subs.add_parser("diagnose", help="run a theorem equivalence check")
    diag.add_argument("path")
    diag.add_argument("--tensor", required=True)
    diag.add_argument("--theorem", required=True,
                      choices=[t.value for t in TheoremId] + ["flatness"])
    diag.add_argument("--samples", type=int, default=200)
    _common(diag)
    diag.set_defaults(func=cmd_diagnose)

    idn = subs.add_parser("identities", help="holomorphic-curvature identity residuals")
    idn.add_argument("path")
    idn.add_argument("--tensor", required=True)
    idn.add_argument("--samples", type=int, default=100)
    idn.add_argument("--include-k-mixed", action="store_true",
                     help="also report the optional mixed-K identity residual")
    _common(idn)
    idn.set_defaults(func=cmd_identities)

    fz = subs.add_parser("fuzz", help="random curvature-like tensors through all checks")
    fz.add_argument("--dim", type=int, required=True)
    fz.add_argument("--index", type=int, required=True)
    fz.add_argument("--complex", action="store_true", help="attach the standard J")
    fz.add_argument("--trials", type=int, default=100)
    fz.add_argument("--samples", type=int, default=100)
    fz.add_argument("--out", help="summary file (stdout when omitted)")
    _common(fz)
    fz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return USAGE_ERROR
        raise
    except IsocurvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
