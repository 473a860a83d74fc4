"""Command line entry point.

Exit codes: 0 success or verified, 1 verification failure, 2 input or
parse error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import presfmt
from .errors import PreconditionError
from .fixtures import DEMOS
from .freegroup import Generator
from .lpres import expand, hnn_embed
from .oracles import AbelianOracle, dyadic_oracle, grigorchuk_oracle, verify_lpres
from .presfmt import ParseError
from .theorem1 import derive_lpres

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}") from None


def _load(path: str, parse):
    try:
        return parse(_read(path))
    except ParseError as exc:
        exc.path = path
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_parse(args) -> int:
    docs = _load(args.file, presfmt.parse_document)
    printers = {
        "group": presfmt.print_presentation,
        "lpres": presfmt.print_lpres,
        "certs": presfmt.print_certs,
        "map": presfmt.print_map,
    }
    sys.stdout.write("".join(printers[name](value) for name, value in docs.items()))
    return EXIT_OK


def cmd_expand(args) -> int:
    lp = _load(args.file, presfmt.parse_lpres)
    report = expand(lp, args.depth, dedup=args.dedup, jobs=args.jobs)
    _emit(presfmt.print_expansion(report), args.out)
    return EXIT_OK


def _provenance(source: str, derived) -> str:
    np = derived.normalized
    lines = [
        "# kernel of the degree map, derived from a finite presentation",
        "# input sha256: " + hashlib.sha256(source.encode("utf-8")).hexdigest(),
        f"# distinguished generator: {np.t}"
        + (" (degree -1, replaced by its inverse)" if np.flipped else " (degree +1)"),
    ]
    for new, old, d in np.substitutions:
        lines.append(f"# substitution: {old} = {new}*{np.t}^{d}")
    lines.append(f"# window bound N = {derived.certs.bound} (minimum {derived.n_min})")
    certs_text = presfmt.print_certs(derived.certs)
    lines.append("# certificates sha256: " + hashlib.sha256(certs_text.encode("utf-8")).hexdigest())
    for line in certs_text.splitlines()[2:]:
        lines.append("#   " + line)
    return "\n".join(lines) + "\n"


def cmd_derive(args) -> int:
    source = _read(args.file)
    p = _load(args.file, presfmt.parse_presentation)
    certs = _load(args.certs, presfmt.parse_certs) if args.certs else None
    derived = derive_lpres(p, Generator(args.t), certs, args.N)
    _emit(_provenance(source, derived) + presfmt.print_lpres(derived.lp), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    lp = _load(args.file, presfmt.parse_lpres)
    pull = _load(args.pullback, presfmt.parse_map) if args.pullback else None
    if args.oracle == "grigorchuk":
        oracle = grigorchuk_oracle()
    elif args.oracle == "dyadic":
        oracle = dyadic_oracle(pull.affine if pull is not None else None)
    else:
        if args.group:
            oracle = AbelianOracle(_load(args.group, presfmt.parse_presentation))
        elif pull is not None:
            raise PreconditionError("the abelian oracle needs --group when --pullback is given")
        else:
            oracle = AbelianOracle.from_lpres(lp)
    report = verify_lpres(lp, args.depth, oracle, pull, dedup=args.dedup, jobs=args.jobs, name=args.oracle)
    sys.stdout.write(report.text())
    return EXIT_OK if report.verified else EXIT_FAILED


def cmd_hnn(args) -> int:
    lp = _load(args.file, presfmt.parse_lpres)
    _emit(presfmt.print_presentation(hnn_embed(lp)), args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    files, commands = DEMOS[args.name]
    target = Path(args.dir)
    target.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (target / name).write_text(text, encoding="utf-8")
        print(f"wrote {target / name}")
    print("try:")
    for command in commands:
        print(f"  {command}")
    return EXIT_OK


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endopres",
        description="Expand, derive, verify and embed finite L-presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a document and print its canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("expand", help="expand an L-presentation to a given depth")
    p.add_argument("file")
    p.add_argument("--depth", type=_non_negative, required=True)
    p.add_argument("--dedup", choices=("exact", "cyclic"), default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("derive", help="L-presentation of the kernel of the degree map")
    p.add_argument("file")
    p.add_argument("--t", required=True, help="distinguished generator of degree +-1")
    p.add_argument("--certs", help="certificate file")
    p.add_argument("--N", type=_non_negative, help="window bound (must match the certificates)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="check expanded relators against an oracle")
    p.add_argument("file")
    p.add_argument("--oracle", choices=("grigorchuk", "dyadic", "abelian"), required=True)
    p.add_argument("--depth", type=_non_negative, required=True)
    p.add_argument("--pullback", help="map file reading words in the ambient group")
    p.add_argument("--group", help="reference presentation for the abelian oracle")
    p.add_argument("--dedup", choices=("exact", "cyclic"), default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hnn", help="finitely presented HNN extension of an ascending L-presentation")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hnn)

    p = sub.add_parser("demo", help="write a built-in example into a directory")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--dir", default=".")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{getattr(exc, 'path', '<input>')}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
