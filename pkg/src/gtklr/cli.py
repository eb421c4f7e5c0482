"""Command line front end: ``gtklr <command> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error (or a failed
verification), 3 resource or budget error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .characters import DEFAULT_STRAND_LIMIT, block_to_json, character_to_json, simple_characters
from .errors import DomainError, GTKError, ResourceError, StructuralError
from .gtmod import (
    CRITICAL,
    BlockSpec,
    block_table,
    canonical_class,
    canonical_form,
    coset_vector,
    parse_pattern,
    product_multiplicity,
    semi_pattern_support,
    verma_word,
    weight_to_word,
    weight_to_words_by_coset,
)
from .words import (
    count_red_good,
    enumerate_red_good,
    enumerate_words,
    format_word,
    gl_vector,
    multinomial,
    parse_vector,
    parse_word,
)
from . import verify as verify_mod

LARGE_TABLE_WORDS = 5000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_block_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--gl", type=int, metavar="N", help="the block (1, 2, ..., N) of gl_N")
    g.add_argument("--dim", metavar="V", help="dimension vector, e.g. 1,2,1,1")


def _vector(args) -> tuple:
    if args.gl is not None:
        if args.gl < 1:
            raise DomainError("--gl needs N >= 1")
        return gl_vector(args.gl)
    return parse_vector(args.dim)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gtklr", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes for standard characters (default: $GTK_THREADS, else all cores)")
    parser.add_argument("--strand-limit", type=int, default=DEFAULT_STRAND_LIMIT)
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="number of red-good words (simple modules)")
    _add_block_args(p)

    p = sub.add_parser("enumerate", help="list red-good words, or all words with --all")
    _add_block_args(p)
    p.add_argument("--all", action="store_true", help="every word of the content, not just red-good")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("characters", help="graded simple characters as JSON")
    _add_block_args(p)
    p.add_argument("--word", help="only the simple with this good word")

    p = sub.add_parser("table", help="decorated multiplicity table")
    _add_block_args(p)
    p.add_argument("--singular", metavar="C", help="composition of the red letters, e.g. 1,2")
    p.add_argument("--format", choices=["csv", "md", "json"], default="csv")
    p.add_argument("--graded", action="store_true", help="Laurent polynomials instead of q=1 values")
    p.add_argument("--reduced", action="store_true",
                   help="drop rows with an adjacent pair (a, b), a - b >= 2")
    p.add_argument("--confirm-large", action="store_true",
                   help=f"allow tables with more than {LARGE_TABLE_WORDS} rows")

    p = sub.add_parser("canonical", help="red-good word of the canonical module of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--class", dest="dump_class", action="store_true",
                   help="print the whole move-equivalence class")

    p = sub.add_parser("classify-weight", help="word (or words per coset) of a GT weight")
    p.add_argument("--pattern", required=True, help='rows from n down to 1, e.g. "0,1,2;0,1;0"')

    p = sub.add_parser("product", help="weight multiplicity in a non-integral block")
    p.add_argument("--cosets", required=True, help='dimension vectors, e.g. "1,2,1,1|0,0,2,3"')
    p.add_argument("--words", required=True, help='one word per coset, e.g. "43221|33444"')
    p.add_argument("--simples", required=True, help="one good word per coset")

    p = sub.add_parser("verma", help="good word of a Verma module, optionally its semi-pattern words")
    p.add_argument("--sigma", required=True, help="permutation, e.g. 1,2,3")
    p.add_argument("--chi", help="increasing top row values; with --bound lists semi-pattern words")
    p.add_argument("--bound", type=int, default=2)

    p = sub.add_parser("verify", help="built-in self checks")
    p.add_argument("--suite", choices=verify_mod.SUITES, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return parser


# --- output helpers ---------------------------------------------------------------

def _entry_text(x) -> str:
    return str(x) if isinstance(x, int) else repr(x)


def table_csv(t) -> str:
    n = t.n
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["word"] + [format_word(c, n) for c in t.columns] + ["box"])
    for k, row in enumerate(t.rows):
        box = t.boxes.get(k)
        w.writerow([format_word(row, n)] + [_entry_text(x) for x in t.entries[k]]
                   + [format_word(t.columns[box], n) if box is not None else ""])
    return buf.getvalue()


def table_markdown(t) -> str:
    n = t.n
    cols = [format_word(c, n) for c in t.columns]
    lines = ["| word | " + " | ".join(cols) + " |", "|" + "---|" * (len(cols) + 1)]
    for k, row in enumerate(t.rows):
        cells = []
        for j, x in enumerate(t.entries[k]):
            s = "" if x == 0 else _entry_text(x)
            if t.boxes.get(k) == j:
                s = f"[{s}]"
            cells.append(s)
        lines.append(f"| {format_word(row, n)} | " + " | ".join(cells) + " |")
    lines.append("| GK dim | " + " | ".join(map(str, t.gk_row)) + " |")
    if t.iws_row is not None:
        lines.append("| IWS | " + " | ".join("T" if b else "F" for b in t.iws_row) + " |")
    return "\n".join(lines) + "\n"


def table_json(t, graded: bool) -> dict:
    n = t.n
    return {
        "v": list(t.v),
        "singular": list(t.singular) if t.singular else None,
        "rows": [format_word(w, n) for w in t.rows],
        "columns": [format_word(c, n) for c in t.columns],
        "entries": [[x.to_json() if graded else x for x in row] for row in t.entries],
        "box": [t.boxes.get(k) for k in range(len(t.rows))],
        "gk": t.gk_row,
        "iws": t.iws_row,
    }


def _progress(stage, done, total):
    if stage == "peel" and (done == total or done % 25 == 0):
        print(f"\rpeeling {done}/{total}", end="\n" if done == total else "", file=sys.stderr)


# --- commands ----------------------------------------------------------------------

def _cmd_count(args):
    return f"{count_red_good(_vector(args))}\n"


def _cmd_enumerate(args):
    v = _vector(args)
    words = enumerate_words(v) if args.all else enumerate_red_good(v)
    texts = [format_word(w, len(v)) for w in words]
    return json.dumps(texts) + "\n" if args.json else "".join(t + "\n" for t in texts)


def _cmd_characters(args):
    v = _vector(args)
    block = simple_characters(v, strand_limit=args.strand_limit, threads=args.threads)
    if args.word:
        good = parse_word(args.word, len(v))
        if good not in block.index:
            raise DomainError(f"{args.word} is not a red-good word for {v}")
        s = block.simple(good)
        out = {"v": list(v), "good": format_word(good, len(v)), "kappa": s.kappa.to_json(),
               "char": character_to_json(s.character, len(v)),
               "std": character_to_json(s.std_character, len(v))}
    else:
        out = block_to_json(block)
    return json.dumps(out, indent=1) + "\n"


def _cmd_table(args):
    v = _vector(args)
    singular = parse_vector(args.singular) if args.singular else None
    if multinomial(v) > LARGE_TABLE_WORDS and not args.confirm_large:
        raise ResourceError(f"the table for {v} is large; pass --confirm-large to build it")
    block = simple_characters(v, strand_limit=args.strand_limit, threads=args.threads,
                              progress=_progress if args.confirm_large else None)
    t = block_table(BlockSpec(v, singular), reduced=args.reduced, graded=args.graded,
                    block=block, strand_limit=args.strand_limit)
    if args.format == "csv":
        return table_csv(t)
    if args.format == "md":
        return table_markdown(t)
    return json.dumps(table_json(t, args.graded)) + "\n"


def _cmd_canonical(args):
    n = args.rank
    word = parse_word(args.word, n)
    # answer in the style the word was given in
    fmt = (lambda w: ",".join(map(str, w))) if "," in args.word else (lambda w: format_word(w, n))
    if args.dump_class:
        return "".join(fmt(w) + "\n" for w in sorted(canonical_class(word, n), reverse=True))
    return fmt(canonical_form(word, n)) + "\n"


def _cmd_classify(args):
    p = parse_pattern(args.pattern)
    n = p.n
    if p.is_integral():
        w = weight_to_word(p)
        return "critical\n" if w is CRITICAL else format_word(w, n) + "\n"
    by = weight_to_words_by_coset(p)
    if by is CRITICAL:
        return "critical\n"
    return "".join(f"{res}\t{format_word(w, n)}\t{','.join(map(str, coset_vector(w, n)))}\n"
                   for res, w in by.items())


def _cmd_product(args):
    cosets = [parse_vector(c) for c in args.cosets.split("|")]
    words = [parse_word(w) for w in args.words.split("|")]
    simples = [parse_word(s) for s in args.simples.split("|")]
    return f"{product_multiplicity(cosets, words, simples, args.strand_limit)}\n"


def _cmd_verma(args):
    sigma = [int(x) for x in args.sigma.split(",")]
    n = len(sigma)
    out = format_word(verma_word(sigma, n), n) + "\n"
    if args.chi:
        chi = [int(x) for x in args.chi.split(",")]
        if len(chi) != n:
            raise DomainError("--chi needs one value per letter")
        for w in sorted(semi_pattern_support(sigma, chi, args.bound), reverse=True):
            out += format_word(w, n) + "\n"
    return out


def _cmd_verify(args):
    results = verify_mod.run_suite(args.suite, trials=args.trials, seed=args.seed)
    if args.json:
        text = json.dumps([{"check": name, "pass": ok} for name, ok in results], indent=1) + "\n"
    else:
        text = "".join(f"{'PASS' if ok else 'FAIL'}  {name}\n" for name, ok in results)
    if not all(ok for _, ok in results):
        raise _VerifyFailed(text)
    return text


class _VerifyFailed(Exception):
    pass


COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "characters": _cmd_characters,
    "table": _cmd_table,
    "canonical": _cmd_canonical,
    "classify-weight": _cmd_classify,
    "product": _cmd_product,
    "verma": _cmd_verma,
    "verify": _cmd_verify,
}


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.threads is None and os.environ.get("GTK_THREADS"):
            args.threads = int(os.environ["GTK_THREADS"])
        if args.threads is None:
            args.threads = os.cpu_count() or 1
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        if isinstance(exc, GTKError):
            print(f"error: {exc}", file=sys.stderr)
        else:
            print(f"error: bad input: {exc}", file=sys.stderr)
        return 2
    except _VerifyFailed as exc:
        _emit(str(exc), getattr(args, "output", None))
        return 2
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except StructuralError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.output)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
