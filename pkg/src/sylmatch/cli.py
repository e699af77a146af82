"""Command-line interface.

    sylmatch analyze CORPUS... --lexicon LEX [--label NAME]... --out DIR
    sylmatch simulate --q 0.72 --words 2000000 --seed 1 --out DIR
    sylmatch lineation CORPUS --lexicon LEX --out DIR
    sylmatch lexicon validate|merge|stats ...

Exit status: 0 on success, 1 on data or I/O errors, 2 on bad configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, build_config
from .corpus import (
    Lexicon,
    SyllableSequence,
    Token,
    UnknownPolicy,
    annotate,
    expand_abbreviations,
    lint_lexicon,
    load_abbreviations,
    load_lexicon,
    merge_lexicons,
    read_sequence,
    tokenize,
    write_lexicon,
    write_sequence,
)
from .deviation import compare_q
from .errors import ConfigurationError, SylmatchError, UnknownWordError
from .lineation import BLANK_VERSE_MIX, BLANK_VERSE_Q, detect_lineation, simulate_verse
from .model import ModelPrediction, mean_word_length, moments, simulate_segmentation
from .pipeline import Analysis, analyze_sequence

log = logging.getLogger("sylmatch")

EXIT_OK, EXIT_DATA, EXIT_CONFIG = 0, 1, 2


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


class OutputSet:
    """Collects report files in memory and writes them together at the end."""

    def __init__(self):
        self.files: dict[str, str] = {}

    def add(self, name: str, text: str) -> None:
        self.files[name] = text

    def add_json(self, name: str, obj) -> None:
        self.add(name, dump_json(obj))

    def write(self, out_dir: str | Path) -> list[Path]:
        out_dir = Path(out_dir)
        written = []
        for name in sorted(self.files):
            path = out_dir / name
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.files[name], encoding="utf-8")
            written.append(path)
        return written


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------


def _prompt_resolver(token: Token, position: int) -> int | None:
    while True:
        sys.stderr.write(f"syllables in {token.surface!r} (token {position}; blank to skip): ")
        sys.stderr.flush()
        answer = sys.stdin.readline()
        if not answer or not answer.strip():
            return None
        try:
            value = int(answer)
        except ValueError:
            continue
        if value >= 1:
            return value


def _load_sequences(cfg: RunConfig) -> tuple[list[SyllableSequence], Lexicon | None]:
    """Read every input as a syllable sequence; text inputs go through the lexicon."""
    if cfg.sequences:
        return [read_sequence(p) for p in cfg.inputs], None
    if cfg.lexicon is None:
        raise ConfigurationError("text input needs --lexicon (or pass --sequences)")
    lexicon = load_lexicon(cfg.lexicon)
    abbrevs = load_abbreviations(cfg.abbreviations) if cfg.abbreviations else {}
    token_lists = []
    for path in cfg.inputs:
        tokens = tokenize(Path(path).read_text(encoding="utf-8"), abbrevs or None)
        token_lists.append(expand_abbreviations(tokens, abbrevs) if abbrevs else tokens)

    if cfg.unknown is UnknownPolicy.ERROR:
        # list every unknown, not just the first, before giving up
        missing = []
        for path, tokens in zip(cfg.inputs, token_lists):
            seq = annotate(tokens, lexicon, UnknownPolicy.LOG_SKIP)
            missing += [(path, pos, surface) for pos, surface in seq.unknown_log]
        if missing:
            for path, pos, surface in missing:
                print(f"{path}: unknown word {surface!r} at token {pos}", file=sys.stderr)
            raise UnknownWordError(missing[0][2], missing[0][1])

    seqs = []
    for tokens in token_lists:
        seq = annotate(tokens, lexicon, cfg.unknown, _prompt_resolver)
        if seq.resolved:
            lexicon = lexicon.with_entries(seq.resolved)
        seqs.append(seq)
    return seqs, lexicon


def _analysis_files(out: OutputSet, prefix: str, analysis: Analysis) -> None:
    n_max = analysis.profile.n_max
    prediction = ModelPrediction.from_distribution(analysis.lengths, n_max)
    mean, sd = moments(analysis.lengths)
    out.add(prefix + "match_table.csv", analysis.table.to_csv())
    out.add(prefix + "bigram.csv", analysis.bigram.to_csv())
    out.add(prefix + "deviation.csv", analysis.deviation.to_csv())
    dev = analysis.deviation.to_dict()
    dev["independence"] = analysis.independence.to_dict()
    out.add_json(prefix + "deviation.json", dev)
    profile = analysis.profile.to_dict()
    profile.update(
        boundary=analysis.table.boundary.value,
        k_max=analysis.table.k_max,
        mean_word_length=mean,
        word_length_sd=sd,
        model=prediction.to_dict(),
    )
    out.add_json(prefix + "profile.json", profile)


def _config_from_args(args: argparse.Namespace, names: list[str]) -> RunConfig:
    flags = {name: getattr(args, name, None) for name in names}
    return build_config(flags, getattr(args, "config", None)).validate()


_COMMON = ["lexicon", "abbreviations", "sequences", "boundary", "n_max", "k_max", "q_range",
           "unknown", "seed", "out"]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args, ["inputs", "labels"] + _COMMON)
    if not cfg.inputs:
        raise ConfigurationError("analyze needs at least one input file")
    seqs, lexicon = _load_sequences(cfg)
    labels = cfg.resolved_labels()
    out = OutputSet()

    unknowns = []
    for label, seq in sorted(zip(labels, seqs)):
        unknowns += [{"label": label, "position": p, "surface": s} for p, s in seq.unknown_log]
    out.add_json("unknowns.json", unknowns)

    combined = SyllableSequence.concatenate(seq for _, seq in sorted(zip(labels, seqs)))
    if combined.word_total == 0:
        raise SylmatchError("no words could be annotated")
    kwargs = dict(n_max=cfg.n_max, k_max=cfg.effective_k_max, bc=cfg.boundary, q_range=cfg.effective_q_range)
    _analysis_files(out, "", analyze_sequence(combined, **kwargs))

    if len(seqs) > 1:
        entries = []
        for label, seq in sorted(zip(labels, seqs)):
            if seq.word_total == 0:
                raise SylmatchError(f"input {label!r} has no annotated words")
            analysis = analyze_sequence(seq, **kwargs)
            _analysis_files(out, f"{label}/", analysis)
            entries.append((label, analysis.profile, analysis.word_total))
        comparison = compare_q(entries)
        out.add_json("comparison.json", comparison.to_dict())
        out.add("comparison.csv", comparison.to_csv())

    additions = {w: c for seq in seqs for w, c in seq.resolved.items()}
    if additions:
        out.add("lexicon_additions.tsv", "".join(f"{w}\t{additions[w]}\n" for w in sorted(additions)))

    for path in out.write(cfg.out):
        log.info("wrote %s", path)
    q = json.loads(out.files["profile.json"])["q"]
    print(f"words={combined.word_total} q={q:.6f} unknown={len(unknowns)}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args, _COMMON)
    extra = {**cfg.extra, **{k: v for k, v in vars(args).items() if v is not None}}
    q = float(extra.get("q", 0.72))
    words = extra.get("words")
    syllables = extra.get("syllables")
    verse = str(extra.get("verse", False)).lower() in ("1", "true", "yes", "on")
    if words is None and syllables is None:
        words = 2_000_000
    if verse:
        mix = _parse_mix(extra.get("line_mix")) if extra.get("line_mix") else BLANK_VERSE_MIX
        verse_q = float(extra.get("verse_q", BLANK_VERSE_Q))
        seq = simulate_verse(int(words or 0), mix, verse_q, cfg.seed)
        params = {"mode": "verse", "q": verse_q, "line_mix": {str(k): v for k, v in sorted(mix.items())}}
    else:
        seq = simulate_segmentation(
            q, int(words) if words is not None else None, cfg.seed,
            syllable_total=int(syllables) if syllables is not None else None,
        )
        params = {"mode": "segmentation", "q": q, "mean_word_length_model": 1.0 / q}

    analysis = analyze_sequence(seq, cfg.n_max, cfg.effective_k_max, cfg.boundary, cfg.effective_q_range)
    out = OutputSet()
    _analysis_files(out, "", analysis)
    mean, _ = moments(analysis.lengths)
    out.add_json("simulation.json", {
        **params,
        "seed": cfg.seed,
        "word_total": seq.word_total,
        "mean_word_length": mean,
        "fitted_q": analysis.model.q,
        "fitted_mean_word_length": mean_word_length(analysis.model),
        "profile_q": analysis.profile.q,
        "flagged": analysis.deviation.flagged(),
    })
    out.write(cfg.out)
    write_sequence(seq, Path(cfg.out) / "sequence.txt")
    print(f"words={seq.word_total} mean_word_length={mean:.6f} q={analysis.profile.q:.6f}")
    return EXIT_OK


def _parse_mix(text: str) -> dict[int, float]:
    try:
        return {int(k): float(v) for k, v in (item.split(":") for item in str(text).split(","))}
    except ValueError:
        raise ConfigurationError(f"line mix must look like 10:0.775,11:0.194, got {text!r}") from None


def cmd_lineation(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args, ["inputs"] + _COMMON)
    if len(cfg.inputs) != 1:
        raise ConfigurationError("lineation takes exactly one input")
    if cfg.n_max < 24:
        raise ConfigurationError(f"lineation needs --n-max >= 24 (two multiples of each length), got {cfg.n_max}")
    seqs, _ = _load_sequences(cfg)
    analysis = analyze_sequence(seqs[0], cfg.n_max, cfg.effective_k_max, cfg.boundary, cfg.effective_q_range)
    report = detect_lineation(analysis.deviation)
    out = OutputSet()
    out.add_json("lineation.json", {**report.to_dict(), "word_total": analysis.word_total})
    out.add("lineation.csv", report.to_csv())
    out.add("deviation.csv", analysis.deviation.to_csv())
    out.add_json("unknowns.json", seqs[0].unknown_report())
    out.write(cfg.out)
    core = report.core_length if report.core_length is not None else "-"
    print(f"verdict={report.verdict} core_length={core}")
    return EXIT_OK


def cmd_lexicon(args: argparse.Namespace) -> int:
    if args.action == "validate":
        problems = lint_lexicon(args.files[0])
        for problem in problems:
            print(problem, file=sys.stderr)
        if problems:
            return EXIT_DATA
        print(f"ok: {load_lexicon(args.files[0]).entry_count} entries")
        return EXIT_OK

    if args.action == "merge":
        if len(args.files) < 2 or not args.output:
            raise ConfigurationError("merge needs two or more lexicons and --output FILE")
        merged = load_lexicon(args.files[0])
        conflicts = []
        for path in args.files[1:]:
            merged, found = merge_lexicons(merged, load_lexicon(path))
            conflicts += found
        if conflicts:
            for word, a, b in conflicts:
                print(f"conflict: {word!r}: {a} vs {b}", file=sys.stderr)
            return EXIT_DATA
        write_lexicon(merged, args.output)
        print(f"merged: {merged.entry_count} entries")
        return EXIT_OK

    if args.action == "stats":
        lexicon = load_lexicon(args.files[0])
        hist = lexicon.length_histogram()
        total = lexicon.entry_count
        stats = {
            "entry_count": total,
            "histogram": {str(n): c for n, c in hist.items()},
            "probabilities": {str(n): c / total for n, c in hist.items()} if total else {},
        }
        text = dump_json(stats)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        sys.stdout.write(text)
        return EXIT_OK
    raise ConfigurationError(f"unknown lexicon action {args.action!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common_options(p: argparse.ArgumentParser) -> None:
    # defaults are None so config-file values can fill the gaps
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--lexicon", help="syllable lexicon (TSV wordform<TAB>count)")
    p.add_argument("--abbreviations", help="abbreviation expansion table (TSV)")
    p.add_argument("--sequences", action="store_true", default=None,
                   help="inputs are whitespace-separated syllable counts, not text")
    p.add_argument("--boundary", choices=["periodic", "dirichlet"])
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--q-range", dest="q_range", metavar="A..B")
    p.add_argument("--unknown", choices=["error", "log-skip", "interactive"])
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sylmatch", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="match tables, frequencies, deviations, bigrams")
    p.add_argument("inputs", nargs="*", default=None)
    p.add_argument("--label", dest="labels", action="append", help="label for each input, in order")
    _common_options(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="random segmentation (or synthetic verse) plus analysis")
    p.add_argument("--q", type=float, help="word-end probability per syllable (default 0.72)")
    size = p.add_mutually_exclusive_group()
    size.add_argument("--words", type=int, help="number of words (default 2,000,000)")
    size.add_argument("--syllables", type=int, help="number of syllables instead of words")
    p.add_argument("--verse", action="store_true", default=None, help="generate lineated verse")
    p.add_argument("--line-mix", dest="line_mix", help="verse line lengths, e.g. 10:0.775,11:0.194,12:0.023")
    p.add_argument("--verse-q", dest="verse_q", type=float, help="word-end probability inside verse lines")
    _common_options(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lineation", help="test a text for isometric lineation")
    p.add_argument("inputs", nargs="*", default=None)
    _common_options(p)
    p.set_defaults(func=cmd_lineation)

    p = sub.add_parser("lexicon", help="validate, merge, or summarize lexicon files")
    p.add_argument("action", choices=["validate", "merge", "stats"])
    p.add_argument("files", nargs="+")
    p.add_argument("--output", "-o", help="merge: output TSV; stats: JSON file")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_lexicon)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "inputs", None) == []:
        args.inputs = None
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SylmatchError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
