"""Command-line surface for the perturbation pipeline.

Every run requires an explicit seed and writes a run manifest (config
digest, seed, output digests) so any two runs with the same config and seed
produce byte-identical output trees.

Exit codes: 0 success, 1 invalid configuration, 2 data error, 3 external
checker failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import perturbe
from perturbe import augment as augment_mod
from perturbe import corpus as corpus_mod
from perturbe import metrics as metrics_mod
from perturbe import perturb as perturb_mod
from perturbe import semgate as semgate_mod
from perturbe import vocab as vocab_mod
from perturbe._util import canonical_json, sha256_file, sha256_text
from perturbe.embedding import MeanVectorEncoder, PrecomputedEncoder, load_vectors
from perturbe.errors import CheckerError, ConfigError, DataError, PerturbeError
from perturbe.postag import FileTagger, LexiconTagger
from perturbe.preprocess import load_patterns, load_stopwords


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse's default exits with code 2
        raise ConfigError(message)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from exc


def read_config(path: str | Path) -> dict[str, str]:
    """Flat key = value lines; '#' starts a comment."""
    config: dict[str, str] = {}
    text = Path(path).read_text("utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        config[key.strip()] = value.strip()
    return config


def _write_run_manifest(
    manifest_path: Path, command: str, seed: int | None, config: dict, outputs: list[Path]
) -> None:
    base = manifest_path.parent
    manifest = {
        "command": command,
        "seed": seed,
        "config_digest": sha256_text(canonical_json({k: str(v) for k, v in config.items()})),
        "outputs": {
            str(p.relative_to(base) if p.is_relative_to(base) else p.name): sha256_file(p)
            for p in outputs
        },
    }
    manifest_path.parent.mkdir(parents=True, exist_ok=True)
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8")


def _load_tagger(args) -> LexiconTagger | FileTagger:
    lexicon = LexiconTagger(lexicon_path=getattr(args, "tag_lexicon", None))
    tag_file = getattr(args, "tags", None)
    if tag_file:
        return FileTagger(tag_file, fallback=lexicon)
    return lexicon


def _cmd_ingest(args) -> int:
    corpus = corpus_mod.load_corpus(args.infile, format=args.format)
    out = Path(args.out)
    corpus_mod.save_corpus(corpus, out, format=args.out_format)
    manifest = Path(args.manifest) if args.manifest else out.with_suffix(out.suffix + ".manifest.json")
    _write_run_manifest(manifest, "ingest", None, vars(args), [out])
    print(f"ingested {len(corpus)} samples -> {out}")
    return 0


def _cmd_split(args) -> int:
    ratios = _parse_floats(args.ratios)
    if len(ratios) != 3:
        raise ConfigError(f"--ratios needs three values, got {args.ratios!r}")
    spec = corpus_mod.SplitSpec(
        train_ratio=ratios[0], val_ratio=ratios[1], test_ratio=ratios[2], seed=args.seed
    )
    corpus = corpus_mod.load_corpus(args.infile, format=args.format)
    train, val, test = corpus_mod.split_corpus(corpus, spec)
    out_dir = Path(args.out_dir)
    outputs = []
    for name, part in (("train", train), ("val", val), ("test", test)):
        target = out_dir / f"{name}.jsonl"
        corpus_mod.save_corpus(part, target)
        outputs.append(target)
    manifest = Path(args.manifest) if args.manifest else out_dir / "run_manifest.json"
    _write_run_manifest(manifest, "split", args.seed, vars(args), outputs)
    print(f"split {len(corpus)} -> train {len(train)}, val {len(val)}, test {len(test)}")
    return 0


def _cmd_build_vocab(args) -> int:
    stoplist = load_stopwords(args.stopwords)
    corpus = corpus_mod.load_corpus(args.corpus)
    codegen = vocab_mod.count_frequencies((s.intent for s in corpus), stoplist)
    if args.comparison:
        comparison_text = Path(args.comparison).read_text("utf-8")
    else:
        from importlib import resources

        comparison_text = (
            resources.files("perturbe.data").joinpath("comparison_corpus.txt").read_text("utf-8")
        )
    comparison = vocab_mod.count_frequencies(comparison_text.splitlines(), stoplist)
    registers = vocab_mod.load_registers(args.registers)
    vocabulary = vocab_mod.build_vocabulary(
        codegen, comparison, threshold=args.threshold, registers=registers
    )
    out = Path(args.out)
    vocab_mod.save_vocabulary(vocabulary, out)
    manifest = Path(args.manifest) if args.manifest else out.with_suffix(".manifest.json")
    _write_run_manifest(manifest, "build-vocab", None, vars(args), [out])
    print(
        f"vocabulary: {len(vocabulary.structure_words)} structure words, "
        f"{len(vocabulary.name_words)} name words -> {out}"
    )
    return 0


def _cmd_perturb(args) -> int:
    kind = perturb_mod.PerturbKind(args.kind)
    corpus = corpus_mod.load_corpus(args.infile)
    vocabulary = vocab_mod.load_vocabulary(args.vocab)
    store = load_vectors(args.vectors) if args.vectors else None
    cfg = perturb_mod.SubstitutionConfig(
        ratio=args.ratio, k=args.k, tau=args.tau, seed=args.seed
    )
    stoplist = load_stopwords(args.stopwords)
    result = perturb_mod.perturb_corpus(
        corpus,
        kind,
        cfg,
        vocabulary,
        store,
        tagger=_load_tagger(args),
        stoplist=stoplist,
        workers=args.workers,
    )
    out = Path(args.out)
    perturb_mod.write_records(result.records, out)
    skips_path = out.with_suffix(out.suffix + ".skips.jsonl")
    with open(skips_path, "w", encoding="utf-8") as fh:
        for skip in result.skipped:
            fh.write(
                json.dumps(
                    {"id": skip.sample_id, "kind": skip.kind.value, "reason": skip.reason}
                )
            )
            fh.write("\n")
    manifest = Path(args.manifest) if args.manifest else out.with_suffix(out.suffix + ".manifest.json")
    _write_run_manifest(manifest, "perturb", args.seed, vars(args), [out, skips_path])
    print(f"perturbed {len(result.records)} samples ({len(result.skipped)} skipped) -> {out}")
    return 0


def _cmd_gate(args) -> int:
    records = perturb_mod.read_records(args.records)
    if args.embeddings:
        encoder = PrecomputedEncoder(args.embeddings)
    elif args.vectors:
        encoder = MeanVectorEncoder(load_vectors(args.vectors))
    else:
        raise ConfigError("gate needs --vectors (default encoder) or --embeddings")
    cfg = semgate_mod.GateConfig(threshold=args.threshold, encoder=encoder.name)
    scored = semgate_mod.score_records(records, encoder)
    passed, failed = semgate_mod.gate(scored, cfg)
    records_path = Path(args.records)
    out_passed = Path(args.out_passed) if args.out_passed else records_path.with_suffix(".passed.jsonl")
    out_failed = Path(args.out_failed) if args.out_failed else records_path.with_suffix(".failed.jsonl")
    perturb_mod.write_records(passed, out_passed)
    perturb_mod.write_records(failed, out_failed)
    outputs = [out_passed, out_failed]
    if args.sweep:
        thresholds = _parse_floats(args.sweep)
        sweep_path = Path(args.sweep_out) if args.sweep_out else records_path.with_suffix(".sweep.csv")
        semgate_mod.write_sweep_csv(scored, thresholds, sweep_path)
        outputs.append(sweep_path)
    manifest = Path(args.manifest) if args.manifest else records_path.with_suffix(".gate.manifest.json")
    _write_run_manifest(manifest, "gate", None, vars(args), outputs)
    print(f"gate at {args.threshold}: {len(passed)} passed, {len(failed)} failed")
    return 0


def _parse_plan_kind(text: str):
    try:
        return augment_mod.KindFamily(text)
    except ValueError:
        pass
    try:
        return perturb_mod.PerturbKind(text)
    except ValueError as exc:
        raise ConfigError(f"unknown perturbation kind or family {text!r}") from exc


def _cmd_augment(args) -> int:
    split = corpus_mod.load_corpus(args.split)
    records = perturb_mod.read_records(args.records)
    plan = augment_mod.AugmentPlan(
        ratio_p=args.p, kind=_parse_plan_kind(args.kind), seed=args.seed
    )
    augmented = augment_mod.augment_split(split, records, plan)
    out = Path(args.out)
    corpus_mod.save_corpus(augmented, out)
    manifest = Path(args.manifest) if args.manifest else out.with_suffix(out.suffix + ".manifest.json")
    _write_run_manifest(manifest, "augment", args.seed, vars(args), [out])
    print(f"augmented {len(augmented)} samples at p={args.p} -> {out}")
    return 0


def _cmd_matrix(args) -> int:
    config = read_config(args.config)
    for key in ("corpus", "out_dir", "seed"):
        if key not in config:
            raise ConfigError(f"matrix config missing {key!r}")
    seed = int(config["seed"])
    out_dir = Path(args.out_dir or config["out_dir"])
    workers = args.workers

    corpus = corpus_mod.load_corpus(config["corpus"], format=config.get("format", "jsonl"))
    ratios_raw = config.get("split.ratios", "0.8,0.1,0.1")
    split_ratios = _parse_floats(ratios_raw)
    if len(split_ratios) != 3:
        raise ConfigError(f"split.ratios needs three values, got {ratios_raw!r}")
    spec = corpus_mod.SplitSpec(
        train_ratio=split_ratios[0],
        val_ratio=split_ratios[1],
        test_ratio=split_ratios[2],
        seed=seed,
    )
    train, val, test = corpus_mod.split_corpus(corpus, spec)
    splits = {"train": train, "val": val, "test": test}

    stoplist = load_stopwords(config.get("stopwords"))
    codegen = vocab_mod.count_frequencies((s.intent for s in corpus), stoplist)
    if "comparison" in config:
        comparison_text = Path(config["comparison"]).read_text("utf-8")
    else:
        from importlib import resources

        comparison_text = (
            resources.files("perturbe.data").joinpath("comparison_corpus.txt").read_text("utf-8")
        )
    comparison = vocab_mod.count_frequencies(comparison_text.splitlines(), stoplist)
    registers = vocab_mod.load_registers(config.get("registers"))
    vocabulary = vocab_mod.build_vocabulary(
        codegen,
        comparison,
        threshold=float(config.get("vocab.threshold", vocab_mod.DEFAULT_RATIO_THRESHOLD)),
        registers=registers,
    )
    vocab_mod.save_vocabulary(vocabulary, out_dir / "vocab.json")

    if "vectors" not in config:
        raise ConfigError("matrix config needs a vectors file (the gate encodes with it)")
    store = load_vectors(config["vectors"])
    tagger = LexiconTagger(lexicon_path=config.get("tag_lexicon"), registers=registers)

    kinds = [augment_mod.KindFamily(k.strip()) for k in config.get("kinds", "substitution,omission").split(",")]
    aug_ratios = _parse_floats(config.get("ratios", "0,0.25,0.5,1.0"))

    kind_list: list[perturb_mod.PerturbKind] = []
    if augment_mod.KindFamily.SUBSTITUTION in kinds:
        kind_list.append(perturb_mod.PerturbKind.SUBST_CONSTRAINED)
    if augment_mod.KindFamily.OMISSION in kinds:
        kind_list.extend(
            (
                perturb_mod.PerturbKind.OMIT_ACTION,
                perturb_mod.PerturbKind.OMIT_STRUCTURE,
                perturb_mod.PerturbKind.OMIT_NAME,
            )
        )

    cfg = perturb_mod.SubstitutionConfig(
        ratio=float(config.get("subst.ratio", 0.10)),
        k=int(config["subst.k"]) if "subst.k" in config else None,
        tau=float(config.get("subst.tau", 0.8)),
        seed=seed,
    )
    gate_cfg = semgate_mod.GateConfig(threshold=float(config.get("gate.threshold", 0.80)))
    encoder = MeanVectorEncoder(store)

    records_by_split: dict[str, list[perturb_mod.PerturbationRecord]] = {}
    for split_name, part in splits.items():
        gathered: list[perturb_mod.PerturbationRecord] = []
        for kind in kind_list:
            result = perturb_mod.perturb_corpus(
                part, kind, cfg, vocabulary, store, tagger=tagger, stoplist=stoplist,
                workers=workers,
            )
            scored = semgate_mod.score_records(result.records, encoder)
            passed, _ = semgate_mod.gate(scored, gate_cfg)
            gathered.extend(passed)
        records_by_split[split_name] = gathered
        perturb_mod.write_records(gathered, out_dir / f"records_{split_name}.jsonl")

    apply_to_validation = config.get("apply_to_validation", "true").lower() != "false"
    cells, digest = augment_mod.build_matrix(
        splits,
        records_by_split,
        kinds,
        aug_ratios,
        seed,
        out_dir,
        apply_to_validation=apply_to_validation,
    )
    outputs = [out_dir / "manifest.json", out_dir / "vocab.json"]
    outputs.extend(out_dir / f"records_{name}.jsonl" for name in splits)
    manifest = Path(args.manifest) if args.manifest else out_dir / "run_manifest.json"
    _write_run_manifest(manifest, "matrix", seed, config, outputs)
    print(f"matrix: {len(cells)} cells -> {out_dir} (digest {digest[:12]}...)")
    return 0


def _cmd_evaluate(args) -> int:
    preds = metrics_mod.load_predictions(args.preds, model_name=args.model)
    references = corpus_mod.load_corpus(args.refs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result: dict = {"model": args.model, "n": len(preds.entries)}

    if args.checker or args.auto_checker:
        if args.checker:
            scaffold = metrics_mod.GAS_SCAFFOLD if args.scaffold == "gas" else metrics_mod.NASM_SCAFFOLD
            checker = metrics_mod.CheckerConfig(
                template=args.checker, scaffold=scaffold, timeout=args.timeout, workers=args.workers
            )
        else:
            checker = metrics_mod.detect_checker(timeout=args.timeout, workers=args.workers)
            if checker is None:
                raise CheckerError("no x86 assembler found for --auto-checker")
        syn_report = metrics_mod.syntactic_accuracy(preds, checker)
        result["syn"] = syn_report.accuracy
        result["syn_cohorts"] = metrics_mod.cohort_breakdown(syn_report.verdicts, references)
        with open(out_dir / "syn_verdicts.jsonl", "w", encoding="utf-8") as fh:
            for sid in sorted(syn_report.verdicts):
                fh.write(
                    json.dumps(
                        {
                            "id": sid,
                            "ok": syn_report.verdicts[sid],
                            "diagnostic": syn_report.diagnostics.get(sid, ""),
                        }
                    )
                    + "\n"
                )

    if args.labels:
        labels = metrics_mod.load_labels(args.labels)
    else:
        labels = metrics_mod.exact_match_labels(preds, references)
        metrics_mod.save_labels(labels, out_dir / "exact_match_labels.jsonl")
    result["sem"] = metrics_mod.semantic_accuracy(labels)
    result["sem_provenance"] = labels.provenance
    result["sem_cohorts"] = metrics_mod.cohort_breakdown(labels.entries, references)

    if args.labels_before:
        before = metrics_mod.load_labels(args.labels_before)
        rob = metrics_mod.robust_accuracy(metrics_mod.RobInput(before=before, after=labels))
        result["rob"] = rob if rob is not None else "undefined"

    metrics_path = out_dir / "metrics.json"
    metrics_path.write_text(json.dumps(result, indent=2, sort_keys=True) + "\n", "utf-8")
    manifest = Path(args.manifest) if args.manifest else out_dir / "run_manifest.json"
    _write_run_manifest(manifest, "evaluate", None, vars(args), [metrics_path])
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


def _cmd_report(args) -> int:
    cells = []
    for path in args.metrics:
        payload = json.loads(Path(path).read_text("utf-8"))
        rob = payload.get("rob")
        cells.append(
            metrics_mod.CellMetrics(
                model_name=payload.get("model", ""),
                kind=payload.get("kind", "-"),
                train_p=float(payload.get("train_p", 0.0)),
                test_p=float(payload.get("test_p", 0.0)),
                syn=payload.get("syn"),
                sem=payload.get("sem"),
                rob=None if rob in (None, "undefined") else float(rob),
                cohorts=payload.get("sem_cohorts", {}),
            )
        )
    csv_path, summary_path = metrics_mod.report(cells, args.out_dir)
    manifest = Path(args.manifest) if args.manifest else Path(args.out_dir) / "run_manifest.json"
    _write_run_manifest(manifest, "report", None, vars(args), [csv_path, summary_path])
    print(f"report -> {csv_path}, {summary_path}")
    return 0


def _cmd_stats(args) -> int:
    corpus = corpus_mod.load_corpus(args.corpus)
    stoplist = load_stopwords(args.stopwords)
    table = vocab_mod.count_frequencies((s.intent for s in corpus), stoplist)
    result: dict = {
        "samples": len(corpus),
        "unique_tokens": table.unique_count,
        "multi_line": sum(1 for s in corpus if s.multi_line),
    }
    if args.vocab:
        vocabulary = vocab_mod.load_vocabulary(args.vocab)
        tagger = LexiconTagger()
        rates = metrics_mod.omission_rate_stats(corpus, vocabulary, tagger)
        result["omission_rates"] = {cat.value: rate for cat, rate in rates.items()}
    if args.against:
        other = corpus_mod.load_corpus(args.against)
        result["jsd"] = metrics_mod.jsd(corpus, other, stoplist)
    if args.variants:
        variants = [corpus] + [corpus_mod.load_corpus(p) for p in args.variants]
        result["vocab_growth"] = augment_mod.vocab_growth(variants, stoplist)
    print(json.dumps(result, indent=2, sort_keys=True))
    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(result, indent=2, sort_keys=True) + "\n", "utf-8")
        manifest = Path(args.manifest) if args.manifest else out.with_suffix(".manifest.json")
        _write_run_manifest(manifest, "stats", None, vars(args), [out])
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="perturbe", description=__doc__)
    parser.add_argument("--version", action="version", version=f"perturbe {perturbe.__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and normalize a dataset")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", required=True)
    p.add_argument("--out-format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("split", help="seeded train/val/test split")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--ratios", default="0.8,0.1,0.1")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("build-vocab", help="mine the protected vocabulary")
    p.add_argument("--corpus", required=True)
    p.add_argument("--comparison", help="plain-text comparison corpus (default: shipped)")
    p.add_argument("--threshold", type=float, default=vocab_mod.DEFAULT_RATIO_THRESHOLD)
    p.add_argument("--stopwords")
    p.add_argument("--registers")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_build_vocab)

    p = sub.add_parser("perturb", help="generate perturbation records")
    p.add_argument("--kind", required=True, choices=[k.value for k in perturb_mod.PerturbKind])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--vectors", help="word-vector file (required for substitution kinds)")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--ratio", type=float, default=0.10)
    p.add_argument("--k", type=int)
    p.add_argument("--tau", type=float, default=0.8)
    p.add_argument("--stopwords")
    p.add_argument("--tag-lexicon", dest="tag_lexicon")
    p.add_argument("--tags", help="external tag override file (JSONL id/tags)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("gate", help="score and filter records by similarity")
    p.add_argument("--records", required=True)
    p.add_argument("--vectors")
    p.add_argument("--embeddings", help="precomputed sentence-embedding JSONL")
    p.add_argument("--threshold", type=float, default=semgate_mod.DEFAULT_THRESHOLD)
    p.add_argument("--sweep", help="comma-separated thresholds for the sweep CSV")
    p.add_argument("--out-passed")
    p.add_argument("--out-failed")
    p.add_argument("--sweep-out")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_gate)

    p = sub.add_parser("augment", help="size-preserving training-set augmentation")
    p.add_argument("--split", required=True)
    p.add_argument("--records", required=True, help="gate-passing records")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--kind", required=True, help="kind or family (substitution/omission)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("matrix", help="materialize the full experiment matrix")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("evaluate", help="compute SYN/SEM/ROB for predictions")
    p.add_argument("--preds", required=True)
    p.add_argument("--refs", required=True)
    p.add_argument("--model", default="")
    p.add_argument("--labels", help="semantic labels (JSONL id/correct)")
    p.add_argument("--labels-before", dest="labels_before", help="baseline labels for ROB")
    p.add_argument("--checker", help='checker template, e.g. "nasm -f elf32 {file} -o /dev/null"')
    p.add_argument("--auto-checker", action="store_true", help="detect an installed assembler")
    p.add_argument("--scaffold", choices=("nasm", "gas"), default="nasm")
    p.add_argument("--timeout", type=float, default=metrics_mod.DEFAULT_CHECK_TIMEOUT)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("report", help="aggregate metrics files into CSV + summary")
    p.add_argument("--metrics", nargs="+", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("stats", help="corpus statistics (tokens, omission rates, JSD)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vocab")
    p.add_argument("--against", help="second corpus for JSD")
    p.add_argument("--variants", nargs="*", help="corpora for vocabulary-growth counts")
    p.add_argument("--stopwords")
    p.add_argument("--out")
    p.add_argument("--manifest")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except CheckerError as exc:
        print(f"checker error: {exc}", file=sys.stderr)
        return 3
    except PerturbeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
