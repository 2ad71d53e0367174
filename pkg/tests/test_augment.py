import pytest

from perturbe.augment import AugmentPlan, KindFamily, augment_split, build_matrix, vocab_growth
from perturbe.corpus import Corpus, Sample
from perturbe.errors import DataError
from perturbe.perturb import GATE_PASS, PerturbationRecord, PerturbKind


def make_corpus(n):
    return Corpus(
        [Sample(f"s{i:04d}", f"move the value {i} now", f"mov eax, {i}") for i in range(n)],
        name="synthetic",
    )


def passing_record(sample_id, kind=PerturbKind.SUBST_CONSTRAINED, suffix="swapped"):
    return PerturbationRecord(
        sample_id=sample_id,
        kind=kind,
        original_intent="ignored original",
        perturbed_intent=f"perturbed intent {suffix} {sample_id}",
        changed_positions=[0],
        similarity=0.95,
        gate_pass=GATE_PASS,
    )


def full_coverage(corpus, kind=PerturbKind.SUBST_CONSTRAINED):
    return [passing_record(s.id, kind) for s in corpus]


class TestAugmentSplit:
    def test_exact_replacement_count(self):
        corpus = make_corpus(100)
        records = full_coverage(corpus)
        plan = AugmentPlan(ratio_p=0.5, kind=KindFamily.SUBSTITUTION, seed=3)
        out = augment_split(corpus, records, plan)
        changed = sum(1 for a, b in zip(corpus, out) if a.intent != b.intent)
        assert changed == 50
        assert len(out) == 100

    def test_p_zero_is_identity(self):
        corpus = make_corpus(10)
        out = augment_split(corpus, [], AugmentPlan(ratio_p=0.0, kind=KindFamily.OMISSION, seed=1))
        assert [s.intent for s in out] == [s.intent for s in corpus]
        assert [s.id for s in out] == [s.id for s in corpus]

    def test_p_one_replaces_everything(self):
        corpus = make_corpus(20)
        records = full_coverage(corpus)
        out = augment_split(corpus, records, AugmentPlan(ratio_p=1.0, kind=KindFamily.SUBSTITUTION, seed=1))
        assert all(a.intent != b.intent for a, b in zip(corpus, out))

    def test_snippets_never_touched(self):
        corpus = make_corpus(50)
        records = full_coverage(corpus)
        out = augment_split(corpus, records, AugmentPlan(ratio_p=1.0, kind=KindFamily.SUBSTITUTION, seed=2))
        assert [s.snippet for s in out] == [s.snippet for s in corpus]

    def test_rounding_half_away(self):
        corpus = make_corpus(10)
        records = full_coverage(corpus)
        plan = AugmentPlan(ratio_p=0.25, kind=KindFamily.SUBSTITUTION, seed=1)
        out = augment_split(corpus, records, plan)
        changed = sum(1 for a, b in zip(corpus, out) if a.intent != b.intent)
        assert changed == 3  # round(2.5) away from zero

    def test_insufficient_coverage_names_shortfall(self):
        corpus = make_corpus(10)
        records = [passing_record(s.id) for s in corpus.samples[:3]]
        plan = AugmentPlan(ratio_p=0.8, kind=KindFamily.SUBSTITUTION, seed=1)
        with pytest.raises(DataError, match="short by 5"):
            augment_split(corpus, records, plan)

    def test_non_passing_record_rejected(self):
        corpus = make_corpus(2)
        record = passing_record("s0000")
        record.gate_pass = "fail"
        with pytest.raises(DataError, match="gate"):
            augment_split(corpus, [record], AugmentPlan(ratio_p=0.5, kind=KindFamily.SUBSTITUTION, seed=1))

    def test_deterministic_choice(self):
        corpus = make_corpus(40)
        records = full_coverage(corpus)
        plan = AugmentPlan(ratio_p=0.5, kind=KindFamily.SUBSTITUTION, seed=77)
        first = augment_split(corpus, records, plan)
        second = augment_split(corpus, records, plan)
        assert [s.intent for s in first] == [s.intent for s in second]

    def test_omission_category_drawn_among_available(self):
        corpus = make_corpus(30)
        records = []
        for sample in corpus:
            records.append(passing_record(sample.id, PerturbKind.OMIT_ACTION, "action"))
            records.append(passing_record(sample.id, PerturbKind.OMIT_NAME, "name"))
        plan = AugmentPlan(ratio_p=1.0, kind=KindFamily.OMISSION, seed=5)
        out = augment_split(corpus, records, plan)
        kinds_used = {s.intent.split()[2] for s in out}
        assert kinds_used == {"action", "name"}  # both categories appear

    def test_specific_kind_plan(self):
        corpus = make_corpus(10)
        records = full_coverage(corpus, PerturbKind.OMIT_NAME) + full_coverage(
            corpus, PerturbKind.OMIT_ACTION
        )
        plan = AugmentPlan(ratio_p=1.0, kind=PerturbKind.OMIT_NAME, seed=1)
        out = augment_split(corpus, [r for r in records if r.kind is PerturbKind.OMIT_NAME], plan)
        assert len(out) == 10


class TestVocabGrowth:
    def test_monotone_on_synthetic(self):
        base = make_corpus(30)
        records = [
            passing_record(s.id, suffix=f"brandnewword{i}") for i, s in enumerate(base)
        ]
        variants = [base]
        for p in (0.25, 0.5, 1.0):
            plan = AugmentPlan(ratio_p=p, kind=KindFamily.SUBSTITUTION, seed=4)
            variants.append(augment_split(base, records, plan))
        counts = vocab_growth(variants, stoplist=set())
        assert counts == sorted(counts)

    def test_equal_for_identical(self):
        base = make_corpus(10)
        counts = vocab_growth([base, base], stoplist=set())
        assert counts[0] == counts[1]

    def test_set_union_oracle(self):
        base = make_corpus(20)
        records = [passing_record(s.id, suffix=f"neww{i}") for i, s in enumerate(base)]
        plan = AugmentPlan(ratio_p=0.5, kind=KindFamily.SUBSTITUTION, seed=9)
        augmented = augment_split(base, records, plan)
        from perturbe.preprocess import tokenize

        def unique(corpus):
            seen = set()
            for sample in corpus:
                seen.update(tokenize(sample.intent).tokens)
            return len(seen)

        assert vocab_growth([base, augmented], stoplist=set()) == [unique(base), unique(augmented)]
        # each substitution introduces at most one new word per replaced sample
        assert unique(augmented) <= unique(base) + 10 * 4


class TestBuildMatrix:
    def _inputs(self, n=40):
        corpus = make_corpus(n)
        train = Corpus(corpus.samples[: n - 10], name="train")
        val = Corpus(corpus.samples[n - 10 : n - 5], name="val")
        test = Corpus(corpus.samples[n - 5 :], name="test")
        splits = {"train": train, "val": val, "test": test}
        records = {
            name: full_coverage(split) + full_coverage(split, PerturbKind.OMIT_ACTION)
            for name, split in splits.items()
        }
        return splits, records

    def test_cell_inventory(self, tmp_path):
        splits, records = self._inputs()
        kinds = [KindFamily.SUBSTITUTION, KindFamily.OMISSION]
        ratios = [0.0, 0.25, 0.5, 1.0]
        cells, digest = build_matrix(splits, records, kinds, ratios, 7, tmp_path)
        ids = [c.cell_id for c in cells]
        assert len(ids) == 1 + 2 * (4 + 1)  # baseline + per kind: 4 test-perturbed + RQ3
        assert "none_train000_test000" in ids
        assert "substitution_train050_test000" in ids
        assert "omission_train100_test100" in ids

    def test_ratios_zero_only_gives_baseline_cells(self, tmp_path):
        splits, records = self._inputs()
        cells, _ = build_matrix(
            splits, records, [KindFamily.SUBSTITUTION], [0.0], 7, tmp_path
        )
        assert [c.cell_id for c in cells] == [
            "none_train000_test000",
            "substitution_train000_test100",
        ]

    def test_rerun_same_digest(self, tmp_path):
        splits, records = self._inputs()
        kinds = [KindFamily.SUBSTITUTION]
        _, digest_a = build_matrix(splits, records, kinds, [0.0, 0.5], 7, tmp_path / "a")
        _, digest_b = build_matrix(splits, records, kinds, [0.0, 0.5], 7, tmp_path / "b")
        assert digest_a == digest_b

    def test_different_seed_different_digest(self, tmp_path):
        splits, records = self._inputs()
        kinds = [KindFamily.SUBSTITUTION]
        _, digest_a = build_matrix(splits, records, kinds, [0.5], 7, tmp_path / "a")
        _, digest_b = build_matrix(splits, records, kinds, [0.5], 8, tmp_path / "b")
        assert digest_a != digest_b

    def test_materialized_files_exist(self, tmp_path):
        splits, records = self._inputs()
        cells, _ = build_matrix(splits, records, [KindFamily.OMISSION], [0.0, 1.0], 3, tmp_path)
        for cell in cells:
            for split_name, rel in cell.paths.items():
                assert (tmp_path / rel).exists()
        assert (tmp_path / "manifest.json").exists()
