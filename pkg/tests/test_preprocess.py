import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perturbe.errors import DataError
from perturbe.preprocess import (
    StandardizationMap,
    destandardize,
    detokenize,
    filter_stopwords,
    load_patterns,
    load_stopwords,
    standardize,
    tokenize,
)


class TestTokenize:
    def test_imperative_intent_with_period(self):
        t = tokenize("Store the shellcode pointer in the ESI register.")
        assert t.tokens == [
            "Store", "the", "shellcode", "pointer", "in", "the", "ESI", "register", ".",
        ]

    def test_hex_literal_kept_whole(self):
        assert tokenize("copy 0x4 into the BL register").tokens == [
            "copy", "0x4", "into", "the", "BL", "register",
        ]

    def test_bracketed_operand_kept_whole(self):
        assert tokenize("mov cl, byte [esi]").tokens == ["mov", "cl", ",", "byte", "[esi]"]

    def test_underscore_identifier_kept_whole(self):
        assert tokenize("jump to _start_label now").tokens == [
            "jump", "to", "_start_label", "now",
        ]

    def test_case_preserved(self):
        assert tokenize("EAX eax Eax").tokens == ["EAX", "eax", "Eax"]

    def test_whitespace_only_gives_empty(self):
        assert tokenize("   \t ").tokens == []

    @settings(max_examples=100, deadline=None)
    @given(
        st.text(
            alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd", "Po", "Ps", "Pe")),
            min_size=1,
            max_size=60,
        )
    )
    def test_idempotent_under_join(self, text):
        once = tokenize(text).tokens
        again = tokenize(" ".join(once)).tokens
        assert once == again

    def test_idempotent_on_domain_text(self):
        for text in (
            "mov cl, byte [esi]",
            "Store the shellcode pointer in the ESI register.",
            "xor bl, 0xBB \\n jz formatting",
            "push dword 0x74652f2f onto the stack",
        ):
            once = tokenize(text).tokens
            assert tokenize(" ".join(once)).tokens == once


class TestDetokenize:
    def test_reattaches_period(self):
        tokens = tokenize("Save the pointer in the ESI register.").tokens
        assert detokenize(tokens) == "Save the pointer in the ESI register."

    def test_reattaches_comma(self):
        assert detokenize(["mov", "cl", ",", "byte", "[esi]"]) == "mov cl, byte [esi]"


class TestStopwords:
    def test_shipped_list_has_paper_examples(self, stopwords):
        assert {"the", "each", "onto"} <= stopwords

    def test_filtering(self):
        t = tokenize("push eax onto the stack")
        filtered, removed = filter_stopwords(t, {"onto", "the"})
        assert filtered.tokens == ["push", "eax", "stack"]
        assert removed == ["onto", "the"]

    def test_empty_stoplist_is_identity(self):
        t = tokenize("push eax onto the stack")
        filtered, removed = filter_stopwords(t, set())
        assert filtered.tokens == t.tokens and removed == []

    def test_all_stopwords_warns(self, caplog):
        t = tokenize("the each onto")
        with caplog.at_level("WARNING"):
            filtered, _ = filter_stopwords(t, {"the", "each", "onto"})
        assert filtered.tokens == []
        assert any("stopwords" in r.message for r in caplog.records)

    def test_case_insensitive(self):
        filtered, _ = filter_stopwords(tokenize("The stack"), {"the"})
        assert filtered.tokens == ["stack"]

    def test_order_preserved(self):
        t = tokenize("a b c d e")
        filtered, _ = filter_stopwords(t, {"b", "d"})
        assert filtered.tokens == ["a", "c", "e"]

    def test_custom_file(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nfoo\nBAR\n")
        assert load_stopwords(path) == {"foo", "bar"}


class TestStandardize:
    def test_label_via_trailing_name_rule(self):
        t = tokenize("jump to label formatting")
        out, mapping = standardize(t)
        assert out.tokens == ["jump", "to", "label", "var0"]
        assert mapping.entries == {0: "formatting"}

    def test_hex_pattern(self):
        out, mapping = standardize(tokenize("copy 0x4 into BL"))
        assert out.tokens == ["copy", "var0", "into", "BL"]
        assert mapping.entries == {0: "0x4"}

    def test_no_standardizable_tokens(self):
        t = tokenize("push the stack")
        out, mapping = standardize(t)
        assert out.tokens == t.tokens
        assert len(mapping) == 0

    def test_left_to_right_indices(self):
        out, mapping = standardize(tokenize("move 0x10 into [esi] at _loop"))
        assert out.tokens == ["move", "var0", "into", "var1", "at", "var2"]
        assert mapping.entries == {0: "0x10", 1: "[esi]", 2: "_loop"}

    def test_inverse_on_rewritten_tokens(self):
        t = tokenize("write 0xFF to [edi] near _exit_label")
        out, mapping = standardize(t)
        restored = destandardize(" ".join(out.tokens), mapping)
        assert restored == " ".join(t.tokens)

    def test_custom_pattern_file(self, tmp_path):
        path = tmp_path / "patterns.txt"
        path.write_text("upper=[A-Z]{4,}\n")
        patterns = load_patterns(path)
        out, mapping = standardize(tokenize("call WXYZ now"), patterns)
        assert out.tokens == ["call", "var0", "now"]
        assert mapping.entries == {0: "WXYZ"}


class TestDestandardize:
    def test_basic(self):
        assert destandardize("mov bl, var0", StandardizationMap({0: "0x4"})) == "mov bl, 0x4"

    def test_identity_without_placeholders(self):
        assert destandardize("mov bl, al", StandardizationMap({0: "x"})) == "mov bl, al"

    def test_unknown_placeholder(self):
        with pytest.raises(DataError, match="var3"):
            destandardize("push var3", StandardizationMap({0: "0x4"}))

    def test_whitespace_collapsed(self):
        out = destandardize("mov  bl ,  var0", StandardizationMap({0: "0x4"}))
        assert out == "mov bl , 0x4"

    def test_multi_digit_indices(self):
        mapping = StandardizationMap({i: f"w{i}" for i in range(12)})
        assert destandardize("var11 var1", mapping) == "w11 w1"
