from veritas.baselines.preprocess import Preprocessor, preprocess
from veritas.datafiles import load_lemma_table, load_stopwords


def test_hand_trace_with_shipped_tables():
    pre = Preprocessor()
    assert pre("The cats are running!") == ["cat", "run"]


def test_all_tokens_filtered():
    pre = Preprocessor()
    assert pre("123 %% ^^") == []


def test_all_stopwords():
    pre = Preprocessor()
    assert pre("the a an") == []


def test_order_preserved():
    stopwords = frozenset({"the"})
    lemmas = {"dogs": "dog", "cats": "cat"}
    assert preprocess("cats chase the dogs", stopwords, lemmas) == [
        "cat",
        "chase",
        "dog",
    ]


def test_unknown_tokens_pass_through():
    assert preprocess("zyx frobnicates", frozenset(), {}) == ["zyx", "frobnicates"]


def test_mixed_alphanumeric_tokens_dropped():
    assert preprocess("covid19 2023 summit", frozenset(), {}) == ["summit"]


def test_case_folding_before_lookup():
    pre = Preprocessor()
    assert pre("CATS Running") == ["cat", "run"]


def test_stopword_list_has_exactly_150_entries():
    assert len(load_stopwords()) == 150


def test_lemma_table_loads_and_maps():
    table = load_lemma_table()
    assert table["cats"] == "cat"
    assert table["running"] == "run"
    assert len(table) > 200
