import numpy as np
import pytest

from infotweet.embeddings import (
    PAD_INDEX,
    PAD_TOKEN,
    UNK_INDEX,
    UNK_TOKEN,
    EmbeddingTable,
    load_vectors,
    oov_rate,
    restrict_to_corpus,
)
from infotweet.errors import DataError


def test_load_vectors_fixture(full_table, fixtures_dir):
    # 20 tokens in the file plus the two sentinels
    assert len(full_table) == 22
    assert full_table.dim == 6
    assert full_table.tokens[0] == PAD_TOKEN
    assert full_table.tokens[1] == UNK_TOKEN
    assert np.all(full_table.vectors[PAD_INDEX] == 0.0)

    # independent parse of the file: UNK must be the mean of all rows
    rows = []
    for line in (fixtures_dir / "mini_glove.txt").read_text().splitlines():
        parts = line.split()
        rows.append([float(c) for c in parts[1:]])
        token = parts[0]
        got = full_table.vectors[full_table.index(token)]
        assert np.array_equal(got, np.array(rows[-1]))
    mean = np.mean(np.array(rows), axis=0)
    assert np.allclose(full_table.vectors[UNK_INDEX], mean, rtol=0, atol=1e-12)


def test_index_oov_is_unk(full_table):
    assert full_table.index("definitely_absent") == UNK_INDEX
    assert "definitely_absent" not in full_table
    assert "cases" in full_table


def test_vectors_are_read_only(full_table):
    with pytest.raises(ValueError):
        full_table.vectors[2, 0] = 99.0


def test_table_rejects_bad_construction():
    with pytest.raises(ValueError, match="sentinels"):
        EmbeddingTable(["a", "b"], np.zeros((2, 3)))
    with pytest.raises(ValueError, match="PAD vector"):
        EmbeddingTable([PAD_TOKEN, UNK_TOKEN], np.ones((2, 3)))
    with pytest.raises(ValueError, match="finite"):
        EmbeddingTable(
            [PAD_TOKEN, UNK_TOKEN], np.array([[0.0, 0.0], [np.nan, 0.0]])
        )
    with pytest.raises(ValueError, match="duplicate"):
        EmbeddingTable(
            [PAD_TOKEN, UNK_TOKEN, "x", "x"], np.vstack([np.zeros(2), np.ones((3, 2))])
        )


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("tok 1.0 2.0\n", "expected 3 components, got 2"),
        ("tok 1.0 2.0 oops\n", "unparseable component"),
        ("tok 1.0 2.0 inf\n", "non-finite component"),
        ("tok 1 2 3\ntok 4 5 6\n", "duplicate token 'tok'"),
    ],
)
def test_load_vectors_rejects_malformed(tmp_path, content, fragment):
    p = tmp_path / "vec.txt"
    p.write_text(content, encoding="utf-8")
    with pytest.raises(DataError, match=fragment) as err:
        load_vectors(p, 3)
    assert "vec.txt:" in str(err.value)


def test_load_vectors_empty_file(tmp_path):
    p = tmp_path / "vec.txt"
    p.write_text("", encoding="utf-8")
    table = load_vectors(p, 4)
    assert len(table) == 2
    assert np.all(table.vectors == 0.0)


def test_restrict_to_corpus_keeps_order_and_values(full_table):
    restricted = restrict_to_corpus(full_table, {"cases", "update", "love", "nope"})
    assert restricted.tokens[:2] == [PAD_TOKEN, UNK_TOKEN]
    kept = restricted.tokens[2:]
    # original relative order: update before cases in the file order check
    assert set(kept) == {"cases", "update", "love"}
    original_order = [t for t in full_table.tokens if t in kept]
    assert kept == original_order
    for tok in kept:
        assert np.array_equal(
            restricted.vectors[restricted.index(tok)],
            full_table.vectors[full_table.index(tok)],
        )
    assert np.array_equal(restricted.vectors[UNK_INDEX], full_table.vectors[UNK_INDEX])


def test_vocab_hash_tracks_tokens(full_table):
    restricted = restrict_to_corpus(full_table, {"cases"})
    assert full_table.vocab_hash != restricted.vocab_hash
    assert len(full_table.vocab_hash) == 64
    rebuilt = EmbeddingTable(full_table.tokens, full_table.vectors.copy())
    assert rebuilt.vocab_hash == full_table.vocab_hash


def test_oov_rate(full_table):
    assert oov_rate([["cases", "zzz"], ["update"]], full_table) == pytest.approx(1 / 3)
    assert oov_rate([], full_table) == 0.0
    assert oov_rate([[]], full_table) == 0.0
