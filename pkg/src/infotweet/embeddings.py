"""Pre-trained word vectors and the task vocabulary.

The file format is the standard published text format: one token per line
followed by ``dim`` whitespace-separated decimal components.  Two indices
are reserved: PAD (0, all-zero vector, pinned) and UNK (1, the mean of all
loaded vectors).
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .errors import DataError

PAD_INDEX = 0
UNK_INDEX = 1
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"


class EmbeddingTable:
    """Immutable token -> index map plus the dense vector matrix.

    ``tokens[0]`` and ``tokens[1]`` are always the PAD and UNK sentinels;
    indices are dense in ``[0, len(table))``.
    """

    def __init__(self, tokens: list[str], vectors: np.ndarray):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(tokens):
            raise ValueError("vectors must be (len(tokens), dim)")
        if len(tokens) < 2 or tokens[0] != PAD_TOKEN or tokens[1] != UNK_TOKEN:
            raise ValueError("tokens must start with the PAD and UNK sentinels")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("vectors must be finite")
        if np.any(vectors[PAD_INDEX] != 0.0):
            raise ValueError("PAD vector must be exactly zero")
        self._tokens = list(tokens)
        self._index = {tok: i for i, tok in enumerate(tokens)}
        if len(self._index) != len(tokens):
            raise ValueError("duplicate tokens in vocabulary")
        self._vectors = vectors
        self._vectors.setflags(write=False)

    def __len__(self) -> int:
        return len(self._tokens)

    @property
    def dim(self) -> int:
        return self._vectors.shape[1]

    @property
    def tokens(self) -> list[str]:
        return list(self._tokens)

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def index(self, token: str) -> int:
        """Index of ``token``, or UNK for out-of-vocabulary tokens."""
        return self._index.get(token, UNK_INDEX)

    def vector(self, index: int) -> np.ndarray:
        return self._vectors[index]

    @property
    def vocab_hash(self) -> str:
        """sha256 over the token list; identifies the vocabulary exactly."""
        digest = hashlib.sha256("\n".join(self._tokens).encode("utf-8"))
        return digest.hexdigest()


def load_vectors(path: str | Path, dim: int) -> EmbeddingTable:
    """Load a word-vector text file into an EmbeddingTable.

    Every line must have exactly ``dim`` finite components after the token;
    violations raise DataError with the line number.  UNK is initialized to
    the mean of all loaded vectors.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    tokens: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            parts = raw.split()
            if not parts:
                continue
            token, comps = parts[0], parts[1:]
            if len(comps) != dim:
                raise DataError(
                    f"{path.name}:{lineno}: expected {dim} components, got {len(comps)}"
                )
            try:
                vec = np.array([float(c) for c in comps], dtype=np.float64)
            except ValueError:
                raise DataError(f"{path.name}:{lineno}: unparseable component") from None
            if not np.all(np.isfinite(vec)):
                raise DataError(f"{path.name}:{lineno}: non-finite component")
            if token in seen:
                raise DataError(f"{path.name}:{lineno}: duplicate token {token!r}")
            seen.add(token)
            tokens.append(token)
            rows.append(vec)
    pad = np.zeros(dim, dtype=np.float64)
    unk = np.mean(rows, axis=0) if rows else np.zeros(dim, dtype=np.float64)
    matrix = np.vstack([pad, unk] + rows) if rows else np.vstack([pad, unk])
    return EmbeddingTable([PAD_TOKEN, UNK_TOKEN] + tokens, matrix)


def restrict_to_corpus(table: EmbeddingTable, corpus_tokens: set[str]) -> EmbeddingTable:
    """Drop vocabulary entries not used by the corpus.

    Keeps exactly (corpus_tokens & vocab) plus PAD and UNK, preserving the
    original relative order and the exact vector values.
    """
    keep = [tok for tok in table.tokens[2:] if tok in corpus_tokens]
    indices = [PAD_INDEX, UNK_INDEX] + [table.index(tok) for tok in keep]
    return EmbeddingTable([PAD_TOKEN, UNK_TOKEN] + keep, table.vectors[indices].copy())


def oov_rate(token_lists: list[list[str]], table: EmbeddingTable) -> float:
    """Fraction of corpus tokens that fall outside the vocabulary.

    Diagnostic only; returns 0.0 for an empty corpus.
    """
    total = 0
    missing = 0
    for tokens in token_lists:
        total += len(tokens)
        missing += sum(1 for tok in tokens if tok not in table)
    return missing / total if total else 0.0
