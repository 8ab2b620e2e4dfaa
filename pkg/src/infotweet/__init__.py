"""Toolkit for classifying COVID-19 tweets as informative or not.

Pipeline pieces: TSV corpus handling, rule-based normalization, pretrained
word vectors, a from-scratch Bi-GRU-CNN classifier, majority-vote
ensembling, and evaluation/reporting.  See the ``infotweet`` console
script for the command-line surface.
"""

from .bigrucnn import Classifier, ModelConfig
from .corpus import Label, Tweet, load_split, save_split, summarize
from .embeddings import EmbeddingTable, load_vectors
from .ensemble import PredictionSet, VoteConfig, read_predictions, vote, write_predictions
from .errors import DataError, NumericError
from .metrics import ConfusionMatrix, MetricsReport, evaluate
from .preprocess import normalize, tokenize

__version__ = "0.1.0"

__all__ = [
    "Classifier",
    "ConfusionMatrix",
    "DataError",
    "EmbeddingTable",
    "Label",
    "MetricsReport",
    "ModelConfig",
    "NumericError",
    "PredictionSet",
    "Tweet",
    "VoteConfig",
    "evaluate",
    "load_split",
    "load_vectors",
    "normalize",
    "read_predictions",
    "save_split",
    "summarize",
    "tokenize",
    "vote",
    "write_predictions",
    "__version__",
]
