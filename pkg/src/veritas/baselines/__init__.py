"""Classical text-classification baselines trained on the statement corpus."""

from .logreg import LogRegModel, TrainingConfig, predict_logreg, train_logreg
from .naive_bayes import NbModel, predict_nb, train_nb
from .preprocess import Preprocessor, preprocess
from .tfidf import SparseVector, TfIdfModel, fit_tfidf, transform

__all__ = [
    "LogRegModel",
    "NbModel",
    "Preprocessor",
    "SparseVector",
    "TfIdfModel",
    "TrainingConfig",
    "fit_tfidf",
    "predict_logreg",
    "predict_nb",
    "preprocess",
    "train_logreg",
    "train_nb",
    "transform",
]
