"""Classifier roster and model-type grouping.

Default hyperparameters throughout: the comparison is about the training
data, not the tuner. Stochastic models get the experiment seed.
"""

from __future__ import annotations

from sklearn.discriminant_analysis import (
    LinearDiscriminantAnalysis,
    QuadraticDiscriminantAnalysis,
)
from sklearn.ensemble import ExtraTreesClassifier, RandomForestClassifier
from sklearn.linear_model import LogisticRegression, SGDClassifier
from sklearn.naive_bayes import GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.neural_network import MLPClassifier
from sklearn.tree import DecisionTreeClassifier

MODEL_ROSTER = ("SVM", "ET", "RF", "KN", "LDA", "MLP", "LR", "NB", "DT", "QDA")

MODEL_TYPES = {
    "ET": "tree",
    "RF": "tree",
    "DT": "tree",
    "LDA": "linear",
    "SVM": "linear",
    "LR": "linear",
    "MLP": "neural",
    "QDA": "probabilistic",
    "NB": "probabilistic",
    "KN": "neighbors",
}


def build_model(code: str, seed: int):
    if code == "SVM":
        return SGDClassifier(random_state=seed)  # linear SVM (hinge loss)
    if code == "ET":
        return ExtraTreesClassifier(random_state=seed)
    if code == "RF":
        return RandomForestClassifier(random_state=seed)
    if code == "KN":
        return KNeighborsClassifier()
    if code == "LDA":
        return LinearDiscriminantAnalysis()
    if code == "MLP":
        return MLPClassifier(random_state=seed, max_iter=500)
    if code == "LR":
        return LogisticRegression(max_iter=1000)
    if code == "NB":
        return GaussianNB()
    if code == "DT":
        return DecisionTreeClassifier(random_state=seed)
    if code == "QDA":
        return QuadraticDiscriminantAnalysis()
    raise ValueError(f"unknown model code {code!r}")
