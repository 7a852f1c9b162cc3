"""Accuracy, confusion matrix and per-class precision/recall/F1.

Metrics whose denominator is zero are ``None`` ("undefined"), never 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .scorer import LABEL_ORDER, SentimentLabel

UNDEFINED = "undefined"
_INDEX = {label: i for i, label in enumerate(LABEL_ORDER)}


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


@dataclass
class ConfusionMatrix:
    """3x3 counts indexed ``cells[gold][predicted]`` in ``LABEL_ORDER``."""

    cells: list[list[int]] = field(default_factory=lambda: [[0] * 3 for _ in range(3)])

    def add(self, predicted: SentimentLabel, gold: SentimentLabel, count: int = 1) -> None:
        self.cells[_INDEX[gold]][_INDEX[predicted]] += count

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.cells, other.cells)])

    def __getitem__(self, key: tuple[SentimentLabel, SentimentLabel]) -> int:
        gold, predicted = key
        return self.cells[_INDEX[gold]][_INDEX[predicted]]

    @property
    def total(self) -> int:
        return sum(map(sum, self.cells))

    @property
    def correct(self) -> int:
        return sum(self.cells[i][i] for i in range(3))

    def gold_count(self, label: SentimentLabel) -> int:
        return sum(self.cells[_INDEX[label]])

    def predicted_count(self, label: SentimentLabel) -> int:
        j = _INDEX[label]
        return sum(row[j] for row in self.cells)

    def to_json(self) -> dict:
        return {
            "labels": [l.value for l in LABEL_ORDER],
            "rows": "gold",
            "columns": "predicted",
            "cells": [list(r) for r in self.cells],
            "total": self.total,
        }


@dataclass(frozen=True)
class ClassMetrics:
    precision: float | None
    recall: float | None
    f1: float | None
    support: int

    def to_json(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1, "support": self.support}


@dataclass(frozen=True)
class EvalReport:
    accuracy: float | None
    per_class: dict[SentimentLabel, ClassMetrics]
    confusion: ConfusionMatrix
    n_evaluated: int
    n_missing_gold: int = 0

    @classmethod
    def from_confusion(cls, cm: ConfusionMatrix, n_missing_gold: int = 0) -> "EvalReport":
        per_class = {}
        for label in LABEL_ORDER:
            i = _INDEX[label]
            tp = cm.cells[i][i]
            p = _ratio(tp, cm.predicted_count(label))
            r = _ratio(tp, cm.gold_count(label))
            f1 = None
            if p is not None and r is not None and p + r > 0:
                f1 = 2 * p * r / (p + r)
            per_class[label] = ClassMetrics(p, r, f1, cm.gold_count(label))
        return cls(_ratio(cm.correct, cm.total), per_class, cm, cm.total, n_missing_gold)

    def to_json(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {l.value: m.to_json() for l, m in self.per_class.items()},
            "confusion": self.confusion.to_json(),
            "n_evaluated": self.n_evaluated,
            "n_missing_gold": self.n_missing_gold,
        }

    def to_text(self) -> str:
        def fmt(x):
            return UNDEFINED if x is None else f"{x:.4f}"

        names = [l.value for l in LABEL_ORDER]
        lines = [
            f"evaluated: {self.n_evaluated}   missing gold: {self.n_missing_gold}   accuracy: {fmt(self.accuracy)}",
            "",
            f"{'gold/predicted':<18}" + "".join(f"{n:>10}" for n in names),
        ]
        for name, row in zip(names, self.confusion.cells):
            lines.append(f"{name:<18}" + "".join(f"{c:>10}" for c in row))
        lines += ["", f"{'class':<10}{'precision':>11}{'recall':>11}{'f1':>11}{'support':>9}"]
        for label, m in self.per_class.items():
            lines.append(f"{label.value:<10}{fmt(m.precision):>11}{fmt(m.recall):>11}{fmt(m.f1):>11}{m.support:>9}")
        return "\n".join(lines)


def evaluate(pairs: Iterable[tuple[SentimentLabel, SentimentLabel | None]]) -> EvalReport:
    """Tally ``(predicted, gold)`` pairs; pairs with ``gold=None`` are counted as missing."""
    cm = ConfusionMatrix()
    missing = 0
    for predicted, gold in pairs:
        if gold is None:
            missing += 1
            continue
        cm.add(predicted, gold)
    return EvalReport.from_confusion(cm, missing)
