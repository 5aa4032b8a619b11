"""Candidate scoring and deterministic ranking."""

from __future__ import annotations

import io
import csv

import numpy as np

from .model import predict

RANKED_COLUMNS = ("rank", "row", "predicted_p_fail", "pauli1", "pauli2",
                  "noise_level")


def score_records(model, meta, records) -> np.ndarray:
    """Predicted p_fail per record, in input order."""
    return predict(model, meta, records)


def rank_candidates(model, meta, records) -> tuple[np.ndarray, np.ndarray]:
    """(order, scores): best candidate first.

    Best means lowest predicted failure.  Ties keep input order, so the
    ranking is a pure function of the artifact and the candidate list.
    """
    scores = score_records(model, meta, records)
    order = np.argsort(scores, kind="stable")
    return order, scores


def ranked_csv(records, order, scores, top: int | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RANKED_COLUMNS)
    picks = order if top is None else order[:top]
    for rank, row in enumerate(picks):
        r = records[int(row)]
        w.writerow([rank, int(row), repr(float(scores[int(row)])),
                    r.pauli1, r.pauli2, repr(r.noise_level)])
    return buf.getvalue()
