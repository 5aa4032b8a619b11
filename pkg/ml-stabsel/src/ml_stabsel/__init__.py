"""Surrogate model for stabilizer verification-pair quality.

Consumes the simulator's exported pair dataset (CSV over files, never
in-process), fits an attention regressor over the compilation graph to
predict failure probability, ranks unmeasured candidate pairs, and
scores model-guided selection against random selection with fresh
simulator calls per trial.
"""

__version__ = "0.1.0"

from .features import FeatureRecord, FeatureError
from .data import Split, SplitError, load_records, split_by_graph
from .model import build_model, load_model, predict, save_model
from .train import ConstantTargetError, TrainResult, train
from .rank import rank_candidates, ranked_csv, score_records
from .winrate import SimulatorUnavailable, evaluate_winrate
