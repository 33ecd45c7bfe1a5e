"""scikit-learn style wrappers: graphs in, frequency features / verdicts / cuts out."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_graph, check_graphs, check_labels, check_positive
from .graph import QueryOracle
from .harness import CalibrationGrid, calibrate, trial_seed
from .hyperfinite import choose_R, find_partition_greedy, prepare_local_cut
from .stats import exact_frequency
from .testers import build_reference_net, default_profile, distinguish, test_minor_free


class FrequencyTransformer(TransformerMixin, BaseEstimator):
    """Exact ball-type frequencies as a dense feature matrix.

    Columns are the types seen during ``fit`` (sorted by code); mass on
    unseen types goes to a final ``other`` column so rows still sum to 1.
    """

    def __init__(self, radius: int = 1):
        self.radius = radius

    def fit(self, X, y=None):
        check_positive("radius", self.radius, integer=True, allow_zero=True)
        codes = set()
        for g in check_graphs(X):
            codes.update(exact_frequency(g, self.radius).entries)
        self.vocabulary_ = {c: i for i, c in enumerate(sorted(codes))}
        return self

    def transform(self, X):
        check_is_fitted(self, "vocabulary_")
        graphs = check_graphs(X)
        out = np.zeros((len(graphs), len(self.vocabulary_) + 1))
        for row, g in enumerate(graphs):
            for code, p in exact_frequency(g, self.radius).entries.items():
                out[row, self.vocabulary_.get(code, len(self.vocabulary_))] += p
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabulary_")
        return np.array([c.hex()[:16] for c in self.vocabulary_] + ["other"], dtype=object)


def _oracle(x):
    x = check_graph(x, allow_oracle=True)
    return x if isinstance(x, QueryOracle) else QueryOracle(x)


class HyperfiniteTester(ClassifierMixin, BaseEstimator):
    """Frequency distinguisher whose net is the (in-class) training corpus.

    ``predict`` returns 1 (accept) or 0 (reject); the i-th input uses the
    seed stream ``(random_state, i)``.
    """

    def __init__(self, radius: int = 1, delta: float = 0.8, sample_constant: float = 0.2, random_state: int = 0):
        self.radius = radius
        self.delta = delta
        self.sample_constant = sample_constant
        self.random_state = random_state

    def fit(self, X, y=None):
        check_positive("delta", self.delta)
        check_positive("sample_constant", self.sample_constant)
        graphs = check_graphs(X)
        if y is not None:
            labels = check_labels(y, len(graphs))
            graphs = [g for g, lab in zip(graphs, labels) if lab == 1]
        self.net_ = build_reference_net(graphs, self.radius, self.delta)
        self.classes_ = np.array([0, 1])
        return self

    def _verdicts(self, X):
        check_is_fitted(self, "net_")
        items = X if isinstance(X, (list, tuple)) else [X]
        return [
            distinguish(_oracle(x), self.net_, self.delta, trial_seed(self.random_state, i), self.sample_constant)
            for i, x in enumerate(items)
        ]

    def predict(self, X):
        return np.array([int(v.accepted) for v in self._verdicts(X)])

    def decision_function(self, X):
        """delta/2 minus the distance to the nearest net point (positive means accept)."""
        return np.array([self.delta / 2 - v.evidence.get("distance", np.inf) for v in self._verdicts(X)])


class PlanarityTester(ClassifierMixin, BaseEstimator):
    """Two-phase planarity tester.

    ``fit()`` with no data loads the shipped profile; ``fit(X, y)`` calibrates
    a profile on labelled graphs (1 planar, 0 far from planar).
    """

    def __init__(self, eps: float = 0.1, d: int = 4, calibration_trials: int = 20, random_state: int = 0):
        self.eps = eps
        self.d = d
        self.calibration_trials = calibration_trials
        self.random_state = random_state

    def fit(self, X=None, y=None):
        check_positive("eps", self.eps)
        if X is None:
            prof = default_profile()
            if not np.isclose(prof.eps, self.eps) or prof.d != self.d:
                raise ValueError("the shipped profile covers eps=0.1, d=4 only; pass training graphs")
        else:
            graphs = [g.with_degree_bound(self.d) for g in check_graphs(X)]
            labels = check_labels(y, len(graphs))
            ins = [(f"in{i}", g) for i, (g, lab) in enumerate(zip(graphs, labels)) if lab == 1]
            far = [(f"far{i}", g) for i, (g, lab) in enumerate(zip(graphs, labels)) if lab == 0]
            grid = CalibrationGrid(trials=self.calibration_trials)
            prof = calibrate(ins, far, self.eps, self.d, grid, seed=self.random_state)
        self.profile_ = prof
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        check_is_fitted(self, "profile_")
        items = X if isinstance(X, (list, tuple)) else [X]
        out = []
        for i, x in enumerate(items):
            o = _oracle(x)
            v = test_minor_free(o, list(self.profile_.patterns), self.eps, trial_seed(self.random_state, i), self.profile_)
            out.append(int(v.accepted))
        return np.array(out)


class LocalCutSampler(TransformerMixin, BaseEstimator):
    """Learns a local probability table on one graph and draws randomized cuts.

    ``transform`` returns, per input graph, the list of cut edges of one
    draw; graphs other than the training graph need a complete table.
    """

    def __init__(self, k: int = 3, eps: float | None = None, max_radius: int = 12, random_state: int = 0):
        self.k = k
        self.eps = eps
        self.max_radius = max_radius
        self.random_state = random_state

    def fit(self, X, y=None):
        check_positive("k", self.k, integer=True)
        g = check_graph(X)
        self.cut_ = find_partition_greedy(g, self.k)
        eps = self.eps if self.eps is not None else max(self.cut_.delta, 1e-9)
        self.choice_ = choose_R(g, self.cut_, self.k, eps, max_radius=self.max_radius)
        self.table_ = self.choice_.table
        self.source_ = g
        return self

    def transform(self, X):
        check_is_fitted(self, "table_")
        out = []
        for i, g in enumerate(check_graphs(X)):
            proc = prepare_local_cut(g, self.table_, self.cut_.delta, g.d)
            sample = proc.draw(np.random.default_rng(trial_seed(self.random_state, i)))
            out.append(sample.edges(g))
        return out
