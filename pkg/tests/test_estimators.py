import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone

from localtest import generate
from localtest.estimators import FrequencyTransformer, HyperfiniteTester, LocalCutSampler, PlanarityTester


def test_frequency_transformer_rows_sum_to_one():
    X = [generate("cycle(10)"), generate("path(10)")]
    ft = FrequencyTransformer(radius=1).fit(X)
    M = ft.transform(X + [generate("complete(4)")])
    assert M.shape == (3, 3)
    assert np.allclose(M.sum(axis=1), 1)
    assert M[2, -1] == 1.0
    assert list(ft.get_feature_names_out())[-1] == "other"


def test_frequency_transformer_accepts_networkx():
    M = FrequencyTransformer(radius=1).fit_transform([nx.cycle_graph(8)])
    assert M[0, 0] == 1.0


def test_params_and_clone():
    est = HyperfiniteTester(radius=2, delta=0.5)
    assert est.get_params()["radius"] == 2
    twin = clone(est).set_params(delta=0.3)
    assert twin.delta == 0.3 and est.delta == 0.5


def test_hyperfinite_tester_uses_positive_labels():
    X = [generate("cycle(12)"), generate("cycle(30)"), generate("random_regular(50,3)", seed=1)]
    est = HyperfiniteTester(radius=2, delta=0.5, sample_constant=1.0).fit(X, [1, 1, 0])
    assert len(est.net_) == 1
    assert est.predict([generate("cycle(200)"), generate("random_regular(400,3)", seed=2)]).tolist() == [1, 0]
    scores = est.decision_function([generate("cycle(200)")])
    assert scores[0] == pytest.approx(0.25)


def test_bad_parameters_raise():
    with pytest.raises(ValueError):
        HyperfiniteTester(delta=-1).fit([generate("cycle(5)")])
    with pytest.raises(ValueError):
        LocalCutSampler(k=0).fit(generate("cycle(5)"))


def test_planarity_tester_shipped_profile():
    est = PlanarityTester().fit()
    pred = est.predict([generate("grid(30,30)", d=4), generate("union_copies(complete(5),50)", d=4)])
    assert pred.tolist() == [1, 0]
    with pytest.raises(ValueError):
        PlanarityTester(eps=0.2).fit()


def test_local_cut_sampler():
    g = generate("grid(10,10)")
    s = LocalCutSampler(k=4).fit(g)
    (edges,) = s.transform([g])
    h = g.remove_edges(edges)
    assert max(len(c) for c in h.components()) <= 4
