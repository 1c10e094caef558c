import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadproj.errors import (
    ConicalDegenerate,
    Cylindrical,
    EmptyQuadric,
    NotCentral,
    NotSymmetric,
    ZeroQuadratic,
)
from quadproj.quadric import Kind, classify, evaluate, is_feasible, new_quadric, standardize

from .helpers import CORPUS, corpus_quadric, random_quadric

CIRCLE = dict(A=np.eye(2), b=[0, 0], c=-1)
SHIFTED = dict(A=np.eye(2), b=[-2, 0], c=0)  # center (1, 0), radius 1
ELLIPSE = dict(A=np.diag([0.25, 1.0]), b=[0, 0], c=-1)  # x^2/4 + y^2 = 1


def test_new_quadric_valid():
    q = new_quadric(**CIRCLE)
    assert q.dim == 2 and q.c == -1.0
    new_quadric([[2, 1], [1, 2]], [1, 0], -3)


def test_new_quadric_symmetrizes_within_tolerance():
    q = new_quadric([[1.0, 0.5], [0.5 + 1e-14, 1.0]], [0, 0], -1)
    assert q.A[0, 1] == q.A[1, 0]


def test_new_quadric_errors():
    with pytest.raises(NotSymmetric):
        new_quadric([[1, 0.5], [0.49999, 1]], [0, 0], -1)
    with pytest.raises(ZeroQuadratic):
        new_quadric(np.zeros((2, 2)), [1, 0], -1)
    with pytest.raises(ValueError):
        new_quadric(np.eye(2), [1, 0, 0], -1)


def test_classify_examples():
    cls = classify(new_quadric(**CIRCLE))
    assert (cls.kind, cls.cylindrical, cls.rank_A, cls.positives) == (Kind.CENTRAL, False, 2, 2)
    cls = classify(corpus_quadric("parabola"))
    assert cls.kind is Kind.PARABOLIC and cls.rank_Ab == 2 and cls.rank_A == 1
    cls = classify(corpus_quadric("crossing_lines"))
    assert cls.kind is Kind.CONICAL and cls.rank_Astar == cls.rank_Ab == cls.rank_A == 2
    cls = classify(corpus_quadric("parallel_lines"))
    assert cls.kind is Kind.CENTRAL and cls.cylindrical and cls.rank_A == 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_classification_corpus(name):
    _, _, _, kind, cyl = CORPUS[name]
    cls = classify(corpus_quadric(name))
    assert cls.kind.value == kind
    assert cls.cylindrical == cyl


def test_standardize_circle():
    sf = standardize(new_quadric(**CIRCLE))
    np.testing.assert_array_equal(sf.values, [1.0, 1.0])
    np.testing.assert_array_equal(sf.vectors, np.eye(2))
    np.testing.assert_array_equal(sf.center, [0.0, 0.0])
    assert sf.scale == 1.0 and not sf.flipped and sf.gamma == -1.0


def test_standardize_flipped_circle():
    sf = standardize(new_quadric(-np.eye(2), [0, 0], 1))
    np.testing.assert_array_equal(sf.values, [1.0, 1.0])
    np.testing.assert_array_equal(sf.vectors, np.eye(2))
    np.testing.assert_array_equal(sf.center, [0.0, 0.0])
    assert sf.scale == 1.0 and sf.flipped


def test_standardize_ellipse():
    sf = standardize(new_quadric(**ELLIPSE))
    np.testing.assert_array_equal(sf.values, [1.0, 0.25])
    np.testing.assert_array_equal(sf.vectors, [[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(sf.center, [0.0, 0.0])
    assert sf.scale == 1.0


def test_standardize_errors():
    with pytest.raises(ConicalDegenerate):
        standardize(new_quadric(np.diag([1.0, -1.0]), [0, 0], 0))
    with pytest.raises(Cylindrical):
        standardize(corpus_quadric("parallel_lines"))
    with pytest.raises(NotCentral):
        standardize(corpus_quadric("parabola"))
    with pytest.raises(EmptyQuadric):
        standardize(new_quadric(np.eye(2), [0, 0], 1))  # x^2 + y^2 = -1


def test_transforms_examples():
    sf = standardize(new_quadric(**CIRCLE))
    np.testing.assert_array_equal(sf.to_std([1.0, 0.0]), [1.0, 0.0])
    np.testing.assert_array_equal(sf.from_std([0.0, 1.0]), [0.0, 1.0])
    sf = standardize(new_quadric(**SHIFTED))
    np.testing.assert_array_equal(sf.center, [1.0, 0.0])
    y = sf.to_std([2.0, 0.0])
    assert abs(np.dot(sf.values, y * y) - 1.0) <= 1e-15
    theta = 0.7
    x = sf.from_std([np.cos(theta), np.sin(theta)])
    assert abs(evaluate(sf.quadric, x)) <= 1e-15


def test_round_trip_random(rng):
    for _ in range(200):
        n = int(rng.integers(1, 30))
        sf = standardize(random_quadric(n, rng, random_sign=True))
        y = rng.standard_normal(n) * 10.0 ** rng.uniform(-2, 2)
        assert np.linalg.norm(sf.to_std(sf.from_std(y)) - y) <= 1e-10 * (1 + np.linalg.norm(y))
        x = rng.standard_normal(n)
        assert np.linalg.norm(sf.from_std(sf.to_std(x)) - x) <= 1e-10 * (1 + np.linalg.norm(x))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1), st.floats(0.01, 100.0), st.booleans())
def test_round_trip_property(n, seed, gamma_mag, neg):
    rng = np.random.default_rng(seed)
    sign = -1.0 if neg else 1.0
    from quadproj.instances import quadric_from_parts, random_orthogonal, random_spectrum

    q = quadric_from_parts(random_orthogonal(n, rng), random_spectrum(n, rng), rng.standard_normal(n), -gamma_mag, sign)
    sf = standardize(q)
    y = rng.standard_normal(n)
    assert np.linalg.norm(sf.to_std(sf.from_std(y)) - y) <= 1e-10 * (1 + np.linalg.norm(y))
    assert sf.flipped == (sign < 0)
    assert abs(sf.scale - np.sqrt(gamma_mag)) <= 1e-9 * np.sqrt(gamma_mag)


def _ray_root(q, d, u):
    """Bisection for Psi(d + t u) = 0 along t > 0, or None if the ray misses."""
    psi = lambda t: evaluate(q, d + t * u)
    p0 = psi(0.0)
    hi = 1.0
    while np.sign(psi(hi)) == np.sign(p0):
        hi *= 2.0
        if hi > 1e8:
            return None
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.sign(psi(mid)) == np.sign(p0):
            lo = mid
        else:
            hi = mid
    return d + 0.5 * (lo + hi) * u


def test_constraint_transport(rng):
    hits = 0
    for _ in range(300):
        n = int(rng.integers(1, 10))
        q = random_quadric(n, rng, random_sign=True)
        sf = standardize(q)
        x = _ray_root(q, sf.center, rng.standard_normal(n))
        if x is None:
            continue
        hits += 1
        y = sf.to_std(x)
        assert abs(np.dot(sf.values, y * y) - 1.0) <= 1e-8
    assert hits > 100


def test_sign_invariance(rng):
    for _ in range(50):
        n = int(rng.integers(1, 10))
        q = random_quadric(n, rng)
        a = standardize(q)
        b = standardize(new_quadric(-q.A, -q.b, -q.c))
        np.testing.assert_allclose(a.values, b.values, rtol=0, atol=1e-12)
        np.testing.assert_allclose(a.center, b.center, rtol=0, atol=1e-12)
        assert abs(a.scale - b.scale) <= 1e-12
        assert a.flipped != b.flipped


def test_evaluate():
    q = new_quadric(**CIRCLE)
    assert evaluate(q, [1.0, 0.0]) == 0.0
    assert evaluate(q, [0.0, 0.0]) == -1.0
    assert evaluate(new_quadric(**ELLIPSE), [2.0, 1.0]) == 1.0
    np.testing.assert_array_equal(evaluate(q, [[1.0, 0.0], [0.0, 0.0]]), [0.0, -1.0])


def test_is_feasible():
    q = new_quadric(**CIRCLE)
    assert is_feasible(q, [0.0, 1.0])
    assert not is_feasible(q, [0.0, 1.0 + 1e-3])
    assert is_feasible(q, [0.0, 1.0 + 1e-12])
    np.testing.assert_array_equal(is_feasible(q, [[0.0, 1.0], [0.0, 2.0]]), [True, False])
