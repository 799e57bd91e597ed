import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthoprime import words as W
from orthoprime.surfaces import build_named


def test_basic_ops():
    assert W.reduce((1, -1, 2)) == (2,)
    assert W.mul((1, 2), (-2, -1)) == ()
    assert W.inverse((1, -2)) == (2, -1)
    assert W.power((1, 2), -2) == (-2, -1, -2, -1)
    assert W.cyclic_reduce((2, 1, 3, -2)) == (1, 3)
    assert W.to_str((1, -2)) == "aB" and W.from_str("aB") == (1, -2)
    assert W.from_str("1") == ()
    with pytest.raises(ValueError):
        W.from_str("a1")
    assert len(list(W.reduced_words(2, 3))) == 1 + 4 + 12 + 36


word = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12).map(W.reduce)


@given(word, word)
def test_group_laws(u, v):
    assert W.mul(u, W.inverse(u)) == ()
    assert W.inverse(W.mul(u, v)) == W.mul(W.inverse(v), W.inverse(u))


def _components(words, u, v, span=6, max_len=5):
    parent = {w: w for w in words}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in words:
        for m in range(-span, span + 1):
            for n in range(-span, span + 1):
                x = W.mul(W.power(u, m), w, W.power(v, n))
                if len(x) <= max_len:
                    parent[find(x)] = find(w)
    return find


def test_double_coset_partition_gamma2():
    s = build_named("gamma2")
    bws = [b.word for b in s.boundaries]
    words = list(W.reduced_words(2, 5))
    for i, j in ((0, 1), (1, 2), (2, 2)):
        u, v = bws[i], bws[j]
        find = _components(words, u, v)
        canon = {}
        for w in words:
            c = W.double_coset_canonical(w, u, v)
            assert W.double_coset_canonical(c, u, v) == c
            canon.setdefault(find(w), set()).add(c)
        # one representative per brute-force component, and no sharing
        assert all(len(cs) == 1 for cs in canon.values())
        reps = [next(iter(cs)) for cs in canon.values()]
        assert len(reps) == len(set(reps))


@given(word, st.integers(-4, 4), st.integers(-4, 4))
def test_canonical_invariant(w, m, n):
    u, v = (1,), (2, -1)
    moved = W.mul(W.power(u, m), w, W.power(v, n))
    assert W.double_coset_canonical(moved, u, v) == W.double_coset_canonical(w, u, v)
