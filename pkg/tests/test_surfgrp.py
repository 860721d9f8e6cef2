import random

import pytest

from visidense.errors import ResourceLimitError
from visidense.surfgrp import (dehn_reduce, equality_oracle, is_trivial,
                               load_checkpoint, normalize, relator_family,
                               save_checkpoint, sphere_enumerate)
from visidense.words import free_reduce, surface_alphabet

A = surface_alphabet(2)


def w(text):
    return A.parse(text)


RELATOR = w("a1 b1 A1 B1 a2 b2 A2 B2")


def test_relator_family_shape():
    family = relator_family(2)
    assert len(family.members) == 16
    assert all(len(m) == 8 for m in family.members)
    assert all(free_reduce(m) == m for m in family.members)
    # cyclically reduced: no cancellation across the wrap either
    assert all(m[0] != (m[-1] ^ 1) for m in family.members)


@pytest.mark.parametrize("genus", [2, 3])
def test_small_cancellation_condition(genus):
    family = relator_family(genus)
    assert family.max_piece_length() == 1
    assert family.relator_length == 4 * genus  # 1/(4k) < 1/6


def test_dehn_reduce_full_relator():
    assert dehn_reduce(RELATOR, 2) == ()


def test_dehn_reduce_over_half_prefix():
    word = w("a1 b1 A1 B1 a2 b2")  # 6 of the 8 relator letters
    reduced = dehn_reduce(word, 2)
    assert reduced == w("b2 a2")
    assert equality_oracle(word, reduced, 2)


def test_dehn_reduce_short_word_unchanged():
    assert dehn_reduce(w("a1 b1"), 2) == w("a1 b1")


def test_is_trivial_examples():
    assert is_trivial(RELATOR, 2)
    assert not is_trivial(w("a1"), 2)
    assert is_trivial(RELATOR[1:] + RELATOR[:1], 2)


def test_equality_oracle_examples():
    assert equality_oracle(w("a1 b1 A1 B1"), w("b2 a2 B2 A2"), 2)
    assert not equality_oracle(w("a1"), w("b1"), 2)
    assert equality_oracle(RELATOR, (), 2)


def test_normalize_examples():
    # both halves of the relator name the same element; 'a1...' is lex-least
    assert normalize(w("b2 a2 B2 A2"), 2) == w("a1 b1 A1 B1")
    assert normalize(w("a1 b1 A1 B1"), 2) == w("a1 b1 A1 B1")
    assert normalize((), 2) == ()


def test_normalize_soundness_random_words():
    rng = random.Random(20240823)
    for _ in range(100_000):
        word = tuple(rng.randrange(8) for _ in range(rng.randrange(13)))
        nf = normalize(word, 2)
        assert len(nf) <= len(free_reduce(word))
        assert equality_oracle(word, nf, 2)
        assert normalize(nf, 2) == nf


def test_sphere_totals_small():
    censuses = sphere_enumerate(2, 4)
    assert [c.total for c in censuses] == [1, 8, 56, 392, 2736]


def test_sphere_census_invariants():
    for census in sphere_enumerate(2, 6):
        assert sum(census.ab_counts.values()) == census.total
        for ab, count in census.ab_counts.items():
            assert census.ab_counts[tuple(-x for x in ab)] == count
            l1 = sum(abs(x) for x in ab)
            assert l1 <= census.n and (l1 - census.n) % 2 == 0


def test_frontier_budget():
    with pytest.raises(ResourceLimitError):
        sphere_enumerate(2, 12)


def test_threads_give_identical_censuses():
    single = sphere_enumerate(2, 5, threads=1)
    multi = sphere_enumerate(2, 5, threads=4)
    for a, b in zip(single, multi):
        assert a.total == b.total
        assert a.ab_counts == b.ab_counts


def test_checkpoint_round_trip(tmp_path):
    path = tmp_path / "level.vdsf"
    words = sorted({normalize(w, 2) for w in
                    [(0, 2, 4), (1, 3, 5), (6, 4, 2)]})
    save_checkpoint(path, 2, 3, words)
    genus, level, loaded = load_checkpoint(path)
    assert (genus, level) == (2, 3)
    assert sorted(loaded) == words


def test_checkpoint_resume_matches_fresh_run(tmp_path):
    path = tmp_path / "bfs.vdsf"
    fresh = sphere_enumerate(2, 5)
    partial = sphere_enumerate(2, 3, checkpoint=str(path))
    assert [c.total for c in partial] == [c.total for c in fresh[:4]]
    resumed = sphere_enumerate(2, 5, checkpoint=str(path))
    assert resumed[0].n == 3
    for census in resumed:
        reference = fresh[census.n]
        assert census.total == reference.total
        assert census.ab_counts == reference.ab_counts


def test_checkpoint_rejects_wrong_genus(tmp_path):
    path = tmp_path / "bad.vdsf"
    save_checkpoint(path, 3, 1, [(0,)])
    with pytest.raises(ValueError):
        sphere_enumerate(2, 3, checkpoint=str(path))


def test_checkpoint_rejects_garbage(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"NOPE" + b"\x00" * 20)
    with pytest.raises(ValueError):
        load_checkpoint(path)
