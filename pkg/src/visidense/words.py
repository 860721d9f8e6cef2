"""Signed alphabets, free reduction and abelianization.

Letters are small ints: generator i gives letters 2*i (positive) and
2*i+1 (inverse), so the fixed total order a1 < a1^-1 < b1 < b1^-1 < ...
is plain integer order and inversion is `letter ^ 1`.  Words are tuples
of letters; equality is sequence equality (group equality for surface
groups lives in `surfgrp`).
"""

import re


class Alphabet:
    """Ordered generator names with the sign-bit letter encoding."""

    def __init__(self, names):
        self.names = tuple(names)
        self.size = 2 * len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError("duplicate generator names")

    @property
    def num_generators(self):
        return len(self.names)

    def generator(self, name, inverse=False):
        return 2 * self._index[name] + (1 if inverse else 0)

    def inverse(self, letter):
        return letter ^ 1

    _TOKEN = re.compile(r"\s*,?\s*([A-Za-z])(\d+)(\^-1)?")

    def parse(self, text):
        """Parse words like 'a1 b1^-1 A2' (uppercase = inverse)."""
        word = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            char, idx, caret = m.groups()
            name = char.lower() + idx
            if name not in self._index:
                raise ValueError(f"unknown generator {name!r}")
            inverse = char.isupper() ^ bool(caret)
            word.append(self.generator(name, inverse))
            pos = m.end()
        return tuple(word)

    def spell(self, word):
        """Inverse of parse; inverses are printed uppercase."""
        out = []
        for letter in word:
            name = self.names[letter >> 1]
            out.append(name.upper() if letter & 1 else name)
        return " ".join(out)


def free_alphabet(k):
    """Generators a1..ak of the free group of rank k."""
    return Alphabet([f"a{i}" for i in range(1, k + 1)])


def surface_alphabet(k):
    """Generators a1,b1,...,ak,bk of the genus-k surface group."""
    names = []
    for i in range(1, k + 1):
        names += [f"a{i}", f"b{i}"]
    return Alphabet(names)


def variable_alphabet(n):
    """Variables x1..xn for equation left-hand sides."""
    return Alphabet([f"x{i}" for i in range(1, n + 1)])


def free_reduce(word):
    """Cancel adjacent inverse pairs; idempotent."""
    out = []
    for letter in word:
        if out and out[-1] == (letter ^ 1):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert(word):
    return tuple(letter ^ 1 for letter in reversed(word))


def concat(*words):
    joined = []
    for w in words:
        joined.extend(w)
    return free_reduce(joined)


def abelianize(word, num_generators):
    """Signed letter counts per generator."""
    counts = [0] * num_generators
    for letter in word:
        counts[letter >> 1] += -1 if letter & 1 else 1
    return tuple(counts)
