"""Word problem and sphere enumeration for surface groups.

The genus-k presentation <a1,b1,...,ak,bk | [a1,b1]...[ak,bk]> is
C'(1/6): pieces between distinct relator conjugates have length 1 while
the relator has length 4k >= 8, so Dehn's algorithm decides the word
problem.  The canonical form is the Dehn fixpoint followed by
lexicographic minimization over half-relator swaps; its uniqueness is
validated exhaustively at small lengths by the test suite rather than
assumed from theory.
"""

import struct
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool

from .errors import ResourceLimitError
from .freegrp import SphereCensus
from .words import abelianize, free_reduce, invert, surface_alphabet

FRONTIER_BUDGET = 2 * 10 ** 7


@dataclass(frozen=True)
class RelatorFamily:
    """All cyclic rotations of R and R^-1 with their rewrite tables."""

    genus: int
    relator: tuple
    members: tuple
    prefix_table: dict  # >half-relator prefix -> shorter complement inverse
    half_table: dict    # length-2k half -> equal-length complement inverse

    @property
    def relator_length(self):
        return 4 * self.genus

    @property
    def half_length(self):
        return 2 * self.genus

    def max_piece_length(self):
        """Longest common prefix between distinct family members.

        The members list contains every cyclic rotation of R and R^-1, so
        common prefixes here are exactly the small-cancellation pieces.
        """
        best = 0
        for i, u in enumerate(self.members):
            for v in self.members[i + 1:]:
                length = 0
                while length < len(u) and u[length] == v[length]:
                    length += 1
                best = max(best, length)
        return best


@lru_cache(maxsize=None)
def relator_family(genus):
    if genus < 2:
        raise ValueError("genus must be >= 2")
    alphabet = surface_alphabet(genus)
    relator = []
    for i in range(genus):
        a, b = alphabet.generator(f"a{i + 1}"), alphabet.generator(f"b{i + 1}")
        relator += [a, b, a ^ 1, b ^ 1]
    relator = tuple(relator)
    length = len(relator)
    members = []
    for base in (relator, invert(relator)):
        for s in range(length):
            members.append(base[s:] + base[:s])
    members = tuple(members)
    assert len(set(members)) == len(members)
    half = length // 2
    prefix_table, half_table = {}, {}
    for member in members:
        for cut in range(half + 1, length + 1):
            key = member[:cut]
            value = invert(member[cut:])
            assert prefix_table.setdefault(key, value) == value
        key, value = member[:half], invert(member[half:])
        assert half_table.setdefault(key, value) == value
    return RelatorFamily(genus, relator, members, prefix_table, half_table)


def dehn_reduce(word, genus):
    """Free-reduce, then shorten any >half-relator subword, to a fixpoint.

    Scans left to right, longest match first, restarting after each
    rewrite; the result is empty iff the word is trivial in S_genus.
    """
    family = relator_family(genus)
    full, half = family.relator_length, family.half_length
    table = family.prefix_table
    word = free_reduce(word)
    changed = True
    while changed:
        changed = False
        n = len(word)
        for i in range(n - half):
            top = min(full, n - i)
            for length in range(top, half, -1):
                rep = table.get(word[i:i + length])
                if rep is not None:
                    word = free_reduce(word[:i] + rep + word[i + length:])
                    changed = True
                    break
            if changed:
                break
    return word


def is_trivial(word, genus):
    """Word problem via Dehn's algorithm (sound and complete for C'(1/6))."""
    return len(dehn_reduce(word, genus)) == 0


def equality_oracle(u, v, genus):
    return is_trivial(u + invert(v), genus)


def normalize(word, genus):
    """Canonical geodesic form: Dehn fixpoint, then the lex-least word in
    the closure under half-relator swaps.

    Greedy first-improvement descent is not confluent (two geodesics of
    one element can reach different local minima), so the whole swap
    closure is explored; it is small because half-relator occurrences in
    a geodesic are rare.  If a swap ever exposes a shorter word the
    search restarts from there.
    """
    family = relator_family(genus)
    half = family.half_length
    table = family.half_table
    word = dehn_reduce(word, genus)
    while True:
        seen = {word}
        stack = [word]
        shorter = None
        while stack and shorter is None:
            cur = stack.pop()
            for i in range(len(cur) - half + 1):
                rep = table.get(cur[i:i + half])
                if rep is None:
                    continue
                cand = dehn_reduce(cur[:i] + rep + cur[i + half:], genus)
                if len(cand) < len(word):
                    shorter = cand
                    break
                if cand not in seen:
                    seen.add(cand)
                    stack.append(cand)
        if shorter is None:
            return min(seen)
        word = shorter


# ---------------------------------------------------------------------------
# checkpoint file: magic VDSF, little-endian header, 4-bit packed letters

CHECKPOINT_MAGIC = b"VDSF"
CHECKPOINT_VERSION = 1


def _pack_word(word):
    if len(word) % 2:
        word = word + (0,)
        # trailing pad nibble is ignored on load via the stored length
    return bytes((word[i] << 4) | word[i + 1] for i in range(0, len(word), 2))


def _unpack_word(data, length):
    out = []
    for byte in data:
        out.append(byte >> 4)
        out.append(byte & 0xF)
    return tuple(out[:length])


def save_checkpoint(path, genus, level, words):
    """Persist one BFS level of canonical words."""
    if 2 * genus > 8:
        raise ValueError("checkpoint letter packing supports genus <= 4")
    with open(path, "wb") as fh:
        fh.write(CHECKPOINT_MAGIC)
        fh.write(struct.pack("<III", CHECKPOINT_VERSION, genus, level))
        fh.write(struct.pack("<Q", len(words)))
        for word in sorted(words):
            fh.write(struct.pack("<I", len(word)))
            fh.write(_pack_word(word))


def load_checkpoint(path):
    """Return (genus, level, list of canonical words)."""
    with open(path, "rb") as fh:
        if fh.read(4) != CHECKPOINT_MAGIC:
            raise ValueError(f"{path} is not a VDSF checkpoint")
        version, genus, level = struct.unpack("<III", fh.read(12))
        if version != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        (count,) = struct.unpack("<Q", fh.read(8))
        words = []
        for _ in range(count):
            (length,) = struct.unpack("<I", fh.read(4))
            data = fh.read((length + 1) // 2)
            words.append(_unpack_word(data, length))
    return genus, level, words


# ---------------------------------------------------------------------------
# breadth-first sphere enumeration

_WORKER_GENUS = None


def _init_worker(genus):
    global _WORKER_GENUS
    _WORKER_GENUS = genus
    relator_family(genus)  # build tables once per process


def _expand_chunk(args):
    words, genus = args
    target = None
    out = set()
    letters = range(4 * genus)
    for word in words:
        if target is None:
            target = len(word) + 1
        for letter in letters:
            cand = normalize(word + (letter,), genus)
            if len(cand) == target:
                out.add(cand)
    return out


def _census_from_level(genus, n, level_words):
    ab_counts = defaultdict(int)
    k = 2 * genus
    for word in level_words:
        ab_counts[abelianize(word, k)] += 1
    return SphereCensus(f"S{genus}", n, len(level_words), dict(ab_counts))


def sphere_enumerate(genus, n_max, checkpoint=None, threads=1):
    """BFS over canonical words; one SphereCensus per level.

    With `checkpoint` set, every completed level is written to the file;
    an existing checkpoint resumes at its recorded level, so the returned
    list then starts there instead of at 0.
    """
    if genus < 2:
        raise ValueError("genus must be >= 2")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    estimate = 4 * genus * (4 * genus - 1) ** max(n_max - 1, 0)
    if estimate > FRONTIER_BUDGET:
        raise ResourceLimitError(
            f"genus {genus} frontier at n_max={n_max} may reach {estimate} "
            f"words (budget {FRONTIER_BUDGET}); lower n_max or shard runs "
            "through the checkpoint file"
        )
    relator_family(genus)
    start = 0
    frontier = {()}
    if checkpoint is not None:
        try:
            ck_genus, ck_level, ck_words = load_checkpoint(checkpoint)
        except FileNotFoundError:
            pass
        else:
            if ck_genus != genus:
                raise ValueError(
                    f"checkpoint genus {ck_genus} does not match {genus}")
            start, frontier = ck_level, set(ck_words)
    censuses = [_census_from_level(genus, start, frontier)]
    if checkpoint is not None and start == 0:
        save_checkpoint(checkpoint, genus, 0, frontier)
    pool = None
    if threads > 1:
        pool = Pool(threads, initializer=_init_worker, initargs=(genus,))
    try:
        for n in range(start + 1, n_max + 1):
            ordered = sorted(frontier)
            if pool is not None and len(ordered) > 4 * threads:
                size = (len(ordered) + 4 * threads - 1) // (4 * threads)
                chunks = [(ordered[i:i + size], genus)
                          for i in range(0, len(ordered), size)]
                frontier = set()
                for part in pool.imap_unordered(_expand_chunk, chunks):
                    frontier |= part
            else:
                frontier = _expand_chunk((ordered, genus))
            censuses.append(_census_from_level(genus, n, frontier))
            if checkpoint is not None:
                save_checkpoint(checkpoint, genus, n, frontier)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return censuses
