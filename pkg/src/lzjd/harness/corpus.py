"""Synthetic mixed-entropy test corpus.

Stand-in for the t5 corpus, which is an external download.  Files are built
from segments of four kinds, weighted per file by a "file type":

* ``text``   - word streams from a Zipf-weighted vocabulary
* ``markup`` - html-like tag soup around text
* ``records`` - repetitive binary tables (struct-packed rows, padding)
* ``random`` - incompressible bytes, like compressed image or archive data

Everything is driven by one seeded generator, so a rerun with the same seed
writes identical bytes.
"""

import json
import math
import os
from dataclasses import asdict, dataclass

import numpy as np

MANIFEST = "manifest.json"
DEFAULT_FILES = 50
MIN_SIZE = 64 * 1024
MAX_SIZE = 2 * 1024 * 1024

# (segment weights for text, markup, records, random)
FILE_TYPES = {
    "txt": (0.85, 0.0, 0.05, 0.10),
    "html": (0.25, 0.70, 0.0, 0.05),
    "doc": (0.45, 0.0, 0.40, 0.15),
    "xls": (0.10, 0.0, 0.85, 0.05),
    "pdf": (0.30, 0.10, 0.15, 0.45),
    "jpg": (0.0, 0.0, 0.05, 0.95),
}
TYPE_MIX = {"txt": 0.2, "html": 0.25, "doc": 0.15, "xls": 0.1, "pdf": 0.2, "jpg": 0.1}

_SYLLABLES = [c + v for c in "bcdfghjklmnprstvwz" for v in "aeiou"] + ["th", "ch", "st", "qu", "ing", "er", "an"]
_TAGS = ["div", "span", "p", "a", "td", "tr", "li", "ul", "table", "h2", "em", "strong"]
_ATTRS = ["class", "id", "style", "href", "title", "width"]


@dataclass(frozen=True)
class CorpusFile:
    name: str
    size: int
    entropy: float
    kind: str


def shannon_entropy(data):
    """Byte-level Shannon entropy in bits per byte."""
    buf = np.frombuffer(bytes(data), dtype=np.uint8) if not isinstance(data, np.ndarray) else data
    if buf.size == 0:
        return 0.0
    counts = np.bincount(buf, minlength=256)
    p = counts[counts > 0] / buf.size
    return float(-(p * np.log2(p)).sum())


def _vocabulary(rng, n_words):
    words = set()
    while len(words) < n_words:
        n_syl = int(rng.integers(1, 5))
        words.add("".join(_SYLLABLES[i] for i in rng.integers(0, len(_SYLLABLES), n_syl)))
    return sorted(words)


def _zipf_words(rng, vocab, n):
    ranks = np.arange(1, len(vocab) + 1)
    p = 1.0 / ranks
    p /= p.sum()
    idx = rng.choice(len(vocab), size=n, p=p)
    return [vocab[i] for i in idx]


def _text(rng, vocab, size):
    parts = []
    total = 0
    while total < size:
        words = _zipf_words(rng, vocab, int(rng.integers(8, 25)))
        sentence = " ".join(words).capitalize() + rng.choice([". ", ", ", ".\n", "? "])
        parts.append(sentence)
        total += len(sentence)
    return "".join(parts).encode("ascii")[:size]


def _markup(rng, vocab, size):
    parts = []
    total = 0
    while total < size:
        tag = _TAGS[int(rng.integers(len(_TAGS)))]
        attr = _ATTRS[int(rng.integers(len(_ATTRS)))]
        value = vocab[int(rng.integers(len(vocab)))]
        body = " ".join(_zipf_words(rng, vocab, int(rng.integers(0, 12))))
        chunk = f'<{tag} {attr}="{value}">{body}</{tag}>\n'
        parts.append(chunk)
        total += len(chunk)
    return "".join(parts).encode("ascii")[:size]


def _records(rng, size):
    n_fields = int(rng.integers(3, 9))
    kinds = rng.integers(0, 3, n_fields)
    scales = rng.integers(1, 1000, n_fields)
    rows = max(1, size // (4 * n_fields + 4))
    cols = []
    for kind, scale in zip(kinds, scales):
        if kind == 0:  # counters
            col = (np.arange(rows) * int(rng.integers(1, 5)) + int(rng.integers(0, 1 << 20))).astype("<u4")
        elif kind == 1:  # small categorical codes
            col = rng.integers(0, int(scale) % 16 + 2, rows).astype("<u4")
        else:  # noisy measurements
            col = (rng.normal(scale, scale / 10, rows)).astype("<f4").view("<u4")
        cols.append(col)
    cols.append(np.zeros(rows, dtype="<u4"))  # padding
    table = np.stack(cols, axis=1).astype("<u4").tobytes()
    return table[:size]


def _segment(rng, vocab, kind, size):
    if kind == 0:
        return _text(rng, vocab, size)
    if kind == 1:
        return _markup(rng, vocab, size)
    if kind == 2:
        return _records(rng, size)
    return rng.bytes(size)


def generate_file(rng, size, file_type, shared_vocab):
    """Bytes of one synthetic file of exactly ``size`` bytes."""
    weights = np.array(FILE_TYPES[file_type])
    own_vocab = _vocabulary(rng, int(rng.integers(300, 1500)))
    borrowed = min(len(own_vocab) // 2, len(shared_vocab))
    vocab = own_vocab + list(rng.choice(shared_vocab, size=borrowed, replace=False))
    out = bytearray()
    while len(out) < size:
        kind = int(rng.choice(4, p=weights))
        seg = int(min(size - len(out), rng.integers(4096, max(8192, size // 4))))
        out += _segment(rng, vocab, kind, seg)
    return bytes(out[:size])


def make_corpus(directory, n_files=DEFAULT_FILES, min_size=MIN_SIZE, max_size=MAX_SIZE, seed=0):
    """Write ``n_files`` synthetic files plus a JSON manifest; return the manifest.

    Sizes are log-uniform in [min_size, max_size].
    """
    os.makedirs(directory, exist_ok=True)
    rng = np.random.default_rng(seed)
    shared_vocab = _vocabulary(rng, 3000)
    types = list(TYPE_MIX)
    probs = np.array([TYPE_MIX[t] for t in types])
    width = max(3, len(str(n_files - 1)))
    manifest = []
    for i in range(n_files):
        size = int(math.exp(rng.uniform(math.log(min_size), math.log(max_size))))
        file_type = types[int(rng.choice(len(types), p=probs))]
        data = generate_file(rng, size, file_type, shared_vocab)
        name = f"f{i:0{width}d}.{file_type}"
        with open(os.path.join(directory, name), "wb") as fh:
            fh.write(data)
        manifest.append(CorpusFile(name, size, round(shannon_entropy(data), 4), file_type))
    with open(os.path.join(directory, MANIFEST), "w") as fh:
        json.dump({"seed": seed, "files": [asdict(f) for f in manifest]}, fh, indent=1)
    return manifest


def load_corpus(directory):
    """(name, bytes) pairs for every regular file in ``directory``, sorted by name.

    Works on any directory (e.g. a t5 checkout); the manifest, if present, is
    not treated as corpus content.
    """
    out = []
    for name in sorted(os.listdir(directory)):
        path = os.path.join(directory, name)
        if name == MANIFEST or not os.path.isfile(path) or os.path.islink(path):
            continue
        with open(path, "rb") as fh:
            out.append((name, fh.read()))
    return out


def entropy_summary(corpus):
    ent = np.array([shannon_entropy(data) for _, data in corpus])
    return {
        "average": float(ent.mean()),
        "median": float(np.median(ent)),
        "min": float(ent.min()),
        "max": float(ent.max()),
    }
