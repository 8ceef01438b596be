"""Fixed-size LZJD digests and their text serialization.

A digest keeps the ``k`` smallest hashes of a file's Lempel-Ziv set in
ascending order.  On disk each digest is one colon-delimited line::

    lzjd:1:<k>:<seed>:<input_length>:<escaped name>:<base64 payload>

where the payload is every value as four big-endian bytes.  Digest databases
are plain text files of such lines; blank lines and ``#`` comments are skipped.
"""

import base64
import binascii
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CorruptDigestError,
    DigestFormatError,
    InvalidNameError,
    UnsupportedFormatError,
    UnsupportedVersionError,
)
from .lz_builder import build_lz_set
from .rolling_hash import RollingHash

MAGIC = "lzjd"
VERSION = 1
DEFAULT_K = 1024
DEFAULT_SEED = 0


@dataclass(frozen=True, eq=False)
class Digest:
    name: str
    input_length: int
    values: np.ndarray = field(repr=False)
    k: int = DEFAULT_K
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.uint32)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return int(self.values.size)

    def __eq__(self, other):
        if not isinstance(other, Digest):
            return NotImplemented
        return (
            self.name == other.name
            and self.input_length == other.input_length
            and self.k == other.k
            and self.seed == other.seed
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def header(self):
        return f"{MAGIC}:{VERSION}:{self.k}:{self.seed}"

    def renamed(self, name):
        return Digest(name, self.input_length, self.values, self.k, self.seed)


def k_smallest(values, k):
    """The ``min(k, #distinct)`` smallest distinct values, ascending.

    Uses an O(n) partial selection, then sorts only the selected ``k``.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    values = np.asarray(values, dtype=np.uint32).ravel()
    if values.size <= k:
        return np.unique(values)
    part = np.partition(values, k - 1)[:k]
    out = np.unique(part)
    if out.size < k:
        # duplicates among the selected values; fall back to a full pass
        out = np.unique(values)[:k]
    return out


def digest_stream(source, name="-", k=DEFAULT_K, seed=DEFAULT_SEED):
    """Digest a bytes-like object or binary file object."""
    lz = build_lz_set(source, RollingHash(seed))
    return Digest(name, lz.input_length, k_smallest(lz.values, k), k, seed)


def digest_bytes(data, name="-", k=DEFAULT_K, seed=DEFAULT_SEED):
    return digest_stream(data, name, k, seed)


def digest_file(path, name=None, k=DEFAULT_K, seed=DEFAULT_SEED):
    name = os.fspath(path) if name is None else name
    try:
        with open(path, "rb") as fh:
            return digest_stream(fh, name, k, seed)
    except OSError as e:
        raise OSError(e.errno, e.strerror, name) from e


def digest_files(paths, k=DEFAULT_K, seed=DEFAULT_SEED, workers=1):
    """Digest many files; results keep the input order.

    The compiled hashing loop releases the GIL, so threads scale.
    """
    if workers <= 1:
        return [digest_file(p, k=k, seed=seed) for p in paths]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda p: digest_file(p, k=k, seed=seed), paths))


def escape_name(name):
    if "\n" in name or "\r" in name:
        raise InvalidNameError(f"digest name may not contain a newline: {name!r}")
    return name.replace("%", "%25").replace(":", "%3A")


def unescape_name(text):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "%":
            code = text[i + 1 : i + 3].upper()
            if code == "25":
                out.append("%")
            elif code == "3A":
                out.append(":")
            else:
                raise DigestFormatError(f"bad escape sequence {text[i:i + 3]!r} in name")
            i += 3
        else:
            out.append(c)
            i += 1
    return "".join(out)


def serialize(d):
    payload = base64.b64encode(d.values.astype(">u4").tobytes()).decode("ascii")
    return f"{d.header()}:{d.input_length}:{escape_name(d.name)}:{payload}"


def _parse_int(text, what, lineno):
    try:
        value = int(text)
    except ValueError:
        raise DigestFormatError(f"{what} is not an integer: {text!r}", lineno) from None
    if value < 0:
        raise DigestFormatError(f"{what} is negative: {value}", lineno)
    return value


def deserialize(line, lineno=None):
    line = line.rstrip("\r\n")
    fields = line.split(":")
    if fields[0] != MAGIC:
        if fields[0].startswith("sdbf"):
            raise UnsupportedFormatError(
                "sdbf (sdhash) digests are not supported; expected 'lzjd' lines", lineno
            )
        raise UnsupportedFormatError(f"unknown digest format {fields[0][:16]!r}", lineno)
    if len(fields) < 2 or fields[1] != str(VERSION):
        found = fields[1] if len(fields) > 1 else "<missing>"
        raise UnsupportedVersionError(f"unsupported lzjd digest version {found}", lineno)
    if len(fields) != 7:
        raise DigestFormatError(f"expected 7 fields, found {len(fields)}", lineno)
    _, _, k_text, seed_text, len_text, name_text, payload = fields
    k = _parse_int(k_text, "k", lineno)
    if k < 1:
        raise DigestFormatError("k must be positive", lineno)
    seed = _parse_int(seed_text, "seed", lineno)
    if seed > 0xFFFFFFFF:
        raise DigestFormatError(f"seed {seed} does not fit in 32 bits", lineno)
    input_length = _parse_int(len_text, "input length", lineno)
    try:
        name = unescape_name(name_text)
    except DigestFormatError as e:
        raise DigestFormatError(str(e), lineno) from None
    try:
        raw = base64.b64decode(payload, validate=True)
    except (binascii.Error, ValueError) as e:
        raise DigestFormatError(f"bad base64 payload: {e}", lineno) from None
    if len(raw) % 4:
        raise DigestFormatError(f"payload of {len(raw)} bytes is not a multiple of 4", lineno)
    values = np.frombuffer(raw, dtype=">u4").astype(np.uint32)
    if values.size > k:
        raise CorruptDigestError(f"{values.size} values exceed k={k}", lineno)
    if values.size > 1 and not np.all(values[1:] > values[:-1]):
        raise CorruptDigestError("digest values are not strictly ascending", lineno)
    return Digest(name, input_length, values, k, seed)


def read_digests(lines):
    """Parse an iterable of lines; comments and blank lines are skipped."""
    out = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(deserialize(stripped, lineno))
    return out


def load_db(path):
    with open(path, encoding="utf-8") as fh:
        return read_digests(fh)


def write_db(digests, path):
    with open(path, "w", encoding="utf-8") as fh:
        for d in digests:
            fh.write(serialize(d) + "\n")
