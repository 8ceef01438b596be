"""Lempel-Ziv Jaccard Distance (LZJD) similarity digests."""

__version__ = "0.1.0"

from .digest import (
    DEFAULT_K,
    DEFAULT_SEED,
    Digest,
    deserialize,
    digest_bytes,
    digest_file,
    digest_files,
    digest_stream,
    k_smallest,
    load_db,
    read_digests,
    serialize,
    write_db,
)
from .errors import (
    CorruptDigestError,
    DigestFormatError,
    IncompatibleDigestsError,
    InvalidNameError,
    LZJDError,
    UndefinedContainmentError,
    UnsupportedFormatError,
    UnsupportedVersionError,
)
from .lz_builder import HashedIntSet, LZSetResult, build_lz_set
from .rolling_hash import RollingHash
from .similarity import (
    SimilarityReport,
    adjusted_fragment_score,
    compare,
    containment,
    distance,
    intersection_size,
    jaccard,
    pairwise_jaccard,
    pairwise_scores,
    score,
)
