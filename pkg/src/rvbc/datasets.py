"""Registry and downloader for the SNAP networks used in the benchmarks.

Nothing is vendored: ``fetch`` downloads the gzipped edge list and writes a
plain two-column copy (the signed networks carry a third ``sign`` column,
which is dropped).
"""

from __future__ import annotations

import gzip
import os
import shutil
import tempfile
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

DATA_ENV = "RVBC_DATA_DIR"


@dataclass(frozen=True)
class Dataset:
    name: str
    url: str
    vertices: int
    edges: int


_SNAP = "https://snap.stanford.edu/data/"

# vertex/edge counts as published alongside the benchmark results
DATASETS = {
    d.name: d
    for d in [
        Dataset("amazon0302", _SNAP + "amazon0302.txt.gz", 262_111, 1_234_877),
        Dataset("com-amazon", _SNAP + "bigdata/communities/com-amazon.ungraph.txt.gz", 334_863, 925_872),
        Dataset("com-dblp", _SNAP + "bigdata/communities/com-dblp.ungraph.txt.gz", 317_080, 1_049_866),
        Dataset("email-EuAll", _SNAP + "email-EuAll.txt.gz", 224_832, 340_795),
        Dataset("p2p-Gnutella31", _SNAP + "p2p-Gnutella31.txt.gz", 62_586, 147_892),
        Dataset("soc-sign-Slashdot090221", _SNAP + "soc-sign-Slashdot090221.txt.gz", 82_144, 549_202),
        Dataset("soc-sign-epinions", _SNAP + "soc-sign-epinions.txt.gz", 131_828, 841_372),
        Dataset("web-NotreDame", _SNAP + "web-NotreDame.txt.gz", 325_729, 1_497_134),
    ]
}


def data_dir(override: Optional[os.PathLike] = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.environ.get(DATA_ENV, "data"))


def locate(name: str, directory: Optional[os.PathLike] = None) -> Optional[Path]:
    """Path of an already fetched dataset, or ``None``."""
    base = data_dir(directory)
    for candidate in (base / f"{name}.txt", base / f"{name}.txt.gz"):
        if candidate.is_file():
            return candidate
    return None


def fetch(name: str, directory: Optional[os.PathLike] = None, timeout: float = 60.0) -> Path:
    """Download ``name`` (if not present) and return the two-column edge list."""
    ds = DATASETS[name]
    found = locate(name, directory)
    if found is not None:
        return found
    base = data_dir(directory)
    base.mkdir(parents=True, exist_ok=True)
    target = base / f"{name}.txt"
    with tempfile.NamedTemporaryFile(suffix=".gz", delete=False) as tmp:
        with urllib.request.urlopen(ds.url, timeout=timeout) as resp:
            shutil.copyfileobj(resp, tmp)
        gz_path = tmp.name
    try:
        with gzip.open(gz_path, "rt", encoding="utf-8") as src, \
                open(target.with_suffix(".part"), "w", encoding="utf-8") as dst:
            for line in src:
                if line.startswith("#"):
                    dst.write(line)
                    continue
                parts = line.split()
                if len(parts) >= 2:
                    dst.write(f"{parts[0]} {parts[1]}\n")
        os.replace(target.with_suffix(".part"), target)
    finally:
        os.unlink(gz_path)
    return target
