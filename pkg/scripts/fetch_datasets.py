"""Download the SNAP edge lists used by the dataset-gated acceptance tests.

    python scripts/fetch_datasets.py [DEST]

DEST defaults to ./data; point DENSEDP_DATA_DIR at it if you choose another.
"""

import shutil
import sys
import urllib.request
import zipfile
from pathlib import Path

GRQC_URL = "https://snap.stanford.edu/data/ca-GrQc.txt.gz"
TWITCH_URL = "https://snap.stanford.edu/data/twitch.zip"
ENGB_MEMBER = "twitch/ENGB/musae_ENGB_edges.csv"


def fetch(url: str, dest: Path) -> Path:
    if not dest.exists():
        print(f"downloading {url}")
        with urllib.request.urlopen(url) as r, open(dest, "wb") as f:
            shutil.copyfileobj(r, f)
    return dest


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    dest = Path(argv[0] if argv else "data")
    dest.mkdir(parents=True, exist_ok=True)
    fetch(GRQC_URL, dest / "ca-GrQc.txt.gz")
    archive = fetch(TWITCH_URL, dest / "twitch.zip")
    with zipfile.ZipFile(archive) as z, z.open(ENGB_MEMBER) as src, open(dest / "musae_ENGB_edges.csv", "wb") as out:
        shutil.copyfileobj(src, out)
    print(f"datasets in {dest.resolve()}")


if __name__ == "__main__":
    main()
