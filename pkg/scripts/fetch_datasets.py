#!/usr/bin/env python3
"""Fetch the four benchmark graphs and normalize them to edge lists.

The datasets are not vendored (licensing); this script downloads them
from their public homes, converts each to a plain two-token edge list
under data/datasets/, verifies the expected node/edge counts after
normalization (duplicates collapsed, self-loops dropped), and prints a
sha256 for the record.

  polbooks  co-purchased US politics books (V. Krebs), 105 nodes / 441 edges
  usair     500 busiest US airports (Colizza et al. 2007), 500 / 2980
  grid      western US power grid (Watts & Strogatz), 4941 / 6594
  lastfm    LastFM Asia social network (SNAP), 7624 / 27806

Usage:
    python3 scripts/fetch_datasets.py [--only NAME ...] [--usair-from FILE]

The USAir file has no single stable canonical URL; if every mirror
fails, pass --usair-from pointing at a local copy of the 500-airport
edge list (columns: source target [weight]).
"""

from __future__ import annotations

import argparse
import hashlib
import io
import re
import sys
import urllib.request
import zipfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "data" / "datasets"

EXPECTED = {
    "polbooks": (105, 441),
    "usair": (500, 2980),
    "grid": (4941, 6594),
    "lastfm": (7624, 27806),
}

USER_AGENT = "Mozilla/5.0 (dataset fetch script)"


def download(url: str) -> bytes:
    req = urllib.request.Request(url, headers={"User-Agent": USER_AGENT})
    with urllib.request.urlopen(req, timeout=60) as resp:
        return resp.read()


def parse_gml_edges(text: str) -> list[tuple[str, str]]:
    """Minimal GML reader: pull (source, target) out of edge blocks."""
    edges = []
    for block in re.findall(r"edge\s*\[(.*?)\]", text, flags=re.S):
        src = re.search(r"source\s+(\S+)", block)
        dst = re.search(r"target\s+(\S+)", block)
        if src and dst:
            edges.append((src.group(1), dst.group(1)))
    return edges


def normalize(edges: list[tuple[str, str]]) -> list[tuple[str, str]]:
    """Drop self-loops, collapse duplicates (either direction), keep order."""
    seen = set()
    out = []
    for a, b in edges:
        if a == b:
            continue
        key = (a, b) if a <= b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        out.append((a, b))
    return out


def write_edge_list(name: str, edges: list[tuple[str, str]]) -> Path:
    edges = normalize(edges)
    nodes = set()
    for a, b in edges:
        nodes.update((a, b))
    n, m = EXPECTED[name]
    if (len(nodes), len(edges)) != (n, m):
        raise SystemExit(
            f"{name}: got {len(nodes)} nodes / {len(edges)} edges, expected {n} / {m}; "
            "source file layout may have changed"
        )
    path = OUT / f"{name}.txt"
    path.write_text("".join(f"{a} {b}\n" for a, b in edges), encoding="utf-8")
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    print(f"{name}: {n} nodes, {m} edges -> {path}")
    print(f"{name}: sha256 {digest}")
    return path


def fetch_gml_zip(urls: list[str], member_suffix: str) -> str:
    last = None
    for url in urls:
        try:
            blob = download(url)
            with zipfile.ZipFile(io.BytesIO(blob)) as zf:
                for member in zf.namelist():
                    if member.endswith(member_suffix):
                        return zf.read(member).decode("utf-8", errors="replace")
            last = f"{url}: no member ending in {member_suffix}"
        except Exception as exc:  # noqa: BLE001 - report and try next mirror
            last = f"{url}: {exc}"
    raise RuntimeError(last or "no URL worked")


def fetch_polbooks() -> None:
    text = fetch_gml_zip(
        [
            "http://www-personal.umich.edu/~mejn/netdata/polbooks.zip",
            "https://websites.umich.edu/~mejn/netdata/polbooks.zip",
        ],
        "polbooks.gml",
    )
    write_edge_list("polbooks", parse_gml_edges(text))


def fetch_grid() -> None:
    text = fetch_gml_zip(
        [
            "http://www-personal.umich.edu/~mejn/netdata/power.zip",
            "https://websites.umich.edu/~mejn/netdata/power.zip",
        ],
        "power.gml",
    )
    write_edge_list("grid", parse_gml_edges(text))


def fetch_lastfm() -> None:
    blob = download("https://snap.stanford.edu/data/lastfm_asia.zip")
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        member = next(m for m in zf.namelist() if m.endswith("lastfm_asia_edges.csv"))
        text = zf.read(member).decode("utf-8")
    edges = []
    for line in text.splitlines()[1:]:  # skip the node_1,node_2 header
        if not line.strip():
            continue
        a, b = line.split(",")
        edges.append((a.strip(), b.strip()))
    write_edge_list("lastfm", edges)


def fetch_usair(local: str | None) -> None:
    candidates = [
        "https://sites.google.com/site/cxnets/US_largest500_airportnetwork.txt",
        "http://www.sociopatterns.org/wp-content/uploads/US_largest500_airportnetwork.txt",
    ]
    text = None
    if local:
        text = Path(local).read_text(encoding="utf-8", errors="replace")
    else:
        for url in candidates:
            try:
                text = download(url).decode("utf-8", errors="replace")
                break
            except Exception as exc:  # noqa: BLE001
                print(f"usair: {url} failed: {exc}", file=sys.stderr)
    if text is None:
        raise SystemExit(
            "usair: no mirror reachable; rerun with --usair-from FILE "
            "(the 500-airport network of Colizza et al. 2007)"
        )
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) < 2 or parts[0].startswith(("#", "%")):
            continue
        edges.append((parts[0], parts[1]))
    write_edge_list("usair", edges)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", nargs="*", choices=sorted(EXPECTED), default=None)
    ap.add_argument("--usair-from", default=None, help="local USAir edge list file")
    args = ap.parse_args()
    OUT.mkdir(parents=True, exist_ok=True)
    wanted = set(args.only) if args.only else set(EXPECTED)
    failures = []
    for name, fn in (
        ("polbooks", fetch_polbooks),
        ("grid", fetch_grid),
        ("lastfm", fetch_lastfm),
    ):
        if name in wanted:
            try:
                fn()
            except Exception as exc:  # noqa: BLE001
                failures.append(f"{name}: {exc}")
                print(f"{name}: FAILED ({exc})", file=sys.stderr)
    if "usair" in wanted:
        try:
            fetch_usair(args.usair_from)
        except SystemExit as exc:
            failures.append(str(exc))
            print(exc, file=sys.stderr)
    if failures:
        print(f"\n{len(failures)} dataset(s) missing; tests that need them will skip.")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
