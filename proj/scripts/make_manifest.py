#!/usr/bin/env python3
"""Build a gallery/probe manifest TSV from image directories.

The evaluation tools consume a three-column TSV: path, subject, split
(gallery|probe), with relative paths resolved against the manifest's own
directory. This script walks one directory per split and derives subject
ids from the layout:

  * --subject-regex RE      first capture group applied to the file stem
  * <root>/<subject>/<img>  subject = first directory level under the root
  * flat directories        subject = stem up to the first '_' (whole stem
                            if there is none)

Only .pgm and .png files are picked up, sorted for determinism.

Examples:
  make_manifest.py --gallery-dir ufi/train --probe-dir ufi/test \
      --out ufi/manifest.tsv
  make_manifest.py --gallery-dir feret/fa --probe-dir feret/fb \
      --subject-regex '^(\\d+)' --out feret/manifest.tsv
"""

import argparse
import re
import sys
from pathlib import Path

EXTENSIONS = {".pgm", ".png"}


def iter_images(root: Path):
    for path in sorted(root.rglob("*")):
        if path.is_file() and path.suffix.lower() in EXTENSIONS:
            yield path


def subject_of(path: Path, root: Path, subject_re) -> str:
    if subject_re is not None:
        match = subject_re.search(path.stem)
        if not match or not match.group(1):
            sys.exit(f"error: --subject-regex does not match '{path.stem}'")
        return match.group(1)
    relative = path.relative_to(root)
    if len(relative.parts) > 1:
        return relative.parts[0]
    return path.stem.split("_", 1)[0]


def collect(root: Path, split: str, subject_re, manifest_dir: Path):
    rows = []
    for path in iter_images(root):
        subject = subject_of(path, root, subject_re)
        try:
            rel = path.resolve().relative_to(manifest_dir)
            shown = rel.as_posix()
        except ValueError:
            shown = str(path.resolve())
        rows.append((shown, subject, split))
    if not rows:
        sys.exit(f"error: no .pgm/.png images under {root}")
    return rows


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--gallery-dir", required=True, type=Path)
    parser.add_argument("--probe-dir", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument(
        "--subject-regex",
        help="regex whose first capture group is the subject id, "
        "applied to the file name without extension",
    )
    args = parser.parse_args()

    subject_re = re.compile(args.subject_regex) if args.subject_regex else None
    manifest_dir = args.out.resolve().parent

    rows = collect(args.gallery_dir, "gallery", subject_re, manifest_dir)
    rows += collect(args.probe_dir, "probe", subject_re, manifest_dir)

    gallery_subjects = {s for _, s, split in rows if split == "gallery"}
    orphans = {s for _, s, split in rows if split == "probe"} - gallery_subjects
    if orphans:
        sys.exit(
            "error: probe subjects without gallery images "
            f"(closed-set required): {', '.join(sorted(orphans))}"
        )

    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for row in rows:
            out.write("\t".join(row) + "\n")
    gallery = sum(1 for r in rows if r[2] == "gallery")
    print(
        f"wrote {args.out}: {gallery} gallery + {len(rows) - gallery} probe "
        f"images, {len(gallery_subjects)} subjects"
    )


if __name__ == "__main__":
    main()
