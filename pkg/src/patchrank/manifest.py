"""Flat key=value run manifests written alongside every output image.

A manifest records everything needed to reproduce an output byte-exactly:
the subcommand, all numeric parameters, the seed, and the file paths.
"""

from __future__ import annotations

import os


def write_manifest(path, entries: dict) -> None:
    path = os.fspath(path)
    lines = []
    for key, value in entries.items():
        text = str(value)
        if "\n" in key or "=" in key or "\n" in text:
            raise ValueError(f"manifest entry {key!r} not representable as key=value")
        lines.append(f"{key}={text}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_manifest(path) -> dict:
    entries = {}
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed manifest line {line!r}")
            entries[key] = value
    return entries


def manifest_path_for(image_path) -> str:
    return os.fspath(image_path) + ".manifest"
