#!/usr/bin/env python3
"""Build data/mnist5k/*-idx?-ubyte from the 5000-sample MNIST subset that
ships inside the mlxtend wheel (mlxtend/data/data/mnist_5k.csv.gz).

Usage:
    pip download mlxtend --no-deps -d /tmp/mlx
    python3 tools/make_mnist5k.py /tmp/mlx/mlxtend-*.whl data/mnist5k
"""

import gzip
import struct
import sys
import zipfile
from pathlib import Path


def main(wheel: str, out_dir: str) -> None:
    with zipfile.ZipFile(wheel) as z:
        text = gzip.decompress(z.read("mlxtend/data/data/mnist_5k.csv.gz")).decode()

    pixels = bytearray()
    labels = bytearray()
    for line in text.splitlines():
        fields = [int(float(v)) for v in line.split(",")]
        pixels.extend(fields[:-1])
        labels.append(fields[-1])

    n = len(labels)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "images-idx3-ubyte").write_bytes(struct.pack(">IIII", 0x803, n, 28, 28) + pixels)
    (out / "labels-idx1-ubyte").write_bytes(struct.pack(">II", 0x801, n) + labels)
    print(f"wrote {n} images to {out}")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
