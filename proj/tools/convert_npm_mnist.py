#!/usr/bin/env python3
"""Convert the digits bundled with the npm `mnist` package into IDX files.

The npm package (https://www.npmjs.com/package/mnist) ships 10000 MNIST
digits as JSON arrays of pixel intensities divided by 255 and rounded to
three decimals. Multiplying by 255 and rounding recovers the original bytes.

Usage:
    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/convert_npm_mnist.py package/src/digits data/mnist
"""
import json
import pathlib
import struct
import sys

import numpy as np

SIDE = 28


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    src = pathlib.Path(sys.argv[1])
    dst = pathlib.Path(sys.argv[2])
    dst.mkdir(parents=True, exist_ok=True)

    images, labels = [], []
    for digit in range(10):
        raw = np.asarray(json.loads((src / f"{digit}.json").read_text())["data"])
        count = raw.size // (SIDE * SIDE)
        pixels = np.rint(raw[: count * SIDE * SIDE] * 255.0).astype(np.uint8)
        images.append(pixels.reshape(count, SIDE * SIDE))
        labels.append(np.full(count, digit, dtype=np.uint8))
    images = np.concatenate(images)
    labels = np.concatenate(labels)

    # Fixed permutation so the file is not sorted by class.
    order = np.random.default_rng(20240101).permutation(len(labels))
    images, labels = images[order], labels[order]

    with open(dst / "mnist10k-images-idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(labels), SIDE, SIDE))
        f.write(images.tobytes())
    with open(dst / "mnist10k-labels-idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(labels.tobytes())
    print(f"wrote {len(labels)} examples to {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
