"""Writes bridge_sample.ftsvec and bridge_sample.jsonl.

Stands in for the embedding bridge: 100 cleaned sentences (with repeats)
encoded by a deterministic hashing embedder, unit-normalized, serialized
with an independent FTSVEC01 writer built on `struct`.
"""
import hashlib
import json
import math
import struct
from pathlib import Path

DIM = 16
HERE = Path(__file__).resolve().parent

BASE = [
    "revenue grew in the european segment",
    "cash and cash equivalents exceeded our capital requirements",
    "we issued new debt to repurchase shares",
    "the pandemic disrupted shipments in asia",
    "our audit committee reviewed internal control",
    "wage and salary increases weighed on spending",
    "carbon emission targets tightened this period",
    "solar and wind generation added capacity",
    "a patent lawsuit remains pending",
    "federal regulation could change our tax position",
]


def embed(text):
    vec = [0.0] * DIM
    for word in text.split():
        digest = hashlib.sha256(word.encode("utf-8")).digest()
        for d in range(DIM):
            vec[d] += (digest[d] - 127.5) / 127.5
    norm = math.sqrt(sum(v * v for v in vec))
    return [v / norm for v in vec]


def main():
    rows = []
    for i in range(100):
        # every tenth sentence repeats an earlier one verbatim
        text = BASE[i % 10] if i % 10 == 9 or i < 10 else f"{BASE[i % 10]} variant {i}"
        rows.append((f"doc{i // 10:02d}#{i % 10}", text))
    with open(HERE / "bridge_sample.jsonl", "w", encoding="utf-8") as fh:
        for key, text in rows:
            fh.write(json.dumps({"key": key, "text": text}) + "\n")

    out = bytearray(b"FTSVEC01")
    out += struct.pack("<IQ", DIM, len(rows))
    for _, text in rows:
        out += struct.pack(f"<{DIM}f", *embed(text))
    for key, _ in rows:
        raw = key.encode("utf-8")
        out += struct.pack("<I", len(raw)) + raw
    (HERE / "bridge_sample.ftsvec").write_bytes(bytes(out))


if __name__ == "__main__":
    main()
