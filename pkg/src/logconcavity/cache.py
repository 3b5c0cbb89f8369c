"""Append-only on-disk cache of coefficient tables.

Each record is ``LCGF <length>\\n<json payload>\\n``.  The payload carries the
key, the coefficients as decimal numerator/denominator strings, a SHA-256
checksum over key and coefficients, and the writing tool's version.  Records
that are truncated, unparsable or fail their checksum are skipped.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from logconcavity.arith import FamilyKind, FamilySpec
from logconcavity.series import CoefficientTable, SeriesKind, p_table, q_table

# coefficients run to tens of thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

MAGIC = b"LCGF "
TOOL_VERSION = "0.1.0"


def _digest(key: dict, coeffs: list[list[str]]) -> str:
    blob = json.dumps({"key": key, "coeffs": coeffs}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    family: str
    d: int
    kind: str
    N: int
    coeffs: tuple[tuple[str, str], ...]
    checksum: str
    tool_version: str = TOOL_VERSION

    @property
    def key(self) -> dict:
        return {"family": self.family, "d": self.d, "kind": self.kind, "N": self.N}

    @classmethod
    def from_table(cls, table: CoefficientTable) -> CacheEntry:
        if table.family is None or table.family.kind is FamilyKind.CUSTOM:
            raise ValueError("only sigma/psi family tables are cached")
        coeffs = [[str(c.numerator), str(c.denominator)] for c in table.coeffs]
        entry = cls(table.family.kind.value, table.family.d, table.kind.value, table.order, (), "")
        return cls(
            entry.family, entry.d, entry.kind, entry.N,
            tuple(tuple(c) for c in coeffs), _digest(entry.key, coeffs),
        )

    def valid(self) -> bool:
        coeffs = [list(c) for c in self.coeffs]
        return len(coeffs) == self.N + 1 and _digest(self.key, coeffs) == self.checksum

    def to_table(self) -> CoefficientTable:
        spec = FamilySpec(FamilyKind(self.family), self.d)
        coeffs = tuple(Fraction(int(num), int(den)) for num, den in self.coeffs)
        return CoefficientTable(spec, SeriesKind(self.kind), self.N, coeffs)

    def to_bytes(self) -> bytes:
        doc = {
            "key": self.key,
            "coeffs": [list(c) for c in self.coeffs],
            "checksum": self.checksum,
            "tool_version": self.tool_version,
        }
        payload = json.dumps(doc, separators=(",", ":")).encode()
        return MAGIC + str(len(payload)).encode() + b"\n" + payload + b"\n"

    @classmethod
    def from_payload(cls, payload: bytes) -> CacheEntry:
        doc = json.loads(payload)
        key = doc["key"]
        return cls(
            key["family"], int(key["d"]), key["kind"], int(key["N"]),
            tuple((str(n), str(m)) for n, m in doc["coeffs"]),
            doc["checksum"], doc.get("tool_version", ""),
        )


class CoefficientCache:
    def __init__(self, path: str | os.PathLike) -> None:
        self.path = os.fspath(path)

    def entries(self) -> Iterator[CacheEntry]:
        """Valid records in file order."""
        try:
            with open(self.path, "rb") as fh:
                fcntl.flock(fh, fcntl.LOCK_SH)
                data = fh.read()
        except FileNotFoundError:
            return
        pos = 0
        while True:
            start = data.find(MAGIC, pos)
            if start < 0:
                return
            eol = data.find(b"\n", start)
            if eol < 0:
                return
            try:
                length = int(data[start + len(MAGIC):eol])
            except ValueError:
                pos = start + 1
                continue
            payload = data[eol + 1:eol + 1 + length]
            if len(payload) < length:
                return
            pos = eol + 1 + length
            try:
                entry = CacheEntry.from_payload(payload)
            except (ValueError, KeyError, TypeError):
                continue
            if entry.valid():
                yield entry

    def longest(self, spec: FamilySpec, kind: SeriesKind) -> CoefficientTable | None:
        best = None
        for e in self.entries():
            if e.family == spec.kind.value and e.d == spec.d and e.kind == kind.value:
                if best is None or e.N > best.N:
                    best = e
        return best.to_table() if best else None

    def lookup(self, spec: FamilySpec, kind: SeriesKind, N: int) -> CoefficientTable | None:
        table = self.longest(spec, kind)
        if table is None or table.order < N:
            return None
        return table.truncate(N)

    def store(self, table: CoefficientTable) -> None:
        record = CacheEntry.from_table(table).to_bytes()
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            fcntl.flock(fd, fcntl.LOCK_EX)
            view = memoryview(record)
            while view:
                view = view[os.write(fd, view):]
        finally:
            os.close(fd)


def _build(spec: FamilySpec, kind: SeriesKind, N: int, prefix=None) -> CoefficientTable:
    if kind is SeriesKind.EXPONENTIAL:
        return p_table(spec, N, prefix=prefix)
    if kind is SeriesKind.GEOMETRIC:
        return q_table(spec, N, prefix=prefix)
    raise ValueError(f"no family table of kind {kind}")


def cached_table(
    spec: FamilySpec,
    kind: SeriesKind,
    N: int,
    cache: CoefficientCache | None = None,
    checkpoint: int = 500,
) -> CoefficientTable:
    """Table of order ``N``, resumed from and checkpointed to ``cache``."""
    if cache is None:
        return _build(spec, kind, N)
    prefix = cache.longest(spec, kind)
    if prefix is not None and prefix.order >= N:
        return prefix.truncate(N)
    table = prefix
    order = prefix.order if prefix else 0
    while table is None or order < N:
        order = min(N, order + checkpoint)
        table = _build(spec, kind, order, prefix=table.coeffs if table else None)
        cache.store(table)
    return table
