"""Line-oriented text formats for tensors and vectors.

Tensor files::

    # comment
    order 4 dim 4
    1 1 1 1 10
    1 1 1 2 1.0

Every record is ``i_1 ... i_m value`` with 1-based indices; unlisted entries
are zero.  Vector files hold one number per line.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DuplicateIndex, OutOfRange, ParseError
from .tensor import DenseTensor, rank, unrank


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_float(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", lineno) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value: {token!r}", lineno)
    return value


def parse_tensor_text(text: str) -> DenseTensor:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing header 'order <m> dim <n>'") from None
    parts = header.split()
    if len(parts) != 4 or parts[0] != "order" or parts[2] != "dim":
        raise ParseError(f"expected 'order <m> dim <n>', got {header!r}", lineno)
    try:
        m, n = int(parts[1]), int(parts[3])
    except ValueError:
        raise ParseError(f"order and dim must be integers: {header!r}", lineno) from None
    if m < 2 or n < 1:
        raise ParseError(f"need order >= 2 and dim >= 1, got order {m} dim {n}", lineno)

    data = np.zeros(n**m)
    seen: dict[int, int] = {}
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != m + 1:
            raise ParseError(f"expected {m} indices and a value, got {len(tokens)} fields", lineno)
        try:
            index = [int(t) for t in tokens[:m]]
        except ValueError:
            raise ParseError(f"indices must be integers: {line!r}", lineno) from None
        if any(not 1 <= c <= n for c in index):
            raise OutOfRange(f"index {tuple(index)} outside [1, {n}]", lineno)
        offset = rank(index, n)
        if offset in seen:
            raise DuplicateIndex(f"index {tuple(index)} already set on line {seen[offset]}", lineno)
        seen[offset] = lineno
        data[offset] = _parse_float(tokens[m], lineno)
    return DenseTensor(m, n, data)


def parse_tensor(path) -> DenseTensor:
    return parse_tensor_text(Path(path).read_text())


def serialize_tensor(A: DenseTensor, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"order {A.order} dim {A.dim}")
    flat = A.entries
    for offset in np.flatnonzero((flat != 0) | np.signbit(flat)):
        index = " ".join(str(c) for c in unrank(int(offset), A.dim, A.order))
        out.append(f"{index} {float(flat[offset])!r}")
    return "\n".join(out) + "\n"


def write_tensor(A: DenseTensor, path, comment: str | None = None) -> None:
    Path(path).write_text(serialize_tensor(A, comment))


def parse_vector_text(text: str) -> np.ndarray:
    values = []
    for lineno, line in _content_lines(text):
        if len(line.split()) != 1:
            raise ParseError("expected one number per line", lineno)
        values.append(_parse_float(line, lineno))
    return np.array(values, dtype=np.float64)


def parse_vector(path) -> np.ndarray:
    return parse_vector_text(Path(path).read_text())


def serialize_vector(v) -> str:
    return "".join(f"{float(x)!r}\n" for x in np.asarray(v, dtype=np.float64))


def write_vector(v, path) -> None:
    Path(path).write_text(serialize_vector(v))
