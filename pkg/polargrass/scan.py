# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
"""Exhaustive walk over all nonzero messages of a linear code.

Messages are visited in reflected q-ary Gray order, so consecutive codewords
differ by one scaled generator row. The message space is cut into blocks by
fixing the high digits; every block walks the low digits independently and
blocks can run in a process pool. Block results are merged in block order.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from polargrass.errors import BudgetExceeded, GrayWalkMismatch
from polargrass.exactla import coefficient_tuples, matmul_arrays, MatrixGF, pack_rows
from polargrass.ffield import FieldSpec

DEFAULT_BUDGET = 2**24
DEFAULT_WORKERS = 1

Message = Tuple[int, ...]


class ScanResult(NamedTuple):
    d_min: int
    min_weight_count: int
    witnesses: List[Message]
    histogram: Dict[int, int]
    evaluated: int


class _Block(NamedTuple):
    field: FieldSpec
    rows: np.ndarray
    walk: int
    prefix: Message


class _BlockResult(NamedTuple):
    best: int
    witnesses: List[Message]
    histogram: Dict[int, int]
    evaluated: int


def gray_sequence(q: int, length: int) -> List[Message]:
    """All of GF(q)^length in reflected Gray order; digit 0 changes fastest."""
    digits = [0] * length
    direction = [1] * length
    out = [tuple(digits)]
    for t in range(1, q**length):
        _gray_step(q, t, digits, direction)
        out.append(tuple(digits))
    return out


def _trailing_zeros(t: int, q: int) -> int:
    pos = 0
    while t % q == 0:
        t //= q
        pos += 1
    return pos


def _gray_step(q: int, t: int, digits: List[int], direction: List[int]) -> Tuple[int, int, int]:
    pos = _trailing_zeros(t, q)
    old = digits[pos]
    new = old + direction[pos]
    digits[pos] = new
    if new == 0 or new == q - 1:
        direction[pos] = -direction[pos]
    return pos, old, new


def check_budget(q: int, k: int, budget: int) -> None:
    if q**k > budget:
        raise BudgetExceeded(
            f"Exhaustive scan needs {q}^{k} = {q**k} codewords, over the budget of {budget}; use --method structural"
        )


def _encode(field: FieldSpec, rows: np.ndarray, message: Message) -> np.ndarray:
    return matmul_arrays(field, np.asarray(message, dtype=np.int64)[None, :], rows)[0]


def _record(result: Dict, weight: int, message: Message) -> None:
    result["histogram"][weight] = result["histogram"].get(weight, 0) + 1
    if weight < result["best"]:
        result["best"] = weight
        result["witnesses"] = []
    if weight == result["best"]:
        result["witnesses"].append(message)


def _scan_binary(block: _Block) -> _BlockResult:
    packed = pack_rows(MatrixGF(block.field, block.rows))
    k = len(packed)
    prefix_mask = sum(1 << (block.walk + i) for i, d in enumerate(block.prefix) if d)
    cw = 0
    for i, word in enumerate(packed[block.walk :]):
        if block.prefix[i]:
            cw ^= word
    msg = prefix_mask
    best = block.rows.shape[1] + 1
    witnesses: List[int] = []
    hist = [0] * (block.rows.shape[1] + 1)
    evaluated = 0
    if msg:
        w = cw.bit_count()
        hist[w] += 1
        best, witnesses = w, [msg]
        evaluated += 1
    for t in range(1, 1 << block.walk):
        pos = (t & -t).bit_length() - 1
        cw ^= packed[pos]
        msg ^= 1 << pos
        w = cw.bit_count()
        hist[w] += 1
        evaluated += 1
        if w <= best:
            if w < best:
                best = w
                witnesses = []
            witnesses.append(msg)
    final = tuple((msg >> i) & 1 for i in range(k))
    expected = pack_rows(MatrixGF(block.field, _encode(block.field, block.rows, final)[None, :]))[0]
    if expected != cw:
        raise GrayWalkMismatch(f"Walked codeword differs from the encoding of {final}")
    return _BlockResult(
        best=best,
        witnesses=[tuple((m >> i) & 1 for i in range(k)) for m in witnesses],
        histogram={w: c for w, c in enumerate(hist) if c},
        evaluated=evaluated,
    )


def _scan_general(block: _Block) -> _BlockResult:
    field = block.field
    q = field.q
    rows = block.rows
    # scaled[pos, c] = c * rows[pos]
    scaled = np.asarray(
        field.mul(field.elements()[None, :, None], rows[:, None, :]), dtype=np.int64
    )
    digits = [0] * block.walk
    direction = [1] * block.walk
    cw = _encode(field, rows, tuple(digits) + block.prefix)
    result = {"best": rows.shape[1] + 1, "witnesses": [], "histogram": {}}
    evaluated = 0
    if any(block.prefix):
        _record(result, int(np.count_nonzero(cw)), tuple(digits) + block.prefix)
        evaluated += 1
    for t in range(1, q**block.walk):
        pos, old, new = _gray_step(q, t, digits, direction)
        cw = field.add(cw, scaled[pos, field.sub(new, old)])
        _record(result, int(np.count_nonzero(cw)), tuple(digits) + block.prefix)
        evaluated += 1
    final = tuple(digits) + block.prefix
    if not np.array_equal(_encode(field, rows, final), cw):
        raise GrayWalkMismatch(f"Walked codeword differs from the encoding of {final}")
    return _BlockResult(result["best"], result["witnesses"], result["histogram"], evaluated)


def _scan_block(block: _Block) -> _BlockResult:
    if block.field.q == 2:
        return _scan_binary(block)
    return _scan_general(block)


def _split(q: int, k: int, workers: int) -> int:
    """Number of fixed high digits: enough blocks to keep every worker busy."""
    if workers <= 1:
        return 0
    return min(k, math.ceil(math.log(4 * workers, q)))


def scan_code(
    gen: MatrixGF,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
    fixed_digits: Optional[int] = None,
) -> ScanResult:
    """Weights of all q^K - 1 nonzero codewords of the code generated by gen.

    Args:
        gen (MatrixGF): K x N generator matrix of full row rank.
        budget (int): maximal number of codewords, q^K included.
        workers (int): process count; 1 scans in-process.
        fixed_digits (int, optional): number of high message digits fixed per
            block. Defaults to a value derived from the worker count.
    """
    field = gen.field
    q, k = field.q, gen.rows
    check_budget(q, k, budget)
    fixed = _split(q, k, workers) if fixed_digits is None else fixed_digits
    walk = k - fixed
    blocks = [
        _Block(field, gen.entries, walk, tuple(int(d) for d in prefix))
        for prefix in coefficient_tuples(q, fixed)
    ]
    logging.debug(f"Scanning {q}^{k} messages over {field} in {len(blocks)} blocks with {workers} workers")
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_block, blocks))
    else:
        results = [_scan_block(b) for b in blocks]

    best = min(r.best for r in results)
    histogram: Dict[int, int] = {}
    for r in results:
        for w, c in r.histogram.items():
            histogram[w] = histogram.get(w, 0) + c
    witnesses = sorted(m for r in results if r.best == best for m in r.witnesses)
    evaluated = sum(r.evaluated for r in results)
    if evaluated != q**k - 1:
        raise GrayWalkMismatch(f"Visited {evaluated} messages, expected {q**k - 1}")
    return ScanResult(
        d_min=best,
        min_weight_count=len(witnesses),
        witnesses=witnesses,
        histogram=dict(sorted(histogram.items())),
        evaluated=evaluated,
    )
