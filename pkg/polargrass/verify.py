# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from polargrass.errors import BudgetExceeded, EmptyReport
from polargrass.ffield import field_for_order
from polargrass.formulas import (
    class_table,
    code_dimension,
    line_count,
    min_distance,
    residual_weight_values,
    STRUCTURED_CLASSES,
    symplectic_dimension,
    symplectic_min_distance,
)
from polargrass.gcode import (
    abc_census,
    build_code,
    build_symplectic_code,
    GrassCode,
    in_annihilator,
    min_distance_exhaustive,
    min_weight_form,
    min_weight_structural_scan,
    MinDistanceResult,
    residual_weights,
    subcode_check,
    weight_direct,
    weight_recursive,
)
from polargrass.grassmann import enumerate_delta_k
from polargrass.quadgeo import (
    AlternatingForm,
    form_radical,
    QuadraticSpace,
    section_census,
    tangent_inclusion,
)
from polargrass.scan import DEFAULT_BUDGET, DEFAULT_WORKERS, scan_code

DEFAULT_SEED = 20240229
DEFAULT_SAMPLES = 100
DEFAULT_RESIDUAL_SAMPLES = 200

SUITES = ("core", "extended")

# every check name maps to exactly one of these
ANCHORS: Dict[str, str] = {
    "parameters": "length (q^{2n}-1)(q^{2n-2}-1)/((q-1)(q^2-1)) and dimension of the line code",
    "dimension": "dimension C(2n+1,k) - C(2n+1,k-2) for q even, C(2n+1,k) for q odd",
    "min_distance": "minimum distance q^{4n-5} - q^{3n-4}",
    "min_weight_count": "number of minimum-weight codewords",
    "structural": "every minimum-weight word has a hyperbolic-cone radical of dimension 2n-1 off the nucleus",
    "odd_profiles": "minimum-weight words fall into more than one radical profile for q odd, n = 2",
    "class_weights": "weights q^{4n-5} - q^{2n-3}, q^{4n-5} -+ q^{3n-4}, q^{4n-5} of the four radical classes",
    "class_census": "point and totally singular line counts of the four radical sections",
    "recursion": "weight = sum of residual weights / (q^2 - 1)",
    "residual_values": "residual weights lie in {0, q^{2n-3} - q^{n-2}, q^{2n-3}, q^{2n-3} + q^{n-2}}",
    "residual_zero": "residual form vanishes iff the tangent hyperplane lies in u^{perp_f}",
    "census_identity": "weight reconstructed from the residual census A, B, C",
    "subcode": "symplectic code is a subcode of codimension 2n",
    "symplectic_min_distance": "symplectic minimum distance q^{4n-5} - q^{2n-3}",
    "spectrum": "weight distribution over all nonzero codewords",
}

CORE_PARAMETERS: Dict[Tuple[int, int], Tuple[int, int]] = {
    (2, 2): (15, 9),
    (2, 3): (315, 20),
    (4, 2): (85, 9),
    (3, 2): (40, 10),
    (8, 2): (585, 9),
}


class CheckRecord(NamedTuple):
    name: str
    anchor: str
    config: Dict[str, int]
    expected: Any
    observed: Any
    passed: bool
    skipped: bool = False
    reason: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return self._asdict()


@dataclass
class VerifyReport:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.records:
            raise EmptyReport(f"Suite {self.suite} produced no checks")

    @property
    def configs(self) -> List[Dict[str, int]]:
        seen: List[Dict[str, int]] = []
        for r in self.records:
            if r.config not in seen:
                seen.append(r.config)
        return seen

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed and not r.skipped)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r.passed and not r.skipped)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.records if r.skipped)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "configs": self.configs,
            "totals": {
                "checks": len(self.records),
                "passed": self.passed,
                "failed": self.failed,
                "skipped": self.skipped,
            },
            "elapsed": round(self.elapsed, 3),
            "checks": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_jsonable)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["name", "anchor", "q", "n", "k", "expected", "observed", "passed", "skipped", "reason"])
        for r in self.records:
            writer.writerow(
                [
                    r.name,
                    r.anchor,
                    r.config.get("q"),
                    r.config.get("n"),
                    r.config.get("k"),
                    json.dumps(r.expected, default=_jsonable),
                    json.dumps(r.observed, default=_jsonable),
                    r.passed,
                    r.skipped,
                    r.reason,
                ]
            )
        return out.getvalue()


def _jsonable(x: Any) -> Any:
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"Cannot serialize {type(x).__name__}")


class _Runner:
    def __init__(self, budget: int, workers: int, seed: int, samples: int, residual_samples: int):
        self.budget = budget
        self.workers = workers
        self.seed = seed
        self.samples = samples
        self.residual_samples = residual_samples
        self.records: List[CheckRecord] = []

    def check(
        self,
        name: str,
        config: Dict[str, int],
        expected: Any,
        observe: Callable[[], Any],
    ) -> Optional[Any]:
        start = time.perf_counter()
        anchor = ANCHORS[name]
        try:
            observed = observe()
        except BudgetExceeded as e:
            self.records.append(
                CheckRecord(name, anchor, config, expected, None, False, True, str(e), time.perf_counter() - start)
            )
            logging.warning(f"Skipped {name} {config}: {e}")
            return None
        except Exception as e:
            self.records.append(
                CheckRecord(
                    name, anchor, config, expected, None, False, False, f"{type(e).__name__}: {e}", time.perf_counter() - start
                )
            )
            logging.error(f"Check {name} {config} raised {type(e).__name__}: {e}")
            return None
        passed = expected == observed
        self.records.append(
            CheckRecord(name, anchor, config, expected, observed, bool(passed), elapsed=time.perf_counter() - start)
        )
        if not passed:
            logging.error(f"Check {name} {config} failed: expected {expected}, observed {observed}")
        else:
            logging.debug(f"Check {name} {config} passed")
        return observed

    def random_forms(self, space: QuadraticSpace, count: int, salt: int) -> List[AlternatingForm]:
        rng = np.random.default_rng([self.seed, space.q, space.n, salt])
        pairs = space.dim * (space.dim - 1) // 2
        return [
            AlternatingForm.from_coefficients(space, rng.integers(0, space.q, size=pairs))
            for _ in range(count)
        ]


def _config(q: int, n: int, k: int = 2) -> Dict[str, int]:
    return {"q": q, "n": n, "k": k}


def _space(q: int, n: int) -> QuadraticSpace:
    return QuadraticSpace(n, field_for_order(q))


def _check_parameters(run: _Runner, q: int, n: int) -> Optional[GrassCode]:
    space = _space(q, n)
    code_box: List[GrassCode] = []

    def observe():
        code_box.append(build_code(enumerate_delta_k(space, 2)))
        return [code_box[0].N, code_box[0].K]

    expected = list(CORE_PARAMETERS.get((q, n), (line_count(q, n), code_dimension(q, n))))
    run.check("parameters", _config(q, n), expected, observe)
    return code_box[0] if code_box else None


def _check_dimension(run: _Runner, q: int, n: int, k: int, expected_n: Optional[int] = None) -> None:
    space = _space(q, n)

    def observe():
        code = build_code(enumerate_delta_k(space, k))
        return [code.N, code.K] if expected_n is not None else code.K

    expected: Any = code_dimension(q, n, k)
    if expected_n is not None:
        expected = [expected_n, expected]
    run.check("dimension", _config(q, n, k), expected, observe)


def _check_min_distance(
    run: _Runner, code: GrassCode, expected_count: Optional[int] = None
) -> Optional[MinDistanceResult]:
    q, n = code.field.q, code.space.n
    box: List[MinDistanceResult] = []

    def observe():
        box.append(min_distance_exhaustive(code, budget=run.budget, workers=run.workers))
        return box[0].d_min

    run.check("min_distance", _config(q, n), min_distance(q, n), observe)
    if box and expected_count is not None:
        run.check("min_weight_count", _config(q, n), expected_count, lambda: box[0].min_weight_count)
    return box[0] if box else None


def _check_structural(run: _Runner, code: GrassCode, result: MinDistanceResult) -> None:
    q, n = code.field.q, code.space.n
    if code.field.even:
        run.check(
            "structural",
            _config(q, n),
            result.min_weight_count,
            lambda: min_weight_structural_scan(code, result).passed,
        )
    else:
        run.check(
            "odd_profiles",
            _config(q, n),
            True,
            lambda: len(min_weight_structural_scan(code, result).profiles) > 1,
        )


def _check_classes(run: _Runner, code: GrassCode) -> None:
    space = code.space
    q, n = space.q, space.n
    table = class_table(q, n)
    forms: Dict[str, AlternatingForm] = {}

    def weights():
        out = {}
        for cls in STRUCTURED_CLASSES:
            forms[cls.value] = min_weight_form(space, cls)
            out[cls.value] = weight_direct(code, forms[cls.value])
        return out

    run.check(
        "class_weights",
        _config(q, n),
        {cls.value: w for cls, (_, _, w) in table.items()},
        weights,
    )

    def census():
        out = {}
        for cls in STRUCTURED_CLASSES:
            f = forms.get(cls.value) or min_weight_form(space, cls)
            c = section_census(space, form_radical(f))
            out[cls.value] = [c.point_count, c.sigma]
        return out

    run.check(
        "class_census",
        _config(q, n),
        {cls.value: [pc, sigma] for cls, (pc, sigma, _) in table.items()},
        census,
    )
    if space.field.even:
        run.check(
            "census_identity",
            _config(q, n),
            True,
            lambda: all(abc_census(code, forms[c.value]).agrees for c in STRUCTURED_CLASSES),
        )


def _check_recursion(run: _Runner, code: GrassCode) -> None:
    space = code.space
    q, n = space.q, space.n
    forms = run.random_forms(space, run.samples, salt=1)

    def mismatches():
        return [i for i, f in enumerate(forms) if weight_recursive(code, f) != weight_direct(code, f)]

    run.check("recursion", _config(q, n), [], mismatches)
    if space.field.even:

        def conventions():
            used = set()
            for f in forms:
                if in_annihilator(f):
                    continue
                report = abc_census(code, f)
                if not report.agrees:
                    return f"disagreement: {report.method_agreement}"
                used.add(report.convention)
            return sorted(used)

        run.check("census_identity", _config(q, n), ["vector"], conventions)


def _check_residuals(run: _Runner, code: GrassCode) -> None:
    space = code.space
    q, n = space.q, space.n
    forms = run.random_forms(space, run.residual_samples, salt=2)
    allowed = residual_weight_values(q, n)
    observed_values: set = set()

    def values():
        for f in forms:
            observed_values.update(int(r) for r in residual_weights(code, f))
        return observed_values <= allowed

    run.check("residual_values", _config(q, n), True, values)

    def biconditional():
        return all(
            np.array_equal(residual_weights(code, f) == 0, tangent_inclusion(space, f)) for f in forms
        )

    run.check("residual_zero", _config(q, n), True, biconditional)


def _check_symplectic(run: _Runner, code: GrassCode, exhaustive: bool) -> None:
    space = code.space
    q, n = space.q, space.n
    box: List[GrassCode] = []

    def subcode():
        box.append(build_symplectic_code(space))
        result = subcode_check(code, box[0])
        return [result.is_subcode, result.codimension, box[0].K]

    run.check("subcode", _config(q, n), [True, 2 * n, symplectic_dimension(n)], subcode)
    if box and exhaustive:
        run.check(
            "symplectic_min_distance",
            _config(q, n),
            symplectic_min_distance(q, n),
            lambda: scan_code(box[0].gen_reduced, budget=run.budget, workers=run.workers).d_min,
        )


def _check_spectrum(
    run: _Runner, code: GrassCode, result: Optional[MinDistanceResult], weights: Sequence[int]
) -> None:
    q, n = code.field.q, code.space.n
    if result is None:
        return

    def observe():
        hist = result.histogram
        return [sum(hist.values()), all(hist.get(w, 0) > 0 for w in weights)]

    run.check("spectrum", _config(q, n), [q**code.K - 1, True], observe)


def _core(run: _Runner, configs: Sequence[Tuple[int, int]]) -> None:
    codes: Dict[Tuple[int, int], Optional[GrassCode]] = {}
    for q, n in configs:
        codes[(q, n)] = _check_parameters(run, q, n)
        logging.debug(f"Parameters of q={q} n={n} checked")

    if (c := codes.get((2, 2))) is not None:
        result = _check_min_distance(run, c, expected_count=45)
        if result is not None:
            _check_structural(run, c, result)
            _check_spectrum(run, c, result, [min_distance(2, 2)])
        _check_classes(run, c)
        _check_recursion(run, c)
        _check_residuals(run, c)
        _check_symplectic(run, c, exhaustive=True)

    if (c := codes.get((2, 3))) is not None:
        _check_dimension(run, 2, 3, 3, expected_n=135)
        result = _check_min_distance(run, c)
        if result is not None:
            _check_structural(run, c, result)
            _check_spectrum(run, c, result, [96, 120, 128, 160])
        _check_classes(run, c)
        _check_recursion(run, c)
        _check_residuals(run, c)
        _check_symplectic(run, c, exhaustive=False)

    if (c := codes.get((3, 2))) is not None:
        result = _check_min_distance(run, c, expected_count=1560)
        if result is not None:
            _check_structural(run, c, result)

    if (c := codes.get((4, 2))) is not None:
        _check_recursion(run, c)
        _check_residuals(run, c)


def _extended(run: _Runner, configs: Sequence[Tuple[int, int]]) -> None:
    if (4, 2) in configs:
        space = _space(4, 2)
        code = build_code(enumerate_delta_k(space, 2))
        _check_min_distance(run, code)
        _check_classes(run, code)
    if (8, 2) in configs:
        space = _space(8, 2)
        _check_classes(run, build_code(enumerate_delta_k(space, 2)))


def run_suite(
    name: str,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
    residual_samples: int = DEFAULT_RESIDUAL_SAMPLES,
    configs: Optional[Sequence[Tuple[int, int]]] = None,
) -> VerifyReport:
    """Run the named check suite.

    Args:
        name (str): "core" or "extended" (core plus the larger fields).
        budget (int): exhaustive scans above this many codewords are skipped.
        workers (int): process count for exhaustive scans.
        seed (int): seed for the random form samples.
        samples (int): random forms per configuration for the recursion checks.
        residual_samples (int): random forms per configuration for residual checks.
        configs (list[tuple[int, int]], optional): restrict to these (q, n).
    """
    if name not in SUITES:
        raise ValueError(f"Unknown suite {name}, expected one of {', '.join(SUITES)}")
    start = time.perf_counter()
    selected = list(CORE_PARAMETERS) if configs is None else [tuple(c) for c in configs]
    run = _Runner(budget, workers, seed, samples, residual_samples)
    _core(run, selected)
    if name == "extended":
        _extended(run, selected)
    report = VerifyReport(suite=name, records=run.records, elapsed=time.perf_counter() - start)
    logging.info(f"Suite {name}: {report.passed} passed, {report.failed} failed, {report.skipped} skipped")
    return report


def spectrum(
    code: GrassCode, budget: int = DEFAULT_BUDGET, workers: int = DEFAULT_WORKERS
) -> Dict[int, int]:
    """Map weight -> number of nonzero codewords of that weight."""
    hist = scan_code(code.gen_reduced, budget=budget, workers=workers).histogram
    if sum(hist.values()) != code.field.q**code.K - 1:
        raise RuntimeError(f"Spectrum covers {sum(hist.values())} codewords, expected {code.field.q**code.K - 1}")
    return hist
