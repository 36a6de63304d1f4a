"""Independent verification catches a corrupted output.

The verifier recomputes every residual from the output jets and
annihilators.  Moving a single coefficient by 1e-3 flips at least one check.
"""

import copy

from nashapprox.core import ApproxConfig, NashFunction
from nashapprox.jet import Jet
from nashapprox.problemio import parse_problem, run_problem
from nashapprox.problems import circle_problem
from nashapprox.verify import verify_result

cfg = ApproxConfig()
res = run_problem(parse_problem(circle_problem(8), cfg), (1, 2, 3), cfg)
print("clean:", verify_result(res, cfg).checks)

bad = copy.copy(res)
bad.functions = dict(res.functions)
cos_fn, sin_fn = bad.functions[2]
j = sin_fn.branch_jet
# the top coefficient of the sine branch: invisible to the plain annihilator residual
bad.functions[2] = (cos_fn, NashFunction(sin_fn.annihilator, j + Jet(1, j.order, {(8,): 1e-3}), sin_fn.valid_order))
report = verify_result(bad, cfg)
print("corrupted:", {k: v for k, v in report.checks.items() if not v})
