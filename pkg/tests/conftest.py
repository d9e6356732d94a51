import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from newtoncut import newton_polyhedron, parse_polynomial  # noqa: E402

F1 = "x1^2+x1*x2^4+x2^3*x3+x3^3"
F2 = "x1^2+x2*x3"
F3 = "x2*x3+x1^2*x2^2+x1^2*x3^2"
EXAMPLES = {"f1": F1, "f2": F2, "f3": F3}

# strata of the f2 blow-up: a conic complement and the exceptional part
F2_STRATA = [{"chi": 1, "divisors": [[2, 3]]}, {"chi": 2, "divisors": [[1, 1], [2, 3]]}]


@pytest.fixture(params=sorted(EXAMPLES))
def example(request):
    f = parse_polynomial(EXAMPLES[request.param], 3)
    return request.param, f, newton_polyhedron(f.support, 3)


def load(text, n=3):
    f = parse_polynomial(text, n)
    return f, newton_polyhedron(f.support, n)
