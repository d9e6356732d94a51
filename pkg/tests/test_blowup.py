import random

import pytest

import oracles
from conftest import F1, F2, F3, load
from newtoncut.bcut import b_cut, choose_consistent, general_bset
from newtoncut.blowup import (
    TransformError,
    cox_presentation,
    numerical_data,
    orbit_restriction,
    proper_transform,
    relative_canonical,
    verification_cones,
    verify_desingularization,
)
from newtoncut.fan import Fan, normal_fan
from newtoncut.linalg import det
from newtoncut.nondegeneracy import OracleConfig, nondegeneracy_check
from newtoncut.polyhedron import from_halfspaces
from newtoncut.polynomial import Polynomial, face_polynomial


def cut_fan(P, normals, general=False):
    ids = [P.facet_index(u) for u in normals]
    B = general_bset(P, ids) if general else choose_consistent(P, ids)
    return B, normal_fan(b_cut(P, B).dagger)


def test_f1_presentation_and_transform():
    f, P = load(F1)
    _, fan = cut_fan(P, [(4, 1, 5), (1, 0, 1)])
    pres = cox_presentation(fan)
    assert pres.exceptional == [(9, 4, 6)]
    assert pres.pullback_text() == ["x1 -> x1'*u1^9", "x2 -> x2'*u1^4", "x3 -> x3'*u1^6"]
    assert pres.to_json()["irrelevantMinimal"] == ["x1'", "x2'", "x3'"]
    fp = proper_transform(f, fan, P)
    assert fp.to_text() == "x1'^2 + x1'*x2'^4*u1^7 + x2'^3*x3' + x3'^3"
    assert relative_canonical(fan)[(9, 4, 6)] == (18, 19)
    assert orbit_restriction(fp, [(9, 4, 6)]).to_text() == "x1'^2 + x2'^3*x3' + x3'^3"
    assert numerical_data(fan, f, P) == [(1, 1), (18, 19)]


def test_f1_verify():
    f, P = load(F1)
    B, _ = cut_fan(P, [(4, 1, 5), (1, 0, 1)])
    cert = verify_desingularization(f, B)
    assert cert.passed
    case_b = [o for o in cert.orbits if o.case == "B"]
    assert [sorted(o.cone) for o in case_b] == [sorted([(1, 0, 0), (0, 0, 1), (9, 4, 6)])]
    assert case_b[0].detail["witness"] == "x2'^3*x3'"
    assert case_b[0].detail["apex"] == ["0", "3", "1"]
    assert "note" not in case_b[0].detail


@pytest.mark.parametrize("dropped,pull,fprime,irrelevant", [
    ((1, 0, 2), ["x1 -> x1'*u1", "x2 -> x2'*u1^2", "x3 -> x3'"], "x1'^2 + x2'*x3'", ["x1'", "x2'"]),
    ((1, 2, 0), ["x1 -> x1'*u1", "x2 -> x2'", "x3 -> x3'*u1^2"], "x1'^2 + x2'*x3'", ["x1'", "x3'"]),
])
def test_f2_single_drops(dropped, pull, fprime, irrelevant):
    f, P = load(F2)
    B, fan = cut_fan(P, [dropped])
    pres = cox_presentation(fan)
    assert pres.pullback_text() == pull
    assert pres.to_json()["irrelevantMinimal"] == irrelevant
    assert proper_transform(f, fan, P).to_text() == fprime
    cert = verify_desingularization(f, B)
    assert cert.passed and numerical_data(fan, f, P) == [(1, 1), (2, 3)]


def test_f2_both_dropped_in_general_mode_fails():
    f, P = load(F2)
    B, fan = cut_fan(P, [(1, 2, 0), (1, 0, 2)], general=True)
    assert fan.rays and all(sum(u) == 1 for u in fan.rays)  # identity blow-up
    cert = verify_desingularization(f, B)
    assert not cert.passed


def test_f3_classical_blowup():
    f, P = load(F3)
    B, fan = cut_fan(P, [(1, 2, 0), (1, 0, 2)])
    pres = cox_presentation(fan)
    assert pres.exceptional == [(0, 1, 1)]
    assert pres.to_json()["irrelevantMinimal"] == ["x2'", "x3'"]
    assert pres.pullback_text() == ["x1 -> x1'", "x2 -> x2'*u1", "x3 -> x3'*u1"]
    assert proper_transform(f, fan, P).to_text() == "x1'^2*x2'^2 + x1'^2*x3'^2 + x2'*x3'"
    cert = verify_desingularization(f, B)
    assert cert.passed and cert.numerical == [(1, 1), (2, 2)]


def test_baseline_all_case_a(example):
    _, f, P = example
    B = choose_consistent(P, [])
    cert = verify_desingularization(f, B)
    assert cert.passed and {o.case for o in cert.orbits} == {"A"}
    expected = {(1, 1)} | {(int(fc.N), fc.norm) for fc in P.facets if fc.N > 0}
    assert set(cert.numerical) == expected


def test_cox_weights_and_charts(example):
    _, f, P = example
    pres = cox_presentation(normal_fan(P))
    m = len(pres.names)
    for i in range(P.n):
        for k in range(m - P.n):
            assert sum(pres.beta[i][j] * pres.weights[j][k] for j in range(m)) == 0
    for chart in pres.charts:
        gens = chart["cone"]
        assert chart["order"] == abs(det([[g[i] for g in gens] for i in range(P.n)]))


def test_missing_standard_ray():
    fan = Fan(2, [(1, 1), (0, 1)], [[0, 1]])
    with pytest.raises(TransformError):
        cox_presentation(fan)


def test_incompatible_fan_rejected():
    f, P = load(F1)
    # a fan cut out by a half-space f does not respect: level 3 on (1,1,1), f only reaches 2
    fan = normal_fan(from_halfspaces([((1, 1, 1), 3)], 3))
    with pytest.raises(TransformError, match="negative exponent"):
        proper_transform(f, fan, P)


def _generic(support, rng):
    return Polynomial(len(support[0]), {a: rng.choice([1, 2, 3, 5, 7, -1, -3]) for a in support})


def test_random_pipelines():
    rng = random.Random(23)
    passed = 0
    for support, P, B in oracles.droppable_instances(rng, 25):
        f = _generic(support, rng)
        fan = normal_fan(b_cut(P, B).dagger)
        fp = proper_transform(f, fan, P)
        # every ray attains its minimum on the support
        for j, u in enumerate(fp.rays):
            assert min(e[j] for e in fp.terms) == 0
        for S in verification_cones(fan):
            assert all(any(fan.rays[r][i] > 0 for r in S) for i in range(P.n))
        cert = verify_desingularization(f, B, OracleConfig(primes=(101,)))
        for o in cert.orbits:
            if o.case == "A":
                T = frozenset(P.facet_index(u) for u in o.cone)
                face = P.face(T)
                restricted = orbit_restriction(fp, o.cone)
                assert set(restricted.origin.values()) == set(face_polynomial(f, face).support)
            elif o.ok:
                b = next(fan.rays[fan.ray_index(u)].index(1) for u in o.cone if sum(u) == 1
                         and o.detail["baseVariable"] == f"x{u.index(1) + 1}'")
                apex = tuple(int(x) for x in o.detail["apex"])
                cone = [u for u in o.cone if not (sum(u) == 1 and u.index(1) == b)]
                face = P.face(frozenset(P.facet_index(u) for u in cone))
                for a in f.support:
                    if face.contains(a) and a != apex:
                        assert a[b] >= 2
        if all(v.ok for v in nondegeneracy_check(f, OracleConfig(primes=(101,)), P)):
            assert cert.passed
            passed += 1
    assert passed >= 15


def test_f1_edge_orbit_restriction():
    f, P = load(F1)
    _, fan = cut_fan(P, [(4, 1, 5), (1, 0, 1)])
    fp = proper_transform(f, fan, P)
    assert orbit_restriction(fp, [(9, 4, 6), (1, 0, 0)]).to_text() == "x2'^3*x3' + x3'^3"
