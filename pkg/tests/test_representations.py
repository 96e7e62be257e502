import itertools

import numpy as np
import pytest

from twistalex.algebra import CC, GF, QQ
from twistalex.knots import braid_presentation, parse_braid, unknot_presentation
from twistalex.matrices import det_small
from twistalex.representations import Representation, RepresentationError, rep_search_sl2_fp
from twistalex.table import load_bundled_table

TREFOIL = braid_presentation(parse_braid("1 1 1"))
FIG8 = braid_presentation(parse_braid("1 -2 1 -2"))


class TestSearch:
    def test_unknot_has_none(self):
        for p in (2, 3, 5, 7):
            assert rep_search_sl2_fp(unknot_presentation(), p) == []

    @pytest.mark.parametrize("P", [TREFOIL, FIG8], ids=["trefoil", "figure-eight"])
    def test_nonempty_over_f5(self, P):
        reps = rep_search_sl2_fp(P, 5)
        assert reps
        F = GF(5)
        for rep in reps:
            assert not rep.is_abelian()
            assert rep.aligned(P) is not None
            assert all(det_small(m, F) == 1 for m in rep.matrices)
            assert rep.special_linear

    def test_budget(self):
        assert len(rep_search_sl2_fp(FIG8, 7, budget=2)) == 2

    def test_deterministic(self):
        a = [r.to_json() for r in rep_search_sl2_fp(FIG8, 7, 20)]
        b = [r.to_json() for r in rep_search_sl2_fp(FIG8, 7, 20)]
        assert a == b

    def test_distinct_up_to_conjugation(self):
        q = 5
        reps = rep_search_sl2_fp(FIG8, q, 100)
        assert len(reps) >= 2
        gl = [
            (a, b, c, d)
            for a, b, c, d in itertools.product(range(q), repeat=4)
            if (a * d - b * c) % q
        ]

        def conj(g, m):
            a, b, c, d = g
            inv_det = pow(a * d - b * c, -1, q)
            gi = ((d * inv_det) % q, (-b * inv_det) % q, (-c * inv_det) % q, (a * inv_det) % q)
            mm = (m[0][0], m[0][1], m[1][0], m[1][1])

            def mul(x, y):
                return (
                    (x[0] * y[0] + x[1] * y[2]) % q,
                    (x[0] * y[1] + x[1] * y[3]) % q,
                    (x[2] * y[0] + x[3] * y[2]) % q,
                    (x[2] * y[1] + x[3] * y[3]) % q,
                )

            return mul(mul(g, mm), gi)

        flat = [tuple((m[0][0], m[0][1], m[1][0], m[1][1]) for m in r.matrices) for r in reps]
        for i, ri in enumerate(reps):
            orbit = {tuple(conj(g, m) for m in ri.matrices) for g in gl}
            assert not any(flat[j] in orbit for j in range(i + 1, len(reps)))

    def test_bad_prime(self):
        with pytest.raises(ValueError):
            rep_search_sl2_fp(TREFOIL, 17)

    def test_search_results_satisfy_relators_across_table(self):
        for rec in load_bundled_table():
            P = rec.presentation()
            if rec.name == "unknot" or rec.torus_parameters() or P.n > 8:
                continue
            for rep in rep_search_sl2_fp(P, 7, 3):
                rep.aligned(P)


class TestJson:
    def test_round_trip_prime_field(self):
        for rep in rep_search_sl2_fp(TREFOIL, 5, 5):
            text = rep.to_json()
            back = Representation.from_json(text)
            assert back.to_json() == text
            assert back.matrices == rep.matrices

    def test_round_trip_rational(self):
        rep = Representation(["a", "b"], [[[1, "1/2"], [0, 1]], [[2, 0], [0, "1/2"]]], QQ)
        text = rep.to_json()
        assert '"1/2"' in text
        assert Representation.from_json(text).to_json() == text

    def test_round_trip_complex(self):
        w = np.exp(1j * np.pi / 3)
        rep = Representation(["a"], [[[1, w], [0, 1]]], CC, special_linear=True)
        back = Representation.from_json(rep.to_json())
        assert np.allclose(back.matrices[0], rep.matrices[0])
        assert back.special_linear

    def test_bundled_files_validate(self):
        recs = {r.name: r for r in load_bundled_table()}
        for name in ("3_1", "4_1"):
            rec = recs[name]
            presentations = [P for _, P in rec.all_presentations()]
            for rep in rec.load_representations():
                assert any(
                    len(rep.generators) == P.n and _aligns(rep, P) for P in presentations
                )

    @pytest.mark.parametrize(
        "text",
        [
            '{"dimension": 2}',
            '{"dimension": 1, "field": {"type": "Reals"}, "images": {"a": [[1]]}}',
            '{"dimension": 2, "field": {"type": "Rationals"}, "images": {"a": [[1]]}}',
            '{"dimension": 1, "field": {"type": "Rationals"}, "images": {"a": [[0]]}}',
            '{"dimension": 1, "field": {"type": "PrimeField", "p": 5}, "images": {"a": [[2]]}, "special_linear": true}',
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(RepresentationError):
            Representation.from_json(text)


def _aligns(rep, P):
    try:
        rep.aligned(P)
        return True
    except RepresentationError:
        return False


def test_relator_violation_detected():
    rep = Representation(["x1", "x2"], [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], QQ)
    with pytest.raises(RepresentationError):
        rep.aligned(TREFOIL)


def test_missing_generator():
    rep = Representation(["x1"], [[[1]]], QQ)
    with pytest.raises(RepresentationError):
        rep.aligned(TREFOIL)
